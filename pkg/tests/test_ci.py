import itertools
import random

import pytest

from coulombkit.ci import (
    ROOTS,
    VECTORS,
    ci_check_framed,
    ci_check_unframed,
    ci_fast_path_affine,
    ci_fast_path_finite,
    decomposition_count,
    decompositions,
    framed_ci,
    unframed_ci,
)
from coulombkit.errors import BudgetExceeded
from coulombkit.quiver import PROD_GL, QuiverTheory, cartan_matrix, cartan_pairing, catalog

from conftest import load


def q(x, c):
    return cartan_pairing(x, x, c)


def literal_unframed(c, v, pool):
    best = max(sum(2 - q(p, c) for p in d.parts) for d in decompositions(v, pool, c))
    return 2 - q(v, c) >= best


def literal_framed(c, v, w):
    def g(x):
        cx = [sum(c[i][j] * x[j] for j in range(len(x))) for i in range(len(x))]
        return sum(a * (2 * b - e) for a, b, e in zip(x, w, cx))

    for v0 in itertools.product(*(range(a + 1) for a in v)):
        rest = tuple(a - b for a, b in zip(v, v0))
        for d in decompositions(rest, VECTORS, c):
            if g(v0) + sum(2 - q(p, c) for p in d.parts) > g(v):
                return False
    return True


def test_a2_root_decompositions():
    c = cartan_matrix(catalog("A2"))
    got = {d.parts for d in decompositions((1, 1), ROOTS, c)}
    assert got == {((1, 1),), ((0, 1), (1, 0))}


def test_zero_target_has_one_empty_decomposition():
    assert [d.parts for d in decompositions((0, 0), VECTORS)] == [()]


def test_affine_a1_two_delta_splits():
    c = cartan_matrix(catalog("affine-A1"))
    got = {d.parts for d in decompositions((2, 2), ROOTS, c)}
    assert ((1, 1), (1, 1)) in got
    assert ((0, 1), (2, 1)) in got
    assert ((0, 1), (1, 0), (1, 1)) in got


def test_decomposition_budget():
    with pytest.raises(BudgetExceeded):
        list(decompositions((4, 4, 4), VECTORS, limit=10))
    assert decomposition_count((1, 1), [(1, 0), (0, 1), (1, 1)]) == 2


@pytest.mark.parametrize("name, v, want", [
    ("A2", (1, 1), True), ("A2", (2, 2), False), ("affine-A1", (1, 1), True), ("affine-A1", (2, 2), False),
])
def test_unframed_examples(name, v, want):
    t = QuiverTheory(catalog(name), v, (0,) * len(v))
    rep = ci_check_unframed(t)
    assert rep.is_ci is want
    if not want:
        c = t.cartan()
        parts = rep.violation.parts
        assert tuple(map(sum, zip(*parts))) == v
        assert sum(2 - q(p, c) for p in parts) > 2 - q(v, c)


def test_a2_22_violation():
    rep = ci_check_unframed(QuiverTheory(catalog("A2"), (2, 2), (0, 0)))
    assert rep.violation.parts == ((1, 1), (1, 1)) and rep.slack == -6


@pytest.mark.parametrize("name, v, w, want", [
    ("A1", (1,), (2,), True), ("A1", (2,), (2,), False), ("A1", (0,), (2,), True),
])
def test_framed_examples(name, v, w, want):
    c = cartan_matrix(catalog(name))
    assert framed_ci(c, v, w).is_ci is want


@pytest.mark.parametrize("name, bound", [("A2", 3), ("A3", 2), ("D4", 2), ("affine-A1", 3), ("affine-A2", 2)])
def test_dp_matches_literal_enumeration_unframed(name, bound):
    qv = catalog(name)
    c = cartan_matrix(qv)
    for v in itertools.product(range(bound + 1), repeat=qv.n):
        if any(v):
            for pool in (ROOTS, VECTORS):
                assert unframed_ci(c, v, pool).is_ci == literal_unframed(c, v, pool), (v, pool)


def test_dp_matches_literal_enumeration_framed():
    rnd = random.Random(7)
    for name in ("A2", "A3", "affine-A1"):
        qv = catalog(name)
        c = cartan_matrix(qv)
        for _ in range(25):
            v = tuple(rnd.randint(0, 2) for _ in range(qv.n))
            w = tuple(rnd.randint(0, 2) for _ in range(qv.n))
            if any(w):
                assert framed_ci(c, v, w).is_ci == literal_framed(c, v, w), (name, v, w)


def test_fast_path_examples(theory):
    t = theory("a3_111_w101.json")
    assert ci_fast_path_finite(t).is_ci
    bad = theory("a1_2_w2.json")
    rep = ci_fast_path_finite(bad)
    assert not rep.is_ci and rep.witness_root == (1,) and rep.slack == -1
    assert ci_fast_path_affine(theory("affine_a1_delta_w10.json")).is_ci


def test_fast_path_guards(theory):
    with pytest.raises(ValueError):
        ci_fast_path_affine(theory("affine_a1_delta.json"))
    with pytest.raises(ValueError):
        ci_fast_path_finite(theory("affine_a1_delta_w10.json"))
    with pytest.raises(ValueError):
        ci_check_framed(theory("a2_11.json"))


def test_dominant_framing_weight_is_always_ci():
    qv = catalog("D4")
    c = cartan_matrix(qv)
    for v in itertools.product(range(3), repeat=4):
        if not any(v):
            continue
        for w in itertools.product(range(3), repeat=4):
            if not any(w):
                continue
            x = [a - sum(c[i][j] * v[j] for j in range(4)) for i, a in enumerate(w)]
            if min(x) >= 0:
                assert ci_fast_path_finite(QuiverTheory(qv, v, w, PROD_GL)).is_ci
