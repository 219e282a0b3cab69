import pytest

from coulombkit.classify import (
    BAD,
    GOOD,
    UGLY,
    arrangement_forms,
    brute_force_min,
    chambers,
    classify_theory,
    connected_vectors,
    lattice_ball,
    ball_size,
    verify_never_good,
)
from coulombkit.cones import dot
from coulombkit.errors import BudgetExceeded, DimensionLimitError
from coulombkit.monopole import flatten, two_delta
from coulombkit.quiver import PROD_GL, QuiverTheory, Sl2Flavor, U1Theory, catalog

from conftest import load

NON_BAD = [
    "a2_11.json", "a3_111.json", "d4_1211.json", "affine_a1_delta.json", "affine_a2_delta.json",
    "affine_a2_011.json", "a1_1_w2.json", "a1_2_w4.json", "a3_111_w101.json", "d4_1211_w0100.json",
    "affine_a1_delta_w10.json", "u1_w1.json", "u1_w3.json", "u1_2flavors.json", "sl2_n4.json", "sl2_n5.json",
]


@pytest.mark.parametrize("name", NON_BAD)
def test_classifier_matches_brute_force(name):
    t = load(name)
    cls = classify_theory(t)
    assert cls.verdict in (GOOD, UGLY)
    radius = max(3, cls.certificate["radius_bound"])
    m, w = brute_force_min(t, radius)
    assert (cls.min_value, cls.witness) == (m, w)


@pytest.mark.parametrize("name", NON_BAD)
def test_chambers_and_braid_agree(name):
    t = load(name)
    a, b = classify_theory(t, "chambers"), classify_theory(t, "braid")
    assert (a.verdict, a.min_value, a.witness) == (b.verdict, b.min_value, b.witness)


@pytest.mark.parametrize("name", ["a2_21.json", "affine_a1_2delta.json", "a1_2_w2.json", "sl2_n2.json"])
def test_bad_ray_evaluates_nonpositive(name):
    t = load(name)
    cls = classify_theory(t)
    assert cls.verdict == BAD
    assert two_delta(t, cls.witness) == cls.witness_value <= 0
    assert any(flatten(cls.witness))


def test_two_delta_is_linear_on_chambers():
    t = load("d4_1211.json")
    fan = chambers(t)
    forms = arrangement_forms(t)
    for ch in fan.chambers[:40]:
        rays = ch.rays
        for r in rays:
            for s in rays:
                total = tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(r, s))
                assert two_delta(t, total) == two_delta(t, r) + two_delta(t, s)
        for f in forms:
            vals = {(dot(f, rr) > 0) - (dot(f, rr) < 0) for rr in ch.reduced_rays}
            assert not ({1, -1} <= vals)


def test_framing_only_raises_two_delta():
    q = catalog("A3")
    for v in connected_vectors(q, (2, 2, 2)):
        base = QuiverTheory(q, v, (1, 0, 0), PROD_GL)
        more = QuiverTheory(q, v, (1, 1, 1), PROD_GL)
        for lam in lattice_ball(base, 1):
            assert two_delta(more, lam) >= two_delta(base, lam)


@pytest.mark.parametrize("n, verdict, m", [
    (0, BAD, None), (1, BAD, None), (2, BAD, None), (3, GOOD, 2), (4, GOOD, 4), (6, GOOD, 8),
])
def test_sl2_family(n, verdict, m):
    cls = classify_theory(Sl2Flavor(n))
    assert cls.verdict == verdict and cls.min_value == m


def test_sl2_n3_carries_note():
    assert "sl2-n3-convention-sensitive" in classify_theory(Sl2Flavor(3)).notes


def test_u1_single_flavour_is_ugly():
    assert classify_theory(U1Theory((1,))).verdict == UGLY


def test_simple_root_has_trivial_charge_lattice():
    cls = classify_theory(load("a2_11.json").__class__(catalog("A2"), (1, 0), (0, 0)))
    assert cls.verdict == GOOD and cls.min_value is None
    assert "trivial-charge-lattice" in cls.notes


def test_never_good_a3():
    rep = verify_never_good(catalog("A3"), (2, 2, 2))
    assert [r[0] for r in rep.failures] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_dimension_limit_and_budget():
    t = load("e6_highest.json")
    with pytest.raises(DimensionLimitError):
        classify_theory(t, "chambers", max_dim=4)
    with pytest.raises(BudgetExceeded):
        list(lattice_ball(t, 50, limit=1000))
    a2 = load("a2_11.json")
    assert ball_size(a2, 2, "pinned") == len(list(lattice_ball(a2, 2, "pinned"))) == 5
    assert ball_size(a2, 2) >= len(list(lattice_ball(a2, 2))) == 5


def test_auto_falls_back_to_braid():
    t = load("e6_highest.json")
    cls = classify_theory(t, "auto", max_dim=4)
    assert cls.certificate["method"] == "braid" and cls.verdict == UGLY


def test_unknown_method():
    with pytest.raises(ValueError):
        classify_theory(load("a2_11.json"), "magic")
