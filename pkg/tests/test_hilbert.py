import pytest

from coulombkit.classify import UGLY, classify_theory
from coulombkit.hilbert import (
    TruncatedSeries,
    casimir_degrees,
    dressing_factor,
    expand_rational,
    geometric,
    molien_cyclic,
    monopole_series,
    parse_rational,
)
from coulombkit.quiver import PROD_GL, QuiverTheory, Sl2Flavor, U1Theory, catalog

from conftest import load


@pytest.mark.parametrize("text, cutoff, coeffs", [
    ("1/(1-t)", 3, [1, 1, 1, 1]),
    ("(1+t^2)/(1-t^2)^2", 6, [1, 0, 3, 0, 5, 0, 7]),
    ("(1-t^4)/((1-t^2)(1-t^2))", 4, [1, 0, 2, 0, 2]),
    ("(1+t^3)/((1-t^2)(1-t^3))", 8, [1, 0, 1, 2, 1, 2, 3, 2, 3]),
])
def test_expand_rational(text, cutoff, coeffs):
    assert list(expand_rational(text, cutoff).coeffs) == coeffs


@pytest.mark.parametrize("bad", ["1/(1+t)", "(2+t)/(1-t)", "1/(1-t^0)"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@pytest.mark.parametrize("order, weights, cutoff, coeffs", [
    (1, (3, 5), 3, [1, 2, 3, 4]),
    (2, (1, 1), 4, [1, 0, 3, 0, 5]),
])
def test_molien_examples(order, weights, cutoff, coeffs):
    assert list(molien_cyclic(order, weights, cutoff).coeffs) == coeffs


@pytest.mark.parametrize("n", range(1, 9))
def test_molien_matches_rational(n):
    # C^2 / (Z/n) acting with weights (1, -1): generators xy, x^n, y^n with one relation
    want = expand_rational(f"(1+t^{n})/((1-t^2)(1-t^{n}))", 24) if n > 1 else expand_rational("1/(1-t)^2", 24)
    assert molien_cyclic(n, (1, -1), 24) == want


def test_series_arithmetic():
    a = geometric(1, 5)
    assert list((a * a).coeffs) == [1, 2, 3, 4, 5, 6]
    assert list((a + TruncatedSeries.one(5)).coeffs) == [2, 1, 1, 1, 1, 1]
    assert list(a.shifted(2).coeffs) == [0, 0, 1, 1, 1, 1]
    with pytest.raises(ValueError):
        TruncatedSeries(3, (1, 2))


def test_dressing_examples():
    assert list(dressing_factor(U1Theory((1,)), ((4,),), 4).coeffs) == [1, 0, 1, 0, 1]
    assert casimir_degrees(Sl2Flavor(4), ((0,),)) == [2]
    gl2 = QuiverTheory(catalog("A1"), (2,), (1,), PROD_GL)
    assert casimir_degrees(gl2, ((1, 1),)) == [1, 2]
    assert casimir_degrees(gl2, ((1, 0),)) == [1, 1]
    assert dressing_factor(gl2, ((1, 1),), 6) == expand_rational("1/((1-t^2)(1-t^4))", 6)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_u1_weight_n_matches_molien(n):
    assert monopole_series(load(f"u1_w{n}.json"), 20) == molien_cyclic(n, (1, -1), 20)


def test_u1_two_flavours():
    assert monopole_series(load("u1_2flavors.json"), 20) == expand_rational("(1+t^2)/(1-t^2)^2", 20)


@pytest.mark.parametrize("n", [4, 5])
def test_sl2_degree_table(n):
    want = expand_rational(f"(1+t^{2 * (n - 1)})/((1-t^{2 * (n - 2)})(1-t^4))", 20)
    assert monopole_series(Sl2Flavor(n), 20) == want


def test_affine_a1_delta_is_c2_mod_z2():
    assert monopole_series(load("affine_a1_delta.json"), 12) == expand_rational("(1+t^2)/(1-t^2)^2", 12)


def test_a2_root_is_c2():
    assert monopole_series(load("a2_11.json"), 12) == expand_rational("1/(1-t)^2", 12)


@pytest.mark.parametrize("name", [
    "a2_11.json", "a3_111.json", "affine_a1_delta.json", "affine_a2_delta.json", "u1_w1.json",
    "u1_w2.json", "u1_2flavors.json", "sl2_n4.json", "a1_1_w2.json", "a1_2_w4.json",
])
def test_degree_one_coefficient_detects_ugly(name):
    t = load(name)
    s = monopole_series(t, 4)
    ugly = classify_theory(t).verdict == UGLY
    assert (s[1] >= 1) == ugly and (s[1] == 0) == (not ugly)


def test_small_radius_is_uncertified():
    s = monopole_series(load("u1_w1.json"), 10, radius=1)
    assert not s.certified


def test_bad_theory_rejected():
    with pytest.raises(ValueError):
        monopole_series(load("a2_21.json"), 4)
