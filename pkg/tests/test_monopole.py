import pytest
from hypothesis import given, settings, strategies as st

from coulombkit.monopole import (
    canonicalize,
    parse_coweight,
    two_delta,
    two_delta_quiver_closed_form,
)
from coulombkit.quiver import PROD_GL, QuiverTheory, Sl2Flavor, U1Theory, catalog

from conftest import load

QUIVER_FIXTURES = [
    "a2_11.json", "a2_21.json", "a3_111.json", "d4_1211.json", "affine_a1_delta.json",
    "affine_a1_2delta.json", "affine_a2_delta.json", "jordan_2.json", "jordan_1_gl.json",
    "a1_2_w4.json", "a3_111_w101.json", "d4_1211_w0100.json", "affine_a1_delta_w10.json",
]
THEORIES = [load(n) for n in QUIVER_FIXTURES]
SEEDED = settings(max_examples=500, derandomize=True, deadline=None)


@st.composite
def charged(draw, pool=THEORIES):
    t = draw(st.sampled_from(pool))
    lam = tuple(
        tuple(draw(st.lists(st.integers(-5, 5), min_size=b, max_size=b))) for b in t.blocks
    )
    return t, lam


@SEEDED
@given(charged(), st.randoms(use_true_random=False))
def test_weyl_invariance(tl, rnd):
    t, lam = tl
    shuffled = tuple(tuple(rnd.sample(b, len(b))) for b in lam)
    assert two_delta(t, shuffled) == two_delta(t, lam)


@SEEDED
@given(charged([t for t in THEORIES if t.mod_center]), st.integers(-6, 6))
def test_center_translation_invariance(tl, shift):
    t, lam = tl
    moved = tuple(tuple(x + shift for x in b) for b in lam)
    assert two_delta(t, moved) == two_delta(t, lam)


@SEEDED
@given(charged(), st.integers(0, 7))
def test_homogeneity(tl, k):
    t, lam = tl
    scaled = tuple(tuple(k * x for x in b) for b in lam)
    assert two_delta(t, scaled) == k * two_delta(t, lam)


@SEEDED
@given(charged())
def test_closed_form_matches_general_formula(tl):
    t, lam = tl
    assert two_delta_quiver_closed_form(t, lam) == two_delta(t, lam)


@SEEDED
@given(charged())
def test_canonical_form_is_idempotent_and_invariant(tl):
    t, lam = tl
    can = canonicalize(lam, t)
    assert canonicalize(can, t) == can
    assert two_delta(t, can) == two_delta(t, lam)


@SEEDED
@given(st.integers(0, 12), st.integers(-20, 20))
def test_sl2_closed_form(n, m):
    assert two_delta(Sl2Flavor(n), ((m,),)) == 2 * (n - 2) * abs(m)


@SEEDED
@given(st.lists(st.integers(-4, 4).filter(bool), min_size=1, max_size=4), st.integers(-9, 9))
def test_u1_weight_sum(charges, m):
    assert two_delta(U1Theory(tuple(charges)), ((m,),)) == sum(abs(q * m) for q in charges)


def test_a2_simple_values():
    t = load("a2_11.json")
    assert two_delta(t, ((1,), (0,))) == 1
    assert two_delta(t, ((0,), (0,))) == 0


def test_u2_with_two_flavours_is_balanced_at_zero():
    t = QuiverTheory(catalog("A1"), (2,), (2,), PROD_GL)
    assert two_delta(t, ((1, 0),)) == 0


def test_parse_coweight_forms():
    t = load("a2_21.json")
    assert parse_coweight("1,0;2", t) == ((1, 0), (2,))
    assert parse_coweight("[[1,0],[2]]", t) == ((1, 0), (2,))
    assert parse_coweight("[1,0,2]", t) == ((1, 0), (2,))
    with pytest.raises(ValueError):
        parse_coweight("1;2", t)
