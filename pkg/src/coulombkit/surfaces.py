"""The Coulomb surfaces of SL(2) with N flavours.

f = y^2 - x^2 z + z^(N-1) for N >= 1 and f = y^2 - x^2 z - x for N = 0, with
weights deg x = N - 2, deg y = N - 1, deg z = 2 (doubled for 2*Delta).
Polynomials are dicts from exponent triples (a, b, c) of x^a y^b z^c to
integer coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import Classification, classify_theory
from .quiver import Sl2Flavor

Poly = dict  # dict[tuple[int, int, int], int]
Point = tuple  # tuple[Fraction, Fraction, Fraction]


def _add(p: Poly, mono: tuple[int, int, int], c: int) -> None:
    p[mono] = p.get(mono, 0) + c
    if p[mono] == 0:
        del p[mono]


def surface_equation(n: int) -> Poly:
    if n < 0:
        raise ValueError("number of flavours is nonnegative")
    f: Poly = {}
    _add(f, (0, 2, 0), 1)
    _add(f, (2, 0, 1), -1)
    if n == 0:
        _add(f, (1, 0, 0), -1)
    else:
        _add(f, (0, 0, n - 1), 1)
    return f


def derivative(p: Poly, var: int) -> Poly:
    out: Poly = {}
    for mono, c in p.items():
        if mono[var]:
            m = list(mono)
            m[var] -= 1
            _add(out, tuple(m), c * mono[var])
    return out


def evaluate(p: Poly, point: Sequence) -> Fraction:
    x = [Fraction(v) for v in point]
    return sum((c * x[0] ** a * x[1] ** b * x[2] ** e for (a, b, e), c in p.items()), Fraction(0))


def format_poly(p: Poly) -> str:
    terms = []
    for (a, b, c), coef in sorted(p.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        mono = "*".join(
            f"{v}^{e}" if e > 1 else v for v, e in zip("xyz", (a, b, c)) if e
        ) or "1"
        if mono != "1" and abs(coef) == 1:
            body = mono
        else:
            body = f"{abs(coef)}" + ("" if mono == "1" else f"*{mono}")
        terms.append(("- " if coef < 0 else "+ ") + body)
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class Degrees:
    delta: tuple[int, int, int]
    doubled: tuple[int, int, int]
    conical: bool


def surface_degrees(n: int) -> Degrees:
    if n < 0:
        raise ValueError("number of flavours is nonnegative")
    d = (n - 2, n - 1, 2)
    return Degrees(d, tuple(2 * x for x in d), all(x > 0 for x in d))


def weighted_degrees(p: Poly, weights: Sequence[int]) -> set[int]:
    return {sum(e * w for e, w in zip(mono, weights)) for mono in p}


def is_quasi_homogeneous(p: Poly, weights: Sequence[int]) -> bool:
    return len(weighted_degrees(p, weights)) == 1


def surface_singular_points(n: int) -> list[Point]:
    """Common zeros of f and its partials.

    f_y = 2y forces y = 0.  N = 0: f_z = -x^2 forces x = 0, then f_x = -1.
    N = 1: f_z = -x^2 forces x = 0, then f = 1.  N = 2: f_z = 1 - x^2 gives
    x = +-1 and f_x = -2xz gives z = 0.  N >= 3: f_x = 0 and f_z = 0 leave
    only x = z = 0.
    """
    if n < 0:
        raise ValueError("number of flavours is nonnegative")
    zero = Fraction(0)
    if n in (0, 1):
        pts: list[Point] = []
    elif n == 2:
        pts = [(Fraction(-1), zero, zero), (Fraction(1), zero, zero)]
    else:
        pts = [(zero, zero, zero)]
    f = surface_equation(n)
    grads = [f] + [derivative(f, k) for k in range(3)]
    assert all(evaluate(g, p) == 0 for g in grads for p in pts)
    return pts


def is_singular(n: int, point: Sequence) -> bool:
    f = surface_equation(n)
    return all(evaluate(g, point) == 0 for g in [f] + [derivative(f, k) for k in range(3)])


def sl2_classify(n: int) -> Classification:
    return classify_theory(Sl2Flavor(n))


def sl2_higgs_summary(n: int) -> dict:
    """Recorded outcomes for the Higgs side; not computed here."""
    if n < 0:
        raise ValueError("number of flavours is nonnegative")
    if n <= 1:
        return {
            "n_flavors": n,
            "higgs": "point",
            "coulomb_expected_smooth": True,
            "complete_intersection_dim": None,
            "components": None,
            "higgs_strata_count": 1,
            "coulomb_strata_count": 1,
        }
    return {
        "n_flavors": n,
        "higgs": "complete-intersection",
        "coulomb_expected_smooth": False,
        "complete_intersection_dim": 4 * n - 3,
        "components": 2 if n == 2 else 1,
        "higgs_strata_count": 3 if n == 2 else None,
        "coulomb_strata_count": 3 if n == 2 else 2,
    }


@dataclass(frozen=True)
class SurfaceRecord:
    n_flavors: int
    equation: Poly
    degrees: Degrees
    singular_points: list[Point]
    strata_count: int
    conical: bool
    flags: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "n_flavors": self.n_flavors,
            "equation": format_poly(self.equation),
            "monomials": [[list(m), c] for m, c in sorted(self.equation.items())],
            "degrees": {"delta": list(self.degrees.delta), "doubled": list(self.degrees.doubled)},
            "singular_points": [[str(c) for c in p] for p in self.singular_points],
            "strata_count": self.strata_count,
            "conical": self.conical,
            "flags": list(self.flags),
        }


def surface_record(n: int) -> SurfaceRecord:
    deg = surface_degrees(n)
    pts = surface_singular_points(n)
    flags = []
    if n in (1, 2, 3):
        flags.append("equation-match-unconfirmed")
    if n == 3:
        flags.append("sl2-n3-convention-sensitive")
    return SurfaceRecord(n, surface_equation(n), deg, pts, 1 + len(pts), deg.conical, tuple(flags))
