"""Truncated monopole Hilbert series and the exact oracles they are checked against.

Grading is by 2*Delta; a Casimir of degree d contributes 1/(1 - t^(2d)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .classify import BAD, classify_theory, lattice_ball, scan_radius
from .monopole import Coweight, canonicalize, evaluator, flatten
from .quiver import GaugeTheory, Sl2Flavor, U1Theory


@dataclass(frozen=True)
class TruncatedSeries:
    cutoff: int
    coeffs: tuple[int, ...]
    certified: bool = field(default=True, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != self.cutoff + 1:
            raise ValueError("need exactly cutoff + 1 coefficients")

    @classmethod
    def one(cls, cutoff: int) -> "TruncatedSeries":
        return cls(cutoff, (1,) + (0,) * cutoff)

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.cutoff, other.cutoff)
        return TruncatedSeries(n, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.cutoff, other.cutoff)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    out[i + j] += a * b
        return TruncatedSeries(n, tuple(out))

    def shifted(self, k: int) -> "TruncatedSeries":
        if k > self.cutoff:
            return TruncatedSeries(self.cutoff, (0,) * (self.cutoff + 1))
        return TruncatedSeries(self.cutoff, (0,) * k + self.coeffs[: self.cutoff + 1 - k])

    def to_tsv(self) -> str:
        return "".join(f"{d}\t{c}\n" for d, c in enumerate(self.coeffs))


def geometric(d: int, cutoff: int) -> TruncatedSeries:
    """1 / (1 - t^d)."""
    return TruncatedSeries(cutoff, tuple(int(k % d == 0) for k in range(cutoff + 1)))


# ---------------------------------------------------------------- rational oracle

@dataclass(frozen=True)
class RationalSeriesSpec:
    """prod (1 + s t^d) over ``numerator`` pairs (s, d) divided by prod (1 - t^d)."""

    numerator: tuple[tuple[int, int], ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.denominator):
            raise ValueError("denominator degrees must be >= 1")
        if any(s not in (1, -1) or d < 1 for s, d in self.numerator):
            raise ValueError("numerator factors are (1 + t^d) or (1 - t^d)")


_FACTOR = re.compile(r"\(\s*1\s*([+-])\s*t(?:\s*\^\s*(\d+))?\s*\)(?:\s*\^\s*(\d+))?")


def _factors(text: str) -> list[tuple[int, int]]:
    text = text.strip()
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]) and not _FACTOR.fullmatch(text):
        text = text[1:-1].strip()
    if text in ("", "1"):
        return []
    out, pos = [], 0
    for m in _FACTOR.finditer(text):
        if text[pos:m.start()].strip(" *"):
            raise ValueError(f"cannot parse factor near {text[pos:m.start()]!r}")
        sign = 1 if m.group(1) == "+" else -1
        d = int(m.group(2) or 1)
        out += [(sign, d)] * int(m.group(3) or 1)
        pos = m.end()
    if text[pos:].strip(" *"):
        raise ValueError(f"cannot parse factor near {text[pos:]!r}")
    return out


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


def parse_rational(text: str) -> RationalSeriesSpec:
    """Parse strings such as ``"(1+t^3)/((1-t^2)(1-t^3))"`` or ``"1/(1-t)^2"``."""
    depth, cut = 0, None
    for k, ch in enumerate(text):
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if ch == "/" and depth == 0:
            cut = k
            break
    num = _factors(text if cut is None else text[:cut])
    den = [] if cut is None else _factors(text[cut + 1:])
    if any(s != -1 for s, _ in den):
        raise ValueError("denominator factors must be of the form (1 - t^d)")
    return RationalSeriesSpec(tuple(num), tuple(d for _, d in den))


def expand_rational(spec: RationalSeriesSpec | str, cutoff: int) -> TruncatedSeries:
    if isinstance(spec, str):
        spec = parse_rational(spec)
    out = [1] + [0] * cutoff
    for s, d in spec.numerator:
        for k in range(cutoff, d - 1, -1):
            out[k] += s * out[k - d]
    for d in spec.denominator:
        for k in range(d, cutoff + 1):
            out[k] += out[k - d]
    return TruncatedSeries(cutoff, tuple(out))


def molien_cyclic(order: int, weights: Sequence[int], cutoff: int) -> TruncatedSeries:
    """Invariant monomials x^a y^b of Z/order acting with ``weights`` on C^2, by degree."""
    if order < 1:
        raise ValueError("group order must be >= 1")
    w1, w2 = weights
    return TruncatedSeries(cutoff, tuple(
        sum(1 for a in range(d + 1) if (a * w1 + (d - a) * w2) % order == 0) for d in range(cutoff + 1)
    ))


# ---------------------------------------------------------------- monopole formula

def casimir_degrees(t: GaugeTheory, lam: Coweight) -> list[int]:
    """Degrees of the invariant polynomials of the stabiliser of lam."""
    if isinstance(t, Sl2Flavor):
        return [1] if lam[0][0] else [2]
    if isinstance(t, U1Theory):
        return [1]
    out = []
    for block in lam:
        run = 0
        for k, x in enumerate(block):
            run += 1
            if k + 1 == len(block) or block[k + 1] != x:
                out.extend(range(1, run + 1))
                run = 0
    if t.mod_center and out:
        out.remove(1)
    return sorted(out)


def dressing_factor(t: GaugeTheory, lam: Coweight, cutoff: int) -> TruncatedSeries:
    out = TruncatedSeries.one(cutoff)
    for d in casimir_degrees(t, lam):
        out = out * geometric(2 * d, cutoff)
    return out


def monopole_series(t: GaugeTheory, cutoff: int, radius: int | None = None) -> TruncatedSeries:
    """Sum of t^(2 Delta(lam)) times the dressing factor over dominant charges.

    The scan radius comes from the classifier's certificate; an explicit
    smaller ``radius`` gives a result flagged ``certified=False``.
    """
    cls = classify_theory(t)
    if cls.verdict == BAD:
        raise ValueError("the monopole formula diverges for a bad theory")
    need = scan_radius(cls, cutoff)
    norm = cls.certificate.get("norm") or "canonical"
    certified = radius is None or radius >= need
    radius = need if radius is None else radius
    ev = evaluator(t)
    acc = [0] * (cutoff + 1)
    for lam in lattice_ball(t, radius, norm):
        weight = ev.two_delta_flat(flatten(lam))
        if weight > cutoff:
            continue
        dressed = dressing_factor(t, canonicalize(lam, t), cutoff - weight)
        for k, c in enumerate(dressed.coeffs):
            acc[weight + k] += c
    return TruncatedSeries(cutoff, tuple(acc), certified)
