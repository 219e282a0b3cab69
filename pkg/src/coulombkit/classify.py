"""Good / ugly / bad classification by exact minimisation of 2*Delta.

Two certified routes are available:

``chambers``
    Linearise the absolute values: the hyperplanes of all roots and weights cut
    the (pinned) Weyl cone into chambers on which 2*Delta is linear.  Rays come
    from exact double description.  A ray with 2*Delta <= 0 certifies Bad;
    otherwise every charge obeys 2*Delta(lam) >= kappa * |lam|_inf / R, which
    bounds the lattice scan that finds the exact minimum.

``braid``
    Every form in the arrangement is a difference of two coordinates (or of a
    coordinate and 0), so the braid arrangement refines it.  Braid chambers are
    unimodular with 0/+-1 rays, hence every lattice charge is a nonnegative
    integer combination of rays and the lattice minimum is attained on a ray.
    Only prod(v_i + 1) sorted indicator vectors need evaluating.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .cones import Cone, cone_from_inequalities, dot
from .errors import BudgetExceeded, DimensionLimitError, budget
from .monopole import (
    Coweight,
    blocks,
    canonicalize,
    evaluator,
    flatten,
    offsets,
    positive_root_forms,
    rank,
    unflatten,
    weight_multiset,
    witness_key,
)
from .quiver import (
    FINITE,
    PROD_GL_MOD_CENTER,
    GaugeTheory,
    Quiver,
    QuiverTheory,
    Sl2Flavor,
    U1Theory,
    cartan_matrix,
    classify_graph,
    finite_type_name,
    primitive,
)
from .roots import positive_roots_finite

GOOD, UGLY, BAD = "Good", "Ugly", "Bad"
DEFAULT_MAX_DIM = 10


@dataclass(frozen=True)
class Classification:
    verdict: str
    witness: Coweight | None
    witness_value: int | None
    min_value: int | None
    certificate: dict
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else [list(b) for b in self.witness],
            "witness_value": self.witness_value,
            "min_value": self.min_value,
            "certificate": self.certificate,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- reduced charge space

def pin_index(t: GaugeTheory) -> int | None:
    """Flat index fixed to 0 modulo the center: last entry of the first occupied vertex."""
    if not t.mod_center:
        return None
    off = offsets(t)
    for i, b in enumerate(blocks(t)):
        if b:
            return off[i] + b - 1
    return None


def reduced_dim(t: GaugeTheory) -> int:
    return rank(t) - (pin_index(t) is not None)


def _reduce(t: GaugeTheory, form: Sequence[int]) -> tuple[int, ...]:
    p = pin_index(t)
    return tuple(a for k, a in enumerate(form) if k != p)


def lift(t: GaugeTheory, vec: Sequence[int]) -> Coweight:
    p = pin_index(t)
    flat = list(vec)
    if p is not None:
        flat.insert(p, 0)
    return unflatten(t, flat)


def weyl_inequalities(t: GaugeTheory) -> list[tuple[int, ...]]:
    if not isinstance(t, QuiverTheory):
        return []
    n = rank(t)
    out = []
    for start, b in zip(offsets(t), blocks(t)):
        for k in range(start, start + b - 1):
            f = [0] * n
            f[k], f[k + 1] = 1, -1
            out.append(_reduce(t, f))
    return out


def arrangement_forms(t: GaugeTheory) -> list[tuple[int, ...]]:
    seen = set()
    for f in positive_root_forms(t) + [f for f, _ in weight_multiset(t).items]:
        g = primitive(_reduce(t, f))
        if not any(g):
            continue
        if next(a for a in g if a) < 0:
            g = tuple(-a for a in g)
        seen.add(g)
    return sorted(seen, key=lambda g: tuple(-a for a in g))


@dataclass
class Chamber:
    signs: tuple[int, ...]
    rays: list[Coweight]
    lineality: list[Coweight] = field(default_factory=list)
    reduced_rays: list[tuple[int, ...]] = field(default_factory=list)


@dataclass
class ChamberFan:
    dim: int
    forms: list[tuple[int, ...]]
    chambers: list[Chamber]


def chambers(t: GaugeTheory, max_dim: int = DEFAULT_MAX_DIM) -> ChamberFan:
    d = reduced_dim(t)
    if d > max_dim:
        raise DimensionLimitError(
            f"reduced charge space has dimension {d} > {max_dim}; raise max_dim, "
            "use method='braid', or fall back to brute_force_min"
        )
    forms = arrangement_forms(t)
    work: list[tuple[Cone, list[int]]] = [(cone_from_inequalities(d, weyl_inequalities(t)), [])]
    for f in forms:
        nxt = []
        neg_f = tuple(-a for a in f)
        for cone, signs in work:
            pos, neg = cone.signs(f)
            if pos and neg:
                nxt.append((cone.intersect(f), signs + [1]))
                nxt.append((cone.intersect(neg_f), signs + [-1]))
            else:
                nxt.append((cone, signs + [1 if pos else -1]))
        work = nxt
    out = []
    for cone, signs in work:
        reduced = sorted(cone.ray_vectors())
        out.append(Chamber(
            tuple(signs),
            [lift(t, r) for r in reduced],
            [lift(t, l) for l in cone.lineality],
            reduced,
        ))
    out.sort(key=lambda ch: tuple(-s for s in ch.signs))
    return ChamberFan(d, forms, out)


# ---------------------------------------------------------------- lattice balls

def _decreasing(length: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    for combo in itertools.combinations_with_replacement(range(hi, lo - 1, -1), length):
        yield combo


def _count_decreasing(length: int, lo: int, hi: int) -> int:
    size = hi - lo + 1
    return comb(size + length - 1, length) if size > 0 else int(length == 0)


def _block_ranges(t: GaugeTheory, radius: int, norm: str) -> list[tuple[int, int, int | None]]:
    """Per block (lo, hi, forced last entry)."""
    if isinstance(t, Sl2Flavor):
        return [(0, radius, None)]
    if isinstance(t, U1Theory):
        return [(-radius, radius, None)]
    p = pin_index(t)
    out = []
    for start, b in zip(offsets(t), blocks(t)):
        if t.mod_center and norm == "canonical":
            out.append((0, radius, None))
        elif p is not None and start <= p < start + b:
            out.append((0, radius, 0))
        else:
            out.append((-radius, radius, None))
    return out


def ball_size(t: GaugeTheory, radius: int, norm: str = "canonical") -> int:
    """Candidates walked by ``lattice_ball``: exact for "pinned", an upper bound
    for "canonical" modulo the center (the min-zero filter runs afterwards)."""
    total = 1
    for (lo, hi, last), b in zip(_block_ranges(t, radius, norm), blocks(t)):
        total *= _count_decreasing(b - (last is not None), lo, hi)
    return total


def lattice_ball(t: GaugeTheory, radius: int, norm: str = "canonical", limit: int | None = None):
    """Sorted charges with |lam|_inf <= radius.

    ``norm="canonical"`` walks canonical representatives (modulo the center:
    minimum entry 0); ``norm="pinned"`` walks representatives whose pinned
    entry is 0.  Both hit every class exactly once.
    """
    limit = budget() if limit is None else limit
    size = ball_size(t, radius, norm)
    if size > limit:
        raise BudgetExceeded(f"ball of radius {radius} has {size} points > budget {limit}")
    per_block = []
    for (lo, hi, last), b in zip(_block_ranges(t, radius, norm), blocks(t)):
        if last is None:
            per_block.append(list(_decreasing(b, lo, hi)))
        else:
            per_block.append([seq + (0,) for seq in _decreasing(b - 1, lo, hi)])
    for lam in itertools.product(*per_block):
        if t.mod_center and norm == "canonical":
            flat = flatten(lam)
            if flat and min(flat) != 0:
                continue
        yield tuple(lam)


def brute_force_min(t: GaugeTheory, radius: int, limit: int | None = None):
    """Exhaustive (min 2*Delta, witness) over nonzero canonical charges in the ball."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    ev = evaluator(t)
    best = None
    for lam in lattice_ball(t, radius, "canonical", limit):
        flat = flatten(lam)
        if not any(flat):
            continue
        val = ev.two_delta_flat(flat)
        key = (val, witness_key(lam))
        if best is None or key < best[0]:
            best = (key, lam)
    if best is None:
        return None, None
    return best[0][0], best[1]


# ---------------------------------------------------------------- classification

def _trivial() -> Classification:
    cert = {"method": "trivial", "ray_count": 0, "kappa": None, "R": None, "radius_bound": 0, "norm": None}
    return Classification(GOOD, None, None, None, cert, ("trivial-charge-lattice",))


def _notes(t: GaugeTheory) -> tuple[str, ...]:
    if isinstance(t, Sl2Flavor) and t.n_flavors == 3:
        return ("sl2-n3-convention-sensitive",)
    return ()


def _pick(cands):
    """Smallest (value, witness order) among (value, coweight) pairs."""
    return min(cands, key=lambda vc: (vc[0], witness_key(vc[1])))


def _classify_chambers(t: GaugeTheory, max_dim: int) -> Classification:
    fan = chambers(t, max_dim)
    ev = evaluator(t)
    for ch in fan.chambers:
        if ch.lineality:
            lam = canonicalize(ch.lineality[0], t)
            cert = {"method": "chambers", "bad_ray": [list(b) for b in lam], "lineality": True}
            return Classification(BAD, lam, ev.two_delta_flat(flatten(lam)), None, cert, _notes(t))
    rays = sorted({r for ch in fan.chambers for r in ch.rays})
    vals = [(ev.two_delta_flat(flatten(r)), r) for r in rays]
    bad = [(v, canonicalize(r, t)) for v, r in vals if v <= 0]
    if bad:
        v, lam = _pick(bad)
        cert = {"method": "chambers", "bad_ray": [list(b) for b in lam], "chamber_count": len(fan.chambers)}
        return Classification(BAD, lam, v, None, cert, _notes(t))
    kappa = min(v for v, _ in vals)
    big_r = max(max(abs(x) for x in flatten(r)) for r in rays)
    # min 2*Delta <= kappa, and 2*Delta(lam) <= kappa forces |lam|_inf <= R.
    radius = max(big_r, -(-big_r // kappa))
    best = None
    for lam in lattice_ball(t, radius, "pinned"):
        flat = flatten(lam)
        if not any(flat):
            continue
        val = ev.two_delta_flat(flat)
        can = canonicalize(lam, t)
        key = (val, witness_key(can))
        if best is None or key < best[0]:
            best = (key, can)
    (m, _), lam = best
    cert = {
        "method": "chambers",
        "chamber_count": len(fan.chambers),
        "ray_count": len(rays),
        "kappa": str(Fraction(kappa)),
        "R": big_r,
        "radius_bound": radius,
        "norm": "pinned",
    }
    return Classification(UGLY if m == 1 else GOOD, lam, m, m, cert, _notes(t))


def braid_rays(t: GaugeTheory) -> list[Coweight]:
    """Sorted representatives of the 0/+-1 rays of the braid refinement."""
    if isinstance(t, Sl2Flavor):
        return [((1,),)]
    if isinstance(t, U1Theory):
        return [((1,),), ((-1,),)]
    out = []
    full = tuple(t.v)
    for ks in itertools.product(*(range(b + 1) for b in t.v)):
        if not any(ks):
            continue
        if t.mod_center:
            if ks == full:
                continue
            out.append(tuple((1,) * k + (0,) * (b - k) for k, b in zip(ks, t.v)))
        else:
            out.append(tuple((1,) * k + (0,) * (b - k) for k, b in zip(ks, t.v)))
            out.append(tuple((0,) * (b - k) + (-1,) * k for k, b in zip(ks, t.v)))
    return out


def _classify_braid(t: GaugeTheory) -> Classification:
    ev = evaluator(t)
    rays = braid_rays(t)
    vals = [(ev.two_delta_flat(flatten(r)), canonicalize(r, t)) for r in rays]
    m, lam = _pick(vals)
    if m <= 0:
        cert = {"method": "braid", "bad_ray": [list(b) for b in lam], "ray_count": len(rays)}
        return Classification(BAD, lam, m, None, cert, _notes(t))
    cert = {
        "method": "braid",
        "ray_count": len(rays),
        "kappa": str(Fraction(m)),
        "R": 1,
        "radius_bound": 1,
        "norm": "canonical",
    }
    return Classification(UGLY if m == 1 else GOOD, lam, m, m, cert, _notes(t))


def classify_theory(t: GaugeTheory, method: str = "auto", max_dim: int = DEFAULT_MAX_DIM) -> Classification:
    """Good / Ugly / Bad verdict with witness and certificate.

    ``method="auto"`` uses chambers up to ``max_dim`` reduced dimensions and the
    braid refinement beyond.
    """
    if reduced_dim(t) == 0:
        return _trivial()
    if method == "auto":
        method = "chambers" if reduced_dim(t) <= max_dim else "braid"
    if method == "chambers":
        return _classify_chambers(t, max_dim)
    if method == "braid":
        return _classify_braid(t)
    raise ValueError(f"unknown method {method!r}")


def scan_radius(cls: Classification, degree: int) -> int:
    """Radius (in the certificate's norm) containing every charge with 2*Delta <= degree."""
    cert = cls.certificate
    if cert.get("kappa") is None:
        return 0
    kappa = Fraction(cert["kappa"])
    r = Fraction(degree) * cert["R"] / kappa
    return int(-(-r.numerator // r.denominator))


# ---------------------------------------------------------------- finite-type sweep

def connected_vectors(q: Quiver, bound: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    for v in itertools.product(*(range(b + 1) for b in bound)):
        if any(v) and q.is_connected([i for i, x in enumerate(v) if x]):
            out.append(tuple(v))
    return out


@dataclass
class NeverGoodReport:
    quiver_type: str
    rows: list[tuple[tuple[int, ...], str, bool]]
    failures: list[tuple[tuple[int, ...], str, bool]]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_never_good(q: Quiver, v_bound: Sequence[int], method: str = "auto",
                      max_dim: int = DEFAULT_MAX_DIM) -> NeverGoodReport:
    """Classify every connected-support 0 < v <= v_bound (W = 0, modulo center).

    Rows are (v, verdict, v is a positive root).  A row fails when the verdict
    is Good, or (types A and D) when Ugly does not coincide with v being a root.
    """
    if classify_graph(q).tag != FINITE:
        raise ValueError("verify_never_good needs a finite ADE quiver")
    name = finite_type_name(q)
    roots = set(positive_roots_finite(cartan_matrix(q)).vectors())
    rows, failures = [], []
    for v in connected_vectors(q, v_bound):
        t = QuiverTheory(q, v, (0,) * q.n, PROD_GL_MOD_CENTER)
        verdict = classify_theory(t, method, max_dim).verdict
        row = (v, verdict, v in roots)
        rows.append(row)
        if verdict == GOOD or (name[0] in "AD" and (verdict == UGLY) != (v in roots)):
            failures.append(row)
    return NeverGoodReport(name, rows, failures)
