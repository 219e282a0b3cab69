"""Complete-intersection tests for the moment-map fibre of a quiver theory.

Unframed: 2 - q(v) >= sum_k (2 - q(beta_k)) for every decomposition
v = sum_k beta_k, with q(x) = <x, Cx>.  Framed (extra framing vertex):
<v, 2w - Cv> >= <v0, 2w - Cv0> + sum_k (2 - q(beta_k)) for every split
v = v0 + sum_k beta_k into nonnegative v0 and nonzero beta_k.

The exhaustive checks maximise the right-hand side with a dynamic programme
over sub-vectors of v, which is equivalent to walking every decomposition;
``decompositions`` is the literal enumeration, kept as a cross-check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import BudgetExceeded, budget
from .quiver import (
    AFFINE,
    FINITE,
    QuiverTheory,
    affine_vertex_index,
    cartan_pairing,
    classify_graph,
    _inertia,
    mat_vec,
)
from .roots import RootTable, positive_roots_bounded, positive_roots_finite

FULL, FAST_FINITE, FAST_AFFINE = "full-enumeration", "fast-path-finite", "fast-path-affine"
ROOTS, VECTORS = "roots", "vectors"


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[int, ...], ...]
    remainder: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        out = {"parts": [list(p) for p in self.parts]}
        if self.remainder is not None:
            out["remainder"] = list(self.remainder)
        return out


@dataclass(frozen=True)
class CiReport:
    is_ci: bool
    method: str
    violation: Decomposition | None = None
    slack: int | None = None
    witness_root: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "is_ci": self.is_ci,
            "method": self.method,
            "violation": None if self.violation is None else self.violation.to_dict(),
            "slack": self.slack,
            "witness_root": None if self.witness_root is None else list(self.witness_root),
        }


def _below(v: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(u) for u in itertools.product(*(range(x + 1) for x in v))]


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def root_pool(c: Sequence[Sequence[int]], target: Sequence[int]) -> RootTable:
    """Positive roots <= target for a finite or affine Cartan matrix."""
    psd, nullity = _inertia(c)
    if psd and nullity == 0:
        table = positive_roots_finite(c)
        keep = tuple(rt for rt in table.roots if all(a <= b for a, b in zip(rt[0], target)))
        return RootTable(keep, None, tuple(target))
    if psd and nullity == 1:
        return positive_roots_bounded(c, target)
    raise ValueError("root pool needs a finite or affine Cartan matrix")


def _pool_vectors(c, target, pool) -> list[tuple[int, ...]]:
    if pool == VECTORS:
        return [u for u in _below(target) if any(u)]
    if pool == ROOTS:
        return root_pool(c, target).vectors()
    if isinstance(pool, RootTable):
        return [r for r in pool.vectors() if all(a <= b for a, b in zip(r, target))]
    return [tuple(p) for p in pool]


def decomposition_count(target: Sequence[int], parts: Sequence[Sequence[int]]) -> int:
    parts = [tuple(p) for p in parts]

    @lru_cache(maxsize=None)
    def count(rest: tuple, start: int) -> int:
        if not any(rest):
            return 1
        total = 0
        for k in range(start, len(parts)):
            p = parts[k]
            if all(a <= b for a, b in zip(p, rest)):
                total += count(_sub(rest, p), k)
        return total

    return count(tuple(target), 0)


def decompositions(
    target: Sequence[int],
    pool=VECTORS,
    c: Sequence[Sequence[int]] | None = None,
    limit: int | None = None,
) -> Iterator[Decomposition]:
    """Every multiset of pool vectors summing to ``target``, each exactly once.

    ``pool`` is ``"roots"`` (needs ``c``), ``"vectors"``, a RootTable, or an
    explicit list.  Parts are listed in pool order (graded lexicographic).
    """
    target = tuple(target)
    if pool == ROOTS and c is None:
        raise ValueError("the root pool needs a Cartan matrix")
    parts = sorted(_pool_vectors(c, target, pool), key=lambda p: (sum(p), p))
    limit = budget() if limit is None else limit
    n = decomposition_count(target, parts)
    if n > limit:
        raise BudgetExceeded(f"{n} decompositions exceed budget {limit}")

    def walk(rest, start, acc):
        if not any(rest):
            yield Decomposition(tuple(acc))
            return
        for k in range(start, len(parts)):
            p = parts[k]
            if all(a <= b for a, b in zip(p, rest)):
                yield from walk(_sub(rest, p), k, acc + [p])

    yield from walk(target, 0, [])


def _best_split(c, target, parts):
    """F(u) = max sum (2 - q(beta)) over decompositions of u, for all u <= target.

    Ties go to the largest part first, so reported violations are as coarse as possible.
    """
    parts = sorted(parts, key=lambda p: (sum(p), p), reverse=True)
    gain = {p: 2 - cartan_pairing(p, p, c) for p in parts}
    best: dict[tuple, tuple[int, tuple | None] | None] = {tuple(0 for _ in target): (0, None)}
    for u in sorted(_below(target), key=sum):
        if not any(u):
            continue
        top = None
        for p in parts:
            if all(a <= b for a, b in zip(p, u)):
                prev = best.get(_sub(u, p))
                if prev is None:
                    continue
                val = gain[p] + prev[0]
                if top is None or val > top[0]:
                    top = (val, p)
        best[u] = top
    return best


def _unwind(best, u) -> tuple[tuple[int, ...], ...]:
    parts = []
    while any(u):
        p = best[u][1]
        parts.append(p)
        u = _sub(u, p)
    return tuple(sorted(parts, key=lambda p: (sum(p), p)))


def unframed_ci(c: Sequence[Sequence[int]], v: Sequence[int], pool=ROOTS) -> CiReport:
    v = tuple(v)
    parts = _pool_vectors(c, v, pool)
    best = _best_split(c, v, parts)
    lhs = 2 - cartan_pairing(v, v, c)
    if not any(v):
        return CiReport(True, FULL)
    if best[v] is None or best[v][0] <= lhs:
        return CiReport(True, FULL)
    return CiReport(False, FULL, Decomposition(_unwind(best, v)), lhs - best[v][0])


def framed_ci(c: Sequence[Sequence[int]], v: Sequence[int], w: Sequence[int], pool=VECTORS) -> CiReport:
    v, w = tuple(v), tuple(w)
    parts = _pool_vectors(c, v, pool)
    best = _best_split(c, v, parts)

    def g(x):
        return sum(a * (2 * b - cb) for a, b, cb in zip(x, w, mat_vec(c, x)))

    lhs = g(v)
    worst = None
    for v0 in _below(v):
        rest = _sub(v, v0)
        if best.get(rest) is None:
            continue
        rhs = g(v0) + best[rest][0]
        if rhs > lhs and (worst is None or rhs > worst[0]):
            worst = (rhs, v0, rest)
    if worst is None:
        return CiReport(True, FULL)
    rhs, v0, rest = worst
    return CiReport(False, FULL, Decomposition(_unwind(best, rest), v0), lhs - rhs)


def ci_check_unframed(t: QuiverTheory, pool=ROOTS) -> CiReport:
    if any(t.w):
        raise ValueError("unframed check needs w = 0")
    return unframed_ci(t.cartan(), t.v, pool)


def ci_check_framed(t: QuiverTheory, pool=VECTORS) -> CiReport:
    if not any(t.w):
        raise ValueError("framed check needs w != 0")
    return framed_ci(t.cartan(), t.v, t.w, pool)


def _framing_weight(t: QuiverTheory) -> tuple[int, ...]:
    cv = mat_vec(t.cartan(), t.v)
    return tuple(a - b for a, b in zip(t.w, cv))


def ci_fast_path_finite(t: QuiverTheory) -> CiReport:
    """CI iff <beta, w - Cv> >= -1 for every positive root beta."""
    if classify_graph(t.quiver).tag != FINITE:
        raise ValueError("finite fast path needs a finite ADE quiver")
    if not any(t.w):
        raise ValueError("fast path needs w != 0")
    x = _framing_weight(t)
    for beta in positive_roots_finite(t.cartan()).vectors():
        s = sum(a * b for a, b in zip(beta, x))
        if s < -1:
            return CiReport(False, FAST_FINITE, slack=s + 1, witness_root=beta)
    return CiReport(True, FAST_FINITE)


def ci_fast_path_affine(t: QuiverTheory) -> CiReport:
    """CI iff <alpha, w - Cv> >= -1 and <delta, w> - <alpha, w - Cv> >= -1
    for every positive root alpha of the finite part."""
    gc = classify_graph(t.quiver)
    if gc.tag != AFFINE:
        raise ValueError("affine fast path needs an affine quiver")
    if not any(t.w):
        raise ValueError("fast path needs w != 0")
    c = t.cartan()
    delta = gc.delta
    zero = affine_vertex_index(t.quiver, delta)
    rest = [i for i in range(len(c)) if i != zero]
    x = _framing_weight(t)
    dw = sum(a * b for a, b in zip(delta, t.w))
    finite = positive_roots_finite([[c[i][j] for j in rest] for i in rest]).vectors() if rest else []
    for r in finite:
        alpha = [0] * len(c)
        for k, i in enumerate(rest):
            alpha[i] = r[k]
        s = sum(a * b for a, b in zip(alpha, x))
        if s < -1:
            return CiReport(False, FAST_AFFINE, slack=s + 1, witness_root=tuple(alpha))
        if dw - s < -1:
            return CiReport(False, FAST_AFFINE, slack=dw - s + 1,
                            witness_root=tuple(d - a for d, a in zip(delta, alpha)))
    return CiReport(True, FAST_AFFINE)


def is_ci(t: QuiverTheory) -> CiReport:
    """Exhaustive check matching the theory's framing."""
    return ci_check_framed(t) if any(t.w) else ci_check_unframed(t)

