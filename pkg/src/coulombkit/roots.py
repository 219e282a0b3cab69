"""Positive roots of finite and affine ADE quivers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .quiver import cartan_pairing, nullspace, _inertia

REAL, IMAGINARY = "Real", "Imaginary"


@dataclass(frozen=True)
class RootTable:
    roots: tuple[tuple[tuple[int, ...], str], ...]
    delta: tuple[int, ...] | None
    bound: tuple[int, ...] | None

    def vectors(self) -> list[tuple[int, ...]]:
        return [r for r, _ in self.roots]

    def tag(self, vec: Sequence[int]) -> str | None:
        vec = tuple(vec)
        for r, tag in self.roots:
            if r == vec:
                return tag
        return None


def _graded(roots):
    return tuple(sorted(roots, key=lambda item: (sum(item[0]), item[0])))


def positive_roots_finite(c: Sequence[Sequence[int]]) -> RootTable:
    """Reflection closure of the simple roots; ``c`` must be positive definite."""
    psd, nullity = _inertia(c)
    if not (psd and nullity == 0):
        raise ValueError("positive_roots_finite needs a finite-type Cartan matrix")
    n = len(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                # s_i(beta) = beta - <alpha_i, C beta> alpha_i
                k = sum(c[i][j] * beta[j] for j in range(n))
                gamma = list(beta)
                gamma[i] -= k
                gamma = tuple(gamma)
                if all(x >= 0 for x in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return RootTable(_graded((r, REAL) for r in found), None, None)


def positive_roots_bounded(
    c: Sequence[Sequence[int]], bound: Sequence[int], affine_index: int | None = None
) -> RootTable:
    """Positive roots of an affine Cartan matrix lying below ``bound`` componentwise.

    Real roots are n*delta + alpha (n >= 0) and n*delta - alpha (n > 0) for the
    positive roots alpha of the finite system left after deleting the extending
    vertex; imaginary roots are n*delta.
    """
    psd, nullity = _inertia(c)
    if not (psd and nullity == 1):
        raise ValueError("positive_roots_bounded needs an affine Cartan matrix")
    (delta,) = nullspace(c)
    if delta[0] < 0:
        delta = tuple(-x for x in delta)
    bound = tuple(bound)
    n = len(c)
    if affine_index is None:
        affine_index = next(i for i, d in enumerate(delta) if d == 1)
    rest = [i for i in range(n) if i != affine_index]
    finite = []
    if rest:
        sub = [[c[i][j] for j in rest] for i in rest]
        for r in positive_roots_finite(sub).vectors():
            alpha = [0] * n
            for k, i in enumerate(rest):
                alpha[i] = r[k]
            finite.append(tuple(alpha))

    def below(x):
        return all(0 <= a <= b for a, b in zip(x, bound))

    out = []
    # n*delta -/+ alpha <= bound forces n <= bound at the extending vertex (delta = 1 there)
    for m in range(bound[affine_index] + 1):
        nd = tuple(m * d for d in delta)
        if m > 0 and below(nd):
            out.append((nd, IMAGINARY))
        for alpha in finite:
            plus = tuple(a + b for a, b in zip(nd, alpha))
            if below(plus):
                out.append((plus, REAL))
            if m > 0:
                minus = tuple(a - b for a, b in zip(nd, alpha))
                if below(minus):
                    out.append((minus, REAL))
    return RootTable(_graded(set(out)), tuple(delta), bound)


def is_positive_root(v: Sequence[int], table: RootTable) -> tuple[bool, str | None]:
    v = tuple(v)
    if table.bound is not None and not all(a <= b for a, b in zip(v, table.bound)):
        raise ValueError("vector exceeds the table bound")
    tag = table.tag(v)
    return tag is not None, tag


def is_dominant(weight: Sequence[int]) -> bool:
    return all(x >= 0 for x in weight)


def root_norm(beta: Sequence[int], c: Sequence[Sequence[int]]) -> int:
    return cartan_pairing(beta, beta, c)
