"""Exact double description for polyhedral cones given by homogeneous inequalities.

A ``Cone`` keeps a V-representation (lineality basis plus extreme rays, all
primitive integer vectors) together with the inequalities added so far; each
ray remembers which inequalities it saturates, which drives the combinatorial
adjacency test.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .quiver import primitive

Vec = tuple  # tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


def _combine(a: int, u: Sequence[int], b: int, x: Sequence[int]) -> Vec:
    return primitive([a * p + b * q for p, q in zip(u, x)])


@dataclass
class Cone:
    dim: int
    lineality: list[Vec]
    rays: list[tuple[Vec, frozenset]]
    constraints: list[Vec] = field(default_factory=list)

    @classmethod
    def full(cls, dim: int) -> "Cone":
        basis = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return cls(dim, basis, [], [])

    def ray_vectors(self) -> list[Vec]:
        return [r for r, _ in self.rays]

    def signs(self, f: Sequence[int]) -> tuple[bool, bool]:
        """(some generator has f > 0, some generator has f < 0); lineality counts both ways."""
        pos = neg = False
        for l in self.lineality:
            if dot(f, l):
                return True, True
        for r, _ in self.rays:
            s = dot(f, r)
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        return pos, neg

    def intersect(self, f: Sequence[int]) -> "Cone":
        """The cone intersected with the halfspace f >= 0 (one double-description step)."""
        f = tuple(f)
        fid = len(self.constraints)
        constraints = self.constraints + [f]
        vals = [dot(f, l) for l in self.lineality]
        j = next((k for k, s in enumerate(vals) if s), None)
        if j is not None:
            l = self.lineality[j]
            fl = vals[j]
            if fl < 0:
                l = tuple(-x for x in l)
                fl = -fl
            lin = [
                _combine(fl, other, -vals[k], l)
                for k, other in enumerate(self.lineality)
                if k != j
            ]
            lin = [x for x in lin if any(x)]
            rays = []
            for r, z in self.rays:
                fr = dot(f, r)
                rays.append((_combine(fl, r, -fr, l), z | {fid}))
            rays.append((l, frozenset(range(fid))))
            return Cone(self.dim, lin, rays, constraints)

        pos, zer, neg = [], [], []
        for item in self.rays:
            s = dot(f, item[0])
            (pos if s > 0 else neg if s < 0 else zer).append((item, s))
        out = [(r, z) for (r, z), _ in pos] + [(r, z | {fid}) for (r, z), _ in zer]
        need = self.dim - len(self.lineality) - 2
        everyone = self.rays
        for (p, zp), sp in pos:
            for (q, zq), sq in neg:
                common = zp & zq
                if len(common) < need:
                    continue
                adjacent = True
                for r, zr in everyone:
                    if r is p or r is q:
                        continue
                    if common <= zr:
                        adjacent = False
                        break
                if adjacent:
                    out.append((_combine(sp, q, -sq, p), common | {fid}))
        return Cone(self.dim, list(self.lineality), out, constraints)


def cone_from_inequalities(dim: int, inequalities: Sequence[Sequence[int]]) -> Cone:
    cone = Cone.full(dim)
    for f in inequalities:
        cone = cone.intersect(f)
    return cone
