"""Stratification posets of Coulomb and Higgs branches.

Order convention for every poset here: ``leq(x, y)`` means the stratum y lies
in the closure of the stratum x, so the open stratum is the minimum.

Labels pair a *stratum* theory with a *slice* theory.  A theory descriptor is
a list of components ``{"quiver": "Q" | "jordan", "v": [...], "w": [...]}``;
"Q" is the quiver of the input theory.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .quiver import AFFINE, FINITE, Quiver, QuiverTheory, cartan_matrix, classify_graph, mat_vec
from .roots import is_dominant

COULOMB, HIGGS = "coulomb", "higgs"

Element = tuple  # a dimension vector or a partition (weakly decreasing tuple)


def component(quiver: str, v: Sequence[int], w: Sequence[int]) -> dict:
    return {"quiver": quiver, "v": list(v), "w": list(w)}


def canonical_descriptor(desc: Sequence[dict]) -> tuple:
    """Components with v = 0 dropped, order forgotten."""
    keep = [(d["quiver"], tuple(d["v"]), tuple(d["w"])) for d in desc if any(d["v"])]
    return tuple(sorted(keep))


@dataclass
class StratumPoset:
    kind: str
    side: str
    elements: list[Element]
    relation: set[tuple[Element, Element]]
    labels: dict[Element, dict]
    flags: dict[Element, list[str]] = field(default_factory=dict)

    def leq(self, x: Element, y: Element) -> bool:
        return x == y or (x, y) in self.relation

    @property
    def covers(self) -> list[tuple[Element, Element]]:
        out = []
        for x, y in sorted(self.relation):
            if x == y:
                continue
            if not any(
                z not in (x, y) and (x, z) in self.relation and (z, y) in self.relation
                for z in self.elements
            ):
                out.append((x, y))
        return out

    def minimal(self) -> list[Element]:
        return [y for y in self.elements if not any((x, y) in self.relation for x in self.elements if x != y)]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "side": self.side,
            "order": "leq(x, y): y lies in the closure of x",
            "elements": [list(e) for e in self.elements],
            "covers": [[list(x), list(y)] for x, y in self.covers],
            "labels": [
                {"element": list(e), "stratum": self.labels[e]["stratum"], "slice": self.labels[e]["slice"]}
                for e in self.elements
            ],
            "flags": [{"element": list(e), "flags": self.flags.get(e, [])} for e in self.elements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_dot(self) -> str:
        def name(e):
            return "(" + ",".join(map(str, e)) + ")"

        lines = [f'digraph "{self.kind}-{self.side}" {{', "  rankdir=BT;"]
        for e in self.elements:
            shape = "box" if self.flags.get(e) else "ellipse"
            lines.append(f'  "{name(e)}" [shape={shape}];')
        for x, y in self.covers:
            lines.append(f'  "{name(x)}" -> "{name(y)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _closure(elements: Sequence[Element], moves: Callable[[Element], Iterable[Element]]) -> set:
    inside = set(elements)
    rel = set()
    for x in elements:
        seen, todo = {x}, deque([x])
        while todo:
            y = todo.popleft()
            for z in moves(y):
                if z in inside and z not in seen:
                    seen.add(z)
                    todo.append(z)
        rel.update((x, y) for y in seen if y != x)
    return rel


# ---------------------------------------------------------------- framed finite type

def framed_strata(q: Quiver, v: Sequence[int], w: Sequence[int]) -> tuple[StratumPoset, StratumPoset]:
    """Strata indexed by 0 <= v' <= v with w - Cv' dominant."""
    c = cartan_matrix(q)
    v, w = tuple(v), tuple(w)

    def weight(x):
        return tuple(a - b for a, b in zip(w, mat_vec(c, x)))

    elements = [
        tuple(x) for x in itertools.product(*(range(a + 1) for a in v)) if is_dominant(weight(x))
    ]
    elements.sort(key=lambda x: (sum(x), x))
    below = {(x, y) for x in elements for y in elements if x != y and all(a <= b for a, b in zip(x, y))}
    coulomb_labels, higgs_labels = {}, {}
    for x in elements:
        rest = tuple(a - b for a, b in zip(v, x))
        outer = [component("Q", rest, weight(x))]
        inner = [component("Q", x, w)]
        coulomb_labels[x] = {"stratum": outer, "slice": inner}
        higgs_labels[x] = {"stratum": inner, "slice": outer}
    coulomb = StratumPoset("framed-finite", COULOMB, elements, below, coulomb_labels)
    higgs = StratumPoset("framed-finite", HIGGS, elements, {(y, x) for x, y in below}, higgs_labels)
    return coulomb, higgs


def strata_framed_finite(t: QuiverTheory) -> tuple[StratumPoset, StratumPoset]:
    if not any(t.w):
        raise ValueError("framed strata need w != 0")
    if classify_graph(t.quiver).tag != FINITE:
        raise ValueError("framed strata need a finite ADE quiver")
    return framed_strata(t.quiver, t.v, t.w)


# ---------------------------------------------------------------- affine, unframed

def partitions(n: int, largest: int | None = None):
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def transpose(nu: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(1 for p in nu if p > k) for k in range(nu[0])) if nu else ()


def multiplicities(nu: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in nu:
        out[p] = out.get(p, 0) + 1
    return out


def _merges(nu):
    for i, j in itertools.combinations(range(len(nu)), 2):
        rest = [p for k, p in enumerate(nu) if k not in (i, j)]
        yield tuple(sorted(rest + [nu[i] + nu[j]], reverse=True))


def _coulomb_moves(nu):
    yield from _merges(nu)
    yield tuple(sorted(nu + (1,), reverse=True))


def _higgs_moves(nu):
    yield from _merges(nu)
    for i in range(len(nu)):
        yield nu[:i] + nu[i + 1:]


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """Every partial sum of a is at least the matching partial sum of b (zero-padded)."""
    n = max(len(a), len(b))
    sa = sb = 0
    for k in range(n):
        sa += a[k] if k < len(a) else 0
        sb += b[k] if k < len(b) else 0
        if sa < sb:
            return False
    return True


def _is_jordan(q: Quiver) -> bool:
    return q.n == 1 and q.loops(0) > 0


def strata_affine_unframed(t: QuiverTheory, side: str = COULOMB) -> StratumPoset:
    """Strata indexed by partitions nu with v - |nu| delta >= 0.

    Coulomb closure moves: merge two parts, add a part.  Higgs closure moves:
    merge two parts, send a part to the origin (delete it).  For the Jordan
    quiver only |nu| = v occurs.
    """
    q = t.quiver
    gc = classify_graph(q)
    if gc.tag != AFFINE:
        raise ValueError("affine strata need an affine or Jordan quiver")
    if any(t.w) or not t.mod_center:
        raise ValueError("affine strata need w = 0 and the group modulo its center")
    if side not in (COULOMB, HIGGS):
        raise ValueError(f"side must be {COULOMB!r} or {HIGGS!r}")
    delta = gc.delta
    jordan = _is_jordan(q)
    top = min(a // d for a, d in zip(t.v, delta))
    sizes = [top] if jordan else range(top + 1)
    elements = [nu for n in sizes for nu in partitions(n)]
    elements.sort(key=lambda nu: (sum(nu), tuple(-p for p in nu)))
    moves = _coulomb_moves if side == COULOMB else _higgs_moves
    rel = _closure(elements, moves)
    zero_w = [0] * q.n
    e0 = [0] * q.n
    e0[0 if q.affine_vertex is None else q.index(q.affine_vertex)] = 1
    labels, flags = {}, {}
    for nu in elements:
        rest = [a - sum(nu) * d for a, d in zip(t.v, delta)]
        mult = multiplicities(nu)
        genuine = component("Q", rest, zero_w)
        if side == COULOMB:
            stratum = [genuine] + [component("jordan", [m], [0]) for _, m in sorted(mult.items())]
            slice_ = [component("Q", [k * d for d in delta], e0) for k in nu]
        else:
            stratum = [component("Q", [m * d for d in delta], e0) for _, m in sorted(mult.items())]
            slice_ = [genuine] + [component("jordan", [k], [0]) for k in nu]
        labels[nu] = {"stratum": stratum, "slice": slice_}
        f = []
        if nu and set(nu) == {1}:
            f.append("special")
        if not jordan and any(rest):
            f.append("assumes-genuine-nonempty")
        flags[nu] = f
    return StratumPoset("affine-unframed", side, elements, rel, labels, flags)


# ---------------------------------------------------------------- bijections

@dataclass
class BijectionReport:
    map: str
    is_order_reversing: bool
    labels_match: bool
    mismatches: list[dict]
    order_violations: list[tuple[Element, Element]]

    def to_dict(self) -> dict:
        return {
            "map": self.map,
            "is_order_reversing": self.is_order_reversing,
            "labels_match": self.labels_match,
            "mismatches": self.mismatches,
            "order_violations": [[list(x), list(y)] for x, y in self.order_violations],
        }


def check_order_reversing_bijection(a: StratumPoset, b: StratumPoset, map="identity") -> BijectionReport:
    """Does ``map`` reverse order from a to b, exchanging stratum and slice labels?

    ``map`` is ``"identity"``, ``"transpose"`` (partitions) or a callable.
    """
    if map == "identity":
        fn, name = (lambda x: x), "identity"
    elif map == "transpose":
        fn, name = transpose, "transpose"
    else:
        fn, name = map, getattr(map, "__name__", "custom")
    image = {x: fn(x) for x in a.elements}
    if sorted(image.values()) != sorted(b.elements) or len(set(image.values())) != len(a.elements):
        raise ValueError(f"{name} is not a bijection between the element sets")
    violations = [
        (x, y) for x in a.elements for y in a.elements
        if x != y and a.leq(x, y) and not b.leq(image[y], image[x])
    ]
    mismatches = []
    for x in a.elements:
        la, lb = a.labels[x], b.labels[image[x]]
        for here, there in (("stratum", "slice"), ("slice", "stratum")):
            if canonical_descriptor(la[here]) != canonical_descriptor(lb[there]):
                mismatches.append({
                    "element": list(x),
                    "image": list(image[x]),
                    "compared": f"{a.side} {here} vs {b.side} {there}",
                    a.side: la[here],
                    b.side: lb[there],
                })
    return BijectionReport(name, not violations, not mismatches, mismatches, violations)
