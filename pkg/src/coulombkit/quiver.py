"""Quivers, dimension vectors, Cartan data and gauge-theory records.

Dimension vectors are plain integer tuples aligned with ``Quiver.vertices``;
``GaugeTheory`` is the union of the three theory records the toolkit
understands (quiver theories, SL(2) with flavors, U(1) with charged hypers).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .errors import TheoryError

PROD_GL = "prod-gl"
PROD_GL_MOD_CENTER = "prod-gl-mod-center"
GROUPS = (PROD_GL, PROD_GL_MOD_CENTER)

DimVector = tuple  # tuple[int, ...] aligned with Quiver.vertices


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = ()
    affine_vertex: str | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise TheoryError("duplicate-vertex", "vertex ids must be unique")
        known = set(self.vertices)
        for a, b in self.edges:
            if a not in known or b not in known:
                raise TheoryError("unknown-vertex", f"edge ({a}, {b}) has an undeclared endpoint")
        if self.affine_vertex is not None and self.affine_vertex not in known:
            raise TheoryError("unknown-vertex", f"affine vertex {self.affine_vertex!r} is not a vertex")
        for a, b in self.edges:
            if a == b and any(x != a for e in self.edges if a in e for x in e):
                raise TheoryError("loop-outside-jordan", f"vertex {a} carries a loop and other edges")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        return self.vertices.index(vertex)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """Edges as index pairs in declaration order (loops give ``(i, i)``)."""
        return [(self.index(a), self.index(b)) for a, b in self.edges]

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for i, j in self.edge_pairs():
            if i == j:
                a[i][i] += 2
            else:
                a[i][j] += 1
                a[j][i] += 1
        return a

    def loops(self, i: int) -> int:
        return sum(1 for a, b in self.edge_pairs() if a == b == i)

    def neighbours(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edge_pairs():
            if a == i and b != i:
                out.add(b)
            elif b == i and a != i:
                out.add(a)
        return out

    def is_connected(self, support: Sequence[int] | None = None) -> bool:
        nodes = set(range(self.n)) if support is None else set(support)
        if not nodes:
            return True
        start = min(nodes)
        seen = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in self.neighbours(i):
                if j in nodes and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen == nodes

    def without(self, vertex: str) -> "Quiver":
        verts = tuple(x for x in self.vertices if x != vertex)
        edges = tuple(e for e in self.edges if vertex not in e)
        return Quiver(verts, edges)


@dataclass(frozen=True)
class QuiverTheory:
    """Quiver gauge theory: gauge group prod GL(V_i), optionally modulo the diagonal scalars."""

    quiver: Quiver
    v: DimVector
    w: DimVector
    group: str = PROD_GL_MOD_CENTER

    def __post_init__(self):
        n = self.quiver.n
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if len(self.v) != n or len(self.w) != n:
            raise TheoryError("dimension-vector-domain", "v and w must have one entry per vertex")
        if any(x < 0 for x in self.v + self.w):
            raise TheoryError("negative-dimension", "dimension vectors are nonnegative")
        if self.group not in GROUPS:
            raise TheoryError("unknown-group", f"group must be one of {GROUPS}")
        if not any(self.v):
            raise TheoryError("zero-dimension-vector", "v must be nonzero for a quiver theory")
        if self.group == PROD_GL_MOD_CENTER:
            if any(self.w):
                raise TheoryError("mod-center-requires-w-zero", "the center is divided out only when W = 0")
            if not self.quiver.is_connected(self.support):
                raise TheoryError("support-disconnected", "support of v must be connected")

    @property
    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.v) if x]

    @property
    def mod_center(self) -> bool:
        return self.group == PROD_GL_MOD_CENTER

    @property
    def blocks(self) -> tuple[int, ...]:
        return self.v

    def cartan(self) -> list[list[int]]:
        return cartan_matrix(self.quiver)


@dataclass(frozen=True)
class Sl2Flavor:
    """SL(2) gauge theory with ``n_flavors`` fundamental hypermultiplets."""

    n_flavors: int

    def __post_init__(self):
        if int(self.n_flavors) != self.n_flavors or self.n_flavors < 0:
            raise TheoryError("negative-flavors", "number of flavors is a nonnegative integer")

    mod_center = False
    blocks = (1,)


@dataclass(frozen=True)
class U1Theory:
    """U(1) with one hypermultiplet per listed charge."""

    charges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "charges", tuple(int(q) for q in self.charges))
        if not self.charges or any(q == 0 for q in self.charges):
            raise TheoryError("u1-charges", "charges must be a nonempty list of nonzero integers")

    mod_center = False
    blocks = (1,)


GaugeTheory = Union[QuiverTheory, Sl2Flavor, U1Theory]


# ---------------------------------------------------------------- Cartan data

def cartan_matrix(q: Quiver) -> list[list[int]]:
    a = q.adjacency()
    return [[(2 if i == j else 0) - a[i][j] for j in range(q.n)] for i in range(q.n)]


def cartan_pairing(a: Sequence[int], b: Sequence[int], c: Sequence[Sequence[int]]) -> int:
    """Exact ``a^T C b``."""
    if len(a) != len(b) or len(a) != len(c):
        raise ValueError("dimension mismatch")
    return sum(a[i] * c[i][j] * b[j] for i in range(len(a)) for j in range(len(b)) if a[i] and b[j])


def mat_vec(c: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(ci[j] * x[j] for j in range(len(x))) for ci in c)


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


def _inertia(c: Sequence[Sequence[int]]) -> tuple[bool, int]:
    """Return (positive semidefinite?, nullity) by exact symmetric elimination."""
    m = [[Fraction(x) for x in row] for row in c]
    active = list(range(len(m)))
    while active:
        pivot = next((p for p in active if m[p][p] > 0), None)
        if pivot is None:
            if any(m[p][p] < 0 for p in active):
                return False, -1
            if any(m[i][j] != 0 for i in active for j in active):
                return False, -1
            return True, len(active)
        rest = [i for i in active if i != pivot]
        d = m[pivot][pivot]
        for i in rest:
            f = m[i][pivot] / d
            if f:
                for j in rest:
                    m[i][j] -= f * m[pivot][j]
        active = rest
    return True, 0


def nullspace(c: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Primitive integer basis of the rational kernel of ``c``."""
    rows = [[Fraction(x) for x in row] for row in c]
    ncols = len(c[0]) if c else 0
    pivots = []
    r = 0
    for col in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (j for j in range(ncols) if j not in pivots):
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i, col in enumerate(pivots):
            x[col] = -rows[i][free]
        den = 1
        for val in x:
            den = den * val.denominator // gcd(den, val.denominator)
        basis.append(primitive([int(val * den) for val in x]))
    return basis


FINITE, AFFINE, INDEFINITE = "Finite", "Affine", "Indefinite"


@dataclass(frozen=True)
class GraphClass:
    tag: str
    delta: DimVector | None = None


def classify_graph(q: Quiver) -> GraphClass:
    if not q.is_connected():
        raise TheoryError("quiver-disconnected", "graph classification needs a connected quiver")
    c = cartan_matrix(q)
    psd, nullity = _inertia(c)
    if psd and nullity == 0:
        return GraphClass(FINITE)
    if psd and nullity == 1:
        (k,) = nullspace(c)
        if k[0] < 0:
            k = tuple(-x for x in k)
        if all(x > 0 for x in k):
            return GraphClass(AFFINE, k)
    return GraphClass(INDEFINITE)


def affine_vertex_index(q: Quiver, delta: Sequence[int]) -> int:
    """The extending vertex: the declared one, else vertex "0", else the first with delta = 1."""
    if q.affine_vertex is not None:
        return q.index(q.affine_vertex)
    if "0" in q.vertices and delta[q.index("0")] == 1:
        return q.index("0")
    return next(i for i, d in enumerate(delta) if d == 1)


def finite_type_name(q: Quiver) -> str:
    """Dynkin label (``"A3"``, ``"D4"``, ``"E6"`` ...) of a connected finite-type quiver."""
    from .roots import positive_roots_finite

    if classify_graph(q).tag != FINITE:
        raise TheoryError("not-finite-type", "quiver is not of finite type")
    n = q.n
    count = len(positive_roots_finite(cartan_matrix(q)).roots)
    if count == n * (n + 1) // 2:
        return f"A{n}"
    if count == n * (n - 1):
        return f"D{n}"
    return {36: "E6", 63: "E7", 120: "E8"}[count]


# ---------------------------------------------------------------- catalog

def _path(names: Sequence[str]) -> tuple[tuple[str, str], ...]:
    return tuple((names[k], names[k + 1]) for k in range(len(names) - 1))


def type_a(n: int) -> Quiver:
    names = [str(i) for i in range(1, n + 1)]
    return Quiver(tuple(names), _path(names))


def type_d(n: int) -> Quiver:
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    names = [str(i) for i in range(1, n + 1)]
    edges = _path(names[: n - 1]) + ((names[n - 3], names[n - 1]),)
    return Quiver(tuple(names), edges)


def type_e(n: int) -> Quiver:
    """E6, E7, E8 in Bourbaki labelling (2 hangs off 4; chain 1-3-4-5-...)."""
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6..8")
    names = [str(i) for i in range(1, n + 1)]
    chain = ["1", "3", "4"] + [str(i) for i in range(5, n + 1)]
    return Quiver(tuple(names), _path(chain) + (("2", "4"),))


def affine_a(n: int) -> Quiver:
    """Cyclic quiver with n + 1 vertices; n = 1 gives the double edge."""
    names = [str(i) for i in range(n + 1)]
    if n == 1:
        return Quiver(("0", "1"), (("0", "1"), ("0", "1")), "0")
    return Quiver(tuple(names), _path(names) + ((names[-1], names[0]),), "0")


def affine_d(n: int) -> Quiver:
    if n < 4:
        raise ValueError("affine D_n needs n >= 4")
    base = type_d(n)
    return Quiver(("0",) + base.vertices, (("0", "2"),) + base.edges, "0")


def affine_e(n: int) -> Quiver:
    attach = {6: "2", 7: "1", 8: "8"}[n]
    base = type_e(n)
    return Quiver(("0",) + base.vertices, (("0", attach),) + base.edges, "0")


def jordan() -> Quiver:
    return Quiver(("0",), (("0", "0"),), "0")


# ---------------------------------------------------------------- theory documents

def theory_to_dict(t: GaugeTheory) -> dict:
    if isinstance(t, Sl2Flavor):
        return {"sl2_flavors": t.n_flavors}
    if isinstance(t, U1Theory):
        return {"u1_charges": list(t.charges)}
    q = t.quiver
    doc = {
        "vertices": list(q.vertices),
        "edges": [[a, b] for a, b in q.edges],
        "v": {x: t.v[i] for i, x in enumerate(q.vertices)},
        "w": {x: t.w[i] for i, x in enumerate(q.vertices)},
        "group": t.group,
    }
    if q.affine_vertex is not None:
        doc["affine_vertex"] = q.affine_vertex
    return doc


def serialize(t: GaugeTheory) -> str:
    return json.dumps(theory_to_dict(t), sort_keys=True, ensure_ascii=False)


def theory_from_dict(doc: dict) -> GaugeTheory:
    if not isinstance(doc, dict):
        raise TheoryError("malformed", "theory document must be a JSON object")
    if "sl2_flavors" in doc:
        n = doc["sl2_flavors"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise TheoryError("malformed", "sl2_flavors must be an integer")
        return Sl2Flavor(n)
    if "u1_charges" in doc:
        qs = doc["u1_charges"]
        if not isinstance(qs, list) or not all(isinstance(x, int) for x in qs):
            raise TheoryError("malformed", "u1_charges must be a list of integers")
        return U1Theory(tuple(qs))
    for key in ("vertices", "edges", "v"):
        if key not in doc:
            raise TheoryError("malformed", f"missing key {key!r}")
    vertices = tuple(str(x) for x in doc["vertices"])
    try:
        edges = tuple((str(a), str(b)) for a, b in doc["edges"])
    except (TypeError, ValueError):
        raise TheoryError("malformed", "edges must be a list of vertex pairs") from None
    affine = doc.get("affine_vertex")
    quiver = Quiver(vertices, edges, None if affine is None else str(affine))

    def vec(name):
        raw = doc.get(name, {})
        if not isinstance(raw, dict):
            raise TheoryError("malformed", f"{name} must map vertex ids to integers")
        raw = {str(k): x for k, x in raw.items()}
        extra = set(raw) - set(vertices)
        if extra:
            raise TheoryError("dimension-vector-domain", f"{name} names unknown vertices {sorted(extra)}")
        out = []
        for x in vertices:
            val = raw.get(x, 0)
            if not isinstance(val, int) or isinstance(val, bool):
                raise TheoryError("malformed", f"{name}[{x}] must be an integer")
            out.append(val)
        return tuple(out)

    return QuiverTheory(quiver, vec("v"), vec("w"), doc.get("group", PROD_GL_MOD_CENTER))


def parse_theory(text: str) -> GaugeTheory:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TheoryError("malformed", f"not valid JSON: {exc}") from None
    return theory_from_dict(doc)


def catalog(name: str) -> Quiver:
    """Quiver from a name such as ``A3``, ``D4``, ``E6``, ``affine-A2`` or ``jordan``."""
    key = name.strip()
    if key.lower() == "jordan":
        return jordan()
    builders = {"A": type_a, "D": type_d, "E": type_e}
    affine = {"A": affine_a, "D": affine_d, "E": affine_e}
    table = builders
    if key.lower().startswith("affine-"):
        key, table = key[len("affine-"):], affine
    if len(key) >= 2 and key[0].upper() in table and key[1:].isdigit():
        return table[key[0].upper()](int(key[1:]))
    raise ValueError(f"unknown quiver name {name!r}")
