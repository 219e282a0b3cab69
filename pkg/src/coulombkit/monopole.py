"""Magnetic charges and the monopole-formula weight 2*Delta.

A coweight is a tuple of integer tuples, one per gauge block: one per quiver
vertex (length v_i), or a single length-1 block for SL(2) (the charge
diag(n, -n) is stored as ``((n,),)``) and for U(1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .quiver import GaugeTheory, QuiverTheory, Sl2Flavor, U1Theory

Coweight = tuple  # tuple[tuple[int, ...], ...]
Form = tuple  # tuple[int, ...] over flattened coweight coordinates


def blocks(t: GaugeTheory) -> tuple[int, ...]:
    return tuple(t.blocks)


def offsets(t: GaugeTheory) -> list[int]:
    out, acc = [], 0
    for b in blocks(t):
        out.append(acc)
        acc += b
    return out


def rank(t: GaugeTheory) -> int:
    return sum(blocks(t))


def flatten(lam: Coweight) -> tuple[int, ...]:
    return tuple(x for block in lam for x in block)


def unflatten(t: GaugeTheory, flat: Sequence[int]) -> Coweight:
    out, k = [], 0
    for b in blocks(t):
        out.append(tuple(int(x) for x in flat[k:k + b]))
        k += b
    return tuple(out)


def check_shape(t: GaugeTheory, lam: Coweight) -> None:
    if len(lam) != len(blocks(t)) or any(len(x) != b for x, b in zip(lam, blocks(t))):
        raise ValueError(f"coweight shape {tuple(len(x) for x in lam)} does not match {blocks(t)}")


def zero(t: GaugeTheory) -> Coweight:
    return tuple((0,) * b for b in blocks(t))


@dataclass(frozen=True)
class WeightMultiset:
    items: tuple[tuple[Form, int], ...]

    def multiplicity(self, form: Form) -> int:
        return sum(m for f, m in self.items if f == tuple(form))


def _unit(n: int, *pairs: tuple[int, int]) -> Form:
    f = [0] * n
    for idx, coef in pairs:
        f[idx] += coef
    return tuple(f)


def _collect(forms) -> tuple[tuple[Form, int], ...]:
    acc: dict[Form, int] = {}
    for f, m in forms:
        acc[f] = acc.get(f, 0) + m
    return tuple(sorted(acc.items(), key=lambda item: (tuple(-x for x in item[0]))))


def weight_multiset(t: GaugeTheory) -> WeightMultiset:
    """Weights of M = N + N* as linear forms on the coweight coordinates."""
    n = rank(t)
    if isinstance(t, Sl2Flavor):
        m = 2 * t.n_flavors
        return WeightMultiset(_collect([((1,), m), ((-1,), m)]) if m else ())
    if isinstance(t, U1Theory):
        return WeightMultiset(_collect(f for q in t.charges for f in [((q,), 1), ((-q,), 1)]))
    off = offsets(t)
    forms = []
    for i, j in t.quiver.edge_pairs():
        for k in range(t.v[i]):
            for p in range(t.v[j]):
                f = _unit(n, (off[j] + p, 1), (off[i] + k, -1))
                forms.append((f, 1))
                forms.append((tuple(-x for x in f), 1))
    for i, wi in enumerate(t.w):
        for k in range(t.v[i] if wi else 0):
            forms.append((_unit(n, (off[i] + k, 1)), wi))
            forms.append((_unit(n, (off[i] + k, -1)), wi))
    return WeightMultiset(_collect(forms))


def positive_root_forms(t: GaugeTheory) -> list[Form]:
    if isinstance(t, Sl2Flavor):
        return [(2,)]
    if isinstance(t, U1Theory):
        return []
    n = rank(t)
    off = offsets(t)
    out = []
    for i, vi in enumerate(t.v):
        for k in range(vi):
            for l in range(k + 1, vi):
                out.append(_unit(n, (off[i] + k, 1), (off[i] + l, -1)))
    return out


class Evaluator:
    """Compiled 4*Delta as a weighted sum of absolute values of sparse forms."""

    def __init__(self, t: GaugeTheory):
        self.theory = t
        terms: dict[tuple, int] = {}
        for f in positive_root_forms(t):
            key = _sparse(f)
            terms[key] = terms.get(key, 0) - 4
        for f, m in weight_multiset(t).items:
            key = _sparse(_sign_normal(f))
            terms[key] = terms.get(key, 0) + m
        self.terms = [(list(k), c) for k, c in terms.items() if c and k]

    def four_delta(self, flat: Sequence[int]) -> int:
        total = 0
        for pairs, coef in self.terms:
            s = 0
            for idx, a in pairs:
                s += a * flat[idx]
            if s:
                total += coef * (s if s > 0 else -s)
        return total

    def two_delta_flat(self, flat: Sequence[int]) -> int:
        q = self.four_delta(flat)
        if q % 2:
            raise ArithmeticError("half-integral 2*Delta: weights are not symplectically paired")
        return q // 2


def _sparse(f: Form) -> tuple:
    return tuple((i, a) for i, a in enumerate(f) if a)


def _sign_normal(f: Form) -> Form:
    for a in f:
        if a:
            return f if a > 0 else tuple(-x for x in f)
    return f


@lru_cache(maxsize=512)
def evaluator(t: GaugeTheory) -> Evaluator:
    return Evaluator(t)


def two_delta(t: GaugeTheory, lam: Coweight) -> int:
    """2*Delta(lam) from the root system of G and the weights of M."""
    check_shape(t, lam)
    return evaluator(t).two_delta_flat(flatten(lam))


def two_delta_quiver_closed_form(t: GaugeTheory, lam: Coweight) -> int:
    if not isinstance(t, QuiverTheory):
        raise TypeError("closed form applies to quiver theories only")
    check_shape(t, lam)
    total = 0
    for i, block in enumerate(lam):
        for k in range(len(block)):
            for l in range(k + 1, len(block)):
                total -= 2 * abs(block[k] - block[l])
    for i, j in t.quiver.edge_pairs():
        for a in lam[i]:
            for b in lam[j]:
                total += abs(a - b)
    for i, wi in enumerate(t.w):
        total += wi * sum(abs(a) for a in lam[i])
    return total


def canonicalize(lam: Coweight, t: GaugeTheory) -> Coweight:
    """Weyl-sort each block decreasingly; SL(2) charges are made nonnegative;
    modulo the center the global minimum is shifted to 0."""
    check_shape(t, lam)
    if isinstance(t, Sl2Flavor):
        return ((abs(lam[0][0]),),)
    out = tuple(tuple(sorted(block, reverse=True)) for block in lam)
    if t.mod_center:
        flat = flatten(out)
        if flat:
            m = min(flat)
            out = tuple(tuple(x - m for x in block) for block in out)
    return out


def witness_key(lam: Coweight) -> tuple:
    """Tie-break order for reported witnesses: total size, then largest entries first."""
    flat = flatten(lam)
    return (sum(abs(x) for x in flat), tuple(-x for x in flat))


def parse_coweight(text: str, t: GaugeTheory) -> Coweight:
    """Parse ``"1,0;2"`` (blocks split by ``;``) or a JSON nested list."""
    import json

    text = text.strip()
    if text.startswith("["):
        raw = json.loads(text)
        if raw and all(isinstance(x, int) for x in raw):
            lam = unflatten(t, raw)
            if len(raw) != rank(t):
                raise ValueError("coweight length does not match the gauge rank")
        else:
            lam = tuple(tuple(int(x) for x in block) for block in raw)
    else:
        parts = [p for p in text.split(";")]
        lam = tuple(tuple(int(x) for x in p.split(",") if x.strip()) for p in parts)
    check_shape(t, lam)
    return lam
