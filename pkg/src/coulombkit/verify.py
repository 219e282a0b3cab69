"""Fixture-driven re-check of the proved statements.

``checks.json`` is a list of entries ``{"anchor", "kind", ..., "expected"}``.
Asserted entries pass when the computed value equals ``expected``; entries
with ``"recorded": true`` are reported but never fail the run.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .ci import ci_check_framed, ci_check_unframed, ci_fast_path_affine, ci_fast_path_finite
from .classify import BAD, GOOD, UGLY, classify_theory, verify_never_good
from .hilbert import expand_rational, molien_cyclic, monopole_series
from .quiver import (
    FINITE,
    PROD_GL_MOD_CENTER,
    QuiverTheory,
    affine_vertex_index,
    cartan_matrix,
    catalog,
    classify_graph,
    mat_vec,
    parse_theory,
)
from .roots import is_dominant, positive_roots_finite
from .strata import check_order_reversing_bijection, strata_affine_unframed, strata_framed_finite
from .surfaces import sl2_classify, surface_record


def _theory(directory: Path, name: str):
    return parse_theory((directory / name).read_text(encoding="utf-8"))


def _subset(computed: dict, keys) -> dict:
    return {k: computed[k] for k in keys}


def affine_ci_targets(q) -> set[tuple[int, ...]]:
    """alpha, delta - alpha and delta for alpha a positive root of the finite part."""
    gc = classify_graph(q)
    delta = gc.delta
    zero = affine_vertex_index(q, delta)
    rest = [i for i in range(q.n) if i != zero]
    out = {tuple(delta)}
    if rest:
        full = cartan_matrix(q)
        c = [[full[i][j] for j in rest] for i in rest]
        for r in positive_roots_finite(c).vectors():
            alpha = [0] * q.n
            for k, i in enumerate(rest):
                alpha[i] = r[k]
            out.add(tuple(alpha))
            out.add(tuple(d - a for d, a in zip(delta, alpha)))
    return out


def _check(directory: Path, entry: dict) -> dict:
    kind = entry["kind"]
    if kind == "classify":
        t = _theory(directory, entry["theory"])
        got = classify_theory(t).to_dict()
        return _subset(got, entry["expected"].keys())
    if kind == "sl2-verdict":
        got = sl2_classify(entry["n"]).to_dict()
        return _subset(got, entry["expected"].keys())
    if kind == "ci":
        t = _theory(directory, entry["theory"])
        rep = ci_check_framed(t) if any(t.w) else ci_check_unframed(t)
        return {"is_ci": rep.is_ci}
    if kind == "fast-path":
        t = _theory(directory, entry["theory"])
        fast = ci_fast_path_finite(t) if classify_graph(t.quiver).tag == FINITE else ci_fast_path_affine(t)
        return {"is_ci": fast.is_ci, "agrees_with_full": fast.is_ci == ci_check_framed(t).is_ci}
    if kind == "good-implies":
        t = _theory(directory, entry["theory"])
        cls = classify_theory(t)
        weight = tuple(a - b for a, b in zip(t.w, mat_vec(t.cartan(), t.v)))
        good = cls.verdict == GOOD
        return {
            "good": good,
            "ci_holds": (not good) or ci_check_framed(t).is_ci,
            "dominant_holds": (not good) or is_dominant(weight),
        }
    if kind == "never-good":
        q = catalog(entry["quiver"])
        rep = verify_never_good(q, entry["bound"])
        trivial = [list(v) for v, _, _ in rep.rows if sum(v) == 1]
        nontrivial_fail = [list(v) for v, *_ in rep.failures if sum(v) > 1]
        return {"ok": not nontrivial_fail, "checked": len(rep.rows) - len(trivial),
                "trivial_group": trivial}
    if kind == "unframed-ci-roots":
        q = catalog(entry["quiver"])
        gc = classify_graph(q)
        if gc.tag == FINITE:
            targets = set(positive_roots_finite(cartan_matrix(q)).vectors())
        else:
            targets = affine_ci_targets(q)
        bad = []
        for v in itertools.product(*(range(b + 1) for b in entry["bound"])):
            if not any(v) or not q.is_connected([i for i, x in enumerate(v) if x]):
                continue
            t = QuiverTheory(q, v, (0,) * q.n, PROD_GL_MOD_CENTER)
            if ci_check_unframed(t).is_ci != (v in targets):
                bad.append(list(v))
        return {"ok": not bad, "mismatches": bad}
    if kind == "hilbert":
        t = _theory(directory, entry["theory"])
        got = monopole_series(t, entry["cutoff"])
        if "rational" in entry:
            want = expand_rational(entry["rational"], entry["cutoff"])
        else:
            order, weights = entry["molien"]
            want = molien_cyclic(order, weights, entry["cutoff"])
        return {"matches": got == want, "coeffs": list(got.coeffs)}
    if kind == "sl2-surface":
        rec = surface_record(entry["n"]).to_dict()
        return _subset(rec, entry["expected"].keys())
    if kind == "strata-bijection":
        t = _theory(directory, entry["theory"])
        if any(t.w):
            a, b = strata_framed_finite(t)
        else:
            a, b = strata_affine_unframed(t, "coulomb"), strata_affine_unframed(t, "higgs")
        rep = check_order_reversing_bijection(a, b, entry["map"]).to_dict()
        out = _subset(rep, entry["expected"].keys() - {"elements"})
        if "elements" in entry["expected"]:
            out["elements"] = [list(e) for e in a.elements]
        return out
    if kind == "strata-elements":
        t = _theory(directory, entry["theory"])
        poset = strata_affine_unframed(t, "coulomb")
        return {"elements": [list(e) for e in poset.elements]}
    if kind == "e6-highest-root":
        t = _theory(directory, entry["theory"])
        cls = classify_theory(t)
        return {"verdict": cls.verdict, "never_good": cls.verdict in (UGLY, BAD),
                "witness": cls.to_dict()["witness"], "certificate": cls.certificate}
    raise ValueError(f"unknown check kind {kind!r}")


def _row(directory: Path, entry: dict) -> dict:
    try:
        computed = _check(directory, entry)
    except Exception as exc:  # a crashing check is a failed check, not a crashed run
        computed = {"error": f"{type(exc).__name__}: {exc}"}
    recorded = bool(entry.get("recorded"))
    expected = entry.get("expected")
    if recorded:
        status = "recorded"
    else:
        status = "pass" if computed == expected else "FAIL"
    return {"anchor": entry["anchor"], "kind": entry["kind"], "status": status,
            "computed": computed, "expected": expected}


def run_checks(directory: Path, include_e6: bool = False, threads: int = 1) -> dict:
    entries = json.loads((directory / "checks.json").read_text(encoding="utf-8"))
    entries = [e for e in entries if include_e6 or e["kind"] != "e6-highest-root"]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(lambda e: _row(directory, e), entries))
    asserted = [r for r in rows if r["status"] != "recorded"]
    ok = [r for r in asserted if r["status"] == "pass"]
    return {
        "rows": rows,
        "asserted": len(asserted),
        "asserted_pass": len(ok),
        "recorded": len(rows) - len(asserted),
        "passed": len(ok) == len(asserted),
    }
