"""Command-line front end: ``coulombkit <subcommand> ...``.

Exit status: 0 success, 1 a requested check failed, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .ci import ci_check_framed, ci_check_unframed, ci_fast_path_affine, ci_fast_path_finite
from .classify import classify_theory, DEFAULT_MAX_DIM
from .errors import BudgetExceeded, DimensionLimitError, TheoryError
from .hilbert import expand_rational, monopole_series, parse_rational
from .monopole import canonicalize, parse_coweight, two_delta
from .quiver import (
    AFFINE,
    FINITE,
    QuiverTheory,
    catalog,
    classify_graph,
    parse_theory,
    cartan_matrix,
)
from .roots import positive_roots_bounded, positive_roots_finite
from .strata import check_order_reversing_bijection, strata_affine_unframed, strata_framed_finite
from .surfaces import sl2_classify, sl2_higgs_summary, surface_record

CONVENTIONS = {"lattice": "own", "grading": "2Delta"}


def _digest(*parts: str | bytes) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p if isinstance(p, bytes) else p.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def report(command: str, digest: str, result, started: float | None) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "result": result,
        "timing": None if started is None else round(time.perf_counter() - started, 6),
        "version": __version__,
        "conventions": dict(CONVENTIONS),
    }


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load(path: str):
    raw = Path(path).read_text(encoding="utf-8")
    return parse_theory(raw), raw


# ---------------------------------------------------------------- subcommands

def cmd_classify(args, started):
    t, raw = _load(args.theory)
    cls = classify_theory(t, args.method, args.max_dim)
    _emit(report("classify", _digest(raw, args.method, str(args.max_dim)), cls.to_dict(), started))
    return 0


def cmd_delta(args, started):
    t, raw = _load(args.theory)
    lam = parse_coweight(args.coweight, t)
    result = {
        "coweight": [list(b) for b in lam],
        "canonical": [list(b) for b in canonicalize(lam, t)],
        "two_delta": two_delta(t, lam),
    }
    _emit(report("delta", _digest(raw, args.coweight), result, started))
    return 0


def _quiver_arg(text: str):
    if text.endswith(".json") or Path(text).is_file():
        t, _ = _load(text)
        if not isinstance(t, QuiverTheory):
            raise ValueError("roots need a quiver")
        return t.quiver, t.v
    return catalog(text), None


def cmd_roots(args, started):
    q, v = _quiver_arg(args.quiver)
    gc = classify_graph(q)
    c = cartan_matrix(q)
    if gc.tag == FINITE:
        table = positive_roots_finite(c)
    elif gc.tag == AFFINE:
        bound = tuple(int(x) for x in args.bound.split(",")) if args.bound else (v or gc.delta)
        table = positive_roots_bounded(c, bound)
    else:
        raise ValueError("roots are listed for finite and affine quivers only")
    sys.stdout.write("root\ttag\theight\n")
    for r, tag in table.roots:
        sys.stdout.write(f"{','.join(map(str, r))}\t{tag}\t{sum(r)}\n")
    return 0


def cmd_ci(args, started):
    t, raw = _load(args.theory)
    if not isinstance(t, QuiverTheory):
        raise ValueError("ci needs a quiver theory")
    framed = any(t.w)
    if args.method == "fast":
        if not framed:
            raise ValueError("fast paths apply to framed theories")
        tag = classify_graph(t.quiver).tag
        rep = ci_fast_path_finite(t) if tag == FINITE else ci_fast_path_affine(t)
    elif framed:
        rep = ci_check_framed(t, args.pool or "vectors")
    else:
        rep = ci_check_unframed(t, args.pool or "roots")
    _emit(report("ci", _digest(raw, args.method, args.pool or ""), rep.to_dict(), started))
    return 0


def cmd_strata(args, started):
    t, raw = _load(args.theory)
    if not isinstance(t, QuiverTheory):
        raise ValueError("strata need a quiver theory")
    if any(t.w):
        coulomb, higgs = strata_framed_finite(t)
        default_map = "identity"
    else:
        coulomb = strata_affine_unframed(t, "coulomb")
        higgs = strata_affine_unframed(t, "higgs")
        default_map = "transpose"
    if args.format == "dot":
        sys.stdout.write(coulomb.to_dot() + higgs.to_dot())
        return 0
    result = {"coulomb": coulomb.to_dict(), "higgs": higgs.to_dict()}
    mapping = args.check or default_map
    result["bijection"] = check_order_reversing_bijection(coulomb, higgs, mapping).to_dict()
    _emit(report("strata", _digest(raw, mapping), result, started))
    return 0


def cmd_hilbert(args, started):
    t, _ = _load(args.theory)
    series = monopole_series(t, args.cutoff, args.radius)
    sys.stdout.write("degree\tcoefficient\n" + series.to_tsv())
    if not series.certified:
        sys.stderr.write("warning: scan radius below the certified bound; output uncertified\n")
    if args.expect:
        want = expand_rational(parse_rational(args.expect), args.cutoff)
        if want != series:
            bad = [d for d in range(args.cutoff + 1) if want[d] != series[d]]
            sys.stderr.write(f"mismatch with {args.expect} at degrees {bad}\n")
            return 1
    return 0


def cmd_sl2(args, started):
    n = args.flavors
    result = {
        "surface": surface_record(n).to_dict(),
        "classification": sl2_classify(n).to_dict(),
        "higgs": sl2_higgs_summary(n),
    }
    _emit(report("sl2", _digest(str(n)), result, started))
    return 0


def cmd_verify(args, started):
    from .verify import run_checks

    directory = Path(args.fixtures) if args.fixtures else Path(__file__).with_name("fixtures")
    if not (directory / "checks.json").is_file():
        raise FileNotFoundError(f"no checks.json in {directory}")
    outcome = run_checks(directory, include_e6=args.e6, threads=args.threads)
    sys.stdout.write("status\tanchor\tcomputed\texpected\n")
    for row in outcome["rows"]:
        sys.stdout.write(f"{row['status']}\t{row['anchor']}\t{json.dumps(row['computed'], sort_keys=True)}"
                         f"\t{json.dumps(row['expected'], sort_keys=True)}\n")
    if args.archive:
        path = Path(args.archive)
        path.mkdir(parents=True, exist_ok=True)
        digest = _digest((directory / "checks.json").read_bytes(), str(args.e6))
        doc = report("verify-paper", digest, outcome, started)
        (path / "verify-paper.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    passed = outcome["passed"]
    sys.stdout.write(f"# {'PASS' if passed else 'FAIL'}: {outcome['asserted_pass']}/{outcome['asserted']} asserted"
                     f", {outcome['recorded']} recorded\n")
    return 0 if passed else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coulombkit", description="Exact Coulomb/Higgs branch combinatorics.")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in reports")
    p.add_argument("--version", action="version", version=f"coulombkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="good / ugly / bad verdict with certificate")
    s.add_argument("theory")
    s.add_argument("--method", choices=["auto", "chambers", "braid"], default="auto")
    s.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("delta", help="2*Delta of a coweight")
    s.add_argument("theory")
    s.add_argument("coweight", help='blocks split by ";" (e.g. "1,0;2") or a JSON list')
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("roots", help="positive roots as TSV")
    s.add_argument("quiver", help="catalog name (A3, D4, affine-A2, jordan) or theory file")
    s.add_argument("--bound", help="componentwise bound for affine quivers, e.g. 2,2")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("ci", help="complete-intersection test")
    s.add_argument("theory")
    s.add_argument("--method", choices=["full", "fast"], default="full")
    s.add_argument("--pool", choices=["roots", "vectors"])
    s.set_defaults(func=cmd_ci)

    s = sub.add_parser("strata", help="stratification posets")
    s.add_argument("theory")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.add_argument("--check", choices=["identity", "transpose"])
    s.set_defaults(func=cmd_strata)

    s = sub.add_parser("hilbert", help="truncated monopole Hilbert series as TSV")
    s.add_argument("theory")
    s.add_argument("--cutoff", type=int, required=True)
    s.add_argument("--expect", help='rational function such as "(1+t^3)/((1-t^2)(1-t^3))"')
    s.add_argument("--radius", type=int, help="override the certified scan radius")
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("sl2", help="SL(2) with N flavours: surface record and verdict")
    s.add_argument("--flavors", type=int, required=True)
    s.set_defaults(func=cmd_sl2)

    s = sub.add_parser("verify-paper", help="re-run every shipped fixture check")
    s.add_argument("--fixtures", help="directory holding checks.json and theory files")
    s.add_argument("--e6", action="store_true", help="also record the E6 highest-root verdict")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--archive", help="directory to write the JSON summary into")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter() if args.timing else None
    try:
        return args.func(args, started)
    except (TheoryError, ValueError, OSError, BudgetExceeded, DimensionLimitError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
