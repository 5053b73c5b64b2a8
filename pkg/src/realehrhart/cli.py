"""Command-line entry point.

Exit codes: 0 ok, 2 invalid input, 3 point or window budget exceeded,
4 a checked property failed, 5 reconstruction did not pass.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .ehrhart import (
    BUDGET_ENV,
    Breakpoint,
    QStepFunction,
    WindowTooLarge,
    count,
    csv_lines,
    facet_point_counts,
    jumps,
    lifting,
    ppyr_step_function,
    step_function,
    window_function,
)
from .exactmath import format_rat, parse_rat
from .harness import (
    EmptyGrid,
    InstanceSpec,
    check_translates_distinct,
    find_translation_witness,
    fitted_envelope,
    generate_instances,
    run_suite,
    rvol_limit_check,
    summarize,
)
from .polytope import FacetKind, HPolytope, affine_hull, from_json, ppyr_volume, rvol
from .reconstruct import EhrhartOracle, OracleBudgetExceeded, ReconstructionConfig, recover

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_PROPERTY, EXIT_UNRESOLVED = 0, 2, 3, 4, 5
TEST_MODE_ENV = "REALEHRHART_TEST_MODE"


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_polytope(path: str) -> HPolytope:
    return from_json(_load_json(path))


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _rat_list(values: Sequence[str] | None, dim: int) -> tuple[Fraction, ...]:
    if values is None:
        return tuple(Fraction(0) for _ in range(dim))
    if len(values) != dim:
        raise ValueError(f"expected {dim} coordinates, got {len(values)}")
    return tuple(parse_rat(v) for v in values)


def _corrupt(f: QStepFunction) -> QStepFunction:
    """Test-mode fault: the first breakpoint reports one extra lattice point."""
    if not f.breaks:
        return f
    first = f.breaks[0]
    broken = (Breakpoint(first.s, first.at + 1, first.after),) + f.breaks[1:]
    return QStepFunction(f.lo, f.hi, f.base, broken, f.events)


# -- subcommands ------------------------------------------------------------


def cmd_count(args) -> int:
    P = _load_polytope(args.polytope)
    print(count(P, parse_rat(args.s)))
    return EXIT_OK


def cmd_stepfn(args) -> int:
    P = _load_polytope(args.polytope)
    lo, hi = parse_rat(args.lo), parse_rat(args.S)
    f = step_function(P, hi) if lo == 0 else window_function(P, lo, hi)
    if args.format == "csv":
        print("\n".join(csv_lines(f)))
    else:
        _emit(f.to_json())
    return EXIT_OK


def cmd_jumps(args) -> int:
    P = _load_polytope(args.polytope)
    f = step_function(P, parse_rat(args.S))
    if args.inject_fault:
        if os.environ.get(TEST_MODE_ENV) != "1":
            raise ValueError(f"--inject-fault needs {TEST_MODE_ENV}=1")
        f = _corrupt(f)
    reps = jumps(f)
    ss = [r.s0 for r in reps]
    front = facet_point_counts(P, ss, FacetKind.FRONT)
    back = facet_point_counts(P, ss, FacetKind.BACK)
    rows = []
    for r, fc, bc in zip(reps, front, back):
        ok = r.left_jump == fc and r.right_jump == bc
        rows.append({
            "s": format_rat(r.s0),
            "left_jump": format_rat(r.left_jump),
            "right_jump": format_rat(r.right_jump),
            "front_facet_points": fc,
            "back_facet_points": bc,
            "check": "OK" if ok else "FAIL",
        })
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["s"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        print(buf.getvalue(), end="")
    else:
        _emit(rows)
    return EXIT_OK if all(r["check"] == "OK" for r in rows) else EXIT_PROPERTY


def cmd_ppyr(args) -> int:
    P = _load_polytope(args.polytope)
    dec, hull = ppyr_volume(P)
    out = {"decomposition": format_rat(dec), "hull": format_rat(hull), "equal": dec == hull}
    ok = dec == hull
    if args.S is not None:
        S = parse_rat(args.S)
        lifted = lifting(step_function(P, S))
        brute = ppyr_step_function(P, S)
        where = lifted.first_difference(brute)
        out["stepfn"] = brute.to_json()
        out["lifting_matches"] = where is None
        ok = ok and where is None
    _emit(out)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_rvol(args) -> int:
    P = _load_polytope(args.polytope)
    v = _rat_list(args.v, P.dim)
    grid = list(range(1, args.s_max + 1))
    devs = rvol_limit_check(P, v, grid)
    hd = affine_hull(P).hull_dim
    kept = grid if hd == P.dim else [s for s in grid if (s * _level(P, v)).denominator == 1]
    out = {
        "rvol": format_rat(rvol(P)),
        "deviations": [[s, format_rat(d)] for s, d in zip(kept, devs)],
    }
    ok = True
    if args.envelope:
        env = fitted_envelope(P)
        out["envelope"] = {k: format_rat(x) if isinstance(x, Fraction) else x for k, x in env.items()}
        ok = env["passed"]
    _emit(out)
    return EXIT_OK if ok else EXIT_PROPERTY


def _level(P: HPolytope, v) -> Fraction:
    from .polytope import flatten_codim1, translate

    return flatten_codim1(translate(P, v)).b


def cmd_reconstruct(args) -> int:
    if (args.hidden is None) == (args.seed is None):
        raise ValueError("give exactly one of --hidden or --seed")
    if args.hidden is not None:
        hidden = _load_polytope(args.hidden)
    else:
        hidden = generate_instances(InstanceSpec(dim=args.dim, count=1, seed=args.seed))[0]
    normals = _load_json(args.normals) if args.normals else [list(a) for a, _ in hidden.ineqs]
    if not isinstance(normals, list) or not all(isinstance(n, list) for n in normals):
        raise ValueError("normals file must hold a list of integer vectors")
    cfg = ReconstructionConfig.from_json(_load_json(args.config) if args.config else {})
    if args.k_max is not None:
        cfg.schedule = [k for k in cfg.schedule if k <= args.k_max]
        cfg.extensions = [[k for k in ext if k <= args.k_max] for ext in cfg.extensions]
        cfg.extensions = [ext for ext in cfg.extensions if ext]
        if not cfg.schedule:
            raise ValueError("--k-max leaves an empty schedule")
    report = recover(EhrhartOracle(hidden), normals, cfg)
    out = report.to_json()
    out["b"] = [None if b is None else format_rat(b) for b in report.b]
    if args.seed is not None:
        out["hidden"] = hidden.to_json()
    _emit(out)
    return EXIT_OK if report.passed else EXIT_UNRESOLVED


def cmd_translates(args) -> int:
    P = _load_polytope(args.polytope)
    w = tuple(int(x) for x in args.w) if args.w else find_translation_witness(P)
    if len(w) != P.dim:
        raise ValueError(f"witness needs {P.dim} coordinates")
    rep = check_translates_distinct(P, w, args.K)
    _emit({"w": list(w), **rep.to_json()})
    return EXIT_OK if rep.passed else EXIT_PROPERTY


def cmd_suite(args) -> int:
    spec = _load_json(args.spec)
    if not isinstance(spec, dict):
        raise ValueError("suite spec must be a JSON object")
    if args.seed is not None:
        spec = {**spec, "seed": args.seed}
    records = []
    for rec in run_suite(spec):
        records.append(rec)
        print(json.dumps(rec, sort_keys=True))
    summary = summarize(records)
    print(json.dumps({"summary": summary}, sort_keys=True))
    failed = any(v["failed"] for v in summary.values())
    return EXIT_PROPERTY if failed else EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realehrhart", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, help=f"lattice-point budget (overrides ${BUDGET_ENV})")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="number of lattice points in sP")
    c.add_argument("polytope")
    c.add_argument("s")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("stepfn", help="exact step function on (lo, S]")
    c.add_argument("polytope")
    c.add_argument("S")
    c.add_argument("--lo", default="0")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=cmd_stepfn)

    c = sub.add_parser("jumps", help="jump magnitudes with facet cross-check")
    c.add_argument("polytope")
    c.add_argument("S")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_jumps)

    c = sub.add_parser("ppyr", help="pseudopyramid volume two ways")
    c.add_argument("polytope")
    c.add_argument("--S", help="also compare lifting with the brute-force count on (0, S]")
    c.set_defaults(func=cmd_ppyr)

    c = sub.add_parser("rvol", help="relative volume and count deviations")
    c.add_argument("polytope")
    c.add_argument("--v", nargs="+", help="rational translation")
    c.add_argument("--s-max", type=int, default=40)
    c.add_argument("--envelope", action="store_true", help="also run the fitted C/s envelope check")
    c.set_defaults(func=cmd_rvol)

    c = sub.add_parser("reconstruct", help="recover right-hand sides from window queries")
    c.add_argument("--hidden", help="hidden polytope file")
    c.add_argument("--seed", type=int, help="generate the hidden polytope from this seed")
    c.add_argument("--dim", type=int, default=2, help="dimension for --seed")
    c.add_argument("--normals", help="JSON list of normals (default: those of the hidden polytope)")
    c.add_argument("--config", help="reconstruction config JSON")
    c.add_argument("--k-max", type=int, help="drop schedule entries above this k")
    c.set_defaults(func=cmd_reconstruct)

    c = sub.add_parser("translates", help="distinctness of L_{P + k w}")
    c.add_argument("polytope")
    c.add_argument("--w", nargs="+", help="integer translation (default: found automatically)")
    c.add_argument("--K", type=int, default=5)
    c.set_defaults(func=cmd_translates)

    c = sub.add_parser("suite", help="run lemma checks over generated instances (JSON lines)")
    c.add_argument("spec")
    c.add_argument("--seed", type=int, help="override the spec seed")
    c.set_defaults(func=cmd_suite)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None:
        if args.budget < 1:
            parser.error("--budget must be positive")
        os.environ[BUDGET_ENV] = str(args.budget)
    try:
        return args.func(args)
    except (WindowTooLarge, OracleBudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError, OSError, EmptyGrid) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
