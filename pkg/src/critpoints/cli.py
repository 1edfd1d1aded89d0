"""Command line: ``critpoints gen|gb|fglm|formulas|formulas-table|bench|verify``.

Exit codes: 0 success, 1 hard failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from critpoints.gf import DEFAULT_MODULUS


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, need_npd: bool = True):
    p.add_argument("--n", type=int, required=False)
    p.add_argument("--p", type=int, required=False)
    p.add_argument("--D", type=int, required=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=int, default=None, help=f"prime modulus (default {DEFAULT_MODULUS})")
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--degree-cap", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--config", type=str, default=None, help="JSON file with experiment settings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critpoints", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random system F and its critical system I(F,1)")
    _common(g)
    g.add_argument("--raw", action="store_true", help="write F only, without the minors")

    b = sub.add_parser("gb", help="grevlex basis of I(F,1) (or of the system in --input)")
    _common(b)
    b.add_argument("--input", type=str, default=None, help="system file to use as generators")

    f = sub.add_parser("fglm", help="lex basis of I(F,1), density and rational points")
    _common(f)
    f.add_argument("--input", type=str, default=None)

    fo = sub.add_parser("formulas", help="closed-form quantities as one CSV row")
    _common(fo)
    fo.add_argument("--omega", type=float, default=2.373)

    ft = sub.add_parser("formulas-table", help="complexity ratio rows as CSV")
    _common(ft)

    be = sub.add_parser("bench", help="run an experiment suite")
    _common(be)

    ve = sub.add_parser("verify", help="check records against the formulas")
    _common(ve)
    ve.add_argument("--input", type=str, default=None, help="CSV from a previous bench run")
    return parser


def _npd(args):
    if args.n is None or args.p is None or args.D is None:
        raise UsageError("--n, --p and --D are required")
    return args.n, args.p, args.D


def _config_overrides(args) -> dict:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
    return data


def _field(args, data=None) -> int:
    if args.field is not None:
        return args.field
    data = data or {}
    return int(data.get("q", data.get("field", DEFAULT_MODULUS)))


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _system(args):
    from critpoints.critsys import PolySystem, build_critical_system, gen_random_system
    from critpoints.poly import load_system

    data = _config_overrides(args)
    if getattr(args, "input", None):
        ring, polys, meta = load_system(Path(args.input).read_text())
        return None, PolySystem(polys, ring, meta=dict(meta))
    n, p, D = _npd(args)
    F = gen_random_system(n, p, D, args.seed, args.homogeneous, _field(args, data))
    return F, build_critical_system(F)


def cmd_gen(args) -> int:
    from critpoints.critsys import build_critical_system, gen_random_system
    from critpoints.poly import dump_system

    n, p, D = _npd(args)
    F = gen_random_system(n, p, D, args.seed, args.homogeneous, _field(args, _config_overrides(args)))
    S = F if args.raw else build_critical_system(F)
    meta = {"n": n, "p": p, "D": D, "seed": args.seed, "homogeneous": args.homogeneous}
    if not args.raw:
        meta["critical"] = True
    _emit(dump_system(S.generators, S.ring, meta), args.out)
    return 0


def cmd_gb(args) -> int:
    from critpoints.groebner import groebner_basis, is_zero_dimensional
    from critpoints.poly import dump_system

    _, S = _system(args)
    G = groebner_basis([g for g in S if g], degree_cap=args.degree_cap)
    zd = is_zero_dimensional(G)
    deg = len(G.staircase) if zd else "inf"
    text = dump_system(G.basis, G.ring)
    _emit(text, args.out)
    print(f"max_step_degree={G.max_step_degree} deg={deg} zerodim={str(zd).lower()}")
    return 0


def cmd_fglm(args) -> int:
    from critpoints.fglm import density, fglm_lex, multiplication_matrices, sample_solutions
    from critpoints.groebner import groebner_basis, is_zero_dimensional
    from critpoints.poly import dump_system

    _, S = _system(args)
    G = groebner_basis([g for g in S if g], degree_cap=args.degree_cap)
    if not is_zero_dimensional(G):
        print("error: ideal is not zero-dimensional", file=sys.stderr)
        return 1
    M = multiplication_matrices(G)
    L = fglm_lex(G, M)
    sols = sample_solutions(L)
    _emit(dump_system(L.basis, L.ring), args.out)
    dr = density(M)
    print(f"deg={M.degree} density={dr.last_density:.2f} shape={str(sols.shape_position).lower()} "
          f"rational_points={len(sols)} density_all={dr.density:.2f}")
    return 0


def cmd_formulas(args) -> int:
    from critpoints.hilbert import complexity_bound, complexity_ratio, deg_formula, dreg_formula, hs_unmixed

    n, p, D = _npd(args)
    dreg = dreg_formula(n, p, D)
    hs = hs_unmixed(n, p, D, dreg)
    cb = complexity_bound(n, p, D, args.omega)
    ratio = complexity_ratio(n, p, D) if deg_formula(n, p, D) > 1 else float("nan")
    header = "n,p,D,dreg,deg,hs,ratio,log10_linear_algebra,log10_change_of_order"
    row = (f"{n},{p},{D},{dreg},{deg_formula(n, p, D)},{' '.join(map(str, hs.coeffs))},{ratio:.2f},"
           f"{cb.log10_linear_algebra:.4f},{cb.log10_change_of_order:.4f}")
    _emit(header + "\n" + row + "\n", args.out)
    return 0


def cmd_formulas_table(args) -> int:
    from critpoints.hilbert import complexity_ratio
    from critpoints.reference import RATIO_ROWS

    lines = ["n,p,D,ratio"]
    for n, p, D, _ in RATIO_ROWS:
        lines.append(f"{n},{p},{D},{complexity_ratio(n, p, D):.2f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _experiment(args):
    from critpoints.bench import ExperimentConfig

    data = _config_overrides(args)
    if args.n is not None or args.p is not None or args.D is not None:
        data["triples"] = [list(_npd(args))]
        data.setdefault("seeds", [args.seed])
    if not data.get("triples"):
        raise UsageError("give --config or --n/--p/--D")
    if args.field is not None:
        data["q"] = args.field
    if args.homogeneous:
        data["homogeneous"] = True
    if args.degree_cap is not None:
        data["degree_cap"] = args.degree_cap
    if args.out is not None:
        data["output"] = args.out
    if args.jobs is not None:
        data["jobs"] = args.jobs
    try:
        return ExperimentConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))


def cmd_bench(args) -> int:
    from critpoints.bench import records_to_csv, run_suite, verify_report

    config = _experiment(args)
    records = run_suite(config)
    if not config.output:
        sys.stdout.write(records_to_csv(records))
    report = verify_report(records)
    for line in report.lines():
        print(line, file=sys.stderr)
    return report.exit_code


def cmd_verify(args) -> int:
    from critpoints.bench import read_csv, run_suite, verify_report

    if args.input:
        records = read_csv(args.input)
    else:
        records = run_suite(_experiment(args))
    report = verify_report(records)
    for line in report.lines():
        print(line)
    return report.exit_code


COMMANDS = {
    "gen": cmd_gen, "gb": cmd_gb, "fglm": cmd_fglm, "formulas": cmd_formulas,
    "formulas-table": cmd_formulas_table, "bench": cmd_bench, "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # reported as a hard failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
