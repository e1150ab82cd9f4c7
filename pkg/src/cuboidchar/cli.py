"""Command-line interface.

Subcommands: scan (resumable lattice search), verify (sampled theorem
suites), roots (certified roots at one lattice point), region (exact
point classification), cuboid (condition check and construction for one
triple), derive (emit the remainder-equation polynomials).

Flags can be overridden by CUBOIDCHAR_* environment variables (e.g.
CUBOIDCHAR_JOBS=8).  Exit codes: 0 clean, 1 error, 2 when a margin
violation or a cuboid hit was found.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

import mpmath as mp

from . import expansion, region, scan, sites
from .cuboid import Triple, try_build_cuboid
from .roots import DEFAULT_BITS, complex_roots, solve_site_quartic
from .charpoly import uni_coeffs_shifted

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FINDING = 2


def _env(name: str, default, cast):
    raw = os.environ.get(f"CUBOIDCHAR_{name.upper().replace('-', '_')}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"bad CUBOIDCHAR_{name.upper()}: {raw!r}")


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    out.flush()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cuboidchar",
        description="Exact toolkit for the degree-10 cuboid characteristic equation")
    sub = ap.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scan", help="resumable coprime lattice scan")
    sc.add_argument("--q-min", type=int, default=_env("q-min", 1, int))
    sc.add_argument("--q-max", type=int, default=_env("q-max", 100, int))
    sc.add_argument("--region", choices=scan.REGION_FILTERS,
                    default=_env("region", "linear", str))
    sc.add_argument("--jobs", type=int, default=_env("jobs", 1, int))
    sc.add_argument("--seed", type=int, default=_env("seed", 0, int))
    sc.add_argument("--bits", type=int, default=_env("bits", DEFAULT_BITS, int))
    sc.add_argument("--out", default=_env("out", "scan.jsonl", str))
    sc.add_argument("--checkpoint", default=_env("checkpoint", "scan.checkpoint.json", str))
    sc.add_argument("--resume", action="store_true",
                    help="continue from an existing checkpoint")

    ve = sub.add_parser("verify", help="sampled verification suites")
    ve.add_argument("--suite", choices=("sites", "bounds", "rouche", "theorems"),
                    required=True)
    ve.add_argument("--samples", type=int, default=_env("samples", 200, int))
    ve.add_argument("--seed", type=int, default=_env("seed", 0, int))
    ve.add_argument("--bits", type=int, default=_env("bits", DEFAULT_BITS, int))
    ve.add_argument("--q-max", type=int, default=_env("q-max", 2000, int))
    ve.add_argument("--jobs", type=int, default=_env("jobs", 1, int))

    ro = sub.add_parser("roots", help="certified roots at one lattice point")
    ro.add_argument("--p-tilde", type=int, required=True)
    ro.add_argument("--q-tilde", type=int, required=True)
    ro.add_argument("--bits", type=int, default=_env("bits", DEFAULT_BITS, int))

    rg = sub.add_parser("region", help="classify a lattice point")
    rg.add_argument("--p", type=int, required=True)
    rg.add_argument("--q", type=int, required=True)

    cu = sub.add_parser("cuboid", help="condition check and construction")
    cu.add_argument("--p", type=int, required=True)
    cu.add_argument("--q", type=int, required=True)
    cu.add_argument("--t", type=int, required=True)

    de = sub.add_parser("derive", help="emit the remainder-equation polynomials")
    de.add_argument("--out-dir", default=_env("out-dir", ".", str))
    return ap


def cmd_scan(args) -> int:
    cfg = scan.ScanConfig(args.q_min, args.q_max, args.region, args.jobs,
                          args.seed, args.bits, args.out, args.checkpoint)
    return scan.run_scan(cfg, resume=args.resume)


def cmd_verify(args, out=sys.stdout) -> int:
    if args.suite == "rouche":
        failed = False
        for i, ratio in expansion.rouche_margins().items():
            ok = ratio > 1
            failed = failed or not ok
            _emit({"suite": "rouche", "u_index": i,
                   "rhs_modulus": expansion.RHS_BOUNDARY_MODULUS,
                   "lhs_bound": expansion.LHS_BOUNDS[i],
                   "ratio": float(ratio), "pass": ok}, out)
        return EXIT_FINDING if failed else EXIT_OK

    if args.suite == "bounds":
        rem = expansion.derive_real_remainder()
        crem = expansion.derive_complex_remainder()
        u = solve_site_quartic(args.bits)
        failed = False
        for pt in (1, -1, 2, -2, 5, -5):
            r = expansion.sample_real_bound(rem, pt, args.samples, args.seed)
            failed = failed or not r.passed
            _emit(r.as_dict(), out)
            for ui in (2, 3, 4, 5):
                r = expansion.sample_complex_bound(crem, u, ui, pt,
                                                   args.samples, args.seed)
                failed = failed or not r.passed
                _emit(r.as_dict(), out)
        return EXIT_FINDING if failed else EXIT_OK

    if args.suite == "sites":
        rng = random.Random(args.seed)
        failed = False
        for _ in range(args.samples):
            pt = rng.randint(1, 20) * rng.choice((1, -1))
            qt = rng.randint(97 * abs(pt), 400 * abs(pt))
            s, res = sites.locate_lattice_point(pt, qt, args.bits)
            ok = res.bijection and res.remainders_ok
            margin = res.min_margin(s)
            if pt != 0:
                dj = sites.check_disjoint(s)
                sep = sites.check_real_axis_separation(s)
                ok = ok and dj.passed and sep.passed
            failed = failed or not ok
            _emit({"p_tilde": pt, "q_tilde": qt, "bijection": res.bijection,
                   "min_margin": margin,
                   "max_remainder_real": res.real_remainder,
                   "max_remainder_complex": res.complex_remainder_max,
                   "pass": ok}, out)
        return EXIT_FINDING if failed else EXIT_OK

    # theorems: exhaustive subregion check at desk scale
    cfg = scan.ScanConfig(1, args.q_max, "subregion", jobs=args.jobs)
    failed = False
    for rec in scan.scan_records(cfg):
        ok = bool(rec.theorems_cover) and not rec.cuboid_hit
        failed = failed or not ok
        _emit({"p": rec.p, "q": rec.q, "covered": list(rec.theorems_cover),
               "integer_roots": list(rec.integer_roots),
               "cuboid_hit": rec.cuboid_hit, "pass": ok}, out)
    return EXIT_FINDING if failed else EXIT_OK


def cmd_roots(args, out=sys.stdout) -> int:
    for r in complex_roots(uni_coeffs_shifted(args.p_tilde, args.q_tilde), args.bits):
        _emit(r.as_dict(), out)
    return EXIT_OK


def cmd_region(args, out=sys.stdout) -> int:
    cls = region.classify(args.p, args.q)
    _emit({"p": args.p, "q": args.q, "class": cls.value,
           "theorems_cover": region.covering_theorems(args.p, args.q)}, out)
    return EXIT_OK


def cmd_cuboid(args, out=sys.stdout) -> int:
    report, cub, notes = try_build_cuboid(Triple(args.p, args.q, args.t))
    _emit({"p": args.p, "q": args.q, "t": args.t,
           "is_root": report.is_root,
           "inequalities": list(report.inequalities),
           "cuboid": cub.as_dict() if cub else None,
           "notes": notes}, out)
    return EXIT_FINDING if cub else EXIT_OK


def cmd_derive(args, out=sys.stdout) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    rem = expansion.derive_real_remainder()
    crem = expansion.derive_complex_remainder()
    paths = {}
    for name, poly in (("real_equation", rem.scaled), ("real_tail", rem.tail),
                       ("real_axis_terms", rem.axis_terms),
                       ("complex_equation", crem.scaled), ("complex_tail", crem.tail),
                       ("complex_axis_terms", crem.axis_terms)):
        path = os.path.join(args.out_dir, f"{name}.poly")
        with open(path, "w") as f:
            f.write(poly.to_text())
        paths[name] = path
    _emit({"real_normalizer": str(rem.normalizer),
           "real_faces": {"pt3": expansion.REAL_CUBIC_COEFF,
                          "c": expansion.REAL_C_COEFF},
           "complex_normalizer": str(crem.normalizer),
           "complex_c_face": expansion.COMPLEX_C_COEFF,
           "clearing_powers": {"real": rem.clearing_power,
                               "complex": crem.clearing_power},
           "files": paths}, out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"scan": cmd_scan, "verify": cmd_verify, "roots": cmd_roots,
                "region": cmd_region, "cuboid": cmd_cuboid, "derive": cmd_derive}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, scan.CheckpointError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
