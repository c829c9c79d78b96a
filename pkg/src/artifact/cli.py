"""Command-line front end.

Exit codes: 0 all checks pass (flagged entries allowed), 1 a check failed
or a data file is bad, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bps, chainlink, dilog, dwork, floer, locsys, suite, tropical, vshs
from .arith import QuadElem, TowerElem

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _emit(obj, out: str | None = None) -> None:
    text = obj if isinstance(obj, str) else _dump(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _status(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_FAIL


def _read_json(path: str):
    p = Path(path)
    try:
        return json.loads(p.read_text())
    except OSError as exc:
        raise UsageError(f"{p}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{p}: invalid JSON ({exc})") from exc


# --- parsing tower elements from the command line ---------------------------


def parse_tower(text: str) -> TowerElem:
    """A rational ("-3/2"), a tower JSON list [[rat, sqrt(-3) part], ...] or vg1/vg2."""
    t = text.strip()
    if t in ("vg1", "vg2"):
        return locsys.van_geemen_tuple(int(t[2])).mu[0]
    if t.startswith("["):
        try:
            raw = json.loads(t)
            return TowerElem([QuadElem(Fraction(str(a)), Fraction(str(b))) for a, b in raw])
        except (ValueError, TypeError) as exc:
            raise UsageError(f"cannot parse tower element {text!r}") from exc
    try:
        return TowerElem.coerce(Fraction(t))
    except ValueError as exc:
        raise UsageError(f"cannot parse tower element {text!r}") from exc


# --- subcommands ------------------------------------------------------------------


def cmd_dwork(args) -> int:
    if args.action == "verify":
        res = {}
        for family in ("limit", "generic"):
            for root in (1, 2):
                p = dwork.default_params(root, family)
                line = dwork.build_van_geemen_line(p)
                coeffs = dwork.dwork_binary_form(line, p)
                res[f"{family}/omega^{root}"] = {
                    "binaryForm": [dwork.tower_to_json(c) for c in coeffs],
                    "allZero": all(c.is_zero() for c in coeffs),
                }
        _emit(res, args.out)
        return _status(all(v["allZero"] for v in res.values()))
    line = dwork.build_van_geemen_line(dwork.default_params(args.root, "generic" if args.action == "orbits" else "limit"))
    if args.action == "orbits":
        r = dwork.orbit_sizes(line)
        r["s5Stabilizer"] = [list(s) for s in dwork.s5_stabilizer(line)]
        _emit(r, args.out)
        return _status(r["g5Orbit"] == 125 and r["s5Orbit"] == 40)
    pts = dwork.boundary_intersections(line)
    _emit(
        {
            "points": [{"hyperplane": h, "point": dwork.point_to_json(pt)} for h, pt in pts],
            "directions": [list(d) for d in tropical.tropicalization_type(pts)],
            "limitEquations": dwork.verify_limit_equations(dwork.default_params(args.root), line),
        },
        args.out,
    )
    return EXIT_OK


def cmd_tropical(args) -> int:
    if args.input:
        try:
            c = tropical.TropCurve.from_json(_read_json(args.input))
        except tropical.TropicalError as exc:
            raise UsageError(f"{args.input}: {exc}") from exc
    elif args.smooth:
        c = tropical.make_V_smoothed(args.smooth, Fraction(args.eps))
    else:
        c = tropical.make_V()
    bad = tropical.unbalanced_vertices(c)
    _emit({"curve": c.to_json(), "balanced": not bad, "unbalancedVertices": bad}, args.out)
    return _status(not bad)


def cmd_chainlink(args) -> int:
    entries = suite.run_checks(modules={"chainlink"})
    _emit(suite.build_report(entries), args.out)
    return _status(all(e["status"] != suite.FAIL for e in entries))


def cmd_locsys(args) -> int:
    if args.action == "verify-vg":
        res = {}
        for which in (1, 2):
            h = locsys.van_geemen_tuple(which)
            res[f"omega^{which}"] = {
                "tuple": locsys.tuple_to_json(h),
                "residuesZero": [r.is_zero() for r in locsys.residues(h)],
            }
        _emit(res, args.out)
        return _status(all(all(v["residuesZero"]) for v in res.values()))
    mu0 = parse_tower(args.mu0)
    lam0 = parse_tower(args.lambda0) if args.lambda0 else None
    try:
        r = locsys.extend_point(mu0, lam0)
    except locsys.LocsysError as exc:
        raise UsageError(str(exc)) from exc
    _emit(
        {
            "solutions": [locsys.tuple_to_json(h) for h in r.tuples],
            "lambda4Fifth": [dwork.tower_to_json(x) for x in r.lambda4_fifth],
            "diagnostics": r.diagnostics,
        },
        args.out,
    )
    return EXIT_OK


def cmd_floer(args) -> int:
    try:
        r = floer.verify(args.data)
    except floer.FloerDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(r, args.out)
    return _status(r["ok"])


def cmd_bps(args) -> int:
    if args.action == "check-paper-values":
        r = bps.check_paper_values(args.order)
        _emit(r, args.out)
        return _status(r["ok"])
    try:
        table = bps.table_from_json(_read_json(args.input))
    except bps.BPSError as exc:
        raise UsageError(f"{args.input}: {exc}") from exc
    N = args.order or max(table, default=0)
    n = bps.invert(table, N)
    _emit(
        {
            "n": bps.table_to_json(n),
            "ringMember": {str(d): bps.ring_member(x) for d, x in n.items()},
            "halfInRing": {str(d): bps.half_in_ring(x) for d, x in n.items()},
        },
        args.out,
    )
    return EXIT_OK


def cmd_vshs(args) -> int:
    N = args.order
    if args.psi:
        raw = _read_json(args.psi)
        try:
            table = bps.table_from_json(raw)
        except bps.BPSError as exc:
            raise UsageError(f"{args.psi}: {exc}") from exc
    else:
        table = bps.paper_ntilde(N)
    psi = vshs.psi_from_table(table, N)
    phi2 = vshs.TruncSeries([QuadElem(5)] + [QuadElem(0)] * N, N)
    m = vshs.a_model(phi2)
    rep = vshs.horizontality_report(m, vshs.NormalFunctionCandidate(psi))
    _emit(
        {
            "psi": vshs.series_to_json(psi),
            "horizontal": rep["horizontal"],
            "othersVanish": rep["othersVanish"],
            "e1": vshs.series_to_json(rep["e1"]),
            "e1IsPlusTheta2Psi": rep["e1IsPlusTheta2Psi"],
            "e1IsMinusTheta2Psi": rep["e1IsMinusTheta2Psi"],
        },
        args.out,
    )
    return _status(rep["horizontal"])


def cmd_dilog(args) -> int:
    r = dilog.volume_report()
    r["l2chi"] = dilog.l2chi_via_dilog()
    _emit(r, args.out)
    return EXIT_OK


def load_config(path: str | None) -> suite.Config:
    if path is None:
        return suite.Config()
    try:
        return suite.config_from_json(_read_json(path))
    except suite.ConfigError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def to_markdown(report: dict) -> str:
    lines = [
        f"# Verification report (schema {report['schemaVersion']})",
        "",
        "| check | status | claim |",
        "|---|---|---|",
    ]
    for e in report["checks"]:
        lines.append(f"| {e['checkName']} | {e['status']} | {e['paperCitation']} |")
    s = report["summary"]
    lines += ["", f"pass {s['pass']}, fail {s['fail']}, flagged {s['flagged']}", ""]
    return "\n".join(lines)


def cmd_run_all(args) -> int:
    cfg = load_config(args.config)
    entries = suite.run_checks(cfg, timings=args.timings)
    report = suite.build_report(entries)
    _emit(to_markdown(report) if args.markdown else report, args.out)
    for e in entries:
        if e["status"] == suite.FAIL:
            print(f"FAIL {e['checkName']}: {json.dumps(e['details'], default=str)[:300]}", file=sys.stderr)
    return _status(report["summary"]["fail"] == 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Exact checks of the van Geemen line computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = common(sub.add_parser("dwork", help="van Geemen lines on the Dwork pencil"))
    p.add_argument("action", choices=["verify", "orbits", "boundary"])
    p.add_argument("--root", type=int, choices=[1, 2], default=1)
    p.set_defaults(func=cmd_dwork)

    p = common(sub.add_parser("tropical", help="balancing of V, its smoothings or a curve file"))
    p.add_argument("--input", help="tropical curve JSON")
    p.add_argument("--smooth", type=int, choices=[1, 2, 3])
    p.add_argument("--eps", default="1")
    p.set_defaults(func=cmd_tropical)

    p = common(sub.add_parser("chainlink", help="chain link homology"))
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_chainlink)

    p = common(sub.add_parser("locsys", help="local systems on the chain link complement"))
    p.add_argument("action", choices=["verify-vg", "extend"])
    p.add_argument("--mu0", default="vg1")
    p.add_argument("--lambda0")
    p.set_defaults(func=cmd_locsys)

    p = common(sub.add_parser("floer", help="energy spectral sequence ranks"))
    p.add_argument("action", choices=["verify"])
    p.add_argument("--data", help="incidence JSON (default: shipped file)")
    p.set_defaults(func=cmd_floer)

    p = common(sub.add_parser("bps", help="multiple-cover formula"))
    p.add_argument("action", choices=["invert", "check-paper-values"])
    p.add_argument("--input", help="table {d: [num, den]} scaled by sqrt(-3)")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_bps)

    p = common(sub.add_parser("vshs", help="normal function horizontality"))
    p.add_argument("action", choices=["check"])
    p.add_argument("--psi", help="coefficient table {d: [num, den]} scaled by sqrt(-3)")
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_vshs)

    p = common(sub.add_parser("dilog", help="volume comparison"))
    p.add_argument("action", choices=["volumes"])
    p.set_defaults(func=cmd_dilog)

    p = common(sub.add_parser("run-all", help="run every check and emit a report"))
    p.add_argument("--config", help="JSON {truncationOrder, floatTolerance, dataDir}")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--markdown", action="store_true")
    p.add_argument("--timings", action="store_true", help="record elapsedMillis (breaks byte-identical output)")
    p.set_defaults(func=cmd_run_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "bps":
            if args.action == "invert" and not args.input:
                raise UsageError("bps invert needs --input")
            if args.action == "check-paper-values" and args.order is None:
                args.order = 4
        if args.command == "vshs" and args.order < 1:
            raise UsageError("--order must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
