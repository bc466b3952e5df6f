"""Command line interface.

Exit codes: 0 success or AGREE, 1 usage error, 2 negative verdict
(disagreement, missed target, failed nesting), 3 mesh size cap,
4 sequence not converged.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import contextmanager

from . import __version__
from .analysis import (TARGETS, NotConvergedError, Schedule, ScheduleError, ScheduleKind,
                       Verdict, area_sequence, mixture_limit, run_schedule,
                       well_definedness_probe)
from .ga3 import plane_angle
from .lantern import (LanternParams, MeshTooLargeError, ParameterError, check_mesh_cap,
                      check_nesting, generate_lantern, lantern_sums)
from .svgplot import line_plot, log10_floor

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_CAP = 3
EXIT_NOT_CONVERGED = 4

TARGET_TOLERANCE = 1e-3

LIMIT_HEADER = ("i,n,m,b_xy,b_xz,b_yz,asym_b_xy,asym_b_xz,asym_b_yz,"
                "angle_to_prev_rad,angle_to_target_rad")
AREA_HEADER = "i,n,m,area,projected_area"
NESTING_HEADER = "n_coarse,m_coarse,n_fine,m_fine,nested"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _digits(v: str) -> int:
    d = int(v)
    if not 6 <= d <= 17:
        raise argparse.ArgumentTypeError("float digits must be in [6, 17]")
    return d


class Formatter:
    def __init__(self, digits: int = 17):
        self.digits = digits

    def __call__(self, v: float | None) -> str:
        if v is None:
            return ""
        return format(v, f".{self.digits}g")


@contextmanager
def _output(path: str):
    """Collect output in memory; write it in one go to ``path`` or stdout."""
    buf = io.StringIO()
    yield buf
    data = buf.getvalue()
    if path == "-":
        sys.stdout.write(data)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)


def _schedule(name: str, c_exp: int | None, m_values: str | None = None,
              i_min: int = 2) -> Schedule:
    if name == ScheduleKind.CUSTOM.value:
        if not m_values:
            raise UsageError("schedule custom needs --m-values")
        try:
            ms = [int(v) for v in m_values.split(",")]
        except ValueError:
            raise UsageError(f"bad --m-values {m_values!r}") from None
        return Schedule.custom({2 ** (i_min + k): m for k, m in enumerate(ms)})
    return Schedule.parse(name, c_exp)


def _target(name: str, schedules: list[Schedule], a: float):
    if name == "none":
        return [None] * len(schedules)
    if name == "mixture":
        if any(s.kind is not ScheduleKind.M_EQ_C_N_SQUARED for s in schedules):
            raise UsageError("target mixture needs schedule m=c*n^2")
        return [mixture_limit(a, s.c) for s in schedules]
    return [TARGETS[name]] * len(schedules)


def _add_common(p, schedule=True, io_formats=("csv", "json")):
    if schedule:
        p.add_argument("--schedule", required=True,
                       choices=[k.value for k in ScheduleKind if k is not ScheduleKind.CUSTOM])
        p.add_argument("--c-exp", type=int, default=None,
                       help="c = 2**c_exp for schedule m=c*n^2")
    p.add_argument("--a", type=float, default=1.0, help="cylinder height")
    p.add_argument("--i-min", type=int, default=2)
    p.add_argument("--i-max", type=int, default=12)
    if io_formats:
        p.add_argument("--format", choices=io_formats, default=io_formats[0])
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--float-digits", type=_digits, default=17)


def cmd_mesh(args) -> int:
    p = LanternParams(n=args.n, m=args.m, a=args.a, radius=args.radius)
    check_mesh_cap(p)
    mesh = generate_lantern(p)
    fmt = Formatter(args.float_digits)
    with _output(args.out) as out:
        if args.format == "obj":
            for x, y, z in mesh.vertices.tolist():
                out.write(f"v {fmt(x)} {fmt(y)} {fmt(z)}\n")
            for i, j, k in (mesh.triangles + 1).tolist():
                out.write(f"f {i} {j} {k}\n")
        else:
            doc = {
                "params": {"n": p.n, "m": p.m, "a": p.a, "radius": p.radius},
                "vertices": mesh.vertices.tolist(),
                "triangles": mesh.triangles.tolist(),
            }
            out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_limit(args) -> int:
    s = _schedule(args.schedule, args.c_exp)
    (target,) = _target(args.target, [s], args.a)
    report = run_schedule(s, args.a, args.i_min, args.i_max, target, up_to_sign=not args.signed)
    fmt = Formatter(args.float_digits)
    with _output(args.out) as out:
        if args.format == "csv":
            out.write(LIMIT_HEADER + "\n")
            for st in report.steps:
                row = [str(st.i), str(st.n), str(st.m),
                       *map(fmt, st.pseudoscalar_exact), *map(fmt, st.pseudoscalar_asymptotic),
                       fmt(st.angle_to_prev), fmt(st.angle_to_target)]
                out.write(",".join(row) + "\n")
        else:
            out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    hit = target is None or report.target_angle < TARGET_TOLERANCE
    return EXIT_OK if report.cauchy_ok and hit else EXIT_NEGATIVE


def cmd_area(args) -> int:
    s = _schedule(args.schedule, args.c_exp)
    rows = []
    for k, (n, m, area) in enumerate(area_sequence(s, args.a, args.radius, args.i_min, args.i_max)):
        proj = None
        if args.projected:
            p = LanternParams(n=n, m=m, a=args.a, radius=args.radius)
            try:
                _, proj = lantern_sums(p)
            except MeshTooLargeError:
                proj = None
        rows.append((args.i_min + k, n, m, area, proj))
    fmt = Formatter(args.float_digits)
    with _output(args.out) as out:
        if args.format == "csv":
            out.write(AREA_HEADER + "\n")
            for i, n, m, area, proj in rows:
                out.write(f"{i},{n},{m},{fmt(area)},{fmt(proj)}\n")
        else:
            doc = {"schedule": s.to_dict(), "a": args.a, "radius": args.radius,
                   "rows": [{"i": i, "n": n, "m": m, "area": area, "projected_area": proj}
                            for i, n, m, area, proj in rows]}
            out.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_probe(args) -> int:
    sa = _schedule(args.schedule_a, args.c_exp_a)
    sb = _schedule(args.schedule_b, args.c_exp_b)
    fmt = Formatter(args.float_digits)
    try:
        res = well_definedness_probe(sa, sb, args.a, args.i_max, args.tol_angle, args.i_min)
    except NotConvergedError as exc:
        with _output(args.out) as out:
            if args.format == "json":
                doc = {"verdict": None, "error": str(exc),
                       "reports": [r.to_dict() for r in exc.reports]}
                out.write(json.dumps(doc, indent=2) + "\n")
            else:
                out.write(f"verdict: WITHHELD\nreason: {exc}\n")
        return EXIT_NOT_CONVERGED
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps(res.to_dict(), indent=2) + "\n")
        else:
            out.write(f"verdict: {res.verdict.value}\n"
                      f"separation_rad: {fmt(res.separation)}\n"
                      f"schedule_a: {sa.label}\n"
                      f"schedule_b: {sb.label}\n"
                      f"limit_a: {' '.join(map(fmt, res.report_a.limit_estimate))}\n"
                      f"limit_b: {' '.join(map(fmt, res.report_b.limit_estimate))}\n")
    return EXIT_OK if res.verdict is Verdict.AGREE else EXIT_NEGATIVE


def cmd_plot(args) -> int:
    if args.out == "-":
        raise UsageError("plot needs --out FILE.svg")
    schedules = [_schedule(name, args.c_exp) for name in args.schedule]
    targets = _target(args.target, schedules, args.a)
    series = []
    for s, target in zip(schedules, targets):
        rep = run_schedule(s, args.a, args.i_min, args.i_max, target)
        if target is None:
            last = rep.limit_estimate
            angles = [plane_angle(st.pseudoscalar_exact, last, True) for st in rep.steps]
        else:
            angles = [st.angle_to_target for st in rep.steps]
        series.append((s.label, [st.i for st in rep.steps], [log10_floor(v) for v in angles]))
    ref = "last iterate" if args.target == "none" else args.target
    svg = line_plot(series, f"Plane angle to {ref}, a={args.a:g}", "i  (n = 2^i)",
                    "log10 angle [rad]")
    with _output(args.out) as out:
        out.write(svg)
    return EXIT_OK


def cmd_check_nesting(args) -> int:
    s = _schedule(args.schedule, args.c_exp, args.m_values, args.i_min)
    if not 2 <= args.i_min < args.i_max:
        raise UsageError("need 2 <= i-min < i-max")
    params = []
    for i in range(args.i_min, args.i_max + 1):
        p = LanternParams(n=2**i, m=s.m_for(2**i), a=args.a, radius=args.radius)
        check_mesh_cap(p)
        params.append(p)
    ok = True
    with _output(args.out) as out:
        out.write(NESTING_HEADER + "\n")
        for pc, pf in zip(params, params[1:]):
            nested = check_nesting(pc, pf, args.tol)
            ok &= nested
            out.write(f"{pc.n},{pc.m},{pf.n},{pf.m},{str(nested).lower()}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lantern-ga", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mesh", help="export a lantern mesh as OBJ or JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--format", choices=("obj", "json"), default="obj")
    p.add_argument("--out", default="-")
    p.add_argument("--float-digits", type=_digits, default=17)
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("limit", help="pseudoscalar sequence along a schedule")
    _add_common(p)
    p.add_argument("--target", choices=("ixk", "jxi", "mixture", "none"), default="none")
    p.add_argument("--signed", action="store_true", help="compare oriented planes")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("area", help="lantern areas along a schedule")
    _add_common(p)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--projected", action="store_true",
                   help="also sum tangent-projected triangle areas (mesh cap applies)")
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("probe", help="do two schedules reach the same limit plane?")
    p.add_argument("--schedule-a", required=True)
    p.add_argument("--schedule-b", required=True)
    p.add_argument("--c-exp-a", type=int, default=None)
    p.add_argument("--c-exp-b", type=int, default=None)
    _add_common(p, schedule=False, io_formats=("text", "json"))
    p.add_argument("--tol-angle", type=float, default=0.1)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("plot", help="SVG of plane angles per refinement")
    p.add_argument("--schedule", action="append", required=True,
                   choices=[k.value for k in ScheduleKind if k is not ScheduleKind.CUSTOM])
    p.add_argument("--c-exp", type=int, default=None)
    _add_common(p, schedule=False, io_formats=None)
    p.add_argument("--target", choices=("ixk", "jxi", "mixture", "none"), default="none")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("check-nesting", help="vertex nesting between consecutive refinements")
    p.add_argument("--schedule", required=True,
                   choices=[k.value for k in ScheduleKind])
    p.add_argument("--c-exp", type=int, default=None)
    p.add_argument("--m-values", default=None,
                   help="comma-separated m for i = i-min..i-max (schedule custom)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)
    _add_common(p, schedule=False, io_formats=None)
    p.set_defaults(func=cmd_check_nesting)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MeshTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ParameterError, ScheduleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
