"""Command line front end.

    toruscurves invariants -p 2 -q 3 -b 4/13 -n 1024 -o inv.csv --plot inv.png
    toruscurves locate     -p 2 -q 3 -b 4/13
    toruscurves scan-b     -p 2 -q 3 --b-steps 201 --include-critical -o scan.csv --plot scan.png
    toruscurves project    -p 1 -q 4 -b 1/17 -o proj.svg
    toruscurves verify     -p 2 -q 3

Exit codes: 0 success, 1 a verification check failed, 2 usage, config or I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass

import numpy as np

from . import invariants as inv
from .curve_model import SpecError, TorusCurveSpec, check_spec, parse_b
from .projection_analysis import RANK_TOL, higher_inflection_points
from .report_io import dumps, write_csv
from .search import t_grid
from .svg import projection_svg
from .vanishing_locus import critical_radius, scan_over_b, zero_curvature_points

FORMATS = {
    "invariants": ("csv", "json"),
    "locate": ("json",),
    "scan-b": ("csv", "json"),
    "project": ("svg",),
    "verify": (None,),
}
DEFAULT_RESOLUTION = {"invariants": 256, "locate": 4096, "scan-b": 4096, "project": 1024, "verify": 4096}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int
    q: int
    b: object
    resolution: int
    output: str
    format: str | None
    tolerance: float = RANK_TOL
    b_min: float = 0.01
    b_max: float = 0.99
    b_steps: int = 201
    include_critical: bool = False
    plot: str | None = None

    def spec(self) -> TorusCurveSpec:
        try:
            return check_spec(TorusCurveSpec(self.p, self.q, self.b))
        except SpecError as exc:
            raise ConfigError(str(exc)) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toruscurves", description="Curvature and inflections of (p,q) torus curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(name, needs_b=True, help=""):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("-p", type=int, required=True, help="windings around the axis")
        sp.add_argument("-q", type=int, required=True, help="windings around the tube")
        if needs_b:
            sp.add_argument("-b", required=True, help="tube radius, 'num/den' or decimal")
        sp.add_argument("-n", "--resolution", type=int, default=None, help="number of t samples")
        sp.add_argument("-o", "--output", default="-", help="output path ('-' for stdout)")
        sp.add_argument("--format", choices=("csv", "json", "svg"), default=None)
        sp.add_argument("--tolerance", type=float, default=RANK_TOL, help="relative singular-value cutoff for ranks")
        return sp

    sp = common("invariants", help="sample kappa, tau, kappa_g, kappa_n over one period")
    sp.add_argument("--plot", default=None, help="also write a matplotlib figure to this path")
    common("locate", help="zero-curvature points and the critical radius")
    sp = common("scan-b", needs_b=False, help="min curvature and min |torsion| over a grid of b")
    sp.add_argument("--b-min", type=float, default=0.01)
    sp.add_argument("--b-max", type=float, default=0.99)
    sp.add_argument("--b-steps", type=int, default=201)
    sp.add_argument("--include-critical", action="store_true", help="put the exact critical radius on the grid")
    sp.add_argument("--plot", default=None, help="also write a matplotlib figure to this path")
    common("project", help="SVG of the planar projection with order >= 2 inflections marked")
    common("verify", needs_b=False, help="run the full check battery for (p, q)")
    return parser


def parse_config(argv) -> RunConfig:
    args = _build_parser().parse_args(argv)
    cmd = args.command
    fmt = args.format or FORMATS[cmd][0]
    if fmt not in FORMATS[cmd]:
        raise ConfigError(f"format {fmt!r} is not available for {cmd}")
    if args.p == 0 or args.q == 0:
        raise ConfigError("p and q must be nonzero")
    b = None
    if getattr(args, "b", None) is not None:
        try:
            b = parse_b(args.b)
        except SpecError as exc:
            raise ConfigError(str(exc)) from exc
    n = args.resolution if args.resolution is not None else DEFAULT_RESOLUTION[cmd]
    min_n = {"invariants": 2, "scan-b": 256}.get(cmd, 16)
    if n < min_n:
        raise ConfigError(f"resolution must be at least {min_n} for {cmd}")
    if not args.tolerance > 0:
        raise ConfigError("tolerance must be positive")
    cfg = RunConfig(cmd, abs(args.p), abs(args.q), b, n, args.output, fmt, args.tolerance, plot=getattr(args, "plot", None))
    if cmd == "scan-b":
        if not 0 < args.b_min <= args.b_max < 1:
            raise ConfigError("need 0 < b-min <= b-max < 1")
        if args.b_steps < 1:
            raise ConfigError("b-steps must be at least 1")
        cfg.b_min, cfg.b_max, cfg.b_steps = args.b_min, args.b_max, args.b_steps
        cfg.include_critical = args.include_critical
    elif cmd != "verify":
        spec = cfg.spec()
        cfg.p, cfg.q = spec.p, spec.q
    return cfg


@contextlib.contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout
        return
    buf = io.StringIO()
    yield buf
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


def cmd_invariants(cfg: RunConfig) -> int:
    spec = cfg.spec()
    arrays = inv.sample_arrays(spec, t_grid(cfg.resolution))
    fields = inv.InvariantSample.CSV_FIELDS
    with _open_output(cfg.output) as out:
        if cfg.format == "csv":
            write_csv(out, fields, zip(*(arrays[k] for k in fields)))
        else:
            rows = [dict(zip(fields, vals)) for vals in zip(*(arrays[k] for k in fields))]
            out.write(dumps({"p": spec.p, "q": spec.q, "b": spec.b_label(), "samples": rows}))
    if cfg.plot:
        from .plotting import plot_invariants

        plot_invariants(arrays, f"({spec.p},{spec.q}) torus curve, b = {spec.b_label()}", cfg.plot)
    return 0


def locate_report(spec: TorusCurveSpec) -> dict:
    crit = critical_radius(spec.p, spec.q)
    zs = zero_curvature_points(spec)
    pos = zs.positions
    return {
        "b": spec.b_label(),
        "coprime": spec.coprime,
        "critical_b": str(crit),
        "critical_b_float": crit.float_value,
        "float_matched": zs.float_matched,
        "is_critical": zs.is_critical,
        "p": spec.p,
        "points": [{"t": t, "x": x, "y": y, "z": z} for t, (x, y, z) in zip(zs.points, pos)],
        "q": spec.q,
    }


def cmd_locate(cfg: RunConfig) -> int:
    report = locate_report(cfg.spec())
    with _open_output(cfg.output) as out:
        out.write(dumps(report))
    return 0


def _scan_grid(cfg: RunConfig) -> list:
    grid = [float(b) for b in np.linspace(cfg.b_min, cfg.b_max, cfg.b_steps)]
    if cfg.include_critical:
        crit = critical_radius(cfg.p, cfg.q)
        if cfg.b_min <= crit.float_value <= cfg.b_max:
            grid = [b for b in grid if b != crit.float_value]
            if len(grid) == cfg.b_steps:
                # keep the requested row count: the critical value replaces its nearest neighbour
                grid.pop(int(np.argmin([abs(b - crit.float_value) for b in grid])))
            grid = sorted(grid + [crit.fraction], key=float)
    return grid


def cmd_scan_b(cfg: RunConfig) -> int:
    result = scan_over_b(cfg.p, cfg.q, _scan_grid(cfg), cfg.resolution)
    crit = critical_radius(cfg.p, cfg.q)
    i = result.closest_to_critical()
    with _open_output(cfg.output) as out:
        if cfg.format == "csv":
            footer = [f"closest_to_critical row={i} b={float(result.b_grid[i])!r} critical_b={crit}"]
            write_csv(out, result.CSV_FIELDS, result.rows(), footer)
        else:
            d = result.to_dict()
            d["closest_to_critical"] = i
            out.write(dumps(d))
    if cfg.plot:
        from .plotting import plot_scan

        plot_scan(result, cfg.plot)
    return 0


def cmd_project(cfg: RunConfig) -> int:
    spec = cfg.spec()
    marks = [t for t, _ in higher_inflection_points(spec, max(cfg.resolution, 4096), tolerance=cfg.tolerance)]
    with _open_output(cfg.output) as out:
        out.write(projection_svg(spec, cfg.resolution, marks))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    from .verification import run_checks

    checks = run_checks(cfg.p, cfg.q, cfg.resolution)
    with _open_output(cfg.output) as out:
        out.write(f"verify (p, q) = ({cfg.p}, {cfg.q}), b* = {critical_radius(cfg.p, cfg.q)}\n")
        for c in checks:
            out.write(c.line() + "\n")
        failed = sum(not c.passed for c in checks)
        out.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return 0 if failed == 0 else 1


COMMANDS = {
    "invariants": cmd_invariants,
    "locate": cmd_locate,
    "scan-b": cmd_scan_b,
    "project": cmd_project,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"toruscurves: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"toruscurves: error: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
