"""Command-line interface.

Subcommands
-----------
classical      sample the classical curve, closure analysis, contact counts
state          build a subspace state and write its coefficient JSON
field          evaluate a state on a grid: CSV/binary dump, PPM rasters, PNG
vortices       field evaluation plus phase-vortex detection
semiclassical  coherent-packet centroid versus the classical curve
verify         run the built-in verification suites

With no flags at all, ``field`` reproduces the baseline figure configuration
(N=20, p=q=1, alpha=beta=1, phi=0) on an auto-sized 512x512 grid.  Phases
accept symbolic literals such as ``pi/7`` or ``3pi/4``.  Every run writes a
``manifest.json`` with SHA-256 sums of its outputs; re-running the same
command reproduces the bytes.

Exit codes: 0 success, 2 bad usage, 3 verification failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classical import ClassicalCurve, axis_extrema_count, closure_analysis, curve_points
from .fields import default_extent, detect_vortices, eval_state, FieldGrid, quadrature
from .fileio import write_field, write_manifest, write_raster
from .semiclassical import (
    SemiclassicalConfig,
    classical_counterpart,
    ehrenfest_report,
    eval_semiclassical,
    semiclassical_extent,
)
from .states import AmplitudePair, OscillatorParams, build_anisotropic

_PHASE_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?\s*pi(?:\s*/\s*(\d+(?:\.\d+)?))?$")


def parse_phase(text: str) -> float:
    """Parse '0.5', 'pi/7', '-pi/2', '3pi/4', '2pi' into radians."""
    text = text.strip().lower()
    match = _PHASE_RE.match(text)
    if match:
        sign = -1.0 if match.group(1) == "-" else 1.0
        factor = float(match.group(2)) if match.group(2) else 1.0
        divisor = float(match.group(3)) if match.group(3) else 1.0
        if divisor == 0:
            raise argparse.ArgumentTypeError("phase divisor cannot be zero")
        return sign * factor * math.pi / divisor
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"cannot parse phase '{text}' (use a float or a pi/K literal)"
        ) from None


def parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("grid must look like 512x512")
    try:
        nx, ny = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like 512x512") from None
    if nx < 16 or ny < 16:
        raise argparse.ArgumentTypeError("grid needs at least 16 points per axis")
    return nx, ny


def parse_extent(text: str) -> tuple[float, float] | None:
    if text == "auto":
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("extent must be 'auto' or HALF_X:HALF_Y")
    try:
        hx, hy = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("extent must be 'auto' or HALF_X:HALF_Y") from None
    if hx <= 0 or hy <= 0:
        raise argparse.ArgumentTypeError("extent half-widths must be positive")
    return hx, hy


def _add_physics_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--N", type=int, default=20, help="subspace index (default 20)")
    sub.add_argument("--p", type=int, default=1, help="y frequency multiplier")
    sub.add_argument("--q", type=int, default=1, help="x frequency multiplier")
    sub.add_argument("--alpha", type=float, default=1.0, help="x-mode amplitude (real >= 0)")
    sub.add_argument("--beta-abs", type=float, default=1.0, help="|beta| for the y mode")
    sub.add_argument(
        "--phi", type=parse_phase, default=0.0, help="phase of beta (accepts pi/K)"
    )
    sub.add_argument("--omega0", type=float, default=1.0, help="base frequency")
    sub.add_argument("--out", type=Path, default=None, help="output directory")


def _add_grid_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--grid", type=parse_grid, default=(512, 512), help="NXxNY nodes")
    sub.add_argument(
        "--extent", type=parse_extent, default=None, help="'auto' or HALF_X:HALF_Y"
    )
    sub.add_argument("--format", choices=("csv", "bin"), default="csv")
    sub.add_argument("--floor", type=float, default=1e-6, help="relative density floor")
    sub.add_argument("--threads", type=int, default=None, help="cap evaluation workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlissajous", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command")

    for name in ("classical", "state", "field", "vortices", "semiclassical"):
        sub = subs.add_parser(name)
        _add_physics_flags(sub)
        if name in ("field", "vortices", "semiclassical"):
            _add_grid_flags(sub)
    subs.choices["classical"].add_argument(
        "--samples", type=int, default=4096, help="points per period"
    )
    subs.choices["semiclassical"].add_argument(
        "--times", type=int, default=32, help="sample times over one period"
    )
    verify = subs.add_parser("verify")
    verify.add_argument(
        "--suite",
        default="all",
        help="comma-separated suite names or 'all' (see verify --suite list)",
    )
    verify.add_argument("--out", type=Path, default=None)
    return parser


def _resolve_out(args, default_name: str) -> Path:
    out = args.out if args.out is not None else Path(f"qlissajous-{default_name}")
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise SystemExit(f"cannot write to output directory {out}: {exc}") from exc
    return out


def _amp(args) -> AmplitudePair:
    return AmplitudePair(alpha=args.alpha, beta_abs=args.beta_abs, phi=args.phi)


def _params(args) -> OscillatorParams:
    return OscillatorParams(p=args.p, q=args.q, omega0=args.omega0)


def _state(args):
    amp = _amp(args)
    xi, at_inf = amp.xi(args.p, args.q)
    return build_anisotropic(
        args.N, args.p, args.q, xi, omega0=args.omega0, xi_at_infinity=at_inf
    )


def _grid_for(args, state):
    if args.extent is None:
        grid = default_extent(state, points=max(args.grid))
        if args.grid[0] != args.grid[1]:
            grid = FieldGrid(
                grid.x_min, grid.x_max, grid.y_min, grid.y_max, args.grid[0], args.grid[1]
            )
        return grid
    hx, hy = args.extent
    return FieldGrid(-hx, hx, -hy, hy, args.grid[0], args.grid[1])


def _flag_params(args, keys) -> dict:
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def cmd_classical(args) -> int:
    out = _resolve_out(args, "classical")
    params = _params(args)
    amp = _amp(args)
    curve = ClassicalCurve(
        A=math.sqrt(2.0) * amp.alpha / math.sqrt(params.omega_x),
        B=math.sqrt(2.0) * amp.beta_abs / math.sqrt(params.omega_y),
        q=params.q,
        p=params.p,
        phi=amp.phi,
        omega0=params.omega0,
    )
    ts = np.linspace(0.0, curve.period, args.samples, endpoint=False)
    x, y = curve_points(curve, ts)
    csv_path = out / "curve.csv"
    lines = ["t,x,y"]
    lines += [f"{t!r},{a!r},{b!r}" for t, a, b in zip(ts.tolist(), x.tolist(), y.tolist())]
    csv_path.write_text("\n".join(lines) + "\n")
    closure = closure_analysis(curve.q, curve.p)
    on_x, on_y = axis_extrema_count(curve)
    from .figures import render_classical_figure

    png_path = render_classical_figure(curve, out / "curve.png")
    report = {
        "closure": {
            "commensurate": closure.commensurate,
            "q0": closure.q0,
            "p0": closure.p0,
            "m": closure.m,
            "phase_period": closure.phase_period,
        },
        "edge_contacts": {"x": on_x, "y": on_y},
        "amplitudes": {"A": curve.A, "B": curve.B},
    }
    write_manifest(
        out,
        command="classical",
        parameters=_flag_params(args, ("N", "p", "q", "alpha", "beta_abs", "phi", "omega0", "samples")),
        outputs=[csv_path, png_path],
        extra={"report": report},
    )
    print(f"curve written to {out} (x contacts {on_x}, y contacts {on_y})")
    return 0


def cmd_state(args) -> int:
    out = _resolve_out(args, "state")
    state = _state(args)
    path = out / "state.json"
    path.write_text(json.dumps(state.to_json_dict(), indent=2) + "\n")
    write_manifest(
        out,
        command="state",
        parameters=_flag_params(args, ("N", "p", "q", "alpha", "beta_abs", "phi", "omega0")),
        outputs=[path],
    )
    norm = float(np.sum(np.abs(state.coeffs) ** 2))
    print(
        f"state N={state.N} p={state.params.p} q={state.params.q} "
        f"energy={state.energy:g} norm={norm:.15f} -> {path}"
    )
    return 0


def _field_outputs(args, out: Path, state, field, vortices=None):
    data_path = out / ("field.csv" if args.format == "csv" else "field.bin")
    sidecar = write_field(data_path, field, fmt=args.format, provenance=state.provenance)
    rho_ppm = write_raster(out / "rho.ppm", field.rho)
    jmag_ppm = write_raster(out / "jmag.ppm", np.hypot(field.jx, field.jy), colormap="gray")
    from .figures import render_field_figure

    curve = ClassicalCurve(
        A=math.sqrt(2.0) * args.alpha / math.sqrt(state.params.omega_x),
        B=math.sqrt(2.0) * args.beta_abs / math.sqrt(state.params.omega_y),
        q=state.params.q,
        p=state.params.p,
        phi=args.phi,
        omega0=state.params.omega0,
    )
    png = render_field_figure(
        field,
        out / "field.png",
        overlay=curve if min(curve.A, curve.B) > 0 else None,
        vortices=vortices,
    )
    return [data_path, sidecar, rho_ppm, jmag_ppm, png]


def cmd_field(args) -> int:
    out = _resolve_out(args, "field")
    state = _state(args)
    grid = _grid_for(args, state)
    field = eval_state(state, grid, workers=args.threads)
    outputs = _field_outputs(args, out, state, field)
    total = quadrature(field.rho, grid)
    write_manifest(
        out,
        command="field",
        parameters=_flag_params(
            args, ("N", "p", "q", "alpha", "beta_abs", "phi", "omega0", "grid", "format")
        ),
        outputs=outputs,
        extra={"norm": total},
    )
    print(f"field on {grid.nx}x{grid.ny} grid -> {out} (integral {total:.9f})")
    return 0


def cmd_vortices(args) -> int:
    out = _resolve_out(args, "vortices")
    state = _state(args)
    grid = _grid_for(args, state)
    field = eval_state(state, grid, workers=args.threads)
    found = detect_vortices(field, density_floor=args.floor)
    csv_path = out / "vortices.csv"
    lines = ["x,y,winding"]
    lines += [
        f"{x!r},{y!r},{int(w)}"
        for x, y, w in zip(found.xs.tolist(), found.ys.tolist(), found.windings.tolist())
    ]
    csv_path.write_text("\n".join(lines) + "\n")
    outputs = [csv_path] + _field_outputs(args, out, state, field, vortices=found)
    write_manifest(
        out,
        command="vortices",
        parameters=_flag_params(
            args,
            ("N", "p", "q", "alpha", "beta_abs", "phi", "omega0", "grid", "format", "floor"),
        ),
        outputs=outputs,
        extra={"count": len(found), "counts_by_sign": found.counts_by_sign},
    )
    print(f"{len(found)} vortices (by sign {found.counts_by_sign}) -> {out}")
    return 0


def cmd_semiclassical(args) -> int:
    out = _resolve_out(args, "semiclassical")
    cfg = SemiclassicalConfig(amp=_amp(args), params=_params(args))
    grid = (
        semiclassical_extent(cfg, points=max(args.grid))
        if args.extent is None
        else FieldGrid(
            -args.extent[0], args.extent[0], -args.extent[1], args.extent[1], *args.grid
        )
    )
    report = ehrenfest_report(cfg, n_times=args.times, grid=grid)
    csv_path = out / "trajectory.csv"
    lines = ["t,x_centroid,y_centroid,x_classical,y_classical"]
    for t, (qx, qy), (cx, cy) in zip(
        report.times.tolist(), report.quantum_xy.tolist(), report.classical_xy.tolist()
    ):
        lines.append(f"{t!r},{qx!r},{qy!r},{cx!r},{cy!r}")
    csv_path.write_text("\n".join(lines) + "\n")
    snapshot = eval_semiclassical(cfg, 0.0, grid)
    data_path = out / ("snapshot_t0.csv" if args.format == "csv" else "snapshot_t0.bin")
    sidecar = write_field(data_path, snapshot, fmt=args.format, provenance="semiclassical")
    from .figures import render_trajectory_figure

    png = render_trajectory_figure(
        report.times, report.quantum_xy, report.classical_xy, out / "trajectory.png"
    )
    write_manifest(
        out,
        command="semiclassical",
        parameters=_flag_params(
            args,
            ("N", "p", "q", "alpha", "beta_abs", "phi", "omega0", "grid", "format", "times"),
        ),
        outputs=[csv_path, data_path, sidecar, png],
        extra={"max_deviation": report.max_deviation},
    )
    print(
        f"centroid tracked over {args.times} times -> {out} "
        f"(max deviation {report.max_deviation:.3e})"
    )
    return 0


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suites

    if args.suite == "list":
        for name in SUITES:
            print(name)
        return 0
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [n for n in names if n != "all" and n not in SUITES]
    if unknown:
        print(f"unknown suite(s): {', '.join(unknown)}", file=sys.stderr)
        return 2
    results = run_suites(names)
    all_ok = all(r.passed for r in results)
    return 0 if all_ok else 3


_HANDLERS = {
    "classical": cmd_classical,
    "state": cmd_state,
    "field": cmd_field,
    "vortices": cmd_vortices,
    "semiclassical": cmd_semiclassical,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        # Zero-flag default: the baseline density figure configuration.
        args = parser.parse_args(["field"])
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 4
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
