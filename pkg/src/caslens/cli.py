"""Command-line interface.

Subcommands:

    fpp             parallel-plate free energy per unit area over a grid
    pressure        parallel-plate pressure over a grid
    force           plate-lens force by a chosen method over a grid
    ratio           imperfect/perfect force ratio over a grid
    reproduce-fig2  the bundled three-case benchmark ratio table
    combine-errors  total measurement error from a budget file
    validate-lens   check an imperfection against the optical limits

CSV output is deterministic: comma separated, LF line endings, UTF-8,
numbers in scientific notation with 12 significant digits.  Exit codes:
0 success, 1 usage/configuration error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from typing import Iterable, Sequence

from . import config as cfg
from .exceptions import NumericalError
from .lens import LensKind, LensProfile, derive_geometry, validate_spec
from .metrology import ErrorBudget, load_k_table, load_q_table, total_error
from .pfa import (
    ForceMethod,
    force_bubble,
    force_general,
    force_perfect_full,
    force_perfect_simplified,
    force_pit,
    ratio_curve,
)
from .plates import free_energy_pp, pressure_pp

DEFAULT_TEMPERATURE = 300.0

#: Hard-coded benchmark: three imperfection cases on a R = 15 cm lens at
#: 300 K, separations 1.0 um to 3.0 um in 0.05 um steps.
_BENCHMARK_R = 0.15
_BENCHMARK_CASES = (
    ("ratio_line1", LensKind.BUBBLE, 0.25, 0.5e-6),
    ("ratio_line2", LensKind.BUBBLE, 0.05, 1.0e-6),
    ("ratio_line3", LensKind.PIT, 0.12, 1.0e-6),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _write_csv(path: str, header: str, rows: Iterable[Sequence[str]]) -> None:
    """Write CSV atomically: any failure leaves no partial file behind."""
    lines = [header] + [",".join(row) for row in rows]
    payload = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(payload)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".caslens-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _setting(args: argparse.Namespace, file_config: dict[str, str],
             name: str, default: str | None = None) -> str | None:
    value = getattr(args, name.replace("-", "_"), None)
    if value is not None:
        return value
    return file_config.get(name, default)


def _file_config(args: argparse.Namespace) -> dict[str, str]:
    path = getattr(args, "config", None)
    if path is None:
        return {}
    return cfg.parse_kv_file(path)


def _grid(args: argparse.Namespace, file_config: dict[str, str]) -> list[float]:
    explicit = _setting(args, file_config, "a-list") or _setting(
        args, file_config, "a_list")
    if explicit:
        return [cfg.parse_length(item) for item in explicit.split(",") if item.strip()]
    start = _setting(args, file_config, "a-start") or _setting(
        args, file_config, "a_start")
    if start is None:
        raise UsageError("a separation grid requires --a-start or --a-list")
    stop = _setting(args, file_config, "a-stop") or _setting(
        args, file_config, "a_stop")
    step = _setting(args, file_config, "a-step") or _setting(
        args, file_config, "a_step")
    start_m = cfg.parse_length(start)
    stop_m = cfg.parse_length(stop) if stop is not None else start_m
    if step is None:
        if stop_m > start_m:
            raise UsageError("--a-step is required when --a-stop exceeds --a-start")
        step_m = 1.0
    else:
        step_m = cfg.parse_length(step)
    return cfg.build_grid(start_m, stop_m, step_m)


def _temperature(args: argparse.Namespace, file_config: dict[str, str]) -> float:
    raw = _setting(args, file_config, "T")
    if raw is None:
        return DEFAULT_TEMPERATURE
    value = cfg.parse_temperature(raw)
    if value < 0.0:
        raise UsageError(f"temperature must be non-negative, got {value!r}")
    return value


def _profile(args: argparse.Namespace, file_config: dict[str, str]) -> LensProfile:
    kind_name = _setting(args, file_config, "profile", "perfect")
    try:
        kind = LensKind(kind_name)
    except ValueError:
        raise UsageError(f"unknown profile kind {kind_name!r}") from None
    raw_R = _setting(args, file_config, "R")
    if raw_R is None:
        raise UsageError("--R is required")
    R = cfg.parse_length(raw_R)
    raw_D = _setting(args, file_config, "D")
    D = cfg.parse_length(raw_D) if raw_D is not None else None
    if kind is LensKind.PERFECT:
        return LensProfile.perfect(R, D)
    raw_R1 = _setting(args, file_config, "R1")
    raw_D1 = _setting(args, file_config, "D1")
    if raw_R1 is None or raw_D1 is None:
        raise UsageError(f"a {kind.value} profile requires --R1 and --D1")
    R1 = cfg.parse_length(raw_R1)
    D1 = cfg.parse_length(raw_D1)
    if kind is LensKind.BUBBLE:
        return LensProfile.bubble(R, R1, D1, D)
    return LensProfile.pit(R, R1, D1, D)


_METHOD_KINDS = {
    ForceMethod.PERFECT_SIMPLIFIED: LensKind.PERFECT,
    ForceMethod.PERFECT_FULL: LensKind.PERFECT,
    ForceMethod.BUBBLE: LensKind.BUBBLE,
    ForceMethod.PIT: LensKind.PIT,
}

_DEFAULT_METHODS = {
    LensKind.PERFECT: ForceMethod.PERFECT_SIMPLIFIED,
    LensKind.BUBBLE: ForceMethod.BUBBLE,
    LensKind.PIT: ForceMethod.PIT,
}


def _cmd_fpp(args: argparse.Namespace) -> int:
    file_config = _file_config(args)
    T = _temperature(args, file_config)
    grid = _grid(args, file_config)
    rows = [(_fmt(z), _fmt(free_energy_pp(z, T).value)) for z in grid]
    _write_csv(args.out, "z_m,fpp_J_per_m2", rows)
    return 0


def _cmd_pressure(args: argparse.Namespace) -> int:
    file_config = _file_config(args)
    T = _temperature(args, file_config)
    grid = _grid(args, file_config)
    rows = [(_fmt(z), _fmt(pressure_pp(z, T))) for z in grid]
    _write_csv(args.out, "z_m,pressure_N_per_m2", rows)
    return 0


def _cmd_force(args: argparse.Namespace) -> int:
    file_config = _file_config(args)
    T = _temperature(args, file_config)
    grid = _grid(args, file_config)
    profile = _profile(args, file_config)
    method_name = _setting(args, file_config, "method")
    if method_name is None:
        method = _DEFAULT_METHODS[profile.kind]
    else:
        try:
            method = ForceMethod(method_name)
        except ValueError:
            raise UsageError(f"unknown method {method_name!r}") from None
    required = _METHOD_KINDS.get(method)
    if required is not None and profile.kind is not required:
        raise UsageError(
            f"method {method.value!r} applies to {required.value} profiles, "
            f"not {profile.kind.value}"
        )
    raw_tol = _setting(args, file_config, "tol")
    tol = float(raw_tol) if raw_tol is not None else None
    warnings_seen: list[str] = []
    rows = []
    for a in grid:
        if method is ForceMethod.PERFECT_SIMPLIFIED:
            result = force_perfect_simplified(a, T, profile.R)
        elif method is ForceMethod.PERFECT_FULL:
            result = force_perfect_full(a, T, profile.R, profile.D,
                                        quad_tol=tol if tol is not None else 1.0e-12)
        elif method is ForceMethod.BUBBLE:
            result = force_bubble(a, T, profile.R, profile.R1, profile.D1)
        elif method is ForceMethod.PIT:
            result = force_pit(a, T, profile.R, profile.R1, profile.D1)
        else:
            result = force_general(profile, a, T,
                                   quad_tol=tol if tol is not None else 1.0e-9)
        if result.warning and result.warning not in warnings_seen:
            warnings_seen.append(result.warning)
        rows.append((_fmt(a), _fmt(result.magnitude), method.value))
    for warning in warnings_seen:
        print(f"warning: {warning}", file=sys.stderr)
    _write_csv(args.out, "a_m,F_N,method", rows)
    return 0


def _cmd_ratio(args: argparse.Namespace) -> int:
    file_config = _file_config(args)
    T = _temperature(args, file_config)
    grid = _grid(args, file_config)
    profile = _profile(args, file_config)
    if profile.kind is LensKind.PERFECT:
        raise UsageError("ratio curves require a bubble or pit profile")
    if grid:
        curve = ratio_curve(profile, grid, T)
        rows = [(_fmt(a), _fmt(rho)) for a, rho in zip(curve.separations, curve.ratios)]
    else:
        rows = []
    _write_csv(args.out, "a_m,ratio", rows)
    return 0


def _cmd_reproduce_fig2(args: argparse.Namespace) -> int:
    grid = cfg.build_grid(1.0e-6, 3.0e-6, 0.05e-6)
    columns = []
    for _name, kind, R1, D1 in _BENCHMARK_CASES:
        if kind is LensKind.BUBBLE:
            profile = LensProfile.bubble(_BENCHMARK_R, R1, D1)
        else:
            profile = LensProfile.pit(_BENCHMARK_R, R1, D1)
        columns.append(ratio_curve(profile, grid, DEFAULT_TEMPERATURE).ratios)
    header = "a_um," + ",".join(name for name, *_ in _BENCHMARK_CASES)
    rows = []
    for i, a in enumerate(grid):
        rows.append((f"{a * 1.0e6:.2f}",) + tuple(_fmt(col[i]) for col in columns))
    _write_csv(args.out, header, rows)
    return 0


def _cmd_combine_errors(args: argparse.Namespace) -> int:
    settings = cfg.parse_kv_file(args.budget)
    for key in ("random_error", "systematic_components", "variance_of_mean"):
        if key not in settings:
            raise UsageError(f"budget file {args.budget} is missing {key!r}")
    beta = float(settings.get("beta", "0.95"))
    components = tuple(
        float(item) for item in settings["systematic_components"].split(",")
        if item.strip()
    )
    k_table = load_k_table(args.k_table, beta) if args.k_table else {}
    q_table = load_q_table(args.q_table, beta) if args.q_table else {}
    budget = ErrorBudget(
        random_error=float(settings["random_error"]),
        systematic_components=components,
        variance_of_mean=float(settings["variance_of_mean"]),
        beta=beta,
        k_table=k_table,
        q_table=q_table,
    )
    measured = args.value
    if measured is None and "measured_value" in settings:
        measured = float(settings["measured_value"])
    combined = total_error(budget, measured)
    print(f"r = {combined.r:.6g}")
    print(f"rule = {combined.rule_applied.value}")
    print(f"delta_r = {combined.random_error:.6g}")
    print(f"delta_s = {combined.systematic_error:.6g}")
    print(f"delta_t = {combined.total:.6g}")
    if combined.relative is not None:
        print(f"delta_t_relative = {combined.relative:.6g}")
    return 0


def _cmd_validate_lens(args: argparse.Namespace) -> int:
    file_config = _file_config(args)
    profile = _profile(args, file_config)
    raw_tolerance = _setting(args, file_config, "delta-R") or _setting(
        args, file_config, "delta_R")
    if raw_tolerance is not None:
        report = validate_spec(profile, cfg.parse_length(raw_tolerance))
    else:
        report = validate_spec(profile)
    if profile.kind is not LensKind.PERFECT:
        geometry = derive_geometry(profile)
        print(f"footprint radius r = {geometry.r:.6e} m")
        print(f"sagitta d = {geometry.d:.6e} m")
        print(f"offset = {geometry.offset:.6e} m")
    for check in report.checks:
        state = "PASS" if check.passed else "FAIL"
        print(f"check {check.name}: {state} ({check.detail})")
    print(f"overall: {'PASS' if report.all_passed else 'FAIL'}")
    return 0


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default="-",
                        help="output path ('-' writes to stdout)")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a-start", help="grid start separation, e.g. 1um")
    parser.add_argument("--a-stop", help="grid end separation (inclusive)")
    parser.add_argument("--a-step", help="grid step")
    parser.add_argument("--a-list", help="comma-separated explicit separations")
    parser.add_argument("--T", help="temperature in kelvin (default 300)")
    parser.add_argument("--config", help="key = value configuration file; "
                                         "command-line flags win")


def _add_profile(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--profile", choices=[k.value for k in LensKind],
                        help="lens profile kind (default perfect)")
    parser.add_argument("--R", help="lens curvature radius, e.g. 15cm")
    parser.add_argument("--R1", help="imperfection curvature radius")
    parser.add_argument("--D1", help="imperfection depth")
    parser.add_argument("--D", help="lens thickness (default: R, a hemisphere)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="caslens",
                     description="Thermal Casimir force between a plane "
                                 "plate and a centimeter-size spherical lens")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fpp", help="parallel-plate free energy per unit area")
    _add_grid(p)
    _add_out(p)
    p.set_defaults(func=_cmd_fpp)

    p = sub.add_parser("pressure", help="parallel-plate pressure")
    _add_grid(p)
    _add_out(p)
    p.set_defaults(func=_cmd_pressure)

    p = sub.add_parser("force", help="plate-lens force over a separation grid")
    _add_grid(p)
    _add_profile(p)
    p.add_argument("--method",
                   choices=[m.value for m in ForceMethod],
                   help="force formula (default matches the profile kind)")
    p.add_argument("--tol", help="relative quadrature tolerance")
    _add_out(p)
    p.set_defaults(func=_cmd_force)

    p = sub.add_parser("ratio", help="imperfect/perfect force ratio")
    _add_grid(p)
    _add_profile(p)
    _add_out(p)
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("reproduce-fig2",
                       help="benchmark ratio table for the three bundled "
                            "imperfection cases")
    _add_out(p)
    p.set_defaults(func=_cmd_reproduce_fig2)

    p = sub.add_parser("combine-errors", help="combine an error budget")
    p.add_argument("--budget", required=True, help="budget key = value file")
    p.add_argument("--k-table", help="two-column (J, k) coefficient file")
    p.add_argument("--q-table", help="two-column (r, q) coefficient file")
    p.add_argument("--value", type=float,
                   help="measured value for the relative total")
    p.set_defaults(func=_cmd_combine_errors)

    p = sub.add_parser("validate-lens", help="check a lens imperfection "
                                             "against the optical limits")
    p.add_argument("--config", help="key = value configuration file")
    _add_profile(p)
    p.add_argument("--delta-R", help="curvature measurement tolerance "
                                     "(default 0.05cm)")
    p.set_defaults(func=_cmd_validate_lens)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
