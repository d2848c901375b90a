"""Command line front end."""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .analysis import analyze_grid
from .config import (
    RunConfig,
    build_metric_spec,
    build_profile,
    grid_points,
    grid_shape,
    load_config,
    tolerances_for,
)
from .const import (
    CMD_ANALYZE,
    CMD_EXPORT_MESH,
    CMD_LEMMA23,
    CMD_MERIDIAN,
    CMD_VERIFY,
    COMMANDS,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_VERIFICATION,
    FORMAT_CSV,
    FORMAT_OBJ,
    MERIDIAN_COLUMNS,
    NAME,
    ODE_DEFAULT_SAMPLES,
    ROTATIONAL,
    VERSION,
)
from .exceptions import ConfigSemantic, IoFailure, RelCurvError
from .output import (
    meridian_rows,
    report_columns,
    report_row,
    revolve_profile,
    write_outputs,
)
from .rotational.meridian import profile_samples
from .tensorcalc.symmetry import lemma23_rank_check
from .verify import run_verification

_LOGGER = logging.getLogger(__name__)

LEMMA23_COLUMNS = ("n", "dim_sym", "dim_constrained")


def _parse_args(argv: list | None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog=NAME,
        description="Relative sectional curvature of Riemannian metrics and rotational "
        "hypersurfaces.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="TOML run configuration")
    parser.add_argument("--seed", type=int, default=None, help="override [analysis] seed")
    parser.add_argument("--out", default=None, help="output path, '-' for stdout")
    parser.add_argument(
        "--workers", type=int, default=1, help="parallel workers for grid classification"
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    parser.add_argument("--version", action="version", version=f"{NAME} {VERSION}")
    return parser.parse_args(argv)


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _analyze(cfg: RunConfig, workers: int) -> int:
    profile = build_profile(cfg)[0] if cfg.metric.family == ROTATIONAL else None
    spec = build_metric_spec(cfg, profile)
    reports = analyze_grid(
        spec,
        grid_points(cfg, profile),
        cfg.analysis.seed,
        cfg.analysis.planes_per_point,
        tolerances_for(cfg),
        workers,
        grid_shape(cfg, profile)[-1],
    )
    write_outputs(
        [report_row(report) for report in reports],
        FORMAT_CSV,
        cfg.output.path,
        report_columns(spec.dim),
        cfg.output.precision,
    )
    return EXIT_OK


def _meridian(cfg: RunConfig) -> int:
    profile, solution = build_profile(cfg)
    if solution is not None:
        samples = solution.samples
    else:
        samples = profile_samples(profile, cfg.metric.dim, profile.sample(ODE_DEFAULT_SAMPLES))
    write_outputs(
        meridian_rows(samples), FORMAT_CSV, cfg.output.path, MERIDIAN_COLUMNS, cfg.output.precision
    )
    return EXIT_OK


def _write_lines(lines: list, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write("".join(lines))
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write("".join(lines))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _verify(cfg: RunConfig, workers: int) -> int:
    results = run_verification(cfg, workers)
    lines = [json.dumps(result.as_dict(), sort_keys=True) + "\n" for result in results]
    failed = [result.name for result in results if not result.passed]
    summary = {"checks": len(results), "failed": failed, "passed": not failed}
    lines.append(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    _write_lines(lines, cfg.output.path)
    if failed:
        _report(EXIT_VERIFICATION, "VerificationFailure", f"failed checks: {', '.join(failed)}")
        return EXIT_VERIFICATION
    return EXIT_OK


def _lemma23(cfg: RunConfig) -> int:
    rows = []
    for n in cfg.analysis.lemma23_dims:
        dim_sym, dim_constrained = lemma23_rank_check(int(n), cfg.analysis.seed)
        rows.append((int(n), dim_sym, dim_constrained))
    write_outputs(rows, FORMAT_CSV, cfg.output.path, LEMMA23_COLUMNS, cfg.output.precision)
    return EXIT_OK


def _export_mesh(cfg: RunConfig) -> int:
    if cfg.metric.dim != 2 or cfg.rotational is None:
        raise ConfigSemantic("export-mesh needs dim = 2 and a [rotational] table")
    profile, _ = build_profile(cfg)
    angular, axial = (int(v) for v in cfg.output.mesh_resolution)
    vertices, faces = revolve_profile(profile, angular, axial)
    write_outputs((vertices, faces), FORMAT_OBJ, cfg.output.path, precision=cfg.output.precision)
    return EXIT_OK


def run_command(cfg: RunConfig, command: str, workers: int = 1) -> int:
    """Run one command on a validated configuration.

    Returns:
        int: exit code (0, or 1 when verify finds a failing check)

    Raises:
        RelCurvError: configuration, numerical or output failures
    """
    _LOGGER.info("Running %s", command)
    if command == CMD_ANALYZE:
        return _analyze(cfg, workers)
    if command == CMD_MERIDIAN:
        return _meridian(cfg)
    if command == CMD_VERIFY:
        return _verify(cfg, workers)
    if command == CMD_LEMMA23:
        return _lemma23(cfg)
    if command == CMD_EXPORT_MESH:
        return _export_mesh(cfg)
    raise ConfigSemantic(f"unknown command '{command}'")


def _report(code: int, kind: str, message: str) -> None:
    """Machine readable failure line on stderr."""
    message = " ".join(str(message).split())
    sys.stderr.write(f"ERROR:{code}:{kind}:{message}\n")


def main(argv: list | None = None) -> int:
    """Entry point of the relcurv command."""
    args = _parse_args(argv)
    _configure_logging(args.verbose)
    if args.workers < 1:
        _report(ConfigSemantic.exit_code, "ConfigSemantic", "--workers must be at least 1")
        return ConfigSemantic.exit_code
    try:
        cfg = load_config(args.config).with_overrides(seed=args.seed, out=args.out)
        return run_command(cfg, args.command, args.workers)
    except RelCurvError as exc:
        _report(exc.exit_code, exc.kind, str(exc))
        return exc.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        _report(EXIT_NUMERICAL, "NumericalFailure", f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
