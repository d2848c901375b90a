"""Run configurations."""
from __future__ import annotations

import itertools
import logging
import re
import sys

import attr
import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .charts import MetricSpec
from .charts.flat import flat_spec
from .charts.perturbed import perturbed_spec
from .charts.sphere import sphere_spec
from .charts.warped import rotational_spec
from .const import (
    ANALYTIC,
    CSV_PRECISION,
    CUSTOM,
    DEFAULT_MESH_RESOLUTION,
    DEFAULT_PLANES_PER_POINT,
    DEFAULT_SEED,
    FAMILIES,
    FD_DEFAULT_ORDER,
    FLAT,
    JET_MODES,
    MAX_DIM,
    MIN_DIM,
    MIN_PLANES_PER_POINT,
    ODE_DEFAULT_SAMPLES,
    OPTIONAL_CHECKS,
    ODE_RTOL,
    PROFILE_CIRCLE,
    PROFILE_CONSTANT,
    PROFILE_COSH,
    PROFILE_ODE,
    ROTATIONAL,
    SPHERE,
    SPHERE_CHARTS,
    STEREOGRAPHIC,
)
from .directed import Tolerances
from .exceptions import ConfigSemantic, ConfigSyntax
from .profile import ProfileCurve, circle_profile, constant_profile, cosh_profile
from .rotational.meridian import meridian_ode, meridian_profile
from .tensorcalc.jet import ChartPoint

_LOGGER = logging.getLogger(__name__)

_LINE = re.compile(r"line (\d+)")

PROFILE_CHOICES = (PROFILE_CONSTANT, PROFILE_CIRCLE, PROFILE_COSH, PROFILE_ODE)

DEFAULT_GRID_COUNT = 3
DEFAULT_PROFILE_POINTS = 10


def _positive(instance, attribute, value) -> None:
    if value is not None and not value > 0:
        raise ConfigSemantic(f"{attribute.name} must be positive, got {value}")


@attr.s(slots=True, frozen=True)
class Perturbation:
    """Seeded smooth perturbation added to the metric."""

    amplitude: float = attr.ib(converter=float)
    seed: int = attr.ib(default=0, converter=int)

    @amplitude.validator
    def _check_amplitude(self, attribute, value) -> None:
        if value < 0:
            raise ConfigSemantic(f"perturbation amplitude must be nonnegative, got {value}")


@attr.s(slots=True, frozen=True)
class MetricSection:
    """[metric] table."""

    family: str = attr.ib()
    dim: int = attr.ib(converter=int)
    radius: float = attr.ib(default=1.0, converter=float, validator=_positive)
    chart: str = attr.ib(default=STEREOGRAPHIC)
    jet_mode: str = attr.ib(default=ANALYTIC)
    fd_order: int = attr.ib(default=FD_DEFAULT_ORDER, converter=int)
    base: str | None = attr.ib(default=None)
    perturbation: Perturbation | None = attr.ib(default=None)

    @family.validator
    def _check_family(self, attribute, value) -> None:
        if value not in FAMILIES:
            raise ConfigSemantic(f"unknown metric family '{value}', expected one of {FAMILIES}")

    @dim.validator
    def _check_dim(self, attribute, value) -> None:
        if not MIN_DIM <= value <= MAX_DIM:
            raise ConfigSemantic(f"dimension must be in [{MIN_DIM}, {MAX_DIM}], got {value}")

    @chart.validator
    def _check_chart(self, attribute, value) -> None:
        if value not in SPHERE_CHARTS:
            raise ConfigSemantic(f"unknown sphere chart '{value}'")

    @jet_mode.validator
    def _check_mode(self, attribute, value) -> None:
        if value not in JET_MODES:
            raise ConfigSemantic(f"unknown jet mode '{value}', expected one of {JET_MODES}")

    @fd_order.validator
    def _check_order(self, attribute, value) -> None:
        if not 1 <= value <= 3:
            raise ConfigSemantic(f"finite difference order must be 1, 2 or 3, got {value}")


@attr.s(slots=True, frozen=True)
class OdeSection:
    """Inline table rotational.ode: initial data of a meridian."""

    big_b: float = attr.ib(converter=float)
    r0: float = attr.ib(converter=float, validator=_positive)
    v0: float = attr.ib(default=0.0, converter=float)
    t_span: tuple = attr.ib(default=(0.0, 0.2), converter=tuple)
    samples: int = attr.ib(default=ODE_DEFAULT_SAMPLES, converter=int, validator=_positive)
    tol: float = attr.ib(default=ODE_RTOL, converter=float, validator=_positive)

    @t_span.validator
    def _check_span(self, attribute, value) -> None:
        if len(value) != 2 or float(value[0]) == float(value[1]):
            raise ConfigSemantic(f"t_span must be two distinct numbers, got {list(value)}")


@attr.s(slots=True, frozen=True)
class RotationalSection:
    """[rotational] table: a named profile or an ODE meridian."""

    profile: str = attr.ib(default=PROFILE_COSH)
    radius: float = attr.ib(default=1.0, converter=float, validator=_positive)
    scale: float = attr.ib(default=1.0, converter=float, validator=_positive)
    ode: OdeSection | None = attr.ib(default=None)

    @profile.validator
    def _check_profile(self, attribute, value) -> None:
        if value not in PROFILE_CHOICES:
            raise ConfigSemantic(f"unknown profile '{value}', expected one of {PROFILE_CHOICES}")


@attr.s(slots=True, frozen=True)
class Expectations:
    """Flags every analyzed point must show, checked by verify."""

    directed: bool | None = attr.ib(default=None)
    pointwise_constant: bool | None = attr.ib(default=None)
    locally_symmetric: bool | None = attr.ib(default=None)

    def items(self) -> list:
        """(flag, expected value) pairs that are set."""
        return [(k, v) for k, v in attr.asdict(self).items() if v is not None]


@attr.s(slots=True, frozen=True)
class AnalysisSection:
    """[analysis] table."""

    seed: int = attr.ib(default=DEFAULT_SEED, converter=int)
    planes_per_point: int = attr.ib(default=DEFAULT_PLANES_PER_POINT, converter=int)
    grid: tuple | None = attr.ib(default=None)
    tolerances: Tolerances | None = attr.ib(default=None)
    expect: Expectations = attr.ib(factory=Expectations)
    lemma23_dims: tuple = attr.ib(default=(2, 3, 4), converter=tuple)
    require: tuple = attr.ib(default=(), converter=tuple)

    @planes_per_point.validator
    def _check_planes(self, attribute, value) -> None:
        if value < MIN_PLANES_PER_POINT:
            raise ConfigSemantic(f"planes_per_point must be at least {MIN_PLANES_PER_POINT}")

    @grid.validator
    def _check_grid(self, attribute, value) -> None:
        for axis in value or ():
            if len(axis) != 3 or int(axis[2]) < 1:
                raise ConfigSemantic(f"grid axis must be [start, stop, count], got {list(axis)}")

    @require.validator
    def _check_require(self, attribute, value) -> None:
        for name in value:
            if name not in OPTIONAL_CHECKS:
                raise ConfigSemantic(f"unknown check '{name}', expected one of {OPTIONAL_CHECKS}")


@attr.s(slots=True, frozen=True)
class OutputSection:
    """[output] table."""

    path: str | None = attr.ib(default=None)
    precision: int = attr.ib(default=CSV_PRECISION, converter=int, validator=_positive)
    mesh_resolution: tuple = attr.ib(
        default=(DEFAULT_MESH_RESOLUTION, DEFAULT_MESH_RESOLUTION), converter=tuple
    )

    @mesh_resolution.validator
    def _check_resolution(self, attribute, value) -> None:
        if len(value) != 2 or min(int(v) for v in value) < 3:
            raise ConfigSemantic(f"mesh_resolution must be two counts >= 3, got {list(value)}")


@attr.s(slots=True, frozen=True)
class RunConfig:
    """Validated configuration of a run."""

    metric: MetricSection = attr.ib()
    rotational: RotationalSection | None = attr.ib(default=None)
    analysis: AnalysisSection = attr.ib(factory=AnalysisSection)
    output: OutputSection = attr.ib(factory=OutputSection)

    def with_overrides(self, seed: int | None = None, out: str | None = None) -> RunConfig:
        """Copy with command line overrides applied."""
        cfg = self
        if seed is not None:
            cfg = attr.evolve(cfg, analysis=attr.evolve(cfg.analysis, seed=seed))
        if out is not None:
            cfg = attr.evolve(cfg, output=attr.evolve(cfg.output, path=out))
        return cfg


def _table(data: dict, name: str, required: bool = False) -> dict | None:
    value = data.get(name)
    if value is None:
        if required:
            raise ConfigSemantic(f"missing [{name}] table")
        return None
    if not isinstance(value, dict):
        raise ConfigSemantic(f"'{name}' must be a table")
    return value


def _build(cls, table: dict, name: str, renames: dict | None = None):
    """Instantiate an attrs section, rejecting unknown keys."""
    renames = renames or {}
    known = {a.name for a in attr.fields(cls)}
    kwargs = {}
    for key, value in table.items():
        field = renames.get(key, key)
        if field not in known:
            raise ConfigSemantic(f"unknown key '{key}' in [{name}]")
        kwargs[field] = value
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigSemantic(f"[{name}]: {exc}") from exc
    except ValueError as exc:
        raise ConfigSemantic(f"[{name}]: bad value ({exc})") from exc


def _line_number(exc: Exception) -> int | None:
    line = getattr(exc, "lineno", None)
    if line is not None:
        return int(line)
    match = _LINE.search(str(exc))
    return int(match.group(1)) if match else None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run configuration.

    Args:
        text (str): configuration text

    Returns:
        RunConfig: validated configuration with defaults filled

    Raises:
        ConfigSyntax: text is not valid TOML (with line number)
        ConfigSemantic: unknown family, profile or key, or values out of range
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigSyntax(str(exc), _line_number(exc)) from exc

    for name in data:
        if name not in ("metric", "rotational", "analysis", "output"):
            raise ConfigSemantic(f"unknown table [{name}]")

    metric_table = dict(_table(data, "metric", required=True))
    perturbation = metric_table.pop("perturbation", None)
    if perturbation is not None:
        metric_table["perturbation"] = _build(Perturbation, perturbation, "metric.perturbation")
    metric = _build(MetricSection, metric_table, "metric")

    rotational = None
    rotational_table = _table(data, "rotational")
    if rotational_table is not None:
        rotational_table = dict(rotational_table)
        ode = rotational_table.pop("ode", None)
        if ode is not None:
            rotational_table["ode"] = _build(OdeSection, ode, "rotational.ode", {"B": "big_b"})
            rotational_table.setdefault("profile", PROFILE_ODE)
        rotational = _build(RotationalSection, rotational_table, "rotational")
        if rotational.profile == PROFILE_ODE and rotational.ode is None:
            raise ConfigSemantic("profile 'ode-generated' needs an [rotational] ode table")

    analysis_table = dict(_table(data, "analysis") or {})
    tolerances = analysis_table.pop("tolerances", None)
    expect = analysis_table.pop("expect", None)
    if "grid" in analysis_table:
        analysis_table["grid"] = tuple(tuple(axis) for axis in analysis_table["grid"])
    analysis = _build(AnalysisSection, analysis_table, "analysis")
    if tolerances is not None:
        defaults = attr.asdict(Tolerances.for_mode(metric.jet_mode))
        for key in tolerances:
            if key not in defaults:
                raise ConfigSemantic(f"unknown tolerance '{key}'")
        analysis = attr.evolve(analysis, tolerances=Tolerances(**{**defaults, **tolerances}))
    if expect is not None:
        analysis = attr.evolve(analysis, expect=_build(Expectations, expect, "analysis.expect"))

    output = _build(OutputSection, _table(data, "output") or {}, "output")
    cfg = RunConfig(metric=metric, rotational=rotational, analysis=analysis, output=output)
    _check_consistency(cfg)
    _LOGGER.debug("Parsed config: %s", cfg)
    return cfg


def _check_consistency(cfg: RunConfig) -> None:
    metric = cfg.metric
    if metric.family == ROTATIONAL and cfg.rotational is None:
        raise ConfigSemantic("family 'rotational' needs a [rotational] table")
    if metric.family == CUSTOM:
        if metric.perturbation is None or metric.base is None:
            raise ConfigSemantic("family 'custom' needs a base family and a perturbation")
        if metric.base not in (FLAT, SPHERE, ROTATIONAL):
            raise ConfigSemantic(f"unknown base family '{metric.base}'")
        if metric.base == ROTATIONAL and cfg.rotational is None:
            raise ConfigSemantic("base 'rotational' needs a [rotational] table")
    grid = cfg.analysis.grid
    if grid is not None and len(grid) != metric.dim:
        raise ConfigSemantic(f"grid has {len(grid)} axes for a {metric.dim}-dimensional chart")


def load_config(path: str) -> RunConfig:
    """Read and parse a configuration file."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigSemantic(f"cannot read config {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ConfigSyntax(f"config is not UTF-8: {exc}") from exc
    return parse_config(text)


def build_profile(cfg: RunConfig):
    """Profile of the [rotational] table.

    Returns:
        tuple: (ProfileCurve, MeridianSolution or None)
    """
    section = cfg.rotational
    if section is None:
        raise ConfigSemantic("no [rotational] table")
    if section.profile == PROFILE_CONSTANT:
        return constant_profile(section.radius), None
    if section.profile == PROFILE_CIRCLE:
        return circle_profile(section.radius), None
    if section.profile == PROFILE_COSH:
        return cosh_profile(section.scale), None
    ode = section.ode
    solution = meridian_ode(
        ode.big_b, ode.r0, ode.v0, ode.t_span, tol=ode.tol, dim=cfg.metric.dim, samples=ode.samples
    )
    return meridian_profile(solution), solution


def _base_spec(cfg: RunConfig, family: str, profile: ProfileCurve | None) -> MetricSpec:
    metric = cfg.metric
    if family == FLAT:
        return flat_spec(metric.dim, metric.jet_mode)
    if family == SPHERE:
        return sphere_spec(metric.dim, metric.radius, metric.chart, metric.jet_mode)
    return rotational_spec(profile, metric.dim, metric.jet_mode)


def build_metric_spec(cfg: RunConfig, profile: ProfileCurve | None = None) -> MetricSpec:
    """MetricSpec of the [metric] table, perturbed when a perturbation is given."""
    metric = cfg.metric
    family = metric.base if metric.family == CUSTOM else metric.family
    if family == ROTATIONAL and profile is None:
        profile, _ = build_profile(cfg)
    spec = _base_spec(cfg, family, profile)
    if metric.jet_mode != ANALYTIC:
        spec = spec.with_mode(metric.jet_mode, metric.fd_order)
    if metric.perturbation is not None:
        spec = perturbed_spec(spec, metric.perturbation.amplitude, metric.perturbation.seed)
    return spec


def tolerances_for(cfg: RunConfig) -> Tolerances:
    """Configured tolerances, or the defaults of the jet mode."""
    return cfg.analysis.tolerances or Tolerances.for_mode(cfg.metric.jet_mode)


def _default_axes(cfg: RunConfig, profile: ProfileCurve | None) -> list:
    dim = cfg.metric.dim
    if cfg.metric.family == SPHERE and cfg.metric.chart != STEREOGRAPHIC:
        polar = np.linspace(0.5, 2.5, DEFAULT_GRID_COUNT)
        return [polar, np.linspace(-0.5, 0.5, DEFAULT_GRID_COUNT)]
    if profile is not None:
        return [np.zeros(1)] * (dim - 1) + [profile.sample(DEFAULT_PROFILE_POINTS)]
    return [np.linspace(-0.5, 0.5, DEFAULT_GRID_COUNT)] * dim


def _grid_axes(cfg: RunConfig, profile: ProfileCurve | None) -> list:
    grid = cfg.analysis.grid
    if grid is None:
        return _default_axes(cfg, profile)
    return [np.linspace(float(start), float(stop), int(count)) for start, stop, count in grid]


def grid_shape(cfg: RunConfig, profile: ProfileCurve | None = None) -> tuple:
    """Number of samples along each grid axis."""
    return tuple(len(axis) for axis in _grid_axes(cfg, profile))


def grid_points(cfg: RunConfig, profile: ProfileCurve | None = None) -> list:
    """Grid of chart points in grid index order (last axis fastest)."""
    axes = _grid_axes(cfg, profile)
    return [ChartPoint(np.array(coords)) for coords in itertools.product(*axes)]


__all__ = [
    "AnalysisSection",
    "Expectations",
    "MetricSection",
    "OdeSection",
    "OutputSection",
    "Perturbation",
    "RotationalSection",
    "RunConfig",
    "build_metric_spec",
    "build_profile",
    "grid_points",
    "grid_shape",
    "load_config",
    "parse_config",
    "tolerances_for",
]
