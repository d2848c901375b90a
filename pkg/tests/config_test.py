"""Unit tests for run configurations."""
import os
import tempfile
from unittest import TestCase

from relcurv.config import (
    build_metric_spec,
    build_profile,
    grid_points,
    grid_shape,
    load_config,
    parse_config,
    tolerances_for,
)
from relcurv.const import (
    ANALYTIC,
    CUSTOM,
    EXIT_CONFIG,
    FINITE_DIFFERENCE,
    FINITE_DIFFERENCE_TOLERANCE,
    PROFILE_ODE,
    SPHERE,
)
from relcurv.exceptions import ConfigSemantic, ConfigSyntax

from tests.const import (
    TEST_BROKEN_CONFIG,
    TEST_COSH_CONFIG,
    TEST_ODE_CONFIG,
    TEST_SPHERE_CONFIG,
)

PERTURBED_CONFIG = """
[metric]
family = "custom"
base = "sphere"
dim = 2
perturbation = { amplitude = 0.05, seed = 3 }
"""


class ParseTest(TestCase):
    """Parsing and validation."""

    def test_sphere(self) -> None:
        """Sections are filled with defaults"""
        cfg = parse_config(TEST_SPHERE_CONFIG)
        self.assertEqual(cfg.metric.family, SPHERE)
        self.assertEqual(cfg.metric.dim, 3)
        self.assertEqual(cfg.metric.jet_mode, ANALYTIC)
        self.assertEqual(cfg.analysis.lemma23_dims, (2,))
        self.assertEqual(len(cfg.analysis.grid), 3)
        self.assertIsNone(cfg.output.path)
        self.assertEqual(cfg.analysis.expect.items(), [])

    def test_ode_table(self) -> None:
        """An inline ode table selects the ODE profile"""
        cfg = parse_config(TEST_ODE_CONFIG)
        self.assertEqual(cfg.rotational.profile, PROFILE_ODE)
        self.assertEqual(cfg.rotational.ode.big_b, 1.0)
        self.assertEqual(cfg.rotational.ode.t_span, (0.0, 0.2))
        self.assertEqual(cfg.rotational.ode.samples, 41)

    def test_expectations(self) -> None:
        """Only the flags that are set are checked"""
        cfg = parse_config(TEST_COSH_CONFIG)
        self.assertEqual(
            cfg.analysis.expect.items(), [("directed", True), ("pointwise_constant", False)]
        )

    def test_syntax_error_line(self) -> None:
        """TOML errors keep their line number"""
        with self.assertRaises(ConfigSyntax) as ctx:
            parse_config(TEST_BROKEN_CONFIG)
        self.assertEqual(ctx.exception.line, 4)
        self.assertEqual(ctx.exception.exit_code, EXIT_CONFIG)
        self.assertTrue(str(ctx.exception).startswith("line 4"))

    def test_semantic_errors(self) -> None:
        """Unknown names and out of range values"""
        bad = (
            '[metric]\nfamily = "torus"\ndim = 3\n',
            '[metric]\nfamily = "sphere"\ndim = 7\n',
            '[metric]\nfamily = "sphere"\ndim = 3\ncolour = "red"\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[plot]\nx = 1\n',
            '[metric]\nfamily = "rotational"\ndim = 3\n',
            '[metric]\nfamily = "custom"\ndim = 3\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[analysis]\ngrid = [[0, 1, 2]]\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[analysis]\nplanes_per_point = 4\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[analysis]\ntolerances = { loose = 1 }\n',
            '[metric]\nfamily = "rotational"\ndim = 3\n[rotational]\nprofile = "ode-generated"\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[output]\nmesh_resolution = [2, 8]\n',
            '[rotational]\nprofile = "cosh"\n',
            '[metric]\nfamily = "sphere"\ndim = 3\n[analysis]\nrequire = ["plots"]\n',
        )
        for text in bad:
            with self.assertRaises(ConfigSemantic, msg=text):
                parse_config(text)

    def test_required_checks(self) -> None:
        """Optional verify checks can be required by name"""
        cfg = parse_config(
            '[metric]\nfamily = "sphere"\ndim = 3\n[analysis]\nrequire = ["elliptic"]\n'
        )
        self.assertEqual(cfg.analysis.require, ("elliptic",))
        self.assertEqual(parse_config(TEST_SPHERE_CONFIG).analysis.require, ())

    def test_tolerance_override(self) -> None:
        """Configured tolerances start from the jet mode defaults"""
        cfg = parse_config(
            '[metric]\nfamily = "sphere"\ndim = 2\njet_mode = "finite-difference"\n'
            "[analysis]\ntolerances = { relative = 1e-4 }\n"
        )
        tolerances = tolerances_for(cfg)
        self.assertEqual(tolerances.relative, 1e-4)
        self.assertEqual(tolerances.scalar_gradient, FINITE_DIFFERENCE_TOLERANCE)

    def test_overrides(self) -> None:
        """Command line seed and output path replace the configured ones"""
        cfg = parse_config(TEST_SPHERE_CONFIG).with_overrides(seed=11, out="result.csv")
        self.assertEqual(cfg.analysis.seed, 11)
        self.assertEqual(cfg.output.path, "result.csv")
        self.assertIs(cfg.with_overrides(), cfg)


class LoadTest(TestCase):
    """Reading configuration files."""

    def setUp(self) -> None:
        """Temporary configuration file"""
        handle, self.path = tempfile.mkstemp(suffix=".toml")
        with os.fdopen(handle, "w", encoding="utf-8") as out:
            out.write(TEST_SPHERE_CONFIG)

    def tearDown(self) -> None:
        """Remove the file"""
        os.remove(self.path)

    def test_load(self) -> None:
        """File contents are parsed"""
        self.assertEqual(load_config(self.path).metric.dim, 3)

    def test_missing(self) -> None:
        """A missing file is a configuration error"""
        with self.assertRaises(ConfigSemantic):
            load_config(self.path + ".missing")


class BuildTest(TestCase):
    """Metric specs, profiles and grids from a configuration."""

    def test_grid_order(self) -> None:
        """The last axis varies fastest"""
        points = grid_points(parse_config(TEST_SPHERE_CONFIG))
        self.assertEqual(len(points), 8)
        self.assertEqual(points[0].coords.tolist(), [-0.3, -0.3, -0.3])
        self.assertEqual(points[1].coords.tolist(), [-0.3, -0.3, 0.3])

    def test_grid_shape(self) -> None:
        """One count per axis, the fastest axis last"""
        self.assertEqual(grid_shape(parse_config(TEST_SPHERE_CONFIG)), (2, 2, 2))
        cfg = parse_config('[metric]\nfamily = "rotational"\ndim = 3\n[rotational]\nscale = 2.0\n')
        profile, _ = build_profile(cfg)
        self.assertEqual(grid_shape(cfg, profile), (1, 1, 10))

    def test_default_profile_grid(self) -> None:
        """Without a grid a rotational chart is sampled along its meridian"""
        cfg = parse_config('[metric]\nfamily = "rotational"\ndim = 3\n[rotational]\nscale = 2.0\n')
        profile, solution = build_profile(cfg)
        self.assertIsNone(solution)
        points = grid_points(cfg, profile)
        self.assertEqual(len(points), 10)
        self.assertTrue(all(p.coords[0] == 0.0 and p.coords[1] == 0.0 for p in points))

    def test_ode_profile(self) -> None:
        """An ODE table integrates its meridian"""
        cfg = parse_config(TEST_ODE_CONFIG)
        profile, solution = build_profile(cfg)
        self.assertEqual(len(solution.samples), 41)
        self.assertEqual(profile.domain, (0.0, 0.2))
        self.assertEqual(build_metric_spec(cfg, profile).dim, 3)

    def test_perturbed(self) -> None:
        """A custom family perturbs its base"""
        spec = build_metric_spec(parse_config(PERTURBED_CONFIG))
        self.assertEqual(spec.family, CUSTOM)
        self.assertEqual(spec.params["base"], SPHERE)
        self.assertEqual(spec.params["seed"], 3)

    def test_finite_difference_mode(self) -> None:
        """The configured jet mode reaches the spec"""
        cfg = parse_config(
            '[metric]\nfamily = "flat"\ndim = 2\njet_mode = "finite-difference"\nfd_order = 2\n'
        )
        spec = build_metric_spec(cfg)
        self.assertEqual(spec.jet_mode, FINITE_DIFFERENCE)
        self.assertEqual(spec.fd_order, 2)
