"""Unit tests for CSV reports and OBJ meshes."""
import os
import shutil
import tempfile
from unittest import TestCase

import numpy as np

from relcurv.const import FORMAT_CSV, FORMAT_OBJ, MERIDIAN_COLUMNS
from relcurv.directed import DirectedReport
from relcurv.exceptions import ConfigSemantic, IoFailure
from relcurv.output import (
    format_value,
    meridian_rows,
    report_columns,
    report_row,
    revolve_profile,
    write_csv,
    write_obj,
    write_outputs,
)
from relcurv.profile import constant_profile, cosh_profile
from relcurv.rotational.meridian import meridian_ode
from relcurv.tensorcalc import ChartPoint


class FormatTest(TestCase):
    """Cell formatting."""

    def test_values(self) -> None:
        """Numbers, flags and missing values"""
        self.assertEqual(format_value(None), "")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(np.bool_(False)), "false")
        self.assertEqual(format_value(3), "3")
        self.assertEqual(format_value(np.float64(2.5)), "2.5")
        self.assertEqual(format_value(0.1234567, precision=3), "0.123")
        self.assertEqual(format_value("x"), "x")

    def test_full_precision(self) -> None:
        """The default precision round trips a double"""
        value = 1.0 / 3.0
        self.assertEqual(float(format_value(value)), value)


class WriteTest(TestCase):
    """Files on disk."""

    def setUp(self) -> None:
        """Scratch directory"""
        self.directory = tempfile.mkdtemp()

    def tearDown(self) -> None:
        """Remove the scratch directory"""
        shutil.rmtree(self.directory)

    def test_csv_line_ends(self) -> None:
        """Header then rows, CRLF terminated"""
        path = os.path.join(self.directory, "rows.csv")
        write_csv([(1, True), (0.5, None)], ("a", "b"), path)
        with open(path, "rb") as handle:
            self.assertEqual(handle.read(), b"a,b\r\n1,true\r\n0.5,\r\n")

    def test_unwritable(self) -> None:
        """A missing directory raises IoFailure"""
        path = os.path.join(self.directory, "missing", "rows.csv")
        with self.assertRaises(IoFailure):
            write_csv([(1,)], ("a",), path)
        with self.assertRaises(IoFailure):
            write_obj([(0.0, 0.0, 0.0)], [], path)

    def test_obj(self) -> None:
        """v records before f records"""
        path = os.path.join(self.directory, "mesh.obj")
        vertices, faces = revolve_profile(constant_profile(1.0), angular=4, axial=3)
        write_obj(vertices, faces, path)
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        self.assertEqual(sum(line.startswith("v ") for line in lines), 12)
        self.assertEqual(sum(line.startswith("f ") for line in lines), 16)
        self.assertTrue(lines[0].startswith("v "))
        self.assertTrue(lines[-1].startswith("f "))

    def test_dispatch(self) -> None:
        """An empty row list writes the header alone"""
        path = os.path.join(self.directory, "empty.csv")
        write_outputs([], FORMAT_CSV, path, ("t", "r"))
        with open(path, "rb") as handle:
            self.assertEqual(handle.read(), b"t,r\r\n")
        mesh = os.path.join(self.directory, "ring.obj")
        write_outputs(revolve_profile(constant_profile(1.0), 3, 3), FORMAT_OBJ, mesh)
        self.assertTrue(os.path.getsize(mesh) > 0)
        with self.assertRaises(ConfigSemantic):
            write_outputs([], "ply", path)


class RowsTest(TestCase):
    """Report and meridian rows."""

    def test_report_columns(self) -> None:
        """Coordinates, values, flags"""
        columns = report_columns(2)
        self.assertEqual(columns[:2], ("x0", "x1"))
        self.assertEqual(columns[2], "tau")
        self.assertEqual(columns[-1], "pointwise_constant")
        self.assertEqual(len(columns), 11)

    def test_report_row(self) -> None:
        """Rows follow the column order"""
        report = DirectedReport(
            point=ChartPoint([0.1, 0.2]),
            tau=2.0,
            dtau_norm=0.0,
            eta=None,
            k_fit=None,
            k_spread=0.0,
            residual_collinearity=0.0,
            residual_delta_planes=0.0,
            residual_theorem24=0.0,
            locally_symmetric=True,
            directed=True,
            pointwise_constant=True,
        )
        row = report_row(report)
        self.assertEqual(len(row), len(report_columns(2)))
        self.assertEqual(row[:3], (0.1, 0.2, 2.0))
        self.assertIsNone(row[4])
        self.assertEqual(row[-3:], (True, True, True))

    def test_meridian_rows(self) -> None:
        """One row per sample in column order"""
        solution = meridian_ode(1.0, 0.5, 0.0, (0.0, 0.1), samples=6)
        rows = meridian_rows(solution.samples)
        self.assertEqual(len(rows), 6)
        self.assertEqual(len(rows[0]), len(MERIDIAN_COLUMNS))


class MeshTest(TestCase):
    """Surfaces of revolution."""

    def test_counts(self) -> None:
        """axial * angular vertices and two triangles per quad"""
        vertices, faces = revolve_profile(cosh_profile(), angular=16, axial=8)
        self.assertEqual(vertices.shape, (128, 3))
        self.assertEqual(len(faces), 2 * 7 * 16)
        self.assertEqual(min(min(face) for face in faces), 1)
        self.assertEqual(max(max(face) for face in faces), 128)

    def test_rings(self) -> None:
        """Each ring has radius r(t)"""
        profile = cosh_profile()
        vertices, _ = revolve_profile(profile, angular=8, axial=4, span=(-0.5, 0.5))
        radii = np.hypot(vertices[:, 0], vertices[:, 1])
        expected = np.cosh(vertices[:, 2])
        np.testing.assert_allclose(radii, expected, rtol=1e-12)
        self.assertAlmostEqual(vertices[0, 2], -0.5)
