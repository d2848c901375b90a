"""CSV reports and OBJ meshes."""
from __future__ import annotations

import contextlib
import csv
import logging
import math
import sys

import numpy as np

from .const import (
    CSV_PRECISION,
    DEFAULT_MESH_RESOLUTION,
    FORMAT_CSV,
    FORMAT_OBJ,
    MERIDIAN_COLUMNS,
    REPORT_FLAG_COLUMNS,
    REPORT_VALUE_COLUMNS,
)
from .exceptions import ConfigSemantic, IoFailure
from .profile import ProfileCurve

_LOGGER = logging.getLogger(__name__)


def format_value(value, precision: int = CSV_PRECISION) -> str:
    """Numbers at the given significant digits, booleans as true/false, None as empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    return str(value)


@contextlib.contextmanager
def _open(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_csv(rows, columns, path: str | None = None, precision: int = CSV_PRECISION) -> None:
    """Write a header row and the rows, RFC 4180 quoted with CRLF line ends.

    Raises:
        IoFailure: path not writable
    """
    with _open(path) as handle:
        writer = csv.writer(handle, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(columns)
        count = 0
        for row in rows:
            writer.writerow([format_value(value, precision) for value in row])
            count += 1
    _LOGGER.info("Wrote %s rows to %s", count, path or "stdout")


def meridian_rows(samples) -> list:
    """Rows of MeridianSample values in MERIDIAN_COLUMNS order."""
    return [sample.as_row() for sample in samples]


def report_columns(dim: int) -> tuple:
    """Coordinate columns x0..x(n-1), then values, then flags."""
    return tuple(f"x{i}" for i in range(dim)) + REPORT_VALUE_COLUMNS + REPORT_FLAG_COLUMNS


def report_row(report) -> tuple:
    """Row of a DirectedReport in `report_columns` order."""
    return (
        *report.point.coords.tolist(),
        report.tau,
        report.dtau_norm,
        report.k_fit,
        report.residual_collinearity,
        report.residual_delta_planes,
        report.residual_theorem24,
        report.locally_symmetric,
        report.directed,
        report.pointwise_constant,
    )


def revolve_profile(
    profile: ProfileCurve,
    angular: int = DEFAULT_MESH_RESOLUTION,
    axial: int = DEFAULT_MESH_RESOLUTION,
    span: tuple | None = None,
):
    """Triangulated surface of revolution (r(t) cos phi, r(t) sin phi, t).

    Rings are closed in phi and left open at both ends of t.

    Returns:
        tuple: (vertices of shape (axial * angular, 3), faces as 1-based index triples)
    """
    if span is None:
        ts = profile.sample(axial, margin=0.01)
    else:
        ts = profile.sample(axial, margin=0.0, span=span)
    phis = 2.0 * math.pi * np.arange(angular) / angular
    radii = np.array([profile.derivatives(float(t)).r for t in ts])
    vertices = np.column_stack(
        [
            np.outer(radii, np.cos(phis)).ravel(),
            np.outer(radii, np.sin(phis)).ravel(),
            np.repeat(ts, angular),
        ]
    )
    faces = []
    for i in range(axial - 1):
        for j in range(angular):
            a = i * angular + j + 1
            b = i * angular + (j + 1) % angular + 1
            c = a + angular
            d = b + angular
            faces.append((a, b, d))
            faces.append((a, d, c))
    return vertices, faces


def write_obj(vertices, faces, path: str | None = None, precision: int = CSV_PRECISION) -> None:
    """Wavefront OBJ with v and f records.

    Raises:
        IoFailure: path not writable
    """
    with _open(path) as handle:
        for x, y, z in vertices:
            handle.write(
                f"v {format_value(x, precision)} {format_value(y, precision)} "
                f"{format_value(z, precision)}\n"
            )
        for a, b, c in faces:
            handle.write(f"f {a} {b} {c}\n")
    _LOGGER.info("Wrote mesh with %s vertices and %s faces", len(vertices), len(faces))


def write_outputs(
    rows, fmt: str, path: str | None = None, columns: tuple = (), precision: int = CSV_PRECISION
) -> None:
    """Write rows as CSV, or a (vertices, faces) pair as OBJ.

    Args:
        rows: CSV rows, or the (vertices, faces) pair of `revolve_profile`
        fmt (str): csv or obj
        path (str | None): output file, stdout when None or -
        columns (tuple): CSV header
        precision (int): significant digits

    Raises:
        IoFailure: path not writable
        ConfigSemantic: unknown format
    """
    if fmt == FORMAT_CSV:
        write_csv(rows, columns, path, precision)
    elif fmt == FORMAT_OBJ:
        vertices, faces = rows
        write_obj(vertices, faces, path, precision)
    else:
        raise ConfigSemantic(f"unknown output format '{fmt}'")


__all__ = [
    "MERIDIAN_COLUMNS",
    "format_value",
    "meridian_rows",
    "report_columns",
    "report_row",
    "revolve_profile",
    "write_csv",
    "write_obj",
    "write_outputs",
]
