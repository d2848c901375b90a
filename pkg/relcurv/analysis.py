"""Per-point classification over a grid."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

from .charts import MetricSpec
from .directed import DirectedReport, Tolerances, directedness_report, eta_continuity

_LOGGER = logging.getLogger(__name__)


def in_domain(spec: MetricSpec, points: list) -> list:
    """(grid index, point) pairs of the points inside the chart."""
    kept = [
        (index, p) for index, p in enumerate(points)
        if p.dim == spec.dim and spec.chart.contains(p.coords)
    ]
    skipped = len(points) - len(kept)
    if skipped:
        _LOGGER.info("Skipped %s grid points outside the %s chart", skipped, spec.family)
    return kept


def analyze_grid(
    spec: MetricSpec,
    points: list,
    seed: int,
    planes_per_point: int,
    tolerances: Tolerances,
    workers: int = 1,
    row_length: int | None = None,
) -> list:
    """Directedness reports in grid order.

    Point i samples its planes with seed + i, so the reports do not depend
    on the number of workers. eta drift is compared along rows of
    row_length points, the fastest grid axis.
    """
    tasks = in_domain(spec, points)

    def classify(task) -> DirectedReport:
        index, p = task
        return directedness_report(p, spec, planes_per_point, seed + index, tolerances)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(classify, tasks))
    else:
        reports = [classify(task) for task in tasks]

    drift, continuous = eta_continuity(
        [report.eta for report in reports],
        indices=[index for index, _ in tasks],
        row_length=row_length,
    )
    if not continuous:
        _LOGGER.warning("eta drifts by %.3e between consecutive grid points", drift)
    _LOGGER.info("Classified %s points", len(reports))
    return reports
