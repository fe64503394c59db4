"""
Las cinco tuberías de la línea de órdenes. Cada una calcula, arma el
RotationSetReport y escribe sus ficheros en ``config.run_dir``.
"""

import logging
import time

import numpy as np

from .discretization import asymptotic_union, discretized_rotation_set
from .geometry import ConvexPolygon, convex_hull, hausdorff, within_neighborhood
from .observable import mean_rotation_vector, sample_observable, sample_vectors
from .reports import (
    RotationSetReport,
    cycles_dataset,
    plot_scatter,
    rational_vectors_json,
    real_vectors_json,
    samples_dataset,
    union_dataset,
    write_dataset,
    write_report,
)

logger = logging.getLogger(__name__)


def reference_region(name):
    if name == 'unit-square':
        return ConvexPolygon.unit_square()
    if name == 'segment-x':
        return ConvexPolygon.segment((-1.0, 0.0), (1.0, 0.0))
    return None


def _compare(report, points, config, tolerance=None):
    """Envolvente, distancia a la referencia y, si hay tolerancia, la comprobación."""
    hull = convex_hull(points)
    report.hull = hull.to_json()
    region = reference_region(config.reference)
    report.reference = config.reference
    if region is not None:
        report.hausdorff = hausdorff(hull, region)
        if tolerance is not None:
            report.add_check('hausdorff', report.hausdorff <= tolerance,
                             tolerance=tolerance, hausdorff=report.hausdorff)
            inclusion = within_neighborhood(points, region, tolerance)
            report.add_check('neighborhood', inclusion.ok, **inclusion.to_json())
    return hull


def _finish(report, config, points, hull, title, started, check=None, extra=None):
    report.extra.update(extra or {})
    if check is not None:
        name, func = check
        passed, detail = func(points)
        report.add_check(name, passed, **detail)
    report.timings['wall_seconds'] = time.perf_counter() - started
    if config.plot:
        plot_scatter(points, config.run_dir / 'scatter.svg', hull=hull.vertices, title=title)
    write_report(report, config.run_dir / 'report.json')
    logger.info("%s: informe escrito en %s (%.2fs)", config.command, config.run_dir,
                report.timings['wall_seconds'])
    return report


def observable_run(lift, plan, config, tolerance=None, check=None, extra=None):
    started = time.perf_counter()
    samples = sample_observable(lift, plan, config.workers)
    points = sample_vectors(samples)
    report = RotationSetReport(config.command, config.describe(), 'real', real_vectors_json(points))
    report.extra['plan'] = plan.describe()
    hull = _compare(report, points, config, tolerance)
    write_dataset(samples_dataset(samples), config.run_dir / 'samples.csv')
    title = f"{config.map.label()} · {plan.size} órbitas · T={plan.length}"
    return _finish(report, config, points, hull, title, started, check, extra)


def discretized_run(lift, n, config, tolerance=None, check=None, extra=None):
    started = time.perf_counter()
    result = discretized_rotation_set(lift, n, config.workers)
    points = result.points()
    report = RotationSetReport(config.command, config.describe(), 'rational',
                               rational_vectors_json(entry.vector for entry in result.vectors))
    report.extra['summary'] = result.summary()
    report.extra['basin_mass'] = [entry.basin_mass for entry in result.vectors]
    report.timings['grid_seconds'] = result.elapsed
    hull = _compare(report, points, config, tolerance)
    write_dataset(cycles_dataset(result), config.run_dir / 'cycles.csv')
    title = f"{config.map.label()} · cuadrícula {n}×{n} · {len(result.cycles)} ciclos"
    return _finish(report, config, points, hull, title, started, check, extra)


def asymptotic_run(lift, n_min, n_max, step, config, tolerance=None, check=None, extra=None):
    started = time.perf_counter()
    union = asymptotic_union(lift, n_min, n_max, step, config.workers)
    points = union.points()
    report = RotationSetReport(config.command, config.describe(), 'rational',
                               rational_vectors_json(entry.vector for entry in union.vectors))
    report.extra['per_grid'] = [result.summary() for result in union.per_grid]
    report.timings['grid_seconds'] = {str(result.n): result.elapsed for result in union.per_grid}
    hull = _compare(report, points, config, tolerance)
    for result in union.per_grid:
        write_dataset(cycles_dataset(result), config.run_dir / f'cycles-n{result.n}.csv')
    write_dataset(union_dataset(union), config.run_dir / 'vectors.csv')
    title = f"{config.map.label()} · unión {n_min}..{n_max} paso {step}"
    return _finish(report, config, points, hull, title, started, check, extra)


def mean_run(lift, quadrature_side, config):
    started = time.perf_counter()
    vector = mean_rotation_vector(lift, quadrature_side)
    report = RotationSetReport(config.command, config.describe(), 'real', real_vectors_json([vector]))
    report.extra['quadrature_side'] = quadrature_side
    report.timings['wall_seconds'] = time.perf_counter() - started
    write_report(report, config.run_dir / 'report.json')
    logger.info("mean: vector medio (%.12f, %.12f) con m=%d", vector[0], vector[1], quadrature_side)
    return report


def hull_run(points, source, config, tolerance=None, check=None):
    started = time.perf_counter()
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    report = RotationSetReport(config.command, config.describe(), source, real_vectors_json(points))
    hull = _compare(report, points, config, tolerance)
    report.extra['degenerate'] = hull.degenerate
    report.extra['area'] = hull.area()
    return _finish(report, config, points, hull, f"envolvente de {len(points)} vectores", started, check)
