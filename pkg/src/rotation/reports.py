"""
Informes de ejecución y ficheros de salida: CSV (tablib), JSON versionado y
diagramas de dispersión SVG (matplotlib). Los gráficos son solo
presentación: nada de lo que se calcula depende de ellos.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import tablib
from django.core.serializers.json import DjangoJSONEncoder
from matplotlib.figure import Figure

from . import __version__
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# Marco fijo de las figuras.
PLOT_LIMITS = (-0.2, 1.2)

CYCLE_HEADERS = ('n', 'period', 'rot_num_x', 'rot_num_y', 'rot_den', 'multiplicity', 'basin_size')
UNION_HEADERS = ('rot_num_x', 'rot_num_y', 'rot_den', 'grids', 'multiplicity')
SAMPLE_HEADERS = ('start_x', 'start_y', 'T', 'vx', 'vy')


def common_denominator(vector):
    """(num_x, num_y, den) con den = mcm de los denominadores reducidos."""
    fx, fy = Fraction(vector[0]), Fraction(vector[1])
    den = math.lcm(fx.denominator, fy.denominator)
    return fx.numerator * (den // fx.denominator), fy.numerator * (den // fy.denominator), den


def fraction_text(value):
    return str(Fraction(value))


@dataclass
class RotationSetReport:
    command: str
    config: dict
    kind: str
    vectors: list
    hull: list = field(default_factory=list)
    reference: str = 'none'
    hausdorff: float = None
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    version: str = __version__

    @property
    def passed(self):
        return all(check.get('passed', False) for check in self.checks.values())

    def add_check(self, name, passed, **detail):
        self.checks[name] = {'passed': bool(passed), **detail}
        return self.checks[name]

    def to_json(self):
        return {
            'schema_version': SCHEMA_VERSION,
            'tool_version': self.version,
            'command': self.command,
            'config': self.config,
            'kind': self.kind,
            'vectors': self.vectors,
            'hull': self.hull,
            'reference': self.reference,
            'hausdorff': self.hausdorff,
            'checks': self.checks,
            'passed': self.passed,
            'timings': self.timings,
            **self.extra,
        }


# --- CONJUNTOS DE DATOS ---

def rational_vectors_json(vectors):
    return [[fraction_text(vx), fraction_text(vy)] for vx, vy in vectors]


def real_vectors_json(points):
    return [[float(x), float(y)] for x, y in np.asarray(points, dtype=float).reshape(-1, 2)]


def cycles_dataset(rotation_set):
    data = tablib.Dataset(headers=CYCLE_HEADERS)
    multiplicity = {entry.vector: entry.multiplicity for entry in rotation_set.vectors}
    for cycle in rotation_set.cycles:
        num_x, num_y, den = common_denominator(cycle.rotation_vector)
        data.append((rotation_set.n, cycle.period, num_x, num_y, den,
                     multiplicity[cycle.rotation_vector], cycle.basin_size))
    return data


def union_dataset(union):
    data = tablib.Dataset(headers=UNION_HEADERS)
    for entry in union.vectors:
        num_x, num_y, den = common_denominator(entry.vector)
        data.append((num_x, num_y, den, entry.grids, entry.multiplicity))
    return data


def samples_dataset(samples):
    data = tablib.Dataset(headers=SAMPLE_HEADERS)
    for sample in samples:
        data.append((repr(sample.start[0]), repr(sample.start[1]), sample.length,
                     repr(sample.vector[0]), repr(sample.vector[1])))
    return data


def write_dataset(dataset, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dataset.export('csv'), encoding='utf-8')
    logger.debug("Escrito %s (%d filas)", path, dataset.height)
    return path


def read_vectors(path):
    """
    Lee cualquier CSV escrito por los comandos y devuelve (puntos, tipo). Los
    racionales se devuelven como dobles.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigError(f"No se puede leer {path}: {exc}") from exc
    data = tablib.Dataset().load(text, format='csv')
    headers = set(data.headers or ())
    if {'vx', 'vy'} <= headers:
        points = [(float(row['vx']), float(row['vy'])) for row in data.dict]
        return np.array(points, dtype=float).reshape(-1, 2), 'real'
    if {'rot_num_x', 'rot_num_y', 'rot_den'} <= headers:
        points = [(int(row['rot_num_x']) / int(row['rot_den']), int(row['rot_num_y']) / int(row['rot_den']))
                  for row in data.dict]
        return np.array(points, dtype=float).reshape(-1, 2), 'rational'
    raise ConfigError(f"{path}: columnas no reconocidas {sorted(headers)}.")


def write_report(report, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_json(), cls=DjangoJSONEncoder, indent=2), encoding='utf-8')
    return path


# --- GRÁFICOS ---

def plot_scatter(points, path, hull=None, title='', limits=PLOT_LIMITS):
    """Nube de vectores de rotación sobre el marco fijo [-0.2, 1.2]²."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    figure = Figure(figsize=(6, 6))
    axes = figure.add_subplot()
    axes.scatter(points[:, 0], points[:, 1], s=4, c='black', linewidths=0)
    if hull is not None and len(hull) >= 2:
        outline = np.vstack([hull, hull[:1]])
        axes.plot(outline[:, 0], outline[:, 1], color='tab:red', linewidth=0.8)
    axes.set_xlim(*limits)
    axes.set_ylim(*limits)
    axes.set_aspect('equal')
    axes.grid(True, linewidth=0.3, alpha=0.5)
    if title:
        axes.set_title(title, fontsize=9)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    figure.savefig(path, format='svg', metadata={'Date': None})
    return path
