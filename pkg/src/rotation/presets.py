"""
Tabla de figuras reproducibles y comprobaciones de aceptación.

Los parámetros de cada figura se declaran una sola vez, aquí.
Las figuras marcadas ``full_only`` (horas de cálculo) se ejecutan a escala
reducida salvo con ``--full``; a tamaño completo no hay contrato de
aprobado/suspenso.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import UnknownFigure
from .geometry import ConvexPolygon, convex_hull, hausdorff
from .observable import cluster_fractions

SQUARE_VERTICES = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0))
CENTRE = (0.5, 0.5)


@dataclass(frozen=True)
class FigurePreset:
    figure: int
    map: str
    method: str
    params: dict
    caption: str
    desk_params: dict = field(default_factory=dict)
    check: str = ''
    full_only: bool = False

    def parameters(self, full=False, scale=1.0):
        """Parámetros efectivos: completos con --full, de escritorio si no."""
        params = dict(self.params if full or not self.desk_params else self.desk_params)
        if scale != 1.0:
            for key in ('count', 'side', 'n', 'n_min', 'n_max'):
                if key in params:
                    params[key] = max(1, int(round(params[key] * scale)))
        return params


FIGURES = {
    1: FigurePreset(1, 'f1', 'observable', {'mode': 'random', 'count': 1000, 'length': 1000},
                    "f1 observable: 1000 puntos aleatorios, T=1000",
                    check='centre'),
    2: FigurePreset(2, 'f1', 'observable', {'mode': 'grid', 'side': 500, 'length': 1000},
                    "f1 observable: cuadrícula de 500×500 puntos, T=1000",
                    desk_params={'mode': 'grid', 'side': 50, 'length': 1000}, full_only=True),
    3: FigurePreset(3, 'f1', 'observable', {'mode': 'grid', 'side': 750, 'length': 1000},
                    "f1 observable: cuadrícula de 750×750 puntos, T=1000",
                    desk_params={'mode': 'grid', 'side': 75, 'length': 1000}, full_only=True),
    4: FigurePreset(4, 'f1', 'observable', {'mode': 'grid', 'side': 1000, 'length': 1000},
                    "f1 observable: cuadrícula de 1000×1000 puntos, T=1000",
                    desk_params={'mode': 'grid', 'side': 100, 'length': 1000}, full_only=True),
    5: FigurePreset(5, 'f1', 'discretized', {'n': 100},
                    "f1 discretizado en 100×100", check='square'),
    6: FigurePreset(6, 'f1', 'discretized', {'n': 1000},
                    "f1 discretizado en 1000×1000", check='square'),
    7: FigurePreset(7, 'f1', 'asymptotic', {'n_min': 100, 'n_max': 1000, 'step': 1},
                    "f1 asintótico: unión de las cuadrículas 100..1000",
                    desk_params={'n_min': 100, 'n_max': 200, 'step': 10}, check='square_vertices',
                    full_only=True),
    8: FigurePreset(8, 'f2', 'observable', {'mode': 'random', 'count': 1000, 'length': 1000},
                    "f2 observable: 1000 puntos aleatorios, T=1000",
                    check='five_clusters'),
    9: FigurePreset(9, 'f2', 'discretized', {'n': 1000},
                    "f2 discretizado en 1000×1000", check='square_vertices'),
}


def figure_preset(figure):
    try:
        return FIGURES[int(figure)]
    except (KeyError, TypeError, ValueError):
        raise UnknownFigure(f"Figura desconocida '{figure}'. Disponibles: 1..{max(FIGURES)}.") from None


# --- COMPROBACIONES ---

def check_centre(vectors, radius=0.15, share=0.95):
    """Al menos ``share`` de los vectores a distancia <= radius de (½, ½)."""
    _, near = cluster_fractions(vectors, [CENTRE], radius)
    return near >= share, {'radius': radius, 'required': share, 'observed': near}


def check_five_clusters(vectors, radius=0.15, share=0.90, vertex_share=0.01, vertices_needed=3):
    """
    Al menos ``share`` de los vectores cerca de un vértice de [0,1]² o del
    centro, y al menos ``vertices_needed`` vértices con ``vertex_share`` cada uno.
    """
    centres = SQUARE_VERTICES + (CENTRE,)
    per_centre, near = cluster_fractions(vectors, centres, radius)
    vertices_hit = int(np.sum(per_centre[:4] >= vertex_share))
    passed = near >= share and vertices_hit >= vertices_needed
    return passed, {
        'radius': radius,
        'required': share,
        'observed': near,
        'per_centre': [float(value) for value in per_centre],
        'vertices_hit': vertices_hit,
    }


def check_square(points, tolerance=0.05):
    """Hausdorff entre la envolvente de los puntos y [0,1]² <= tolerance."""
    hull = convex_hull(points)
    distance = hausdorff(hull, ConvexPolygon.unit_square())
    return distance <= tolerance, {'tolerance': tolerance, 'hausdorff': distance}


def check_square_vertices(points, tolerance=0.05, vertex_tolerance=0.02):
    passed, detail = check_square(points, tolerance)
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    gaps = [float(np.linalg.norm(points - np.asarray(v), axis=1).min()) for v in SQUARE_VERTICES]
    detail.update({'vertex_tolerance': vertex_tolerance, 'vertex_gaps': gaps})
    return passed and max(gaps) <= vertex_tolerance, detail


CHECKS = {
    'centre': check_centre,
    'five_clusters': check_five_clusters,
    'square': check_square,
    'square_vertices': check_square_vertices,
}
