"""
Geometría plana para comparar conjuntos de rotación: envolvente convexa
(cadena monótona), distancia de Hausdorff y comprobación de entornos.

Un ConvexPolygon se trata siempre como región rellena (interior más borde);
con dos vértices es un segmento y con uno un punto.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from .exceptions import EmptyInput, InvalidParameter

logger = logging.getLogger(__name__)

TOLERANCE = 1e-12


def as_points(points):
    """PointSet: array (k, 2) de dobles, no vacío."""
    if isinstance(points, ConvexPolygon):
        return points.vertices
    array = np.asarray(points, dtype=float)
    if array.size == 0:
        raise EmptyInput("Conjunto de puntos vacío.")
    return array.reshape(-1, 2)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    vertices: np.ndarray

    @property
    def degenerate(self):
        return len(self.vertices) < 3

    @classmethod
    def unit_square(cls):
        return cls(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))

    @classmethod
    def segment(cls, a, b):
        return convex_hull([a, b])

    def __eq__(self, other):
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and np.allclose(
            self.vertices, other.vertices, rtol=0.0, atol=TOLERANCE)

    __hash__ = None

    def edges(self):
        if len(self.vertices) == 1:
            return np.empty((0, 2, 2))
        if len(self.vertices) == 2:
            return self.vertices[None, :, :]
        return np.stack([self.vertices, np.roll(self.vertices, -1, axis=0)], axis=1)

    def area(self):
        if self.degenerate:
            return 0.0
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    def contains(self, points, tol=TOLERANCE):
        """Punto dentro o sobre el borde (test de área con signo >= -tol)."""
        points = as_points(points)
        if self.degenerate:
            return self.distance(points) <= tol
        start = self.vertices
        end = np.roll(self.vertices, -1, axis=0)
        cross = ((end[None, :, 0] - start[None, :, 0]) * (points[:, None, 1] - start[None, :, 1])
                 - (end[None, :, 1] - start[None, :, 1]) * (points[:, None, 0] - start[None, :, 0]))
        return np.all(cross >= -tol, axis=1)

    def boundary_distance(self, points):
        points = as_points(points)
        if len(self.vertices) == 1:
            return np.linalg.norm(points - self.vertices[0], axis=1)
        edges = self.edges()
        start, end = edges[:, 0, :], edges[:, 1, :]
        direction = end - start
        length2 = np.einsum('ij,ij->i', direction, direction)
        relative = points[:, None, :] - start[None, :, :]
        t = np.einsum('kij,ij->ki', relative, direction) / np.where(length2 > 0, length2, 1.0)
        t = np.clip(t, 0.0, 1.0)
        closest = start[None, :, :] + t[:, :, None] * direction[None, :, :]
        return np.linalg.norm(points[:, None, :] - closest, axis=2).min(axis=1)

    def distance(self, points):
        """Distancia a la región rellena: 0 en el interior."""
        points = as_points(points)
        distance = self.boundary_distance(points)
        if not self.degenerate:
            distance = np.where(self.contains(points), 0.0, distance)
        return np.where(distance <= TOLERANCE, 0.0, distance)

    def to_json(self):
        return [[float(x), float(y)] for x, y in self.vertices]


def convex_hull(points, tol=TOLERANCE):
    """
    Envolvente convexa en sentido antihorario empezando por el punto menor en
    orden lexicográfico. Se descartan los puntos colineales y se funden los
    duplicados a distancia <= tol.
    """
    points = as_points(points)
    ordered = points[np.lexsort((points[:, 1], points[:, 0]))]
    unique = [ordered[0]]
    for point in ordered[1:]:
        if np.hypot(*(point - unique[-1])) > tol:
            unique.append(point)
    if len(unique) == 1:
        return ConvexPolygon(np.array(unique))

    lower = []
    for point in unique:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], point) <= tol:
            lower.pop()
        lower.append(point)
    upper = []
    for point in reversed(unique):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], point) <= tol:
            upper.pop()
        upper.append(point)
    return ConvexPolygon(np.array(lower[:-1] + upper[:-1]))


# --- DISTANCIAS DE HAUSDORFF ---

def _directed_points(a, b):
    """max_{p∈a} min_{q∈b} |p - q| entre conjuntos finitos."""
    distances, _ = cKDTree(b).query(a)
    return float(distances.max())


def _farthest_in_region(polygon, points):
    """
    max_{x∈polígono} d(x, points). El máximo se alcanza en un vértice del
    polígono, en un vértice de Voronoi interior o en el corte de una
    mediatriz entre vecinos de Delaunay con una arista: basta con evaluar
    esos candidatos.
    """
    sites = np.unique(points, axis=0)
    candidates = [polygon.vertices]
    pairs = []
    if len(sites) >= 3:
        try:
            triangulation = Delaunay(sites)
        except QhullError:
            triangulation = None
        if triangulation is not None:
            for simplex in triangulation.simplices:
                a, b, c = sites[simplex]
                centre = _circumcentre(a, b, c)
                if centre is not None:
                    candidates.append(centre[None, :])
                pairs.extend([(simplex[0], simplex[1]), (simplex[1], simplex[2]), (simplex[0], simplex[2])])
    if not pairs and len(sites) >= 2:
        # Colineales: los vecinos de Voronoi son consecutivos sobre la recta.
        ordered = np.lexsort((sites[:, 1], sites[:, 0]))
        pairs = list(zip(ordered[:-1], ordered[1:]))
    for first, second in set(pairs):
        candidates.append(_bisector_cuts(polygon, sites[first], sites[second]))
    candidates = np.concatenate([c for c in candidates if len(c)])
    if not polygon.degenerate:
        candidates = candidates[polygon.contains(candidates, tol=1e-9)]
    else:
        candidates = candidates[polygon.distance(candidates) <= 1e-9]
    logger.debug("Hausdorff región-puntos: %d candidatos para %d sitios", len(candidates), len(sites))
    distances, _ = cKDTree(sites).query(candidates)
    return float(distances.max())


def _circumcentre(a, b, c):
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if abs(d) <= TOLERANCE:
        return None
    a2, b2, c2 = a @ a, b @ b, c @ c
    ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d
    uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d
    return np.array([ux, uy])


def _bisector_cuts(polygon, p, q):
    """Cortes de la mediatriz de p y q con las aristas del polígono."""
    normal = q - p
    offset = 0.5 * (q @ q - p @ p)
    cuts = []
    for start, end in polygon.edges():
        side_start = normal @ start - offset
        side_end = normal @ end - offset
        if side_start == side_end:
            continue
        t = side_start / (side_start - side_end)
        if 0.0 <= t <= 1.0:
            cuts.append(start + t * (end - start))
    return np.array(cuts).reshape(-1, 2)


def hausdorff(a, b):
    """
    Distancia de Hausdorff simétrica. Los polígonos cuentan como regiones
    rellenas; los conjuntos finitos, como sus puntos.
    """
    a_region = isinstance(a, ConvexPolygon)
    b_region = isinstance(b, ConvexPolygon)
    if not a_region:
        a = as_points(a)
    if not b_region:
        b = as_points(b)
    if a_region and b_region:
        # d(·, B) es convexa sobre A: basta con los vértices.
        return max(float(b.distance(a.vertices).max()), float(a.distance(b.vertices).max()))
    if a_region or b_region:
        region, points = (a, b) if a_region else (b, a)
        return max(float(region.distance(points).max()), _farthest_in_region(region, points))
    return max(_directed_points(a, b), _directed_points(b, a))


@dataclass(frozen=True)
class NeighborhoodCheck:
    ok: bool
    worst_distance: float
    worst_point: tuple

    def to_json(self):
        return {'ok': self.ok, 'worst_distance': self.worst_distance, 'worst_point': list(self.worst_point)}


def within_neighborhood(points, target, eps):
    """¿Están todos los puntos a distancia <= eps de la región ``target``?"""
    if eps < 0:
        raise InvalidParameter("eps debe ser >= 0.")
    points = as_points(points)
    distances = target.distance(points)
    worst = int(np.argmax(distances))
    return NeighborhoodCheck(
        ok=bool(distances[worst] <= eps),
        worst_distance=float(distances[worst]),
        worst_point=(float(points[worst, 0]), float(points[worst, 1])),
    )
