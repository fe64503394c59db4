"""
Discretización f_n = P_n ∘ f sobre la cuadrícula n×n del toro.

El nodo (i, j) representa el punto (i/n, j/n) y su índice plano es i·n + j.
Cada nodo guarda su sucesor y el desplazamiento entero del paso (en unidades
de 1/n, sin reducir módulo n), de modo que los vectores de rotación de los
ciclos se acumulan en aritmética entera y se guardan como racionales exactos.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import InvalidParameter, NonFiniteImage
from .workers import map_chunks

logger = logging.getLogger(__name__)


def round_half_up(values):
    """floor(t + ½): los empates se redondean hacia +∞."""
    return np.floor(np.asarray(values, dtype=float) + 0.5).astype(np.int64)


@dataclass(frozen=True)
class Grid:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameter(f"El lado de la cuadrícula debe ser un entero >= 1 (recibido {self.n}).")

    @property
    def node_count(self):
        return self.n * self.n

    def flat(self, i, j):
        return (i % self.n) * self.n + (j % self.n)

    def node_of(self, flat_index):
        return divmod(int(flat_index), self.n)

    def point_of(self, flat_index):
        i, j = self.node_of(flat_index)
        return (i / self.n, j / self.n)


def project(point, grid):
    """P_n: nodo más cercano al punto (empates hacia +∞, con vuelta módulo n)."""
    i, j = round_half_up(np.asarray(point, dtype=float) * grid.n) % grid.n
    return (int(i), int(j))


@dataclass(frozen=True, eq=False)
class DiscretizedMap:
    grid: Grid
    successor: np.ndarray
    step_disp: np.ndarray

    def check(self):
        """Comprueba que el sucesor coincide con el desplazamiento de cada nodo."""
        n = self.grid.n
        index = np.arange(self.grid.node_count, dtype=np.int64)
        i, j = np.divmod(index, n)
        expected = ((i + self.step_disp[:, 0]) % n) * n + (j + self.step_disp[:, 1]) % n
        return bool(np.array_equal(expected, self.successor))


def build_discretized_map(lift, grid, workers=1):
    n = grid.n

    def build_chunk(start, stop):
        index = np.arange(start, stop, dtype=np.int64)
        i, j = np.divmod(index, n)
        image_x, image_y = lift.apply(i / n, j / n)
        image_x = np.broadcast_to(np.asarray(image_x, dtype=float), i.shape)
        image_y = np.broadcast_to(np.asarray(image_y, dtype=float), i.shape)
        if not (np.all(np.isfinite(image_x)) and np.all(np.isfinite(image_y))):
            bad = int(index[~(np.isfinite(image_x) & np.isfinite(image_y))][0])
            raise NonFiniteImage(f"Imagen no finita en el nodo {grid.node_of(bad)} de la cuadrícula {n}×{n}.")
        step = np.stack([round_half_up(image_x * n) - i, round_half_up(image_y * n) - j], axis=1)
        succ = ((i + step[:, 0]) % n) * n + (j + step[:, 1]) % n
        return succ, step

    parts = map_chunks(build_chunk, grid.node_count, workers)
    successor = np.concatenate([part[0] for part in parts])
    step_disp = np.concatenate([part[1] for part in parts])
    successor.setflags(write=False)
    step_disp.setflags(write=False)
    return DiscretizedMap(grid, successor, step_disp)


# --- CICLOS ---

@dataclass(frozen=True)
class CycleRecord:
    period: int
    nodes: tuple
    total_disp: tuple
    rotation_vector: tuple
    basin_size: int

    def node_pairs(self, grid):
        return [grid.node_of(node) for node in self.nodes]


def _cycle_record(nodes, disp_x, disp_y, n, basin_size):
    # Empezamos el ciclo en su nodo de menor índice.
    first = nodes.index(min(nodes))
    nodes = nodes[first:] + nodes[:first]
    total_x = sum(disp_x[node] for node in nodes)
    total_y = sum(disp_y[node] for node in nodes)
    period = len(nodes)
    if total_x % n or total_y % n:
        raise ArithmeticError(f"El ciclo {nodes[:4]}... no cierra sobre el toro.")
    return CycleRecord(
        period=period,
        nodes=tuple(nodes),
        total_disp=(total_x, total_y),
        rotation_vector=(Fraction(total_x, period * n), Fraction(total_y, period * n)),
        basin_size=basin_size,
    )


def find_cycles(dmap):
    """
    Todos los ciclos del grafo funcional, cada uno una vez, con su cuenca.

    Un único recorrido con marcas: cada nodo se visita una vez al seguir el
    camino desde el primer nodo sin etiqueta, y al terminar el camino todos
    sus nodos reciben la etiqueta del ciclo en el que desembocan.
    """
    succ = dmap.successor.tolist()
    disp_x = dmap.step_disp[:, 0].tolist()
    disp_y = dmap.step_disp[:, 1].tolist()
    size = len(succ)
    label = [-1] * size
    stamp = [-1] * size
    cycles = []
    basins = []
    for start in range(size):
        if label[start] >= 0:
            continue
        path = []
        node = start
        while label[node] < 0 and stamp[node] != start:
            stamp[node] = start
            path.append(node)
            node = succ[node]
        if label[node] >= 0:
            cycle = label[node]
        else:
            cycle = len(cycles)
            cycles.append(path[path.index(node):])
            basins.append(0)
        for visited in path:
            label[visited] = cycle
        basins[cycle] += len(path)

    n = dmap.grid.n
    return [
        _cycle_record(nodes, disp_x, disp_y, n, basin)
        for nodes, basin in zip(cycles, basins)
    ]


# --- CONJUNTOS DE ROTACIÓN DISCRETIZADOS ---

@dataclass(frozen=True)
class VectorEntry:
    vector: tuple
    multiplicity: int
    basin_mass: int


def _group_vectors(cycles):
    multiplicity = Counter()
    mass = Counter()
    for cycle in cycles:
        multiplicity[cycle.rotation_vector] += 1
        mass[cycle.rotation_vector] += cycle.basin_size
    return tuple(
        VectorEntry(vector, multiplicity[vector], mass[vector])
        for vector in sorted(multiplicity)
    )


@dataclass(frozen=True)
class DiscretizedRotationSet:
    n: int
    cycles: tuple
    vectors: tuple
    elapsed: float = 0.0

    @classmethod
    def from_cycles(cls, n, cycles, elapsed=0.0):
        cycles = tuple(cycles)
        return cls(n, cycles, _group_vectors(cycles), elapsed)

    def vector_set(self):
        return {entry.vector for entry in self.vectors}

    def points(self):
        """Vectores como array (k, 2) de dobles, para la geometría."""
        return np.array([[float(vx), float(vy)] for vx, vy in (e.vector for e in self.vectors)], dtype=float)

    def multiplicity_of(self, vector):
        return next((entry.multiplicity for entry in self.vectors if entry.vector == vector), 0)

    def summary(self):
        periods = Counter(cycle.period for cycle in self.cycles)
        return {
            'n': self.n,
            'cycles': len(self.cycles),
            'vectors': len(self.vectors),
            'max_period': max(periods) if periods else 0,
            'period_histogram': {str(period): count for period, count in sorted(periods.items())},
            'basin_total': sum(cycle.basin_size for cycle in self.cycles),
        }


def discretized_rotation_set(lift, n, workers=1):
    grid = Grid(n)
    started = time.perf_counter()
    dmap = build_discretized_map(lift, grid, workers)
    cycles = find_cycles(dmap)
    elapsed = time.perf_counter() - started
    result = DiscretizedRotationSet.from_cycles(n, cycles, elapsed)
    logger.debug("n=%d: %d ciclos, %d vectores distintos (%.2fs)", n, len(cycles), len(result.vectors), elapsed)
    return result


@dataclass(frozen=True)
class UnionEntry:
    vector: tuple
    grids: int
    multiplicity: int


@dataclass(frozen=True)
class AsymptoticUnion:
    per_grid: tuple
    vectors: tuple

    @property
    def sides(self):
        return [result.n for result in self.per_grid]

    def vector_set(self):
        return {entry.vector for entry in self.vectors}

    def points(self):
        return np.array([[float(vx), float(vy)] for vx, vy in (e.vector for e in self.vectors)], dtype=float)


def asymptotic_union(lift, n_min, n_max, step=1, workers=1):
    """Unión de ρ(F_n) para n = n_min, n_min+step, ..., ≤ n_max."""
    if int(n_min) != n_min or n_min < 1 or n_max < n_min:
        raise InvalidParameter(f"Rango de cuadrículas no válido: {n_min}..{n_max}.")
    if int(step) != step or step < 1:
        raise InvalidParameter(f"El paso debe ser un entero >= 1 (recibido {step}).")
    per_grid = []
    grids = Counter()
    multiplicity = Counter()
    for n in range(int(n_min), int(n_max) + 1, int(step)):
        result = discretized_rotation_set(lift, n, workers)
        per_grid.append(result)
        for entry in result.vectors:
            grids[entry.vector] += 1
            multiplicity[entry.vector] += entry.multiplicity
    logger.info("Unión de %d cuadrículas: %d vectores distintos", len(per_grid), len(grids))
    vectors = tuple(UnionEntry(vector, grids[vector], multiplicity[vector]) for vector in sorted(grids))
    return AsymptoticUnion(tuple(per_grid), vectors)
