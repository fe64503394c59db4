"""
Conjunto de rotación observable por promedios sobre segmentos de órbita, y
vector de rotación medio por cuadratura.

Los segmentos se iteran en doble precisión sin reducir módulo 1, y el vector
de un segmento es (F^T(x̃) - x̃)/T. Los puntos iniciales aleatorios salen de
un generador Philox indexado por (semilla, índice de muestra), así que cada
muestra es la misma con cualquier número de hilos.
"""

import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from .exceptions import InvalidParameter, NonFiniteOrbit
from .torus_maps import displacement, power
from .workers import map_chunks

logger = logging.getLogger(__name__)

# Las órbitas son caras: trozos más pequeños que en la discretización.
ORBIT_CHUNK = 256


@dataclass(frozen=True)
class RotationSample:
    start: tuple
    length: int
    vector: tuple


@dataclass(frozen=True)
class SamplingPlan:
    mode: str = 'random'
    count: int = 1000
    side: int = 0
    length: int = 1000
    seed: int = 1

    def __post_init__(self):
        if self.mode not in ('random', 'grid'):
            raise InvalidParameter(f"Modo de muestreo desconocido '{self.mode}'.")
        if self.length < 1:
            raise InvalidParameter("La longitud de los segmentos debe ser >= 1.")
        if self.mode == 'random' and self.count < 1:
            raise InvalidParameter("El número de muestras debe ser >= 1.")
        if self.mode == 'grid' and self.side < 1:
            raise InvalidParameter("El lado de la cuadrícula de puntos iniciales debe ser >= 1.")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParameter("La semilla debe ser un entero de 64 bits sin signo.")

    @classmethod
    def random(cls, count, length=None, seed=None):
        length = settings.ROTATION_DEFAULT_LENGTH if length is None else length
        seed = settings.ROTATION_DEFAULT_SEED if seed is None else seed
        return cls('random', count=count, length=length, seed=seed)

    @classmethod
    def grid(cls, side, length=None):
        length = settings.ROTATION_DEFAULT_LENGTH if length is None else length
        return cls('grid', count=side * side, side=side, length=length)

    @property
    def size(self):
        return self.side * self.side if self.mode == 'grid' else self.count

    def starts(self, start=0, stop=None):
        """Puntos iniciales de los índices [start, stop) en orden canónico."""
        stop = self.size if stop is None else stop
        if self.mode == 'grid':
            i, j = np.divmod(np.arange(start, stop, dtype=np.int64), self.side)
            return np.stack([i / self.side, j / self.side], axis=1)
        points = np.empty((stop - start, 2), dtype=float)
        for row, index in enumerate(range(start, stop)):
            generator = np.random.Generator(np.random.Philox(key=self.seed, counter=index))
            points[row] = generator.random(2)
        return points

    def describe(self):
        return {'mode': self.mode, 'count': self.size, 'side': self.side,
                'length': self.length, 'seed': self.seed}


def segment_vectors(lift, starts, length):
    """(F^T(x̃) - x̃)/T para cada fila de ``starts``."""
    starts = np.asarray(starts, dtype=float).reshape(-1, 2)
    if length < 1:
        raise InvalidParameter("La longitud de los segmentos debe ser >= 1.")
    shift = lift.constant_displacement
    if shift is not None:
        # Desplazamiento constante: el vector de rotación es exactamente ese.
        return np.tile(np.asarray(shift, dtype=float), (len(starts), 1))
    x = starts[:, 0].copy()
    y = starts[:, 1].copy()
    for _ in range(length):
        x, y = lift.apply(x, y)
    x = np.broadcast_to(np.asarray(x, dtype=float), starts[:, 0].shape)
    y = np.broadcast_to(np.asarray(y, dtype=float), starts[:, 1].shape)
    finite = np.isfinite(x) & np.isfinite(y)
    if not np.all(finite):
        bad = starts[~finite][0]
        raise NonFiniteOrbit(f"Órbita no finita desde ({bad[0]}, {bad[1]}) con T={length}.")
    return np.stack([(x - starts[:, 0]) / length, (y - starts[:, 1]) / length], axis=1)


def orbit_rotation_vector(lift, start, length):
    start = (float(start[0]), float(start[1]))
    vector = segment_vectors(lift, [start], length)[0]
    return RotationSample(start, int(length), (float(vector[0]), float(vector[1])))


def sample_observable(lift, plan, workers=1):
    def sample_chunk(start, stop):
        starts = plan.starts(start, stop)
        return starts, segment_vectors(lift, starts, plan.length)

    parts = map_chunks(sample_chunk, plan.size, workers, min_chunk=ORBIT_CHUNK)
    samples = []
    for starts, vectors in parts:
        samples.extend(
            RotationSample((float(s[0]), float(s[1])), plan.length, (float(v[0]), float(v[1])))
            for s, v in zip(starts, vectors)
        )
    logger.debug("Muestreadas %d órbitas de longitud %d", len(samples), plan.length)
    return samples


def sample_vectors(samples):
    return np.array([sample.vector for sample in samples], dtype=float).reshape(-1, 2)


def cell_centres(side):
    centres = (np.arange(side, dtype=float) + 0.5) / side
    x, y = np.meshgrid(centres, centres, indexing='ij')
    return np.stack([x.ravel(), y.ravel()], axis=1)


def mean_rotation_vector(lift, quadrature_side=None):
    """∫ D(F) dLeb por la regla del punto medio sobre m×m celdas."""
    side = settings.ROTATION_DEFAULT_QUADRATURE if quadrature_side is None else quadrature_side
    if side < 1:
        raise InvalidParameter("El lado de la cuadratura debe ser >= 1.")
    shift = lift.constant_displacement
    if shift is not None:
        return np.asarray(shift, dtype=float)
    return displacement(lift, cell_centres(side)).mean(axis=0)


def displacement_bound(lift, side=256):
    """Cota muestreada de sup |D(F)| sobre una cuadrícula side×side."""
    return float(np.linalg.norm(displacement(lift, cell_centres(side)), axis=1).max())


def power_scaling_check(lift, q, start, length):
    """
    (vector de F^q en T pasos, q · vector de F en qT pasos). Ambos recorren la
    misma órbita, así que coinciden salvo redondeo.
    """
    if q < 1:
        raise InvalidParameter("q debe ser >= 1.")
    powered = orbit_rotation_vector(power(lift, q), start, length).vector
    plain = orbit_rotation_vector(lift, start, q * length).vector
    return np.asarray(powered), q * np.asarray(plain)


def cluster_fractions(vectors, centres, radius):
    """Fracción de vectores a distancia <= radius de cada centro (y de alguno)."""
    vectors = np.asarray(vectors, dtype=float).reshape(-1, 2)
    centres = np.asarray(centres, dtype=float).reshape(-1, 2)
    if len(vectors) == 0:
        return np.zeros(len(centres)), 0.0
    distances = np.linalg.norm(vectors[:, None, :] - centres[None, :, :], axis=2)
    near = distances <= radius
    return near.mean(axis=0), float(near.any(axis=1).mean())
