"""
Reparto de trabajo vectorizado entre hilos.

numpy libera el GIL en las ufuncs, así que basta con trocear los índices y
evaluar cada trozo en un hilo. Los resultados se devuelven siempre en el
orden de los trozos: el número de hilos no cambia ningún valor.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

logger = logging.getLogger(__name__)

# Por debajo de este tamaño no compensa abrir hilos.
MIN_CHUNK = 4096


def chunk_bounds(size, workers, min_chunk=MIN_CHUNK):
    """Cortes [start, stop) contiguos que cubren range(size)."""
    workers = max(1, int(workers or 1))
    pieces = max(1, min(workers, -(-size // min_chunk)))
    edges = np.linspace(0, size, pieces + 1).astype(np.int64)
    return [(int(start), int(stop)) for start, stop in zip(edges[:-1], edges[1:]) if stop > start]


def map_chunks(func, size, workers=1, min_chunk=MIN_CHUNK):
    """Aplica ``func(start, stop)`` a cada trozo y devuelve la lista ordenada de resultados."""
    bounds = chunk_bounds(size, workers, min_chunk)
    if len(bounds) <= 1:
        return [func(start, stop) for start, stop in bounds]
    logger.debug("Repartiendo %d elementos en %d trozos", size, len(bounds))
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        futures = [pool.submit(func, start, stop) for start, stop in bounds]
        return [future.result() for future in futures]
