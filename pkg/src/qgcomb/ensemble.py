"""Phase-ensemble averages of |tr S^n|^2: Monte Carlo, exact grid quadrature, RMT curves."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .graph import ScatteringSystem, free_phase_map

CHUNK = 8192
MAX_GRID_PHASES = 3


@dataclass(frozen=True)
class MCResult:
    estimate: float
    stderr: float
    samples: int


def _traces(bare: np.ndarray, phi: np.ndarray, n: int) -> np.ndarray:
    s = np.exp(1j * phi)[:, :, None] * bare[None]
    return np.trace(np.linalg.matrix_power(s, n), axis1=1, axis2=2)


def _chunk_moments(bare, pmap, n, size, seed_seq) -> tuple[float, float]:
    rng = np.random.default_rng(seed_seq)
    free = rng.uniform(-np.pi, np.pi, size=(size, pmap.shape[1]))
    k = np.abs(_traces(bare, free @ pmap.T, n)) ** 2 / bare.shape[0]
    return float(k.sum()), float((k * k).sum())


def mc_form_factor(
    system: ScatteringSystem, beta: int, n: int, samples: int, seed: int, workers: int = 1
) -> MCResult:
    """Monte Carlo estimate of K = <|tr S^n|^2>/2B over uniform phases.

    Samples are split into fixed-size chunks, each with its own stream
    spawned from ``seed``, so the result does not depend on ``workers``.
    """
    if beta not in (1, 2):
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if n < 1:
        raise ValueError("n must be >= 1")
    bare = system.bare_matrix()
    pmap = free_phase_map(system, beta)
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda j: _chunk_moments(bare, pmap, n, *j), jobs))
    else:
        parts = [_chunk_moments(bare, pmap, n, *j) for j in jobs]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    return MCResult(mean, math.sqrt(var / samples), samples)


def quadrature_form_factor(
    system: ScatteringSystem,
    beta: int,
    n: int,
    points: int | None = None,
    max_phases: int = MAX_GRID_PHASES,
) -> float:
    """Exact phase average of |tr S^n|^2 / 2B on a uniform grid.

    |tr S^n|^2 is a trigonometric polynomial of degree <= n in each free
    phase, so ``n + 1`` equispaced nodes per phase integrate it exactly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pmap = free_phase_map(system, beta)
    p = pmap.shape[1]
    if p > max_phases:
        raise ValueError(f"{p} free phases; grid quadrature limited to {max_phases}")
    points = n + 1 if points is None else points
    if points < n + 1:
        raise ValueError(f"need at least n+1 = {n + 1} nodes per phase")
    nodes = 2 * np.pi * np.arange(points) / points
    grid = np.array(list(product(nodes, repeat=p)))
    bare = system.bare_matrix()
    total = 0.0
    for start in range(0, len(grid), CHUNK):
        phi = grid[start : start + CHUNK] @ pmap.T
        total += float((np.abs(_traces(bare, phi, n)) ** 2).sum())
    return total / len(grid) / bare.shape[0]


def rmt_reference(tau: float, beta: int) -> float:
    """Large-N form factor of the circular ensembles at tau = n / N (CUE beta=2, COE beta=1)."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if beta == 2:
        return min(tau, 1.0)
    if beta != 1:
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    if tau <= 1:
        return 2 * tau - tau * math.log1p(2 * tau)
    return 2 - tau * math.log((2 * tau + 1) / (2 * tau - 1))
