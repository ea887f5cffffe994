"""Quantum graphs: bond-scattering matrices, classical walk and traces.

Directed bonds are numbered ``2b`` (i -> j) and ``2b + 1`` (j -> i) for the
b-th input bond ``[i, j]``.  Vertices are 0-based internally; the text file
format is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

UNITARY_TOL = 1e-12


class ScatteringSystem(Protocol):
    """Anything whose bond-scattering matrix is ``diag(exp(i phi)) @ bare_matrix()``."""

    n_directed: int
    reverse: Sequence[int]

    def bare_matrix(self) -> np.ndarray: ...


@dataclass(frozen=True)
class Bond:
    i: int
    j: int
    length: float = 1.0
    flux: float = 0.0  # A_(i,j); the reverse direction carries -flux


def neumann_sigma(v: int) -> np.ndarray:
    """Vertex-scattering matrix ``2/v - delta`` for continuity (Neumann) conditions."""
    if v < 1:
        raise ValueError("valency must be >= 1")
    return np.full((v, v), 2.0 / v) - np.eye(v)


def is_unitary(m: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() < tol


@dataclass
class QuantumGraph:
    n_vertices: int
    bonds: tuple[Bond, ...]
    vertex_matrices: dict[int, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.bonds = tuple(self.bonds)
        seen = set()
        for b in self.bonds:
            if not (0 <= b.i < self.n_vertices and 0 <= b.j < self.n_vertices):
                raise ValueError(f"bond {b} references a missing vertex")
            if b.i == b.j:
                raise ValueError(f"self-loop at vertex {b.i}; use RingGraph for the ring")
            key = frozenset((b.i, b.j))
            if key in seen:
                raise ValueError(f"more than one bond between {b.i} and {b.j}")
            if b.length <= 0:
                raise ValueError(f"bond {b} must have positive length")
            seen.add(key)
        if not self._connected():
            raise ValueError("graph is not connected")
        nbrs: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for b in self.bonds:
            nbrs[b.i].append(b.j)
            nbrs[b.j].append(b.i)
        self.neighbours = [tuple(sorted(x)) for x in nbrs]
        if self.vertex_matrices is not None:
            for v, m in self.vertex_matrices.items():
                m = np.asarray(m)
                if m.shape != (self.valency(v),) * 2:
                    raise ValueError(f"vertex {v}: matrix shape {m.shape} does not match valency")
                if not is_unitary(m):
                    raise ValueError(f"vertex {v}: scattering matrix is not unitary")

    def _connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        adj = {v: set() for v in range(self.n_vertices)}
        for b in self.bonds:
            adj[b.i].add(b.j)
            adj[b.j].add(b.i)
        stack, seen = [0], {0}
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n_vertices

    @property
    def n_bonds(self) -> int:
        return len(self.bonds)

    @property
    def n_directed(self) -> int:
        return 2 * len(self.bonds)

    @property
    def directed(self) -> list[tuple[int, int]]:
        out = []
        for b in self.bonds:
            out += [(b.i, b.j), (b.j, b.i)]
        return out

    @property
    def reverse(self) -> list[int]:
        return [d ^ 1 for d in range(self.n_directed)]

    def valency(self, v: int) -> int:
        return len(self.neighbours[v])

    def vertex_matrix(self, v: int) -> np.ndarray:
        if self.vertex_matrices is not None and v in self.vertex_matrices:
            return np.asarray(self.vertex_matrices[v])
        return neumann_sigma(self.valency(v))

    def bare_matrix(self) -> np.ndarray:
        """S with all bond phases set to zero: ``M[(i,j),(j,m)] = sigma^(j)[i, m]``."""
        dirs = self.directed
        out_of = {}
        for d, (a, _) in enumerate(dirs):
            out_of.setdefault(a, []).append(d)
        m = np.zeros((len(dirs), len(dirs)), complex)
        for d, (i, j) in enumerate(dirs):
            sig = self.vertex_matrix(j)
            row = self.neighbours[j].index(i)
            for dp in out_of[j]:
                col = self.neighbours[j].index(dirs[dp][1])
                m[d, dp] = sig[row, col]
        return m

    def in_bonds(self, v: int) -> list[int]:
        return [d for d, (_, j) in enumerate(self.directed) if j == v]

    def out_bonds(self, v: int) -> list[int]:
        return [d for d, (i, _) in enumerate(self.directed) if i == v]


@dataclass
class BondScattering:
    matrix: np.ndarray
    phases: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def s_matrix(system: ScatteringSystem, phases) -> np.ndarray:
    phases = np.asarray(phases, float)
    if phases.shape != (system.n_directed,):
        raise ValueError(f"expected {system.n_directed} directed-bond phases, got {phases.shape}")
    return np.exp(1j * phases)[:, None] * system.bare_matrix()


def assemble_s(g: QuantumGraph, phases, vertex_matrices: dict[int, np.ndarray] | None = None) -> BondScattering:
    """``S_{(i,j),(l,m)} = delta_{jl} exp(i phi_(i,j)) sigma^(j)_{i,m}``."""
    if vertex_matrices is not None:
        g = QuantumGraph(g.n_vertices, g.bonds, vertex_matrices)
    phases = np.asarray(phases, float)
    s = s_matrix(g, phases)
    if not is_unitary(s):
        raise ValueError("assembled S is not unitary")
    return BondScattering(s, phases)


def phase_from_geometry(g: QuantumGraph, k: float) -> np.ndarray:
    """phi_(i,j) = (k + A_(i,j)) L_[i,j]."""
    out = []
    for b in g.bonds:
        out += [(k + b.flux) * b.length, (k - b.flux) * b.length]
    return np.array(out)


def free_phase_map(system: ScatteringSystem, beta: int) -> np.ndarray:
    """0/1 matrix taking the beta*B independent phases to the 2B directed ones."""
    n = system.n_directed
    if beta == 2:
        return np.eye(n)
    if beta != 1:
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    rev = list(system.reverse)
    reps = [d for d in range(n) if d < rev[d]]
    m = np.zeros((n, len(reps)))
    for col, d in enumerate(reps):
        m[d, col] = m[rev[d], col] = 1
    return m


def classical_operator(s) -> np.ndarray:
    m = s.matrix if isinstance(s, BondScattering) else np.asarray(s)
    return np.abs(m) ** 2


def classical_trace(u: np.ndarray, n: int) -> float:
    return float(np.trace(np.linalg.matrix_power(u, n)))


def quantum_trace(s, n: int) -> complex:
    if n < 1:
        raise ValueError("n must be >= 1")
    m = s.matrix if isinstance(s, BondScattering) else np.asarray(s)
    return complex(np.trace(np.linalg.matrix_power(m, n)))


# -- generators and I/O -------------------------------------------------------


def complete_graph(v: int) -> QuantumGraph:
    bonds = [Bond(i, j) for i in range(v) for j in range(i + 1, v)]
    return QuantumGraph(v, bonds)


def path_graph(v: int) -> QuantumGraph:
    return QuantumGraph(v, [Bond(i, i + 1) for i in range(v - 1)])


def single_bond_graph(length: float = 1.0, flux: float = 0.0) -> QuantumGraph:
    return QuantumGraph(2, [Bond(0, 1, length, flux)])


def parse_graph(text: str) -> QuantumGraph:
    """Read ``V B`` followed by B lines ``i j L A`` (1-based vertices)."""
    lines = [ln.split("#")[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 2:
        raise ValueError("first line must be 'V B'")
    v, b = int(lines[0][0]), int(lines[0][1])
    if len(lines) - 1 != b:
        raise ValueError(f"header announces {b} bonds, found {len(lines) - 1}")
    bonds = []
    for ln in lines[1:]:
        if len(ln) != 4:
            raise ValueError(f"bond line needs 'i j L A', got {' '.join(ln)!r}")
        bonds.append(Bond(int(ln[0]) - 1, int(ln[1]) - 1, float(ln[2]), float(ln[3])))
    return QuantumGraph(v, bonds)


def format_graph(g: QuantumGraph) -> str:
    lines = [f"{g.n_vertices} {g.n_bonds}"]
    lines += [f"{b.i + 1} {b.j + 1} {b.length!r} {b.flux!r}" for b in g.bonds]
    return "\n".join(lines) + "\n"


def graph_from_spec(spec: str):
    """``complete:V``, ``path:V``, ``single``, ``ring`` / ``ring:eta``, or a file path."""
    from .ring import QUARTER_PI, RingGraph

    name, _, arg = spec.partition(":")
    if name == "ring":
        return RingGraph(float(arg) if arg else QUARTER_PI)
    if name == "complete":
        return complete_graph(int(arg))
    if name == "path":
        return path_graph(int(arg))
    if name == "single":
        return single_bond_graph()
    p = Path(spec)
    if p.is_file():
        return parse_graph(p.read_text())
    raise ValueError(f"unknown graph spec {spec!r}")


def random_graph(rng: np.random.Generator, max_vertices: int = 6) -> QuantumGraph:
    """Random connected simple graph: a random spanning tree plus extra bonds."""
    v = int(rng.integers(2, max_vertices + 1))
    order = rng.permutation(v)
    edges = {frozenset((int(order[k]), int(order[rng.integers(0, k)]))) for k in range(1, v)}
    for a in range(v):
        for b in range(a + 1, v):
            if rng.random() < 0.3:
                edges.add(frozenset((a, b)))
    bonds = [Bond(*sorted(e), float(rng.uniform(0.5, 2.0)), float(rng.normal())) for e in edges]
    return QuantumGraph(v, bonds)

