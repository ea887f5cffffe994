"""Periodic-orbit families: closed walks on directed bonds grouped by traversal counts."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .graph import QuantumGraph, ScatteringSystem

WALK_BUDGET = 10**7
_ZERO = 1e-14


@dataclass(frozen=True)
class FamilyKey:
    beta: int
    counts: tuple[int, ...]  # per directed bond (beta=2) or per bond (beta=1)

    def __post_init__(self):
        if self.beta not in (1, 2):
            raise ValueError(f"beta must be 1 or 2, got {self.beta}")
        if any(c < 0 for c in self.counts):
            raise ValueError("traversal counts must be non-negative")

    @property
    def n(self) -> int:
        return sum(self.counts)

    def label(self) -> str:
        return "-".join(map(str, self.counts))


@dataclass
class FamilyEntry:
    amplitude: complex = 0j
    orbits: int = 0


@dataclass
class FamilyTable:
    n: int
    beta: int
    dim: int  # 2B
    families: dict[FamilyKey, FamilyEntry] = field(default_factory=dict)

    def __len__(self):
        return len(self.families)


def _bond_pairs(system: ScatteringSystem) -> list[tuple[int, int]]:
    rev = list(system.reverse)
    return [(d, rev[d]) for d in range(system.n_directed) if d < rev[d]]


def _successors(m: np.ndarray) -> list[list[tuple[int, complex]]]:
    return [
        [(dp, complex(m[d, dp])) for dp in range(m.shape[1]) if abs(m[d, dp]) > _ZERO]
        for d in range(m.shape[0])
    ]


def enumerate_families(system: ScatteringSystem, beta: int, n: int, budget: int = WALK_BUDGET) -> FamilyTable:
    """All closed walks of length n, each starting bond counted separately.

    A walk ``d0 -> d1 -> ... -> d_{n-1} -> d0`` picks up ``prod M[d_k, d_{k+1}]``
    from the phase-free matrix; its phase is fixed by how often each bond is
    used, so walks are accumulated per count vector.  Partial walks sharing
    (start, current bond, counts) are merged, which keeps the work well
    below the raw walk count.
    """
    if beta not in (1, 2):
        raise ValueError(f"beta must be 1 or 2, got {beta}")
    if n < 1:
        raise ValueError("n must be >= 1")
    m = system.bare_matrix()
    succ = _successors(m)
    dim = m.shape[0]
    maxdeg = max(len(s) for s in succ)
    if dim * maxdeg ** (n - 1) > budget:
        raise ValueError(
            f"walk enumeration too large: (2B) * maxdeg^(n-1) = {dim * maxdeg ** (n - 1)} > {budget}"
        )
    directed: dict[tuple[int, ...], FamilyEntry] = defaultdict(FamilyEntry)
    for start in range(dim):
        counts0 = [0] * dim
        counts0[start] = 1
        layer = {(start, tuple(counts0)): (1 + 0j, 1)}
        for _ in range(n - 1):
            nxt: dict = {}
            for (cur, counts), (amp, k) in layer.items():
                for dp, w in succ[cur]:
                    c = list(counts)
                    c[dp] += 1
                    key = (dp, tuple(c))
                    a0, k0 = nxt.get(key, (0j, 0))
                    nxt[key] = (a0 + amp * w, k0 + k)
            layer = nxt
        for (cur, counts), (amp, k) in layer.items():
            w = m[cur, start]
            if abs(w) > _ZERO:
                e = directed[counts]
                e.amplitude += amp * complex(w)
                e.orbits += k
    table = FamilyTable(n, beta, dim)
    if beta == 2:
        for counts, e in directed.items():
            table.families[FamilyKey(2, counts)] = e
        return table
    pairs = _bond_pairs(system)
    for counts, e in directed.items():
        key = FamilyKey(1, tuple(counts[a] + counts[b] for a, b in pairs))
        agg = table.families.setdefault(key, FamilyEntry())
        agg.amplitude += e.amplitude
        agg.orbits += e.orbits
    return table


def famsum_form_factor(table: FamilyTable) -> float:
    """(1/2B) sum over families of |coherent amplitude sum|^2."""
    if not table.families:
        return 0.0
    return sum(abs(e.amplitude) ** 2 for e in table.families.values()) / table.dim


def family_feasibility(g: QuantumGraph, key: FamilyKey) -> bool:
    """Necessary (not sufficient) balance conditions for an orbit with these counts.

    beta=2: at every vertex, traversals in equal traversals out.
    beta=1: every vertex touches an even number of bond traversals.
    """
    if key.beta == 2:
        if len(key.counts) != g.n_directed:
            raise ValueError("key length must equal the number of directed bonds")
        dirs = g.directed
        for v in range(g.n_vertices):
            inflow = sum(key.counts[d] for d, (_, j) in enumerate(dirs) if j == v)
            outflow = sum(key.counts[d] for d, (i, _) in enumerate(dirs) if i == v)
            if inflow != outflow:
                return False
        return True
    if len(key.counts) != g.n_bonds:
        raise ValueError("key length must equal the number of bonds")
    touching = [0] * g.n_vertices
    for c, b in zip(key.counts, g.bonds):
        touching[b.i] += c
        touching[b.j] += c
    return all(t % 2 == 0 for t in touching)


def support_connected(g: QuantumGraph, key: FamilyKey) -> bool:
    """Whether the traversed bonds form one connected piece (composite orbits fail this)."""
    if key.beta == 2:
        used = {d // 2 for d, c in enumerate(key.counts) if c}
    else:
        used = {b for b, c in enumerate(key.counts) if c}
    if not used:
        return False
    adj: dict[int, set[int]] = defaultdict(set)
    for b in used:
        x, y = g.bonds[b].i, g.bonds[b].j
        adj[x].add(y)
        adj[y].add(x)
    start = next(iter(adj))
    stack, seen = [start], {start}
    while stack:
        for w in adj[stack.pop()] - seen:
            seen.add(w)
            stack.append(w)
    return seen == set(adj)
