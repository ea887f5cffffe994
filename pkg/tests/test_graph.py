import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgcomb import graph
from qgcomb.graph import Bond, QuantumGraph
from qgcomb.ring import RingGraph, RingParams, ring_s_matrix


def test_neumann_examples():
    assert np.array_equal(graph.neumann_sigma(2), [[0, 1], [1, 0]])
    assert np.array_equal(graph.neumann_sigma(1), [[1]])
    s3 = graph.neumann_sigma(3)
    assert np.allclose(np.diag(s3), -1 / 3) and np.allclose(s3[0, 1:], 2 / 3)
    assert np.allclose((s3**2).sum(axis=1), 1)


@pytest.mark.parametrize("v", range(1, 12))
def test_neumann_orthogonal(v):
    s = graph.neumann_sigma(v)
    assert np.abs(s @ s.T - np.eye(v)).max() < 1e-12


def test_graph_validation():
    with pytest.raises(ValueError, match="self-loop"):
        QuantumGraph(2, [Bond(0, 0)])
    with pytest.raises(ValueError, match="more than one"):
        QuantumGraph(2, [Bond(0, 1), Bond(1, 0)])
    with pytest.raises(ValueError, match="connected"):
        QuantumGraph(4, [Bond(0, 1), Bond(2, 3)])
    with pytest.raises(ValueError, match="length"):
        QuantumGraph(2, [Bond(0, 1, length=0.0)])


def test_single_bond_s_is_antidiagonal():
    g = graph.single_bond_graph()
    s = graph.assemble_s(g, [0.3, 1.1]).matrix
    assert s[0, 0] == 0 and s[1, 1] == 0
    assert s[0, 1] == pytest.approx(np.exp(0.3j)) and s[1, 0] == pytest.approx(np.exp(1.1j))


def test_complete_three_row_sparsity():
    g = graph.complete_graph(3)
    s = graph.assemble_s(g, np.zeros(6)).matrix
    assert s.shape == (6, 6)
    # valency 2 Neumann has no back-scattering, so only one of the 2 outgoing bonds is reached
    structural = graph.complete_graph(3).bare_matrix() != 0
    assert (np.abs(s) > 0).sum(axis=1).tolist() == [1] * 6
    out_bonds = [[dp for dp, (a, _) in enumerate(g.directed) if a == j] for (_, j) in g.directed]
    assert all(len(x) == 2 for x in out_bonds)
    assert np.array_equal(structural, np.abs(s) > 0)


def test_complete_four_structure():
    g = graph.complete_graph(4)
    m = g.bare_matrix()
    dirs = g.directed
    for d, (i, j) in enumerate(dirs):
        for dp, (l, _) in enumerate(dirs):
            assert (m[d, dp] != 0) == (j == l)
    assert (np.abs(m) > 0).sum(axis=1).tolist() == [3] * 12


def test_assemble_rejects_bad_input():
    g = graph.complete_graph(3)
    with pytest.raises(ValueError):
        graph.assemble_s(g, np.zeros(5))
    with pytest.raises(ValueError):
        graph.assemble_s(g, np.zeros(6), vertex_matrices={0: np.array([[1, 1], [0, 1]])})
    with pytest.raises(ValueError):
        graph.assemble_s(g, np.zeros(6), vertex_matrices={0: np.eye(3)})


def test_custom_vertex_matrices_accepted():
    g = graph.complete_graph(3)
    c, s = math.cos(0.4), math.sin(0.4)
    rot = np.array([[c, 1j * s], [1j * s, c]])
    sm = graph.assemble_s(g, np.arange(6.0), vertex_matrices={v: rot for v in range(3)})
    assert graph.is_unitary(sm.matrix)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_graphs_unitary_and_unistochastic(seed):
    rng = np.random.default_rng(seed)
    g = graph.random_graph(rng)
    s = graph.assemble_s(g, rng.uniform(-np.pi, np.pi, g.n_directed))
    assert np.abs(s.matrix.conj().T @ s.matrix - np.eye(s.dim)).max() < 1e-12
    u = graph.classical_operator(s)
    assert np.abs(u.sum(axis=0) - 1).max() < 1e-12
    assert np.abs(u.sum(axis=1) - 1).max() < 1e-12
    assert graph.classical_trace(u, 1) >= 0


def test_classical_traces_approach_perron_limit():
    g = graph.complete_graph(4)
    u = graph.classical_operator(graph.assemble_s(g, np.zeros(12)))
    ev = np.sort(np.abs(np.linalg.eigvals(u)))[::-1]
    assert ev[0] == pytest.approx(1.0)
    # one unit eigenvalue and the rest strictly inside the disc: u_n -> 1
    assert graph.classical_trace(u, 200) == pytest.approx(1.0, abs=1e-8)


def test_phase_from_geometry():
    g = graph.single_bond_graph(length=2.0, flux=0.25)
    assert graph.phase_from_geometry(g, 1.5).tolist() == [3.5, 2.5]
    g0 = graph.complete_graph(4)
    assert np.all(graph.phase_from_geometry(g0, 0.0) == 0)
    ph = graph.phase_from_geometry(g0, 2.7)
    assert np.allclose(ph[0::2], ph[1::2])


def test_time_reversal_symmetric_s_is_symmetric():
    g = graph.complete_graph(4)
    s = graph.assemble_s(g, graph.phase_from_geometry(g, 1.3)).matrix
    # S is symmetric once rows/columns are paired by reversal: S_{d,d'} = S_{rev d', rev d}
    rev = g.reverse
    assert np.allclose(s, s[np.ix_(rev, rev)].T)


def test_quantum_trace_properties():
    rng = np.random.default_rng(5)
    g = graph.complete_graph(4)
    s = graph.assemble_s(g, rng.uniform(-3, 3, 12))
    ev = np.linalg.eigvals(s.matrix)
    for n in range(1, 8):
        t = graph.quantum_trace(s, n)
        assert abs(t - (ev**n).sum()) < 1e-10
        assert abs(t) <= s.dim + 1e-12
    assert graph.quantum_trace(s, 1) == pytest.approx(np.trace(s.matrix))


def test_ring_through_generic_interface():
    r = RingGraph(0.7)
    s = graph.s_matrix(r, [0.2, -1.3])
    assert np.allclose(s, ring_s_matrix(RingParams(0.7, 0.2, -1.3)))
    assert graph.free_phase_map(r, 1).tolist() == [[1.0], [1.0]]


def test_free_phase_map_for_graphs():
    g = graph.complete_graph(3)
    assert graph.free_phase_map(g, 2).shape == (6, 6)
    m1 = graph.free_phase_map(g, 1)
    assert m1.shape == (6, 3) and np.all(m1.sum(axis=0) == 2)
    with pytest.raises(ValueError):
        graph.free_phase_map(g, 3)


def test_graph_file_round_trip(tmp_path):
    text = "3 2\n1 2 1.5 0.1\n2 3 0.7 -0.2\n"
    g = graph.parse_graph(text)
    assert g.n_vertices == 3 and g.bonds[0] == Bond(0, 1, 1.5, 0.1)
    assert graph.parse_graph(graph.format_graph(g)).bonds == g.bonds
    p = tmp_path / "g.txt"
    p.write_text(text)
    assert graph.graph_from_spec(str(p)).bonds == g.bonds


@pytest.mark.parametrize("text", ["", "3\n", "2 2\n1 2 1 0\n", "2 1\n1 2 1\n", "2 1\n1 1 1 0\n"])
def test_graph_file_errors(text):
    with pytest.raises(ValueError):
        graph.parse_graph(text)


def test_graph_specs():
    assert isinstance(graph.graph_from_spec("ring"), RingGraph)
    assert graph.graph_from_spec("ring:0.3").eta == 0.3
    assert graph.graph_from_spec("complete:5").n_bonds == 10
    assert graph.graph_from_spec("path:4").n_bonds == 3
    with pytest.raises(ValueError):
        graph.graph_from_spec("torus:3")
