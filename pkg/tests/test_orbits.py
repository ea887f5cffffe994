import itertools
import math

import numpy as np
import pytest

from qgcomb import graph
from qgcomb.amplitudes import amplitude_table
from qgcomb.ensemble import mc_form_factor, quadrature_form_factor
from qgcomb.orbits import (
    FamilyKey,
    FamilyTable,
    enumerate_families,
    family_feasibility,
    famsum_form_factor,
    support_connected,
)
from qgcomb.ring import RingGraph, k_exact


def brute_force_walks(system, n):
    """Every closed walk of length n, enumerated literally."""
    m = system.bare_matrix()
    d = m.shape[0]
    fams = {}
    for walk in itertools.product(range(d), repeat=n):
        amp = 1 + 0j
        for k in range(n):
            amp *= m[walk[k], walk[(k + 1) % n]]
        if abs(amp) < 1e-14:
            continue
        counts = tuple(walk.count(b) for b in range(d))
        a, c = fams.get(counts, (0j, 0))
        fams[counts] = (a + amp, c + 1)
    return fams


def test_ring_five_family_q2_has_ten_words():
    table = enumerate_families(RingGraph(), 2, 5)
    assert table.families[FamilyKey(2, (2, 3))].orbits == 10
    assert table.families[FamilyKey(2, (3, 2))].orbits == 10
    assert sum(e.orbits for e in table.families.values()) == 2**5


def test_ring_two_family_amplitudes():
    table = enumerate_families(RingGraph(), 2, 2)
    amps = {k.counts: e.amplitude for k, e in table.families.items()}
    assert amps[(2, 0)] == pytest.approx(0.5)
    assert amps[(1, 1)] == pytest.approx(-1.0)
    assert amps[(0, 2)] == pytest.approx(0.5)


def test_ring_families_reproduce_amplitude_table():
    for n in range(1, 13):
        table = enumerate_families(RingGraph(), 2, n)
        values = amplitude_table(n).values()
        for q in range(n + 1):
            assert table.families[FamilyKey(2, (q, n - q))].amplitude == pytest.approx(values[q], abs=1e-12)


@pytest.mark.parametrize("system,n", [(graph.complete_graph(4), 4), (graph.path_graph(4), 6), (RingGraph(0.3), 7)])
def test_merged_enumeration_matches_brute_force(system, n):
    table = enumerate_families(system, 2, n)
    brute = brute_force_walks(system, n)
    assert {k.counts for k in table.families} == set(brute)
    for key, e in table.families.items():
        a, c = brute[key.counts]
        assert e.orbits == c and abs(e.amplitude - a) < 1e-12


def test_famsum_matches_quadrature_on_ring():
    for n in range(1, 13):
        k = famsum_form_factor(enumerate_families(RingGraph(), 2, n))
        assert abs(k - quadrature_form_factor(RingGraph(), 2, n)) < 1e-9
        assert abs(k - float(k_exact(n))) < 1e-10


def test_famsum_matches_quadrature_single_bond_beta1():
    g = graph.single_bond_graph()
    for n in range(1, 11):
        k = famsum_form_factor(enumerate_families(g, 1, n))
        assert abs(k - quadrature_form_factor(g, 1, n)) < 1e-9
        # eigenvalues are +-exp(i phi): s_n = (1 + (-1)^n) exp(i n phi)
        assert k == pytest.approx(2.0 if n % 2 == 0 else 0.0)


def test_famsum_matches_quadrature_path_beta1():
    g = graph.path_graph(3)  # two bonds, two free phases
    for n in range(1, 9):
        k = famsum_form_factor(enumerate_families(g, 1, n))
        assert abs(k - quadrature_form_factor(g, 1, n)) < 1e-9


def test_famsum_on_complete_four_against_monte_carlo():
    g = graph.complete_graph(4)
    for beta in (1, 2):
        k = famsum_form_factor(enumerate_families(g, beta, 4))
        mc = mc_form_factor(g, beta, 4, 40_000, seed=11)
        assert abs(k - mc.estimate) < 4 * mc.stderr


def test_empty_table_gives_zero():
    assert famsum_form_factor(FamilyTable(3, 2, 6)) == 0.0


def test_every_enumerated_family_is_feasible():
    g = graph.complete_graph(4)
    for beta in (1, 2):
        for n in range(1, 6):
            for key in enumerate_families(g, beta, n).families:
                assert family_feasibility(g, key)
                assert key.n == n


def test_feasibility_rejects_imbalance():
    g = graph.single_bond_graph()
    assert not family_feasibility(g, FamilyKey(2, (1, 0)))
    assert family_feasibility(g, FamilyKey(2, (1, 1)))
    assert not family_feasibility(g, FamilyKey(1, (1,)))


def test_composite_orbit_counterexample():
    g = graph.path_graph(4)  # bonds [1,2], [2,3], [3,4]
    key = FamilyKey(2, (1, 1, 0, 0, 1, 1))
    assert family_feasibility(g, key)
    assert not support_connected(g, key)
    assert key not in enumerate_families(g, 2, 4).families
    key1 = FamilyKey(1, (2, 0, 2))
    assert family_feasibility(g, key1) and key1 not in enumerate_families(g, 1, 4).families


def test_enumeration_guard():
    with pytest.raises(ValueError, match="too large"):
        enumerate_families(graph.complete_graph(6), 2, 12)


def test_family_key_validation():
    with pytest.raises(ValueError):
        FamilyKey(3, (1,))
    with pytest.raises(ValueError):
        FamilyKey(2, (-1, 1))
    with pytest.raises(ValueError):
        family_feasibility(graph.single_bond_graph(), FamilyKey(2, (1, 1, 0)))
