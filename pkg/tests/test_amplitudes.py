import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgcomb import amplitudes as amp
from qgcomb.ring import k_exact

from oracles import ring_trace_power


def test_amplitude_examples():
    assert amp.amplitude_table(2).values() == [0.5, -1.0, 0.5]
    assert amp.amplitude_table(0).values() == [1.0]
    assert amp.amplitude_table(1).values() == pytest.approx([2**-0.5] * 2)


def test_amplitudes_match_matrix_expansion():
    for n in range(1, 40):
        assert amp.amplitude_table(n).scaled == amp.trace_coefficients_exact(n), n


def test_float_rows_match_exact_table():
    rows = amp.amplitude_rows(60)
    for n in range(61):
        assert rows[n] == pytest.approx(amp.amplitude_table(n).values(), abs=1e-12)


def test_parseval_completeness():
    for n in range(1, 41):
        assert sum(amp.amplitude_table(n).squares(), Fraction(0)) == 2 * k_exact(n)


def test_kravtchouk_rendering_agrees():
    assert all(amp.kravtchouk_amplitude_agrees(n) for n in range(1, 21))


@pytest.mark.parametrize("n,want", [(1, math.sqrt(2)), (2, 0.0)])
def test_s_n_at_zero_phase(n, want):
    assert amp.s_n_from_families(n, 0.0, 0.0) == pytest.approx(want, abs=1e-12)


@settings(max_examples=50)
@given(st.integers(1, 25), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_s_n_matches_matrix_trace(n, p1, p2):
    want = ring_trace_power(math.pi / 4, p1, p2, n)
    assert abs(amp.s_n_from_families(n, p1, p2) - want) < 1e-10


def test_trace_identity_rejects_bad_arguments():
    with pytest.raises(ValueError):
        amp.trace_identity_sum(1, 2, 0.1)
    with pytest.raises(ValueError):
        amp.trace_identity_sum(1, 0, 0.1, n_max=50)
    with pytest.raises(ValueError):
        amp.trace_identity_sum(1, 0, -0.1)


@pytest.mark.parametrize("nu,kappa,target", [(2, 1, -1.0), (1, 0, 2**-0.5)])
def test_trace_identity_ladder_converges(nu, kappa, target):
    rows = amp.trace_identity_ladder(nu, kappa)
    assert rows[0].target == pytest.approx(target)
    errs = [r.abs_error for r in rows]
    assert errs == sorted(errs, reverse=True)
    assert amp.extrapolate_limit(rows) == pytest.approx(target, abs=2e-3)


def test_trace_identity_zero_lag_tends_to_two():
    # tr S^0 = 2 for the 2x2 ring map, while A(0,0) = 1
    rows = amp.trace_identity_ladder(0, 0)
    assert amp.extrapolate_limit(rows) == pytest.approx(2.0, abs=5e-3)
