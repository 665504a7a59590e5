import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from kgyukawa.bound import energy_closed_form
from kgyukawa.errors import ClosedChannel
from kgyukawa.model import Coupling, PhysicalParams, QuantumNumbers
from kgyukawa.scatter import (
    a_param,
    asymptotic_wavefunction,
    continued_pole_argument,
    phase_gamma,
    phase_shift,
    reduce_phase,
    scatter_exponents,
    scatter_wavefunction,
)
from kgyukawa.tables import TABLE_II
from kgyukawa.verify import oracle_phase

# frozen with tests/oracles/make_frozen.py
A_PARAM_1P2 = 33.075821985250797j
PHASE_TOTAL_1P1 = 0.54566875746240151
AMPLITUDE_1P1 = 0.037523355006917067
PHASE_STRICT_L2 = 1.0314564982114485

FREE = PhysicalParams(m1=0.0, eta=0.0, alpha=0.25)


def mod_pi(x):
    return abs(math.remainder(x, math.pi))


class TestExponents:
    def test_examples(self):
        k1, _ = scatter_exponents(FREE, 0, 1.5)
        assert k1 == 1.0
        _, k2 = scatter_exponents(PhysicalParams(eta=0.0, alpha=0.5), 0, math.sqrt(2))
        assert_allclose(k2, 1.0, rtol=1e-15)
        k1, k2 = scatter_exponents(PhysicalParams(m1=0.1, eta=0.1, alpha=0.01), 0, 1.5)
        assert_allclose(k1, 0.5 * (1 + math.sqrt(100.96)), rtol=1e-15)
        assert_allclose(k2, math.sqrt(1.25) / 0.02, rtol=1e-14)

    def test_closed_channel(self):
        with pytest.raises(ClosedChannel):
            scatter_exponents(FREE, 0, 1.0)
        with pytest.raises(ClosedChannel):
            phase_shift(FREE, 1, 0.5)


class TestAParam:
    def test_free_is_i_k2(self):
        E = 1.7
        _, k2 = scatter_exponents(FREE, 0, E)
        assert_allclose(a_param(FREE, E), 1j * k2, rtol=1e-14)
        assert a_param(FREE, 1.0) == 0

    def test_frozen(self):
        assert_allclose(a_param(PhysicalParams(eta=0.1, alpha=0.01), 1.2), A_PARAM_1P2, rtol=1e-14)

    def test_real_below_crossover(self):
        # attractive coupling keeps the radicand positive just above threshold
        A = a_param(PhysicalParams(eta=0.25, alpha=0.01), 1.0001)
        assert A.imag == 0 and A.real > 0


class TestPhaseShift:
    def test_frozen(self):
        sol = phase_shift(PhysicalParams(eta=0.1, alpha=0.01), 0, 1.1)
        assert_allclose(sol.phase_total, PHASE_TOTAL_1P1, rtol=1e-13)
        assert_allclose(sol.amplitude, AMPLITUDE_1P1, rtol=1e-13)
        strict = phase_shift(PhysicalParams(eta=0.25, alpha=0.3), 2, 1.4, Coupling.STRICT)
        assert_allclose(strict.phase_total, PHASE_STRICT_L2, rtol=1e-13)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.01, 0.3), st.floats(1.01, 2.0))
    def test_free_s_wave_vanishes(self, alpha, E):
        # Gamma(2ik) / (Gamma(1) Gamma(1 + 2ik)) = 1/(2ik): arg is -pi/2
        sol = phase_shift(PhysicalParams(m1=0.0, eta=0.0, alpha=alpha), 0, E)
        assert abs(sol.phase_total) < 1e-12

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 0.25), st.floats(0.01, 0.3), st.integers(0, 5), st.floats(1.01, 2.0), st.floats(0, 0.1))
    def test_identity_and_amplitude(self, eta, alpha, l, E, m1):
        sol = phase_shift(PhysicalParams(m1=m1, eta=eta, alpha=alpha), l, E)
        assert sol.phase_total == (l + 1) * 0.5 * math.pi + sol.phase_gamma
        assert -math.pi < sol.phase_reduced <= math.pi
        assert_allclose(math.remainder(sol.phase_reduced - sol.phase_total, 2 * math.pi), 0, atol=1e-12)
        assert sol.amplitude > 0
        assert sol.k2_prime > 0

    def test_conjugation(self):
        k1, k2, A = 1.3, 2.1, 0.4 + 1.7j
        assert_allclose(phase_gamma(k1, -k2, A.conjugate()), -phase_gamma(k1, k2, A), atol=1e-14)

    def test_reduce_phase(self):
        assert reduce_phase(math.pi) == math.pi
        assert reduce_phase(-math.pi) == math.pi
        assert_allclose(reduce_phase(7.0), 7.0 - 2 * math.pi, rtol=1e-15)


class TestWavefunction:
    def test_origin(self):
        p = PhysicalParams(eta=0.1, alpha=0.01)
        assert abs(scatter_wavefunction(p, 0, 1.3, 1e-8)) < 1e-6

    def test_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        p = PhysicalParams(eta=0.2, alpha=0.05, m1=0.02)
        E, l = 1.3, 1
        k1, k2 = scatter_exponents(p, l, E)
        A = a_param(p, E)
        for r in (0.5, 7.0, 40.0, 300.0):
            with mpmath.workdps(30):
                # s near 1 must be formed in extended precision
                s = 1 - mpmath.exp(-2 * p.alpha * mpmath.mpf(r))
                ref = complex(
                    s**k1
                    * mpmath.exp(-2j * k2 * p.alpha * r)
                    * mpmath.hyp2f1(k1 + 1j * k2 + A, k1 + 1j * k2 - A, 2 * k1, s)
                )
            got = scatter_wavefunction(p, l, E, r)
            assert abs(got - ref) < 1e-11 * max(1.0, abs(ref))

    def test_real_up_to_rounding(self):
        p = PhysicalParams(eta=0.1, alpha=0.1)
        r = np.linspace(0.1, 200, 50)
        phi = scatter_wavefunction(p, 2, 1.4, r)
        assert np.max(np.abs(phi.imag)) < 1e-10 * np.max(np.abs(phi.real))

    @pytest.mark.parametrize("eta, alpha, l, E", [(0.1, 0.01, 0, 1.1), (0.25, 0.3, 2, 1.4), (0.05, 0.1, 1, 1.7)])
    def test_envelope_at_large_r(self, eta, alpha, l, E):
        p = PhysicalParams(eta=eta, alpha=alpha)
        sol = phase_shift(p, l, E)
        r = 50 / alpha + np.linspace(0, 3, 31) / sol.k2_prime
        phi = scatter_wavefunction(p, l, E, r)
        env = sol.amplitude * np.sin(2 * alpha * sol.k2_prime * r + 0.5 * math.pi + sol.phase_gamma)
        # fundamental sinusoid uses arg C = phase_gamma
        assert np.max(np.abs(phi.real - env)) < 1e-3 * sol.amplitude

    def test_free_modulus_period(self):
        E = 1.6
        _, k2 = scatter_exponents(FREE, 0, E)
        period = math.pi / (2 * FREE.alpha * k2)
        r = np.linspace(60, 80, 21)
        a = np.abs(scatter_wavefunction(FREE, 0, E, r))
        b = np.abs(scatter_wavefunction(FREE, 0, E, r + period))
        assert_allclose(a, b, atol=1e-9)

    def test_asymptotic_forms_agree(self):
        p = PhysicalParams(eta=0.2, alpha=0.1, m1=0.05)
        r = np.linspace(1, 500, 101)
        for l, E in ((0, 1.05), (3, 1.9)):
            a = asymptotic_wavefunction(p, l, E, r, form="explicit")
            b = asymptotic_wavefunction(p, l, E, r, form="conjugate")
            assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(a)))
        with pytest.raises(ValueError):
            asymptotic_wavefunction(p, 0, 1.2, r, form="other")


def test_pole_condition_at_bound_energies():
    for row in TABLE_II:
        for m1 in (0.0, 0.1):
            p = PhysicalParams(m1=m1, eta=row.eta, alpha=row.alpha)
            q = QuantumNumbers(row.n, row.l)
            sol = energy_closed_form(p, q)
            for br in (sol.plus, sol.minus):
                assert abs(continued_pole_argument(p, q, br) + q.n) < 1e-6


@pytest.mark.parametrize("coupling", list(Coupling))
@pytest.mark.parametrize("eta, alpha, l, E", [(0.1, 0.01, 0, 1.1), (0.1, 0.1, 1, 2.0), (0.25, 0.3, 1, 1.4)])
def test_formula_matches_oracle_in_same_coupling(coupling, eta, alpha, l, E):
    # each coupling weight is internally consistent; see the acceptance suite for the cross-comparison
    p = PhysicalParams(eta=eta, alpha=alpha)
    assert mod_pi(phase_shift(p, l, E, coupling).phase_total - oracle_phase(p, l, E, coupling)) < 1e-5


def test_published_formula_differs_from_printed_equation():
    p = PhysicalParams(eta=0.25, alpha=0.3)
    pub = phase_shift(p, 1, 1.4, Coupling.PUBLISHED).phase_total
    strict = phase_shift(p, 1, 1.4, Coupling.STRICT).phase_total
    assert mod_pi(pub - strict) > 1e-2
