import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from kgyukawa.errors import DomainError
from kgyukawa.model import (
    Coupling,
    PhysicalParams,
    QuantumNumbers,
    TrustRegionWarning,
    approx_potential,
    centrifugal_approx,
    centrifugal_exact,
    coulomb_limit_map,
    mass_function,
    yukawa_potential,
)


def test_params_validation():
    with pytest.raises(DomainError):
        PhysicalParams(alpha=0.0)
    with pytest.raises(DomainError):
        PhysicalParams(m0=-1.0)
    with pytest.raises(DomainError):
        PhysicalParams(eta=float("nan"))
    with pytest.raises(DomainError):
        QuantumNumbers(n=-1)
    with pytest.raises(DomainError):
        QuantumNumbers(l=1.5)
    assert PhysicalParams(hbar=2.0, c=4.0).beta == 0.125


def test_trust_region_warns_but_builds():
    with pytest.warns(TrustRegionWarning):
        p = PhysicalParams(eta=0.3, alpha=0.01)
    assert p.outside_trust_region
    assert not PhysicalParams(eta=0.25, alpha=0.3).outside_trust_region


def test_coupling_weights():
    assert Coupling.PUBLISHED.weight == 1.0
    assert Coupling.STRICT.weight == 2.0


class TestPotentials:
    def test_yukawa(self):
        assert yukawa_potential(PhysicalParams(eta=0.0), 3.0) == 0.0
        assert_allclose(yukawa_potential(PhysicalParams(eta=0.25, alpha=0.25), 1.0), -0.25 * math.exp(-0.25), rtol=1e-15)
        assert_allclose(yukawa_potential(PhysicalParams(eta=0.25, alpha=0.25), 1.0), -0.19470019576, rtol=1e-10)
        assert_allclose(yukawa_potential(PhysicalParams(eta=0.2, alpha=1e-9), 2.0), -0.1, rtol=1e-8)

    def test_approx(self):
        p = PhysicalParams(eta=0.1, alpha=0.01)
        assert_allclose(approx_potential(p, 10.0), -0.0090333, rtol=1e-4)
        assert_allclose(approx_potential(p, 10.0), -0.002 * math.exp(-0.2) / (1 - math.exp(-0.2)), rtol=1e-14)
        assert approx_potential(PhysicalParams(eta=0.0), 1.0) == 0.0
        assert_allclose(approx_potential(p, 1e-4), -p.eta / 1e-4, rtol=1e-5)

    def test_large_r_is_finite(self):
        p = PhysicalParams(eta=0.1, alpha=0.3)
        r = np.array([1e3, 1e4, 1e6])
        assert np.all(np.isfinite(approx_potential(p, r)))
        assert np.all(np.isfinite(centrifugal_approx(3, 0.3, r)))

    def test_domain(self):
        p = PhysicalParams()
        for f in (yukawa_potential, approx_potential, mass_function):
            with pytest.raises(DomainError):
                f(p, 0.0)
        with pytest.raises(DomainError):
            centrifugal_exact(1, -1.0)
        with pytest.raises(DomainError):
            centrifugal_approx(1, 0.1, np.array([1.0, 0.0]))


class TestCentrifugal:
    def test_exact(self):
        assert centrifugal_exact(0, 3.0) == 0
        assert centrifugal_exact(1, 2.0) == 0.5
        assert_allclose(centrifugal_exact(2, 0.1), 600.0, rtol=1e-14)

    def test_approx_value(self):
        expected = 2 * 4 * 0.0625 * math.exp(-2) / (1 - math.exp(-2)) ** 2
        assert_allclose(centrifugal_approx(1, 0.25, 4.0), expected, rtol=1e-14)
        assert_allclose(centrifugal_approx(1, 0.25, 4.0), 0.0905077076, rtol=1e-9)
        assert centrifugal_approx(0, 0.25, 4.0) == 0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 8), st.floats(1e-4, 0.3), st.floats(1e-6, 1.0))
    def test_small_argument_bound(self, l, alpha, frac):
        r = 0.01 * frac / alpha
        ar = alpha * r
        ratio = centrifugal_approx(l, alpha, r) / centrifugal_exact(l, r)
        assert abs(ratio - 1) < 2 * ar + 10 * ar**2


class TestMass:
    def test_values(self):
        assert mass_function(PhysicalParams(m1=0.0), 2.0) == 1.0
        p = PhysicalParams(m0=1, m1=0.1, alpha=0.1)
        assert_allclose(mass_function(p, 5.0), 1 + 0.1 / (math.e - 1), rtol=1e-15)
        assert_allclose(mass_function(p, 1e5), 1.0, rtol=0, atol=0)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1e-3, 0.25), st.floats(1e-3, 0.3), st.floats(1e-3, 1.0), st.floats(1e-3, 200))
    def test_signs(self, eta, alpha, m1, r):
        p = PhysicalParams(m1=m1, eta=eta, alpha=alpha)
        assert approx_potential(p, r) < 0
        # beyond alpha r ~ 15 the deformation drops below one ulp of m0
        if alpha * r < 15:
            assert mass_function(p, r) > p.m0


class TestCoulombMap:
    def test_examples(self):
        cp = coulomb_limit_map(PhysicalParams(m1=0.0, alpha=0.2))
        assert (cp.M0, cp.M1) == (1.0, 0.0)
        cp = coulomb_limit_map(PhysicalParams(m0=1, m1=0.1, alpha=0.05))
        assert_allclose((cp.M0, cp.M1), (0.95, 1.0), rtol=1e-15)
        cp = coulomb_limit_map(PhysicalParams(m0=2, m1=2, alpha=1.0))
        assert (cp.M0, cp.M1) == (1.0, 1.0)

    def test_matches_mass_expansion(self):
        p = PhysicalParams(m0=1.0, m1=0.3, alpha=0.02)
        r = 1e-4 / p.alpha
        cp = coulomb_limit_map(p)
        assert_allclose(cp.M0 + cp.M1 / r, mass_function(p, r), rtol=1e-3)
