import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opuc.errors import DomainError, NonFiniteSampleError, QuadratureError
from opuc.opuc_core import BernsteinSzegoWeight
from opuc.quadrature import (
    PeriodicSamples,
    adaptive_mean,
    entropy_functional,
    fourier_coeff,
    grid,
    integrate,
    periodic_mean,
    poisson_transform,
)
from opuc.verblunsky import ANTIPODAL, SingularityProfile


class TestPeriodicMean:
    def test_constant_at_first_level(self):
        res = periodic_mean(lambda t: np.full_like(t, 2.5))
        assert res.value == 2.5
        assert res.m_used == 128

    def test_cos(self):
        assert abs(periodic_mean(np.cos).value) < 1e-15

    def test_cos_squared(self):
        assert periodic_mean(lambda t: np.cos(t) ** 2).value == pytest.approx(0.5, abs=1e-15)

    @given(st.integers(1, 30), st.floats(-3, 3), st.floats(-3, 3))
    def test_trig_polynomials_exact(self, d, a, b):
        # degree 2d < 64, so the first grid is already exact
        f = lambda t: 1.0 + a * np.cos(d * t) + b * np.sin(d * t) ** 2
        assert abs(periodic_mean(f).value - (1.0 + 0.5 * b)) < 1e-14

    def test_vector_valued(self):
        res = periodic_mean(lambda t: np.stack([np.cos(t) ** 2, np.sin(t) ** 4], axis=1))
        assert np.allclose(res.value, [0.5, 3 / 8], atol=1e-15)

    def test_cap_raises(self):
        with pytest.raises(QuadratureError) as info:
            periodic_mean(lambda t: np.abs(np.sin(t)) ** 0.5, atol=1e-15, max_m=1024)
        assert info.value.m == 1024
        assert info.value.previous is not None

    def test_nonfinite_sample(self):
        with pytest.raises(NonFiniteSampleError), np.errstate(divide="ignore"):
            periodic_mean(lambda t: 1.0 / (t - t[3]))


class TestAdaptive:
    def test_smooth(self):
        res = adaptive_mean(lambda t: np.exp(np.cos(t)))
        # I_0(1)
        assert res.value == pytest.approx(1.2660658777520084, abs=1e-14)

    def test_near_log_singularity(self):
        # mean of log|e^{it} - r|^2 is 0 for r < 1, but r = 1 - 1e-10 defeats a uniform grid
        r = 1.0 - 1e-10
        f = lambda t: np.log(np.abs(np.exp(1j * t) - r) ** 2)
        with pytest.raises(QuadratureError):
            periodic_mean(f, max_m=2**14)
        assert abs(integrate(f).value) < 1e-10

    def test_panel_cap(self):
        with pytest.raises(QuadratureError):
            adaptive_mean(lambda t: np.sign(np.sin(3 * t)) * np.cos(100 * t), atol=1e-15, max_panels=256)


class TestEntropyFunctional:
    def test_unit_weight(self):
        assert entropy_functional(lambda t: np.ones_like(t), ANTIPODAL).value == 0

    def test_one_coefficient_weight(self):
        w = BernsteinSzegoWeight([0.5])
        res = entropy_functional(w, SingularityProfile(((0, 1),)))
        assert res.value == pytest.approx(math.log(0.75) - 0.5, abs=1e-12)
        assert res.value == pytest.approx(-0.787682, abs=1e-6)

    def test_antipodal_one_coefficient(self):
        w = BernsteinSzegoWeight([0.5])
        assert entropy_functional(w, ANTIPODAL).value == pytest.approx(-0.2063410, abs=1e-7)

    def test_geometric_convergence(self):
        w = BernsteinSzegoWeight([0.5])
        prof = SingularityProfile(((0, 1),))
        exact = math.log(0.75) - 0.5
        errs = [abs(np.mean(prof.weight(grid(m)) * np.log(w(grid(m)))) - exact) for m in (8, 16, 32)]
        assert errs[1] / errs[0] < 0.2 and errs[2] / errs[1] < 0.2

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            entropy_functional(lambda t: np.cos(t), ANTIPODAL)


class TestFourier:
    def test_examples(self):
        m = 64
        t = grid(m)
        assert fourier_coeff(np.full(m, 3.0), 0) == 3.0
        assert fourier_coeff(np.cos(t), 1) == pytest.approx(0.5, abs=1e-15)
        assert fourier_coeff(np.exp(2j * t), 2) == pytest.approx(1.0, abs=1e-15)

    def test_aliasing_guard(self):
        with pytest.raises(ValueError):
            fourier_coeff(np.ones(16), 8)

    def test_samples_validated(self):
        with pytest.raises(ValueError):
            PeriodicSamples(np.ones(12))
        assert PeriodicSamples.of(np.cos, 32).m == 32


class TestPoisson:
    def test_examples(self):
        t = grid(64)
        assert poisson_transform(np.ones(64), 0.4) == pytest.approx(1.0)
        assert poisson_transform(np.cos(t), 0.3) == pytest.approx(0.3, abs=1e-15)
        assert poisson_transform(np.sin(t), 0.6) == pytest.approx(-0.6j, abs=1e-15)

    def test_center_is_mean(self):
        vals = np.exp(np.cos(grid(128)))
        assert poisson_transform(vals, 0) == pytest.approx(fourier_coeff(vals, 0), abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            poisson_transform(np.ones(64), 1.0)
