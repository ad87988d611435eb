"""Periodic trapezoidal quadrature on the unit circle.

All integrals are normalised means, i.e. ``int f(theta) dtheta / 2pi``.  The
trapezoidal rule on ``m`` equispaced nodes is exact for trigonometric
polynomials of degree below ``m`` and converges geometrically for analytic
periodic integrands, so refinement is plain grid doubling.  Integrands that
are nearly singular somewhere on the circle defeat any affordable uniform grid;
``integrate`` then falls back to adaptive Gauss-Legendre subdivision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NonFiniteSampleError, QuadratureError
from .verblunsky import TWO_PI, SingularityProfile

MIN_GRID = 64
MAX_GRID = 2**20
# grid cap before integrate() switches to adaptive subdivision
AUTO_GRID = 2**14
MAX_PANELS = 2**16
ATOL_IDENTITY = 1e-11
ATOL_EXPERIMENT = 1e-9


@dataclass(frozen=True)
class IntegralResult:
    value: complex | float | np.ndarray
    est_error: float
    m_used: int


def grid(m: int, offset: float = 0.0) -> np.ndarray:
    return TWO_PI * (np.arange(m) + offset) / m


def _is_pow2(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


@dataclass(frozen=True)
class PeriodicSamples:
    """Samples at theta_k = 2 pi k / m, k = 0..m-1."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1 or not _is_pow2(vals.size) or not 8 <= vals.size <= MAX_GRID:
            raise ValueError(f"grid size must be a power of two in [8, 2^20], got {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def m(self) -> int:
        return self.values.size

    @classmethod
    def of(cls, f: Callable, m: int) -> "PeriodicSamples":
        return cls(np.asarray(f(grid(m))))


def _values(samples) -> np.ndarray:
    if isinstance(samples, PeriodicSamples):
        return samples.values
    return PeriodicSamples(samples).values


def _sample(f, theta):
    vals = np.asarray(f(theta))
    finite = np.isfinite(vals)
    if not finite.all():
        bad = np.argwhere(~finite)[0]
        raise NonFiniteSampleError(float(theta[bad[0]]), vals[tuple(bad)])
    return vals


def periodic_mean(
    f: Callable[[np.ndarray], np.ndarray],
    atol: float = ATOL_IDENTITY,
    m0: int = MIN_GRID,
    max_m: int = MAX_GRID,
) -> IntegralResult:
    """Mean of a periodic function over [0, 2 pi) by grid doubling.

    ``f`` is vectorised: it maps an array of angles of shape (m,) to values of
    shape (m,) or (m, ...); vector-valued integrands converge on the max-norm
    of the change between levels.  Doubling reuses the previous nodes and
    stops once two successive levels differ by less than ``atol``.

    Raises
    ------
    QuadratureError
        if ``max_m`` is reached first; carries the last two estimates.
    NonFiniteSampleError
        on the first NaN/inf sample.
    """
    m = m0
    prev = np.mean(_sample(f, grid(m)), axis=0)
    older = None
    while m < max_m:
        odd = np.mean(_sample(f, grid(m, 0.5)), axis=0)
        cur = 0.5 * (prev + odd)
        m *= 2
        err = float(np.max(np.abs(cur - prev)))
        if err < atol:
            return IntegralResult(cur if np.ndim(cur) else cur[()], err, m)
        older, prev = prev, cur
    raise QuadratureError(prev, older, m)


_GL_LO = np.polynomial.legendre.leggauss(10)
_GL_HI = np.polynomial.legendre.leggauss(20)


def _panel_rules(f, a, b):
    # 10- and 20-point Gauss-Legendre on every panel at once
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    out = []
    for x, w in (_GL_LO, _GL_HI):
        theta = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        vals = _sample(f, theta)
        vals = vals.reshape((a.size, x.size) + vals.shape[1:])
        wts = (w[None, :] * half[:, None]).reshape((a.size, x.size) + (1,) * (vals.ndim - 2))
        out.append(np.sum(vals * wts, axis=1) / TWO_PI)
    lo, hi = out
    err = np.abs(hi - lo)
    if err.ndim > 1:
        err = err.reshape(a.size, -1).max(axis=1)
    return hi, err


def adaptive_mean(
    f: Callable[[np.ndarray], np.ndarray],
    atol: float = ATOL_IDENTITY,
    panels: int = 32,
    max_panels: int = MAX_PANELS,
) -> IntegralResult:
    """Mean over [0, 2 pi) by globally adaptive Gauss-Legendre subdivision.

    Panels whose error estimate (20- vs 10-point rule) exceeds an equal share
    of ``atol`` are bisected until the summed estimate drops below ``atol``.
    This resolves near-singular integrands, e.g. log w with a zero of Phi^*
    within 1e-10 of the circle, that no affordable uniform grid can.
    ``m_used`` reports the number of integrand evaluations.
    """
    edges = np.linspace(0.0, TWO_PI, panels + 1)
    a, b = edges[:-1], edges[1:]
    vals, errs = _panel_rules(f, a, b)
    done_val = 0.0
    done_err = 0.0
    evals = 30 * panels
    while True:
        total = done_err + float(np.sum(errs))
        if total < atol:
            value = done_val + np.sum(vals, axis=0)
            return IntegralResult(value if np.ndim(value) else value[()], total, evals)
        if a.size + evals // 30 > max_panels:
            raise QuadratureError(done_val + np.sum(vals, axis=0), None, evals)
        split = errs > (atol - done_err) / (2.0 * a.size)
        done_val = done_val + np.sum(vals[~split], axis=0)
        done_err += float(np.sum(errs[~split]))
        a, b = a[split], b[split]
        mid = 0.5 * (a + b)
        a, b = np.concatenate((a, mid)), np.concatenate((mid, b))
        vals, errs = _panel_rules(f, a, b)
        evals += 30 * a.size


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    atol: float = ATOL_IDENTITY,
) -> IntegralResult:
    """Grid doubling up to AUTO_GRID nodes, then adaptive subdivision.

    Either route must meet ``atol``; if both fail the adaptive route's
    QuadratureError propagates.
    """
    try:
        return periodic_mean(f, atol, max_m=AUTO_GRID)
    except QuadratureError:
        return adaptive_mean(f, atol)


def entropy_functional(
    weight_eval: Callable[[np.ndarray], np.ndarray],
    profile: SingularityProfile,
    atol: float = ATOL_IDENTITY,
    *,
    log: bool = False,
) -> IntegralResult:
    """int prod_k (1 - cos(theta - theta_k))^{m_k} log w(theta) dtheta/2pi.

    With ``log=True`` the evaluator already returns ``log w``, which avoids
    overflow for nearly singular weights.
    """

    def integrand(theta):
        w = np.asarray(weight_eval(theta))
        if log:
            logw = w
        else:
            bad = np.flatnonzero(~(w > 0))
            if bad.size:
                raise ValueError(f"nonpositive weight {w[bad[0]]!r} at theta={theta[bad[0]]!r}")
            logw = np.log(w)
        return profile.weight(theta) * logw

    return integrate(integrand, atol)


def fourier_coeff(samples, n: int) -> complex:
    """b_n = (1/m) sum_k values_k e^{-i n theta_k}, for |n| < m/2."""
    vals = _values(samples)
    m = vals.size
    if not abs(n) < m // 2:
        raise ValueError(f"|n| = {abs(n)} must be below m/2 = {m // 2}")
    return complex(np.mean(vals * np.exp(-1j * n * grid(m))))


def poisson_transform(samples, z: complex) -> complex:
    """int (e^{i theta} + z)/(e^{i theta} - z) Q(theta) dtheta/2pi for real Q.

    Evaluated as b_0 + 2 sum_{n>=1} b_n z^n with the discrete Fourier
    coefficients b_n of the samples (n < m/2).
    """
    if abs(z) > 1.0 - 1e-6:
        raise DomainError(f"|z| = {abs(z)!r} too close to the unit circle")
    vals = _values(samples)
    m = vals.size
    b = np.fft.fft(vals)[: m // 2] / m
    powers = complex(z) ** np.arange(m // 2)
    return complex(b[0] + 2.0 * np.sum(b[1:] * powers[1:]))
