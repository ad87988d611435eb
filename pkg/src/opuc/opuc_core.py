"""Szego recursion, Bernstein-Szego weights, Schur and Caratheodory functions,
and the relative Szego function with its first Taylor coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np

from .errors import BranchError, DomainError
from .quadrature import (
    ATOL_IDENTITY,
    AUTO_GRID,
    MIN_GRID,
    IntegralResult,
    PeriodicSamples,
    adaptive_mean,
    grid,
    integrate,
    periodic_mean,
    poisson_transform,
)
from .verblunsky import TWO_PI, SingularityProfile, as_verblunsky, at, pad

Z_GUARD = 1.0 - 1e-9


def horner(coef: np.ndarray, z):
    """Evaluate sum_k coef[k] z^k."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in coef[::-1]:
        out = out * z + c
    return out


@dataclass(frozen=True, eq=False)
class MonicPolynomialPair:
    """Coefficients (ascending powers) of Phi_n and its reversal Phi_n^*."""

    phi: np.ndarray
    phi_star: np.ndarray

    @property
    def degree(self) -> int:
        return self.phi.size - 1

    def __call__(self, z):
        return horner(self.phi, z), horner(self.phi_star, z)

    def reversal_residual(self) -> float:
        """max |Phi^*_k - conj(Phi_{n-k})| over coefficients."""
        return float(np.max(np.abs(self.phi_star - np.conj(self.phi[::-1]))))


def szego_recursion(alpha, n: int | None = None) -> MonicPolynomialPair:
    """Run Phi_{k+1} = z Phi_k - conj(a_k) Phi_k^*, Phi_{k+1}^* = Phi_k^* - a_k z Phi_k.

    Coefficient vectors of high-order pairs can grow far beyond the values of
    the polynomials on the circle; evaluate weights through
    :class:`BernsteinSzegoWeight` instead of Horner when n is large.
    """
    alpha = as_verblunsky(alpha)
    if n is None:
        n = alpha.size
    phi = np.array([1.0 + 0j])
    phi_star = np.array([1.0 + 0j])
    for a in pad(alpha, n):
        z_phi = np.concatenate(([0.0], phi))
        star = np.concatenate((phi_star, [0.0]))
        phi, phi_star = z_phi - np.conj(a) * star, star - a * z_phi
    return MonicPolynomialPair(phi, phi_star)


def _log_phi_star(prefix: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Phi*_{k+1}/Phi*_k = 1 - a_k z b_k with b_k = Phi_k/Phi*_k, a Blaschke
    # product, so every factor has |a_k z b_k| < 1 on the closed disk and the
    # principal logs add up to the analytic log with log Phi*(0) = 0.
    b = np.ones_like(z)
    out = np.zeros_like(z)
    for a in prefix:
        u = a * z * b
        out += np.log1p(-u)
        b = (z * b - np.conj(a)) / (1.0 - u)
    return out


@dataclass(frozen=True, eq=False)
class BernsteinSzegoWeight:
    """w(theta) = prod_{j<n} rho_j^2 / |Phi_n^*(e^{i theta})|^2 for a finite prefix."""

    prefix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "prefix", as_verblunsky(self.prefix))

    @classmethod
    def from_sequence(cls, alpha, n: int | None = None, start: int = 0):
        """Weight of (alpha_start, ..., alpha_{n-1}, 0, 0, ...).

        ``start > 0`` gives the weight w_start of the coefficient-stripped
        measure, truncated at the same absolute index n.
        """
        alpha = as_verblunsky(alpha)
        if n is None:
            n = alpha.size
        return cls(pad(alpha, n)[start:])

    @property
    def n(self) -> int:
        return self.prefix.size

    @cached_property
    def log_rho_product(self) -> float:
        return float(np.sum(np.log1p(-np.abs(self.prefix) ** 2)))

    @property
    def rho_product(self) -> float:
        return float(np.exp(self.log_rho_product))

    @cached_property
    def pair(self) -> MonicPolynomialPair:
        return szego_recursion(self.prefix)

    def log_phi_star(self, z) -> np.ndarray:
        """Analytic branch of log Phi_n^*(z) on |z| <= 1."""
        return _log_phi_star(self.prefix, np.asarray(z, dtype=complex))

    def log_eval(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return self.log_rho_product - 2.0 * self.log_phi_star(np.exp(1j * theta)).real

    def __call__(self, theta) -> np.ndarray:
        return np.exp(self.log_eval(theta))


def bs_weight_eval(weight: BernsteinSzegoWeight, theta):
    return weight(theta)


# -- Schur / Caratheodory -------------------------------------------------


def _check_disk(z, bound=Z_GUARD):
    z = np.asarray(z, dtype=complex)
    if z.size and np.max(np.abs(z)) > bound:
        raise DomainError(f"|z| = {np.max(np.abs(z))!r} exceeds {bound!r}")
    return z


def _scalar(z_in, out):
    return complex(out) if np.ndim(z_in) == 0 else out


def schur_eval(alpha, z):
    """f(z) from finitely many Schur parameters (zero tail), by the backward
    continued fraction f_k = (a_k + z f_{k+1}) / (1 + z conj(a_k) f_{k+1})."""
    alpha = as_verblunsky(alpha)
    zz = _check_disk(z)
    f = np.zeros_like(zz)
    for a in alpha[::-1]:
        f = (a + zz * f) / (1.0 + zz * np.conj(a) * f)
    return _scalar(z, f)


def caratheodory_eval(alpha, z):
    zz = _check_disk(z)
    zf = zz * schur_eval(alpha, zz)
    return _scalar(z, (1.0 + zf) / (1.0 - zf))


def caratheodory_from_measure(
    weight: BernsteinSzegoWeight, z: complex, atol: float = ATOL_IDENTITY
) -> complex:
    """F(z) = int (e^{it} + z)/(e^{it} - z) w(t) dt/2pi by quadrature."""
    z = complex(_check_disk(z, 1.0 - 1e-6))

    def integrand(theta):
        e = np.exp(1j * theta)
        return (e + z) / (e - z) * weight(theta)

    return complex(integrate(integrand, atol).value)


def inverse_schur(f: Callable, n: int, r: float = 0.5, m: int = 64) -> np.ndarray:
    """Recover the first n Schur parameters of ``f`` from samples on |z| = r.

    alpha_k is the mean of f_k over the circle (its value at 0) and
    f_{k+1} = (f_k - alpha_k) / (z (1 - conj(alpha_k) f_k)) pointwise.
    """
    z = r * np.exp(1j * grid(m))
    vals = np.asarray(f(z), dtype=complex)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        a = np.mean(vals)
        out[k] = a
        vals = (vals - a) / (z * (1.0 - np.conj(a) * vals))
    return out


# -- relative Szego function ----------------------------------------------


class TaylorA(NamedTuple):
    A0: float
    A1: complex
    A2: complex


def relative_szego_eval(alpha, z):
    """(delta_0 D)(z) = (1 - conj(a_0) f)/rho_0 * (1 - z f_1)/(1 - z f)."""
    alpha = as_verblunsky(alpha)
    zz = _check_disk(z)
    a0 = complex(at(alpha, 0))
    f = schur_eval(alpha, zz)
    f1 = schur_eval(alpha[1:], zz)
    rho0 = np.sqrt(1.0 - abs(a0) ** 2)
    return _scalar(z, (1.0 - np.conj(a0) * f) / rho0 * (1.0 - zz * f1) / (1.0 - zz * f))


def taylor_A(alpha) -> TaylorA:
    """Closed-form A_0, A_1, A_2 of log(delta_0 D).  Works on batches along the last axis."""
    alpha = np.asarray(alpha, dtype=complex)
    a0, a1, a2 = at(alpha, 0), at(alpha, 1), at(alpha, 2)
    m0, m1 = np.abs(a0) ** 2, np.abs(a1) ** 2
    A0 = 0.5 * np.log1p(-m0)
    A1 = a0 - a1 - np.conj(a0) * a1
    A2 = (
        0.5 * a0**2
        - 0.5 * a1**2
        + a1
        - a2
        - a1 * m0
        + a2 * m1
        - np.conj(a0) * a2 * (1.0 - m1)
        + 0.5 * np.conj(a0) ** 2 * a1**2
    )
    return TaylorA(A0, A1, A2)


def contour_log_taylor(values: np.ndarray, r: float, kmax: int) -> np.ndarray:
    """Taylor coefficients 0..kmax of log g from samples of g on |z| = r.

    g must be analytic and zero-free on the closed disk of radius r with
    g(0) > 0.  The phase is tracked along the contour; a nonzero winding
    number raises :class:`BranchError`.
    """
    values = np.asarray(values, dtype=complex)
    m = values.size
    steps = np.angle(np.roll(values, -1) / values)
    winding = np.sum(steps) / TWO_PI
    if abs(winding) > 0.5:
        raise BranchError(f"log winds {winding:.3f} times around 0 on |z| = {r}")
    phase = np.angle(values[0]) + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    # the mean of the phase is arg g(0) = 0 on the analytic branch
    phase -= TWO_PI * np.round(np.mean(phase) / TWO_PI)
    logs = np.log(np.abs(values)) + 1j * phase
    k = np.arange(kmax + 1)
    phi = grid(m)
    return np.exp(-1j * np.outer(k, phi)) @ logs / m / r**k


def taylor_A_numeric(alpha, r: float = 0.25, m: int = 256) -> TaylorA:
    """A_0, A_1, A_2 by discrete Fourier analysis of log(delta_0 D) on |z| = r."""
    z = r * np.exp(1j * grid(m))
    c = contour_log_taylor(relative_szego_eval(alpha, z), r, 2)
    return TaylorA(float(c[0].real), complex(c[1]), complex(c[2]))


# -- Fourier data of log w -------------------------------------------------


def log_weight_fourier(
    weight: BernsteinSzegoWeight, kmax: int, r: float = 0.5, atol: float = ATOL_IDENTITY
) -> IntegralResult:
    """Fourier coefficients b_0..b_kmax of log w on the unit circle.

    log w = log prod rho^2 - 2 Re log Phi^*, and log Phi^* is analytic on a
    disk of radius > 1, so its Taylor coefficients c_k come from an interior
    contour where the trapezoidal rule converges like r^m no matter how close
    the zeros of Phi^* sit to the circle.  Then b_0 = log prod rho^2 - 2 Re c_0
    and b_k = -c_k.
    """
    k = np.arange(kmax + 1)
    scale = float(r) ** -k

    def integrand(phi):
        logs = weight.log_phi_star(r * np.exp(1j * phi))
        return logs[:, None] * np.exp(-1j * np.outer(phi, k)) * scale

    res = periodic_mean(integrand, atol, m0=32)
    c = np.atleast_1d(res.value)
    b = -c
    b[0] = weight.log_rho_product - 2.0 * c[0].real
    return IntegralResult(b, res.est_error, res.m_used)


def _two_sided(b: np.ndarray, d: int) -> np.ndarray:
    """Coefficients k = -d..d of a real function from its k >= 0 half."""
    return np.concatenate((np.conj(b[d:0:-1]), b[: d + 1]))


def profile_mean(profile: SingularityProfile, b: np.ndarray) -> float:
    """int P Q dtheta/2pi from the coefficients b_0..b_d of a real Q, d = profile.order."""
    d = profile.order
    p = profile.fourier_coefficients()
    q = _two_sided(np.asarray(b)[: d + 1], d)
    # sum_k p_k Qhat_{-k}
    return float(np.real(np.sum(p * q[::-1])))


def bs_entropy(
    profile: SingularityProfile,
    weight: BernsteinSzegoWeight,
    reference: BernsteinSzegoWeight | None = None,
    atol: float = ATOL_IDENTITY,
) -> IntegralResult:
    """int P(theta) log(w / w_ref)(theta) dtheta/2pi for a profile weight P.

    P is a trigonometric polynomial of degree d = profile.order, so only the
    Fourier coefficients |k| <= d of log w enter (see log_weight_fourier).
    """
    d = profile.order
    res = log_weight_fourier(weight, d, atol=atol)
    b, err, m = res.value, res.est_error, res.m_used
    if reference is not None:
        ref = log_weight_fourier(reference, d, atol=atol)
        b = b - ref.value
        err, m = err + ref.est_error, max(m, ref.m_used)
    scale = float(np.sum(np.abs(profile.fourier_coefficients())))
    return IntegralResult(profile_mean(profile, b), scale * err, m)


def log_ratio_fourier(
    alpha, n: int, ks=(0, 1, 2, -1, -2), atol: float = ATOL_IDENTITY
) -> IntegralResult:
    """Fourier coefficients of log(w / w_1) for the order-n truncation, by quadrature."""
    w = BernsteinSzegoWeight.from_sequence(alpha, n)
    w1 = BernsteinSzegoWeight.from_sequence(alpha, n, start=1)
    ks = np.asarray(ks)

    def integrand(theta):
        q = w.log_eval(theta) - w1.log_eval(theta)
        return q[:, None] * np.exp(-1j * np.outer(theta, ks))

    return integrate(integrand, atol)


def step_fourier_check(alpha, n: int, atol: float = ATOL_IDENTITY) -> float:
    """Max deviation of the m = 0, +-1, +-2 Fourier coefficients of log(w/w_1)
    from (2 A_0, A_1, A_2, conj A_1, conj A_2)."""
    alpha = as_verblunsky(alpha)
    got = log_ratio_fourier(alpha, n, atol=atol).value
    A0, A1, A2 = taylor_A(pad(alpha, n))
    want = np.array([2 * A0, A1, A2, np.conj(A1), np.conj(A2)])
    return float(np.max(np.abs(got - want)))


def relative_szego_from_measure(alpha, z: complex, atol: float = ATOL_IDENTITY) -> complex:
    """exp of half the Poisson-type transform of log(w / w_1).

    The FFT route doubles the grid until two successive transforms agree to
    ``atol``.  Past AUTO_GRID nodes the kernel integral is handed to adaptive
    subdivision instead, which copes with zeros of Phi^* hugging the circle.
    """
    alpha = as_verblunsky(alpha)
    z = complex(_check_disk(z, 1.0 - 1e-6))
    w = BernsteinSzegoWeight(alpha)
    w1 = BernsteinSzegoWeight(alpha[1:])

    def log_ratio(theta):
        return w.log_eval(theta) - w1.log_eval(theta)

    m = MIN_GRID
    prev = None
    while m <= AUTO_GRID:
        cur = poisson_transform(PeriodicSamples(log_ratio(grid(m))), z)
        if prev is not None and abs(cur - prev) < atol:
            return complex(np.exp(0.5 * cur))
        prev = cur
        m *= 2

    def integrand(theta):
        e = np.exp(1j * theta)
        return (e + z) / (e - z) * log_ratio(theta)

    return complex(np.exp(0.5 * adaptive_mean(integrand, atol).value))
