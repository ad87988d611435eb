"""Step-by-step sum rules: term families, one-step identities and iterated ledgers.

All term evaluators read alpha_j, alpha_{j+1}, alpha_{j+2} with zero-extension
and accept batches of sequences stacked along the leading axes (the index runs
along the last axis).  The one-step identities are purely algebraic; the
iterated ledgers compare against a quadrature of the weighted entropy of
log(w / w_m), where w_m is the weight of the m-times stripped sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .opuc_core import BernsteinSzegoWeight, taylor_A
from .quadrature import ATOL_IDENTITY, IntegralResult, entropy_functional
from .verblunsky import (
    ANTIPODAL,
    DOUBLE_AT_ZERO,
    SingularityProfile,
    as_sequence,
    as_verblunsky,
    factored_difference,
    gauge_rotate,
    pad,
)

ROUNDOFF = 1e-13


def _window(seq, j):
    """(alpha_j, alpha_{j+1}, alpha_{j+2}) with zero-extension; j int or array."""
    seq = np.asarray(seq, dtype=complex)
    jj = np.asarray(j)
    if np.any(jj < 0):
        raise ValueError("term index must be nonnegative")
    ext = pad(seq, max(int(np.max(jj)) + 3, seq.shape[-1]))
    return ext[..., jj], ext[..., jj + 1], ext[..., jj + 2]


def _sq(x):
    return x.real**2 + x.imag**2


_SERIES_K = np.arange(1, 41)


def log_tail(x, order: int):
    """log(1 - x) + sum_{k<=order} x^k / k = -sum_{k>order} x^k / k, for 0 <= x < 1.

    Small x uses the series, which keeps the sign and relative accuracy that
    the closed form loses to cancellation.
    """
    x = np.asarray(x, dtype=float)
    k = _SERIES_K[order:]
    series = -np.sum(x[..., None] ** k / k, axis=-1)
    closed = np.log1p(-x) + np.sum(x[..., None] ** _SERIES_K[:order] / _SERIES_K[:order], axis=-1)
    return np.where(x < 0.25, series, closed)


# -- antipodal profile {0, pi} ---------------------------------------------


class AntipodalTerms(NamedTuple):
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    F: np.ndarray
    G: np.ndarray


def antipodal_terms(seq, j) -> AntipodalTerms:
    x, y, z = _window(seq, j)
    ax, ay = _sq(x), _sq(y)
    B = 0.5 * log_tail(ax, 2)
    C = -0.25 * (1.0 - ay) * _sq(x - z)
    D = -0.125 * (_sq(y**2 + x**2) + 4.0 * ax * ay)
    F = -0.5 * np.real(0.5 * x**2 + y - y * ax) + 0.25 * ay * ax - 0.125 * ax**2
    G = -0.25 * ax
    return AntipodalTerms(B, C, D, F, G)


def antipodal_lhs(seq):
    """A_0 - Re(A_2)/2, the one-step entropy for the antipodal profile."""
    A = taylor_A(seq)
    return A.A0 - 0.5 * np.real(A.A2)


def antipodal_identity(seq):
    """|A_0 - Re A_2 / 2 - (B_0 + C_0 + D_0 + F_0 - F_1 + G_0 - G_2)|."""
    t = antipodal_terms(seq, np.arange(3))
    rhs = (
        t.B[..., 0] + t.C[..., 0] + t.D[..., 0]
        + t.F[..., 0] - t.F[..., 1]
        + t.G[..., 0] - t.G[..., 2]
    )
    return np.abs(antipodal_lhs(seq) - rhs)


# -- double point at theta = 0 ---------------------------------------------


class Order2Terms(NamedTuple):
    H: np.ndarray
    I: np.ndarray
    J: np.ndarray
    K: np.ndarray
    L: np.ndarray
    Ht: np.ndarray
    It: np.ndarray
    Jt: np.ndarray
    Kt: np.ndarray
    Lt: np.ndarray


def order2_terms(seq, j) -> Order2Terms:
    """Both decompositions; the ``t`` fields are the sign-definite variants."""
    x, y, z = _window(seq, j)
    ax, ay = _sq(x), _sq(y)
    H = 1.5 * log_tail(ax, 1)
    I = -0.25 * _sq(z - 2.0 * y + x)
    J = 0.5 * np.real(x * np.conj(z)) * ay + 0.25 * np.real(np.conj(x) ** 2 * y**2)
    K = (
        -2.0 * x.real
        + 0.25 * np.real(x**2)
        + 0.5 * y.real
        - 0.5 * (y * ax).real
        + np.real(np.conj(y) * x)
        - ax
    )
    L = -0.25 * ax
    Ht = 1.5 * log_tail(ax, 2)
    Jt = -0.25 * ay * _sq(x - z) - 0.125 * _sq(y**2 - x**2) - 0.25 * (ay - ax) ** 2
    Kt = K - 0.375 * ax**2 - 0.25 * ay * ax
    return Order2Terms(H, I, J, K, L, Ht, I, Jt, Kt, L)


def order2_lhs(seq):
    """3 A_0 - 2 Re A_1 + Re(A_2)/2, the one-step entropy for (1 - cos)^2."""
    A = taylor_A(seq)
    return 3.0 * A.A0 - 2.0 * np.real(A.A1) + 0.5 * np.real(A.A2)


def order2_identity(seq):
    """Residuals of the plain and the sign-definite decomposition."""
    t = order2_terms(seq, np.arange(3))
    lhs = order2_lhs(seq)

    def rhs(H, I, J, K, L):
        return (
            H[..., 0] + I[..., 0] + J[..., 0]
            + K[..., 0] - K[..., 1]
            + L[..., 0] - L[..., 2]
        )

    plain = rhs(t.H, t.I, t.J, t.K, t.L)
    tilde = rhs(t.Ht, t.It, t.Jt, t.Kt, t.Lt)
    return np.abs(lhs - plain), np.abs(lhs - tilde)


# -- iterated ledgers --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SumRuleLedger:
    """Quadrature side, named algebraic terms, and their difference."""

    lhs: IntegralResult
    rhs_terms: dict
    residual: float

    @classmethod
    def build(cls, lhs: IntegralResult, terms: dict) -> "SumRuleLedger":
        terms = {k: float(v) for k, v in terms.items()}
        return cls(lhs, terms, float(lhs.value) - math.fsum(terms.values()))

    @property
    def rhs(self) -> float:
        return math.fsum(self.rhs_terms.values())


def stripped_entropy(seq, m: int, profile: SingularityProfile, atol: float = ATOL_IDENTITY):
    """int P log(w / w_m) dtheta/2pi by quadrature on the unit circle."""
    seq = as_verblunsky(seq)
    w = BernsteinSzegoWeight(seq)
    wm = BernsteinSzegoWeight(seq[m:])

    def log_ratio(theta):
        return w.log_eval(theta) - wm.log_eval(theta)

    return entropy_functional(log_ratio, profile, atol, log=True)


def _antipodal_rhs(seq, m):
    t = antipodal_terms(seq, np.arange(m + 2))
    return {
        "F_0 - F_m": t.F[..., 0] - t.F[..., m],
        "G_0 + G_1 - G_m - G_m+1": t.G[..., 0] + t.G[..., 1] - t.G[..., m] - t.G[..., m + 1],
        "sum B": np.sum(t.B[..., :m], axis=-1),
        "sum C": np.sum(t.C[..., :m], axis=-1),
        "sum D": np.sum(t.D[..., :m], axis=-1),
    }


def _order2_rhs(seq, m):
    t = order2_terms(seq, np.arange(m + 2))
    return {
        "Kt_0 - Kt_m": t.Kt[..., 0] - t.Kt[..., m],
        "Lt_0 + Lt_1 - Lt_m - Lt_m+1": t.Lt[..., 0] + t.Lt[..., 1] - t.Lt[..., m] - t.Lt[..., m + 1],
        "sum Ht": np.sum(t.Ht[..., :m], axis=-1),
        "sum It": np.sum(t.It[..., :m], axis=-1),
        "sum Jt": np.sum(t.Jt[..., :m], axis=-1),
    }


def antipodal_iterated(seq, m: int, atol: float = ATOL_IDENTITY) -> SumRuleLedger:
    """m steps of the antipodal sum rule against the (1 - cos^2) entropy of log(w/w_m)."""
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and at least 2, got {m}")
    seq = as_verblunsky(seq)
    lhs = stripped_entropy(seq, m, ANTIPODAL, atol)
    return SumRuleLedger.build(lhs, _antipodal_rhs(seq, m))


def order2_iterated(seq, m: int, atol: float = ATOL_IDENTITY) -> SumRuleLedger:
    """m steps of the sign-definite (1 - cos)^2 sum rule against quadrature."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    seq = as_verblunsky(seq)
    lhs = stripped_entropy(seq, m, DOUBLE_AT_ZERO, atol)
    return SumRuleLedger.build(lhs, _order2_rhs(seq, m))


def telescoping_residuals(seq, m: int) -> tuple[float, float]:
    """Sum of m one-step left sides minus the iterated right sides, no quadrature."""
    seq = as_sequence(seq)
    ext = pad(seq, max(seq.size, m + 3))
    anti = math.fsum(float(antipodal_lhs(ext[k:])) for k in range(m))
    dbl = math.fsum(float(order2_lhs(ext[k:])) for k in range(m))
    r1 = anti - math.fsum(float(v) for v in _antipodal_rhs(seq, m).values())
    r2 = dbl - math.fsum(float(v) for v in _order2_rhs(seq, m).values())
    return abs(r1), abs(r2)


# -- two distinct points -----------------------------------------------------


def _distinct(theta1, theta2):
    gap = (theta1 - theta2) % (2.0 * math.pi)
    if min(gap, 2.0 * math.pi - gap) < 1e-12:
        raise ValueError("the two singular points must be distinct mod 2 pi")


def twopoint_I1(seq, theta1: float, theta2: float):
    """One-step entropy of log(w / w_1) for [1 - cos(t - t1)][1 - cos(t - t2)].

    The constant Fourier mode of the profile is 1 + cos(t1 - t2)/2 and it
    multiplies the zeroth coefficient 2 A_0 of log(w / w_1).
    """
    _distinct(theta1, theta2)
    A = taylor_A(seq)
    e1, e2 = np.exp(1j * theta1), np.exp(1j * theta2)
    return (
        (4.0 + 2.0 * math.cos(theta1 - theta2)) / 4.0 * 2.0 * A.A0
        - np.real((e1 + e2) * A.A1)
        + 0.5 * np.real(e1 * e2 * A.A2)
    )


TWOPOINT_SUMS = ("log series", "gamma", "shifted gamma", "square difference", "quartic")


@dataclass(frozen=True, eq=False)
class TwoPointData:
    """Rotated sequence beta, second differences gamma and the five ledger sums."""

    a: float
    beta: np.ndarray
    gamma: np.ndarray
    sums: dict

    @classmethod
    def of(cls, seq, theta1: float, theta2: float, m: int) -> "TwoPointData":
        _distinct(theta1, theta2)
        a = math.cos(0.5 * (theta1 - theta2))
        beta = gauge_rotate(pad(seq, m + 2), theta1, theta2)
        x, y, z = beta[:m], beta[1 : m + 1], beta[2 : m + 2]
        gamma = z - 2.0 * a * y + x
        ax, ay = _sq(x), _sq(y)
        vals = (
            (0.5 + a * a) * math.fsum(log_tail(ax, 2)),
            -0.25 * math.fsum((1.0 - ay) * _sq(gamma)),
            -0.25 * math.fsum(ay * _sq(z - 2.0 * a * y)) - 0.25 * math.fsum(ay * _sq(x - 2.0 * a * y)),
            -0.125 * math.fsum(_sq(y**2 - x**2)),
            0.5 * a * a * math.fsum(ax**2),
        )
        return cls(a, beta, gamma, dict(zip(TWOPOINT_SUMS, vals)))


def twopoint_ledger(
    seq, theta1: float, theta2: float, m: int, atol: float = ATOL_IDENTITY
) -> SumRuleLedger:
    """Quadrature of the m-step two-point entropy minus the five explicit sums.

    The residual collects every boundary contribution, so it depends only on
    the first few and the last few coefficients of the window j < m + 2.
    """
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    seq = as_verblunsky(seq)
    data = TwoPointData.of(seq, theta1, theta2, m)
    profile = SingularityProfile(((theta1, 1), (theta2, 1)))
    lhs = stripped_entropy(seq, m, profile, atol)
    return SumRuleLedger.build(lhs, data.sums)


def antipodal_boundary_gap(seq, m: int) -> float:
    """Two-point sums at (0, pi) minus sum_{j<m} (B_j + C_j + D_j).

    Algebraically this equals (|alpha_0 alpha_1|^2 - |alpha_m alpha_m+1|^2) / 4,
    a boundary term from the shifted-gamma sum.
    """
    data = TwoPointData.of(seq, 0.0, math.pi, m)
    t = antipodal_terms(seq, np.arange(m))
    return math.fsum(data.sums.values()) - math.fsum(t.B + t.C + t.D)


# -- general right-hand side and the two-point lower bound --------------------


def rhs_general(seq, profile: SingularityProfile) -> np.ndarray:
    """Partial sums over j of |(prod (delta - e^{-i theta_k})^{m_k} alpha)_j|^2
    + |alpha_j|^{2 max m_k + 2}.

    Differences only use stored entries, so a prefix of an infinite sequence
    contributes no artificial jump at its end.
    """
    profile = SingularityProfile.coerce(profile)
    seq = as_sequence(seq)
    terms = np.abs(seq) ** (2 * profile.max_multiplicity + 2)
    diff = factored_difference(seq, profile)
    terms[: diff.size] += _sq(diff)
    return np.cumsum(terms)


class BoundCheck(NamedTuple):
    holds: bool
    slack: float


def lower_bound_check(
    seq, theta1: float, theta2: float, m: int, atol: float = ATOL_IDENTITY
) -> BoundCheck:
    """I_m <= C + (1/32) eps^4 S4 - (1/8) sum |gamma_j|^2 - (1/16) eps^4 S4.

    C is the two-point ledger residual, S4 = sum_{j<m} |alpha_j|^4 and
    eps = min(2|a|, 2 - 2|a|) / 3.  The (1/32) eps^4 S4 term is the explicit
    bound on the sixth-order remainder, valid when sup |alpha_j| <= 1/2.
    """
    seq = as_verblunsky(seq)
    if seq.size and np.max(np.abs(seq)) > 0.5:
        raise ValueError("lower bound check needs sup |alpha_j| <= 1/2")
    _distinct(theta1, theta2)
    a = math.cos(0.5 * (theta1 - theta2))
    if abs(a) < 1e-12:
        raise ValueError("a = cos((theta1 - theta2)/2) must be nonzero")
    eps = min(2.0 * abs(a), 2.0 - 2.0 * abs(a)) / 3.0
    ledger = twopoint_ledger(seq, theta1, theta2, m, atol)
    data = TwoPointData.of(seq, theta1, theta2, m)
    s4 = math.fsum(np.abs(pad(seq, m)) ** 4)
    rhs = (
        ledger.residual
        + eps**4 * s4 / 32.0
        - 0.125 * math.fsum(_sq(data.gamma))
        - eps**4 * s4 / 16.0
    )
    slack = rhs - float(ledger.lhs.value)
    return BoundCheck(bool(slack >= -ROUNDOFF), slack)
