"""Checkers for the discrete calculus behind the sum rules.

Sequences are indexed from 0 and zero-extended to the right; ``d`` denotes the
forward difference delta - 1.  Each checker returns the two sides of its
inequality so callers can inspect the slack, not just a flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sumrules import antipodal_terms, order2_terms
from .verblunsky import as_sequence, pad, partial, shift

ROUNDOFF = 1e-13

# explicit constants for the sixth-order bounds, valid when |alpha_j| < 1/2:
# -B_j = (1/2) sum_{k>=3} x^k / k with x = |alpha_j|^2 <= 1/4, and that tail
# lies in [x^3/3, 4 x^3/9]
C1, C2 = 1.0 / 6.0, 2.0 / 9.0
D1, D2 = 3.0 * C1, 3.0 * C2


@dataclass(frozen=True)
class InequalityReport:
    """lhs <= rhs, up to a roundoff allowance; arrays are checked elementwise."""

    lhs: float | np.ndarray
    rhs: float | np.ndarray

    @property
    def slack(self):
        return np.asarray(self.rhs) - np.asarray(self.lhs)

    @property
    def holds(self) -> bool:
        return bool(np.all(np.asarray(self.lhs) <= np.asarray(self.rhs) + ROUNDOFF))

    @property
    def violations(self) -> int:
        return int(np.count_nonzero(~(np.asarray(self.lhs) <= np.asarray(self.rhs) + ROUNDOFF)))


def _ext(seq, extra: int = 1) -> np.ndarray:
    seq = np.asarray(seq, dtype=complex)
    return pad(seq, seq.shape[-1] + extra)


def leibniz_check(f, g) -> float:
    """max |d(fg) - (delta f) dg - (df) g| over the common zero-extended support."""
    n = max(np.shape(f)[-1], np.shape(g)[-1])
    if n == 0:
        return 0.0
    f, g = pad(f, n + 1), pad(g, n + 1)
    lhs = partial(f * g)
    rhs = shift(f)[..., :n] * partial(g)[..., :n] + partial(f)[..., :n] * g[..., :n]
    return float(np.max(np.abs(lhs[..., :n] - rhs)))


def kato_check(f) -> InequalityReport:
    """|d|f||_j <= |df|_j for every j."""
    f = _ext(f)
    return InequalityReport(np.abs(partial(np.abs(f)))[..., :-1], np.abs(partial(f))[..., :-1])


def gn_inequality(seq) -> InequalityReport:
    """sum |d alpha|^3 <= 2^{3/2} (sum |alpha|^6)^{1/4} (sum |d^2 alpha|^2)^{3/4}."""
    a = _ext(seq, 2)
    lhs = np.sum(np.abs(partial(a)) ** 3, axis=-1)
    rhs = (
        2.0**1.5
        * np.sum(np.abs(a) ** 6, axis=-1) ** 0.25
        * np.sum(np.abs(partial(a, 2)) ** 2, axis=-1) ** 0.75
    )
    return InequalityReport(lhs, rhs)


def quartic_gap_bound(seq) -> InequalityReport:
    """sum |alpha|^2 |delta^2 alpha - alpha|^2 <= 4 ||alpha||_6^2 ||d alpha||_3^2."""
    a = _ext(seq, 2)
    n = a.shape[-1]
    jump = pad(shift(a, 2), n) - a
    lhs = np.sum(np.abs(a) ** 2 * np.abs(jump) ** 2, axis=-1)
    l6 = np.sum(np.abs(a) ** 6, axis=-1) ** (1.0 / 6.0)
    l3 = np.sum(np.abs(partial(a)) ** 3, axis=-1) ** (1.0 / 3.0)
    return InequalityReport(lhs, 4.0 * l6**2 * l3**2)


def summation_by_parts_residual(seq) -> float:
    """|sum |d alpha|^3 + sum (delta alpha)_n [d{(d conj alpha)|d alpha|}]_n|.

    Uses the two-sided zero embedding, so no boundary term survives.
    """
    a = as_sequence(seq)
    ext = np.concatenate((np.zeros(2), a, np.zeros(3)))
    da = ext[1:] - ext[:-1]
    u = np.conj(da) * np.abs(da)
    du = u[1:] - u[:-1]
    lhs = np.sum(np.abs(da) ** 3)
    rhs = -np.sum(ext[1:-1] * du)
    return float(abs(lhs - rhs))


def _index_range(seq):
    return np.arange(max(np.shape(seq)[-1], 1))


def lemma33_bounds(seq) -> dict[str, InequalityReport]:
    """Boundedness of F, G, the sixth-order size of B and the quartic size of D.

    The B bound is only checked at indices with |alpha_j| < 1/2; elsewhere
    both sides are set to 0.
    """
    a = np.asarray(seq, dtype=complex)
    t = antipodal_terms(a, _index_range(a))
    x = np.abs(pad(a, t.B.shape[-1]))
    y = np.abs(_ext(a)[..., 1 : t.B.shape[-1] + 1])
    small = x < 0.5
    quartic = x**4 + y**4
    return {
        "|F_j| <= 13/8": InequalityReport(np.abs(t.F), np.full(t.F.shape, 13.0 / 8.0)),
        "|G_j| <= 1/4": InequalityReport(np.abs(t.G), np.full(t.G.shape, 0.25)),
        "c1 |alpha_j|^6 <= -B_j": InequalityReport(np.where(small, C1 * x**6, 0.0), np.where(small, -t.B, 0.0)),
        "-B_j <= c2 |alpha_j|^6": InequalityReport(np.where(small, -t.B, 0.0), np.where(small, C2 * x**6, 0.0)),
        "quartic <= -8 D_j": InequalityReport(quartic, -8.0 * t.D),
        "-8 D_j <= 4 quartic": InequalityReport(-8.0 * t.D, 4.0 * quartic),
    }


def lemma43_bounds(seq) -> dict[str, InequalityReport]:
    """Bounds on the sign-definite double-point terms and the quartic gap bound.

    The report for |Kt_j| also serves as a diagnostic of how loose 47/8 is.
    """
    a = np.asarray(seq, dtype=complex)
    t = order2_terms(a, _index_range(a))
    x = np.abs(pad(a, t.Ht.shape[-1]))
    small = x < 0.5
    return {
        "|Kt_j| <= 47/8": InequalityReport(np.abs(t.Kt), np.full(t.Kt.shape, 47.0 / 8.0)),
        "|Lt_j| <= 1/4": InequalityReport(np.abs(t.Lt), np.full(t.Lt.shape, 0.25)),
        "d1 |alpha_j|^6 <= -Ht_j": InequalityReport(np.where(small, D1 * x**6, 0.0), np.where(small, -t.Ht, 0.0)),
        "-Ht_j <= d2 |alpha_j|^6": InequalityReport(np.where(small, -t.Ht, 0.0), np.where(small, D2 * x**6, 0.0)),
        "Jt_j <= 0": InequalityReport(t.Jt, np.zeros(t.Jt.shape)),
        "quartic gap": quartic_gap_bound(a),
    }


def epsilon_lemma(beta0, beta1, beta2, a) -> InequalityReport:
    """(1/2) eps^4 |b1|^4 <= |b1|^2 |gamma|^2 + |b2^2 - b1^2|^2/2 + |b1^2 - b0^2|^2/2.

    gamma = b2 - 2 a b1 + b0 and eps = min(2|a|, 2 - 2|a|)/3.  Vectorised
    over all arguments.
    """
    a = np.asarray(a, dtype=float)
    if np.any(a == 0) or np.any(np.abs(a) >= 1):
        raise ValueError("a must lie in (-1, 1) without 0")
    b0, b1, b2 = (np.asarray(b, dtype=complex) for b in (beta0, beta1, beta2))
    eps = np.minimum(2.0 * np.abs(a), 2.0 - 2.0 * np.abs(a)) / 3.0
    gamma = b2 - 2.0 * a * b1 + b0
    rhs = (
        np.abs(b1) ** 2 * np.abs(gamma) ** 2
        + 0.5 * np.abs(b2**2 - b1**2) ** 2
        + 0.5 * np.abs(b1**2 - b0**2) ** 2
    )
    return InequalityReport(0.5 * eps**4 * np.abs(b1) ** 4, rhs)
