"""Verblunsky sequences, test families and the discrete difference calculus.

Sequences are plain 1-D complex numpy arrays.  Every sequence is implicitly
zero beyond its stored length; helpers that read past the end (``at``,
``pad``) honour that convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, DiskGuardError

DISK_GUARD = 1.0 - 1e-12
TWO_PI = 2.0 * math.pi


def as_sequence(values) -> np.ndarray:
    """Copy ``values`` into a read-only 1-D complex array."""
    arr = np.array(values, dtype=complex).reshape(-1)
    arr.setflags(write=False)
    return arr


def as_verblunsky(values, bound: float = DISK_GUARD) -> np.ndarray:
    """Like :func:`as_sequence` but reject any entry with modulus above ``bound``."""
    arr = as_sequence(values)
    bad = np.flatnonzero(~(np.abs(arr) <= bound))
    if bad.size:
        k = int(bad[0])
        raise DiskGuardError(k, complex(arr[k]), bound)
    return arr


def rho(alpha) -> np.ndarray:
    """rho_j = sqrt(1 - |alpha_j|^2)."""
    return np.sqrt(1.0 - np.abs(np.asarray(alpha)) ** 2)


def pad(seq, n: int) -> np.ndarray:
    """Zero-extend (or truncate) along the last axis to length ``n``."""
    seq = np.asarray(seq, dtype=complex)
    cur = seq.shape[-1]
    if cur >= n:
        return seq[..., :n]
    width = [(0, 0)] * (seq.ndim - 1) + [(0, n - cur)]
    return np.pad(seq, width)


def at(seq, j: int) -> np.ndarray:
    """Entry ``j`` along the last axis, 0 past the end."""
    seq = np.asarray(seq)
    if j < seq.shape[-1]:
        return seq[..., j]
    return np.zeros(seq.shape[:-1], dtype=complex)


def random_disk(rng: np.random.Generator, shape, radius: float) -> np.ndarray:
    """Points uniformly distributed in the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(size=shape))
    phase = rng.uniform(0.0, TWO_PI, size=shape)
    return r * np.exp(1j * phase)


# -- difference operators -------------------------------------------------


def shift(seq, k: int = 1) -> np.ndarray:
    """(delta^k seq)_j = seq_{j+k}; the result is k entries shorter."""
    return np.asarray(seq, dtype=complex)[..., k:]


def partial(seq, order: int = 1) -> np.ndarray:
    """Forward difference ``(delta - 1)^order`` on the zero-extended sequence.

    Indices run over j >= 0 only and the result keeps the input length,
    which is enough to hold every nonzero entry.
    """
    seq = np.asarray(seq, dtype=complex)
    n = seq.shape[-1]
    out = pad(seq, n + order)
    for _ in range(order):
        out = out[..., 1:] - out[..., :-1]
    return out[..., :n]


def factored_difference(seq, profile: "SingularityProfile") -> np.ndarray:
    """Apply prod_k (delta - e^{-i theta_k})^{m_k} to ``seq``.

    Each first-order factor shortens the sequence by one (no zero-extension
    past the stored data), so the output has length ``N - profile.order``,
    clamped at 0.
    """
    out = np.asarray(seq, dtype=complex)
    for theta, mult in profile.points:
        c = np.exp(-1j * theta)
        for _ in range(mult):
            if out.shape[-1] == 0:
                return out
            out = out[..., 1:] - c * out[..., :-1]
    return out


def gauge_rotate(seq, theta1: float, theta2: float) -> np.ndarray:
    """beta_j = alpha_j exp(i (theta1 + theta2) j / 2)."""
    seq = np.asarray(seq, dtype=complex)
    j = np.arange(seq.shape[-1])
    return seq * np.exp(0.5j * (theta1 + theta2) * j)


def lp_partial_sums(seq, p: float) -> np.ndarray:
    if p <= 0:
        raise ValueError("p must be positive")
    return np.cumsum(np.abs(np.asarray(seq)) ** p)


# -- singularity profiles -------------------------------------------------


@dataclass(frozen=True)
class SingularityProfile:
    """Points theta_k with multiplicities m_k of prod (1 - cos(theta - theta_k))^{m_k}."""

    points: tuple[tuple[float, int], ...]

    def __post_init__(self):
        pts = []
        for theta, mult in self.points:
            if int(mult) != mult or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            pts.append((float(theta) % TWO_PI, int(mult)))
        if not pts:
            raise ValueError("a profile needs at least one point")
        for i in range(len(pts)):
            for k in range(i):
                gap = abs(pts[i][0] - pts[k][0])
                if min(gap, TWO_PI - gap) < 1e-12:
                    raise ValueError(f"repeated angle {pts[i][0]!r} in profile")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def parse(cls, text: str) -> "SingularityProfile":
        """Parse ``"theta:mult,theta:mult"`` with theta in radians."""
        pts = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                theta, mult = item.split(":")
                pts.append((float(theta), int(mult)))
            except ValueError as exc:
                raise ValueError(f"bad profile entry {item!r}") from exc
        return cls(tuple(pts))

    @classmethod
    def coerce(cls, obj) -> "SingularityProfile":
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(tuple((float(t), int(m)) for t, m in obj))

    @property
    def order(self) -> int:
        return sum(m for _, m in self.points)

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.points)

    def weight(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        out = np.ones_like(theta)
        for t, m in self.points:
            out = out * (1.0 - np.cos(theta - t)) ** m
        return out

    def fourier_coefficients(self) -> np.ndarray:
        """Laurent coefficients p_k, k = -d..d, of the weight (index k + d)."""
        coef = np.array([1.0 + 0j])
        for t, m in self.points:
            # 1 - cos(theta - t) = 1 - e^{-it}/2 e^{i theta} - e^{it}/2 e^{-i theta}
            factor = np.array([-0.5 * np.exp(1j * t), 1.0, -0.5 * np.exp(-1j * t)])
            for _ in range(m):
                coef = np.convolve(coef, factor)
        return coef

    def to_text(self) -> str:
        return ",".join(f"{t!r}:{m}" for t, m in self.points)


ANTIPODAL = SingularityProfile(((0.0, 1), (math.pi, 1)))
DOUBLE_AT_ZERO = SingularityProfile(((0.0, 2),))


# -- test families --------------------------------------------------------

FAMILY_KINDS = ("zero", "geometric", "power", "modal", "random")


@dataclass(frozen=True)
class FamilySpec:
    """Parametric generator of Verblunsky sequences.

    kinds and their parameters:

    * ``zero``
    * ``geometric``: alpha_j = c * lam**j
    * ``power``: alpha_j = c (j+1)^{-p} e^{i omega j}
    * ``modal``: alpha_j = (j+1)^{-p} sum_k c_k e^{-i j theta_k}; each mode
      theta_k puts a singular point of the weight at theta_k
    * ``random``: uniform in the disk of radius ``radius``, seeded
    """

    kind: str
    length: int
    c: complex = 0.0
    lam: complex = 1.0
    p: float = 0.0
    omega: float = 0.0
    modes: tuple[tuple[complex, float], ...] = field(default=())
    seed: int = 0
    radius: float = 0.5

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ConfigError(f"unknown family kind {self.kind!r}")
        if int(self.length) != self.length or self.length < 0:
            raise ConfigError(f"length must be a nonnegative integer, got {self.length!r}")
        object.__setattr__(self, "length", int(self.length))
        object.__setattr__(
            self, "modes", tuple((complex(c), float(t)) for c, t in self.modes)
        )
        if self.kind == "modal" and sum(abs(c) for c, _ in self.modes) > DISK_GUARD:
            raise ConfigError("modal family needs sum |c_k| <= 1 - 1e-12")
        if self.kind == "random" and not 0 <= self.radius <= DISK_GUARD:
            raise ConfigError(f"random radius {self.radius!r} outside [0, 1)")

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        d = dict(d)
        for key in ("c", "lam"):
            if isinstance(d.get(key), (list, tuple)):
                d[key] = complex(*d[key])
        if "modes" in d:
            d["modes"] = tuple(
                (complex(*c) if isinstance(c, (list, tuple)) else c, t)
                for c, t in d["modes"]
            )
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def with_length(self, length: int) -> "FamilySpec":
        return FamilySpec(**{**self.__dict__, "length": length})


def generate(spec: FamilySpec) -> np.ndarray:
    j = np.arange(spec.length, dtype=float)
    if spec.kind == "zero":
        vals = np.zeros(spec.length, dtype=complex)
    elif spec.kind == "geometric":
        vals = spec.c * complex(spec.lam) ** j
    elif spec.kind == "power":
        vals = spec.c * (j + 1.0) ** (-spec.p) * np.exp(1j * spec.omega * j)
    elif spec.kind == "modal":
        vals = np.zeros(spec.length, dtype=complex)
        for c, theta in spec.modes:
            vals = vals + c * np.exp(-1j * theta * j)
        vals = vals * (j + 1.0) ** (-spec.p)
    else:
        rng = np.random.default_rng(spec.seed)
        vals = random_disk(rng, spec.length, spec.radius)
    return as_verblunsky(vals)


# -- sequence files -------------------------------------------------------


def load_sequence(path) -> np.ndarray:
    """Read a JSON array of ``[re, im]`` pairs."""
    data = json.loads(Path(path).read_text())
    try:
        vals = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: expected an array of [re, im] pairs") from exc
    return as_verblunsky(vals)


def dump_sequence(seq: Sequence[complex], path) -> None:
    pairs = [[float(z.real), float(z.imag)] for z in np.asarray(seq, dtype=complex)]
    Path(path).write_text(json.dumps(pairs) + "\n")
