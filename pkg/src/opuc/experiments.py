"""Seeded identity suites, convergence tables and report files.

Tables have one row per truncation order n.  The weighted and unweighted
entropies of the order-n weight come from its Fourier data on an interior
contour (see ``log_weight_fourier``), which stays accurate when zeros of Phi_n^*
approach the unit circle as n grows.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, DiskGuardError, OPUCError
from .inequalities import (
    epsilon_lemma,
    gn_inequality,
    kato_check,
    leibniz_check,
    lemma33_bounds,
    lemma43_bounds,
)
from .opuc_core import BernsteinSzegoWeight, log_weight_fourier, profile_mean
from .quadrature import ATOL_EXPERIMENT
from .sumrules import (
    antipodal_identity,
    order2_identity,
    rhs_general,
    stripped_entropy,
    twopoint_I1,
    twopoint_ledger,
)
from .verblunsky import FamilySpec, SingularityProfile, generate, load_sequence, pad, random_disk

# quadrature-backed checks run on a capped subset; their floor is the
# quadrature tolerance rather than roundoff
QUAD_CASES = 10
QUAD_FLOOR = 1e-9
COLUMNS = ("n", "entropy_value", "szego_value", "rhs_partial", "quad_error")


@dataclass(frozen=True)
class ExperimentConfig:
    family: FamilySpec | None
    profile: SingularityProfile
    n_values: tuple[int, ...]
    atol: float = ATOL_EXPERIMENT
    output_path: Path | None = None
    format: str = "csv"
    alpha_file: Path | None = None

    def __post_init__(self):
        n = tuple(self.n_values)
        if not n:
            raise ConfigError("n_values must not be empty")
        if any(int(k) != k or k < 1 for k in n):
            raise ConfigError(f"n_values must be positive integers, got {n}")
        if any(b <= a for a, b in zip(n, n[1:])):
            raise ConfigError(f"n_values must be strictly increasing, got {n}")
        object.__setattr__(self, "n_values", tuple(int(k) for k in n))
        if not self.atol > 0:
            raise ConfigError(f"atol must be positive, got {self.atol!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.family is None and self.alpha_file is None:
            raise ConfigError("need a family or an alpha file")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        unknown = set(d) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        try:
            if isinstance(d.get("family"), dict):
                # rows set the length, so a config may leave it out
                d["family"] = FamilySpec.from_dict({"length": 0, **d["family"]})
            if "profile" not in d:
                raise ConfigError("config needs a profile")
            d["profile"] = SingularityProfile.coerce(d["profile"])
            for key in ("output_path", "alpha_file"):
                if d.get(key) is not None:
                    d[key] = Path(d[key])
            d.setdefault("family", None)
            if "n_values" not in d:
                raise ConfigError("config needs n_values")
            return cls(**d)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def sequence(self) -> np.ndarray:
        """The longest prefix needed; shorter rows use nested prefixes of it."""
        nmax = self.n_values[-1]
        if self.alpha_file is not None:
            try:
                seq = load_sequence(self.alpha_file)
            except (OSError, DiskGuardError) as exc:
                raise ConfigError(f"{self.alpha_file}: {exc}") from exc
            if seq.size < nmax:
                raise ConfigError(f"alpha file holds {seq.size} entries, n_values need {nmax}")
            return seq[:nmax]
        return generate(self.family.with_length(nmax))


# -- identity suite ----------------------------------------------------------


@dataclass
class IdentityReport:
    tol: float
    residuals: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def limit(self, name: str) -> float:
        return max(self.tol, QUAD_FLOOR) if name.startswith("quadrature") else self.tol

    @property
    def tolerance_failures(self) -> list[str]:
        bad = [k for k, v in self.residuals.items() if not v < self.limit(k)]
        return bad + [k for k, v in self.violations.items() if v]

    @property
    def exit_code(self) -> int:
        if self.failures:
            return 3
        return 1 if self.tolerance_failures else 0

    def lines(self) -> list[str]:
        out = []
        for k, v in self.residuals.items():
            status = "ok" if v < self.limit(k) else "FAIL"
            out.append(f"{k:<40s} max residual {v:.3e}  (< {self.limit(k):.0e})  {status}")
        for k, v in self.violations.items():
            out.append(f"{k:<40s} violations {v}  {'ok' if not v else 'FAIL'}")
        for f in self.failures:
            out.append(f"numeric failure: {f}")
        return out


def _max(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(x)) if x.size else 0.0


def run_identities(trials: int, seed: int, tol: float, sequences=None) -> IdentityReport:
    """Algebraic identities on every trial, quadrature checks on a subset.

    ``sequences`` (a 2-D array, one sequence per row) replaces the random
    draws everywhere except in the epsilon lemma, which takes triples.
    """
    if trials < 1:
        raise ConfigError("trials must be at least 1")
    if not tol > 0:
        raise ConfigError("tol must be positive")
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(4)]
    if sequences is None:
        seqs = random_disk(streams[0], (trials, 8), 0.95)
    else:
        seqs = np.atleast_2d(np.asarray(sequences, dtype=complex))
    rep = IdentityReport(tol)

    rep.residuals["antipodal one-step identity"] = _max(antipodal_identity(seqs))
    plain, tilde = order2_identity(seqs)
    rep.residuals["double-point identity"] = _max(plain)
    rep.residuals["double-point identity, signed form"] = _max(tilde)

    rng = streams[1]
    if sequences is None:
        f, g = random_disk(rng, (2, trials, 16), 1.0)
    else:
        f = g = seqs
    rep.residuals["discrete Leibniz rule"] = leibniz_check(f, g)

    quad = streams[2]
    i1, inv = [], []
    for k in range(min(trials if sequences is None else len(seqs), QUAD_CASES)):
        s = seqs[k] if sequences is not None else random_disk(quad, 6, 0.9)
        t1, t2 = quad.uniform(0.0, 2.0 * math.pi, 2)
        try:
            profile = SingularityProfile(((t1, 1), (t2, 1)))
            got = stripped_entropy(s, 1, profile).value
            i1.append(abs(float(twopoint_I1(s, t1, t2)) - got))
            base = seqs[k] if sequences is not None else random_disk(quad, 16, 0.9)
            base = pad(base, 16)
            moved = base.copy()
            moved[5:10] = random_disk(quad, 5, 0.9)
            r1 = twopoint_ledger(base, t1, t2, 14).residual
            r2 = twopoint_ledger(moved, t1, t2, 14).residual
            inv.append(abs(r1 - r2))
        except (OPUCError, ArithmeticError) as exc:
            rep.failures.append(f"case {k}: {exc}")
    rep.residuals["quadrature: two-point one-step rule"] = _max(i1)
    rep.residuals["quadrature: two-point residual invariance"] = _max(inv)

    rng = streams[3]
    a = random_disk(rng, (trials, 32), 0.95) if sequences is None else seqs
    rep.violations["Gagliardo-Nirenberg"] = gn_inequality(a).violations
    rep.violations["Kato"] = kato_check(f).violations
    small = random_disk(rng, (trials, 12), 0.49) if sequences is None else seqs
    for name, r in {**lemma33_bounds(small), **lemma43_bounds(a)}.items():
        rep.violations[name] = r.violations
    b = random_disk(rng, (3, 10 * trials), 1.0)
    aa = rng.uniform(-1.0, 1.0, 10 * trials)
    aa[aa == 0.0] = 0.5
    rep.violations["epsilon lemma"] = epsilon_lemma(b[0], b[1], b[2], aa).violations
    return rep


# -- convergence tables ------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    entropy_value: float
    szego_value: float
    rhs_partial: float
    quad_error: float

    def as_tuple(self):
        return tuple(getattr(self, c) for c in COLUMNS)


def _rhs_partial(seq, profile, n):
    return float(rhs_general(seq[:n], profile)[-1])


def _table(config: ExperimentConfig) -> list[ConvergenceRow]:
    seq = config.sequence()
    rows = []
    for n in config.n_values:
        prefix = seq[:n]
        try:
            fourier = log_weight_fourier(BernsteinSzegoWeight(prefix), config.profile.order, atol=config.atol)
            row = ConvergenceRow(
                n,
                profile_mean(config.profile, fourier.value),
                float(fourier.value[0].real),
                _rhs_partial(seq, config.profile, n),
                fourier.est_error,
            )
        except (OPUCError, ArithmeticError):
            nan = float("nan")
            row = ConvergenceRow(n, nan, nan, _rhs_partial(seq, config.profile, n), nan)
        rows.append(row)
    return rows


def run_theorem_trend(config: ExperimentConfig) -> list[ConvergenceRow]:
    """Weighted entropy, Szego entropy and rhs partial sum for each n."""
    return _table(config)


def run_conjecture_probe(config: ExperimentConfig) -> list[ConvergenceRow]:
    """Same table for profiles of total order at least 3; exploratory only."""
    if config.profile.order < 3:
        raise ConfigError(f"probe needs a profile of order >= 3, got {config.profile.order}")
    return _table(config)


def _fmt(x) -> str:
    return str(x) if isinstance(x, int) else format(float(x), ".17g")


def render_report(rows, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_fmt(v) for v in row.as_tuple()])
        return buf.getvalue()
    if fmt == "json":
        docs = []
        for row in rows:
            fields = (
                f'"{c}": ' + ("null" if isinstance(v, float) and math.isnan(v) else _fmt(v))
                for c, v in zip(COLUMNS, row.as_tuple())
            )
            docs.append(" {" + ", ".join(fields) + "}")
        return "[\n" + ",\n".join(docs) + ("\n" if docs else "") + "]\n"
    raise ConfigError(f"unknown format {fmt!r}")


def emit_report(rows, fmt: str, path) -> Path:
    path = Path(path)
    path.write_text(render_report(rows, fmt))
    return path
