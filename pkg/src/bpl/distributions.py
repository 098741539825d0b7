"""Beta, gamma and beta prime laws: densities, transforms, seeded samplers.

Sampling is vectorized and fully reproducible: an RngState built from a seed
always yields the same stream, and spawned substreams are independent and
deterministic as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError
from .options import DEFAULT_OPTIONS, EvalOptions
from .quadrature import halfline_power
from .special import gamma_ln, tricomi_psi

__all__ = [
    "BetaPrimeParams",
    "BetaParams",
    "GammaParams",
    "RngState",
    "betaprime_pdf",
    "betaprime_mellin",
    "betaprime_laplace",
    "beta_pdf",
    "gamma_pdf",
    "sample_gamma",
    "sample_beta",
    "sample_betaprime",
    "size_bias_pdf",
    "size_bias_norm",
    "size_bias_sample",
    "mc_mean",
]


@dataclass(frozen=True)
class BetaPrimeParams:
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise DomainError(f"beta prime shapes must be positive, got {self}")


@dataclass(frozen=True)
class BetaParams:
    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 0.0 and self.q > 0.0):
            raise DomainError(f"beta shapes must be positive, got {self}")


@dataclass(frozen=True)
class GammaParams:
    t: float

    def __post_init__(self):
        if not self.t > 0.0:
            raise DomainError(f"gamma shape must be positive, got {self}")


class RngState:
    """Explicit, seedable generator state threaded through all sampling."""

    def __init__(self, seed: int, _sequence: np.random.SeedSequence | None = None):
        self.seed = int(seed)
        self._sequence = _sequence if _sequence is not None else np.random.SeedSequence(self.seed)
        self.generator = np.random.Generator(np.random.PCG64(self._sequence))

    def spawn(self, n: int) -> list["RngState"]:
        """n independent substreams, deterministic in the parent seed."""
        return [RngState(self.seed, child) for child in self._sequence.spawn(n)]

    def __repr__(self):
        return f"RngState(seed={self.seed})"


# ---------------------------------------------------------------------------
# Densities and exact transforms


def betaprime_pdf(p: BetaPrimeParams, x):
    """Density x^(a-1) (1+x)^(-a-b) Gamma(a+b) / (Gamma(a) Gamma(b)) on (0, inf)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("beta prime density lives on (0, infinity)")
    lognorm = gamma_ln(p.a + p.b) - gamma_ln(p.a) - gamma_ln(p.b)
    out = np.exp(lognorm + (p.a - 1.0) * np.log(x) - (p.a + p.b) * np.log1p(x))
    return float(out) if out.ndim == 0 else out


def betaprime_mellin(p: BetaPrimeParams, s: float) -> float:
    """E[X^s] = Gamma(a+s) Gamma(b-s) / (Gamma(a) Gamma(b)) on the strip (-a, b)."""
    if not (-p.a < s < p.b):
        raise DomainError(f"Mellin argument {s} outside the strip ({-p.a}, {p.b})")
    return math.exp(gamma_ln(p.a + s) + gamma_ln(p.b - s) - gamma_ln(p.a) - gamma_ln(p.b))


def betaprime_laplace(p: BetaPrimeParams, z: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[exp(-z X)] = Gamma(a+b)/Gamma(b) * Psi(a, 1-b, z) for z >= 0."""
    if z < 0.0:
        raise DomainError("Laplace transform evaluated on z >= 0")
    if z == 0.0:
        return 1.0
    return math.exp(gamma_ln(p.a + p.b) - gamma_ln(p.b)) * tricomi_psi(p.a, 1.0 - p.b, z, opts)


def beta_pdf(p: BetaParams, x):
    x = np.asarray(x, dtype=float)
    lognorm = gamma_ln(p.p + p.q) - gamma_ln(p.p) - gamma_ln(p.q)
    with np.errstate(divide="ignore"):
        out = np.where(
            (x > 0.0) & (x < 1.0),
            np.exp(lognorm + (p.p - 1.0) * np.log(np.clip(x, 1e-308, None))
                   + (p.q - 1.0) * np.log1p(-np.clip(x, None, 1.0 - 1e-16))),
            0.0,
        )
    return float(out) if out.ndim == 0 else out


def gamma_pdf(p: GammaParams, x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(
            x > 0.0,
            np.exp((p.t - 1.0) * np.log(np.clip(x, 1e-308, None)) - x - gamma_ln(p.t)),
            0.0,
        )
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Samplers


def _gamma_mt(gen: np.random.Generator, shape: float, n: int) -> np.ndarray:
    """Marsaglia-Tsang squeeze-rejection; shapes below 1 use the U^(1/t) boost."""
    if shape < 1.0:
        g = _gamma_mt(gen, shape + 1.0, n)
        return g * gen.random(n) ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(n)
    filled = 0
    while filled < n:
        m = max(64, int(1.2 * (n - filled)) + 8)
        x = gen.standard_normal(m)
        v = (1.0 + c * x) ** 3
        u = gen.random(m)
        with np.errstate(invalid="ignore", divide="ignore"):
            ok = (v > 0.0) & (np.log(u) < 0.5 * x * x + d - d * v + d * np.log(np.abs(v) + 1e-300))
        acc = d * v[ok]
        take = min(acc.size, n - filled)
        out[filled:filled + take] = acc[:take]
        filled += take
    return out


def sample_gamma(p: GammaParams, rng: RngState, size: int | None = None):
    vals = _gamma_mt(rng.generator, p.t, 1 if size is None else int(size))
    return float(vals[0]) if size is None else vals


def sample_beta(p: BetaParams, rng: RngState, size: int | None = None):
    n = 1 if size is None else int(size)
    g1 = _gamma_mt(rng.generator, p.p, n)
    g2 = _gamma_mt(rng.generator, p.q, n)
    vals = g1 / (g1 + g2)
    return float(vals[0]) if size is None else vals


def sample_betaprime(p: BetaPrimeParams, rng: RngState, size: int | None = None):
    n = 1 if size is None else int(size)
    g1 = _gamma_mt(rng.generator, p.a, n)
    g2 = _gamma_mt(rng.generator, p.b, n)
    vals = g1 / g2
    return float(vals[0]) if size is None else vals


def mc_mean(values) -> tuple[float, float]:
    """Mean of a Monte Carlo batch with its delta-method standard error."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise DomainError("need at least two samples for an error bar")
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size))


# ---------------------------------------------------------------------------
# Size-biasing


def size_bias_norm(base_pdf, t: float, opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[X^t] for a density on (0, inf); DomainError if the integral diverges."""
    if t == 0.0:
        return 1.0
    try:
        norm = halfline_power(lambda x: np.asarray(base_pdf(x), dtype=float), t, opts)
    except QuadratureError as exc:
        raise DomainError(f"size-bias normalization of order {t} diverges") from exc
    if not math.isfinite(norm) or norm <= 0.0:
        raise DomainError(f"size-bias normalization of order {t} diverges")
    return norm


def size_bias_pdf(base_pdf, t: float, x, norm: float | None = None,
                  opts: EvalOptions = DEFAULT_OPTIONS):
    """Density of the order-t size bias: x^t f(x) / E[X^t]."""
    if norm is None:
        norm = size_bias_norm(base_pdf, t, opts)
    x = np.asarray(x, dtype=float)
    out = x ** t * np.asarray(base_pdf(x), dtype=float) / norm
    return float(out) if out.ndim == 0 else out


def size_bias_sample(base_sampler, t: float, rng: RngState, size: int | None = None,
                     weight_bound: float = 1.0):
    """Weighted rejection against the base sampler.

    weight_bound must dominate x^t on the support of the base law (1.0 works
    whenever t <= 0 and the support lies in [1, inf), or t >= 0 with support
    in (0, 1]).
    """
    n = 1 if size is None else int(size)
    out = np.empty(n)
    filled = 0
    while filled < n:
        m = max(64, 2 * (n - filled))
        draws = np.asarray(base_sampler(rng, m), dtype=float)
        w = draws ** t
        if np.any(w > weight_bound * (1.0 + 1e-12)):
            raise DomainError("weight_bound does not dominate x^t on the support")
        keep = draws[rng.generator.random(m) * weight_bound < w]
        take = min(keep.size, n - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    return float(out[0]) if size is None else out
