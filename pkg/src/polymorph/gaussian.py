"""Gaussian analogs of (g(x), x) and numerical bounds on the list-decoding threshold.

Everything here uses the +-1 view of g under the uniform measure.  The
analog is an (m+1)-variate standard Gaussian (G_0, ..., G_m) whose last m
coordinates are independent and whose correlations with G_0 are

    rho_j = g^({j}) / sqrt(1 - g^(empty)^2).

Signs follow sgn(0) = +1; a Gaussian value t >= 0 maps to bit 0 (the +1 side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from scipy import integrate, optimize, special

from .boolfn import BooleanFunction, fourier_transform, popcounts, walsh_spectrum
from .errors import PreconditionError

TRUNCATION = 8.0
S_AND_REFERENCE = 0.814975356673002


@dataclass(frozen=True, eq=False)
class GaussianAnalog:
    m: int
    rho: np.ndarray

    @property
    def a_squared(self) -> float:
        return float(np.dot(self.rho, self.rho))

    def conditional_covariance(self) -> np.ndarray:
        return np.eye(self.m) - np.outer(self.rho, self.rho)

    def covariance(self) -> np.ndarray:
        """Full (m+1) x (m+1) covariance of (G_0, ..., G_m)."""
        c = np.eye(self.m + 1)
        c[0, 1:] = c[1:, 0] = self.rho
        return c


@dataclass(frozen=True)
class ThresholdEstimate:
    value: float
    kind: str
    error_bound: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"schema": 1, "value": self.value, "kind": self.kind, "error_bound": self.error_bound, **self.details}


def _check_nonconstant(g: BooleanFunction) -> None:
    if g.arity == 0 or g.is_constant():
        raise PreconditionError("g must be non-constant")


def gaussian_analog(g: BooleanFunction) -> GaussianAnalog:
    _check_nonconstant(g)
    c = fourier_transform(g).coefficients
    scale = math.sqrt(1.0 - c[0] ** 2)
    rho = np.array([c[1 << j] / scale for j in range(g.arity)])
    return GaussianAnalog(g.arity, rho)


def _is_signed_parity(g: BooleanFunction) -> bool:
    w = walsh_spectrum(g)
    return np.count_nonzero(w) == 1 and w[-1] != 0


def borell_upper_bound(g: BooleanFunction) -> ThresholdEstimate:
    """1/2 + 1/2 sqrt(sum_S g^(S)^2 rho^|S|) with rho = (2/pi) arcsin(a^2)."""
    _check_nonconstant(g)
    missing = [j for j in range(1, g.arity + 1) if not g.depends_on(j)]
    if missing:
        raise PreconditionError(f"g does not depend on coordinate(s) {missing}")
    if _is_signed_parity(g):
        raise PreconditionError("g is a signed parity of all its inputs")
    c = fourier_transform(g).coefficients
    levels = popcounts(g.arity)
    a2 = float(np.sum(c[levels == 1] ** 2) / np.sum(c[levels >= 1] ** 2))
    rho = 2.0 / math.pi * math.asin(a2)
    value = 0.5 + 0.5 * math.sqrt(float(np.sum(c**2 * rho**levels)))
    if not value < 1.0:
        raise RuntimeError(f"Borell bound {value} is not below 1")
    return ThresholdEstimate(value, "upper-borell", 0.0, {"rho": rho, "a_squared": a2})


def normal_ccdf(t):
    """Pr[N(0,1) > t]."""
    return special.ndtr(-np.asarray(t, dtype=float)) if np.ndim(t) else float(special.ndtr(-float(t)))


def _phi(t: float) -> float:
    return math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)


def s_and_inner(x: float, abs_tol: float = 1e-13) -> tuple[float, float]:
    """(2 E_y[Phi^c(-x-y) Phi^c(-x+y)] - 1, error bound) with y truncated to [-8, 8]."""
    def integrand(y: float) -> float:
        return _phi(y) * special.ndtr(x + y) * special.ndtr(x - y)

    val, err = integrate.quad(integrand, -TRUNCATION, TRUNCATION, epsabs=abs_tol, epsrel=0.0, limit=200)
    tail = 2.0 * float(special.ndtr(-TRUNCATION))
    return 2.0 * val - 1.0, 2.0 * (err + tail)


def s_and_quadrature(abs_tol: float = 1e-9, max_panels: int = 200) -> ThresholdEstimate:
    """s_and = 1/2 + 1/2 E_x |2 E_y[Phi^c(-x-y) Phi^c(-x+y)] - 1|, by nested adaptive quadrature.

    Both levels use adaptive Gauss-Kronrod panels on [-8, 8]; half the
    tolerance goes to the inner integrals and half to the outer one.  The
    outer range is split at the root of the inner expression so each piece
    is smooth.  Truncated tail mass is added to the error bound.
    """
    if abs_tol < 1e-12:
        raise PreconditionError("abs_tol must be at least 1e-12")
    inner_tol = abs_tol / 4.0
    inner_err = [0.0]

    def gamma(x: float) -> float:
        v, e = s_and_inner(x, inner_tol)
        inner_err[0] = max(inner_err[0], e)
        return v

    root = optimize.brentq(gamma, -TRUNCATION, TRUNCATION, xtol=1e-15)
    total, outer_err, panels = 0.0, 0.0, 0
    for lo, hi in ((-TRUNCATION, root), (root, TRUNCATION)):
        val, err, info = integrate.quad(
            lambda x: _phi(x) * abs(gamma(x)), lo, hi,
            epsabs=abs_tol / 2.0, epsrel=0.0, limit=max_panels, full_output=1,
        )[:3]
        total += val
        outer_err += err
        panels += int(info["last"])
    tail = 2.0 * float(special.ndtr(-TRUNCATION))
    # |gamma| <= 1 and the inner error enters with weight at most 1; the 1/2 factor halves both
    error = 0.5 * (outer_err + inner_err[0] + tail)
    if error > abs_tol:
        raise PreconditionError(f"tolerance {abs_tol} not reached within {max_panels} panels (error {error:.3g})")
    return ThresholdEstimate(
        0.5 + 0.5 * total, "s-and-quadrature", error,
        {"panels": panels, "root": root, "abs_tol": abs_tol, "truncation": TRUNCATION},
    )


def _sqrt_psd(c: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(c)
    if w.min() < -1e-12:
        raise PreconditionError(f"conditional covariance is not positive semidefinite (eigenvalue {w.min():.3g})")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T


def conditional_sampler(spec: GaussianAnalog, x: float, seed: int = 0, size: int = 1) -> np.ndarray:
    """Draws of (G_1, ..., G_m) given G_0 = x, shape (size, m)."""
    root = _sqrt_psd(spec.conditional_covariance())
    w = np.random.default_rng(seed).standard_normal((size, spec.m))
    return spec.rho * x + w @ root


def _g_pm_on_signs(g: BooleanFunction, G: np.ndarray) -> np.ndarray:
    """g(sgn G_1, ..., sgn G_m) in the +-1 view, with sgn(0) = +1."""
    idx = ((G < 0).astype(np.int64) << np.arange(g.arity)).sum(axis=-1)
    return g.pm[idx]


def gamma_curve(g: BooleanFunction, xs: np.ndarray, samples: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Monte-Carlo gamma(x) = E[g(sgn G) | G_0 = x] with standard errors, common draws for all x."""
    spec = gaussian_analog(g)
    root = _sqrt_psd(spec.conditional_covariance())
    noise = np.random.default_rng(seed).standard_normal((samples, g.arity)) @ root
    means, ses = np.empty(len(xs)), np.empty(len(xs))
    for k, x in enumerate(xs):
        v = _g_pm_on_signs(g, spec.rho * x + noise)
        means[k] = v.mean()
        ses[k] = v.std(ddof=1) / math.sqrt(samples) if samples > 1 else 1.0
    return means, ses


def s_sign_lower_estimate(g: BooleanFunction, grid: int = 64, mc_samples: int = 200_000, seed: int = 0) -> ThresholdEstimate:
    """Lower-bound value achieved by q = sgn on a single Gaussian coordinate.

    Unbalanced g: 1/2 + 1/2 E_x|gamma(x)| on a Gauss-Hermite grid with the
    same conditional draws at every node; the error bound adds three standard
    errors of the combined per-sample average and the change from halving
    the grid.  Balanced g: plain Monte Carlo of
    1/2 + 1/2 E[sgn(G_0) g(sgn G)] with a three-standard-error bound.
    """
    _check_nonconstant(g)
    if grid < 2 or mc_samples < 2:
        raise PreconditionError("grid and mc_samples must be at least 2")
    mean_g = int(g.pm.sum())
    if mean_g != 0:
        spec = gaussian_analog(g)
        noise = np.random.default_rng(seed).standard_normal((mc_samples, g.arity)) @ _sqrt_psd(spec.conditional_covariance())

        def quad(k: int) -> tuple[float, float]:
            # sum_k w_k |gamma_k| is the sample mean of sum_k w_k s_k g(...) with s_k = sgn(gamma_k)
            xs, w = hermegauss(k)
            w = w / w.sum()
            per_sample = np.zeros(mc_samples)
            for x, wk in zip(xs, w):
                v = _g_pm_on_signs(g, spec.rho * x + noise).astype(float)
                per_sample += wk * (1.0 if v.mean() >= 0 else -1.0) * v
            return float(per_sample.mean()), float(per_sample.std(ddof=1) / math.sqrt(mc_samples))

        full, se = quad(grid)
        half, _ = quad(max(2, grid // 2))
        err = 0.5 * (3.0 * se + abs(full - half))
        return ThresholdEstimate(
            0.5 + 0.5 * full, "lower-sign-mc", err,
            {"grid": grid, "samples": mc_samples, "seed": seed, "balanced": False},
        )
    spec = gaussian_analog(g)
    root = _sqrt_psd(spec.conditional_covariance())
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(mc_samples)
    G = spec.rho * z[:, None] + rng.standard_normal((mc_samples, g.arity)) @ root
    v = np.where(z >= 0, 1.0, -1.0) * _g_pm_on_signs(g, G)
    se = float(v.std(ddof=1) / math.sqrt(mc_samples))
    return ThresholdEstimate(
        0.5 + 0.5 * float(v.mean()), "lower-sign-mc", 0.5 * 3.0 * se,
        {"grid": None, "samples": mc_samples, "seed": seed, "balanced": True},
    )
