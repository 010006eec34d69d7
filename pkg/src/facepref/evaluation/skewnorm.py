"""Skew-normal density and maximum-likelihood fitting.

Parameterization: location xi, scale omega > 0, shape alpha, with density

    pdf(x) = (2/omega) * phi(u) * Phi(alpha*u),   u = (x - xi)/omega.

MLE runs L-BFGS-B with the analytic gradient, started from method-of-
moments estimates. The shape is bounded to |alpha| <= 50: beyond that the
likelihood is flat in alpha and the unbounded problem ridges off to
infinity. alpha = 0 recovers the plain normal, so a shape-constrained fit
must match the sample mean and (population) standard deviation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize
from scipy.special import log_ndtr

SHAPE_BOUND = 50.0

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)
_MAX_ABS_SKEWNESS = 0.99  # skew-normal skewness is bounded by ~0.9953


@dataclass(frozen=True)
class SkewNormalFit:
    location: float
    scale: float
    shape: float
    log_likelihood: float

    def logpdf(self, x) -> np.ndarray:
        return skewnorm_logpdf(x, self.location, self.scale, self.shape)

    def pdf(self, x) -> np.ndarray:
        return np.exp(self.logpdf(x))


@dataclass(frozen=True)
class NormalFit:
    """Plain normal summary; degenerate when fewer than two samples."""

    mean: float
    std: float
    degenerate: bool = False


def skewnorm_logpdf(x, location, scale, shape) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    u = (x - location) / scale
    return (
        np.log(2.0)
        - np.log(scale)
        - 0.5 * u * u
        - _LOG_SQRT_2PI
        + log_ndtr(shape * u)
    )


def _mills(t: np.ndarray) -> np.ndarray:
    """phi(t)/Phi(t), computed in log space for stability at t << 0."""
    log_phi = -0.5 * t * t - _LOG_SQRT_2PI
    return np.exp(log_phi - log_ndtr(t))


def _negloglik_and_grad(params, x, fixed_shape):
    location, scale = params[0], params[1]
    shape = fixed_shape if fixed_shape is not None else params[2]
    u = (x - location) / scale
    r = _mills(shape * u)
    n = x.shape[0]

    loglik = float(
        n * (np.log(2.0) - np.log(scale) - _LOG_SQRT_2PI)
        - 0.5 * (u @ u)
        + log_ndtr(shape * u).sum()
    )
    d_location = ((u - shape * r) / scale).sum()
    d_scale = ((u * u - 1.0 - shape * u * r) / scale).sum()
    if fixed_shape is not None:
        return -loglik, -np.array([d_location, d_scale])
    d_shape = (u * r).sum()
    return -loglik, -np.array([d_location, d_scale, d_shape])


def moment_estimates(samples: np.ndarray) -> tuple[float, float, float]:
    """Method-of-moments (location, scale, shape) used to start the MLE."""
    m1 = float(np.mean(samples))
    m2 = float(np.var(samples))
    if m2 == 0.0:
        return m1, 1.0, 0.0
    centered = samples - m1
    g1 = float(np.mean(centered**3) / m2**1.5)
    g1 = float(np.clip(g1, -_MAX_ABS_SKEWNESS, _MAX_ABS_SKEWNESS))

    two_thirds = abs(g1) ** (2.0 / 3.0)
    delta_sq = (np.pi / 2.0) * two_thirds / (two_thirds + ((4.0 - np.pi) / 2.0) ** (2.0 / 3.0))
    delta = np.sign(g1) * min(np.sqrt(delta_sq), 0.995)
    shape = delta / np.sqrt(1.0 - delta * delta)
    shape = float(np.clip(shape, -SHAPE_BOUND, SHAPE_BOUND))
    scale = float(np.sqrt(m2 / max(1.0 - 2.0 * delta * delta / np.pi, 1e-6)))
    location = m1 - scale * delta * np.sqrt(2.0 / np.pi)
    return location, scale, shape


def fit_skew_normal(
    samples,
    shape_bound: float = SHAPE_BOUND,
    fix_shape: float | None = None,
) -> SkewNormalFit:
    """Maximum-likelihood fit; ``fix_shape`` pins alpha (0 gives a normal fit)."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    if x.size < 2:
        raise ValueError("need at least two samples to fit")
    if not np.all(np.isfinite(x)):
        raise ValueError("samples must be finite")

    m_loc, m_scale, m_shape = moment_estimates(x)
    scale_floor = 1e-10 * max(1.0, abs(m_scale))
    if fix_shape is not None:
        starts = [(m_loc, m_scale), (float(np.mean(x)), float(np.std(x)) or 1.0)]
        bounds = [(None, None), (scale_floor, None)]
    else:
        m_shape = float(np.clip(m_shape, -shape_bound, shape_bound))
        starts = [
            (m_loc, m_scale, m_shape),
            (float(np.mean(x)), float(np.std(x)) or 1.0, 0.0),
        ]
        bounds = [(None, None), (scale_floor, None), (-shape_bound, shape_bound)]

    best = None
    for start in starts:
        result = minimize(
            _negloglik_and_grad,
            np.asarray(start, dtype=np.float64),
            args=(x, fix_shape),
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"maxiter": 500, "ftol": 1e-14, "gtol": 1e-10},
        )
        if best is None or result.fun < best.fun:
            best = result

    params = best.x
    shape = fix_shape if fix_shape is not None else float(params[2])
    return SkewNormalFit(
        location=float(params[0]),
        scale=float(params[1]),
        shape=shape,
        log_likelihood=-float(best.fun),
    )


def fit_normal(samples) -> NormalFit:
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        raise ValueError("need at least one sample")
    if x.size == 1:
        return NormalFit(mean=float(x[0]), std=0.0, degenerate=True)
    return NormalFit(mean=float(np.mean(x)), std=float(np.std(x, ddof=1)))


def density_integral(fit: SkewNormalFit) -> float:
    """Numerical integral of the fitted density over the real line."""
    value, _ = quad(
        lambda t: float(np.exp(skewnorm_logpdf(t, fit.location, fit.scale, fit.shape))),
        -np.inf,
        np.inf,
        limit=200,
    )
    return float(value)
