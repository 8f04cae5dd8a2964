"""Mittag-Leffler and Gamma function evaluation on the real line.

The two-parameter Mittag-Leffler function

.. math::

    E_{\\alpha,\\beta}(z) = \\sum_{k=0}^\\infty \\frac{z^k}{\\Gamma(\\alpha k + \\beta)}

is evaluated by one of three branches, chosen pointwise:

* the power series (compensated summation) for ``|z| <= 1`` and on the
  positive axis, where the terms do not cancel;
* the asymptotic expansion on the negative axis, where its first neglected
  term is below round-off;
* a Laplace inversion along a parabolic Hankel contour everywhere else on
  the negative axis.

The power series alone is useless on the negative axis for small ``alpha``:
for ``alpha = 0.3`` and ``z = -12`` its largest term is of order
``exp(12**(1/0.3))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "MlParams",
    "mittag_leffler",
    "ml_series",
    "ml_asymptotic",
    "ml_contour",
    "ml_caputo_identity_residual",
    "gamma_eval",
    "ml_eval",
    "decay_constant",
    "NEGATIVE_LIMIT",
]

#: most negative argument accepted by :func:`mittag_leffler`
NEGATIVE_LIMIT = -1.0e15

_EPS = np.finfo(float).eps
_SERIES_RADIUS = 1.0
_ASYMPTOTIC_TERMS = 8
_CONTOUR_NODES = 16
_MAX_SERIES_TERMS = 4000


@dataclass(frozen=True)
class MlParams:
    """Parameters ``(alpha, beta)`` of :math:`E_{\\alpha,\\beta}`."""

    alpha: float
    beta: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.alpha > 1:
            raise ValueError(
                f"alpha={self.alpha} outside the certified range (0, 1]")
        if not np.isfinite(self.beta):
            raise ValueError(f"beta must be finite, got {self.beta}")

    def positive_limit(self) -> float:
        """Largest positive argument accepted (the series needs
        ``z**(1/alpha) <= 50`` to converge in a bounded number of terms)."""
        return 50.0 ** self.alpha

    def __call__(self, z):
        return mittag_leffler(z, self.alpha, self.beta)


def gamma_eval(x):
    """Gamma function; raises at the poles ``0, -1, -2, ...``."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) & (x == np.round(x))):
        raise ValueError("Gamma function has a pole at non-positive integers")
    out = special.gamma(x)
    return out if out.ndim else float(out)


def ml_series(z, alpha, beta=1.0):
    """Power series with Kahan summation.

    Accurate where the terms do not cancel badly: ``|z| <~ 1`` or ``z >= 0``.
    """
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    comp = np.zeros_like(z)
    logabs = np.log(np.where(z == 0, 1.0, np.abs(z)))
    sign = np.where(z < 0, -1.0, 1.0)
    for k in range(_MAX_SERIES_TERMS):
        arg = alpha * k + beta
        if k == 0:
            term = np.full_like(z, special.rgamma(beta))
        elif arg > 0:
            term = sign**k * np.exp(k * logabs - special.gammaln(arg))
            term = np.where(z == 0, 0.0, term)
        else:
            term = z**k * special.rgamma(arg)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if k > 2 and arg > 1 and np.all(np.abs(term) <= _EPS * np.abs(total)):
            break
    else:
        raise RuntimeError("Mittag-Leffler series did not converge")
    return total


def ml_asymptotic(x, alpha, beta=1.0, n_terms=_ASYMPTOTIC_TERMS):
    """Asymptotic expansion of ``E(-x)`` for large ``x > 0`` and ``alpha < 1``.

    Returns ``(value, neglected)`` where ``neglected`` bounds the first
    neglected term. Two terms are inspected, since ``1/Gamma(beta - alpha k)``
    vanishes whenever ``beta - alpha k`` is a pole (never twice in a row
    for ``alpha < 1``).
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for k in range(1, n_terms + 1):
        total += (-1.0) ** (k + 1) * x**-k * special.rgamma(beta - alpha * k)
    k = n_terms + 1
    nxt = np.maximum(np.abs(x**-k * special.rgamma(beta - alpha * k)),
                     np.abs(x ** -(k + 1) * special.rgamma(beta - alpha * (k + 1))))
    return total, nxt


def ml_contour(x, alpha, beta=1.0, n=_CONTOUR_NODES):
    """``E(-x)``, ``x >= 0``, by inverting ``s**(alpha-beta)/(s**alpha + x)``
    at ``t = 1`` along the parabola ``s = mu (1 + iu)**2``.

    Trapezoid step ``3/n`` and ``mu = pi n / 12`` balance discretisation
    against truncation (error ~ ``exp(-2 pi n / 3)``); larger ``n`` only
    adds round-off through ``exp(mu)``.
    """
    x = np.asarray(x, dtype=float)
    h = 3.0 / n
    mu = np.pi * n / 12.0
    u = h * np.arange(0, n + 1)
    s = mu * (1.0 + 1j * u) ** 2
    ds = 2j * mu * (1.0 + 1j * u)
    w = np.exp(s) * s ** (alpha - beta) * ds
    w[0] *= 0.5  # terms at -u are minus the conjugates of those at u
    vals = (w / (s**alpha + x[..., None])).sum(axis=-1)
    return h / np.pi * vals.imag


def mittag_leffler(z, alpha, beta=1.0):
    """Evaluate :math:`E_{\\alpha,\\beta}(z)` for real ``z``.

    Certified for ``0 < alpha <= 1``, finite ``beta`` and
    ``NEGATIVE_LIMIT <= z <= 50**alpha``. Relative accuracy is about
    ``1e-12`` for ``beta >= 1`` on the negative axis; ``beta < 1`` loses up
    to two further digits where the value is tiny compared with ``1/x``.
    """
    params = MlParams(alpha, beta)
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if not np.all(np.isfinite(z)):
        raise ValueError("Mittag-Leffler argument must be finite")
    lo, hi = NEGATIVE_LIMIT, params.positive_limit()
    if np.any(z < lo) or np.any(z > hi):
        raise ValueError(
            f"argument outside certified range [{lo:g}, {hi:g}] "
            f"for alpha={alpha}")

    out = np.empty_like(z)
    if alpha == 1.0 and beta == 1.0:
        out[:] = np.exp(z)
        return float(out[0]) if scalar else out

    series = (np.abs(z) <= _SERIES_RADIUS) | (z > 0)
    if np.any(series):
        out[series] = ml_series(z[series], alpha, beta)

    rest = ~series
    if np.any(rest):
        x = -z[rest]
        val = np.empty_like(x)
        use_asym = np.zeros(x.shape, dtype=bool)
        if alpha < 1.0:
            asym, nxt = ml_asymptotic(x, alpha, beta)
            use_asym = (np.abs(nxt) <= 4 * _EPS * np.abs(asym)) & (asym != 0)
            val[use_asym] = asym[use_asym]
        if np.any(~use_asym):
            val[~use_asym] = ml_contour(x[~use_asym], alpha, beta)
        out[rest] = val

    return float(out[0]) if scalar else out


def ml_eval(params: MlParams, z):
    return mittag_leffler(z, params.alpha, params.beta)


def decay_constant(alpha, beta=1.0, x_max=1e6, n_points=4000):
    """Measured ``C0 = max (1 + x) E(-x)`` over ``[0, x_max]``.

    ``E_{alpha,beta}(-x) <= C0 / (1 + x)`` then holds on the sampled range.
    """
    x = np.concatenate([[0.0], np.geomspace(1e-4, x_max, n_points)])
    return float(np.max((1.0 + x) * mittag_leffler(-x, alpha, beta)))


def ml_caputo_identity_residual(alpha, lam, t, n_samples=10_000):
    """Residual of ``d^alpha/dt^alpha E(-lam t^alpha) = -lam E(-lam t^alpha)``.

    The Caputo derivative is the L1 quadrature on ``n_samples`` uniform
    steps over ``[0, t]``; the residual vanishes at the quadrature's order.
    """
    from .time_stepper import caputo_l1

    if lam <= 0 or t <= 0:
        raise ValueError("lam and t must be positive")
    tt = np.linspace(0.0, t, n_samples + 1)
    v = mittag_leffler(-lam * tt**alpha, alpha)
    deriv = caputo_l1(v, t / n_samples, alpha)
    return abs(deriv + lam * v[-1])
