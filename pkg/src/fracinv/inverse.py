"""Tikhonov-regularised recovery of the initial value by conjugate gradients.

The forward map ``A: g -> u_g(T)`` is linear (homogeneous source) and
self-adjoint in the mass inner product, so the gradient of

    J(g) = 1/2 |A g - h|^2 + gamma/2 |g|^2

is ``A(A g - h) + gamma g``. The adjoint route computes the same quantity
through the backward problem and the Riemann-Liouville integral, and the two
are compared when ``gradient_route="both"``.

All norms and inner products are mass-weighted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fem import NonlocalMatrices
from .spectral import EigenBasis, truncation_operator
from .time_stepper import TimeGrid, rl_integral_at_zero, solve_adjoint, solve_forward

__all__ = [
    "NoiseSpec",
    "CgmConfig",
    "CgmRecord",
    "CgmTrace",
    "ForwardContext",
    "SpectralContext",
    "StationaryPoint",
    "DegenerateDirection",
    "GradientMismatch",
    "NonFiniteIterate",
    "add_noise",
    "tikhonov_value",
    "gradient",
    "cgm_direction",
    "cgm_stepsize",
    "run_cgm",
    "choose_gamma",
    "write_reconstruction_csv",
]

log = logging.getLogger(__name__)


class StationaryPoint(Exception):
    """Previous gradient vanished, so there is no direction to take."""


class DegenerateDirection(ArithmeticError):
    """``|A d|^2 + gamma |d|^2 = 0`` in the line search."""


class GradientMismatch(AssertionError):
    """The adjoint and self-adjoint gradients disagree."""


class NonFiniteIterate(FloatingPointError):
    def __init__(self, msg, trace):
        super().__init__(msg)
        self.trace = trace


@dataclass(frozen=True)
class NoiseSpec:
    """Relative uniform noise ``h + mu h (2 r - 1)``, ``r ~ U[0, 1)``.

    ``theta`` overrides the noise level used for stopping (for data whose
    exact version is unknown); by default it is measured.
    """

    mu: float
    seed: int = 0
    theta: float | None = None

    def __post_init__(self):
        if not self.mu >= 0:
            raise ValueError(f"noise level mu must be >= 0, got {self.mu}")


@dataclass(frozen=True)
class CgmConfig:
    gamma: float = 0.0
    sigma: float = 1.01
    max_iter: int = 100
    g0: np.ndarray | float = 1.0
    eta: float = 1e-3
    gradient_route: str = "self_adjoint"
    use_discrepancy: bool = True
    route_tol: float = 0.02
    #: gradients below this fraction of the initial one count as zero
    stationary_tol: float = 1e-12

    def __post_init__(self):
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if not self.sigma > 1:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter}")
        if self.gradient_route not in ("adjoint", "self_adjoint", "both"):
            raise ValueError(f"unknown gradient route {self.gradient_route!r}")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")

    def describe(self) -> dict:
        g0 = self.g0 if np.isscalar(self.g0) else "array"
        return {"gamma": self.gamma, "sigma": self.sigma, "max_iter": self.max_iter,
                "g0": g0, "eta": self.eta, "gradient_route": self.gradient_route,
                "use_discrepancy": self.use_discrepancy}


@dataclass
class CgmRecord:
    k: int
    zeta: float
    alpha_cc: float
    residual: float
    error: float = float("nan")


@dataclass
class CgmTrace:
    """One record per iterate ``g_k``; ``zeta`` and ``alpha_cc`` are those
    used to leave ``g_k`` (NaN for the last one)."""

    records: list = field(default_factory=list)
    stopping_index: int | None = None
    stop_reason: str | None = None
    theta: float = 0.0
    sigma: float = 1.01

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def errors(self) -> np.ndarray:
        return np.array([r.error for r in self.records])

    def to_csv(self, path, header: dict | None = None) -> None:
        with open(path, "w") as fh:
            for key, val in (header or {}).items():
                fh.write(f"# {key}: {val}\n")
            fh.write(f"# stopping_index: {self.stopping_index}\n")
            fh.write(f"# stop_reason: {self.stop_reason}\n")
            fh.write("k,zeta,alpha_cc,residual,error\n")
            for r in self.records:
                fh.write(f"{r.k},{r.zeta:.17g},{r.alpha_cc:.17g},"
                         f"{r.residual:.17g},{r.error:.17g}\n")


class ForwardContext:
    """FEM/L1 forward map with homogeneous source."""

    def __init__(self, matrices: NonlocalMatrices, grid: TimeGrid, eta: float = 1e-3):
        self.matrices = matrices
        self.grid = grid
        self.eta = eta

    @property
    def n_dofs(self) -> int:
        return self.matrices.mesh.n_dofs

    def inner(self, u, v) -> float:
        return self.matrices.inner(u, v)

    def norm(self, u) -> float:
        return self.matrices.norm(u)

    def apply(self, g) -> np.ndarray:
        return solve_forward(g, self.matrices, self.grid).final

    def apply_adjoint(self, r) -> np.ndarray:
        z = solve_adjoint(r, self.matrices, self.grid, self.eta)
        return rl_integral_at_zero(z)


class SpectralContext:
    """Forward map ``A_n`` truncated to the first ``n_modes`` eigenpairs."""

    def __init__(self, basis: EigenBasis, alpha: float, T: float = 1.0,
                 n_modes: int | None = None):
        self.basis = basis
        self.alpha = alpha
        self.T = T
        self.n_modes = basis.count if n_modes is None else n_modes

    @property
    def n_dofs(self) -> int:
        return self.basis.vectors.shape[0]

    def inner(self, u, v) -> float:
        return float(u @ (self.basis.mass @ v))

    def norm(self, u) -> float:
        return float(np.sqrt(max(self.inner(u, u), 0.0)))

    def apply(self, g) -> np.ndarray:
        return truncation_operator(g, self.basis, self.alpha, self.T, self.n_modes)

    # the operator is symmetric in the mass inner product
    apply_adjoint = apply


def add_noise(h, spec: NoiseSpec, norm: Callable) -> tuple[np.ndarray, float]:
    """Return ``(h_noisy, theta)`` with ``theta = norm(h_noisy - h)``
    (or ``spec.theta`` when given)."""
    h = np.asarray(h, dtype=float)
    if spec.mu == 0:
        noisy = h.copy()
    else:
        r = np.random.default_rng(spec.seed).random(h.shape)
        noisy = h + spec.mu * h * (2.0 * r - 1.0)
    theta = norm(noisy - h) if spec.theta is None else float(spec.theta)
    return noisy, theta


def choose_gamma(theta: float) -> float:
    """A priori choice ``gamma = 1e-2 theta**0.8``."""
    if theta < 0:
        raise ValueError(f"noise level must be >= 0, got {theta}")
    return 0.0 if theta == 0 else 1e-2 * theta**0.8


def tikhonov_value(g, h_noisy, gamma: float, context) -> float:
    r = context.apply(g) - h_noisy
    return 0.5 * context.inner(r, r) + 0.5 * gamma * context.inner(g, g)


def _gradient_from_residual(g, r, gamma, context, route, tol=0.02):
    if route == "self_adjoint":
        return context.apply(r) + gamma * g
    if route == "adjoint":
        return context.apply_adjoint(r) + gamma * g
    if route != "both":
        raise ValueError(f"unknown gradient route {route!r}")
    a = context.apply(r) + gamma * g
    b = context.apply_adjoint(r) + gamma * g
    scale = context.norm(a)
    gap = context.norm(a - b)
    if gap > tol * scale:
        raise GradientMismatch(
            f"adjoint and self-adjoint gradients differ by {gap / scale:.3e} (relative)")
    return a


def gradient(g, h_noisy, gamma: float, context, route: str = "self_adjoint") -> np.ndarray:
    """Gradient of :func:`tikhonov_value` in the mass inner product."""
    g = np.asarray(g, dtype=float)
    r = context.apply(g) - h_noisy
    return _gradient_from_residual(g, r, gamma, context, route)


def cgm_direction(grad_k, grad_prev=None, d_prev=None, inner=np.dot):
    """Fletcher-Reeves direction. Returns ``(d_k, alpha_k)``."""
    if grad_prev is None:
        return -np.asarray(grad_k, dtype=float), 0.0
    den = inner(grad_prev, grad_prev)
    if den == 0:
        raise StationaryPoint("previous gradient is zero")
    a = inner(grad_k, grad_k) / den
    return -grad_k + a * d_prev, a


def cgm_stepsize(g_k, d_k, h_noisy, gamma: float, context, u_g=None, u_d=None) -> float:
    """Exact line search along ``d_k`` for the quadratic functional."""
    if u_g is None:
        u_g = context.apply(g_k)
    if u_d is None:
        u_d = context.apply(d_k)
    num = context.inner(u_g - h_noisy, u_d) + gamma * context.inner(g_k, d_k)
    den = context.inner(u_d, u_d) + gamma * context.inner(d_k, d_k)
    if den == 0:
        raise DegenerateDirection("A d = 0 and gamma |d|^2 = 0: degenerate direction")
    return -num / den


def run_cgm(h_noisy, theta: float, config: CgmConfig, context,
            ground_truth=None, callback=None):
    """Conjugate gradient iteration with discrepancy stopping.

    Stops at the first ``k`` with ``R_k = |A g_k - h| <= sigma * theta`` when
    ``theta > 0`` and discrepancy stopping is on; otherwise after
    ``max_iter`` steps, or earlier if the gradient vanishes.

    Returns ``(g_final, trace)``.
    """
    h_noisy = np.asarray(h_noisy, dtype=float)
    g = np.broadcast_to(np.asarray(config.g0, dtype=float), (context.n_dofs,)).copy()
    gamma = config.gamma
    discrepancy = config.use_discrepancy and theta > 0
    target = config.sigma * theta
    trace = CgmTrace(theta=theta, sigma=config.sigma)

    grad_prev = d_prev = None
    grad0_norm = None
    k = 0
    while True:
        u = context.apply(g)
        r = u - h_noisy
        res = context.norm(r)
        err = context.norm(g - ground_truth) if ground_truth is not None else float("nan")
        rec = CgmRecord(k, float("nan"), float("nan"), res, err)
        trace.records.append(rec)
        if callback is not None:
            callback(k, g, rec)
        if not (np.isfinite(res) and np.all(np.isfinite(g))):
            trace.stop_reason = "non_finite"
            trace.stopping_index = k
            raise NonFiniteIterate(f"non-finite iterate at k={k}", trace)

        if discrepancy and res <= target:
            trace.stop_reason = "discrepancy"
            break
        if k >= config.max_iter:
            trace.stop_reason = "max_iter"
            break

        grad = _gradient_from_residual(g, r, gamma, context, config.gradient_route,
                                       config.route_tol)
        gnorm = context.norm(grad)
        if grad0_norm is None:
            grad0_norm = gnorm
        if gnorm <= config.stationary_tol * grad0_norm or gnorm == 0:
            trace.stop_reason = "stationary"
            break
        d, a = cgm_direction(grad, grad_prev, d_prev, context.inner)
        zeta = cgm_stepsize(g, d, h_noisy, gamma, context, u_g=u)
        rec.zeta, rec.alpha_cc = zeta, a
        g = g + zeta * d
        grad_prev, d_prev = grad, d
        k += 1

    trace.stopping_index = k
    log.debug("CGM stopped at k=%d (%s), residual %.3e", k, trace.stop_reason,
              trace.records[-1].residual)
    return g, trace


def write_reconstruction_csv(path, x, columns: dict, header: dict | None = None) -> None:
    """``x`` followed by named nodal columns, with a ``#`` header block."""
    names = list(columns)
    data = np.column_stack([x] + [np.asarray(columns[n]) for n in names])
    with open(path, "w") as fh:
        for key, val in (header or {}).items():
            fh.write(f"# {key}: {val}\n")
        fh.write(",".join(["x"] + names) + "\n")
        for row in data:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
