"""L1 time stepping for the Caputo derivative, forward and adjoint.

Forward problem, semi-discrete in space::

    M d^alpha U/dt^alpha + A U = b(t),   U(0) = g

with the L1 approximation of the Caputo derivative at ``t_n``::

    c0 * sum_{j=0}^{n-1} b_j (U^{n-j} - U^{n-j-1}),
    b_j = (j+1)**(1-alpha) - j**(1-alpha),   c0 = dt**-alpha / Gamma(2-alpha)

The adjoint march is the transpose of that lower-triangular system. Read
backwards in time it is again an L1 march, started from zero (the terminal
condition) and driven by the mollified point source at ``t = T``. Its
trajectory lives on time cells: row ``n`` holds the value on
``(t_n, t_{n+1}]`` and row ``K`` is the terminal zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .fem import Mesh1D, NonlocalMatrices

__all__ = [
    "TimeGrid",
    "SpaceTimeField",
    "l1_weights",
    "caputo_l1",
    "solve_forward",
    "solve_adjoint",
    "dirac_cell_masses",
    "rl_integral_at_zero",
    "dump_trajectory_csv",
]


@dataclass(frozen=True)
class TimeGrid:
    n_steps: int
    T: float
    alpha: float

    def __post_init__(self):
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError(f"need K >= 2 time steps, got {self.n_steps}")
        if not self.T > 0:
            raise ValueError(f"final time must be positive, got {self.T}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def dt(self) -> float:
        return self.T / self.n_steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.n_steps + 1)


@dataclass
class SpaceTimeField:
    """Interior nodal values over the time grid, shape ``(K + 1, N - 1)``.

    ``layout`` is ``"nodal"`` (row n is the value at ``t_n``) or ``"cell"``
    (row n is the value on ``(t_n, t_{n+1}]``; the last row is unused).
    """

    values: np.ndarray
    grid: TimeGrid
    mesh: Mesh1D = field(repr=False)
    layout: str = "nodal"

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]


def _raw_weights(alpha, n):
    j = np.arange(n, dtype=float)
    jp = j ** (1 - alpha)
    jp[0] = 0.0  # 0**0 would give 1 at alpha = 1
    return (j + 1) ** (1 - alpha) - jp


def l1_weights(alpha: float, n: int, dt: float = 1.0) -> np.ndarray:
    """L1 weights ``b_0 .. b_{n-1}``, scaled by ``dt**-alpha / Gamma(2-alpha)``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if n < 1:
        raise ValueError("need n >= 1")
    return _raw_weights(alpha, n) * dt**-alpha / special.gamma(2 - alpha)


def caputo_l1(values, dt: float, alpha: float) -> float:
    """L1 approximation of the Caputo derivative at the last of the
    equally spaced ``values`` (``alpha = 1`` gives the backward difference)."""
    v = np.asarray(values, dtype=float)
    n = len(v) - 1
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    b = _raw_weights(alpha, n)
    diffs = np.diff(v)[::-1]  # v^n - v^{n-1}, v^{n-1} - v^{n-2}, ...
    return float(b @ diffs) * dt**-alpha / special.gamma(2 - alpha)


def _march(matrices: NonlocalMatrices, grid: TimeGrid, u0, rhs):
    """Generic L1 march; ``rhs(n)`` returns the load at step ``n`` or None."""
    K = grid.n_steps
    b = _raw_weights(grid.alpha, K)
    c0 = grid.dt**-grid.alpha / special.gamma(2 - grid.alpha)
    M = matrices.mass
    shift = c0 * b[0]
    matrices.factor(shift)

    u = np.empty((K + 1, matrices.mesh.n_dofs))
    u[0] = u0
    diffs = np.empty((K + 1, matrices.mesh.n_dofs))  # diffs[m] = u^m - u^{m-1}
    for n in range(1, K + 1):
        hist = b[0] * u[n - 1]
        if n > 1:
            hist = hist - b[1:n] @ diffs[n - 1:0:-1]
        r = M @ (c0 * hist)
        f = rhs(n)
        if f is not None:
            r = r + f
        u[n] = matrices.solve(r, shift)
        diffs[n] = u[n] - u[n - 1]
    return u


def solve_forward(g, matrices: NonlocalMatrices, grid: TimeGrid, source=None) -> SpaceTimeField:
    """March ``M d^alpha U + A U = load(F)`` from ``U(0) = g``.

    ``source(t)`` returns the load vector at time ``t`` (evaluated at the new
    time level), or is None for the homogeneous problem.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (matrices.mesh.n_dofs,):
        raise ValueError(f"initial value must have {matrices.mesh.n_dofs} interior values")
    times = grid.times
    rhs = (lambda n: None) if source is None else (lambda n: source(times[n]))
    u = _march(matrices, grid, g, rhs)
    return SpaceTimeField(u, grid, matrices.mesh, "nodal")


def dirac_cell_masses(grid: TimeGrid, eta: float) -> np.ndarray:
    """Mass of ``2 exp(-(t-T)**2/eta**2) / (eta sqrt(pi))`` on each time cell.

    Entry ``n`` is the mass on ``(t_n, t_{n+1}]``. A Gaussian centred on the
    endpoint puts only half its mass inside ``[0, T]``, hence the factor 2:
    the masses add up to ``erf(T/eta)``, i.e. one.
    """
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    t = grid.times
    cdf = special.erf((grid.T - t) / eta)
    return cdf[:-1] - cdf[1:]


def solve_adjoint(residual, matrices: NonlocalMatrices, grid: TimeGrid,
                  eta: float = 1e-3) -> SpaceTimeField:
    """Backward problem driven by ``residual * delta(t - T)``.

    The point source is the Gaussian of width ``eta``, integrated over each
    time cell. Rows of the result are values on time cells; row ``K`` is the
    terminal value zero.
    """
    r = np.asarray(residual, dtype=float)
    K = grid.n_steps
    masses = dirac_cell_masses(grid, eta)
    Mr = matrices.mass @ r
    # reversed step q covers the cell (t_{K-q}, t_{K-q+1}]
    rev = _march(matrices, grid, np.zeros_like(r),
                 lambda q: masses[K - q] * Mr)
    z = np.zeros((K + 1, r.size))
    z[:K] = rev[1:][::-1] / grid.dt
    return SpaceTimeField(z, grid, matrices.mesh, "cell")


def rl_integral_at_zero(z: SpaceTimeField) -> np.ndarray:
    """``(1/Gamma(1-alpha)) int_0^T z(., tau) tau**-alpha dtau``.

    Product integration with the weight integrated exactly: ``z`` is taken
    piecewise constant for cell layout and piecewise linear for nodal layout.
    """
    grid = z.grid
    a = grid.alpha
    t = grid.times
    vals = z.values
    g1a = special.gamma(1 - a)
    if z.layout == "cell":
        w = (t[1:] ** (1 - a) - t[:-1] ** (1 - a)) / (1 - a) / g1a
        return w @ vals[:-1]
    if z.layout != "nodal":
        raise ValueError(f"unknown layout {z.layout!r}")
    m0 = (t[1:] ** (1 - a) - t[:-1] ** (1 - a)) / (1 - a)
    m1 = (t[1:] ** (2 - a) - t[:-1] ** (2 - a)) / (2 - a)
    dt = np.diff(t)
    w_left = (t[1:] * m0 - m1) / dt
    w_right = (m1 - t[:-1] * m0) / dt
    return (w_left @ vals[:-1] + w_right @ vals[1:]) / g1a


def dump_trajectory_csv(field_: SpaceTimeField, path) -> None:
    """Write ``t,x,value`` rows; cell layouts are stamped at the cell midpoint."""
    t = field_.grid.times
    if field_.layout == "cell":
        t = np.append(0.5 * (t[:-1] + t[1:]), t[-1])
    x = field_.mesh.interior
    with open(path, "w") as fh:
        fh.write("t,x,value\n")
        for n, tn in enumerate(t):
            for xi, v in zip(x, field_.values[n]):
                fh.write(f"{tn:.17g},{xi:.17g},{v:.17g}\n")
