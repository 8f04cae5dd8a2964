"""P1 finite elements for the integral fractional Laplacian on (-1, 1).

Degrees of freedom are the interior nodes; the exterior condition
``u = 0`` outside the interval holds by construction.

On a uniform mesh the stiffness matrix is Toeplitz: the hat functions vanish
outside the interval, so the double integral may be taken over the whole
plane, where it is translation invariant. Writing the form as a convolution
of the kernel with the autocorrelation of the hat (a cubic B-spline), and the
kernel as a fourth derivative of ``|r|**(3 - 2s)``, gives every entry in
closed form as a fourth difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg, special

__all__ = [
    "Mesh1D",
    "NonlocalMatrices",
    "make_mesh",
    "normalization_constant",
    "stiffness_column",
    "assemble_stiffness",
    "assemble_mass",
    "assemble",
    "load_vector",
    "mass_action",
    "solve_stationary",
    "stationary_profile",
    "l2_error",
    "dump_matrix_csv",
]


@dataclass(frozen=True)
class Mesh1D:
    """Uniform partition of [-1, 1] into ``n_intervals`` elements."""

    n_intervals: int
    nodes: np.ndarray = field(repr=False)

    @property
    def dx(self) -> float:
        return 2.0 / self.n_intervals

    @property
    def interior(self) -> np.ndarray:
        """Interior node coordinates, in degree-of-freedom order."""
        return self.nodes[1:-1]

    @property
    def n_dofs(self) -> int:
        return self.n_intervals - 1

    def extend(self, u):
        """Pad interior values with the zero boundary values."""
        u = np.asarray(u)
        pad = [(1, 1)] + [(0, 0)] * (u.ndim - 1)
        return np.pad(u, pad)


def make_mesh(n_intervals: int) -> Mesh1D:
    if int(n_intervals) != n_intervals or n_intervals < 4:
        raise ValueError(f"need an integer N >= 4, got {n_intervals}")
    n = int(n_intervals)
    nodes = np.linspace(-1.0, 1.0, n + 1)
    return Mesh1D(n, nodes)


def normalization_constant(s: float) -> float:
    """``C_{1,s} = 4**s s Gamma(s + 1/2) / (sqrt(pi) Gamma(1 - s))``."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s must lie in (0, 1), got {s}")
    return 4.0**s * s * special.gamma(s + 0.5) / (np.sqrt(np.pi) * special.gamma(1.0 - s))


def _reduced_power(r, s):
    # |r|**(3-2s) minus r**2, divided by (1-2s); the r**2 part is annihilated
    # by the fourth difference, and the quotient has the limit r**2 log r.
    r = np.abs(np.asarray(r, dtype=float))
    out = np.zeros_like(r)
    pos = r > 0
    e = 1.0 - 2.0 * s
    lr = np.log(r[pos])
    if abs(e) < 1e-12:
        out[pos] = r[pos] ** 2 * lr
    else:
        out[pos] = r[pos] ** 2 * np.expm1(e * lr) / e
    return out


def stiffness_column(n_intervals: int, s: float) -> np.ndarray:
    """First column of the Toeplitz stiffness matrix (entries ``a_0 .. a_{N-2}``)."""
    h = 2.0 / n_intervals
    k = np.arange(n_intervals - 1, dtype=float)
    fourth = (_reduced_power(k - 2, s) - 4 * _reduced_power(k - 1, s)
              + 6 * _reduced_power(k, s) - 4 * _reduced_power(k + 1, s)
              + _reduced_power(k + 2, s))
    scale = normalization_constant(s) / (2 * s * (2 - 2 * s) * (3 - 2 * s))
    return scale * h ** (1 - 2 * s) * fourth


def assemble_stiffness(mesh: Mesh1D, s: float) -> np.ndarray:
    """Dense matrix of ``(C_{1,s}/2) * iint (phi_i(x)-phi_i(y))(phi_j(x)-phi_j(y)) / |x-y|**(1+2s)``.

    This is the weak form of ``(-Delta)^s``, i.e. half the bilinear form
    integrated over the plane minus the exterior square.
    """
    return linalg.toeplitz(stiffness_column(mesh.n_intervals, s))


def assemble_mass(mesh: Mesh1D) -> np.ndarray:
    n = mesh.n_dofs
    h = mesh.dx
    return h / 6.0 * (4.0 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1))


@dataclass
class NonlocalMatrices:
    """Stiffness and mass matrices for one ``(mesh, s)`` pair.

    Cholesky factorisations of ``c * mass + stiffness`` are cached by ``c``.
    """

    mesh: Mesh1D
    s: float
    stiffness: np.ndarray = field(repr=False)
    mass: np.ndarray = field(repr=False)
    _factors: dict = field(default_factory=dict, repr=False)

    @property
    def c_ds(self) -> float:
        return normalization_constant(self.s)

    def factor(self, shift: float = 0.0):
        key = float(shift)
        if key not in self._factors:
            a = self.stiffness + key * self.mass
            try:
                self._factors[key] = linalg.cho_factor(a)
            except linalg.LinAlgError as exc:
                raise linalg.LinAlgError(
                    f"Cholesky factorisation failed (N={self.mesh.n_intervals}, "
                    f"s={self.s}, shift={key})") from exc
        return self._factors[key]

    def solve(self, rhs, shift: float = 0.0):
        return linalg.cho_solve(self.factor(shift), rhs)

    def inner(self, u, v) -> float:
        return float(u @ (self.mass @ v))

    def norm(self, u) -> float:
        return float(np.sqrt(max(self.inner(u, u), 0.0)))


def assemble(mesh: Mesh1D, s: float) -> NonlocalMatrices:
    return NonlocalMatrices(mesh, s, assemble_stiffness(mesh, s), assemble_mass(mesh))


_GAUSS = np.polynomial.legendre.leggauss(8)


def load_vector(mesh: Mesh1D, f) -> np.ndarray:
    """``(f, phi_i)`` for interior hats, by 8-point Gauss-Legendre per element."""
    x = mesh.nodes
    h = mesh.dx
    gp, gw = _GAUSS
    xq = 0.5 * (x[:-1, None] + x[1:, None]) + 0.5 * h * gp  # (N, 8)
    wq = 0.5 * h * gw
    fq = np.asarray(f(xq), dtype=float) * wq
    left = (x[1:, None] - xq) / h   # hat of the element's left node
    right = (xq - x[:-1, None]) / h
    b = np.zeros(mesh.n_intervals + 1)
    b[:-1] += (fq * left).sum(axis=1)
    b[1:] += (fq * right).sum(axis=1)
    return b[1:-1]


def mass_action(mesh: Mesh1D, samples) -> np.ndarray:
    """Mass matrix applied to nodal samples.

    ``samples`` holds all ``N + 1`` nodal values, or only the interior ones
    (boundary values then taken as zero).
    """
    f = np.asarray(samples, dtype=float)
    if f.shape[0] == mesh.n_dofs:
        f = mesh.extend(f)
    if f.shape[0] != mesh.n_intervals + 1:
        raise ValueError(f"expected {mesh.n_intervals + 1} nodal samples, got {f.shape[0]}")
    h = mesh.dx
    return h / 6.0 * (f[:-2] + 4.0 * f[1:-1] + f[2:])


def solve_stationary(matrices: NonlocalMatrices, rhs) -> np.ndarray:
    """Solve ``(-Delta)^s u = f`` with ``u = 0`` outside the interval.

    ``rhs`` is either a callable (load by quadrature) or nodal samples (load
    by the mass matrix).
    """
    mesh = matrices.mesh
    b = load_vector(mesh, rhs) if callable(rhs) else mass_action(mesh, rhs)
    return matrices.solve(b)


def stationary_profile(x, s: float):
    """Solution of ``(-Delta)^s w = 1`` on (-1, 1), zero outside."""
    x = np.asarray(x, dtype=float)
    c = np.sqrt(np.pi) * 4.0**-s / (special.gamma(s + 0.5) * special.gamma(s + 1.0))
    return c * np.clip(1.0 - x**2, 0.0, None) ** s


def l2_error(mesh: Mesh1D, u_h, exact) -> float:
    """Continuous L2 distance between the P1 function ``u_h`` and ``exact``."""
    uf = mesh.extend(u_h)
    x = mesh.nodes
    h = mesh.dx
    gp, gw = np.polynomial.legendre.leggauss(10)
    xq = 0.5 * (x[:-1, None] + x[1:, None]) + 0.5 * h * gp
    t = (xq - x[:-1, None]) / h
    uq = uf[:-1, None] * (1 - t) + uf[1:, None] * t
    err = (np.asarray(exact(xq)) - uq) ** 2
    return float(np.sqrt((err * (0.5 * h * gw)).sum()))


def dump_matrix_csv(matrix, path) -> None:
    """Write ``row,col,value`` triples (zero entries skipped)."""
    m = np.asarray(matrix)
    rows, cols = np.nonzero(m)
    with open(path, "w") as fh:
        fh.write("row,col,value\n")
        for i, j in zip(rows, cols):
            fh.write(f"{i},{j},{m[i, j]:.17g}\n")
