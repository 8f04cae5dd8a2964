"""Eigenfunction expansions of the discrete fractional Laplacian.

The eigenpairs are those of ``stiffness @ phi = lam * mass @ phi``, so every
statement here is about the discretised operator. They give an independent
route to the forward solution, the exact inverse and the truncated operators,
which is how the FEM/L1 path is cross-checked.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import linalg, special

from .fem import NonlocalMatrices
from .special_functions import mittag_leffler

__all__ = [
    "EigenBasis",
    "compute_eigenbasis",
    "forward_series",
    "inverse_series",
    "truncation_operator",
    "illposedness_demo",
    "semidiscrete_solution",
    "write_illposedness_csv",
]


@dataclass(frozen=True)
class EigenBasis:
    """Ascending eigenvalues and mass-orthonormal eigenvectors (as columns)."""

    lambdas: np.ndarray
    vectors: np.ndarray = field(repr=False)
    mass: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return self.lambdas.size

    def coefficients(self, g) -> np.ndarray:
        return self.vectors.T @ (self.mass @ np.asarray(g, dtype=float))

    def synthesize(self, coef) -> np.ndarray:
        return self.vectors[:, : len(coef)] @ coef

    def decay(self, alpha: float, t: float) -> np.ndarray:
        """``E_{alpha,1}(-lambda_k t**alpha)`` for every mode."""
        return mittag_leffler(-self.lambdas * t**alpha, alpha)


def _cache_key(matrices: NonlocalMatrices, m: int) -> str:
    h = hashlib.sha1()
    h.update(f"{matrices.mesh.n_intervals}:{matrices.s!r}:{m}".encode())
    return h.hexdigest()[:16]


def compute_eigenbasis(matrices: NonlocalMatrices, m: int | None = None,
                       cache_dir=None) -> EigenBasis:
    """Smallest ``m`` eigenpairs (all of them by default).

    With ``cache_dir`` set, the decomposition is stored as ``.npz`` keyed by
    ``(N, s, m)`` and reused.
    """
    n = matrices.mesh.n_dofs
    m = n if m is None else int(m)
    if not 1 <= m <= n:
        raise ValueError(f"can retain between 1 and {n} modes, got {m}")
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"eig_{_cache_key(matrices, m)}.npz"
        if path.exists():
            data = np.load(path)
            return EigenBasis(data["lambdas"], data["vectors"], matrices.mass)
    try:
        lam, vec = linalg.eigh(matrices.stiffness, matrices.mass,
                               subset_by_index=[0, m - 1])
    except linalg.LinAlgError as exc:
        raise linalg.LinAlgError(f"generalized eigensolver failed: {exc}") from exc
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(path, lambdas=lam, vectors=vec)
    return EigenBasis(lam, vec, matrices.mass)


def forward_series(g, basis: EigenBasis, alpha: float, t: float) -> np.ndarray:
    """``sum_k g_k E(-lambda_k t**alpha) phi_k``."""
    return basis.synthesize(basis.coefficients(g) * basis.decay(alpha, t))


def inverse_series(h, basis: EigenBasis, alpha: float, T: float,
                   truncation: int | None = None) -> np.ndarray:
    """Naive inverse ``sum_{k <= truncation} h_k / E(-lambda_k T**alpha) phi_k``."""
    m = basis.count if truncation is None else int(truncation)
    if not 0 <= m <= basis.count:
        raise ValueError(f"truncation must lie in [0, {basis.count}], got {m}")
    e = basis.decay(alpha, T)[:m]
    tiny = np.flatnonzero(e < 1e-300)
    if tiny.size:
        raise OverflowError(
            f"mode {tiny[0] + 1} has E(-lambda T^alpha) = {e[tiny[0]]:.3e}; "
            "its inverse overflows")
    return basis.synthesize(basis.coefficients(h)[:m] / e)


def truncation_operator(g, basis: EigenBasis, alpha: float, T: float,
                        n_modes: int) -> np.ndarray:
    """Finite-rank part ``A_n g = sum_{k <= n} g_k E(-lambda_k T**alpha) phi_k``."""
    if not 0 <= n_modes <= basis.count:
        raise ValueError(f"n_modes must lie in [0, {basis.count}], got {n_modes}")
    if n_modes == 0:
        return np.zeros(basis.vectors.shape[0])
    coef = basis.coefficients(g)[:n_modes] * basis.decay(alpha, T)[:n_modes]
    return basis.synthesize(coef)


def illposedness_demo(basis: EigenBasis, alpha: float, T: float,
                      p_max: int | None = None) -> dict:
    """Data perturbation ``phi_p / sqrt(lambda_p)`` against the zero datum.

    Returns arrays ``p, lambda_p, data_gap, solution_gap, amplification`` with
    ``data_gap = 1/sqrt(lambda_p)`` and ``solution_gap = data_gap / E(-lambda_p T**alpha)``.
    """
    p_max = basis.count if p_max is None else int(p_max)
    if not 1 <= p_max <= basis.count:
        raise ValueError(f"p_max must lie in [1, {basis.count}]")
    lam = basis.lambdas[:p_max]
    amp = 1.0 / basis.decay(alpha, T)[:p_max]
    data_gap = 1.0 / np.sqrt(lam)
    return {
        "p": np.arange(1, p_max + 1),
        "lambda_p": lam,
        "data_gap": data_gap,
        "solution_gap": data_gap * amp,
        "amplification": amp,
    }


def write_illposedness_csv(table: dict, path, header: str = "") -> None:
    cols = ["p", "lambda_p", "data_gap", "solution_gap", "amplification"]
    data = np.column_stack([table[c] for c in cols])
    np.savetxt(path, data, delimiter=",", header=header + ",".join(cols),
               comments="", fmt=["%d"] + ["%.10e"] * 4)


def semidiscrete_solution(basis: EigenBasis, alpha: float, t: float, g,
                          const_load=None, power_load=None) -> np.ndarray:
    """Exact-in-time solution of ``M d^alpha U + A U = c + t**alpha p``.

    ``c`` and ``p`` are load vectors (already mass-weighted). Per mode::

        y(t) = g_k E_a(-x) + c_k t^a E_{a,a+1}(-x) + p_k Gamma(1+a) t^{2a} E_{a,2a+1}(-x)

    with ``x = lambda_k t**a``. This isolates the time-stepping error.
    """
    x = basis.lambdas * t**alpha
    y = basis.coefficients(g) * mittag_leffler(-x, alpha)
    if const_load is not None:
        y = y + (basis.vectors.T @ const_load) * t**alpha * mittag_leffler(-x, alpha, alpha + 1)
    if power_load is not None:
        y = y + ((basis.vectors.T @ power_load) * special.gamma(1 + alpha)
                 * t ** (2 * alpha) * mittag_leffler(-x, alpha, 2 * alpha + 1))
    return basis.synthesize(y)
