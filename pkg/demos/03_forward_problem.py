# # The forward problem: L1 time stepping against the eigen-expansion
#
# The L1 scheme marches d^a u + (-Delta)^s u = 0 in time. Expanding in the
# discrete eigenpairs gives the exact-in-time answer, so the two can be
# compared directly.

import numpy as np

from fracinv.fem import assemble, make_mesh
from fracinv.spectral import compute_eigenbasis, forward_series
from fracinv.time_stepper import TimeGrid, solve_forward

mat = assemble(make_mesh(64), 0.5)
basis = compute_eigenbasis(mat)
x = mat.mesh.interior
g = np.where(np.abs(x) < 0.5, 1.0, 0.0)

exact = forward_series(g, basis, 0.5, 1.0)
for K in (25, 50, 100, 200, 400):
    u = solve_forward(g, mat, TimeGrid(K, 1.0, 0.5)).final
    print(f"K={K:4d}  L2 gap to eigen-expansion: {mat.norm(u - exact):.3e}")

# The solution at T is much smoother than g: high modes have been damped by
# E(-lambda_k), which is about 1/(lambda_k sqrt(pi)) for large lambda_k.

print(np.round(basis.coefficients(g)[:8], 4))
print(np.round(basis.coefficients(exact)[:8], 4))
