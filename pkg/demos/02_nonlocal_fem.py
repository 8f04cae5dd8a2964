# # Finite elements for the fractional Laplacian
#
# On a uniform mesh of (-1, 1) the P1 stiffness matrix of (-Delta)^s is a
# dense symmetric Toeplitz matrix, and every entry is available in closed
# form. We solve (-Delta)^s u = 1, whose exact solution is a multiple of
# (1 - x^2)^s, and watch the error fall.

import numpy as np

from fracinv.fem import assemble, l2_error, make_mesh, solve_stationary, stationary_profile

mat = assemble(make_mesh(8), 0.5)
np.set_printoptions(precision=4, suppress=True)
print(mat.stiffness)

# The matrix is full: distant nodes still interact through the kernel.
# Refining shows the rate min(1, s + 1/2) in L2.

for s in (0.2, 0.5, 0.9):
    errs = []
    for n in (32, 64, 128, 256):
        m = assemble(make_mesh(n), s)
        u = solve_stationary(m, np.ones_like)
        errs.append(l2_error(m.mesh, u, lambda x: stationary_profile(x, s)))
    rates = np.log2(np.array(errs[:-1]) / errs[1:])
    print(f"s={s}: errors {np.array(errs)}, observed rates {rates}")
