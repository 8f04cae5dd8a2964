# # Why the backward problem is ill-posed
#
# Perturbing the final data by phi_p / sqrt(lambda_p) costs 1/sqrt(lambda_p)
# in the data but 1/(sqrt(lambda_p) E(-lambda_p T^a)) in the initial value.

import numpy as np

from fracinv.fem import assemble, make_mesh
from fracinv.inverse import NoiseSpec, add_noise
from fracinv.spectral import compute_eigenbasis, forward_series, illposedness_demo, inverse_series

mat = assemble(make_mesh(128), 0.5)
basis = compute_eigenbasis(mat)
t = illposedness_demo(basis, 0.5, 1.0)
for p in (1, 2, 5, 10, 20, 50, 100, 127):
    i = p - 1
    print(f"p={p:3d}  lambda={t['lambda_p'][i]:8.2f}  data gap={t['data_gap'][i]:.3f}  "
          f"solution gap={t['solution_gap'][i]:7.3f}  amplification={t['amplification'][i]:7.1f}")

# The amplification grows only linearly in lambda_p: the inversion is mildly
# ill-posed. Naively inverting noisy data of a smooth profile therefore
# barely hurts on this mesh...

g = np.sin(np.pi * mat.mesh.interior)
h = forward_series(g, basis, 0.5, 1.0)
noisy, theta = add_noise(h, NoiseSpec(0.01, seed=0), mat.norm)
print(mat.norm(inverse_series(noisy, basis, 0.5, 1.0) - g) / mat.norm(g))

# ...but noise concentrated in high modes is amplified in full.

rough = h + 1e-3 * basis.vectors[:, -1]
print(mat.norm(inverse_series(rough, basis, 0.5, 1.0) - g), 1e-3 * t["amplification"][-1])
