# # Recovering the initial value
#
# Conjugate gradients on the Tikhonov functional, stopped by the discrepancy
# principle. Three forward solves per iteration.

import numpy as np

from fracinv.experiments import TargetFunction
from fracinv.fem import assemble, make_mesh
from fracinv.inverse import CgmConfig, ForwardContext, NoiseSpec, add_noise, choose_gamma, run_cgm
from fracinv.time_stepper import TimeGrid

ctx = ForwardContext(assemble(make_mesh(200), 0.5), TimeGrid(100, 1.0, 0.5))
x = ctx.matrices.mesh.interior
truth = TargetFunction("trig")(x)
h = ctx.apply(truth)

# Noise-free data: run 100 iterations from g0 = 1.

g, trace = run_cgm(h, 0.0, CgmConfig(), ctx, truth)
print("noise free:", trace.stop_reason, trace.stopping_index, f"error {trace.errors[-1]:.4f}")

# Noisy data with the a priori gamma and discrepancy stopping.

for mu in (0.01, 0.05, 0.1):
    noisy, theta = add_noise(h, NoiseSpec(mu, seed=0), ctx.norm)
    g, trace = run_cgm(noisy, theta, CgmConfig(gamma=choose_gamma(theta)), ctx, truth)
    print(f"mu={mu}: theta={theta:.2e}, stopped at {trace.stopping_index} "
          f"({trace.stop_reason}), error {trace.errors[-1]:.4f}")

# The error is concentrated next to x = +-1, where g0 = 1 meets the zero
# exterior condition; in the interior the reconstruction is much better.

inner = np.abs(x) < 0.9
print(np.sqrt(np.mean((g - truth)[inner] ** 2)), np.sqrt(np.mean((g - truth) ** 2)))
