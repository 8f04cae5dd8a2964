# # The Mittag-Leffler function
#
# Every eigenmode of the fractional diffusion equation decays like
# E_a(-lambda t^a). Unlike the exponential it only decays algebraically,
# which is what makes the backward problem mildly (not severely) ill-posed.

import numpy as np
from scipy.special import erfcx

from fracinv.special_functions import decay_constant, mittag_leffler

# For alpha = 1 we get the exponential back.

z = np.linspace(-30, 5, 8)
print(np.c_[z, mittag_leffler(z, 1.0), np.exp(z)])

# For alpha = 1/2 there is a closed form, E(-x) = erfcx(x).

x = np.geomspace(1e-2, 1e6, 9)
print(np.max(np.abs(mittag_leffler(-x, 0.5) / erfcx(x) - 1)))

# Tail behaviour: E_a(-x) ~ 1 / (x Gamma(1 - a)), so (1 + x) E(-x) stays bounded.

for a in (0.2, 0.5, 0.9):
    tail = (1 + x) * mittag_leffler(-x, a)
    print(f"alpha={a}: (1+x)E(-x) at x=1e6 is {tail[-1]:.4f}, "
          f"sup over [0, 1e6] is {decay_constant(a):.4f}")

# Compare with exp(-x): at x = 50 the exponential is ~2e-22.

print(mittag_leffler(-50.0, 0.5), np.exp(-50.0))
