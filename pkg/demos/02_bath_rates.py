# coding: utf-8

# # Bath rates two ways
#
# The rates Gamma_c and Gamma_s contain principal-value integrals of the ohmic
# spectral density rho(w) = 2 alpha w exp(-w/omega_c). At zero temperature
# they reduce to exponential integrals; otherwise they have to be done
# numerically. Comparing the two routes is the quickest sanity check on
# either.

# %%

import numpy as np

from largespin import BathSpec
from largespin.rates import compute_gamma, compute_gamma_c, compute_gamma_s

bath = BathSpec(alpha=0.01, omega_c=50.0)
for delta in (0.5, 2.0, 10.0, 40.0):
    a = compute_gamma_c(delta, bath, "analytic")
    q = compute_gamma_c(delta, bath, "quadrature")
    print(f"Delta={delta:5g}  Gamma_c={a:.10f}  |diff|={abs(a - q):.1e}")

# %% [markdown]
# As the level spacing goes to zero Gamma_c tends to Gamma,
# whose real part is 2 pi alpha k_B T and imaginary part -2 alpha omega_c.

# %%

warm = BathSpec(alpha=0.01, omega_c=50.0, temperature=1.5)
print(compute_gamma(warm))
for delta in np.geomspace(1e-1, 1e-8, 4):
    print(f"Delta={delta:.0e}  Gamma_c={compute_gamma_c(delta, warm, 'quadrature'):.10f}")

# %% [markdown]
# At finite temperature Re Gamma_s only has the quadrature route. Its
# imaginary part stays -pi rho(Delta)/2 whatever the temperature.

# %%

for temperature in (0.0, 0.5, 2.0, 10.0):
    print(temperature, compute_gamma_s(2.0, BathSpec(0.01, 50.0, temperature)))
