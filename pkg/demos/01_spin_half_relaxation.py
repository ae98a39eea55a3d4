# coding: utf-8

# # A spin one-half in an ohmic bath
#
# The smallest case of the model is the ordinary spin-boson problem. Here the
# full density-matrix master equation and the three Bloch equations describe
# the same dynamics, so they make a useful cross-check before going to larger
# spins.
#
# Energies are in units of the tunnel amplitude T_c and times in 1/T_c.

# %%

import numpy as np

from largespin import BathSpec, SpinSize, SystemParams, compute_rates
from largespin.analysis import equilibrium_bloch, equilibrium_thermodynamic
from largespin.dynamics import evolve_bloch, evolve_master

params = SystemParams(SpinSize(1), epsilon=1.0)
bath = BathSpec(alpha=0.05, omega_c=50.0, temperature=2.0)
rates = compute_rates(params, bath)
rates

# %% [markdown]
# Start from spin up and integrate both descriptions for 30 time units.

# %%

master = evolve_master(params, rates=rates, t_end=30.0)
bloch = evolve_bloch(params, rates=rates, t_end=30.0)
print("max |Jz master - Jz Bloch| =", np.abs(master.jz - bloch.jz).max())

# %% [markdown]
# The oscillation is damped and <J_z> settles at the stationary point of the
# Bloch equations. At small coupling that point approaches the thermal value
# of the isolated spin, but the two are not the same: the bath shifts it.

# %%

eq = equilibrium_bloch(params, rates)
th = equilibrium_thermodynamic(params, bath.temperature)
late = evolve_bloch(params, rates=rates, t_end=300.0)
print(f"Jz(t=300)      {late.jz[-1]: .6f}")
print(f"Bloch fixed pt {eq.jz_inf: .6f}")
print(f"thermal        {th.jz_inf: .6f}")

# %%

for alpha in (1e-2, 1e-3, 1e-4):
    r = compute_rates(params, bath.with_alpha(alpha))
    e = equilibrium_bloch(params, r)
    print(f"alpha={alpha:g}  gap to thermal = {abs(e.jz_inf - th.jz_inf):.3e}")

# %%

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    ax[0].plot(master.times, master.jz, label="master")
    ax[0].plot(bloch.times, bloch.jz, "--", label="Bloch")
    ax[0].axhline(eq.jz_inf, color="k", lw=0.5)
    ax[0].set_ylabel("<J_z>")
    ax[0].legend()
    ax[1].plot(master.times, master.jx)
    ax[1].set_ylabel("<J_x>")
    ax[1].set_xlabel(r"$t\,T_c$")
    fig.savefig("spin_half_relaxation.png", dpi=120)
