# coding: utf-8

# # Superradiant decay of larger spins
#
# With a strong bias (eps = 10 T_c) the spin starts fully up and relaxes
# toward the lower levels. Transition matrix elements grow like J near M = 0,
# so a larger spin crosses <J_z> = 0 sooner: the Dicke effect.

# %%

import warnings

from largespin import BathSpec, SpinSize, SystemParams
from largespin.analysis import extract_decay_time
from largespin.dynamics import PositivityWarning, evolve_master

bath = BathSpec(alpha=0.005, omega_c=50.0, temperature=1.0)
trajectories = {}
for two_j in (1, 4, 10, 20):
    params = SystemParams(SpinSize(two_j), epsilon=10.0)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PositivityWarning)
        traj = evolve_master(params, bath, t_end=300.0, dt=0.0005)
    trajectories[two_j] = traj
    note = "  (left the positive cone, min eig %.3f)" % traj.min_eig.min() if caught else ""
    print(f"J={SpinSize(two_j)!s:>4}  decay time {extract_decay_time(traj):7.2f}{note}")

# %% [markdown]
# The master equation is of Redfield type, so positivity is not guaranteed.
# For J = 5 and 10 the late-time state has a small negative eigenvalue. The
# decay-time comparison is unaffected, but the steady state should not be
# read too literally.

# %%

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4))
    for two_j, traj in trajectories.items():
        ax.plot(traj.times, traj.normalized_jz, label=f"J={SpinSize(two_j)}")
    ax.set_xlabel(r"$t\,T_c$")
    ax.set_ylabel("<J_z>/J")
    ax.legend()
    fig.savefig("superradiance.png", dpi=120)
