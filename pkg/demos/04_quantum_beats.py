# coding: utf-8

# # Quantum beats of a spin one
#
# Without bias the levels of 2 T_c J_x are equally spaced, and <J_z>
# oscillates at 2 T_c. Nonresonant bosons shift the middle level differently
# from the outer two. The spectrum is then no longer equidistant and the
# oscillation beats. Second-order perturbation theory predicts the beat
# frequency, which is close to alpha omega_c.

# %%

import numpy as np

from largespin import BathSpec, SpinSize, SystemParams
from largespin.analysis import beat_frequency, beat_prediction, extract_beat_frequency, predicted_beat_trace
from largespin.dynamics import evolve_master

params = SystemParams(SpinSize(2), epsilon=0.0)
bath = BathSpec(alpha=0.0025, omega_c=50.0)
pred = beat_prediction(params, bath)
pred, beat_frequency(bath.alpha, bath.omega_c)

# %%

traj = evolve_master(params, bath, t_end=80.0, dt=0.001, sample_every=1)
measured = extract_beat_frequency(traj)
print(f"measured {measured:.5f}  predicted {pred.omega_b:.5f}  alpha*omega_c {bath.alpha * bath.omega_c:.5f}")

# %% [markdown]
# At ten times the coupling the damping wins before a single beat period has
# passed, and the extractor says so rather than returning a number.

# %%

from largespin.exceptions import AnalysisError

strong = evolve_master(params, bath.with_alpha(0.025), t_end=80.0, dt=0.001, sample_every=1)
try:
    print(extract_beat_frequency(strong))
except AnalysisError as exc:
    print("no beat:", exc)

# %%

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(traj.times, traj.jz, lw=0.6, label="master equation")
    ax.plot(traj.times, np.cos(pred.omega_b * traj.times), "k--", lw=0.8, label="cos(omega_b t)")
    ax.plot(traj.times, predicted_beat_trace(pred, traj.times), lw=0.3, alpha=0.5, label="undamped prediction")
    ax.set_xlabel(r"$t\,T_c$")
    ax.set_ylabel("<J_z>")
    ax.legend()
    fig.savefig("quantum_beats.png", dpi=120)
