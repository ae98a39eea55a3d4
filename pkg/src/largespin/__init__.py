"""Dissipative dynamics of a spin of arbitrary size J coupled to an ohmic bath.

The spin couples through J_z to a bosonic bath, H = eps J_z + 2 T_c J_x + J_z sum_q g_q (a_q^+ + a_-q) + ...,
and is treated in the Born-Markov approximation. Submodules:

spin
    angular-momentum matrices, the coherent Hamiltonian, the y-rotation onto the Dicke frame
rates
    ohmic spectral function, exponential integral, the complex bath rates
quadrature
    principal-value integrals on the half line
dynamics
    master equation, spin-1/2 Bloch equations, RK4 trajectories
analysis
    equilibria, quantum-beat predictor, decay-time and beat-frequency extraction
cli, config, io
    scenario presets, CSV/summary output, the ``largespin`` command
"""

from .analysis import (
    BeatPrediction,
    EquilibriumValues,
    beat_frequency,
    beat_prediction,
    equilibrium_bloch,
    equilibrium_thermodynamic,
    extract_beat_frequency,
    extract_decay_time,
    predicted_beat_trace,
)
from .dynamics import (
    InstabilityWarning,
    PositivityWarning,
    Trajectory,
    bloch_rhs,
    evolve_bloch,
    evolve_master,
    initial_state_spin_up,
    initial_state_x_up,
    integrate,
    master_rhs,
)
from .exceptions import AnalysisError, ConvergenceError, IntegrationError, NumericalError
from .rates import (
    BathSpec,
    RateSet,
    compute_gamma,
    compute_gamma_c,
    compute_gamma_s,
    compute_rates,
    exp_integral_ei,
    spectral_density,
)
from .quadrature import pv_integral
from .spin import SpinOperators, SpinSize, SystemParams, build_spin_operators, dicke_rotate, hamiltonian

__version__ = "0.1.0"
