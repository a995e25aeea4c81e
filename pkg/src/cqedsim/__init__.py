"""Cavity-QED simulations on truncated Fock spaces.

Submodules:

- ``fock_core``: ladder operators, number/coherent states, exact evolution
- ``field_modes``: single-mode field statistics and cavity mode counting
- ``thermal_equilibrium``: thermal photon statistics
- ``semiclassical_perturbation``: driven-atom perturbation theory and an ODE oracle
- ``jaynes_cummings``: dressed states and exact Jaynes-Cummings dynamics
- ``dispersive_cavity``: large-detuning dynamics and atom-field cat states
- ``fabry_perot``: classical Fabry-Perot response
- ``dual_rail_optics``: dual-rail photonic qubit gates
- ``scenarios`` / ``cli``: config-driven CSV runs
"""

__version__ = "0.1.0"
