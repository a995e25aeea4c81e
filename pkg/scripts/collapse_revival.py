"""Atomic inversion for a coherent field, dressed-state expansion against dense evolution.

Prints a coarse table; the full-resolution curve comes from configs/collapse_revival.cfg.
"""

import math
import time

import numpy as np

from cqedsim.fock_core import coherent_state, evolve_series
from cqedsim.jaynes_cummings import JCParams, atom_field_state, atomic_inversion, evolve_dressed, jc_hamiltonian

alpha, lam, dim = math.sqrt(20), 1.0, 128
p = JCParams(omega=1.0, omega0=1.0, lam=lam)
C = coherent_state(alpha, dim)
C /= np.linalg.norm(C)
ts = np.linspace(0, 30 / lam, 200)

t0 = time.perf_counter()
dressed = atomic_inversion(evolve_dressed(p, C, ts))
t1 = time.perf_counter()
dense = atomic_inversion(evolve_series(jc_hamiltonian(p, dim + 1), atom_field_state([1, 0], np.append(C, 0)), ts))
t2 = time.perf_counter()

print(f"dressed {t1 - t0:.3f}s, dense {t2 - t1:.3f}s, max |diff| {np.max(np.abs(dressed - dense)):.2e}")
revival = 2 * math.pi * alpha / lam
print(f"expected revival near t = {revival:.2f}")
for t, w in zip(ts[::10], dressed[::10]):
    print(f"{t:7.2f} {w:+.4f}")
