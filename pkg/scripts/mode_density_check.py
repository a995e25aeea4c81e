"""Compare the continuum mode density with an exact lattice count in a periodic box.

For shells of growing size the relative gap shrinks roughly like 1/radius.
"""

import math

from cqedsim.field_modes import PhysicalConstants, count_box_modes, mode_density

c = PhysicalConstants()
w_lo = 2 * math.pi * 5e14
w_hi = 1.02 * w_lo
print(f"{'radius':>8} {'modes':>10} {'lattice/continuum - 1':>22}")
for radius in (10, 20, 40, 80, 160, 320):
    L = radius * 2 * math.pi * c.c / w_lo
    count = count_box_modes(L, w_lo, w_hi, c)
    continuum = L**3 * (w_hi**3 - w_lo**3) / (3 * math.pi**2 * c.c**3)
    print(f"{radius:>8} {count:>10} {count / continuum - 1:>22.3e}")
print(f"rho(500 THz) = {mode_density(w_lo, c):.6e} s m^-3")
