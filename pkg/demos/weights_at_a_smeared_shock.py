"""
Why the adaptive-order weights break down in the blast wave.

The window below is the u + c characteristic component of the split flux at
one face of the N = 800 blast-wave run, one step before AO(5,4,3) produces a
negative pressure. The strong shock is smeared over four cells, so all three
quadratic stencils see it and their smoothness indicators differ by only a
factor of about 30.

WENO-JS weights go like 1/beta^2 and put almost everything on the smoothest
quadratic. The Z-type weights of the adaptive-order schemes compare each
beta with the global contrast tau; with every beta large, tau/beta stays
modest and the weights drift back toward the linear ones, which favour the
quartic. The quartic overshoots, so the reconstructed flux drops well below
the smooth-stencil value.

    python demos/weights_at_a_smeared_shock.py
"""

import numpy as np

from aoweno.stencil import SchemeParams, beta3, candidate_values, interface_weights, reconstruct_interface

window = np.array([981.0818, 337.9444, 35.0216, -4.5994, -6.5193])

print("beta of the three quadratics:", np.array(beta3(*window)).round(1))
p3_m1, p3_0, p3_p1, p4c, _, p5 = candidate_values(*window)
print(f"quadratics {p3_m1:.2f} {p3_0:.2f} {p3_p1:.2f}, central cubic {p4c:.2f}, quartic {p5:.2f}")
print()

for name in ("js", "z", "ao53", "aon53", "ao543"):
    params = SchemeParams.for_variant(name)
    value = reconstruct_interface(window, params)
    line = f"{name:6s} interface value {value:8.3f}"
    if name.startswith("ao"):
        _, w = interface_weights(window, params)
        line += f"   weight on the quartic {float(w[-1]):.2f}"
    print(line)
