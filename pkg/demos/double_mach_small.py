"""
Double Mach reflection on a coarse 240 x 60 grid.

A Mach 10 shock meets a 30 degree wedge; the bottom boundary reflects behind
x = 1/6 and the top boundary follows the exact shock position. The run takes
about a minute on one core. The snapshot (x, y, rho, u, v, p) is written to
``out/double_mach.csv``.

Pass a resolution such as ``800x200`` to run the reduced acceptance size
(about 20 minutes on one core).

    python demos/double_mach_small.py [NXxNY] [scheme]
"""

import pathlib
import sys

from aoweno import harness
from aoweno.physics import GasModel, primitive

n = tuple(int(k) for k in (sys.argv[1] if len(sys.argv) > 1 else "240x60").split("x"))
scheme = sys.argv[2] if len(sys.argv) > 2 else "ao543"

res = harness.simulate("double_mach", scheme, n)
rho, _, p = primitive(res.u, GasModel(1.4))
print(f"{scheme} {n[0]}x{n[1]}: {res.steps} steps in {res.seconds:.1f} s, "
      f"min density {rho.min():.3g}, min pressure {p.min():.3g}")

out = pathlib.Path("out")
out.mkdir(exist_ok=True)
harness.write_snapshot(out / "double_mach.csv", res)
