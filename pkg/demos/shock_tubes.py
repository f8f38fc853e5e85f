"""
Sod and Lax shock tubes at N = 200.

The density L1 error against the exact Riemann solution ranks the schemes;
the adaptive-order family resolves the contact with less smearing than
WENO-JS and WENO-Z. Density profiles go to ``out/`` as CSV for plotting.

    python demos/shock_tubes.py
"""

import pathlib

from aoweno import harness

out = pathlib.Path("out")
out.mkdir(exist_ok=True)

schemes = ["js", "z", "zq", "ao53", "aon53", "ao543"]
for problem in ("sod", "lax"):
    cmp = harness.shock_comparison(problem, schemes, 200)
    (out / f"{problem}_profiles.csv").write_text(cmp.profiles_csv())
    print(f"# {problem}: density L1 error, smallest first")
    for name, err in sorted(cmp.l1.items(), key=lambda kv: kv[1]):
        print(f"{name:6s} {err:.4e}")
    print()
