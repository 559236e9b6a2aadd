"""Force on a dielectric slab at different positions inside an ideal cavity.

Loads demos/stacks/cavity_with_slab.json (an eps = 4 slab of 200 nm in a
1.5 um vacuum cavity with ideal mirrors) and slides the slab across the
cavity at fixed total span.  Positive force pushes the slab toward the
right mirror.  The centre is an equilibrium, but an unstable one: any
offset pulls the slab further toward the nearer mirror.

Run with:  python3 demos/slab_in_cavity.py
"""

import dataclasses
from pathlib import Path

from castack import load_cavity, slab_in_cavity_force

config = load_cavity(Path(__file__).parent / "stacks" / "cavity_with_slab.json")
span = config.d1 + config.d2

print(
    f"{config.slab_thickness * 1e9:.0f} nm eps = 4 slab, "
    f"{span * 1e6:.2f} um of vacuum between ideal mirrors"
)
print(f"{'d1 [um]':>8s} {'d2 [um]':>8s} {'force [Pa]':>14s}")
for frac in (0.25, 0.35, 0.45, 0.50, 0.55, 0.65, 0.75):
    d1 = frac * span
    res = slab_in_cavity_force(dataclasses.replace(config, d1=d1, d2=span - d1))
    print(f"{d1 * 1e6:8.3f} {(span - d1) * 1e6:8.3f} {res.force:14.6e}")

print()
print("the sign flips at the centre: the slab is drawn to whichever mirror is nearer")
