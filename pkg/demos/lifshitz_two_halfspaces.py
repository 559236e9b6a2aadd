"""Force between two metallic half-spaces across a vacuum gap.

Loads demos/stacks/two_halfspaces.json (Drude mirrors, omega_p = 1.4e16,
gamma = 5e13) and sweeps the gap.  At separations long compared with the
plasma wavelength the mirrors act ideal; at short range the field
penetrates the metal and the force falls below the ideal-mirror value.
A thin absorbing coating on each mirror shifts the force again.

Run with:  python3 demos/lifshitz_two_halfspaces.py
"""

import math
from pathlib import Path

from castack import C, HBAR, force_per_area, load_stack

STACKS = Path(__file__).parent / "stacks"

stack = load_stack(STACKS / "two_halfspaces.json")
print("bare Drude mirrors, vacuum gap")
print(f"{'gap [um]':>9s} {'force [Pa]':>14s} {'vs ideal':>9s}")
for d in (0.1e-6, 0.2e-6, 0.5e-6, 1e-6, 2e-6, 4e-6):
    res = force_per_area(stack.with_thickness(1, d), 1)
    ideal = math.pi**2 * HBAR * C / (240.0 * d**4)
    print(f"{d * 1e6:9.2f} {res.f_minus:14.6e} {res.f_minus / ideal:9.4f}")

coated = load_stack(STACKS / "five_layer_coated.json")
d = coated.layers[2].thickness
bare = force_per_area(stack.with_thickness(1, d), 1).f_minus
dressed = force_per_area(coated, 2).f_minus
print()
print(f"at {d * 1e6:.2f} um, a 200 nm Lorentz coating on each mirror changes")
print(f"the force from {bare:.6e} Pa to {dressed:.6e} Pa")
