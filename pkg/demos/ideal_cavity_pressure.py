"""Pressure between ideal mirrors: vacuum, dielectric, and plasma fillings.

An empty ideal cavity of width d feels pi^2 hbar c / (240 d^4).  Any
transparent filling weakens that: a constant index n divides the pressure
by n, and a collisionless plasma expels the long-wavelength modes, which
suppresses the force exponentially in omega_p d / c.

Run with:  python3 demos/ideal_cavity_pressure.py
"""

import math

from castack import C, Constant, Drude, HBAR, Vacuum, ideal_cavity_force

D = 1e-6
IDEAL = math.pi**2 * HBAR * C / (240.0 * D**4)

print(f"ideal mirrors, gap d = {D * 1e6:.2f} um")
print(f"empty-cavity closed form {IDEAL:.6e} Pa")
print()
print(f"{'filling':>26s} {'pressure [Pa]':>14s} {'vs empty':>10s}")
fillings = [
    ("vacuum", Vacuum()),
    ("constant eps = 2", Constant(2.0)),
    ("constant eps = 4", Constant(4.0)),
    ("plasma, omega_p d/c = 1", Drude(C / D, 0.0)),
    ("plasma, omega_p d/c = 5", Drude(5.0 * C / D, 0.0)),
]
for label, medium in fillings:
    res = ideal_cavity_force(medium, D)
    print(f"{label:>26s} {res.pressure:14.6e} {res.pressure / IDEAL:10.3e}")

print()
print("the same filled-cavity pressure reached two ways (eps = 4):")
res = ideal_cavity_force(Constant(4.0), D)
print(f"  multilayer round-trip integrand  {res.pressure:.12e} Pa")
print(f"  single integral over mode density {res.single_integral_pressure:.12e} Pa")
