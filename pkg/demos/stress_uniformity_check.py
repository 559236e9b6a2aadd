"""Height-independence of the field stress inside a transparent layer.

The six scattered Green-function components each oscillate with the height
z inside the probe layer, but the combination that enters the normal
stress must not: equilibrium forbids a height-dependent momentum flux in a
lossless region.  This script evaluates that combination at five heights
for one absorbing stack, propagating and evanescent, then runs the
randomized verification over ten stacks.

Run with:  python3 demos/stress_uniformity_check.py
"""

import math

from castack import (
    C,
    Drude,
    Layer,
    Lorentz,
    Stack,
    Vacuum,
    half_space,
    run_verification,
    stress_bracket,
)

stack = Stack(
    (
        half_space(Drude(1.4e16, 5e13)),
        Layer(Lorentz(8e14, 9e15, 5e13), 2e-7),
        Layer(Vacuum(), 1e-6),
        half_space(Drude(9e15, 2e14)),
    )
)
omega = 1.9e15
d = stack.layers[2].thickness

for label, k in (
    ("propagating, k = 0.4 omega/c", 0.4 * omega / C),
    ("evanescent, |beta| d = 1", math.hypot(omega / C, 1.0 / d)),
):
    print(label)
    print(f"{'z/d':>5s} {'bracket':>34s}")
    closed = None
    for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
        bracket, closed = stress_bracket(stack, 2, frac * d, omega=omega, k=k)
        print(f"{frac:5.2f} {bracket.real:+16.9e} {bracket.imag:+16.9e}i")
    print(f"wall-reflection closed form: {closed.real:+16.9e} {closed.imag:+16.9e}i")
    print()

report = run_verification()
print(
    f"randomized check over {report.checks} samples: "
    f"max z-variation {report.max_z_variation:.2e}, "
    f"max closed-form deviation {report.max_closed_form_deviation:.2e}, "
    f"passed = {report.passed}"
)
