"""Casimir forces and energies in planar multilayer stacks.

The package evaluates the zero-temperature Casimir force and energy per
unit area in any transparent layer of a planar stack of dispersive,
absorbing media, via imaginary-frequency integrals of the stack's
Fresnel reflections. Alongside the core force/energy routines it
provides a slab-suspended-in-a-cavity solver, ideal-mirror closed-form
cross-checks, a one-dimensional reduction, and a real-frequency Green
function module that verifies the stress tensor is uniform across a
transparent layer.

Stacks are built from material models (``Vacuum``, ``Constant``,
``Drude``, ``Lorentz``, ``PerfectConductor``) wrapped in ``Layer`` and
``Stack``, or loaded from JSON files via :mod:`castack.stackio`. The
``castack`` console script exposes the same capabilities on the command
line.
"""

from .casimir import (
    CavityConfig,
    EnergyResult,
    Force1DResult,
    ForceResult,
    IdealCavityForce,
    SlabForceResult,
    energy_per_area,
    energy_via_relation,
    force_1d,
    force_per_area,
    force_via_relation,
    ideal_cavity_force,
    slab_in_cavity_force,
)
from .constants import C, HBAR
from .fresnel import (
    Layer,
    PoleError,
    Stack,
    beta,
    cavity_response,
    d_function,
    half_space,
    interface_coeffs,
    kappa,
    make_stack,
    r_between,
    slab_coeffs,
    stack_reflection,
    stack_transmission,
)
from .greens import (
    GreensDiagonal,
    VerificationReport,
    greens_diagonal,
    run_verification,
    stress_bracket,
)
from .materials import (
    Constant,
    Drude,
    Lorentz,
    Material,
    PerfectConductor,
    Vacuum,
    epsilon_imag_axis,
    epsilon_real_axis,
    is_pec,
)
from .quadrature import (
    QuadratureResult,
    QuadratureSpec,
    integrate_halfline,
    integrate_xi_kappa,
)
from .stackio import (
    StackFileError,
    load_cavity,
    load_stack,
    parse_cavity,
    parse_stack,
    serialize_cavity,
    serialize_stack,
)

__version__ = "0.1.0"

__all__ = [
    "C",
    "HBAR",
    "CavityConfig",
    "Constant",
    "Drude",
    "EnergyResult",
    "Force1DResult",
    "ForceResult",
    "GreensDiagonal",
    "IdealCavityForce",
    "Layer",
    "Lorentz",
    "Material",
    "PerfectConductor",
    "PoleError",
    "QuadratureResult",
    "QuadratureSpec",
    "SlabForceResult",
    "Stack",
    "StackFileError",
    "Vacuum",
    "VerificationReport",
    "beta",
    "cavity_response",
    "d_function",
    "energy_per_area",
    "energy_via_relation",
    "epsilon_imag_axis",
    "epsilon_real_axis",
    "force_1d",
    "force_per_area",
    "force_via_relation",
    "greens_diagonal",
    "half_space",
    "ideal_cavity_force",
    "integrate_halfline",
    "integrate_xi_kappa",
    "interface_coeffs",
    "is_pec",
    "kappa",
    "load_cavity",
    "load_stack",
    "make_stack",
    "parse_cavity",
    "parse_stack",
    "r_between",
    "run_verification",
    "serialize_cavity",
    "serialize_stack",
    "slab_coeffs",
    "slab_in_cavity_force",
    "stack_reflection",
    "stack_transmission",
    "stress_bracket",
]
