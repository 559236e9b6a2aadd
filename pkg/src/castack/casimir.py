"""Casimir force and energy per unit area in planar multilayers.

All quantities are evaluated as integrals over imaginary frequency xi and
the decay constant kappa of the probe layer, where the integrands are
smooth and exponentially damped. The probe layer j must be transparent
(vacuum or a constant permittivity) and of finite thickness; the rest of
the stack may be arbitrarily dispersive and absorbing.

Force per unit area in layer j, with E_j = exp(-2 kappa_j d_j) and
r_-, r_+ the reflections of the two enclosing sub-stacks:

    f = (hbar / 2 pi^2) int dxi int dkappa kappa^2
        sum_q r_- r_+ E_j / (1 - r_- r_+ E_j)

Positive f pulls the two enclosing stacks together; `f_minus` is the
force on the left stack measured along +z (left to right), `f_plus` the
force on the right stack on the same axis, so f_plus = -f_minus.

Energy per unit area relative to infinite separation:

    E = (hbar / 4 pi^2) int dxi int dkappa kappa
        sum_q ln(1 - r_- r_+ E_j)

The remaining entry points are reduced or rearranged versions of the same
integral: a slab suspended between two mirrors, a transparent cavity
between perfect mirrors with an independent single-integral cross-check,
force and energy in one layer computed from another layer's value, and a
one-dimensional (normal-incidence-only) variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR
from .fresnel import (
    Layer,
    Stack,
    _cavity_response_imag,
    _StackWaves,
    half_space,
    slab_coeffs,
)
from .materials import (
    Constant,
    Material,
    PerfectConductor,
    Vacuum,
    epsilon_imag_axis,
    epsilon_imag_axis_derivative,
    is_pec,
)
from .quadrature import QuadratureResult, QuadratureSpec, integrate_halfline, integrate_xi_kappa

_TWO_PI_SQ = 2.0 * math.pi**2


@dataclass(frozen=True)
class ForceResult:
    """Force per unit area [Pa] in a probe layer, with quadrature detail.

    f_minus acts on the stack left of the layer, f_plus on the stack to
    the right, both measured along the +z axis pointing from the left end
    toward the right end. Positive f_minus means attraction.
    """

    f_minus: float
    quadrature: QuadratureResult

    @property
    def f_plus(self) -> float:
        return -self.f_minus


@dataclass(frozen=True)
class EnergyResult:
    """Energy per unit area [J/m^2] of a probe layer, relative to d -> inf."""

    energy: float
    quadrature: QuadratureResult


@dataclass(frozen=True)
class SlabForceResult:
    """Net force per unit area [Pa] on a slab suspended in a cavity.

    Positive values push the slab toward the mirror bounding the second
    gap (the d2 side).
    """

    force: float
    quadrature: QuadratureResult


@dataclass(frozen=True)
class IdealCavityForce:
    """Attraction of two perfect mirrors across a transparent medium.

    pressure comes from the general multilayer machinery; the
    single-integral form evaluates the same quantity as a one-dimensional
    frequency integral over the medium's mode density. The constructor of
    this result has already checked that the two agree.
    """

    pressure: float
    single_integral_pressure: float
    quadrature: QuadratureResult
    single_integral_quadrature: QuadratureResult


@dataclass(frozen=True)
class Force1DResult:
    """Force [N] between the walls of a one-dimensional cavity.

    The one-dimensional model keeps only normal incidence, so the result
    scales as 1/d^2 rather than the 1/d^4 of the full planar geometry.
    """

    force: float
    quadrature: QuadratureResult


def _probe_layer(stack: Stack, j: int) -> Layer:
    """Validate that layer j can host a force/energy evaluation."""
    stack._check_index(j)
    lay = stack.layers[j]
    if lay.is_pec:
        raise ValueError(f"layer {j} is a perfect conductor, not a field region")
    if not isinstance(lay.material, (Vacuum, Constant)):
        raise ValueError(
            f"layer {j} must be transparent (vacuum or constant permittivity) "
            "so that its photon momentum is well defined"
        )
    if not math.isfinite(lay.thickness):
        raise ValueError(f"layer {j} must have finite thickness")
    return lay


def _probe_eps(lay: Layer) -> float:
    return 1.0 if isinstance(lay.material, Vacuum) else lay.material.epsilon


def force_per_area(stack: Stack, j: int, spec: QuadratureSpec | None = None) -> ForceResult:
    """Casimir force per unit area across probe layer j of a stack.

    Parameters
    ----------
    stack : Stack
    j : int
        Index of a transparent, finite-thickness layer.
    spec : QuadratureSpec, optional
        Tolerances for the double integral.

    Returns
    -------
    ForceResult
        f_minus > 0 means the stacks on either side of layer j attract.
    """
    lay = _probe_layer(stack, j)
    eps_j = _probe_eps(lay)
    d = lay.thickness

    def integrand(xi, kap):
        ksq = np.maximum(kap * kap - eps_j * (xi / C) ** 2, 0.0)
        waves = _StackWaves.imag_axis(stack, xi, ksq)
        total = 0.0
        for pol in ("p", "s"):
            pe, dq = _cavity_response_imag(waves, j, pol, d)
            total = total + pe / dq
        return kap * total

    res = integrate_xi_kappa(integrand, _light_line(eps_j), d_ref=d, spec=spec)
    scaled = res.scaled(HBAR / _TWO_PI_SQ)
    return ForceResult(scaled.value, scaled)


def energy_per_area(stack: Stack, j: int, spec: QuadratureSpec | None = None) -> EnergyResult:
    """Casimir energy per unit area stored in probe layer j.

    The zero of energy is the same stack with layer j infinitely thick,
    so bringing the two sides together from infinity releases -energy.
    """
    lay = _probe_layer(stack, j)
    eps_j = _probe_eps(lay)
    d = lay.thickness

    def integrand(xi, kap):
        ksq = np.maximum(kap * kap - eps_j * (xi / C) ** 2, 0.0)
        waves = _StackWaves.imag_axis(stack, xi, ksq)
        total = 0.0
        for pol in ("p", "s"):
            pe, _ = _cavity_response_imag(waves, j, pol, d)
            total = total + np.log1p(-pe)
        return total

    res = integrate_xi_kappa(integrand, _light_line(eps_j), d_ref=d, spec=spec)
    scaled = res.scaled(HBAR / (4.0 * math.pi**2))
    return EnergyResult(scaled.value, scaled)


def _light_line(eps_j: float):
    root = math.sqrt(eps_j)

    def kappa0(xi: float) -> float:
        return root * xi / C

    return kappa0


def _combined(value: float, a: QuadratureResult, b: QuadratureResult) -> QuadratureResult:
    return QuadratureResult(
        value,
        a.abs_error_estimate + b.abs_error_estimate,
        a.evals + b.evals,
        a.converged and b.converged,
    )


def energy_via_relation(
    stack: Stack,
    j: int,
    l: int,
    energy_j: EnergyResult,
    spec: QuadratureSpec | None = None,
) -> EnergyResult:
    """Energy of layer l obtained from a known energy of layer j plus a bridge.

    The difference of the two layer energies reduces to an integral over
    the reflections of the region between them, with no reference to the
    full round-trip denominators:

        E_l - E_j = (hbar / 4 pi^2) int dxi int dkappa kappa sum_q
            [ln(1 - r_mid^(l) r_{l+} E_l) - ln(1 - r_mid^(j) r_{j-} E_j)]

    where r_mid^(j) (r_mid^(l)) is the reflection of the layers strictly
    between j and l seen from j (from l). energy_j is the caller's result
    of energy_per_area(stack, j); only the bridge integral is evaluated
    here. Requires j <= l, both probe layers transparent and finite.
    Agreement with the directly computed energy of layer l is a
    nontrivial consistency check of the whole reflection algebra; tests
    enforce it.
    """
    if l < j:
        raise ValueError(f"need j <= l, got j={j}, l={l}")
    _probe_layer(stack, j)
    if l == j:
        return energy_j
    lay_j = _probe_layer(stack, j)
    lay_l = _probe_layer(stack, l)
    eps_j = _probe_eps(lay_j)
    eps_l = _probe_eps(lay_l)
    d_j = lay_j.thickness
    d_l = lay_l.thickness

    def integrand(xi, kap):
        ksq = np.maximum(kap * kap - eps_j * (xi / C) ** 2, 0.0)
        waves = _StackWaves.imag_axis(stack, xi, ksq)
        total = 0.0
        for pol in ("p", "s"):
            r_jm = waves.reflection(j, "minus", pol)
            r_lp = waves.reflection(l, "plus", pol)
            r_mid_j = waves.reflection(j, "plus", pol, stop=l)
            r_mid_l = waves.reflection(l, "minus", pol, stop=j)
            e_j = np.exp(-2.0 * waves.w[j] * d_j)
            e_l = np.exp(-2.0 * waves.w[l] * d_l)
            total = total + np.log1p(-r_mid_l * r_lp * e_l) - np.log1p(-r_mid_j * r_jm * e_j)
        return total

    res = integrate_xi_kappa(integrand, _light_line(eps_j), d_ref=min(d_j, d_l), spec=spec)
    bridge = res.scaled(HBAR / (4.0 * math.pi**2))
    value = energy_j.energy + bridge.value
    return EnergyResult(value, _combined(value, energy_j.quadrature, bridge))


def force_via_relation(
    stack: Stack,
    j: int,
    l: int,
    force_j: ForceResult,
    spec: QuadratureSpec | None = None,
) -> ForceResult:
    """Force in layer l obtained from a known force in layer j plus a bridge.

    Valid when layers j and l share the same material (equal kappa), in
    which case

        f_l - f_j = (hbar / 2 pi^2) int dxi int dkappa kappa^2 sum_q
            (A - B) / [D_j (1 - A)],
        A = r_mid^(l) r_{l+} E_l,  B = r_mid^(j) r_{j-} E_j.

    force_j is the caller's result of force_per_area(stack, j); only the
    bridge integral is evaluated here. Requires j <= l. As with the
    energy variant, agreement with the direct evaluation in layer l
    exercises the inter-layer reflection identity behind the
    rearrangement.
    """
    if l < j:
        raise ValueError(f"need j <= l, got j={j}, l={l}")
    _probe_layer(stack, j)
    if l == j:
        return force_j
    lay_j = _probe_layer(stack, j)
    lay_l = _probe_layer(stack, l)
    if lay_j.material != lay_l.material:
        raise ValueError(
            "force_via_relation needs layers j and l of the same material; "
            f"got {lay_j.material!r} and {lay_l.material!r}"
        )
    eps_j = _probe_eps(lay_j)
    d_j = lay_j.thickness
    d_l = lay_l.thickness

    def integrand(xi, kap):
        ksq = np.maximum(kap * kap - eps_j * (xi / C) ** 2, 0.0)
        waves = _StackWaves.imag_axis(stack, xi, ksq)
        total = 0.0
        for pol in ("p", "s"):
            r_jm = waves.reflection(j, "minus", pol)
            r_lp = waves.reflection(l, "plus", pol)
            r_mid_j = waves.reflection(j, "plus", pol, stop=l)
            r_mid_l = waves.reflection(l, "minus", pol, stop=j)
            e_j = np.exp(-2.0 * waves.w[j] * d_j)
            e_l = np.exp(-2.0 * waves.w[l] * d_l)
            a = r_mid_l * r_lp * e_l
            b = r_mid_j * r_jm * e_j
            _, d_q = _cavity_response_imag(waves, j, pol, d_j)
            one_minus_a = -np.expm1(-2.0 * waves.w[l] * d_l) + e_l * (1.0 - r_mid_l * r_lp)
            total = total + (a - b) / (d_q * one_minus_a)
        return kap * total

    res = integrate_xi_kappa(integrand, _light_line(eps_j), d_ref=min(d_j, d_l), spec=spec)
    bridge = res.scaled(HBAR / _TWO_PI_SQ)
    value = force_j.f_minus + bridge.value
    return ForceResult(value, _combined(value, force_j.quadrature, bridge))


@dataclass(frozen=True)
class CavityConfig:
    """A slab suspended between two mirrors inside a transparent medium.

    Geometry, left to right: left mirror | gap d1 | slab | gap d2 |
    right mirror. Mirror layer tuples are listed from the cavity outward,
    so the last layer of each mirror must be semi-infinite or perfectly
    conducting. Single-layer mirrors (a metal half-space, or a bare
    perfect conductor) are the common case.
    """

    medium: Material
    slab_material: Material
    slab_thickness: float
    d1: float
    d2: float
    left_mirror: tuple[Layer, ...] = (Layer(PerfectConductor()),)
    right_mirror: tuple[Layer, ...] = (Layer(PerfectConductor()),)

    def __post_init__(self) -> None:
        object.__setattr__(self, "left_mirror", tuple(self.left_mirror))
        object.__setattr__(self, "right_mirror", tuple(self.right_mirror))
        if is_pec(self.medium):
            raise ValueError("the cavity medium cannot be a perfect conductor")
        if not isinstance(self.medium, (Vacuum, Constant)):
            raise ValueError("the cavity medium must be transparent (vacuum or constant permittivity)")
        for name, d in (("d1", self.d1), ("d2", self.d2)):
            if not (math.isfinite(d) and d > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {d!r}")
        if not is_pec(self.slab_material) and not (
            math.isfinite(self.slab_thickness) and self.slab_thickness > 0.0
        ):
            raise ValueError(f"slab thickness must be finite and > 0, got {self.slab_thickness!r}")
        if not self.left_mirror or not self.right_mirror:
            raise ValueError("each mirror needs at least one layer")
        # Delegate detailed layer checks to stack assembly.
        self.assemble()

    def assemble(self) -> tuple[Stack, int, int]:
        """Full Stack plus the indices (j1, j2) of the two gap layers."""
        slab = Layer(self.slab_material, self.slab_thickness)
        layers = (
            tuple(reversed(self.left_mirror))
            + (Layer(self.medium, self.d1), slab, Layer(self.medium, self.d2))
            + self.right_mirror
        )
        j1 = len(self.left_mirror)
        return Stack(layers), j1, j1 + 2


def _mirror_reflection_stack(medium: Material, mirror: tuple[Layer, ...]) -> Stack:
    return Stack((half_space(medium),) + mirror)


def slab_in_cavity_force(config: CavityConfig, spec: QuadratureSpec | None = None) -> SlabForceResult:
    """Net Casimir force per unit area on the slab of a two-gap cavity.

    Evaluates the closed-cavity integrand

        sum_q r (r2 E2 - r1 E1) / N,
        N = (1 - r r1 E1)(1 - r r2 E2) - t^2 r1 r2 E1 E2,

    with (r, t) the slab amplitudes in the medium, r1/r2 the mirror
    reflections seen from the gaps, and E_i = exp(-2 kappa d_i). N is the
    grouped form of 1 - r(r1 E1 + r2 E2) + (r^2 - t^2) r1 r2 E1 E2, kept
    factor-wise stable for near-unit round trips. The result carries the
    sign convention of SlabForceResult: positive pushes the slab toward
    the d2-side mirror, and for an opaque slab it reduces exactly to the
    difference of the two independent gap forces.
    """
    medium = config.medium
    eps_m = 1.0 if isinstance(medium, Vacuum) else medium.epsilon
    left_stack = _mirror_reflection_stack(medium, config.left_mirror)
    right_stack = _mirror_reflection_stack(medium, config.right_mirror)
    d1, d2 = config.d1, config.d2

    def integrand(xi, kap):
        ksq = np.maximum(kap * kap - eps_m * (xi / C) ** 2, 0.0)
        k = np.sqrt(ksq)
        left = _StackWaves.imag_axis(left_stack, xi, ksq)
        right = _StackWaves.imag_axis(right_stack, xi, ksq)
        e1 = np.exp(-2.0 * kap * d1)
        e2 = np.exp(-2.0 * kap * d2)
        total = 0.0
        for pol in ("p", "s"):
            r1 = left.reflection(0, "plus", pol)
            r2 = right.reflection(0, "plus", pol)
            r_s, t_s = slab_coeffs(pol, eps_m, config.slab_material, config.slab_thickness, xi=xi, k=k)
            # r2 e2 - r1 e1 without losing digits when both e's are near 1
            diff = r2 * (e2 - e1) + (r2 - r1) * e1
            lead1 = -np.expm1(-2.0 * kap * d1) + e1 * (1.0 - r_s * r1)
            lead2 = -np.expm1(-2.0 * kap * d2) + e2 * (1.0 - r_s * r2)
            n_q = lead1 * lead2 - t_s**2 * r1 * r2 * e1 * e2
            total = total + r_s * diff / n_q
        return kap * total

    res = integrate_xi_kappa(integrand, _light_line(eps_m), d_ref=min(d1, d2), spec=spec)
    scaled = res.scaled(HBAR / _TWO_PI_SQ)
    return SlabForceResult(scaled.value, scaled)


def ideal_cavity_force(medium: Material, d: float, spec: QuadratureSpec | None = None) -> IdealCavityForce:
    """Two perfect mirrors separated by d meters of a transparent medium.

    Computes the attraction twice: through the general multilayer force
    (a double integral) and through the reduced single-frequency-integral
    form

        f = (hbar / 2 pi^2 c^3) int dxi
            sqrt(eps) xi^3 (xi deps/dxi + 2 eps) / (e^{2 sqrt(eps) xi d / c} - 1),

    then verifies the two against each other within their combined error
    budget before returning. A disagreement raises RuntimeError, since it
    would mean the quadrature or the reflection algebra is broken.
    """
    spec = spec or QuadratureSpec()
    if is_pec(medium):
        raise ValueError("the cavity medium cannot be a perfect conductor")
    if not (math.isfinite(d) and d > 0.0):
        raise ValueError(f"mirror separation must be finite and > 0, got {d!r}")
    stack = Stack((Layer(PerfectConductor()), Layer(medium, d), Layer(PerfectConductor())))
    if isinstance(medium, (Vacuum, Constant)):
        direct = force_per_area(stack, 1, spec)
    else:
        direct = _force_dispersive_pec_cavity(medium, d, spec)

    def integrand(xi):
        eps = epsilon_imag_axis(medium, xi)
        deps = epsilon_imag_axis_derivative(medium, xi)
        root = np.sqrt(eps)
        u = root * xi / C
        bose = np.exp(-2.0 * u * d) / -np.expm1(-2.0 * u * d)
        return root * xi**3 * (xi * deps + 2.0 * eps) * bose / C**3

    single = integrate_halfline(integrand, spec=spec, scale=C / (2.0 * d)).scaled(HBAR / _TWO_PI_SQ)

    tol = 10.0 * spec.rel_tol * max(abs(direct.f_minus), abs(single.value))
    tol += direct.quadrature.abs_error_estimate + single.abs_error_estimate
    if abs(direct.f_minus - single.value) > tol:
        raise RuntimeError(
            "double-integral and single-integral mirror pressures disagree: "
            f"{direct.f_minus!r} vs {single.value!r}"
        )
    return IdealCavityForce(direct.f_minus, single.value, direct.quadrature, single)


def _force_dispersive_pec_cavity(medium: Material, d: float, spec: QuadratureSpec) -> ForceResult:
    """Mirror-mirror force across a dispersive transparent medium.

    The general entry point insists on a dispersion-free probe layer
    because kappa0 then depends on xi alone through a constant factor;
    between perfect mirrors the reflections are frequency independent, so
    the same double integral is safe for any real eps(i xi) >= 1.
    """

    def integrand(xi, kap):
        e = np.exp(-2.0 * kap * d)
        return kap * 2.0 * e / -np.expm1(-2.0 * kap * d)

    def kappa0(xi):
        return float(np.sqrt(epsilon_imag_axis(medium, xi))) * xi / C

    res = integrate_xi_kappa(integrand, kappa0, d_ref=d, spec=spec)
    scaled = res.scaled(HBAR / _TWO_PI_SQ)
    return ForceResult(scaled.value, scaled)


def force_1d(
    r_minus_fn,
    r_plus_fn,
    medium: Material,
    d: float,
    spec: QuadratureSpec | None = None,
) -> Force1DResult:
    """Casimir force in a one-dimensional cavity of width d.

    Only normal incidence exists in one dimension, so a single frequency
    integral remains:

        f = (2 hbar / pi) int dxi kappa0 P E / (1 - P E),

    with kappa0 = sqrt(eps(i xi)) xi / c, E = exp(-2 kappa0 d), and
    P = r_minus_fn(xi) * r_plus_fn(xi) the product of the wall
    reflections on the imaginary frequency axis. The reflection functions
    must accept an ndarray of xi values and return real amplitudes of
    magnitude <= 1; for walls that are themselves multilayers, evaluate
    stack_reflection at k = 0 (either polarization, the two coincide
    there). The result is a force in newtons, not a pressure.
    """
    if is_pec(medium):
        raise ValueError("the cavity medium cannot be a perfect conductor")
    if not isinstance(medium, (Vacuum, Constant)):
        raise ValueError("the cavity medium must be transparent (vacuum or constant permittivity)")
    if not (math.isfinite(d) and d > 0.0):
        raise ValueError(f"cavity width must be finite and > 0, got {d!r}")
    root = math.sqrt(1.0 if isinstance(medium, Vacuum) else medium.epsilon)

    def integrand(xi):
        p = np.asarray(r_minus_fn(xi), float) * np.asarray(r_plus_fn(xi), float)
        kap0 = root * xi / C
        e = np.exp(-2.0 * kap0 * d)
        denom = -np.expm1(-2.0 * kap0 * d) + e * (1.0 - p)
        return kap0 * p * e / denom

    res = integrate_halfline(integrand, spec=spec, scale=C / (2.0 * d * root))
    scaled = res.scaled(2.0 * HBAR / math.pi)
    return Force1DResult(scaled.value, scaled)
