"""Equal-point field correlators inside a multilayer at real frequency.

For a transparent probe layer j the scattered part of the layered-medium
Green function, evaluated at equal points, separates per transverse
wavenumber k into six diagonal components: three electric-type and three
magnetic-type, with in-plane axes along k (kk), in-plane normal to k
(nn), and the stacking normal (zz). Writing beta for the perpendicular
wavenumber in j, E_d = exp(2 i beta d_j) for the full round trip, and
E_- = exp(2 i beta z), E_+ = exp(2 i beta (d_j - z)) for the partial
trips to either wall, each component is a ratio of wall reflections over
the usual round-trip denominators D_q = 1 - r_{q-} r_{q+} E_d.

The physical payoff is a cancellation: the combination entering the
normal-normal vacuum stress,

    ktilde^2 (g_zz - g_kk - g_nn) + gB_zz - gB_kk - gB_nn,

is independent of the position z inside the layer and collapses to

    -2 i beta [ R_p E_d / D_p + R_s E_d / D_s ],

the same reflection product that drives the imaginary-axis force
integrand. ``run_verification`` checks both facts numerically on random
absorbing stacks; it is the real-frequency cross-check of the force
machinery, not a production code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C
from .fresnel import Layer, Stack, _StackWaves, half_space
from .materials import Constant, Drude, Lorentz, Vacuum

__all__ = [
    "GreensDiagonal",
    "VerificationReport",
    "greens_diagonal",
    "stress_bracket",
    "run_verification",
]


@dataclass(frozen=True)
class GreensDiagonal:
    """Scattered-part diagonal components at height z inside the probe layer.

    g_* are the electric-type components, gb_* the magnetic-type ones;
    axes are kk (in-plane, along k), nn (in-plane, normal to k) and zz
    (along the stacking direction).
    """

    z: float
    g_kk: complex
    g_nn: complex
    g_zz: complex
    gb_kk: complex
    gb_nn: complex
    gb_zz: complex


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the random-stack stress uniformity verification.

    max_z_variation is the worst |bracket(z) - bracket(z0)| / |bracket(z0)|
    over all tested stacks, spectral points and heights z, with z0 the
    first sampled height; max_closed_form_deviation is the worst
    |bracket(z) - closed| / |closed| against the reflection closed form.
    checks counts individual (stack, omega, k, z) evaluations.
    """

    passed: bool
    max_z_variation: float
    max_closed_form_deviation: float
    checks: int
    tolerance: float


def _components(rp_m, rp_p, rs_m, rs_p, beta, ktilde_sq, ksq, z, d):
    e_d = np.exp(2j * beta * d)
    e_m = np.exp(2j * beta * z)
    e_p = np.exp(2j * beta * (d - z))
    rp = rp_m * rp_p
    rs = rs_m * rs_p
    d_p = 1.0 - rp * e_d
    d_s = 1.0 - rs * e_d
    p_sum = rp_m * e_m + rp_p * e_p
    s_sum = rs_m * e_m + rs_p * e_p
    g_kk = 1j * beta * (2.0 * rp * e_d - p_sum) / (2.0 * ktilde_sq * d_p)
    g_nn = 1j * (2.0 * rs * e_d + s_sum) / (2.0 * beta * d_s)
    g_zz = 1j * ksq * (2.0 * rp * e_d + p_sum) / (2.0 * ktilde_sq * beta * d_p)
    gb_kk = 1j * beta * (2.0 * rs * e_d - s_sum) / (2.0 * d_s)
    gb_nn = 1j * ktilde_sq * (2.0 * rp * e_d + p_sum) / (2.0 * beta * d_p)
    gb_zz = 1j * ksq * (2.0 * rs * e_d + s_sum) / (2.0 * beta * d_s)
    return g_kk, g_nn, g_zz, gb_kk, gb_nn, gb_zz


def _probe_context(stack: Stack, j: int, omega: float, k: float):
    stack._check_index(j)
    lay = stack.layers[j]
    if lay.is_pec:
        raise ValueError(f"layer {j} is a perfect conductor, not a field region")
    if not isinstance(lay.material, (Vacuum, Constant)):
        raise ValueError(f"layer {j} must be transparent (vacuum or constant permittivity)")
    if not math.isfinite(lay.thickness):
        raise ValueError(f"layer {j} must have finite thickness")
    eps_j = 1.0 if isinstance(lay.material, Vacuum) else lay.material.epsilon
    ktilde_sq = eps_j * (omega / C) ** 2
    ksq = float(k) ** 2
    if ksq == ktilde_sq:
        raise ValueError("k lies exactly on the probe layer's light line (beta = 0)")
    waves = _StackWaves.real_axis(stack, omega, ksq)
    return lay, waves, ktilde_sq, ksq


def greens_diagonal(stack: Stack, j: int, z: float, *, omega: float, k: float) -> GreensDiagonal:
    """The six scattered-part diagonal components at height z in layer j.

    Parameters
    ----------
    stack : Stack
    j : int
        Transparent, finite-thickness probe layer.
    z : float
        Height above the lower wall of layer j, in [0, d_j].
    omega : float
        Real frequency [rad/s].
    k : float
        Transverse wavenumber [1/m]; k beyond the probe light line gives
        the evanescent region (beta purely imaginary), which is fully
        supported.
    """
    lay, waves, ktilde_sq, ksq = _probe_context(stack, j, omega, k)
    if not (0.0 <= z <= lay.thickness):
        raise ValueError(f"z must lie in [0, {lay.thickness!r}], got {z!r}")
    rp_m = complex(waves.reflection(j, "minus", "p"))
    rp_p = complex(waves.reflection(j, "plus", "p"))
    rs_m = complex(waves.reflection(j, "minus", "s"))
    rs_p = complex(waves.reflection(j, "plus", "s"))
    beta = complex(waves.w[j])
    comps = _components(rp_m, rp_p, rs_m, rs_p, beta, ktilde_sq, ksq, z, lay.thickness)
    return GreensDiagonal(z, *(complex(v) for v in comps))


def stress_bracket(stack: Stack, j: int, z: float, *, omega: float, k: float) -> tuple[complex, complex]:
    """Stress combination at height z, and its z-independent closed form.

    Returns
    -------
    (bracket, closed)
        bracket = ktilde^2 (g_zz - g_kk - g_nn) + gB_zz - gB_kk - gB_nn
        evaluated from the six components at z; closed is the reflection
        expression -2 i beta (R_p E_d / D_p + R_s E_d / D_s). The two are
        equal analytically; comparing them probes every sign and phase in
        the component formulas.

    Notes
    -----
    Far beyond the light line (2 |beta| d_j >> 1) the bracket cancels to
    exponentially below its constituent terms, so its floating-point
    value is dominated by rounding noise; meaningful relative
    comparisons need 2 |beta| d_j of order ten or less.
    """
    lay, waves, ktilde_sq, ksq = _probe_context(stack, j, omega, k)
    if not (0.0 <= z <= lay.thickness):
        raise ValueError(f"z must lie in [0, {lay.thickness!r}], got {z!r}")
    rp_m = complex(waves.reflection(j, "minus", "p"))
    rp_p = complex(waves.reflection(j, "plus", "p"))
    rs_m = complex(waves.reflection(j, "minus", "s"))
    rs_p = complex(waves.reflection(j, "plus", "s"))
    beta = complex(waves.w[j])
    g_kk, g_nn, g_zz, gb_kk, gb_nn, gb_zz = _components(
        rp_m, rp_p, rs_m, rs_p, beta, ktilde_sq, ksq, z, lay.thickness
    )
    bracket = ktilde_sq * (g_zz - g_kk - g_nn) + gb_zz - gb_kk - gb_nn
    e_d = np.exp(2j * beta * lay.thickness)
    closed = -2j * beta * (
        rp_m * rp_p * e_d / (1.0 - rp_m * rp_p * e_d)
        + rs_m * rs_p * e_d / (1.0 - rs_m * rs_p * e_d)
    )
    return complex(bracket), complex(closed)


def _random_absorber(rng):
    if rng.integers(0, 2):
        return Drude(omega_p=float(10 ** rng.uniform(15.3, 16.3)), gamma=float(10 ** rng.uniform(13, 15)))
    return Lorentz(
        omega_0=float(10 ** rng.uniform(14.8, 15.8)),
        omega_p=float(10 ** rng.uniform(15.3, 16.3)),
        gamma=float(10 ** rng.uniform(13.5, 15)),
    )


def run_verification(seed: int = 20260816, n_stacks: int = 10, tolerance: float = 1e-10) -> VerificationReport:
    """Check stress uniformity on random absorbing five-layer stacks.

    For each stack the probe layer is transparent and surrounded by
    dispersive absorbers. At one real frequency per stack and four
    transverse wavenumbers, two propagating (k = 0.3 and 0.8 of the probe
    light line) and two evanescent (|beta| d_j = 1 and 3 beyond it), the
    stress bracket is evaluated at five interior heights and compared
    against its value at the first height and against the closed
    reflection form, both relative to the compared value. The evanescent
    points stay at moderate |beta| d_j on purpose: the bracket decays
    like exp(-2|beta|z) while its constituent terms do not, so far
    beyond the light line the comparison would measure only rounding
    noise of the large cancelling terms.
    """
    rng = np.random.default_rng(seed)
    max_z_var = 0.0
    max_dev = 0.0
    checks = 0
    for _ in range(n_stacks):
        probe = Vacuum() if rng.integers(0, 2) else Constant(float(rng.uniform(1.5, 6.0)))
        d_j = float(10 ** rng.uniform(-6.5, -6.0))
        stack = Stack(
            (
                half_space(_random_absorber(rng)),
                Layer(_random_absorber(rng), float(10 ** rng.uniform(-7.5, -6.5))),
                Layer(probe, d_j),
                Layer(_random_absorber(rng), float(10 ** rng.uniform(-7.5, -6.5))),
                half_space(_random_absorber(rng)),
            )
        )
        omega = float(10 ** rng.uniform(14.8, 15.6))
        eps_j = 1.0 if isinstance(probe, Vacuum) else probe.epsilon
        k_edge = math.sqrt(eps_j) * omega / C
        ks = (
            0.3 * k_edge,
            0.8 * k_edge,
            math.hypot(k_edge, 1.0 / d_j),
            math.hypot(k_edge, 3.0 / d_j),
        )
        for k in ks:
            pairs = [
                stress_bracket(stack, 2, zfrac * d_j, omega=omega, k=k)
                for zfrac in (0.1, 0.3, 0.5, 0.7, 0.9)
            ]
            checks += len(pairs)
            ref = pairs[0][0]
            closed = pairs[0][1]
            ref_scale = max(abs(ref), 1e-300)
            closed_scale = max(abs(closed), 1e-300)
            z_var = max(abs(b - ref) for b, _ in pairs) / ref_scale
            dev = max(abs(b - closed) for b, _ in pairs) / closed_scale
            max_z_var = max(max_z_var, float(z_var))
            max_dev = max(max_dev, float(dev))
    passed = bool(max_z_var <= tolerance and max_dev <= tolerance)
    return VerificationReport(passed, max_z_var, max_dev, checks, tolerance)
