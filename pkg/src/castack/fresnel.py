"""Plane-wave reflection and transmission of planar multilayer stacks.

A stack is an ordered sequence of homogeneous layers. Layer 0 and layer n
are half-spaces; interior layers have finite thickness. For a probe layer j
the two quantities that drive everything downstream are the reflection
coefficients r_{j-} and r_{j+} of the sub-stacks to its left and right,
seen from inside j, and the round-trip denominator

    D_qj = 1 - r_{j-} r_{j+} exp(2 i beta_j d_j),   q in {p, s}.

Two evaluation axes are supported:

* real frequencies omega > 0: complex arithmetic, vertical wavenumber
  beta = sqrt(eps omega^2/c^2 - k^2) on the branch Re beta >= 0,
  Im beta >= 0;
* imaginary frequencies omega = i xi: everything is real and the code path
  uses real arithmetic only, with kappa = sqrt(eps(i xi) xi^2/c^2 + k^2)
  in place of -i beta and exp(-2 kappa d) as the round-trip factor.

Reflection of a composite is built by folding interfaces inward from the
far end:

    r_{i/j/k} = r_{i/j} + t_{i/j} t_{j/i} r_{j/k} E_j / (1 - r_{j/i} r_{j/k} E_j)

with E_j the round-trip factor of the middle layer; transmission folds as

    t_{i/j/k} = t_{i/j} t_{j/k} sqrt(E_j) / (1 - r_{j/i} r_{j/k} E_j).

A perfect conductor acts as an opaque mirror (r_p = +1, r_s = -1, t = 0);
the fold stops there and anything behind it is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .constants import C
from .materials import (
    Material,
    PerfectConductor,
    epsilon_imag_axis,
    epsilon_real_axis,
    is_pec,
)

POLARIZATIONS = ("p", "s")

# Reflection off a perfect conductor, by polarization.
_PEC_R = {"p": 1.0, "s": -1.0}


class PoleError(ArithmeticError):
    """A Fresnel denominator vanished at the requested point."""


def polarization_sign(pol: str) -> float:
    """+1 for p (TM), -1 for s (TE); the sign of the conductor reflection."""
    _check_pol(pol)
    return _PEC_R[pol]


def _check_pol(pol: str) -> None:
    if pol not in POLARIZATIONS:
        raise ValueError(f"polarization must be 'p' or 's', got {pol!r}")


@dataclass(frozen=True)
class Layer:
    """One homogeneous region: a material plus a thickness in meters.

    thickness = math.inf marks a half-space (allowed only at stack ends).
    A PerfectConductor layer is opaque, so its thickness is irrelevant.
    """

    material: Material
    thickness: float = math.inf

    def __post_init__(self) -> None:
        d = self.thickness
        if is_pec(self.material):
            return  # opaque, thickness never enters
        if d != math.inf and not (math.isfinite(d) and d > 0.0):
            raise ValueError(f"layer thickness must be > 0 or inf, got {d!r}")

    @property
    def is_semi_infinite(self) -> bool:
        return self.thickness == math.inf

    @property
    def is_pec(self) -> bool:
        return is_pec(self.material)


def half_space(material: Material) -> Layer:
    """A semi-infinite layer of the given material."""
    return Layer(material, math.inf)


@dataclass(frozen=True)
class Stack:
    """An ordered multilayer, index 0 (leftmost) to n (rightmost).

    The two end layers must be half-spaces or perfect conductors; interior
    layers must have finite positive thickness unless they are perfect
    conductors (opaque mirrors, thickness ignored).
    """

    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if len(layers) < 2:
            raise ValueError("a stack needs at least two layers")
        for end in (0, len(layers) - 1):
            lay = layers[end]
            if not (lay.is_semi_infinite or lay.is_pec):
                raise ValueError(f"layer {end} must be semi-infinite or a perfect conductor")
        for m, lay in enumerate(layers[1:-1], start=1):
            if lay.is_pec:
                continue
            if not (math.isfinite(lay.thickness) and lay.thickness > 0.0):
                raise ValueError(f"interior layer {m} must have finite positive thickness")

    def __len__(self) -> int:
        return len(self.layers)

    def with_thickness(self, j: int, thickness: float) -> "Stack":
        """A copy of the stack with layer j set to the given thickness."""
        self._check_index(j)
        new = list(self.layers)
        new[j] = replace(new[j], thickness=thickness)
        return Stack(tuple(new))

    def _check_index(self, j: int) -> None:
        if not (0 <= j < len(self.layers)):
            raise IndexError(f"layer index {j} out of range for {len(self.layers)} layers")


def make_stack(layers: Sequence[Layer]) -> Stack:
    """Construct a Stack from any layer sequence."""
    return Stack(tuple(layers))


def beta(eps, omega: float, k):
    """Perpendicular wavenumber sqrt(eps omega^2/c^2 - k^2), real axis.

    The complex square root branch has Re beta >= 0; for passive media
    (Im eps >= 0) it also has Im beta >= 0.
    """
    arg = np.asarray(eps, dtype=complex) * (omega / C) ** 2 - np.asarray(k, dtype=float) ** 2
    return np.sqrt(arg)


def kappa(eps_imag, xi: float, k):
    """Imaginary-axis decay constant sqrt(eps(i xi) xi^2/c^2 + k^2), real and > 0."""
    return np.sqrt(np.asarray(eps_imag, dtype=float) * (xi / C) ** 2 + np.asarray(k, dtype=float) ** 2)


def interface_coeffs(pol: str, eps_i, eps_j, beta_i, beta_j):
    """Single-interface Fresnel amplitudes, incidence from medium i onto j.

    Works on either axis: pass the complex beta values on the real axis or
    the real kappa values on the imaginary axis.

    Returns
    -------
    (r, t) with r = (beta_i - gamma beta_j)/(beta_i + gamma beta_j),
    t = sqrt(gamma) (1 + r), gamma = eps_i/eps_j for p and 1 for s.
    The symmetrized t obeys t_{i/j} beta_j = t_{j/i} beta_i.
    """
    _check_pol(pol)
    if pol == "p":
        gamma = eps_i / eps_j
    else:
        gamma = 1.0
    denom = beta_i + gamma * beta_j
    if np.any(denom == 0):
        raise PoleError("interface denominator beta_i + gamma beta_j vanished")
    r = (beta_i - gamma * beta_j) / denom
    t = np.sqrt(gamma) * (1.0 + r)
    return r, t


class _StackWaves:
    """Per-(stack, frequency, k) context: vertical wavenumbers and phases.

    On the imaginary axis ``w[m]`` holds the real kappa of layer m and
    round trips are exp(-2 kappa d); on the real axis ``w[m]`` is the
    complex beta and round trips are exp(2 i beta d). PEC layers carry
    w = eps = None and are never propagated through.
    """

    __slots__ = ("layers", "w", "eps", "imag")

    def __init__(self, layers, w, eps, imag):
        self.layers = layers
        self.w = w
        self.eps = eps
        self.imag = imag

    @classmethod
    def imag_axis(cls, stack: Stack, xi, ksq):
        xi = np.asarray(xi, dtype=float)
        if not (np.all(xi > 0.0) and np.all(np.isfinite(xi))):
            raise ValueError("xi must be finite and > 0")
        if xi.ndim > 0 and np.ndim(ksq) > 0:
            raise ValueError("xi and k cannot both be arrays")
        w, eps = [], []
        for lay in stack.layers:
            if lay.is_pec:
                w.append(None)
                eps.append(None)
            else:
                e = epsilon_imag_axis(lay.material, xi)
                eps.append(e)
                w.append(np.sqrt(e * (xi / C) ** 2 + ksq))
        return cls(stack.layers, w, eps, True)

    @classmethod
    def real_axis(cls, stack: Stack, omega: float, ksq):
        if not (omega > 0.0 and math.isfinite(omega)):
            raise ValueError(f"omega must be finite and > 0, got {omega!r}")
        w, eps = [], []
        for lay in stack.layers:
            if lay.is_pec:
                w.append(None)
                eps.append(None)
            else:
                e = epsilon_real_axis(lay.material, omega)
                eps.append(e)
                w.append(np.sqrt(e * (omega / C) ** 2 - ksq + 0j))
        return cls(stack.layers, w, eps, False)

    def round_trip(self, m: int):
        d = self.layers[m].thickness
        if self.imag:
            return np.exp(-2.0 * self.w[m] * d)
        return np.exp(2j * self.w[m] * d)

    def half_trip(self, m: int):
        d = self.layers[m].thickness
        if self.imag:
            return np.exp(-self.w[m] * d)
        return np.exp(1j * self.w[m] * d)

    def interface(self, pol: str, i: int, m: int):
        return interface_coeffs(pol, self.eps[i], self.eps[m], self.w[i], self.w[m])

    def _zeros_like_w(self, j: int):
        shape = np.shape(self.w[j])
        if self.imag:
            return np.zeros(shape) if shape else 0.0
        return np.zeros(shape, dtype=complex) if shape else 0j

    def reflection(self, j: int, side: str, pol: str, stop: int | None = None):
        """r_{j-} (side 'minus') or r_{j+} (side 'plus'), seen from layer j.

        With ``stop`` set to a layer index beyond j on the given side, the
        fold terminates there and that layer is treated as a transmitting
        half-space (its thickness ignored): the reflection of the layers
        strictly between j and stop.
        """
        if side not in ("plus", "minus"):
            raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
        if self.layers[j].is_pec:
            raise ValueError("cannot take reflections seen from inside a perfect conductor")
        step = 1 if side == "plus" else -1
        last = (len(self.layers) - 1 if step == 1 else 0) if stop is None else stop
        if stop is not None and (last - j) * step < 1:
            raise ValueError(f"stop layer {last} is not beyond layer {j} on side {side!r}")
        outward = list(range(j + step, last + step, step))
        if not outward:
            return self._zeros_like_w(j)  # nothing on that side
        term = None
        for m in outward:
            if self.layers[m].is_pec:
                term = m
                break
        if term is not None:
            rho = np.full(np.shape(self.w[j]), _PEC_R[pol]) if np.shape(self.w[j]) else _PEC_R[pol]
            middles = outward[: outward.index(term)]
        else:
            term = outward[-1]
            rho, _ = self.interface(pol, term - step, term)
            middles = outward[:-1]
        # Fold middle layers from the far end back toward j.
        for m in reversed(middles):
            near = m - step
            r_nm, t_nm = self.interface(pol, near, m)
            r_mn, t_mn = self.interface(pol, m, near)
            rt = self.round_trip(m)
            denom = 1.0 - r_mn * rho * rt
            if np.any(denom == 0):
                raise PoleError("round-trip denominator vanished during reflection fold")
            rho = r_nm + t_nm * t_mn * rho * rt / denom
        return rho

    def transmission(self, pol: str):
        """Amplitude transmitted from layer 0 into layer n across the whole stack."""
        n = len(self.layers) - 1
        if any(lay.is_pec for lay in self.layers):
            raise ValueError("transmission through a perfect conductor is identically zero")
        rho, tau = self.interface(pol, n - 1, n)
        for m in range(n - 1, 0, -1):
            near = m - 1
            r_nm, t_nm = self.interface(pol, near, m)
            r_mn, t_mn = self.interface(pol, m, near)
            rt = self.round_trip(m)
            denom = 1.0 - r_mn * rho * rt
            if np.any(denom == 0):
                raise PoleError("round-trip denominator vanished during transmission fold")
            tau = t_nm * tau * self.half_trip(m) / denom
            rho = r_nm + t_nm * t_mn * rho * rt / denom
        return tau


def _waves(stack: Stack, xi, omega, ksq) -> _StackWaves:
    if (xi is None) == (omega is None):
        raise ValueError("specify exactly one of xi (imaginary axis) or omega (real axis)")
    if xi is not None:
        return _StackWaves.imag_axis(stack, xi, ksq)
    return _StackWaves.real_axis(stack, omega, ksq)


def stack_reflection(stack: Stack, j: int, side: str, pol: str, *, xi=None, omega=None, k=0.0):
    """Reflection coefficient of one side of a stack, seen from layer j.

    Parameters
    ----------
    stack : Stack
    j : int
        Probe layer index (not a perfect conductor).
    side : 'minus' or 'plus'
        Left sub-stack (layers j-1..0) or right sub-stack (layers j+1..n).
    pol : 'p' or 's'
    xi, omega : float
        Exactly one must be given: imaginary-axis frequency xi or
        real-axis frequency omega [rad/s].
    k : float or ndarray
        Transverse wavenumber [1/m]; vectorized.

    Returns
    -------
    float ndarray on the imaginary axis (real arithmetic throughout),
    complex ndarray on the real axis. Shape follows k.
    """
    stack._check_index(j)
    ksq = np.asarray(k, dtype=float) ** 2
    return _waves(stack, xi, omega, ksq).reflection(j, side, pol)


def stack_transmission(stack: Stack, pol: str, *, xi=None, omega=None, k=0.0):
    """Transmission amplitude through the whole stack, layer 0 into layer n.

    Satisfies the reciprocity t(0 -> n) beta_n = t(n -> 0) beta_0 with the
    symmetrized single-interface normalization.
    """
    ksq = np.asarray(k, dtype=float) ** 2
    return _waves(stack, xi, omega, ksq).transmission(pol)


def r_between(stack: Stack, j: int, l: int, seen_from: str, pol: str, *, xi=None, omega=None, k=0.0):
    """Reflection of the layers strictly between j and l (j < l).

    seen_from 'left' gives the coefficient seen from layer j with layer l
    as the transmitted half-space; 'right' the mirror image. For adjacent
    layers this reduces to the bare j|l interface coefficient.
    """
    stack._check_index(j)
    stack._check_index(l)
    if not j < l:
        raise ValueError(f"need j < l, got j={j}, l={l}")
    if seen_from not in ("left", "right"):
        raise ValueError(f"seen_from must be 'left' or 'right', got {seen_from!r}")
    ksq = np.asarray(k, dtype=float) ** 2
    waves = _waves(stack, xi, omega, ksq)
    if seen_from == "left":
        return waves.reflection(j, "plus", pol, stop=l)
    return waves.reflection(l, "minus", pol, stop=j)


def d_function(stack: Stack, j: int, pol: str, *, xi=None, omega=None, k=0.0):
    """Round-trip denominator D_qj = 1 - r_{j-} r_{j+} E_j of layer j.

    Layer j must have finite thickness. On the imaginary axis the result
    is real and computed as (1 - E) + E (1 - r_- r_+) with
    E = exp(-2 kappa_j d_j), which stays accurate when both factors
    approach 1.
    """
    stack._check_index(j)
    d = stack.layers[j].thickness
    if not math.isfinite(d):
        raise ValueError("D is defined only for a finite-thickness layer")
    ksq = np.asarray(k, dtype=float) ** 2
    waves = _waves(stack, xi, omega, ksq)
    r_minus = waves.reflection(j, "minus", pol)
    r_plus = waves.reflection(j, "plus", pol)
    if waves.imag:
        e = np.exp(-2.0 * waves.w[j] * d)
        return -np.expm1(-2.0 * waves.w[j] * d) + e * (1.0 - r_minus * r_plus)
    return 1.0 - r_minus * r_plus * np.exp(2j * waves.w[j] * d)


def cavity_response(stack: Stack, j: int, pol: str, *, xi: float, k=0.0):
    """Imaginary-axis pair (r_- r_+ E_j, D_qj) for probe layer j.

    This is the quantity pair the force and energy integrands consume:
    (1 - D)/D equals the first element divided by the second. Real
    arithmetic throughout.
    """
    stack._check_index(j)
    d = stack.layers[j].thickness
    if not math.isfinite(d):
        raise ValueError("cavity response needs a finite-thickness layer")
    ksq = np.asarray(k, dtype=float) ** 2
    return _cavity_response_imag(_StackWaves.imag_axis(stack, xi, ksq), j, pol, d)


def _cavity_response_imag(waves: _StackWaves, j: int, pol: str, d: float):
    r_minus = waves.reflection(j, "minus", pol)
    r_plus = waves.reflection(j, "plus", pol)
    e = np.exp(-2.0 * waves.w[j] * d)
    product = r_minus * r_plus
    pe = product * e
    dq = -np.expm1(-2.0 * waves.w[j] * d) + e * (1.0 - product)
    return pe, dq


def slab_coeffs(pol: str, eps_medium, slab_material: Material, thickness: float, *, xi=None, omega=None, k=0.0):
    """Reflection and transmission of a symmetric slab in a uniform medium.

    With eta = eps beta_s/(eps_s beta) for p and beta_s/beta for s, the
    single-face amplitude is rho = (1 - eta)/(1 + eta) and

        r = rho (1 - E_s) / (1 - rho^2 E_s),
        t = (1 - rho^2) sqrt(E_s) / (1 - rho^2 E_s),

    E_s the slab round-trip factor. A perfectly conducting slab
    short-circuits to r_p = +1, r_s = -1, t = 0.
    """
    _check_pol(pol)
    ksq = np.asarray(k, dtype=float) ** 2
    if (xi is None) == (omega is None):
        raise ValueError("specify exactly one of xi or omega")
    if is_pec(slab_material):
        shape = np.shape(ksq)
        r = np.full(shape, _PEC_R[pol]) if shape else _PEC_R[pol]
        t = np.zeros(shape) if shape else 0.0
        return r, t
    if not (math.isfinite(thickness) and thickness > 0.0):
        raise ValueError(f"slab thickness must be finite and > 0, got {thickness!r}")
    if xi is not None:
        eps_m = np.asarray(eps_medium, dtype=float)
        eps_s = epsilon_imag_axis(slab_material, xi)
        w_m = np.sqrt(eps_m * (xi / C) ** 2 + ksq)
        w_s = np.sqrt(eps_s * (xi / C) ** 2 + ksq)
        e_half = np.exp(-w_s * thickness)
    else:
        eps_m = np.asarray(eps_medium, dtype=complex)
        eps_s = epsilon_real_axis(slab_material, omega)
        w_m = np.sqrt(eps_m * (omega / C) ** 2 - ksq + 0j)
        w_s = np.sqrt(eps_s * (omega / C) ** 2 - ksq + 0j)
        e_half = np.exp(1j * w_s * thickness)
    eta = (eps_m * w_s) / (eps_s * w_m) if pol == "p" else w_s / w_m
    rho = (1.0 - eta) / (1.0 + eta)
    e_s = e_half**2
    denom = 1.0 - rho**2 * e_s
    if np.any(denom == 0):
        raise PoleError("slab denominator 1 - rho^2 E_s vanished")
    r = rho * (1.0 - e_s) / denom
    t = (1.0 - rho**2) * e_half / denom
    return r, t
