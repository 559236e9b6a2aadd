"""Dielectric response models on the real and imaginary frequency axes.

Frequencies are angular frequencies in rad/s throughout. Evaluated at
omega = i*xi every passive model below gives a real permittivity that is
>= 1 and non-increasing in xi; on the real axis the permittivity is complex
with a non-negative imaginary part (passivity).

A perfect conductor carries no permittivity at all. It is short-circuited
at the reflection level and asking for its epsilon raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


def _require_nonnegative_finite(value: float, name: str) -> None:
    if not (math.isfinite(value) and value >= 0.0):
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class Vacuum:
    """Empty space, epsilon identically 1."""


@dataclass(frozen=True)
class Constant:
    """Non-dispersive, lossless dielectric with epsilon >= 1."""

    epsilon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and self.epsilon >= 1.0):
            raise ValueError(f"Constant epsilon must be finite and >= 1, got {self.epsilon!r}")


@dataclass(frozen=True)
class Drude:
    """Free-carrier response eps(omega) = 1 - omega_p^2 / (omega (omega + i gamma))."""

    omega_p: float
    gamma: float

    def __post_init__(self) -> None:
        _require_nonnegative_finite(self.omega_p, "Drude omega_p")
        _require_nonnegative_finite(self.gamma, "Drude gamma")


@dataclass(frozen=True)
class Lorentz:
    """Bound-oscillator response eps(omega) = 1 + omega_p^2 / (omega_0^2 - omega^2 - i gamma omega)."""

    omega_0: float
    omega_p: float
    gamma: float

    def __post_init__(self) -> None:
        _require_nonnegative_finite(self.omega_0, "Lorentz omega_0")
        _require_nonnegative_finite(self.omega_p, "Lorentz omega_p")
        _require_nonnegative_finite(self.gamma, "Lorentz gamma")


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal mirror. Handled at the reflection level, never through epsilon."""


Material = Union[Vacuum, Constant, Drude, Lorentz, PerfectConductor]


def is_pec(model: Material) -> bool:
    """True when the material is a perfect conductor."""
    return isinstance(model, PerfectConductor)


def _reject_pec(model: Material) -> None:
    if is_pec(model):
        raise TypeError(
            "a perfect conductor has no permittivity; it is short-circuited at the reflection level"
        )


def epsilon_imag_axis(model: Material, xi):
    """Permittivity eps(i*xi) on the positive imaginary frequency axis.

    Parameters
    ----------
    model : Material
        Any material except PerfectConductor.
    xi : float or ndarray
        Imaginary angular frequency [rad/s], strictly positive.

    Returns
    -------
    float ndarray (matching xi)
        Real permittivity, >= 1, non-increasing in xi.
    """
    _reject_pec(model)
    xi = np.asarray(xi, dtype=float)
    if not np.all(xi > 0.0):
        raise ValueError("xi must be > 0 on the imaginary axis")
    if isinstance(model, Vacuum):
        return np.ones_like(xi)
    if isinstance(model, Constant):
        return np.full_like(xi, model.epsilon)
    if isinstance(model, Drude):
        return 1.0 + model.omega_p**2 / (xi * (xi + model.gamma))
    if isinstance(model, Lorentz):
        return 1.0 + model.omega_p**2 / (model.omega_0**2 + xi**2 + model.gamma * xi)
    raise TypeError(f"unknown material model {model!r}")


def epsilon_imag_axis_derivative(model: Material, xi):
    """d eps(i*xi)/d xi, used by the single-integral ideal-cavity form."""
    _reject_pec(model)
    xi = np.asarray(xi, dtype=float)
    if not np.all(xi > 0.0):
        raise ValueError("xi must be > 0 on the imaginary axis")
    if isinstance(model, (Vacuum, Constant)):
        return np.zeros_like(xi)
    if isinstance(model, Drude):
        return -model.omega_p**2 * (2.0 * xi + model.gamma) / (xi * (xi + model.gamma)) ** 2
    if isinstance(model, Lorentz):
        den = model.omega_0**2 + xi**2 + model.gamma * xi
        return -model.omega_p**2 * (2.0 * xi + model.gamma) / den**2
    raise TypeError(f"unknown material model {model!r}")


def epsilon_real_axis(model: Material, omega):
    """Complex permittivity eps(omega) for real omega > 0.

    The returned dtype is always complex so that downstream square roots
    take the correct branch even where Re eps < 0 (e.g. Drude below the
    plasma frequency with gamma = 0). Complex omega is accepted unchecked
    beyond omega != 0; the formulas are the analytic continuations.
    """
    _reject_pec(model)
    omega = np.asarray(omega)
    if not np.all(omega != 0.0):
        raise ValueError("omega must be nonzero")
    if np.isrealobj(omega) and not np.all(np.real(omega) > 0.0):
        raise ValueError("real omega must be > 0")
    omega = omega.astype(complex)
    if isinstance(model, Vacuum):
        return np.ones_like(omega)
    if isinstance(model, Constant):
        return np.full_like(omega, model.epsilon)
    if isinstance(model, Drude):
        return 1.0 - model.omega_p**2 / (omega * (omega + 1j * model.gamma))
    if isinstance(model, Lorentz):
        return 1.0 + model.omega_p**2 / (model.omega_0**2 - omega**2 - 1j * model.gamma * omega)
    raise TypeError(f"unknown material model {model!r}")
