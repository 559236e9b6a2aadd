"""Real-frequency field correlators: mode-sum oracle, duality, stress uniformity."""

import math

import numpy as np
import pytest

from castack.constants import C
from castack.fresnel import Layer, Stack, half_space
from castack.greens import _components, greens_diagonal, run_verification, stress_bracket
from castack.materials import Constant, Drude, Lorentz, PerfectConductor, Vacuum

# binary-exact thickness so that d - (d - z) == z holds without rounding
D_EXACT = 2.0**-20


def _pec_cavity(d=D_EXACT):
    return Stack((Layer(PerfectConductor()), Layer(Vacuum(), d), Layer(PerfectConductor())))


def _random_absorber(rng):
    if rng.integers(0, 2):
        return Drude(omega_p=float(10 ** rng.uniform(15.3, 16.3)), gamma=float(10 ** rng.uniform(13, 15)))
    return Lorentz(
        omega_0=float(10 ** rng.uniform(14.8, 15.8)),
        omega_p=float(10 ** rng.uniform(15.3, 16.3)),
        gamma=float(10 ** rng.uniform(13.5, 15)),
    )


def _absorbing_stack(rng):
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
    return stack, d_j


def _neumann_mode_sum(beta, d, z, n_terms=3000):
    """Equal-point 1D Green function with hard-wall (Neumann) ends, by mode sum.

    Solves (d2/dz2 + beta^2) g = -delta(z - z') with dg/dz = 0 at z = 0
    and z = d, as the sum over standing modes cos(n pi z / d). The slowly
    converging parts of the sum are resummed exactly: the flat pieces via
    zeta values, the cos(2 pi n z / d) pieces via the Fourier series of
    the Bernoulli polynomials; the remainder decays like 1/n^8 and is
    summed directly.
    """
    u = z / d
    s2 = (beta * d / math.pi) ** 2
    zeta2, zeta4, zeta6 = math.pi**2 / 6.0, math.pi**4 / 90.0, math.pi**6 / 945.0
    b2 = u * u - u + 1.0 / 6.0
    b4 = u**4 - 2.0 * u**3 + u * u - 1.0 / 30.0
    b6 = u**6 - 3.0 * u**5 + 2.5 * u**4 - 0.5 * u * u + 1.0 / 42.0
    cos2 = math.pi**2 * b2
    cos4 = -math.pi**4 * b4 / 3.0
    cos6 = (2.0 * math.pi**6 / 45.0) * b6
    n = np.arange(1, n_terms + 1, dtype=float)
    remainder = s2**3 / (n**6 * (s2 - n * n))
    flat = -(zeta2 + s2 * zeta4 + s2 * s2 * zeta6) + float(np.sum(remainder))
    osc = -(cos2 + s2 * cos4 + s2 * s2 * cos6) + float(
        np.sum(np.cos(2.0 * math.pi * n * u) * remainder)
    )
    return 1.0 / (d * beta**2) + (d / math.pi**2) * (flat + osc)


class TestGreensDiagonal:
    def test_all_vacuum_scatters_nothing(self):
        stack = Stack((half_space(Vacuum()), Layer(Vacuum(), 1e-6), half_space(Vacuum())))
        gd = greens_diagonal(stack, 1, 3e-7, omega=2e15, k=4e6)
        for value in (gd.g_kk, gd.g_nn, gd.g_zz, gd.gb_kk, gd.gb_nn, gd.gb_zz):
            assert value == 0.0
        bracket, closed = stress_bracket(stack, 1, 3e-7, omega=2e15, k=4e6)
        assert bracket == 0.0 and closed == 0.0

    def test_symmetric_stack_height_exchange(self):
        metal = Drude(1.1e16, 8e13)
        coat = Layer(Constant(3.1), 2.0**-23)
        stack = Stack((half_space(metal), coat, Layer(Vacuum(), D_EXACT), coat, half_space(metal)))
        z = D_EXACT / 4.0
        low = greens_diagonal(stack, 2, z, omega=1.7e15, k=2e6)
        high = greens_diagonal(stack, 2, D_EXACT - z, omega=1.7e15, k=2e6)
        assert low.g_kk == high.g_kk
        assert low.g_nn == high.g_nn
        assert low.g_zz == high.g_zz
        assert low.gb_kk == high.gb_kk
        assert low.gb_nn == high.gb_nn
        assert low.gb_zz == high.gb_zz

    def test_pec_cavity_zz_against_mode_sum(self):
        # independent construction: scalar standing-wave mode sum for the
        # hard-wall cavity, minus the free-space equal-point value
        d = D_EXACT
        stack = _pec_cavity(d)
        omega = 2.31e15
        ktilde_sq = (omega / C) ** 2
        for kfrac in (0.37, 0.71):
            k = kfrac * omega / C
            beta = math.sqrt(ktilde_sq - k * k)
            for zfrac in (0.21, 0.5, 0.83):
                z = zfrac * d
                scattered = _neumann_mode_sum(beta, d, z) - 1.0 / (2j * beta)
                expected = -(k * k / ktilde_sq) * scattered
                got = greens_diagonal(stack, 1, z, omega=omega, k=k).g_zz
                assert got == pytest.approx(expected, rel=1e-10)

    def test_magnetic_equals_swapped_electric(self):
        # the magnetic components are ktilde^2 times the electric ones with
        # the polarizations interchanged
        rng = np.random.default_rng(88)
        for _ in range(50):
            r = rng.uniform(-0.9, 0.9, 4) + 1j * rng.uniform(-0.4, 0.4, 4)
            beta = complex(rng.uniform(1e5, 1e7), rng.uniform(0.0, 1e6))
            ksq = float(rng.uniform(1e10, 1e14))
            ktilde_sq = beta * beta + ksq
            d = float(10 ** rng.uniform(-6.5, -6.0))
            z = float(rng.uniform(0.0, 1.0)) * d
            direct = _components(r[0], r[1], r[2], r[3], beta, ktilde_sq, ksq, z, d)
            swapped = _components(r[2], r[3], r[0], r[1], beta, ktilde_sq, ksq, z, d)
            for magnetic, electric in zip(direct[3:], swapped[:3]):
                assert magnetic == pytest.approx(ktilde_sq * electric, rel=1e-12)

    def test_validation(self):
        stack = _pec_cavity()
        with pytest.raises(ValueError):
            greens_diagonal(stack, 1, -1e-9, omega=2e15, k=2e6)
        with pytest.raises(ValueError):
            greens_diagonal(stack, 1, 2.0 * D_EXACT, omega=2e15, k=2e6)
        with pytest.raises(ValueError):
            greens_diagonal(stack, 0, 0.0, omega=2e15, k=2e6)  # PEC probe
        lossy = Stack((half_space(Vacuum()), Layer(Drude(1e16, 1e14), 1e-6), half_space(Vacuum())))
        with pytest.raises(ValueError):
            greens_diagonal(lossy, 1, 1e-7, omega=2e15, k=2e6)
        with pytest.raises(ValueError):
            # exactly on the light line, beta = 0
            greens_diagonal(stack, 1, 1e-7, omega=2e15, k=2e15 / C)


class TestStressUniformity:
    def test_bracket_uniform_and_closed_on_random_stacks(self):
        rng = np.random.default_rng(1234)
        for _ in range(3):
            stack, d_j = _absorbing_stack(rng)
            omega = float(10 ** rng.uniform(14.8, 15.6))
            probe = stack.layers[2].material
            eps_j = 1.0 if isinstance(probe, Vacuum) else probe.epsilon
            k_edge = math.sqrt(eps_j) * omega / C
            for k in (0.42 * k_edge, math.hypot(k_edge, 2.0 / d_j)):
                pairs = [
                    stress_bracket(stack, 2, zfrac * d_j, omega=omega, k=k)
                    for zfrac in (0.1, 0.3, 0.5, 0.7, 0.9)
                ]
                ref, closed = pairs[0]
                for bracket, _ in pairs:
                    assert abs(bracket - ref) <= 1e-10 * abs(ref)
                    assert abs(bracket - closed) <= 1e-10 * abs(closed)

    def test_run_verification_passes(self):
        report = run_verification()
        assert report.passed
        assert report.max_z_variation < report.tolerance
        assert report.max_closed_form_deviation < report.tolerance
        assert report.checks == 200

    def test_run_verification_reports_failure_for_absurd_tolerance(self):
        report = run_verification(tolerance=1e-18)
        assert not report.passed
