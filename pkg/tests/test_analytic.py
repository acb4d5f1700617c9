"""The published closed forms: table invariants, limits, slopes, residual order."""

from fractions import Fraction

import numpy as np
import pytest

from teleportsim.analytic import (
    PUBLISHED,
    fidelity_closed,
    fidelity_linear,
    linear_slope,
    linear_slope_exact,
    rho10_closed,
)
from teleportsim.channels import NoiseKind
from teleportsim.exact import GaussianRational, P, PolyP
from teleportsim.teleport import InputState

STATES = [
    InputState(1, 0),
    InputState(2**-0.5, 2**-0.5),
    InputState(0.6, 0.8),
    InputState(0.6, 0.8j),
]


def fd_slope_at_zero(fn, h=1e-5):
    """Richardson-extrapolated one-sided difference of fn at 0 (fn domain is [0,1])."""

    def one_sided(hh):
        return (-3 * fn(0.0) + 4 * fn(hh) - fn(2 * hh)) / (2 * hh)

    return (4 * one_sided(h / 2) - one_sided(h)) / 3


class TestPublishedTable:
    def test_trace_identity(self):
        combo = PUBLISHED.u1 + PUBLISHED.u2 + PUBLISHED.u3 * 2
        assert combo == PolyP([Fraction(1, 4)])

    def test_values_at_zero(self):
        expected = {"u1": Fraction(1, 4), "u2": 0, "u3": 0, "u4": Fraction(1, 4), "u5": 0, "u6": 1}
        for name, value in expected.items():
            assert getattr(PUBLISHED, name).evaluate_at(0) == GaussianRational(Fraction(value))

    def test_u6_binomial_factorization(self):
        assert PUBLISHED.u6 == (PolyP.ONE - PolyP([0, 2])) ** 8

    def test_degrees(self):
        assert PUBLISHED.u1.degree == 9
        assert PUBLISHED.u4.degree == 11
        assert PUBLISHED.u6.degree == 8


class TestClosedState:
    def test_identity_at_zero_noise(self):
        for kind in NoiseKind:
            for st in STATES:
                rho = rho10_closed(kind, st, 0.0)
                a, b = complex(st.alpha), complex(st.beta)
                expected = np.array(
                    [[abs(a) ** 2, a * np.conj(b)], [b * np.conj(a), abs(b) ** 2]]
                )
                assert np.max(np.abs(rho.entries - expected)) <= 1e-14

    def test_depolarizing_coherence_entry(self):
        st = STATES[2]
        for p in (0.1, 0.6):
            rho = rho10_closed(NoiseKind.DEPOLARIZING, st, p)
            assert rho.entries[0, 1] == pytest.approx((1 - p) ** 12 * 0.48, abs=1e-15)

    def test_phaseflip_half_is_diagonal(self):
        rho = rho10_closed(NoiseKind.PHASE_FLIP, STATES[2], 0.5)
        assert rho.entries[0, 1] == 0
        assert rho.entries[0, 0] == pytest.approx(0.36)
        assert rho.entries[1, 1] == pytest.approx(0.64)

    def test_unit_trace_everywhere(self):
        for kind in NoiseKind:
            for st in STATES:
                for p in np.linspace(0, 1, 11):
                    rho = rho10_closed(kind, st, float(p))
                    assert abs(rho.trace().real - 1) <= 1e-12

    def test_probability_domain(self):
        with pytest.raises(ValueError):
            rho10_closed(NoiseKind.DEPOLARIZING, STATES[0], 1.5)


class TestClosedFidelity:
    def test_one_at_zero(self):
        for kind in NoiseKind:
            for st in STATES:
                assert fidelity_closed(kind, st, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_depolarizing_equal_superposition_form(self):
        st = STATES[1]
        for p in (0.0, 0.2, 1.0):
            expected = 0.5 + (1 - p) ** 12 / 2
            assert fidelity_closed(NoiseKind.DEPOLARIZING, st, p) == pytest.approx(expected, abs=1e-13)
        assert fidelity_closed(NoiseKind.DEPOLARIZING, st, 1.0) == pytest.approx(0.5)

    def test_phaseflip_expansion(self):
        st = STATES[3]
        a, b = complex(st.alpha), complex(st.beta)
        t = abs(a) ** 2 * abs(b) ** 2
        for p in (0.1, 0.4):
            u6 = PUBLISHED.u6.evaluate_float(p).real
            expected = abs(a) ** 4 + abs(b) ** 4 + 2 * u6 * t
            assert fidelity_closed(NoiseKind.PHASE_FLIP, st, p) == pytest.approx(expected, abs=1e-14)


class TestLinearApproximation:
    def test_one_at_zero(self):
        for kind in NoiseKind:
            assert fidelity_linear(kind, STATES[2], 0.0) == 1.0

    def test_depolarizing_spot_value(self):
        assert fidelity_linear(NoiseKind.DEPOLARIZING, STATES[1], 0.01) == pytest.approx(0.94)

    def test_phaseflip_basis_state(self):
        for p in (0.0, 0.3, 1.0):
            assert fidelity_linear(NoiseKind.PHASE_FLIP, STATES[0], p) == 1.0

    def test_named_slopes(self):
        assert linear_slope(NoiseKind.DEPOLARIZING, STATES[0]) == pytest.approx(4.5)
        assert linear_slope(NoiseKind.BIT_FLIP, STATES[0]) == pytest.approx(9.0)
        assert linear_slope(NoiseKind.PHASE_FLIP, InputState(2**-0.5, 1j * 2**-0.5)) == pytest.approx(8.0)

    def test_slope_is_derivative_of_closed_form_at_named_probes(self):
        for kind in NoiseKind:
            for st in STATES:
                fd = fd_slope_at_zero(lambda p: fidelity_closed(kind, st, p))
                assert abs(fd + linear_slope(kind, st)) <= 1e-9

    def test_slope_consistency_on_random_states(self, rng):
        for _ in range(20):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            st = InputState(complex(v[0]), complex(v[1]))
            for kind in NoiseKind:
                fd = fd_slope_at_zero(lambda p: fidelity_closed(kind, st, p))
                assert abs(fd + linear_slope(kind, st)) <= 1e-6

    def test_residual_is_second_order(self):
        grid = np.linspace(0.0005, 0.02, 40)
        for kind in NoiseKind:
            for st in STATES:
                def residual(p):
                    return fidelity_closed(kind, st, p) - fidelity_linear(kind, st, p)

                c2_ref = abs(residual(0.02)) / 0.02**2
                for p in grid:
                    assert abs(residual(float(p))) <= 1.5 * c2_ref * p**2 + 1e-12
                # extrapolate the linear residual component; it must vanish
                c1 = 2 * residual(1e-6) / 1e-6 - residual(2e-6) / 2e-6
                assert abs(c1) <= 2e-9

    def test_exact_slopes_match_float(self):
        probes = [
            (GaussianRational(Fraction(3, 5)), GaussianRational(Fraction(4, 5))),
            (GaussianRational(Fraction(3, 5)), GaussianRational(0, Fraction(4, 5))),
        ]
        for kind in NoiseKind:
            for alpha, beta in probes:
                exact = linear_slope_exact(kind, alpha, beta)
                st = InputState(complex(alpha), complex(beta))
                assert float(exact) == pytest.approx(linear_slope(kind, st), abs=1e-14)
