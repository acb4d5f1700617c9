"""Published closed-form results for the noisy teleportation protocol.

This module is a faithful transcription of the published final states,
fidelities, first-order approximations, and the polynomial constants
u1..u6, evaluated numerically.  It makes no claim of independent
correctness: the verify module compares these reference forms against the
polynomials derived from the pipeline and reports where they agree and
where they do not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .channels import NoiseKind
from .exact import GaussianRational, PolyP
from .linalg import FLOAT, DensityOperator
from .teleport import InputState


@dataclass(frozen=True)
class PublishedPolynomialTable:
    """The published noise polynomials, with exact rational coefficients.

    u1..u5 parameterize the bit-flip output state (u1/u2 diagonal transfer,
    u3 diagonal offset, u4/u5 coherence transfer, all scaled by 4); u6 is
    the phase-flip coherence factor.
    """

    u1: PolyP
    u2: PolyP
    u3: PolyP
    u4: PolyP
    u5: PolyP
    u6: PolyP


PUBLISHED = PublishedPolynomialTable(
    u1=PolyP(
        [Fraction(1, 4), Fraction(-5, 2), Fraction(73, 4), -84, 252, -504, 672, -576, 288, -64]
    ),
    u2=PolyP([0, 2, Fraction(-71, 4), 84, -252, 504, -672, 576, -288, 64]),
    u3=PolyP([0, Fraction(1, 4), Fraction(-1, 4)]),
    u4=PolyP(
        [
            Fraction(1, 4),
            Fraction(-11, 4),
            Fraction(83, 4),
            Fraction(-205, 2),
            Fraction(1337, 4),
            -742,
            1120,
            -1108,
            640,
            -128,
            -64,
            32,
        ]
    ),
    u5=PolyP(
        [
            0,
            2,
            Fraction(-79, 4),
            Fraction(405, 4),
            Fraction(-1335, 4),
            742,
            -1120,
            1108,
            -640,
            128,
            64,
            -32,
        ]
    ),
    u6=PolyP([1, -16, 112, -448, 1120, -1792, 1792, -1024, 256]),
)


def _check_p(p: float) -> float:
    if not 0 <= p <= 1:
        raise ValueError(f"noise probability {p} outside [0, 1]")
    return float(p)


def _amplitudes(input_state: InputState) -> tuple[complex, complex]:
    return complex(input_state.alpha), complex(input_state.beta)


def _u(name: str, p: float) -> float:
    poly: PolyP = getattr(PUBLISHED, name)
    return poly.evaluate_float(p).real


def rho10_closed(kind: NoiseKind, input_state: InputState, p: float) -> DensityOperator:
    """The published single-qubit output state, evaluated at float p."""
    p = _check_p(p)
    a, b = _amplitudes(input_state)
    aa, dd = abs(a) ** 2, abs(b) ** 2
    coh = a * b.conjugate()
    if kind is NoiseKind.DEPOLARIZING:
        q9 = (1 - p) ** 9
        q12 = (1 - p) ** 12
        mix = (1 - q9) / 2
        ent = [
            [q9 * aa + mix, q12 * coh],
            [q12 * coh.conjugate(), q9 * dd + mix],
        ]
    elif kind is NoiseKind.BIT_FLIP:
        u1, u2, u3 = _u("u1", p), _u("u2", p), _u("u3", p)
        u4, u5 = _u("u4", p), _u("u5", p)
        ent = [
            [
                4 * (u1 * aa + u2 * dd + u3),
                4 * (u4 * coh + u5 * coh.conjugate()),
            ],
            [
                4 * (u5 * coh + u4 * coh.conjugate()),
                4 * (u2 * aa + u1 * dd + u3),
            ],
        ]
    else:
        u6 = _u("u6", p)
        ent = [[aa, u6 * coh], [u6 * coh.conjugate(), dd]]
    return DensityOperator(FLOAT, ent)


def fidelity_closed(kind: NoiseKind, input_state: InputState, p: float) -> float:
    """<psi| rho10_closed |psi> expanded to a real number."""
    a, b = _amplitudes(input_state)
    rho = rho10_closed(kind, input_state, p).entries
    val = (
        abs(a) ** 2 * rho[0, 0]
        + a.conjugate() * b * rho[0, 1]
        + b.conjugate() * a * rho[1, 0]
        + abs(b) ** 2 * rho[1, 1]
    )
    assert abs(val.imag) <= 1e-12
    return float(val.real)


def linear_slope(kind: NoiseKind, input_state: InputState) -> float:
    """Magnitude of the published first-order fidelity decay coefficient.

    This is the bracketed factor of -p in the published small-p
    approximations; it equals -dF/dp at p = 0 of the corresponding
    published closed form.
    """
    a, b = _amplitudes(input_state)
    t = abs(a) ** 2 * abs(b) ** 2
    if kind is NoiseKind.DEPOLARIZING:
        return 6 * t + 4.5
    if kind is NoiseKind.BIT_FLIP:
        cross = (a * b.conjugate()) ** 2 + (b * a.conjugate()) ** 2
        # real by conjugate symmetry; a nonzero imaginary part means a typo
        assert abs(cross.imag) <= 1e-15
        return 9 - 14 * t - 8 * cross.real
    return 32 * t


def fidelity_linear(kind: NoiseKind, input_state: InputState, p: float) -> float:
    """Published small-p approximation F ~ 1 - p * slope."""
    return 1.0 - float(p) * linear_slope(kind, input_state)


def linear_slope_exact(
    kind: NoiseKind, alpha: GaussianRational, beta: GaussianRational
) -> Fraction:
    """The published slope at exact Gaussian-rational amplitudes."""
    t = alpha.norm_sq() * beta.norm_sq()
    if kind is NoiseKind.DEPOLARIZING:
        return 6 * t + Fraction(9, 2)
    if kind is NoiseKind.BIT_FLIP:
        z = alpha * beta.conjugate()
        cross = z * z + (z * z).conjugate()
        if cross.im:
            raise ValueError("cross term must be real")
        return 9 - 14 * t - 8 * cross.re
    return 32 * t
