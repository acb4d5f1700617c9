"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Criteria 1 and 2 and the depolarizing/bit-flip slope clauses of criterion 5
compare the pipeline against published closed forms whose coherence parts
the verification report proves wrong (exact coefficient diffs in the
report, independent brute-force cross-checks in the derivation notes).
They are implemented exactly as stated and left to fail honestly rather
than weakened; the remaining criteria pass.
"""

from fractions import Fraction

import numpy as np

from teleportsim.analytic import fidelity_closed, fidelity_linear, linear_slope, linear_slope_exact
from teleportsim.channels import (
    ChannelSpec,
    NoiseKind,
    apply_layer,
    depolarizing_subset_expansion,
    flip_sum_expansion,
)
from teleportsim.exact import GaussianRational, P, PolyP, extract_transfer_map
from teleportsim.linalg import (
    FLOAT,
    DensityOperator,
    hermitian_eigenvalues,
    hermiticity_deviation,
    max_entry_delta,
)
from teleportsim.teleport import InputState, TeleportConfig, run_stages, teleport_fidelity
from teleportsim.verify import TargetStatus, fidelity_polynomial

FIVE_STATES = (
    InputState(1, 0),
    InputState(2**-0.5, 2**-0.5),
    InputState(0.6, 0.8),
    InputState(0.6, 0.8j),
    InputState(0.28, 0.96),
)

DEFAULT_STATES = (InputState(1, 0), InputState(2**-0.5, 2**-0.5), InputState(0.6, 0.8))

P_GRID_101 = [i / 100 for i in range(101)]
P_GRID_11 = [i / 10 for i in range(11)]

ONE = PolyP.ONE
Q = ONE - P
R = ONE - PolyP([0, 2])


def criterion(num: int, description: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"ACCEPTANCE {num:02d} [{status}] {description}")
    if failures:
        listing = "\n".join(failures[:12])
        more = "" if len(failures) <= 12 else f"\n... and {len(failures) - 12} more"
        raise AssertionError(
            f"criterion {num} has {len(failures)} violation(s):\n{listing}{more}\n"
            "(documented: the verification report carries the published-form "
            "coefficient diffs, and the repository notes derive each cause)"
        )


def random_states(count: int, rng) -> list[DensityOperator]:
    out = []
    for _ in range(count):
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        m = a @ a.conj().T
        out.append(DensityOperator(FLOAT, m / np.trace(m).real))
    return out


def test_criterion_1_numeric_analytic_equivalence():
    failures = []
    for kind in NoiseKind:
        worst, worst_at = 0.0, None
        for state in FIVE_STATES:
            for p in P_GRID_101:
                f_num = teleport_fidelity(TeleportConfig(state, ChannelSpec(kind, p)))
                f_ana = fidelity_closed(kind, state, p)
                delta = abs(f_num - f_ana)
                if delta > worst:
                    worst, worst_at = delta, (state, p)
        if worst > 1e-12:
            st, p = worst_at
            failures.append(
                f"{kind.value}: max |numeric - analytic| = {worst:.3e} at "
                f"alpha={st.alpha}, beta={st.beta}, p={p}"
            )
    criterion(1, "numeric pipeline matches published closed-form fidelity to 1e-12", failures)


def test_criterion_2_depolarizing_symbolic_reproduction():
    matrix = extract_transfer_map(NoiseKind.DEPOLARIZING)
    failures = []
    checks = [
        ("diagonal contraction", Q**9, matrix[0, 0] - matrix[0, 3]),
        ("mixing term", (ONE - Q**9) * Fraction(1, 2), matrix[0, 3]),
        ("coherence factor", Q**12, matrix[1, 1]),
        ("coherence swap component", PolyP.ZERO, matrix[1, 2]),
    ]
    for name, expected, derived in checks:
        if expected != derived:
            failures.append(
                f"depolarizing {name}: expected {expected.to_text()}; "
                f"derived {derived.to_text()}"
            )
    criterion(2, "depolarizing transfer map equals the published form exactly", failures)


def test_criterion_3_phaseflip_symbolic_reproduction():
    from teleportsim.analytic import PUBLISHED

    matrix = extract_transfer_map(NoiseKind.PHASE_FLIP)
    failures = []
    if matrix[1, 1] != PUBLISHED.u6:
        failures.append("derived coherence polynomial differs from published u6")
    if PUBLISHED.u6 != R**8:
        failures.append("published u6 is not (1-2p)^8")
    if matrix[1, 2]:
        failures.append("unexpected coherence swap component")
    criterion(3, "phase-flip coherence equals published u6 and (1-2p)^8 exactly", failures)


def test_criterion_4_bitflip_comparison_complete(verification_report):
    failures = []
    expected_targets = {
        "bitflip diagonal keep 4(u1+u3)",
        "bitflip diagonal swap 4(u2+u3)",
        "bitflip coherence keep 4u4",
        "bitflip coherence swap 4u5",
    }
    for name in expected_targets:
        try:
            t = verification_report.find(name)
        except KeyError:
            failures.append(f"missing comparison target {name}")
            continue
        if t.status not in (TargetStatus.MATCH, TargetStatus.MISMATCH):
            failures.append(f"{name}: no definitive Match/Mismatch status")
        if t.status is TargetStatus.MISMATCH and not t.coefficient_diffs:
            failures.append(f"{name}: mismatch without coefficient diffs")
        if not t.expected or not t.derived:
            failures.append(f"{name}: comparison not recorded")
    u3 = verification_report.find("bitflip u3 standalone")
    if u3.status is not TargetStatus.NOT_IDENTIFIABLE:
        failures.append("u3 target must be NotIdentifiable")
    if "1/4*p - 1/4*p^2" not in u3.expected:
        failures.append("u3 target must echo the published form")
    criterion(
        4,
        "bit-flip comparison is exact and complete (Mismatch with diffs allowed)",
        failures,
    )


def test_criterion_5_linear_approximation_slopes():
    failures = []
    probes = (
        (NoiseKind.DEPOLARIZING, GaussianRational(Fraction(3, 5)), GaussianRational(Fraction(4, 5))),
        (NoiseKind.BIT_FLIP, GaussianRational(Fraction(3, 5)), GaussianRational(Fraction(4, 5))),
        (NoiseKind.PHASE_FLIP, GaussianRational(Fraction(3, 5)), GaussianRational(0, Fraction(4, 5))),
    )
    for kind, alpha, beta in probes:
        fpoly = fidelity_polynomial(kind, InputState(alpha, beta))
        derived = fpoly.coefficient(1)
        expected = GaussianRational(-linear_slope_exact(kind, alpha, beta))
        if derived != expected:
            failures.append(
                f"{kind.value}: derived dF/dp at 0 is {derived}, published slope gives {expected}"
            )
    for kind in NoiseKind:
        for state in FIVE_STATES:
            slope = abs(linear_slope(kind, state))
            for p in np.linspace(0.001, 0.02, 20):
                resid = abs(fidelity_closed(kind, state, float(p)) - fidelity_linear(kind, state, float(p)))
                if resid > 5 * slope * p**2 + 1e-15:
                    failures.append(
                        f"{kind.value} residual {resid:.3e} exceeds 5*slope*p^2 at p={p:.4f}"
                    )
    criterion(5, "published first-order slopes match the derived derivative exactly", failures)


def test_criterion_6_limit_checks():
    failures = []
    for kind in NoiseKind:
        for state in FIVE_STATES:
            f0 = teleport_fidelity(TeleportConfig(state, ChannelSpec(kind, 0.0)))
            if abs(f0 - 1) > 1e-14:
                failures.append(f"{kind.value} at p=0: F = {f0!r}")
    for state in FIVE_STATES:
        f1 = teleport_fidelity(TeleportConfig(state, ChannelSpec(NoiseKind.DEPOLARIZING, 1.0)))
        if abs(f1 - 0.5) > 1e-12:
            failures.append(f"depolarizing at p=1: F = {f1!r}")
    basis = InputState(1, 0)
    for p in P_GRID_101:
        f = teleport_fidelity(TeleportConfig(basis, ChannelSpec(NoiseKind.PHASE_FLIP, p)))
        if abs(f - 1) > 1e-12:
            failures.append(f"phase flip on basis state at p={p}: F = {f!r}")
    criterion(6, "limits: F(0)=1, depolarizing F(1)=1/2, phase flip immune basis state", failures)


def test_criterion_7_channel_form_equivalences(rng):
    failures = []
    worst = 0.0
    for rho in random_states(50, rng):
        for p in P_GRID_11:
            delta = max_entry_delta(
                apply_layer(ChannelSpec(NoiseKind.DEPOLARIZING, p), rho),
                depolarizing_subset_expansion(rho, p),
            )
            worst = max(worst, delta)
    if worst > 1e-14:
        failures.append(f"depolarizing subset expansion deviates by {worst:.3e}")
    for kind in (NoiseKind.BIT_FLIP, NoiseKind.PHASE_FLIP):
        worst = 0.0
        for rho in random_states(5, rng):
            for p in P_GRID_11:
                spec = ChannelSpec(kind, p)
                delta = max_entry_delta(apply_layer(spec, rho), flip_sum_expansion(spec, rho))
                worst = max(worst, delta)
        if worst > 1e-14:
            failures.append(f"{kind.value} explicit sum deviates by {worst:.3e}")
    criterion(7, "layer composition equals the expanded channel forms to 1e-14", failures)


def test_criterion_8_marginal_factorization_discrepancy(verification_report):
    failures = []
    product = verification_report.find("factorized marginal form on a product state")
    entangled = verification_report.find("factorized marginal form on an entangled state")
    if product.status is not TargetStatus.MATCH:
        failures.append("factorized form must agree on product states within 1e-14")
    dev = float(entangled.derived.split("deviation")[1].split()[0])
    if not dev > 1e-6:
        failures.append(f"entangled-state deviation {dev!r} not reported as nonzero")
    if entangled.status is not TargetStatus.MATCH:
        failures.append("entangled-state deviation target missing from report")
    criterion(
        8,
        "factorized-marginal shortcut: documented nonzero deviation on entangled states",
        failures,
    )


def test_criterion_9_property_suite():
    failures = []
    for kind in NoiseKind:
        for state in DEFAULT_STATES:
            for p in P_GRID_11:
                trace = run_stages(TeleportConfig(state, ChannelSpec(kind, p)))
                for label, rho in trace.items():
                    if abs(rho.trace() - 1) > 1e-12:
                        failures.append(f"{kind.value} {label} p={p}: trace off")
                    if hermiticity_deviation(rho) > 1e-12:
                        failures.append(f"{kind.value} {label} p={p}: not Hermitian")
                    if hermitian_eigenvalues(rho)[0] < -1e-10:
                        failures.append(f"{kind.value} {label} p={p}: negative eigenvalue")
    pairs = [(0.6, 0.8), (0.6, 0.8j), (0.28, 0.96j)]
    phase = np.exp(0.9j)
    for kind in NoiseKind:
        for a, b in pairs:
            for p in (0.15, 0.35):
                spec = ChannelSpec(kind, p)
                f = teleport_fidelity(TeleportConfig(InputState(a, b), spec))
                f_swap = teleport_fidelity(TeleportConfig(InputState(b, a), spec))
                f_phase = teleport_fidelity(
                    TeleportConfig(InputState(a * phase, b * phase), spec)
                )
                if abs(f - f_swap) > 1e-12:
                    failures.append(f"{kind.value} swap asymmetry at ({a},{b}), p={p}")
                if abs(f - f_phase) > 1e-12:
                    failures.append(f"{kind.value} phase sensitivity at ({a},{b}), p={p}")
    half_grid = np.linspace(0, 0.5, 26)
    for kind in NoiseKind:
        for state in DEFAULT_STATES:
            values = [
                teleport_fidelity(TeleportConfig(state, ChannelSpec(kind, float(p))))
                for p in half_grid
            ]
            for prev, cur in zip(values, values[1:]):
                if cur > prev + 1e-12:
                    failures.append(f"{kind.value} fidelity increases on [0, 0.5]")
                    break
    criterion(9, "stage physicality, symmetries, and monotone decline on [0, 0.5]", failures)


def test_criterion_10_channel_ordering():
    failures = []
    plus = InputState(2**-0.5, 2**-0.5)
    for p in (0.1, 0.2, 0.3):
        f_bit = fidelity_closed(NoiseKind.BIT_FLIP, plus, p)
        f_dep = fidelity_closed(NoiseKind.DEPOLARIZING, plus, p)
        if not f_bit >= f_dep:
            failures.append(f"p={p}: bit flip {f_bit} < depolarizing {f_dep}")
    criterion(10, "bit flip degrades equal superposition slower than depolarizing", failures)
