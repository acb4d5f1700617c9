"""The noisy three-qubit teleportation pipeline.

Builds the ten intermediate states of the protocol: the product initial
state, the Hadamard/CNOT ladder that entangles and measures, a noise layer
after every gate column, and the outcome-averaged measurement-plus-
correction step that leaves the single output qubit.

Measurement is deterministic here: the four outcome branches are projected,
corrected, and summed, which is the unique channel whose output matches a
single final density matrix and which returns the input state exactly when
the noise strength is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .channels import ChannelSpec, apply_layer, gate_set, identity
from .linalg import (
    DensityOperator,
    FLOAT,
    Operator,
    PureState,
    ScalarBackend,
    conjugate_by,
    fidelity_with,
    tensor,
)

STAGE_LABELS = tuple(f"rho{k}" for k in range(1, 11))


def _exact_norm_sq(alpha: Any, beta: Any):
    """Exact |alpha|^2 + |beta|^2, or None when the amplitudes are floats."""
    from .exact import GaussianRational  # deferred: exact imports this module

    try:
        a = GaussianRational.from_value(alpha)
        b = GaussianRational.from_value(beta)
    except TypeError:
        return None
    return a.conjugate() * a + b.conjugate() * b


@dataclass(frozen=True)
class InputState:
    """Single-qubit state alpha|0> + beta|1> to be teleported.

    Amplitudes may be complex floats or exact Gaussian rationals; either
    way they must be normalized (use :meth:`normalized` to rescale float
    amplitudes first).
    """

    alpha: Any
    beta: Any

    def __post_init__(self):
        exact = _exact_norm_sq(self.alpha, self.beta)
        if exact is not None:
            if exact != 1:
                raise ValueError(f"exact amplitudes have |a|^2+|b|^2 = {exact}, not 1")
            return
        norm_sq = abs(complex(self.alpha)) ** 2 + abs(complex(self.beta)) ** 2
        if abs(norm_sq - 1.0) > 1e-9:
            raise ValueError(
                f"amplitudes deviate from unit norm by {abs(norm_sq - 1.0):.3e}; "
                "pass normalized values or use InputState.normalized"
            )

    @classmethod
    def normalized(cls, alpha: Any, beta: Any) -> "InputState":
        a, b = complex(alpha), complex(beta)
        norm = (abs(a) ** 2 + abs(b) ** 2) ** 0.5
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(a / norm, b / norm)


@dataclass(frozen=True)
class CorrectionAssignment:
    """Which measured qubit feeds each classical correction.

    The default wiring applies X controlled by the qubit-2 outcome and then
    Z controlled by the qubit-1 outcome, the standard teleportation fix-up.
    """

    x_source: int = 2
    z_source: int = 1

    def __post_init__(self):
        for src in (self.x_source, self.z_source):
            if src not in (1, 2):
                raise ValueError(f"correction source must be qubit 1 or 2, got {src}")

    def describe(self) -> str:
        return f"X<-q{self.x_source}, Z<-q{self.z_source}"


DEFAULT_ASSIGNMENT = CorrectionAssignment()

ALTERNATE_ASSIGNMENTS = (
    CorrectionAssignment(x_source=1, z_source=2),
    CorrectionAssignment(x_source=1, z_source=1),
    CorrectionAssignment(x_source=2, z_source=2),
)


@dataclass(frozen=True)
class TeleportConfig:
    input: InputState
    noise: ChannelSpec
    noise_enabled: bool = True


@dataclass(frozen=True)
class StageTrace:
    """Ordered map of the ten pipeline stages rho1..rho10."""

    stages: dict[str, DensityOperator]

    def __getitem__(self, label: str) -> DensityOperator:
        return self.stages[label]

    def items(self) -> Iterator[tuple[str, DensityOperator]]:
        return iter(self.stages.items())

    @property
    def final(self) -> DensityOperator:
        return self.stages["rho10"]


_CIRCUIT_OPS: dict[str, tuple[Operator, Operator, Operator, Operator]] = {}


def _circuit_ops(backend: ScalarBackend):
    """The four embedded circuit unitaries, cached per backend."""
    cached = _CIRCUIT_OPS.get(backend.name)
    if cached is None:
        g = gate_set(backend)
        i1 = identity(backend, 1)
        cached = _CIRCUIT_OPS[backend.name] = (
            tensor(tensor(i1, g.H), i1),  # H on qubit 2
            tensor(i1, g.CNOT),           # CNOT, control 2 target 3
            tensor(g.CNOT, i1),           # CNOT, control 1 target 2
            tensor(g.H, identity(backend, 2)),  # H on qubit 1
        )
    return cached


def build_initial(input_state: InputState, backend: ScalarBackend = FLOAT) -> DensityOperator:
    """|psi><psi| tensor |00><00| on three qubits.

    The only nonzero entries sit at index pairs (0,0), (0,4), (4,0), (4,4):
    |a|^2, a b*, b a*, |b|^2.
    """
    a = backend.coerce(input_state.alpha)
    b = backend.coerce(input_state.beta)
    psi = PureState(backend, [a, b])
    zero = backend.zero
    one = backend.one
    ancilla = DensityOperator(
        backend,
        [
            [one, zero, zero, zero],
            [zero, zero, zero, zero],
            [zero, zero, zero, zero],
            [zero, zero, zero, zero],
        ],
    )
    return tensor(psi.projector(), ancilla)


def measure_and_correct(
    rho9: DensityOperator, assignment: CorrectionAssignment | None = None
) -> DensityOperator:
    """Outcome-averaged measurement of qubits 1,2 with X/Z corrections.

    For each outcome (m1, m2): project qubits 1 and 2 onto |m1 m2> without
    renormalizing, reduce to qubit 3, apply X then Z as wired by the
    assignment, and sum the four corrected branches.  Corrections are
    applied noiselessly.
    """
    if assignment is None:
        assignment = DEFAULT_ASSIGNMENT
    if rho9.num_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {rho9.num_qubits} qubits")
    backend = rho9.backend
    g = gate_set(backend)
    zx = g.Z @ g.X
    acc = None
    for m1 in (0, 1):
        for m2 in (0, 1):
            base = 4 * m1 + 2 * m2
            block = rho9.entries[base : base + 2, base : base + 2]
            branch = DensityOperator(backend, block)
            outcome = {1: m1, 2: m2}
            x_pow = outcome[assignment.x_source]
            z_pow = outcome[assignment.z_source]
            if x_pow and z_pow:
                branch = conjugate_by(branch, zx)
            elif x_pow:
                branch = conjugate_by(branch, g.X)
            elif z_pow:
                branch = conjugate_by(branch, g.Z)
            acc = branch.entries if acc is None else acc + branch.entries
    return DensityOperator(backend, acc)


def run_stages_from_initial(
    rho1: DensityOperator,
    noise: ChannelSpec,
    noise_enabled: bool = True,
    assignment: CorrectionAssignment | None = None,
) -> StageTrace:
    """Run the gate/noise ladder from an arbitrary three-qubit initial state.

    Used directly by the symbolic transfer-map extraction, which probes the
    pipeline with matrix units that are not physical states.
    """
    if rho1.num_qubits != 3:
        raise ValueError(f"pipeline expects 3 qubits, got {rho1.num_qubits}")
    backend = rho1.backend
    h2, cnot23, cnot12, h1 = _circuit_ops(backend)

    def noisy(rho: DensityOperator) -> DensityOperator:
        return apply_layer(noise, rho) if noise_enabled else rho

    stages: dict[str, DensityOperator] = {}
    stages["rho1"] = rho1
    stages["rho2"] = conjugate_by(stages["rho1"], h2)
    stages["rho3"] = noisy(stages["rho2"])
    stages["rho4"] = conjugate_by(stages["rho3"], cnot23)
    stages["rho5"] = noisy(stages["rho4"])
    stages["rho6"] = conjugate_by(stages["rho5"], cnot12)
    stages["rho7"] = noisy(stages["rho6"])
    stages["rho8"] = conjugate_by(stages["rho7"], h1)
    stages["rho9"] = noisy(stages["rho8"])
    stages["rho10"] = measure_and_correct(stages["rho9"], assignment)
    return StageTrace(stages)


def run_stages(
    config: TeleportConfig,
    backend: ScalarBackend = FLOAT,
    assignment: CorrectionAssignment | None = None,
) -> StageTrace:
    """Run the full protocol for a configuration, returning every stage."""
    rho1 = build_initial(config.input, backend)
    return run_stages_from_initial(
        rho1, config.noise, config.noise_enabled, assignment
    )


def teleport_fidelity(
    config: TeleportConfig,
    backend: ScalarBackend = FLOAT,
    assignment: CorrectionAssignment | None = None,
) -> Any:
    """Overlap of the pipeline output with the input state.

    Floats on the numeric backend; a polynomial in p when run symbolically.
    """
    trace = run_stages(config, backend, assignment)
    psi = PureState(
        backend, [backend.coerce(config.input.alpha), backend.coerce(config.input.beta)]
    )
    return fidelity_with(psi, trace.final)
