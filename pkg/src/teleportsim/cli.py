"""Command-line surface: sweeps, stage traces, verification, charts.

Amplitude grammar: each of alpha, beta is `re` or `re+imi` / `re-imi`,
e.g. `0.6`, `0.6+0.8i`, `0-1i`.  Pairs are comma separated, multiple states
are semicolon separated: `--states "1,0;0.6,0.8"`.  Unnormalized inputs are
rejected unless --normalize is given, so reproduction runs cannot silently
mask a typo in the amplitudes.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .analytic import fidelity_closed, fidelity_linear
from .channels import ChannelSpec, NoiseKind
from .charts import render_line_chart
from .linalg import hermitian_eigenvalues
from .teleport import InputState, TeleportConfig, run_stages, teleport_fidelity
from .verify import run_verification

DEFAULT_STATES = ((1.0, 0.0), (2**-0.5, 2**-0.5), (0.6, 0.8))
ALL_COLUMNS = ("numeric", "analytic", "linear")


def parse_amplitude(token: str) -> complex:
    """Parse one amplitude. Grammar: `re` or `re+imi` / `re-imi`."""
    s = token.strip()
    if not s:
        raise ValueError("empty amplitude token")
    if s.endswith("i"):
        body = s[:-1]
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                try:
                    return complex(float(body[:k]), float(body[k:]))
                except ValueError:
                    break
        raise ValueError(f"cannot parse amplitude {token!r}")
    try:
        return complex(float(s), 0.0)
    except ValueError:
        raise ValueError(f"cannot parse amplitude {token!r}") from None


def format_amplitude(z: complex) -> str:
    """Canonical form of an amplitude; format(parse(s)) is idempotent."""
    z = complex(z)
    re_s = repr(z.real)
    if z.imag == 0:
        return re_s
    sign = "+" if z.imag >= 0 else "-"
    return f"{re_s}{sign}{repr(abs(z.imag))}i"


def state_label(alpha: complex, beta: complex) -> str:
    # semicolon keeps the label a single unquoted CSV field
    return f"({format_amplitude(alpha)};{format_amplitude(beta)})"


def parse_states(text: str) -> list[tuple[complex, complex]]:
    states = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"state {chunk!r} is not an `alpha,beta` pair")
        states.append((parse_amplitude(parts[0]), parse_amplitude(parts[1])))
    return states


@dataclass(frozen=True)
class SweepConfig:
    kind: NoiseKind
    states: tuple[tuple[complex, complex], ...]
    p_start: float = 0.0
    p_end: float = 1.0
    steps: int = 101
    columns: tuple[str, ...] = ALL_COLUMNS

    def __post_init__(self):
        if not self.p_start <= self.p_end:
            raise ValueError(f"p_start {self.p_start} exceeds p_end {self.p_end}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        for col in self.columns:
            if col not in ALL_COLUMNS:
                raise ValueError(f"unknown column {col!r}")

    def grid(self) -> list[float]:
        span = self.p_end - self.p_start
        return [self.p_start + span * i / (self.steps - 1) for i in range(self.steps)]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def run_sweep(config: SweepConfig) -> str:
    """Compute the sweep as CSV text, rows ordered by (state, p)."""
    want = set(config.columns)
    header = ["p", "state_label"]
    if "numeric" in want:
        header.append("f_numeric")
    if "analytic" in want:
        header.append("f_analytic")
    if "linear" in want:
        header.append("f_linear")
    with_diff = {"numeric", "analytic"} <= want
    if with_diff:
        header.append("abs_diff")
    lines = [",".join(header)]
    for alpha, beta in config.states:
        label = state_label(alpha, beta)
        state = InputState(alpha, beta)
        for p in config.grid():
            row = [_fmt(p), label]
            f_num = f_ana = None
            if "numeric" in want:
                f_num = teleport_fidelity(
                    TeleportConfig(state, ChannelSpec(config.kind, p))
                )
                row.append(_fmt(f_num))
            if "analytic" in want:
                f_ana = fidelity_closed(config.kind, state, p)
                row.append(_fmt(f_ana))
            if "linear" in want:
                row.append(_fmt(fidelity_linear(config.kind, state, p)))
            if with_diff:
                row.append(_fmt(abs(f_num - f_ana)))
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _write_or_fail(path: str, text: str) -> int:
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 1
    return 0


def _states_from_args(args) -> list[tuple[complex, complex]]:
    if args.states:
        states = parse_states(args.states)
    elif args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise ValueError("--alpha and --beta must be given together")
        states = [(parse_amplitude(args.alpha), parse_amplitude(args.beta))]
    else:
        states = [(complex(a), complex(b)) for a, b in DEFAULT_STATES]
    out = []
    for a, b in states:
        if args.normalize:
            st = InputState.normalized(a, b)
            out.append((complex(st.alpha), complex(st.beta)))
        else:
            InputState(a, b)  # norm check; raises with the deviation
            out.append((a, b))
    return out


def cmd_sweep(args) -> int:
    config = SweepConfig(
        kind=NoiseKind(args.noise),
        states=tuple(_states_from_args(args)),
        p_start=args.p_start,
        p_end=args.p_end,
        steps=args.steps,
        columns=tuple(args.columns.split(",")),
    )
    csv_text = run_sweep(config)
    if args.out:
        return _write_or_fail(args.out, csv_text)
    sys.stdout.write(csv_text)
    return 0


def _format_entry(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def cmd_trace(args) -> int:
    states = _states_from_args(args)
    if len(states) != 1:
        raise ValueError("trace works on exactly one input state")
    alpha, beta = states[0]
    state = InputState(alpha, beta)
    config = TeleportConfig(state, ChannelSpec(NoiseKind(args.noise), args.p))
    trace = run_stages(config)
    lines = [
        f"stage trace: noise={args.noise} p={_fmt(args.p)} "
        f"state={state_label(alpha, beta)}"
    ]
    for label, rho in trace.items():
        lines.append("")
        lines.append(f"{label} ({rho.num_qubits} qubit{'s' if rho.num_qubits > 1 else ''})")
        for row in rho.entries:
            lines.append("  " + "  ".join(f"{_format_entry(z):>32}" for z in row))
        tr = rho.trace()
        min_eig = hermitian_eigenvalues(rho)[0]
        lines.append(f"  trace = {tr.real:.12g}, min eigenvalue = {min_eig:.12g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        return _write_or_fail(args.out, text)
    sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    report = run_verification()
    base = args.out or "verification_report"
    status = _write_or_fail(base + ".txt", report.to_text())
    status = status or _write_or_fail(base + ".tsv", report.to_machine())
    if status:
        return status
    counts = {}
    for t in report.targets:
        counts[t.status.value] = counts.get(t.status.value, 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"verification: {summary}; report written to {base}.txt / {base}.tsv")
    return 1 if report.has_mismatch else 0


def cmd_curves(args) -> int:
    config = SweepConfig(
        kind=NoiseKind(args.noise),
        states=tuple(_states_from_args(args)),
        p_start=args.p_start,
        p_end=args.p_end,
        steps=args.steps,
    )
    series = []
    for alpha, beta in config.states:
        state = InputState(alpha, beta)
        points = [
            (p, teleport_fidelity(TeleportConfig(state, ChannelSpec(config.kind, p))))
            for p in config.grid()
        ]
        series.append((state_label(alpha, beta), points))
    svg = render_line_chart(
        title=f"teleportation fidelity under {config.kind.value} noise",
        x_label="noise probability p",
        y_label="fidelity",
        series=series,
    )
    return _write_or_fail(args.out, svg)


def _add_state_flags(sp) -> None:
    sp.add_argument("--alpha", help="input amplitude for |0>")
    sp.add_argument("--beta", help="input amplitude for |1>")
    sp.add_argument(
        "--states",
        help='semicolon-separated list of alpha,beta pairs, e.g. "1,0;0.6,0.8"',
    )
    sp.add_argument(
        "--normalize",
        action="store_true",
        help="rescale the given amplitudes to unit norm instead of rejecting them",
    )


def _add_grid_flags(sp) -> None:
    sp.add_argument("--p-start", type=float, default=0.0)
    sp.add_argument("--p-end", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=101)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleportsim",
        description="density-matrix simulation and exact verification of noisy teleportation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="fidelity-vs-p sweep as CSV")
    sp.add_argument("--noise", required=True, choices=[k.value for k in NoiseKind])
    _add_state_flags(sp)
    _add_grid_flags(sp)
    sp.add_argument(
        "--columns",
        default=",".join(ALL_COLUMNS),
        help="comma-separated subset of numeric,analytic,linear",
    )
    sp.add_argument("--out", help="output CSV path (default: stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("trace", help="dump the ten intermediate states")
    sp.add_argument("--noise", required=True, choices=[k.value for k in NoiseKind])
    sp.add_argument("--p", type=float, required=True)
    _add_state_flags(sp)
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser(
        "verify", help="compare derived polynomials against the published forms"
    )
    sp.add_argument(
        "--out",
        help="report base path; writes BASE.txt and BASE.tsv "
        "(default: verification_report)",
    )
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("curves", help="fidelity-vs-p chart as SVG")
    sp.add_argument("--noise", required=True, choices=[k.value for k in NoiseKind])
    _add_state_flags(sp)
    _add_grid_flags(sp)
    sp.add_argument("--out", default="curves.svg", help="output SVG path")
    sp.set_defaults(func=cmd_curves)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
