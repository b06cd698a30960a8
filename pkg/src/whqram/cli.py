"""Command-line front end: table -> spectrum -> oracle -> verify/export/report."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .circuit import qasm_export
from .cost import clifford_t_depth, cost_inputs_for, exact
from .oracles import OracleError, OracleRequest, build_oracle
from .simulator import SPARSE_QUBIT_LIMIT, verify_oracle
from .spectrum import FunctionTable, fwht

log = logging.getLogger("whqram")

DEFAULT_VERIFY_CAP = 18
DEFAULT_EPSILON = "1/1000"


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = 2):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


@dataclass
class CliConfig:
    input: Optional[Path]
    oracle: int
    l: int = 0
    projective: bool = False
    assume_y_zero: bool = False
    value_register_corrections: bool = False
    epsilon: Fraction = Fraction(DEFAULT_EPSILON)
    verify: bool = False
    verify_cap: int = DEFAULT_VERIFY_CAP
    emit_qasm: Optional[Path] = None
    report: Optional[Path] = None
    random: Optional[tuple[int, int, int, int]] = None

    def validate(self):
        if (self.input is None) == (self.random is None):
            raise CliError("bad-arguments", "give exactly one of --input or --random")
        if self.oracle not in (1, 2, 3, 4):
            raise CliError("bad-arguments", "--oracle must be 1, 2, 3 or 4")
        if self.l != 0 and self.oracle != 1:
            raise CliError("bad-arguments", "--l only applies to --oracle 1")
        if self.epsilon <= 0:
            raise CliError("bad-arguments", "--epsilon must be positive")


def random_table(n: int, d: int, sparsity: int, seed: int) -> FunctionTable:
    """Integer table with exactly ``sparsity`` nonzero Walsh coefficients."""
    if not 0 <= sparsity <= 1 << n:
        raise CliError("bad-arguments", f"sparsity must be in [0, {1 << n}]")
    rng = random.Random(seed)
    zs = rng.sample(range(1 << n), sparsity)
    amps = {z: rng.choice([a for a in range(-(1 << (d - 1)), (1 << (d - 1)) + 1) if a]) for z in zs}
    values = []
    for x in range(1 << n):
        values.append(sum(a * (-1) ** bin(x & z).count("1") for z, a in amps.items()))
    return FunctionTable(n, d, tuple(values), "real")


def load_table(path: Path) -> FunctionTable:
    try:
        obj = json.loads(path.read_text())
        return FunctionTable.from_json(obj)
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise CliError("malformed-input", f"{path}: {exc}") from None


def run(config: CliConfig, out=None) -> int:
    config.validate()
    table = load_table(config.input) if config.input else random_table(*config.random)
    spectrum = fwht(table)
    try:
        req = OracleRequest(
            spectrum,
            f"O{config.oracle}",
            l=config.l,
            projective=config.projective,
            assume_y_zero=config.assume_y_zero,
            corrections="value-register" if config.value_register_corrections else "exact",
        )
        oc = build_oracle(req)
    except OracleError as exc:
        raise CliError(exc.code, str(exc)) from None

    summary = {"schema": 1, "design": req.design, "n": table.n, "d": table.d, "W_f": spectrum.sparsity}
    if config.verify:
        total = oc.circuit.num_qubits
        if total > config.verify_cap:
            _write_outputs(config, oc, spectrum, summary)
            log.warning("built and exported, but %d qubits is too many to verify", total)
            raise CliError(
                "qubit-cap-exceeded", f"{total} qubits exceeds the verification cap of {config.verify_cap}"
            )
        verdict = verify_oracle(oc, table)
        summary["verify"] = {
            "passed": verdict.passed,
            "checked": verdict.checked,
            "max_amplitude_deviation": verdict.max_amplitude_deviation,
            "max_phase_deviation": verdict.max_phase_deviation,
        }
        if not verdict.passed:
            _write_outputs(config, oc, spectrum, summary)
            raise CliError("verification-failed", f"{len(verdict.failures)} basis inputs failed", 1)
    _write_outputs(config, oc, spectrum, summary)
    print(json.dumps({**summary, "report": oc.report.to_dict()}, sort_keys=True), file=out or sys.stdout)
    return 0


def _write_outputs(config: CliConfig, oc, spectrum, summary: dict):
    if config.emit_qasm:
        Path(config.emit_qasm).write_text(qasm_export(oc.circuit))
    if config.report:
        doc = dict(summary)
        doc["resources"] = oc.report.to_dict()
        if spectrum.sparsity:
            cost = clifford_t_depth(cost_inputs_for(spectrum, config.epsilon, config.l), oc.request.design)
            doc["cost"] = cost.to_dict()
        else:
            doc["cost"] = {"note": "zero spectrum: no rotations to bill"}
        Path(config.report).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _random_spec(text: str) -> tuple[int, int, int, int]:
    try:
        n, d, s, seed = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected n,d,sparsity,seed") from None
    return n, d, s, seed


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whqram", description=__doc__)
    p.add_argument("--input", type=Path, help="function table JSON")
    p.add_argument("--random", type=_random_spec, metavar="n,d,sparsity,seed")
    p.add_argument("--oracle", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--l", type=int, default=0, help="ancilla parameter of oracle 1")
    p.add_argument("--projective", action="store_true")
    p.add_argument("--assume-y-zero", action="store_true")
    p.add_argument(
        "--value-register-corrections",
        action="store_true",
        help="value-register phase corrections (exact up to a sign on wrap-around)",
    )
    p.add_argument("--epsilon", type=exact, default=Fraction(DEFAULT_EPSILON))
    p.add_argument("--verify", action="store_true")
    p.add_argument("--verify-cap", type=int, default=DEFAULT_VERIFY_CAP)
    p.add_argument("--emit-qasm", type=Path)
    p.add_argument("--report", type=Path)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parser().parse_args(argv)
    config = CliConfig(
        input=args.input,
        oracle=args.oracle,
        l=args.l,
        projective=args.projective,
        assume_y_zero=args.assume_y_zero,
        value_register_corrections=args.value_register_corrections,
        epsilon=args.epsilon,
        verify=args.verify,
        verify_cap=min(args.verify_cap, SPARSE_QUBIT_LIMIT),
        emit_qasm=args.emit_qasm,
        report=args.report,
        random=args.random,
    )
    try:
        return run(config)
    except CliError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
