"""Gate-level circuit representation, resource metrics and OpenQASM 2.0 export.

Angles are stored as exact rational multiples of pi. Qubit 0 is the most
significant bit of every basis index (input register, then value register,
then ancillas).
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

H, X, CNOT, RZ, CP, SWAP, QFT, QFT_DAG = "H", "X", "CNOT", "RZ", "CP", "SWAP", "QFT", "QFT_DAG"
GATE_KINDS = (H, X, CNOT, RZ, CP, SWAP, QFT, QFT_DAG)
_ARITY = {H: 1, X: 1, RZ: 1, CNOT: 2, CP: 2, SWAP: 2}

SPECTRUM_ROTATION = "spectrum_rotation"
PHASE_CORRECTION = "phase_correction"
WIRING = "wiring"
FOURIER = "fourier"
TAGS = (SPECTRUM_ROTATION, PHASE_CORRECTION, WIRING, FOURIER)

ROLES = ("input", "value", "ancilla")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: Optional[Fraction] = None  # multiple of pi
    tag: str = WIRING

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated operand in {self.kind}{qubits}")
        arity = _ARITY.get(self.kind)
        if arity is not None and len(qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubits")
        if self.kind in (QFT, QFT_DAG) and not qubits:
            raise ValueError("QFT block needs at least one qubit")
        if self.kind in (RZ, CP):
            if self.angle is None:
                raise ValueError(f"{self.kind} needs an angle")
            object.__setattr__(self, "angle", Fraction(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")

    def inverse(self) -> "Gate":
        if self.kind in (RZ, CP):
            return Gate(self.kind, self.qubits, -self.angle, self.tag)
        if self.kind == QFT:
            return Gate(QFT_DAG, self.qubits, None, self.tag)
        if self.kind == QFT_DAG:
            return Gate(QFT, self.qubits, None, self.tag)
        return self


def h(q: int, tag: str = WIRING) -> Gate:
    return Gate(H, (q,), tag=tag)


def x(q: int, tag: str = WIRING) -> Gate:
    return Gate(X, (q,), tag=tag)


def cnot(control: int, target: int, tag: str = WIRING) -> Gate:
    return Gate(CNOT, (control, target), tag=tag)


def rz(q: int, angle, tag: str = SPECTRUM_ROTATION) -> Gate:
    return Gate(RZ, (q,), Fraction(angle), tag)


def cp(control: int, target: int, angle, tag: str = FOURIER) -> Gate:
    return Gate(CP, (control, target), Fraction(angle), tag)


def swap(a: int, b: int, tag: str = FOURIER) -> Gate:
    return Gate(SWAP, (a, b), tag=tag)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    roles: tuple[str, ...]
    gates: tuple[Gate, ...] = ()
    global_phase: Fraction = Fraction(0)  # multiple of pi

    def __post_init__(self):
        if len(self.roles) != self.num_qubits:
            raise ValueError("one role per qubit")
        for r in self.roles:
            if r not in ROLES:
                raise ValueError(f"unknown role {r!r}")
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "global_phase", Fraction(self.global_phase) % 2)
        for g in gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit {q} out of range in {g}")

    @classmethod
    def with_layout(cls, n: int, d: int, ancillas: int, gates: Iterable[Gate] = (), global_phase=0):
        roles = ("input",) * n + ("value",) * d + ("ancilla",) * ancillas
        return cls(n + d + ancillas, roles, tuple(gates), Fraction(global_phase))

    def qubits_with_role(self, role: str) -> list[int]:
        return [q for q, r in enumerate(self.roles) if r == role]

    @property
    def ancilla_count(self) -> int:
        return self.roles.count("ancilla")

    def inverse(self) -> "Circuit":
        return Circuit(
            self.num_qubits,
            self.roles,
            tuple(g.inverse() for g in reversed(self.gates)),
            -self.global_phase,
        )


def inverse_gates(gates: Sequence[Gate]) -> list[Gate]:
    return [g.inverse() for g in reversed(gates)]


def qft_gates(qubits: Sequence[int], inverse: bool = False, tag: str = FOURIER) -> list[Gate]:
    """Textbook QFT on ``qubits`` (first = most significant), including the final swaps."""
    qs = list(qubits)
    k = len(qs)
    gates: list[Gate] = []
    for j in range(k):
        gates.append(h(qs[j], tag))
        for m in range(j + 1, k):
            gates.append(cp(qs[m], qs[j], Fraction(1, 1 << (m - j)), tag))
    for j in range(k // 2):
        gates.append(swap(qs[j], qs[k - 1 - j], tag))
    return inverse_gates(gates) if inverse else gates


def decompose_qft(circuit: Circuit) -> Circuit:
    """Replace every QFT block with its textbook decomposition."""
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind in (QFT, QFT_DAG):
            out.extend(qft_gates(g.qubits, g.kind == QFT_DAG, g.tag))
        else:
            out.append(g)
    return Circuit(circuit.num_qubits, circuit.roles, tuple(out), circuit.global_phase)


@dataclass(frozen=True)
class ResourceReport:
    total_depth: int
    total_depth_with_qft: int
    rz_depth: int
    gate_count: int
    rz_count: int
    phase_correction_count: int
    connectivity: int
    ancilla_count: int
    cnot_count: int = 0
    connectivity_with_cp: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps({"schema": 1, **self.to_dict()}, sort_keys=True, indent=2)


def _asap_depth(gates: Iterable[Gate], num_qubits: int, qft_free: bool) -> int:
    level = [0] * num_qubits
    for g in gates:
        start = max((level[q] for q in g.qubits), default=0)
        end = start if (qft_free and g.kind in (QFT, QFT_DAG)) else start + 1
        for q in g.qubits:
            level[q] = end
    return max(level, default=0)


def rz_depth(circuit: Circuit) -> int:
    """Largest number of spectrum rotations on any dependency path through the circuit."""
    level = [0] * circuit.num_qubits
    for g in circuit.gates:
        cur = max(level[q] for q in g.qubits)
        if g.tag == SPECTRUM_ROTATION:
            cur += 1
        for q in g.qubits:
            level[q] = cur
    return max(level, default=0)


def _partners(circuit: Circuit, kinds: tuple[str, ...]) -> int:
    partners: dict[int, set[int]] = defaultdict(set)
    for g in circuit.gates:
        if g.kind in kinds:
            a, b = g.qubits
            partners[a].add(b)
            partners[b].add(a)
    return max((len(p) for p in partners.values()), default=0)


def connectivity(circuit: Circuit, include_cp: bool = False) -> int:
    """Maximum number of distinct two-qubit partners of any qubit.

    SWAP counts as a CNOT partnership. QFT blocks are not expanded.
    """
    kinds = (CNOT, SWAP, CP) if include_cp else (CNOT, SWAP)
    return _partners(circuit, kinds)


def depth_metrics(circuit: Circuit) -> ResourceReport:
    gates = circuit.gates
    decomposed = decompose_qft(circuit)
    return ResourceReport(
        total_depth=_asap_depth(gates, circuit.num_qubits, qft_free=True),
        total_depth_with_qft=_asap_depth(decomposed.gates, circuit.num_qubits, qft_free=False),
        rz_depth=rz_depth(circuit),
        gate_count=sum(1 for g in gates if g.kind not in (QFT, QFT_DAG)),
        rz_count=sum(1 for g in gates if g.tag == SPECTRUM_ROTATION),
        phase_correction_count=sum(1 for g in gates if g.tag == PHASE_CORRECTION),
        connectivity=connectivity(circuit),
        ancilla_count=circuit.ancilla_count,
        cnot_count=sum(1 for g in gates if g.kind == CNOT),
        connectivity_with_cp=connectivity(circuit, include_cp=True),
    )


def format_angle(angle: Fraction) -> str:
    """Exact OpenQASM expression for ``angle * pi``."""
    p, q = angle.numerator, angle.denominator
    if p == 0:
        return "0"
    sign = "-" if p < 0 else ""
    p = abs(p)
    num = "pi" if p == 1 else f"{p}*pi"
    return f"{sign}{num}" if q == 1 else f"{sign}{num}/{q}"


_QASM_NAMES = {H: "h", X: "x", CNOT: "cx", RZ: "rz", CP: "cp", SWAP: "swap"}


def qasm_export(circuit: Circuit) -> str:
    """OpenQASM 2.0 text; QFT blocks are written out gate by gate."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.num_qubits}];"]
    if circuit.global_phase:
        lines.append(f"// global phase: {format_angle(circuit.global_phase)}")
    for g in decompose_qft(circuit).gates:
        name = _QASM_NAMES[g.kind]
        if g.angle is not None:
            name += f"({format_angle(g.angle)})"
        operands = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{name} {operands};")
    return "\n".join(lines) + "\n"
