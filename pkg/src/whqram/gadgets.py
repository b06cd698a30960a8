"""Logarithmic-depth CNOT gadgets, QFT blocks and the QFT constant adder.

Parity-fan-out (PFO) layout, for ``h`` controls and ``d`` targets:

1. gather the parity of the controls onto the first control with a balanced
   binary CNOT tree (``h - 1`` CNOTs, depth ``ceil(log2 h)``), while in
   parallel the targets are transformed by the inverse doubling network
   ``M`` (``d - 1`` CNOTs, depth ``ceil(log2 d)``);
2. one CNOT from the gathered parity onto the first target;
3. undo both trees.

``M`` maps the all-ones vector to the first unit vector, so conjugating a
single CNOT by it flips every target regardless of its initial value. The
gadget uses ``2(h + d) - 3`` CNOTs and has depth
``2 max(ceil(log2 h), ceil(log2 d)) + 1``, which gives the documented
constants ``PFO_CNOT_SLACK = 0`` and ``PFO_DEPTH_SLACK = 3`` against
``2(h + d)`` and ``2 log2(1 + max(h, d))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circuit import (
    FOURIER,
    QFT,
    QFT_DAG,
    Gate,
    cnot,
    inverse_gates,
    rz,
)

PFO_CNOT_SLACK = 0
PFO_DEPTH_SLACK = 3


@dataclass(frozen=True)
class PfoSpec:
    z: int
    n: int
    control_indices: tuple[int, ...]  # qubit of each mask bit, MSB first
    target_indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.control_indices) != self.n:
            raise ValueError("need one control qubit per mask bit")
        if not 0 <= self.z < (1 << self.n):
            raise ValueError("mask out of range")
        if set(self.control_indices) & set(self.target_indices):
            raise ValueError("controls and targets overlap")

    @property
    def d(self) -> int:
        return len(self.target_indices)

    @property
    def controls(self) -> list[int]:
        return mask_qubits(self.z, self.control_indices)


def mask_qubits(z: int, qubits: Sequence[int]) -> list[int]:
    n = len(qubits)
    return [qubits[a] for a in range(n) if z >> (n - 1 - a) & 1]


def _gather_tree(wires: Sequence[int]) -> list[Gate]:
    """XOR every wire into ``wires[0]`` with a balanced binary tree."""
    gates = []
    stride = 1
    while stride < len(wires):
        for i in range(0, len(wires), 2 * stride):
            if i + stride < len(wires):
                gates.append(cnot(wires[i + stride], wires[i]))
        stride *= 2
    return gates


def doubling_tree(wires: Sequence[int]) -> list[Gate]:
    """Copy ``wires[0]`` into every other wire, doubling the number of copies per layer.

    Exact copy only when the other wires start in ``|0>``.
    """
    gates = []
    have = 1
    while have < len(wires):
        for i in range(min(have, len(wires) - have)):
            gates.append(cnot(wires[i], wires[have + i]))
        have *= 2
    return gates


def fanout_from(root: int, targets: Sequence[int]) -> list[Gate]:
    """XOR the value of ``root`` onto every target, whatever the targets hold."""
    if not targets:
        return []
    spread = doubling_tree(targets)
    return inverse_gates(spread) + [cnot(root, targets[0])] + spread


def pfo_gates(controls: Sequence[int], targets: Sequence[int]) -> list[Gate]:
    """PFO on explicit control qubits: ``|x>|y> -> |x> (x) |y_j ^ parity(x_controls)>``."""
    controls = list(controls)
    targets = list(targets)
    if set(controls) & set(targets):
        raise ValueError("controls and targets overlap")
    if not controls or not targets:
        return []
    gather = _gather_tree(controls)
    spread = doubling_tree(targets)
    # gather and inverse spread touch disjoint qubits, so they share layers
    return gather + inverse_gates(spread) + [cnot(controls[0], targets[0])] + spread + inverse_gates(gather)


def build_pfo(spec: PfoSpec) -> list[Gate]:
    return pfo_gates(spec.controls, spec.target_indices)


def build_fanout(control: int, targets: Sequence[int]) -> list[Gate]:
    return pfo_gates([control], targets)


def _edge_colouring(edges: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Greedy proper colouring of a bipartite edge list; each colour is one CNOT layer."""
    used: dict[int, set[int]] = {}
    rounds: list[list[tuple[int, int]]] = []
    for a, b in edges:
        busy = used.setdefault(a, set()) | used.setdefault(b, set())
        c = 0
        while c in busy:
            c += 1
        used[a].add(c)
        used[b].add(c)
        while len(rounds) <= c:
            rounds.append([])
        rounds[c].append((a, b))
    return rounds


def build_aset(
    S: Sequence[int],
    d: int,
    control_indices: Sequence[int],
    blocks: Sequence[Sequence[int]],
) -> list[Gate]:
    """``A_{S,d}``: block ``i`` ends up holding ``y ^ (x . S[i])`` on each of its ``d`` qubits.

    ``blocks[0]`` is the value register and the remaining blocks must be
    clean ancillas. The masks in ``S`` are read against ``control_indices``.
    Layout: copy ``y`` into the ancilla blocks with per-bit doubling trees
    (depth ``ceil(log2 |S|)``), then for every block conjugate the parity
    CNOTs by the inverse doubling network of that block. Parity CNOTs that
    share an input qubit are spread over layers by a greedy edge colouring,
    so that stage costs roughly ``max(n, |S|)`` layers.
    """
    S = list(S)
    if len(blocks) != len(S) or any(len(b) != d for b in blocks):
        raise ValueError("need one block of d qubits per element of S")
    flat = [q for b in blocks for q in b]
    if len(set(flat)) != len(flat) or set(flat) & set(control_indices):
        raise ValueError("blocks must be disjoint from each other and from the controls")
    gates: list[Gate] = []
    for j in range(d):
        gates.extend(doubling_tree([b[j] for b in blocks]))
    edges = []
    active = []
    for z, block in zip(S, blocks):
        ctrls = mask_qubits(z, control_indices)
        if ctrls:
            active.append(block)
            edges.extend((c, block[0]) for c in ctrls)
    for block in active:
        gates.extend(inverse_gates(doubling_tree(block)))
    for layer in _edge_colouring(edges):
        gates.extend(cnot(c, t) for c, t in layer)
    for block in active:
        gates.extend(doubling_tree(block))
    return gates


def build_qft(qubits: Sequence[int], tag: str = FOURIER) -> list[Gate]:
    """QFT block on ``qubits`` (first qubit = most significant bit of the register)."""
    if not qubits:
        raise ValueError("QFT needs at least one qubit")
    return [Gate(QFT, tuple(qubits), tag=tag)]


def build_qft_dag(qubits: Sequence[int], tag: str = FOURIER) -> list[Gate]:
    if not qubits:
        raise ValueError("QFT needs at least one qubit")
    return [Gate(QFT_DAG, tuple(qubits), tag=tag)]


def phase_gate(q: int, angle: Fraction, tag: str) -> tuple[Gate, Fraction]:
    """``diag(1, e^{i angle pi})`` as an RZ plus the global phase it leaves behind."""
    return rz(q, angle, tag), Fraction(angle) / 2


def build_qft_adder(k: int, qubits: Sequence[int]) -> tuple[list[Gate], Fraction]:
    """Constant adder ``|y> -> |y + k mod 2^d>`` on ``qubits``.

    Returns the gates and the global phase (a multiple of pi) that makes the
    action exact. Qubit ``j`` (1-based, MSB first) gets ``P(2 pi k / 2^j)``.
    """
    d = len(qubits)
    k %= 1 << d
    gates = build_qft(qubits)
    phase = Fraction(0)
    for j, q in enumerate(qubits, start=1):
        angle = Fraction(2 * k, 1 << j) % 2
        if angle:
            g, gp = phase_gate(q, angle, FOURIER)
            gates.append(g)
            phase += gp
    gates += build_qft_dag(qubits)
    return gates, phase
