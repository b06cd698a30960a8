"""Statevector simulation, oracle verification and Fejer-state statistics.

Two simulators share the gate semantics:

* :func:`apply` evolves a dense ``2^N`` statevector (capped, default 24 qubits);
* :class:`SparseBatch` evolves many basis inputs at once as lists of
  ``(input row, basis state, amplitude)`` terms. The oracle circuits only
  branch inside the value register, so the number of terms per input stays
  at most ``2^d`` even when ancillas push the register past 50 qubits.

Conventions: ``RZ(t) = diag(e^{-i t/2}, e^{i t/2})``, ``CP(t)`` multiplies
``|11>`` by ``e^{i t}``, and the QFT maps ``|y>`` to
``2^{-d/2} sum_y' e^{2 pi i y y' / 2^d} |y'>`` with the first block qubit as
most significant bit.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .circuit import CNOT, CP, H, QFT, QFT_DAG, RZ, SWAP, X, Circuit, Gate, decompose_qft

DEFAULT_QUBIT_CAP = 24
SPARSE_QUBIT_LIMIT = 62
AMPLITUDE_TOL = 1e-9
PHASE_TOL = 1e-6
_PRUNE = 1e-14


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def basis(cls, num_qubits: int, index: int = 0) -> "StateVector":
        amps = np.zeros(1 << num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@lru_cache(maxsize=64)
def qft_matrix(k: int, inverse: bool = False) -> np.ndarray:
    dim = 1 << k
    idx = np.arange(dim)
    sign = -1 if inverse else 1
    mat = np.exp(sign * 2j * np.pi * np.outer(idx, idx) / dim) / math.sqrt(dim)
    mat.setflags(write=False)
    return mat


def _angle(g: Gate) -> float:
    return float(g.angle) * math.pi


def _apply_dense_gate(psi: np.ndarray, g: Gate, n: int) -> np.ndarray:
    t = psi.reshape([2] * n)
    if g.kind == X:
        return np.flip(t, axis=g.qubits[0]).reshape(-1)
    if g.kind == H:
        q = g.qubits[0]
        a0 = np.take(t, 0, axis=q)
        a1 = np.take(t, 1, axis=q)
        return np.stack([(a0 + a1), (a0 - a1)], axis=q).reshape(-1) / math.sqrt(2)
    if g.kind == RZ:
        q = g.qubits[0]
        th = _angle(g)
        shape = [1] * n
        shape[q] = 2
        return (t * np.array([cmath.exp(-0.5j * th), cmath.exp(0.5j * th)]).reshape(shape)).reshape(-1)
    if g.kind == CNOT:
        c, tq = g.qubits
        out = t.copy()
        idx = [slice(None)] * n
        idx[c] = 1
        sub = out[tuple(idx)]
        axis = tq - (1 if tq > c else 0)
        out[tuple(idx)] = np.flip(sub, axis=axis)
        return out.reshape(-1)
    if g.kind == CP:
        a, b = g.qubits
        out = t.copy()
        idx = [slice(None)] * n
        idx[a] = 1
        idx[b] = 1
        out[tuple(idx)] *= cmath.exp(1j * _angle(g))
        return out.reshape(-1)
    if g.kind == SWAP:
        a, b = g.qubits
        return np.swapaxes(t, a, b).reshape(-1)
    if g.kind in (QFT, QFT_DAG):
        qs = list(g.qubits)
        k = len(qs)
        mat = qft_matrix(k, g.kind == QFT_DAG).reshape([2] * (2 * k))
        moved = np.tensordot(mat, t, axes=(list(range(k, 2 * k)), qs))
        return np.moveaxis(moved, list(range(k)), qs).reshape(-1)
    raise ValueError(f"unsupported gate {g.kind}")


def apply(
    circuit: Circuit,
    state: StateVector,
    qft: str = "block",
    cap: int = DEFAULT_QUBIT_CAP,
) -> StateVector:
    """Apply ``circuit`` to a dense state. ``qft`` is ``"block"`` or ``"decomposed"``."""
    if state.num_qubits != circuit.num_qubits or state.amplitudes.shape != (1 << state.num_qubits,):
        raise ValueError("state and circuit sizes differ")
    if circuit.num_qubits > cap:
        raise ValueError(f"{circuit.num_qubits} qubits exceeds the dense cap of {cap}")
    if qft == "decomposed":
        circuit = decompose_qft(circuit)
    elif qft != "block":
        raise ValueError("qft must be 'block' or 'decomposed'")
    psi = np.asarray(state.amplitudes, dtype=complex)
    for g in circuit.gates:
        psi = _apply_dense_gate(psi, g, circuit.num_qubits)
    if circuit.global_phase:
        psi = psi * cmath.exp(1j * math.pi * float(circuit.global_phase))
    return StateVector(circuit.num_qubits, psi)


def unitary(circuit: Circuit, qft: str = "block", cap: int = 12) -> np.ndarray:
    """Dense unitary, column ``i`` = image of basis state ``i``."""
    n = circuit.num_qubits
    if n > cap:
        raise ValueError(f"{n} qubits exceeds the unitary cap of {cap}")
    cols = [apply(circuit, StateVector.basis(n, i), qft, cap).amplitudes for i in range(1 << n)]
    return np.stack(cols, axis=1)


class SparseBatch:
    """Simultaneous simulation of several basis inputs as sparse term lists."""

    def __init__(self, num_qubits: int, inputs: Sequence[int]):
        if num_qubits > SPARSE_QUBIT_LIMIT:
            raise ValueError(f"sparse simulator supports at most {SPARSE_QUBIT_LIMIT} qubits")
        self.num_qubits = num_qubits
        self.rows = np.arange(len(inputs), dtype=np.int64)
        self.basis = np.asarray(inputs, dtype=np.int64)
        self.amp = np.ones(len(inputs), dtype=complex)

    def _shift(self, q: int) -> int:
        return self.num_qubits - 1 - q

    def _bit(self, q: int) -> np.ndarray:
        return (self.basis >> self._shift(q)) & 1

    def _merge(self):
        order = np.lexsort((self.basis, self.rows))
        rows, basis, amp = self.rows[order], self.basis[order], self.amp[order]
        if len(rows):
            start = np.ones(len(rows), dtype=bool)
            start[1:] = (rows[1:] != rows[:-1]) | (basis[1:] != basis[:-1])
            idx = np.flatnonzero(start)
            amp = np.add.reduceat(amp, idx)
            rows, basis = rows[idx], basis[idx]
        keep = np.abs(amp) > _PRUNE
        self.rows, self.basis, self.amp = rows[keep], basis[keep], amp[keep]

    def apply_gate(self, g: Gate):
        if g.kind == X:
            self.basis ^= np.int64(1) << self._shift(g.qubits[0])
        elif g.kind == CNOT:
            c, t = g.qubits
            self.basis ^= self._bit(c) << self._shift(t)
        elif g.kind == SWAP:
            a, b = g.qubits
            diff = self._bit(a) ^ self._bit(b)
            self.basis ^= (diff << self._shift(a)) | (diff << self._shift(b))
        elif g.kind == RZ:
            th = _angle(g)
            self.amp = self.amp * np.where(self._bit(g.qubits[0]) == 1, cmath.exp(0.5j * th), cmath.exp(-0.5j * th))
        elif g.kind == CP:
            a, b = g.qubits
            self.amp = self.amp * np.where((self._bit(a) & self._bit(b)) == 1, cmath.exp(1j * _angle(g)), 1.0)
        elif g.kind == H:
            self._dense_block([g.qubits[0]], np.array([[1, 1], [1, -1]]) / math.sqrt(2))
        elif g.kind in (QFT, QFT_DAG):
            self._dense_block(list(g.qubits), qft_matrix(len(g.qubits), g.kind == QFT_DAG))
        else:
            raise ValueError(f"unsupported gate {g.kind}")

    def _dense_block(self, qubits: list[int], mat: np.ndarray):
        k = len(qubits)
        shifts = [self._shift(q) for q in qubits]
        clear = np.int64(0)
        for s in shifts:
            clear |= np.int64(1) << s
        value = np.zeros_like(self.basis)
        for s in shifts:
            value = (value << 1) | ((self.basis >> s) & 1)
        base = self.basis & ~clear
        dim = 1 << k
        out_vals = np.arange(dim, dtype=np.int64)
        placed = np.zeros(dim, dtype=np.int64)
        for pos, s in enumerate(shifts):
            placed |= ((out_vals >> (k - 1 - pos)) & 1) << s
        self.basis = (base[:, None] | placed[None, :]).reshape(-1)
        self.amp = (self.amp[:, None] * mat[:, value].T).reshape(-1)
        self.rows = np.repeat(self.rows, dim)
        self._merge()

    def run(self, circuit: Circuit) -> "SparseBatch":
        if circuit.num_qubits != self.num_qubits:
            raise ValueError("circuit size mismatch")
        for g in circuit.gates:
            self.apply_gate(g)
        if circuit.global_phase:
            self.amp = self.amp * cmath.exp(1j * math.pi * float(circuit.global_phase))
        self._merge()
        return self

    def columns(self, num_inputs: int) -> list[dict[int, complex]]:
        cols: list[dict[int, complex]] = [dict() for _ in range(num_inputs)]
        for r, b, a in zip(self.rows.tolist(), self.basis.tolist(), self.amp.tolist()):
            cols[r][b] = a
        return cols


def simulate_inputs(circuit: Circuit, inputs: Sequence[int]) -> list[dict[int, complex]]:
    """Images of the given basis inputs as ``{basis index: amplitude}`` maps."""
    return SparseBatch(circuit.num_qubits, inputs).run(circuit).columns(len(inputs))


# ---------------------------------------------------------------------------
# oracle verification


@dataclass
class Verdict:
    passed: bool
    max_amplitude_deviation: float
    max_phase_deviation: float
    checked: int
    failures: list[tuple[int, int]]
    note: str = ""


def _register_inputs(n: int, d: int, total: int, ys: Sequence[int]) -> list[tuple[int, int, int]]:
    out = []
    for x in range(1 << n):
        for y in ys:
            out.append((x, y, (x << (total - n)) | (y << (total - n - d))))
    return out


def verify_oracle(oc, table, amplitude_tol: float = AMPLITUDE_TOL, phase_tol: float = PHASE_TOL) -> Verdict:
    """Check ``|x>|y>|0> -> |x>|y + f(x) mod 2^d>|0>`` on every basis input.

    Projective circuits are held to a phase that depends on ``x`` only; circuits
    built under the ``y = 0`` assumption are only checked on ``y = 0``.
    """
    circuit = oc.circuit
    n, d = table.n, table.d
    if not table.is_integral:
        return Verdict(False, math.inf, math.inf, 0, [], "non-integer table: use fejer_check")
    req = oc.request
    ys = [0] if req.assume_y_zero else range(1 << d)
    cases = _register_inputs(n, d, circuit.num_qubits, ys)
    cols = simulate_inputs(circuit, [c[2] for c in cases])
    shift = circuit.num_qubits - n - d
    max_amp = 0.0
    max_phase = 0.0
    failures = []
    ref_phase: dict[int, float] = {}
    for (x, y, _), col in zip(cases, cols):
        target = (y + int(table[x])) % (1 << d)
        expected = (x << (circuit.num_qubits - n)) | (target << shift)
        a = col.get(expected, 0j)
        amp_dev = 1.0 - abs(a)
        if abs(a) > 0.5:
            ph = cmath.phase(a)
            if req.projective:
                ref = ref_phase.setdefault(x, ph)
                ph = ph - ref
            phase_dev = abs(math.remainder(ph, 2 * math.pi))
        else:
            phase_dev = math.pi
        max_amp = max(max_amp, amp_dev)
        max_phase = max(max_phase, phase_dev)
        if amp_dev > amplitude_tol or phase_dev > phase_tol:
            failures.append((x, y))
    return Verdict(not failures, max_amp, max_phase, len(cases), failures)


# ---------------------------------------------------------------------------
# Fejer states


def fejer_amplitude(t: float, y: int, d: int) -> float:
    """Dirichlet kernel ``Phi_d(t - y) = sinc(pi s) / sinc(pi s / 2^d)``.

    At ``s = m 2^d`` the removable singularity evaluates to ``(-1)^m``; the
    kernel is real because the sum is centred on ``(2^d - 1)/2``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    s = float(t) - y
    dim = 1 << d
    m = round(s / dim)
    if abs(s - m * dim) < 1e-12:
        return -1.0 if m % 2 else 1.0
    if abs(s - round(s)) < 1e-12:
        return 0.0  # other integer offsets are exact zeros of the kernel
    return math.sin(math.pi * s) / (dim * math.sin(math.pi * s / dim))


def fejer_probabilities(t: float, d: int) -> np.ndarray:
    return np.array([fejer_amplitude(t, y, d) ** 2 for y in range(1 << d)])


@dataclass
class FejerProfile:
    t: float
    probabilities: np.ndarray
    floor_ceil_mass: float
    max_deviation: float = 0.0


def floor_ceil_mass(probabilities: Sequence[float], t: float, d: int) -> float:
    outcomes = {math.floor(t) % (1 << d), math.ceil(t) % (1 << d)}
    return float(sum(probabilities[y] for y in outcomes))


def fejer_profile(t: float, d: int) -> FejerProfile:
    probs = fejer_probabilities(t, d)
    return FejerProfile(float(t), probs, floor_ceil_mass(probs, t, d))


def fejer_check(oc, table, ys: Optional[Sequence[int]] = None) -> dict[tuple[int, int], FejerProfile]:
    """Simulated value-register distribution for every ``(x, y)`` against ``|Phi_d(y + f(x) - y')|^2``."""
    circuit = oc.circuit
    n, d = table.n, table.d
    if ys is None:
        ys = [0] if oc.request.assume_y_zero else range(1 << d)
    cases = _register_inputs(n, d, circuit.num_qubits, ys)
    cols = simulate_inputs(circuit, [c[2] for c in cases])
    shift = circuit.num_qubits - n - d
    profiles = {}
    for (x, y, _), col in zip(cases, cols):
        probs = np.zeros(1 << d)
        for b, a in col.items():
            probs[(b >> shift) & ((1 << d) - 1)] += abs(a) ** 2
        t = y + float(table[x])
        expected = fejer_probabilities(t, d)
        profiles[(x, y)] = FejerProfile(
            t, probs, floor_ceil_mass(probs, t, d), float(np.max(np.abs(probs - expected)))
        )
    return profiles
