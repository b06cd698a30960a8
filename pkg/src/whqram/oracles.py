"""Builders for the four Walsh-Hadamard QRAM oracle designs.

Every design follows the same skeleton: move the value register to the
Fourier basis, imprint ``exp(2 pi i f(x) (y' - c_d) / 2^d)`` with
``c_d = (2^d - 1) / 2`` using RZ rotations on qubits that hold
``y'_j XOR (x . z)``, and return with the inverse QFT. The designs differ
only in how the parities ``x . z`` reach the value qubits.

Phase handling (``OracleRequest.corrections``):

``"exact"`` (default)
    The leftover factor ``exp(-2 pi i f(x) c_d / 2^d)`` depends on ``x``
    only, so it is cancelled by a diagonal phase polynomial on the input
    register (one RZ per nonzero, non-constant coefficient plus a global
    phase). The oracle is then exact, global phase included.
``"value-register"``
    RZ corrections on the value register before the QFT and after the
    inverse QFT. These remove the ``y`` dependence but leave a factor
    ``(-1)^m`` where ``y + f(x) = (y + f(x) mod 2^d) + m 2^d``, i.e. a sign
    on every input whose sum wraps around. For real-valued tables this mode
    produces the Fejer state with the real Dirichlet kernel amplitudes.

``projective=True`` drops all corrections; the output then carries the phase
``exp(-2 pi i f(x) c_d / 2^d)``, which depends on ``x`` only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .circuit import (
    FOURIER,
    PHASE_CORRECTION,
    SPECTRUM_ROTATION,
    Circuit,
    Gate,
    ResourceReport,
    depth_metrics,
    h,
    inverse_gates,
    rz,
)
from .gadgets import _gather_tree, build_aset, build_qft, build_qft_dag, mask_qubits, pfo_gates
from .graycode import bounded_gray, standard_gray, support_gray_order
from .spectrum import Spectrum, degree_profile, popcount

DESIGNS = ("O1", "O2", "O3", "O4")


class OracleError(ValueError):
    code = "oracle-error"


class Oracle4Ineligible(OracleError):
    code = "oracle4-ineligible"


class AncillaParameterError(OracleError):
    code = "l-out-of-range"


@dataclass(frozen=True)
class OracleRequest:
    spectrum: Spectrum
    design: str
    l: int = 0
    projective: bool = False
    assume_y_zero: bool = False
    corrections: Literal["exact", "value-register"] = "exact"
    min_angle: Optional[Fraction] = None  # drop spectrum rotations with |angle| below this (units of pi)

    def __post_init__(self):
        design = self.design if isinstance(self.design, str) else f"O{self.design}"
        design = design.upper()
        if not design.startswith("O"):
            design = "O" + design
        if design not in DESIGNS:
            raise OracleError(f"unknown design {self.design!r}")
        object.__setattr__(self, "design", design)
        if self.corrections not in ("exact", "value-register"):
            raise OracleError("corrections must be 'exact' or 'value-register'")
        if design == "O1" and not 0 <= self.l <= self.spectrum.n:
            raise AncillaParameterError(f"l={self.l} outside [0, {self.spectrum.n}]")


@dataclass(frozen=True)
class OracleCircuit:
    circuit: Circuit
    report: ResourceReport
    layout: dict = field(default_factory=dict)
    request: Optional[OracleRequest] = None


class _Builder:
    def __init__(self, req: OracleRequest, ancillas: int):
        self.req = req
        spec = req.spectrum
        self.n, self.d = spec.n, spec.d
        self.wh = spec.coefficients
        self.inputs = list(range(self.n))
        self.value = list(range(self.n, self.n + self.d))
        self.ancillas = list(range(self.n + self.d, self.n + self.d + ancillas))
        self.gates: list[Gate] = []
        self.global_phase = Fraction(0)

    # value-register rotations -------------------------------------------------

    def rotations(self, qubits: Sequence[int], coeff: Fraction):
        """RZ(2 pi coeff / 2^(n+j)) on the j-th qubit of a d-qubit block."""
        if coeff == 0:
            return
        for j, q in enumerate(qubits, start=1):
            angle = Fraction(2 * coeff, 1 << (self.n + j))
            if self.req.min_angle is not None:
                reduced = (angle + 2) % 4 - 2
                if abs(reduced) < self.req.min_angle:
                    continue
            self.gates.append(rz(q, angle, SPECTRUM_ROTATION))

    def pfo(self, mask: int, controls: Sequence[int], targets: Sequence[int]):
        self.gates.extend(pfo_gates(mask_qubits(mask, controls), targets))

    # corrections and Fourier stages -----------------------------------------

    def _value_corrections(self, sign: int):
        d = self.d
        for j, q in enumerate(self.value, start=1):
            angle = Fraction(sign * (1 - (1 << d)), 1 << j)
            self.gates.append(rz(q, angle, PHASE_CORRECTION))

    def _input_phase(self):
        n, d = self.n, self.d
        scale = Fraction((1 << d) - 1, 1 << (n + d))
        for z in self.req.spectrum.support:
            coeff = self.wh[z]
            if z == 0:
                self.global_phase += scale * coeff
                continue
            ctrls = mask_qubits(z, self.inputs)
            gather = _gather_tree(ctrls)
            self.gates.extend(gather)
            self.gates.append(rz(ctrls[0], -2 * scale * coeff, PHASE_CORRECTION))
            self.gates.extend(inverse_gates(gather))

    def prologue(self):
        req = self.req
        if not req.projective:
            if req.corrections == "exact":
                self._input_phase()
            elif not req.assume_y_zero:
                self._value_corrections(+1)
        if req.assume_y_zero:
            self.gates.extend(h(q, FOURIER) for q in self.value)
        else:
            self.gates.extend(build_qft(self.value))

    def epilogue(self):
        self.gates.extend(build_qft_dag(self.value))
        if not self.req.projective and self.req.corrections == "value-register":
            self._value_corrections(-1)

    def finish(self, **layout) -> OracleCircuit:
        circuit = Circuit.with_layout(self.n, self.d, len(self.ancillas), self.gates, self.global_phase)
        layout = {"input": self.inputs, "value": self.value, "ancilla": self.ancillas, **layout}
        return OracleCircuit(circuit, depth_metrics(circuit), layout, self.req)


def _blocks(b: _Builder, count: int) -> list[list[int]]:
    blocks = [b.value]
    for i in range(1, count):
        blocks.append(b.ancillas[(i - 1) * b.d : i * b.d])
    return blocks


def build_oracle1(req: OracleRequest) -> OracleCircuit:
    """Tuneable design: ``d (2^l - 1)`` ancillas, ``2^(n-l)`` rotation rounds."""
    if req.design != "O1":
        raise OracleError("request is not for O1")
    n, d, l = req.spectrum.n, req.spectrum.d, req.l
    b = _Builder(req, d * ((1 << l) - 1))
    rest = n - l
    heads = [z << rest for z in range(1 << l)]
    blocks = _blocks(b, 1 << l)
    targets = [q for blk in blocks for q in blk]
    code = standard_gray(rest).words

    b.prologue()
    aset = build_aset(heads, d, b.inputs, blocks)
    b.gates.extend(aset)
    for head, blk in zip(heads, blocks):
        b.rotations(blk, b.wh[head | code[0]])
    # code[0] = 0 was handled above; each later round moves one Gray step
    for k in range(1, len(code)):
        b.pfo(code[k - 1] ^ code[k], b.inputs[l:], targets)
        for head, blk in zip(heads, blocks):
            b.rotations(blk, b.wh[head | code[k]])
    b.pfo(code[-1] ^ code[0], b.inputs[l:], targets)
    b.gates.extend(inverse_gates(aset))
    b.epilogue()
    return b.finish(l=l, gray_code=list(code))


def build_oracle2(req: OracleRequest) -> OracleCircuit:
    """Maximal-ancilla design: one block per support element, one rotation layer."""
    if req.design != "O2":
        raise OracleError("request is not for O2")
    d = req.spectrum.d
    support = list(req.spectrum.support)
    b = _Builder(req, d * max(len(support) - 1, 0))
    b.prologue()
    if support:
        blocks = _blocks(b, len(support))
        aset = build_aset(support, d, b.inputs, blocks)
        b.gates.extend(aset)
        for z, blk in zip(support, blocks):
            b.rotations(blk, b.wh[z])
        b.gates.extend(inverse_gates(aset))
    b.epilogue()
    return b.finish(support=support)


def build_oracle3(req: OracleRequest) -> OracleCircuit:
    """Ancilla-free design: support visited in reflected-Gray order."""
    if req.design != "O3":
        raise OracleError("request is not for O3")
    b = _Builder(req, 0)
    support = req.spectrum.support
    order = support_gray_order(support, b.n) if support else []
    b.prologue()
    prev = 0
    for z in order:
        b.pfo(prev ^ z, b.inputs, b.value)
        b.rotations(b.value, b.wh[z])
        prev = z
    b.pfo(prev, b.inputs, b.value)
    b.epilogue()
    return b.finish(order=order)


def oracle4_order(spec: Spectrum) -> tuple[int, list[tuple[int, bool, bool]]]:
    """``k`` and the visited low-weight words with flags (rotate z, rotate NOT z)."""
    prof = degree_profile(spec)
    if prof.min_low_k is None:
        raise Oracle4Ineligible(
            f"support has weights {sorted(prof.degrees)} strictly inside every (k, n-k)"
        )
    n, k = spec.n, prof.min_low_k
    words = [0] if k == 0 else list(bounded_gray(n, k).words)
    full = (1 << n) - 1
    visits = []
    for z in words:
        hi = full ^ z
        low = spec[z] != 0
        high = popcount(hi) > k and spec[hi] != 0
        if low or high:
            visits.append((z, low, high))
    return k, visits


def build_oracle4(req: OracleRequest) -> OracleCircuit:
    """One-ancilla design for spectra without middle-weight components."""
    if req.design != "O4":
        raise OracleError("request is not for O4")
    k, visits = oracle4_order(req.spectrum)
    b = _Builder(req, 1)
    anc = b.ancillas
    full = (1 << b.n) - 1
    b.prologue()
    b.pfo(full, b.inputs, anc)
    prev = 0
    for z, low, high in visits:
        b.pfo(prev ^ z, b.inputs, b.value)
        prev = z
        if low:
            b.rotations(b.value, b.wh[z])
        if high:
            # value qubits now hold y' ^ (x . z) ^ (x . 1_n) = y' ^ (x . NOT z)
            b.pfo(1, anc, b.value)
            b.rotations(b.value, b.wh[full ^ z])
            b.pfo(1, anc, b.value)
    b.pfo(prev, b.inputs, b.value)
    b.pfo(full, b.inputs, anc)
    b.epilogue()
    return b.finish(k=k, order=[v[0] for v in visits])


_BUILDERS = {"O1": build_oracle1, "O2": build_oracle2, "O3": build_oracle3, "O4": build_oracle4}


def build_oracle(req: OracleRequest) -> OracleCircuit:
    return _BUILDERS[req.design](req)


def expected_ancillas(req: OracleRequest) -> int:
    """Ancilla count promised by each design's register signature."""
    d, w = req.spectrum.d, req.spectrum.sparsity
    return {
        "O1": d * ((1 << req.l) - 1),
        "O2": d * max(w - 1, 0),
        "O3": 0,
        "O4": 1,
    }[req.design]
