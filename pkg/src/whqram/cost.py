"""Clifford+T cost model for the oracle designs.

All outputs are in "model units": the asymptotic expressions evaluated with
every hidden constant set to a configurable multiplier (default 1). Error
budgets are kept as exact fractions.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, float, str, Fraction]


def exact(value: Number) -> Fraction:
    """Exact fraction; floats go through their shortest decimal repr (0.03 -> 3/100)."""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def log2(value: Number) -> float:
    """``log2`` that is exact on powers of two, including fractional ones."""
    q = exact(value)
    if q <= 0:
        raise ValueError("log2 of a nonpositive number")
    num, den = q.numerator, q.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return float(num.bit_length() - den.bit_length())
    return math.log2(num) - math.log2(den)


@dataclass(frozen=True)
class CostConstants:
    oracle1: float = 1.0
    oracle2: float = 1.0
    oracle3: float = 1.0
    oracle4: float = 1.0
    rz_synthesis: float = 1.0
    qft: float = 1.0


@dataclass(frozen=True)
class CostInputs:
    n: int
    d: int
    W_f: int
    epsilon: Fraction
    l: int = 0
    constants: CostConstants = field(default_factory=CostConstants)

    def __post_init__(self):
        object.__setattr__(self, "epsilon", exact(self.epsilon))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if min(self.n, self.d, self.W_f, self.l) < 0:
            raise ValueError("counts must be nonnegative")


@dataclass(frozen=True)
class CostReport:
    design: str
    epsilon: Fraction
    epsilon_0: Fraction
    epsilon_qft: Fraction
    rotations_billed: int
    rz_synthesis_depth_per_gate: float
    qft_t_count: float
    depth_before: float
    depth_after: float
    note: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("epsilon", "epsilon_0", "epsilon_qft"):
            out[key] = str(out[key])
        return out

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "units": "model units", **self.to_dict()}, sort_keys=True, indent=2)


def epsilon_budget(inputs: CostInputs) -> tuple[Fraction, Fraction]:
    """Per-rotation budget ``eps / (3 d W_f)`` and per-QFT budget ``eps / 3``."""
    if inputs.W_f < 1 or inputs.d < 1:
        raise ValueError("need W_f >= 1 and d >= 1")
    eps = inputs.epsilon
    return eps / (3 * inputs.d * inputs.W_f), eps / 3


def clifford_t_depth(inputs: CostInputs, design: str) -> CostReport:
    design = design.upper() if design.upper().startswith("O") else f"O{design}"
    n, d, w, l = inputs.n, inputs.d, inputs.W_f, inputs.l
    c = inputs.constants
    eps = inputs.epsilon
    eps0, eps_qft = epsilon_budget(inputs)
    note = ""
    if design == "O1":
        rounds = 2 ** (n - l)
        before = c.oracle1 * (l + log2(d)) * rounds
        if l == n:
            after = c.oracle1 * (n + log2(d / eps))
            note = "l = n: depth n + log2(d/eps)"
        else:
            after = c.oracle1 * (log2(w) + l + log2(d / eps)) * rounds
    elif design == "O2":
        before = c.oracle2 * (log2(w) + log2(d))
        after = c.oracle2 * (log2(w) + log2(d / eps))
    elif design == "O3":
        m = max(n, d)
        before = c.oracle3 * log2(m) * w
        after = c.oracle3 * (log2(w) + log2(Fraction(m) / eps)) * w
    elif design == "O4":
        before = c.oracle4 * log2(d) * w
        after = c.oracle4 * (log2(w) + log2(d / eps)) * w
    else:
        raise ValueError(f"unknown design {design!r}")
    return CostReport(
        design=design,
        epsilon=eps,
        epsilon_0=eps0,
        epsilon_qft=eps_qft,
        rotations_billed=d * w,
        rz_synthesis_depth_per_gate=c.rz_synthesis * log2(1 / eps0),
        qft_t_count=c.qft * d * log2(d / eps_qft),
        depth_before=before,
        depth_after=after,
        note=note,
    )


def grover_epsilon(n: int, beta: Number) -> Fraction | float:
    """``2^{-(1/2 + beta) n}``; with this choice ``log2(W_f)`` may be replaced by ``n``.

    Exact when the exponent is an integer.
    """
    b = exact(beta)
    if b <= 0:
        raise ValueError("beta must be positive")
    exponent = (Fraction(1, 2) + b) * n
    if exponent.denominator == 1:
        return Fraction(1, 2 ** int(exponent))
    return 2.0 ** (-float(exponent))


def cost_inputs_for(spectrum, epsilon: Number, l: int = 0, constants: Optional[CostConstants] = None) -> CostInputs:
    return CostInputs(
        spectrum.n, spectrum.d, spectrum.sparsity, exact(epsilon), l, constants or CostConstants()
    )
