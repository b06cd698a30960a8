"""Exact Walsh-Hadamard analysis of function tables.

Bitstrings are identified with integers MSB-first: ``x = (x_1, ..., x_n)``
maps to ``sum_a x_a 2^(n-a)``, so bit 1 is the most significant bit of the
index. Every transform here works on dyadic rationals (``Fraction`` with a
power-of-two denominator) and never touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

Mode = Literal["binary", "real"]


def popcount(x: int) -> int:
    return bin(x).count("1")


def parity(x: int) -> int:
    return popcount(x) & 1


def is_dyadic(q: Fraction) -> bool:
    den = q.denominator
    return den & (den - 1) == 0


def to_dyadic(value) -> Fraction:
    """Parse ``value`` (int, Fraction, str like ``"-5/4"``, or float) as a dyadic rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not table values")
    if isinstance(value, float):
        q = Fraction(value)  # floats are exact binary fractions
    elif isinstance(value, str):
        q = Fraction(value.strip().replace("−", "-"))
    else:
        q = Fraction(value)
    if not is_dyadic(q):
        raise ValueError(f"{value!r} is not a dyadic rational")
    return q


@dataclass(frozen=True)
class FunctionTable:
    """Classical data ``f`` as a table of ``2^n`` exact values."""

    n: int
    d: int
    values: tuple[Fraction, ...]
    mode: Mode = "binary"

    def __post_init__(self):
        if self.n < 0 or self.d < 1:
            raise ValueError("need n >= 0 and d >= 1")
        vals = tuple(to_dyadic(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(vals)}")
        if self.mode == "binary":
            top = (1 << self.d) - 1
            for v in vals:
                if v.denominator != 1 or not 0 <= v.numerator <= top:
                    raise ValueError(f"binary-mode value {v} outside [0, {top}]")
        elif self.mode != "real":
            raise ValueError(f"unknown mode {self.mode!r}")

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def to_json(self) -> dict:
        def enc(v: Fraction):
            return v.numerator if v.denominator == 1 else str(v)

        return {"n": self.n, "d": self.d, "mode": self.mode, "values": [enc(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj: dict) -> "FunctionTable":
        try:
            return cls(int(obj["n"]), int(obj["d"]), tuple(obj["values"]), obj.get("mode", "binary"))
        except KeyError as exc:
            raise ValueError(f"missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class Spectrum:
    """Unnormalised Walsh-Hadamard transform ``wh(f)(z) = sum_x (-1)^(x.z) f(x)``."""

    n: int
    d: int
    coefficients: tuple[Fraction, ...]
    mode: Mode = "binary"
    support: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if len(coeffs) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "support", tuple(z for z, c in enumerate(coeffs) if c != 0))

    @property
    def sparsity(self) -> int:
        """``W_f``, the number of nonzero coefficients."""
        return len(self.support)

    def __getitem__(self, z: int) -> Fraction:
        return self.coefficients[z]


@dataclass(frozen=True)
class DegreeProfile:
    degrees: frozenset[int]
    min_low_k: Optional[int]

    @property
    def oracle4_eligible(self) -> bool:
        return self.min_low_k is not None


def _butterfly(ints: list[int]) -> list[int]:
    size = len(ints)
    bound = max((abs(v) for v in ints), default=0) * max(size, 1)
    if size > 1 and bound < 1 << 62:
        # int64 is exact here; reshape trick does one butterfly stage per pass
        out = np.array(ints, dtype=np.int64)
        h = 1
        while h < size:
            view = out.reshape(-1, 2, h)
            a, b = view[:, 0, :].copy(), view[:, 1, :].copy()
            view[:, 0, :] = a + b
            view[:, 1, :] = a - b
            h *= 2
        return out.tolist()
    out = list(ints)
    h = 1
    while h < size:
        for i in range(0, size, 2 * h):
            for j in range(i, i + h):
                a, b = out[j], out[j + h]
                out[j], out[j + h] = a + b, a - b
        h *= 2
    return out


def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = max((v.denominator for v in values), default=1)  # dyadic, so the max is a common multiple
    return [v.numerator * (den // v.denominator) for v in values], den


def fwht(table: FunctionTable) -> Spectrum:
    """Exact fast Walsh-Hadamard transform of ``table``."""
    ints, den = _scaled(table.values)
    coeffs = [Fraction(c) if den == 1 else Fraction(c, den) for c in _butterfly(ints)]
    return Spectrum(table.n, table.d, tuple(coeffs), table.mode)


def ifwht(spec: Spectrum) -> FunctionTable:
    """Inverse transform; divides by ``2^n`` exactly."""
    ints, den = _scaled(spec.coefficients)
    scale = den << spec.n
    values = tuple(Fraction(v, scale) for v in _butterfly(ints))
    mode: Mode = spec.mode
    if mode == "binary" and not all(
        v.denominator == 1 and 0 <= v.numerator < (1 << spec.d) for v in values
    ):
        mode = "real"
    return FunctionTable(spec.n, spec.d, values, mode)


def degree_profile(spec: Spectrum) -> DegreeProfile:
    """Hamming weights in the support and the smallest admissible Oracle-4 ``k``.

    ``min_low_k`` is the least ``k < n/2`` (``k = 0`` always allowed) such
    that no support element has weight strictly between ``k`` and ``n - k``;
    ``None`` if there is none. ``k = n/2`` is excluded because its interval is
    empty, so a weight-``n/2`` component blocks every admissible ``k``.
    """
    degrees = frozenset(popcount(z) for z in spec.support)
    n = spec.n
    for k in range(max((n + 1) // 2, 1)):
        if not any(k < w < n - k for w in degrees):
            return DegreeProfile(degrees, k)
    return DegreeProfile(degrees, None)


@dataclass(frozen=True)
class Truncation:
    """Result of truncating a sparse approximation of ``(-1)^f``."""

    g: FunctionTable
    d0: int
    d_f: int
    words: tuple[int, ...]  # two's complement encoding of g(x) * 2^d0 on d_f bits

    def sign_bits(self) -> tuple[int, ...]:
        return tuple(w >> (self.d_f - 1) for w in self.words)


def truncate_approximation(approx: FunctionTable) -> Truncation:
    """Round the normalised spectrum of ``approx`` to ``d0 = ceil(log2(12 W))`` fractional bits.

    ``approx`` is a real-mode table with ``|approx(x) - (-1)^f(x)| < 1/4``.
    The returned ``g`` is the inverse transform of the truncated spectrum,
    and its two's complement encoding on ``2 + d0`` bits has sign bit ``f(x)``.
    Coefficients are truncated toward zero so that no new support appears.
    """
    spec = fwht(approx)
    w = spec.sparsity
    if w == 0:
        raise ValueError("approximation is identically zero")
    d0 = (12 * w - 1).bit_length()  # ceil(log2(12 W)), exact
    n = approx.n
    unit = 1 << d0
    truncated = []
    for c in spec.coefficients:
        normalised = c / (1 << n)
        truncated.append(Fraction(math.trunc(normalised * unit), unit) * (1 << n))
    g = ifwht(Spectrum(n, 2 + d0, tuple(truncated), "real"))
    d_f = 2 + d0
    words = []
    for v in g.values:
        scaled = v * unit
        if scaled.denominator != 1:
            raise AssertionError("truncated spectrum must reconstruct on d0 fractional bits")
        k = int(scaled)
        if not -(1 << (d_f - 1)) <= k < (1 << (d_f - 1)):
            raise ValueError(f"g value {v} does not fit in {d_f}-bit fixed point")
        words.append(k % (1 << d_f))
    return Truncation(FunctionTable(n, d_f, g.values, "real"), d0, d_f, tuple(words))


def table_from_values(values: Iterable, d: int, mode: Mode = "binary") -> FunctionTable:
    vals = tuple(values)
    n = len(vals).bit_length() - 1
    if 1 << n != len(vals):
        raise ValueError("table length must be a power of two")
    return FunctionTable(n, d, vals, mode)
