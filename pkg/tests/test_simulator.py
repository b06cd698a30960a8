import math
import random
from fractions import Fraction

import numpy as np
import pytest

from whqram.circuit import Circuit, cnot, h, rz
from whqram.oracles import OracleRequest, build_oracle
from whqram.simulator import (
    SparseBatch,
    StateVector,
    apply,
    fejer_amplitude,
    fejer_check,
    fejer_profile,
    simulate_inputs,
    unitary,
    verify_oracle,
)
from whqram.spectrum import FunctionTable, fwht


def random_circuit(rng, n, count):
    gates = []
    for _ in range(count):
        kind = rng.choice("hcr")
        if kind == "h":
            gates.append(h(rng.randrange(n)))
        elif kind == "c":
            a, b = rng.sample(range(n), 2)
            gates.append(cnot(a, b))
        else:
            gates.append(rz(rng.randrange(n), Fraction(rng.randint(-16, 16), 8)))
    return Circuit(n, ("input",) * n, tuple(gates), Fraction(rng.randint(0, 7), 4))


def test_dense_and_sparse_agree_on_random_circuits():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 6)
        c = random_circuit(rng, n, 30)
        inputs = list(range(1 << n))
        cols = simulate_inputs(c, inputs)
        u = unitary(c)
        for i, col in zip(inputs, cols):
            vec = np.zeros(1 << n, dtype=complex)
            for b, a in col.items():
                vec[b] = a
            assert np.allclose(vec, u[:, i], atol=1e-12)


def test_unitary_is_unitary():
    c = random_circuit(random.Random(8), 4, 40)
    u = unitary(c)
    assert np.allclose(u.conj().T @ u, np.eye(16), atol=1e-12)


def test_bell_state():
    c = Circuit(2, ("input", "input"), (h(0), cnot(0, 1)))
    out = apply(c, StateVector.basis(2, 0))
    assert np.allclose(out.amplitudes, [2 ** -0.5, 0, 0, 2 ** -0.5])
    assert out.norm() == pytest.approx(1.0)


def test_dense_cap():
    c = Circuit(3, ("input",) * 3)
    with pytest.raises(ValueError):
        apply(c, StateVector.basis(3), cap=2)


def test_sparse_batch_handles_wide_registers():
    n = 40
    c = Circuit(n, ("input",) * n, (h(0), cnot(0, 39), rz(39, Fraction(1, 2))))
    col = SparseBatch(n, [0]).run(c).columns(1)[0]
    assert len(col) == 2
    assert abs(abs(col[0]) - 2 ** -0.5) < 1e-12


def test_fejer_kernel_values():
    assert fejer_amplitude(3, 3, 2) == 1.0
    assert abs(fejer_amplitude(3, 2, 2)) < 1e-12
    assert fejer_amplitude(4, 0, 2) == -1.0  # s = 2^d picks up the sign
    p = fejer_profile(2.5, 3).probabilities
    assert p.sum() == pytest.approx(1.0)
    assert p[2] == pytest.approx(p[3])


def test_fejer_floor_ceil_mass_bound():
    rng = random.Random(0)
    for _ in range(200):
        d = rng.randint(1, 6)
        t = rng.uniform(0, (1 << d) - 1)
        assert fejer_profile(t, d).floor_ceil_mass >= 8 / math.pi ** 2 - 1e-12


def test_fejer_check_on_half_integer_table():
    table = FunctionTable(1, 3, (Fraction(1, 2), Fraction(5, 4)), "real")
    oc = build_oracle(OracleRequest(fwht(table), "O3", corrections="value-register"))
    for prof in fejer_check(oc, table).values():
        assert prof.max_deviation < 1e-9
    assert not verify_oracle(oc, table).passed


def test_verify_reports_failure_on_wrong_table(worked_example):
    oc = build_oracle(OracleRequest(fwht(worked_example), "O3"))
    other = FunctionTable(2, 2, (1, -2, 0, 2), "real")
    v = verify_oracle(oc, other)
    assert not v.passed and v.failures
