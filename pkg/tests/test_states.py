"""Statevector evolution, measurement collapse, and partial traces,
cross-checked against the dense index-arithmetic oracle."""

import numpy as np
import pytest

from qss import DensityMatrix, StateVector, apply_gate, measure_z, partial_trace, probabilities
from qss.states import apply_unitary

import oracles

GATE_POOL_1Q = ("X", "Y", "Z", "H", "S", "SDG", "T")
GATE_POOL_2Q = ("CNOT", "CZ", "SWAP")


def random_op_sequence(rng, n, length):
    ops = []
    for _ in range(length):
        if n >= 2 and rng.random() < 0.4:
            name = GATE_POOL_2Q[rng.integers(len(GATE_POOL_2Q))]
            a, b = rng.choice(n, size=2, replace=False)
            ops.append((name, (int(a), int(b))))
        else:
            name = GATE_POOL_1Q[rng.integers(len(GATE_POOL_1Q))]
            ops.append((name, (int(rng.integers(n)),)))
    return ops


def test_zero_state():
    psi = StateVector.zero(3)
    assert psi.num_qubits == 3
    assert psi.amplitudes[0] == 1.0
    assert np.abs(psi.amplitudes[1:]).max() == 0.0


def test_validation_rejects_bad_states():
    with pytest.raises(ValueError, match="not normalized"):
        StateVector(np.array([1.0, 1.0], dtype=complex))
    with pytest.raises(ValueError, match="power of two"):
        StateVector(np.array([1.0, 0.0, 0.0], dtype=complex))
    with pytest.raises(ValueError, match="finite"):
        StateVector(np.array([np.nan, 0.0], dtype=complex))
    with pytest.raises(ValueError, match="num_qubits must be in"):
        StateVector.zero(9)
    amps = np.zeros(2**9, dtype=complex)
    amps[0] = 1.0
    with pytest.raises(ValueError, match="exceeds the 8-qubit limit"):
        StateVector(amps)


def test_amplitudes_are_read_only():
    psi = StateVector.zero(2)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_apply_gate_matches_oracle_on_random_sequences():
    rng = np.random.default_rng(17)
    for trial in range(60):
        n = int(rng.integers(1, 6))
        ops = random_op_sequence(rng, n, int(rng.integers(1, 9)))
        psi = StateVector.zero(n)
        for name, targets in ops:
            psi = apply_gate(psi, name, targets)
        expected = oracles.run_ops(ops, n)
        np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-12, err_msg=str(ops))


def test_apply_gate_target_convention():
    # CNOT targets are (control, target): |01> has qubit 0 set, so a CNOT
    # controlled on qubit 0 flips qubit 1
    psi = StateVector.zero(2)
    psi = apply_gate(psi, "X", (0,))
    psi = apply_gate(psi, "CNOT", (0, 1))
    assert abs(psi.amplitudes[0b11]) == pytest.approx(1.0)


def test_apply_unitary_validates():
    psi = StateVector.zero(2)
    with pytest.raises(ValueError, match="duplicate"):
        apply_unitary(psi.amplitudes, oracles.GATE_MATRICES["CNOT"], (0, 0), 2)
    with pytest.raises(ValueError, match="out of range"):
        apply_unitary(psi.amplitudes, oracles.GATE_MATRICES["X"], (2,), 2)
    with pytest.raises(ValueError, match="does not match"):
        apply_unitary(psi.amplitudes, oracles.GATE_MATRICES["X"], (0, 1), 2)


def test_probabilities_on_plus_state():
    psi = apply_gate(StateVector.zero(2), "H", (0,))
    p0, p1 = probabilities(psi, 0)
    assert p0 == pytest.approx(0.5, abs=1e-12)
    assert p1 == pytest.approx(0.5, abs=1e-12)
    p0, p1 = probabilities(psi, 1)
    assert p0 == pytest.approx(1.0, abs=1e-12)


def test_measure_z_outcome_follows_the_draw():
    psi = apply_gate(StateVector.zero(1), "H", (0,))
    outcome, collapsed = measure_z(psi, 0, 0.3)
    assert outcome == 0
    assert abs(collapsed.amplitudes[0]) == pytest.approx(1.0)
    outcome, collapsed = measure_z(psi, 0, 0.7)
    assert outcome == 1
    assert abs(collapsed.amplitudes[1]) == pytest.approx(1.0)


def test_measure_z_certain_outcome():
    psi = apply_gate(StateVector.zero(1), "X", (0,))
    for draw in (0.0, 0.5, 0.999):
        outcome, _ = measure_z(psi, 0, draw)
        assert outcome == 1


def test_measure_z_collapse_renormalizes():
    # unequal superposition: amplitudes sqrt(1/3), sqrt(2/3)
    amps = np.array([np.sqrt(1 / 3), np.sqrt(2 / 3)], dtype=complex)
    outcome, collapsed = measure_z(StateVector(amps), 0, 0.9)
    assert outcome == 1
    assert np.linalg.norm(collapsed.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_measure_z_rejects_bad_draw():
    psi = StateVector.zero(1)
    with pytest.raises(ValueError, match="randomness"):
        measure_z(psi, 0, 1.0)


def test_inner_product():
    a = StateVector.zero(1)
    b = apply_gate(a, "H", (0,))
    assert a.inner(b) == pytest.approx(1 / np.sqrt(2))
    assert b.inner(b) == pytest.approx(1.0)


def test_density_of_pure_state():
    psi = apply_gate(StateVector.zero(1), "H", (0,))
    rho = psi.density()
    np.testing.assert_allclose(rho.matrix, np.full((2, 2), 0.5), atol=1e-12)


def test_partial_trace_of_ghz_is_maximally_mixed():
    ops = [("H", (2,)), ("CNOT", (2, 1)), ("CNOT", (2, 0))]
    psi = StateVector.zero(3)
    for name, targets in ops:
        psi = apply_gate(psi, name, targets)
    rho = partial_trace(psi, (0,))
    np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-12)
    rho2 = partial_trace(psi, (0, 1))
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    np.testing.assert_allclose(rho2.matrix, expected, atol=1e-12)


def test_partial_trace_matches_oracle_on_random_states():
    rng = np.random.default_rng(23)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        ops = random_op_sequence(rng, n, 6)
        psi = StateVector.zero(n)
        for name, targets in ops:
            psi = apply_gate(psi, name, targets)
        k = int(rng.integers(1, n))
        keep = sorted(rng.choice(n, size=k, replace=False).tolist())
        expected = oracles.reduced_density(psi.amplitudes, keep, n)
        got = partial_trace(psi, keep)
        np.testing.assert_allclose(got.matrix, expected, atol=1e-12)
        # the density-matrix path must agree with the statevector path
        got_dm = partial_trace(psi.density(), keep)
        np.testing.assert_allclose(got_dm.matrix, expected, atol=1e-12)


def test_partial_trace_reorders_keep_list():
    psi = apply_gate(StateVector.zero(2), "X", (1,))
    a = partial_trace(psi, (1, 0))
    b = partial_trace(psi, (0, 1))
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-15)


def test_partial_trace_validates():
    psi = StateVector.zero(2)
    with pytest.raises(ValueError, match="at least one"):
        partial_trace(psi, ())
    with pytest.raises(ValueError, match="out of range"):
        partial_trace(psi, (2,))


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="Hermitian"):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]], dtype=complex))
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(np.eye(2, dtype=complex))
    with pytest.raises(ValueError, match="square"):
        DensityMatrix(np.zeros((2, 3), dtype=complex))


def test_density_matrix_allows_slightly_negative_eigenvalues():
    # tomography output can be unphysical; construction succeeds and the
    # flag reports it
    m = np.array([[1.05, 0.0], [0.0, -0.05]], dtype=complex)
    rho = DensityMatrix(m)
    assert not rho.is_physical()
    ok = DensityMatrix(np.eye(2, dtype=complex) / 2)
    assert ok.is_physical()


def test_density_matrix_json_round_trip():
    rng = np.random.default_rng(5)
    rho = DensityMatrix(oracles.random_density(rng, 4))
    back = DensityMatrix.from_json(rho.to_json())
    np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-15)
    with pytest.raises(ValueError, match="shape"):
        DensityMatrix.from_json({"dim": 2, "re": [[1.0]], "im": [[0.0]]})
