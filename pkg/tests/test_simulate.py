"""Shot sampler, exact branch enumeration, and unitary extraction."""

import numpy as np
import pytest

from qss import (
    Circuit,
    RunConfig,
    SimulationError,
    enumerate_branches,
    equivalent_up_to_phase,
    exact_distribution,
    simulate_shots,
    unitary_of,
)
from qss.simulate import matrices_equal_up_to_phase
import qss.simulate

import oracles
from test_states import random_op_sequence


def bell_circuit():
    return Circuit(2, 2).gate("H", 0).gate("CNOT", 0, 1).measure(0, 0).measure(1, 1)


def test_same_seed_reproduces_exactly():
    c = bell_circuit()
    a = simulate_shots(c, RunConfig(shots=2048, seed=9))
    b = simulate_shots(c, RunConfig(shots=2048, seed=9))
    assert a.counts == b.counts


def test_different_seeds_differ():
    c = bell_circuit()
    a = simulate_shots(c, RunConfig(shots=2048, seed=1))
    b = simulate_shots(c, RunConfig(shots=2048, seed=2))
    assert a.counts != b.counts


def test_chunk_size_does_not_change_results(monkeypatch):
    c = Circuit(3, 3).gate("H", 0).gate("CNOT", 0, 1).gate("T", 2).gate("H", 2)
    c.measure(0, 0).measure(1, 1).measure(2, 2)
    baseline = simulate_shots(c, RunConfig(shots=1500, seed=4))
    monkeypatch.setattr(qss.simulate, "_CHUNK_AMPS", 2**5)
    chunked = simulate_shots(c, RunConfig(shots=1500, seed=4))
    assert baseline.counts == chunked.counts


def test_simulate_requires_sampled_mode():
    with pytest.raises(ValueError, match="sampled"):
        simulate_shots(bell_circuit(), RunConfig(mode="exact"))


def test_exact_distribution_single_hadamard():
    c = Circuit(1, 1).gate("H", 0).measure(0, 0)
    dist = exact_distribution(c)
    assert dist["0"] == pytest.approx(0.5, abs=1e-12)
    assert dist["1"] == pytest.approx(0.5, abs=1e-12)


def test_exact_distribution_bell_and_ghz():
    dist = exact_distribution(bell_circuit())
    assert set(dist) == {"00", "11"}
    assert dist["00"] == pytest.approx(0.5, abs=1e-12)
    g = Circuit(3, 3).gate("H", 2).gate("CNOT", 2, 1).gate("CNOT", 2, 0)
    for q in range(3):
        g.measure(q, q)
    dist = exact_distribution(g)
    assert set(dist) == {"000", "111"}
    assert dist["111"] == pytest.approx(0.5, abs=1e-12)


def test_sampled_agrees_with_exact_distribution():
    c = Circuit(2, 2).gate("H", 0).gate("T", 0).gate("H", 0).gate("H", 1)
    c.measure(0, 0).measure(1, 1)
    dist = exact_distribution(c)
    shots = 20000
    counts = simulate_shots(c, RunConfig(shots=shots, seed=3))
    for key, p in dist.items():
        n = counts.counts.get(key, 0)
        se = np.sqrt(p * (1 - p) / shots)
        assert abs(n / shots - p) < 4 * se + 1e-9, key


def test_branches_cover_the_distribution():
    c = bell_circuit()
    branches = enumerate_branches(c)
    assert len(branches) == 2
    assert sum(b.probability for b in branches) == pytest.approx(1.0, abs=1e-12)
    for b in branches:
        assert np.linalg.norm(b.state) == pytest.approx(1.0, abs=1e-12)
        assert b.clbits[0] == b.clbits[1]


def test_branch_register_code():
    c = Circuit(2, 2).gate("X", 0).measure(0, 0).measure(1, 1)
    (branch,) = enumerate_branches(c)
    assert branch.clbits == (1, 0)
    assert branch.register_code() == 1


def test_conditional_fires_only_on_one():
    # measure a plus state, then push qubit 1 to match the outcome
    c = Circuit(2, 1).gate("H", 0).measure(0, 0).cond("X", 1, 0)
    branches = sorted(enumerate_branches(c), key=lambda b: b.clbits)
    assert len(branches) == 2
    state0 = branches[0].state
    state1 = branches[1].state
    assert abs(state0[0b00]) == pytest.approx(1.0, abs=1e-12)
    assert abs(state1[0b11]) == pytest.approx(1.0, abs=1e-12)


def test_zero_probability_branches_are_pruned():
    c = Circuit(1, 2).measure(0, 0).gate("H", 0).measure(0, 1)
    branches = enumerate_branches(c)
    # first measurement is deterministic, second is 50/50
    assert sorted(b.clbits for b in branches) == [(0, 0), (0, 1)]


def test_branch_limit_is_enforced(monkeypatch):
    monkeypatch.setattr(qss.simulate, "MAX_BRANCHES", 8)
    c = Circuit(1, 4)
    for i in range(4):
        c.gate("H", 0).measure(0, i)
    with pytest.raises(SimulationError, match="branch count"):
        enumerate_branches(c)


def test_repeated_measurement_is_consistent():
    # measuring, copying through a CNOT, and measuring again must agree
    c = Circuit(2, 2).gate("H", 0).measure(0, 0).gate("CNOT", 0, 1).measure(1, 1)
    counts = simulate_shots(c, RunConfig(shots=4096, seed=8))
    for key in counts.counts:
        assert key[0] == key[1]


def test_unitary_of_matches_oracle():
    rng = np.random.default_rng(41)
    for _ in range(25):
        n = int(rng.integers(1, 6))
        ops = random_op_sequence(rng, n, int(rng.integers(1, 10)))
        c = Circuit(n, 0)
        for name, targets in ops:
            c.gate(name, *targets)
        np.testing.assert_allclose(unitary_of(c), oracles.unitary(ops, n), atol=1e-12)


def test_unitary_of_guards():
    with pytest.raises(SimulationError, match="limited"):
        unitary_of(Circuit(6, 0))
    with pytest.raises(SimulationError, match="gate-only"):
        unitary_of(Circuit(1, 1).measure(0, 0))


def test_matrices_equal_up_to_phase():
    u = oracles.GATE_MATRICES["H"]
    assert matrices_equal_up_to_phase(u, np.exp(0.7j) * u)
    assert not matrices_equal_up_to_phase(u, oracles.GATE_MATRICES["X"])
    # rectangular isometries are supported
    iso = np.zeros((4, 2), dtype=complex)
    iso[0, 0] = iso[3, 1] = 1.0
    assert matrices_equal_up_to_phase(1j * iso, iso)


def test_equivalent_up_to_phase_on_circuits():
    # ZX and XZ differ by a global minus sign
    a = Circuit(1, 0).gate("Z", 0).gate("X", 0)
    b = Circuit(1, 0).gate("X", 0).gate("Z", 0)
    assert equivalent_up_to_phase(a, b)
    c = Circuit(1, 0).gate("X", 0)
    assert not equivalent_up_to_phase(a, c)
    with pytest.raises(ValueError, match="qubit counts"):
        equivalent_up_to_phase(a, Circuit(2, 0))


def test_wide_register_sampling():
    # 8 qubits is the ceiling and must still sample fine
    c = Circuit(8, 1).gate("H", 7).measure(7, 0)
    counts = simulate_shots(c, RunConfig(shots=512, seed=0))
    assert counts.total == 512
    assert set(counts.counts) <= {"0", "1"}
