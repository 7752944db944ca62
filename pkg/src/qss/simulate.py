"""Shot sampling, exact branch enumeration, and unitary extraction.

Sampling uses a counter-based generator (Philox) keyed by the run seed.  All
per-shot randomness is laid out as one row of uniforms per shot with a fixed
column per consumption site, so results are independent of chunking and a
zero-probability noise channel consumes no draws at all.  That makes a run
with NoiseModel(0, 0, 0) bit-identical to a noiseless run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .circuit import Circuit, Counts, RunConfig
from .gates import ATOL_EVOLUTION, PAULIS, gate
from .states import apply_unitary

if TYPE_CHECKING:
    from .noise import NoiseModel

MAX_UNITARY_QUBITS = 5
MAX_BRANCHES = 2**16
_BRANCH_EPS = 1e-14
_CHUNK_AMPS = 2**22


class SimulationError(RuntimeError):
    """Raised when a circuit cannot be executed as requested."""


@dataclass(frozen=True)
class Branch:
    """One feedforward outcome: classical register, probability, final state."""

    clbits: tuple[int, ...]
    probability: float
    state: np.ndarray = field(repr=False)

    def register_code(self) -> int:
        return sum(b << i for i, b in enumerate(self.clbits))


def _noise_probs(noise: "NoiseModel | None") -> tuple[float, float, float]:
    if noise is None:
        return 0.0, 0.0, 0.0
    return noise.p1, noise.p2, noise.p_read


def _draw_layout(circuit: Circuit, noise: "NoiseModel | None") -> list[dict]:
    """Assign uniform-draw columns to each op, in program order.

    Gates take (trigger, choice) per touched qubit when their depolarizing
    probability is nonzero; measurements take one collapse draw plus one
    readout draw when readout error is on.  Conditioned gates reserve their
    columns whether or not they fire, so the layout is shot-independent.
    """
    p1, p2, p_read = _noise_probs(noise)
    layout = []
    col = 0
    for op in circuit.ops:
        entry: dict = {"op": op}
        if op.kind in ("gate", "cond"):
            p = p1 if len(op.targets) == 1 else p2
            entry["p"] = p
            entry["noise_cols"] = []
            if p > 0.0:
                for _ in op.targets:
                    entry["noise_cols"].append((col, col + 1))
                    col += 2
        else:
            entry["collapse_col"] = col
            col += 1
            entry["readout_col"] = None
            if p_read > 0.0:
                entry["readout_col"] = col
                col += 1
            entry["p_read"] = p_read
        layout.append(entry)
    return layout


def _total_cols(layout: list[dict]) -> int:
    n = 0
    for e in layout:
        if "noise_cols" in e:
            n += 2 * len(e["noise_cols"])
        else:
            n += 1 + (1 if e["readout_col"] is not None else 0)
    return n


def _apply_to_rows(states: np.ndarray, matrix: np.ndarray, targets: tuple[int, ...], n: int, rows: np.ndarray | None) -> None:
    """Apply a unitary to all rows, or to the rows selected by a bool mask."""
    if rows is None:
        states[:] = apply_unitary(states, matrix, targets, n)
    elif rows.any():
        states[rows] = apply_unitary(states[rows], matrix, targets, n)


def _inject_pauli(states: np.ndarray, u: np.ndarray, cols: tuple[int, int], p: float, qubit: int, n: int, fired: np.ndarray | None) -> None:
    hit = u[:, cols[0]] < p
    if fired is not None:
        hit &= fired
    if not hit.any():
        return
    which = (u[:, cols[1]] * 3.0).astype(np.int64)
    for k in range(3):
        _apply_to_rows(states, PAULIS[k + 1], (qubit,), n, hit & (which == k))


def simulate_shots(circuit: Circuit, cfg: RunConfig, noise: "NoiseModel | None" = None) -> Counts:
    """Run a circuit shot by shot and tally classical register values.

    Shots are processed as batches of statevectors; measurement collapse uses
    the true outcome while the recorded bit may be flipped by readout error.
    """
    if cfg.mode != "sampled":
        raise ValueError(f"simulate_shots requires sampled mode, got {cfg.mode!r}")
    circuit.validate()
    n = circuit.num_qubits
    m = circuit.num_clbits
    dim = 2**n
    layout = _draw_layout(circuit, noise)
    ncols = _total_cols(layout)

    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    uniforms = rng.random((cfg.shots, max(ncols, 1)))

    codes = np.empty(cfg.shots, dtype=np.int64)
    chunk = max(1, _CHUNK_AMPS // dim)
    for start in range(0, cfg.shots, chunk):
        stop = min(start + chunk, cfg.shots)
        rows = stop - start
        u = uniforms[start:stop]
        states = np.zeros((rows, dim), dtype=complex)
        states[:, 0] = 1.0
        creg = np.zeros((rows, m), dtype=np.int64) if m else np.zeros((rows, 0), dtype=np.int64)

        for entry in layout:
            op = entry["op"]
            if op.kind in ("gate", "cond"):
                fired = None
                if op.kind == "cond":
                    fired = creg[:, op.clbit] == 1
                    if not fired.any():
                        continue
                _apply_to_rows(states, gate(op.name).matrix, op.targets, n, fired)
                for q, cols in zip(op.targets, entry["noise_cols"]):
                    _inject_pauli(states, u, cols, entry["p"], q, n, fired)
            else:
                q = op.qubit
                bit = (np.arange(dim) >> q) & 1
                p1 = np.einsum("ij,j->i", np.abs(states) ** 2, bit.astype(float))
                p0 = 1.0 - p1
                outcome = (u[:, entry["collapse_col"]] >= p0).astype(np.int64)
                keep = bit[None, :] == outcome[:, None]
                states *= keep
                norm = np.sqrt(np.where(outcome == 1, p1, p0))
                states /= norm[:, None]
                recorded = outcome
                if entry["readout_col"] is not None:
                    flips = (u[:, entry["readout_col"]] < entry["p_read"]).astype(np.int64)
                    recorded = outcome ^ flips
                creg[:, op.clbit] = recorded

        weights = 1 << np.arange(m, dtype=np.int64) if m else np.zeros(0, dtype=np.int64)
        codes[start:stop] = creg @ weights if m else 0
    return Counts.from_codes(codes, m)


def enumerate_branches(circuit: Circuit) -> list[Branch]:
    """Walk every nonzero-probability measurement outcome of a circuit.

    Returns one Branch per leaf, with the classical register, the exact
    branch probability, and the final statevector.  Raises SimulationError
    if more than 2**16 branches would be produced.
    """
    circuit.validate()
    n = circuit.num_qubits
    dim = 2**n
    state0 = np.zeros(dim, dtype=complex)
    state0[0] = 1.0
    branches: list[Branch] = []

    def walk(state: np.ndarray, prob: float, creg: tuple[int, ...], pos: int) -> None:
        for i in range(pos, len(circuit.ops)):
            op = circuit.ops[i]
            if op.kind == "gate":
                state = apply_unitary(state, gate(op.name).matrix, op.targets, n)
            elif op.kind == "cond":
                if creg[op.clbit] == 1:
                    state = apply_unitary(state, gate(op.name).matrix, op.targets, n)
            else:
                bit = (np.arange(dim) >> op.qubit) & 1
                p1 = float((np.abs(state) ** 2)[bit == 1].sum())
                outcomes = ((0, 1.0 - p1), (1, p1))
                for value, p in outcomes:
                    if p <= _BRANCH_EPS:
                        continue
                    sub = np.where(bit == value, state, 0.0) / np.sqrt(p)
                    reg = list(creg)
                    reg[op.clbit] = value
                    walk(sub, prob * p, tuple(reg), i + 1)
                return
        if len(branches) >= MAX_BRANCHES:
            raise SimulationError(f"branch count exceeds {MAX_BRANCHES}")
        final = state.copy()
        final.setflags(write=False)
        branches.append(Branch(clbits=creg, probability=prob, state=final))

    walk(state0, 1.0, (0,) * circuit.num_clbits, 0)
    return branches


def exact_distribution(circuit: Circuit) -> dict[str, float]:
    """Exact classical-register distribution, keyed by bitstring."""
    from .circuit import bitstring

    m = circuit.num_clbits
    dist: dict[int, float] = {}
    for br in enumerate_branches(circuit):
        code = br.register_code()
        dist[code] = dist.get(code, 0.0) + br.probability
    return {bitstring(code, m): p for code, p in sorted(dist.items())}


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a gate-only circuit on at most 5 qubits."""
    if circuit.num_qubits > MAX_UNITARY_QUBITS:
        raise SimulationError(f"unitary extraction is limited to {MAX_UNITARY_QUBITS} qubits")
    for op in circuit.ops:
        if op.kind != "gate":
            raise SimulationError("unitary extraction requires a gate-only circuit")
    n = circuit.num_qubits
    dim = 2**n
    basis = np.eye(dim, dtype=complex)
    for op in circuit.ops:
        basis = apply_unitary(basis, gate(op.name).matrix, op.targets, n)
    return basis.T.copy()


def matrices_equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = ATOL_EVOLUTION) -> bool:
    """True when a = exp(i phi) * b for a single global phase."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    overlap = np.einsum("ij,ij->", b.conj(), a)
    scale = np.einsum("ij,ij->", b.conj(), b).real
    if abs(overlap) < atol * scale:
        return False
    phase = overlap / abs(overlap)
    return bool(np.allclose(a, phase * b, atol=atol))


def equivalent_up_to_phase(a: Circuit, b: Circuit, atol: float = ATOL_EVOLUTION) -> bool:
    """Compare two gate-only circuits as unitaries modulo global phase."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("circuits act on different qubit counts")
    return matrices_equal_up_to_phase(unitary_of(a), unitary_of(b), atol=atol)
