"""Statevectors and density matrices on up to 8 qubits.

Qubit 0 is the least significant bit of the amplitude index, so |q1 q0> = |01>
means qubit 0 is excited and lives at index 1.  Bitstrings render qubit 0
rightmost throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import ATOL_EVOLUTION, GateMatrix, gate

MAX_QUBITS = 8


def _num_qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state; amplitudes are a read-only complex array."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        n = _num_qubits_for(a.size)
        if n > MAX_QUBITS:
            raise ValueError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
        if not np.all(np.isfinite(a.view(float))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > ATOL_EVOLUTION:
            raise ValueError(f"state is not normalized: |psi| = {norm}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        """|0...0> on num_qubits qubits."""
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}]")
        a = np.zeros(2**num_qubits, dtype=complex)
        a[0] = 1.0
        return cls(a)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if self.num_qubits != other.num_qubits:
            raise ValueError("qubit counts differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density(self) -> "DensityMatrix":
        """|psi><psi| as a density matrix."""
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()))


def apply_unitary(amps: np.ndarray, matrix: np.ndarray, targets: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Apply a k-qubit unitary to target qubits of a batch of statevectors.

    amps has shape (..., 2**num_qubits); a new array is returned.  targets
    lists the qubits the matrix acts on, most significant first, so for a
    two-qubit gate targets = (control, target).
    """
    k = len(targets)
    if matrix.shape != (2**k, 2**k):
        raise ValueError(f"matrix shape {matrix.shape} does not match {k} targets")
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target qubits in {targets}")
    for q in targets:
        if not 0 <= q < num_qubits:
            raise ValueError(f"target qubit {q} out of range for {num_qubits} qubits")

    batch_shape = amps.shape[:-1]
    t = amps.reshape(batch_shape + (2,) * num_qubits)
    # Qubit q sits on axis (num_qubits - 1 - q) past the batch axes.
    nb = len(batch_shape)
    axes = [nb + num_qubits - 1 - q for q in targets]
    t = np.moveaxis(t, axes, range(nb, nb + k))
    moved = t.shape
    t = t.reshape(batch_shape + (2**k, -1))
    t = np.einsum("ij,...jk->...ik", matrix, t)
    t = t.reshape(moved)
    t = np.moveaxis(t, range(nb, nb + k), axes)
    return t.reshape(batch_shape + (2**num_qubits,))


def apply_gate(state: StateVector, g: GateMatrix | str, targets: tuple[int, ...] | list[int]) -> StateVector:
    """Apply a registry gate to a statevector and return the new state."""
    if isinstance(g, str):
        g = gate(g)
    targets = tuple(targets)
    if len(targets) != g.arity:
        raise ValueError(f"gate {g.name} expects {g.arity} targets, got {len(targets)}")
    return StateVector(apply_unitary(state.amplitudes, g.matrix, targets, state.num_qubits))


def probabilities(state: StateVector, qubit: int) -> tuple[float, float]:
    """Z-basis outcome probabilities (p0, p1) for one qubit."""
    n = state.num_qubits
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range")
    probs = np.abs(state.amplitudes) ** 2
    idx = np.arange(probs.size)
    mask1 = (idx >> qubit) & 1 == 1
    p1 = float(probs[mask1].sum())
    return 1.0 - p1, p1


def measure_z(state: StateVector, qubit: int, randomness: float) -> tuple[int, StateVector]:
    """Projective Z measurement driven by one uniform draw in [0, 1).

    Returns (outcome, collapsed state).  Outcome is 0 when randomness < p0,
    which keeps repeated runs reproducible for a fixed draw sequence.
    """
    if not 0.0 <= randomness < 1.0:
        raise ValueError("randomness must lie in [0, 1)")
    p0, _ = probabilities(state, qubit)
    outcome = 0 if randomness < p0 else 1
    idx = np.arange(state.amplitudes.size)
    keep = ((idx >> qubit) & 1) == outcome
    a = np.where(keep, state.amplitudes, 0.0)
    a = a / np.linalg.norm(a)
    return outcome, StateVector(a)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace matrix; positivity is queried, not enforced.

    Tomography can produce slightly unphysical reconstructions, so negative
    eigenvalues are allowed at construction and reported via is_physical().
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex).copy()
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        n = _num_qubits_for(m.shape[0])
        if n > MAX_QUBITS:
            raise ValueError(f"{n} qubits exceeds the {MAX_QUBITS}-qubit limit")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("density matrix must be finite")
        if not np.allclose(m, m.conj().T, atol=ATOL_EVOLUTION):
            raise ValueError("density matrix must be Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > ATOL_EVOLUTION:
            raise ValueError(f"density matrix trace must be 1, got {tr}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def is_physical(self, atol: float = 1e-9) -> bool:
        """True when all eigenvalues are >= -atol."""
        return bool(self.eigenvalues().min() >= -atol)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DensityMatrix":
        dim = obj["dim"]
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise ValueError(f"re/im shape does not match dim {dim}")
        return cls(re + 1j * im)


def partial_trace(state: StateVector | DensityMatrix, keep: tuple[int, ...] | list[int]) -> DensityMatrix:
    """Reduced density matrix on the kept qubits, tracing out the rest.

    Kept qubits are re-indexed in increasing order: the smallest kept qubit
    becomes qubit 0 of the reduced system.
    """
    keep = sorted(set(int(q) for q in keep))
    if isinstance(state, StateVector):
        n = state.num_qubits
    else:
        n = state.num_qubits
    if not keep:
        raise ValueError("must keep at least one qubit")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"kept qubits {keep} out of range for {n} qubits")
    k = len(keep)
    # Axes for kept qubits, most significant kept qubit first.
    kept_axes = [n - 1 - q for q in reversed(keep)]

    if isinstance(state, StateVector):
        t = state.amplitudes.reshape((2,) * n)
        t = np.moveaxis(t, kept_axes, range(k))
        a = t.reshape(2**k, -1)
        return DensityMatrix(a @ a.conj().T)

    t = state.matrix.reshape((2,) * (2 * n))
    row_axes = kept_axes
    col_axes = [n + ax for ax in kept_axes]
    t = np.moveaxis(t, row_axes + col_axes, list(range(k)) + list(range(n, n + k)))
    t = t.reshape(2**k, 2 ** (n - k), 2**k, 2 ** (n - k))
    return DensityMatrix(np.einsum("arbr->ab", t))
