"""Depolarizing-plus-readout noise and a one-parameter calibration fit.

The trajectory model inserts a uniform random Pauli after each gate on each
touched qubit (probability p1 for one-qubit gates, p2 for two-qubit gates)
and flips each recorded measurement bit with probability p_read.  Collapse
always follows the true outcome; only the record is corrupted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Counts, RunConfig
from .simulate import exact_distribution, simulate_shots


@dataclass(frozen=True)
class NoiseModel:
    p1: float
    p2: float
    p_read: float

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "p_read"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} = {v} lies outside [0, 1]")

    @classmethod
    def zero(cls) -> "NoiseModel":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def depolarizing(cls, p: float, p_read: float = 0.0) -> "NoiseModel":
        """Single-parameter model: the same p on one- and two-qubit gates."""
        return cls(p, p, p_read)

    def is_zero(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.p_read == 0.0

    def to_json(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "p_read": self.p_read}

    @classmethod
    def from_json(cls, obj: dict) -> "NoiseModel":
        return cls(float(obj["p1"]), float(obj["p2"]), float(obj["p_read"]))


def apply_noise_trajectory(circuit: Circuit, noise: NoiseModel, cfg: RunConfig) -> Counts:
    """Sampled run of a circuit under a trajectory noise model."""
    if noise is None:
        raise ValueError("noise model must be provided; use simulate_shots for noiseless runs")
    return simulate_shots(circuit, cfg, noise=noise)


@dataclass(frozen=True)
class FitResult:
    """Outcome of the depolarizing-strength calibration."""

    fitted_p: float
    target: float
    achieved: float
    p_read: float
    iterations: int
    converged: bool

    def model(self) -> NoiseModel:
        return NoiseModel.depolarizing(self.fitted_p, self.p_read)

    def to_json(self) -> dict:
        out = self.model().to_json()
        out.update({"fitted_p": self.fitted_p, "target": self.target, "achieved": self.achieved})
        return out


def _receiver_clbit(circuit: Circuit, clbit: int | None) -> int:
    if clbit is None:
        for op in reversed(circuit.ops):
            if op.kind == "measure":
                return op.clbit
        raise ValueError("circuit has no measurement to calibrate against")
    if not 0 <= clbit < circuit.num_clbits:
        raise ValueError(f"clbit {clbit} out of range")
    return clbit


def fit_depolarizing_detail(
    target_p0: float,
    circuit: Circuit,
    p_read: float = 0.02,
    shots: int = 20000,
    seed: int = 0,
    clbit: int | None = None,
    lo: float = 0.0,
    hi: float = 0.2,
    tol: float = 0.005,
    max_iter: int = 20,
) -> FitResult:
    """Bisect the depolarizing strength until P(clbit = 0) matches a target.

    clbit defaults to the circuit's last measurement.  Every evaluation
    reuses the same seed, so the estimated P(0) is a deterministic and (up
    to sampling ties) monotone function of p and the whole fit reproduces
    exactly.  Raises ValueError when the target is above the noiseless
    value or below what the strongest allowed noise produces.
    """
    if shots < 20000:
        raise ValueError("calibration needs at least 20000 shots per evaluation")
    if not 0.0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    circuit.validate()
    bit = _receiver_clbit(circuit, clbit)

    noiseless = exact_distribution(circuit)
    pos = circuit.num_clbits - 1 - bit
    p0_ceiling = sum(p for key, p in noiseless.items() if key[pos] == "0")
    if target_p0 > p0_ceiling + tol:
        raise ValueError(f"target {target_p0} exceeds the noiseless value {p0_ceiling:.6f}")

    def evaluate(p: float) -> float:
        model = NoiseModel.depolarizing(p, p_read)
        counts = simulate_shots(circuit, RunConfig(shots=shots, seed=seed), noise=model)
        return counts.marginal(bit).p0()

    floor = evaluate(hi)
    if target_p0 < floor - tol:
        raise ValueError(f"target {target_p0} is below {floor:.4f}, the value at p = {hi}")

    a, b = lo, hi
    mid, achieved = hi, floor
    iterations = 0
    converged = abs(floor - target_p0) <= tol
    while iterations < max_iter and not converged:
        mid = (a + b) / 2.0
        achieved = evaluate(mid)
        iterations += 1
        if abs(achieved - target_p0) <= tol:
            converged = True
        elif achieved > target_p0:
            a = mid
        else:
            b = mid
    return FitResult(
        fitted_p=mid,
        target=target_p0,
        achieved=achieved,
        p_read=p_read,
        iterations=iterations,
        converged=converged,
    )


def fit_depolarizing(
    target_p0: float,
    circuit: Circuit,
    p_read: float = 0.02,
    shots: int = 20000,
    seed: int = 0,
    clbit: int | None = None,
) -> float:
    """Fitted depolarizing probability; see fit_depolarizing_detail."""
    return fit_depolarizing_detail(target_p0, circuit, p_read, shots, seed, clbit).fitted_p
