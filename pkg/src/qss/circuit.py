"""Circuit intermediate representation: gates, measurements, classically
conditioned gates, plus shot-count containers and run configuration.

Ops are kept in program order.  A conditioned gate fires when its classical
bit reads 1, which is how measurement feedforward is expressed.  Bitstring
keys render clbit 0 rightmost.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import gate
from .states import MAX_QUBITS

VALID_KINDS = ("gate", "measure", "cond")
VALID_MODES = ("sampled", "exact")


@dataclass(frozen=True)
class CircuitOp:
    """One instruction: kind is gate, measure, or cond."""

    kind: str
    name: str | None = None
    targets: tuple[int, ...] = ()
    qubit: int | None = None
    clbit: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in VALID_KINDS:
            raise ValueError(f"unknown op kind {self.kind!r}")
        if self.kind in ("gate", "cond"):
            if self.name is None:
                raise ValueError(f"{self.kind} op needs a gate name")
            g = gate(self.name)
            if len(self.targets) != g.arity:
                raise ValueError(f"gate {self.name} expects {g.arity} targets, got {len(self.targets)}")
            if len(set(self.targets)) != len(self.targets):
                raise ValueError(f"duplicate targets in {self.targets}")
            if self.kind == "cond" and self.clbit is None:
                raise ValueError("cond op needs a clbit")
        if self.kind == "measure":
            if self.qubit is None or self.clbit is None:
                raise ValueError("measure op needs qubit and clbit")

    def to_json(self) -> dict:
        if self.kind == "gate":
            return {"kind": "gate", "name": self.name, "targets": list(self.targets)}
        if self.kind == "measure":
            return {"kind": "measure", "qubit": self.qubit, "clbit": self.clbit}
        return {"kind": "cond", "name": self.name, "targets": list(self.targets), "clbit": self.clbit}

    @classmethod
    def from_json(cls, obj: dict) -> "CircuitOp":
        kind = obj.get("kind")
        if kind == "gate":
            return cls(kind="gate", name=obj["name"], targets=tuple(obj["targets"]))
        if kind == "measure":
            return cls(kind="measure", qubit=int(obj["qubit"]), clbit=int(obj["clbit"]))
        if kind == "cond":
            return cls(kind="cond", name=obj["name"], targets=tuple(obj["targets"]), clbit=int(obj["clbit"]))
        raise ValueError(f"unknown op kind {kind!r}")


class Circuit:
    """Ordered op list over a fixed qubit and clbit register."""

    def __init__(self, num_qubits: int, num_clbits: int = 0, ops: list[CircuitOp] | None = None):
        if not 1 <= num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}]")
        if num_clbits < 0:
            raise ValueError("num_clbits must be >= 0")
        self.num_qubits = int(num_qubits)
        self.num_clbits = int(num_clbits)
        self.ops: list[CircuitOp] = list(ops) if ops else []

    def gate(self, name: str, *targets: int) -> "Circuit":
        self.ops.append(CircuitOp(kind="gate", name=name, targets=tuple(targets)))
        return self

    def measure(self, qubit: int, clbit: int) -> "Circuit":
        self.ops.append(CircuitOp(kind="measure", qubit=qubit, clbit=clbit))
        return self

    def cond(self, name: str, targets: int | tuple[int, ...], clbit: int) -> "Circuit":
        if isinstance(targets, int):
            targets = (targets,)
        self.ops.append(CircuitOp(kind="cond", name=name, targets=tuple(targets), clbit=clbit))
        return self

    def extend(self, ops: list[CircuitOp]) -> "Circuit":
        self.ops.extend(ops)
        return self

    def copy(self) -> "Circuit":
        return Circuit(self.num_qubits, self.num_clbits, list(self.ops))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.num_qubits == other.num_qubits
            and self.num_clbits == other.num_clbits
            and self.ops == other.ops
        )

    def __repr__(self) -> str:
        return f"Circuit(qubits={self.num_qubits}, clbits={self.num_clbits}, ops={len(self.ops)})"

    def validate(self) -> None:
        """Check wire ranges and the measure-before-read discipline.

        Each clbit may be written by at most one measurement, and a cond op
        may only read a clbit that was measured earlier in the program.
        """
        written: set[int] = set()
        for i, op in enumerate(self.ops):
            where = f"op {i} ({op.kind})"
            for q in op.targets:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"{where}: qubit {q} out of range")
            if op.kind == "measure":
                if not 0 <= op.qubit < self.num_qubits:
                    raise ValueError(f"{where}: qubit {op.qubit} out of range")
                if not 0 <= op.clbit < self.num_clbits:
                    raise ValueError(f"{where}: clbit {op.clbit} out of range")
                if op.clbit in written:
                    raise ValueError(f"{where}: clbit {op.clbit} written twice")
                written.add(op.clbit)
            elif op.kind == "cond":
                if not 0 <= op.clbit < self.num_clbits:
                    raise ValueError(f"{where}: clbit {op.clbit} out of range")
                if op.clbit not in written:
                    raise ValueError(f"{where}: clbit {op.clbit} read before being measured")

    def to_json(self) -> dict:
        return {
            "qubits": self.num_qubits,
            "clbits": self.num_clbits,
            "ops": [op.to_json() for op in self.ops],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Circuit":
        c = cls(int(obj["qubits"]), int(obj["clbits"]), [CircuitOp.from_json(o) for o in obj["ops"]])
        c.validate()
        return c


def bitstring(code: int, num_clbits: int) -> str:
    """Render a classical register value with clbit 0 rightmost."""
    if num_clbits == 0:
        return ""
    return format(code, f"0{num_clbits}b")


@dataclass(frozen=True)
class Counts:
    """Shot tally keyed by classical bitstring."""

    counts: dict[str, int]
    num_clbits: int

    def __post_init__(self) -> None:
        for key, n in self.counts.items():
            if len(key) != self.num_clbits:
                raise ValueError(f"key {key!r} does not match {self.num_clbits} clbits")
            if n < 0:
                raise ValueError(f"negative count for {key!r}")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def marginal(self, clbit: int) -> "Counts":
        """Counts for a single clbit, keys '0' and '1'."""
        if not 0 <= clbit < self.num_clbits:
            raise ValueError(f"clbit {clbit} out of range")
        out = {"0": 0, "1": 0}
        pos = self.num_clbits - 1 - clbit
        for key, n in self.counts.items():
            out[key[pos]] += n
        return Counts({k: v for k, v in out.items() if v}, 1)

    def p0(self, clbit: int | None = None) -> float:
        """Empirical P(bit = 0); for single-bit counts clbit may be omitted."""
        c = self if clbit is None else self.marginal(clbit)
        if c.num_clbits != 1:
            raise ValueError("p0 without clbit needs single-bit counts")
        total = c.total
        if total == 0:
            raise ValueError("no shots recorded")
        return c.counts.get("0", 0) / total

    def to_json(self) -> dict:
        return {"clbits": self.num_clbits, "counts": {k: self.counts[k] for k in sorted(self.counts)}}

    @classmethod
    def from_json(cls, obj: dict) -> "Counts":
        return cls({str(k): int(v) for k, v in obj["counts"].items()}, int(obj["clbits"]))

    @classmethod
    def from_codes(cls, codes: np.ndarray, num_clbits: int) -> "Counts":
        """Tally integer register values into bitstring counts."""
        tally = np.bincount(codes, minlength=2**num_clbits)
        counts = {bitstring(i, num_clbits): int(n) for i, n in enumerate(tally) if n}
        return cls(counts, num_clbits)


@dataclass(frozen=True)
class RunConfig:
    """Shot-execution settings shared by the simulator entry points."""

    shots: int = 8192
    seed: int = 0
    mode: str = "sampled"

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.mode not in VALID_MODES:
            raise ValueError(f"mode must be one of {VALID_MODES}")
