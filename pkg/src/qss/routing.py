"""Routing onto a directed coupling graph.

Devices in this family run a CNOT only along a directed edge, so circuits
are rewritten in three moves: flip a CNOT by Hadamard conjugation when only
the opposite direction exists, decompose a SWAP into three alternating CNOTs
with flips where needed, and walk distant operand pairs together along a
shortest undirected path.  Path ties prefer fewer direction flips, then the
lexicographically smallest path, so routing is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, CircuitOp
from .simulate import matrices_equal_up_to_phase, unitary_of


@dataclass(frozen=True)
class CouplingGraph:
    """Directed edges (control, target) over a fixed physical register."""

    num_physical: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.num_physical < 1:
            raise ValueError("num_physical must be >= 1")
        seen: set[tuple[int, int]] = set()
        norm = []
        for c, t in self.edges:
            c, t = int(c), int(t)
            if not (0 <= c < self.num_physical and 0 <= t < self.num_physical) or c == t:
                raise ValueError(f"bad edge ({c}, {t})")
            if (c, t) in seen:
                raise ValueError(f"duplicate edge ({c}, {t})")
            seen.add((c, t))
            norm.append((c, t))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_edge_set", frozenset(seen))

    def allows(self, control: int, target: int) -> bool:
        """True when a CNOT with this orientation is native."""
        return (control, target) in self._edge_set

    def has_link(self, a: int, b: int) -> bool:
        """True when the two qubits are adjacent in either direction."""
        return self.allows(a, b) or self.allows(b, a)

    def neighbors(self, q: int) -> list[int]:
        out = {t for c, t in self.edges if c == q} | {c for c, t in self.edges if t == q}
        return sorted(out)

    def shortest_paths(self, start: int, goal: int) -> list[list[int]]:
        """All shortest undirected paths, sorted lexicographically."""
        if start == goal:
            return [[start]]
        dist = {start: 0}
        frontier = [start]
        while frontier and goal not in dist:
            nxt = []
            for u in frontier:
                for v in self.neighbors(u):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        if goal not in dist:
            raise ValueError(f"qubits {start} and {goal} are not connected")
        paths: list[list[int]] = []

        def grow(path: list[int]) -> None:
            u = path[-1]
            if u == goal:
                paths.append(list(path))
                return
            for v in self.neighbors(u):
                if dist.get(v) == dist[u] + 1:
                    path.append(v)
                    grow(path)
                    path.pop()

        grow([start])
        return sorted(paths)

    def to_json(self) -> dict:
        return {"qubits": self.num_physical, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "CouplingGraph":
        return cls(int(obj["qubits"]), tuple((int(c), int(t)) for c, t in obj["edges"]))


class QubitMapping:
    """Injective placement of logical wires onto physical wires."""

    def __init__(self, l2p: dict[int, int], num_physical: int):
        if len(set(l2p.values())) != len(l2p):
            raise ValueError("mapping is not injective")
        for q, p in l2p.items():
            if not 0 <= p < num_physical:
                raise ValueError(f"physical qubit {p} out of range")
            if q < 0:
                raise ValueError(f"bad logical qubit {q}")
        self.num_physical = num_physical
        self.l2p = dict(l2p)
        self.p2l = {p: q for q, p in l2p.items()}

    @classmethod
    def identity(cls, num_logical: int, num_physical: int) -> "QubitMapping":
        return cls({q: q for q in range(num_logical)}, num_physical)

    def physical(self, logical: int) -> int:
        return self.l2p[logical]

    def swap_physical(self, pa: int, pb: int) -> None:
        """Record that a SWAP exchanged two physical wires."""
        la, lb = self.p2l.get(pa), self.p2l.get(pb)
        if la is not None:
            self.l2p[la] = pb
        if lb is not None:
            self.l2p[lb] = pa
        self.p2l = {p: q for q, p in self.l2p.items()}

    def copy(self) -> "QubitMapping":
        return QubitMapping(dict(self.l2p), self.num_physical)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QubitMapping):
            return NotImplemented
        return self.l2p == other.l2p and self.num_physical == other.num_physical

    def to_json(self) -> dict:
        return {str(q): p for q, p in sorted(self.l2p.items())}

    @classmethod
    def from_json(cls, obj: dict, num_physical: int) -> "QubitMapping":
        return cls({int(q): int(p) for q, p in obj.items()}, num_physical)


@dataclass
class TranspileReport:
    """Routing result: the rewritten circuit, layouts, and rewrite tallies."""

    circuit: Circuit
    initial_layout: dict[int, int]
    final_layout: dict[int, int]
    swaps: int = 0
    reversals: int = 0

    @property
    def h_pairs(self) -> int:
        """Hadamard pairs added by control flips (two pairs per flip)."""
        return 2 * self.reversals

    def to_json(self) -> dict:
        return {
            "circuit": self.circuit.to_json(),
            "initial_layout": {str(q): p for q, p in sorted(self.initial_layout.items())},
            "final_layout": {str(q): p for q, p in sorted(self.final_layout.items())},
            "swaps": self.swaps,
            "reversals": self.reversals,
            "h_pairs": self.h_pairs,
        }


def _cond_aware(kind: str, name: str, targets: tuple[int, ...], clbit: int | None) -> CircuitOp:
    if kind == "cond":
        return CircuitOp(kind="cond", name=name, targets=targets, clbit=clbit)
    return CircuitOp(kind="gate", name=name, targets=targets)


def _reversed_cnot(control: int, target: int, kind: str = "gate", clbit: int | None = None) -> list[CircuitOp]:
    return [
        _cond_aware(kind, "H", (control,), clbit),
        _cond_aware(kind, "H", (target,), clbit),
        _cond_aware(kind, "CNOT", (target, control), clbit),
        _cond_aware(kind, "H", (control,), clbit),
        _cond_aware(kind, "H", (target,), clbit),
    ]


def reverse_control(control: int, target: int) -> list[CircuitOp]:
    """CNOT(control -> target) realized through the opposite orientation.

    Emits H(control), H(target), CNOT(target -> control), H(control),
    H(target); unitary-equal to the requested CNOT.
    """
    return _reversed_cnot(control, target)


def decompose_swap(a: int, b: int, graph: CouplingGraph) -> list[CircuitOp]:
    """SWAP(a, b) as three alternating CNOTs legal on a directed edge.

    The shape is CNOT(a->b), CNOT(b->a), CNOT(a->b), with reverse_control
    substituted for whichever orientation the graph lacks.
    """
    if not graph.has_link(a, b):
        raise ValueError(f"qubits {a} and {b} are not adjacent")

    def cnot(c: int, t: int) -> list[CircuitOp]:
        if graph.allows(c, t):
            return [CircuitOp(kind="gate", name="CNOT", targets=(c, t))]
        return reverse_control(c, t)

    return cnot(a, b) + cnot(b, a) + cnot(a, b)


def _swap_flip_count(graph: CouplingGraph, a: int, b: int) -> int:
    """Direction flips a SWAP needs on this edge, given a good orientation."""
    return 0 if (graph.allows(a, b) and graph.allows(b, a)) else 1


def _oriented(graph: CouplingGraph, a: int, b: int) -> tuple[int, int]:
    """Argument order that leaves only the middle CNOT flipped, if any."""
    return (a, b) if graph.allows(a, b) else (b, a)


def _path_cost(graph: CouplingGraph, path: list[int], name: str) -> int:
    cost = sum(_swap_flip_count(graph, path[i], path[i + 1]) for i in range(len(path) - 2))
    if name == "CNOT" and not graph.allows(path[-2], path[-1]):
        cost += 1
    return cost


def _require_terminal_measures(circuit: Circuit) -> None:
    tail = False
    for op in circuit.ops:
        if op.kind in ("measure", "cond"):
            tail = True
        elif tail:
            raise ValueError("measurements must be terminal for routing")


def route(circuit: Circuit, graph: CouplingGraph, initial: QubitMapping | None = None) -> TranspileReport:
    """Rewrite a circuit so every two-qubit op sits on a native directed edge.

    Distant operand pairs are joined by swapping the first operand along a
    shortest undirected path; the report's final layout says where each
    logical wire ended up.
    """
    circuit.validate()
    _require_terminal_measures(circuit)
    if circuit.num_qubits > graph.num_physical:
        raise ValueError(f"circuit needs {circuit.num_qubits} qubits, device has {graph.num_physical}")
    if initial is None:
        mapping = QubitMapping.identity(circuit.num_qubits, graph.num_physical)
    else:
        mapping = initial.copy()
        for q in range(circuit.num_qubits):
            if q not in mapping.l2p:
                raise ValueError(f"initial mapping does not place logical qubit {q}")

    out = Circuit(graph.num_physical, circuit.num_clbits)
    report = TranspileReport(
        circuit=out,
        initial_layout=dict(mapping.l2p),
        final_layout={},
    )

    for op in circuit.ops:
        if op.kind == "measure":
            out.measure(mapping.physical(op.qubit), op.clbit)
            continue
        if len(op.targets) == 1:
            out.ops.append(_cond_aware(op.kind, op.name, (mapping.physical(op.targets[0]),), op.clbit))
            continue

        pc, pt = (mapping.physical(q) for q in op.targets)
        if not graph.has_link(pc, pt):
            if op.kind == "cond":
                raise ValueError("cannot route a conditioned two-qubit gate over non-adjacent wires")
            paths = graph.shortest_paths(pc, pt)
            path = min(paths, key=lambda p: (_path_cost(graph, p, op.name), p))
            for i in range(len(path) - 2):
                u, v = _oriented(graph, path[i], path[i + 1])
                out.ops.extend(decompose_swap(u, v, graph))
                mapping.swap_physical(u, v)
                report.swaps += 1
                report.reversals += _swap_flip_count(graph, u, v)
            pc, pt = (mapping.physical(q) for q in op.targets)

        if op.name == "CNOT":
            if graph.allows(pc, pt):
                out.ops.append(_cond_aware(op.kind, "CNOT", (pc, pt), op.clbit))
            else:
                out.ops.extend(_reversed_cnot(pc, pt, kind=op.kind, clbit=op.clbit))
                report.reversals += 1
        elif op.name == "CZ":
            c, t = (pc, pt) if graph.allows(pc, pt) else (pt, pc)
            out.ops.append(_cond_aware(op.kind, "CZ", (c, t), op.clbit))
        elif op.name == "SWAP":
            # A SWAP from the source circuit is a logical gate, not a
            # mapping move: emit it on the (now adjacent) pair and leave
            # the layout alone.
            out.ops.append(_cond_aware(op.kind, "SWAP", (pc, pt), op.clbit))
        else:
            raise ValueError(f"unsupported two-qubit gate {op.name}")

    report.final_layout = dict(mapping.l2p)
    out.validate()
    return report


def _embedding(layout: dict[int, int], num_logical: int, num_physical: int) -> np.ndarray:
    """Isometry placing logical basis states on their physical wires."""
    e = np.zeros((2**num_physical, 2**num_logical), dtype=complex)
    for code in range(2**num_logical):
        p_code = 0
        for q in range(num_logical):
            if (code >> q) & 1:
                p_code |= 1 << layout[q]
        e[p_code, code] = 1.0
    return e


@dataclass(frozen=True)
class RoutingCheck:
    legal: bool
    equivalent: bool
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.legal and self.equivalent


def check_routing(original: Circuit, report: TranspileReport, graph: CouplingGraph, atol: float = 1e-10) -> RoutingCheck:
    """Confirm edge legality and unitary equivalence of a routing result.

    Legality inspects every two-qubit op in the routed circuit.  Equivalence
    compares the gate-only parts as matrices: routed composed with the
    initial embedding must equal the final embedding composed with the
    original, up to one global phase.
    """
    routed = report.circuit
    violations = []
    for i, op in enumerate(routed.ops):
        if len(op.targets) != 2:
            continue
        c, t = op.targets
        if op.name in ("CZ", "SWAP"):
            if not graph.has_link(c, t):
                violations.append(f"op {i}: {op.name} on non-adjacent ({c}, {t})")
        elif not graph.allows(c, t):
            violations.append(f"op {i}: CNOT against edge direction ({c}, {t})")

    def gates_only(circ: Circuit) -> Circuit:
        return Circuit(circ.num_qubits, 0, [op for op in circ.ops if op.kind == "gate"])

    u_orig = unitary_of(gates_only(original))
    u_routed = unitary_of(gates_only(routed))
    e_init = _embedding(report.initial_layout, original.num_qubits, routed.num_qubits)
    e_final = _embedding(report.final_layout, original.num_qubits, routed.num_qubits)
    equivalent = matrices_equal_up_to_phase(u_routed @ e_init, e_final @ u_orig, atol=atol)
    return RoutingCheck(legal=not violations, equivalent=equivalent, violations=tuple(violations))
