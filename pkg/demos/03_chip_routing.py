"""
Fitting the circuit onto a five-qubit chip
==========================================

Real devices only run CNOTs along directed edges of a coupling graph.
This demo routes the measurement-free protocol circuit onto a bowtie
shaped five-qubit layout: distant qubits are brought together by SWAP
chains, and wrong-way CNOTs are repaired with Hadamard sandwiches.
The routed circuit is then re-verified against the original unitary.
"""

from qss import ProtocolConfig, assemble_circuit, check_routing, route
from qss.datasets import load_ibmqx4_coupling

graph = load_ibmqx4_coupling()
print(f"chip: {graph.num_physical} qubits, directed edges {list(graph.edges)}")
print()

circuit = assemble_circuit(ProtocolConfig(mode="coherent"))
print(f"logical circuit: {len(circuit.ops)} gates on {circuit.num_qubits} qubits")
for op in circuit.ops:
    print(f"  {op.name} {op.targets}")
print()

report = route(circuit, graph)
print(
    f"routed: {len(report.circuit.ops)} gates, "
    f"{report.swaps} swap inserted, {report.reversals} control reversal "
    f"({report.h_pairs} Hadamard pairs)"
)
print(f"initial layout: {report.initial_layout}")
print(f"final layout:   {report.final_layout}")
print()

print("routed gate list (physical wires):")
for op in report.circuit.ops:
    print(f"  {op.name} {op.targets}")
print()

# The checker re-simulates both circuits and compares unitaries up to a
# global phase and the reported wire permutation.
result = check_routing(circuit, report, graph)
print(f"edge-legal: {result.legal}")
print(f"equivalent to the original: {result.equivalent}")
if result.violations:
    for v in result.violations:
        print("  violation:", v)
