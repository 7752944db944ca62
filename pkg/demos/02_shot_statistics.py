"""
Shot statistics and reproducibility
===================================

Sampled mode plays the protocol shot by shot with real feedforward:
measure, announce, correct, then read the receiver in Z.  The receiver's
P(0) fluctuates around the analytic value with the usual binomial
spread, and a fixed seed makes every number exactly repeatable.
"""

import math

from qss import ProtocolConfig, aggregate_receiver_counts, receiver_p0, run_protocol

ANALYTIC_P0 = 0.8535533905932737  # cos^2(pi/8)

print(f"analytic receiver P(0) = {ANALYTIC_P0:.6f}")
print()

# Sweep shot counts; the deviation shrinks like 1/sqrt(shots).
print("shots   seed   P(0)       deviation   binomial SE")
for shots, seed in ((1024, 13), (4096, 11), (8192, 7), (65536, 1)):
    cfg = ProtocolConfig(mode="sampled", shots=shots, seed=seed)
    p0 = receiver_p0(run_protocol(cfg))
    se = math.sqrt(ANALYTIC_P0 * (1 - ANALYTIC_P0) / shots)
    print(f"{shots:<7} {seed:<6} {p0:<10.6f} {p0 - ANALYTIC_P0:+.6f}   {se:.6f}")
print()

# Outcome announcements are uniform: each of the eight (bell, x)
# branches collects about an eighth of the shots.
cfg = ProtocolConfig(mode="sampled", shots=8192, seed=7)
transcripts = run_protocol(cfg)
print("branch occupancy at 8192 shots (expected share 0.125):")
for t in transcripts:
    share = t.receiver_counts.total / 8192
    print(f"  bell={t.bell_outcome}  x={t.x_outcome}  share={share:.4f}")
print()

# Same seed, same counts, every time.
again = receiver_p0(run_protocol(cfg))
first = receiver_p0(transcripts)
print(f"rerun with seed 7: P(0) = {again} (identical: {again == first})")

merged = aggregate_receiver_counts(transcripts)
print(f"merged receiver counts: {dict(sorted(merged.counts.items()))}")
