"""Stable and unstable leaves, holonomy, and correlation decay.

The flow contracts stable leaves and expands unstable ones; almost
every nearby pair of points can be joined by a three-hop chain of
leaves, and correlations between sets die off along the flow.

Run:  python3 demos/05_mixing.py  (a few seconds)
"""

from cfrenewal import (
    BoxSpec,
    FlowPoint,
    NaturalExtPoint,
    connect_via_leaves,
    correlation_estimate,
    flow_pair_distance,
    holonomy_invariant,
    roof_phi,
    sample_mu2,
    stable_leaf_point,
    substream,
)

rng = substream(41, 0)

# a stable pair collapses under the forward flow
p = sample_mu2(rng, depth=128)
fp = FlowPoint(p, 0.5 * roof_phi(p))
mate = stable_leaf_point(fp, 0.25 + 0.5 * p.alpha_minus)
print("distance along a stable pair:")
for t in (0.0, 5.0, 10.0, 20.0, 30.0):
    print(f"  t = {t:4.1f}  d = {flow_pair_distance(fp, mate, t):.3e}")
h1, h2 = holonomy_invariant(fp), holonomy_invariant(mate)
print(f"holonomy invariant along the leaf: {h1:.12f} vs {h2:.12f}")

# a three-hop chain joins two nearby generic points
start = FlowPoint(NaturalExtPoint.from_values(0.35, 0.35), 0.25)
target = FlowPoint(NaturalExtPoint.from_values(0.40, 0.40), 0.25)
mid1, mid2 = connect_via_leaves(start, target)
print("\nchain corners between two nearby points:")
for name, q in (("start", start), ("mid1", mid1), ("mid2", mid2),
                ("target", target)):
    print(f"  {name:6s} am={q.base.alpha_minus:.6f} "
          f"ap={q.base.alpha_plus:.6f} y={q.height:.6f} "
          f"H={holonomy_invariant(q):.6f}")

# correlations between two boxes decay along the flow
A = BoxSpec(plus_digits=(1,), y_hi=0.45)
B = BoxSpec(plus_digits=(2,), y_hi=0.45)
print("\ncorrelation of [a1=1] and [a1=2] boxes under the flow:")
for t in (0.0, 1.0, 3.0, 7.0, 12.0, 20.0):
    c = correlation_estimate(A, B, t=t, M=1_000_000, seed=41)
    print(f"  t = {t:4.1f}  corr = {c.value:+.6f} +- {c.stderr:.6f}")
print("the t=0 value is exactly -mass_A * mass_B: disjoint boxes")
