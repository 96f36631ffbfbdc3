"""The suspension flow over the two-sided shift, and why it matters.

Under the roof ln(a1 + alpha_minus), time along the flow tracks
ln q_n along the expansion: the Birkhoff sums of the roof differ
from ln q_n by a correction that converges geometrically.  The
denominator crossing of R is then a level crossing of the flow.

Run:  python3 demos/03_special_flow.py
"""

from cfrenewal import (
    FlowPoint,
    NaturalExtPoint,
    birkhoff_sum,
    correction_f,
    flow_evolve,
    renewal_vs_flow_check,
    roof_phi,
    sample_mu2,
    substream,
)

rng = substream(12, 0)

# at the golden point every roof value is ln(1 + g)
gold = NaturalExtPoint.golden()
print(f"golden roof: {roof_phi(gold):.6f} per crossing")
print(f"ten crossings take time {birkhoff_sum(gold, 10):.6f}")

# the correction series f = lim (ln q_n - S_n) converges fast
p = sample_mu2(rng, depth=64)
series = correction_f(p, tol=1e-10)
print("\ncorrection partial sums (every fifth):")
for k in range(0, len(series.partials), 5):
    print(f"  k={k:2d}  f_k = {series.partials[k]:+.10f}")
print(f"limit {series.limit:+.10f} with error bound {series.error_bound:.1e}")

# flowing forward then backward returns to the start
fp = FlowPoint(p, 0.3)
out = flow_evolve(fp, 17.5)
back = flow_evolve(out, -17.5)
defect = max(
    abs(back.base.alpha_minus - fp.base.alpha_minus),
    abs(back.base.alpha_plus - fp.base.alpha_plus),
    abs(back.height - fp.height),
)
print(f"\nafter t = +17.5 then -17.5, the round-trip defect is {defect:.2e}")

# the crossing of R happens exactly when the flow passes ln R - f
print("\ndenominator crossings vs flow level crossings:")
for R in (1e3, 1e6, 1e9):
    rep = renewal_vs_flow_check(p, R, series.limit)
    mark = "agree" if rep.agree else "DISAGREE"
    print(f"  R = {R:<8g} n_R = {rep.n_R:3d} flow count = {rep.renewal_r:3d} "
          f"({mark}, defect {rep.defect:.1e} <= bound {rep.defect_bound:.1e})")
