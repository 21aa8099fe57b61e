"""Exact character sums at small q and the constraints they must satisfy."""
from trialitycheck.charsum import (
    SumContext,
    derive_m,
    eval_y,
    families_for,
    k_range,
    scalar_product_eps2,
)

for q in (2, 3, 4, 5):
    ctx = SumContext.build(q)
    for fam in families_for(ctx.tower.pp):
        for k in k_range(ctx.tower.pp, fam):
            y = eval_y(fam, k, ctx)
            m = derive_m(y, q, fam)
            sp = scalar_product_eps2(y, q, fam)
            print(f"q={q} {fam.value:9s} k={k}  y={y:7d}  m={m:3d}  <,eps2>={sp}")

# the exact value is a cyclotomic integer before it collapses to Z
ctx = SumContext.build(3)
z = ctx.exact(families_for(ctx.tower.pp)[0], 1)
print("\nraw cyclotomic coordinates:", z.coeffs)

# a float evaluation built from a separate multiplication table agrees
est = ctx.oracle.estimate(families_for(ctx.tower.pp)[0], 1)
print("float estimate:", round(est.real, 6), round(est.imag, 6))
