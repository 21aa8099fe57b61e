"""A walk through the field tower F_q < F_{q^3}.

Run with ``python3 demos/field_tower_tour.py``.
"""
import numpy as np

from trialitycheck.field_tower import Tower, abs_trace, rel_trace_to_mid, subfield_norm

tower = Tower.build(4)
f3 = tower.f3
print("F_64 modulus (constant term first):", f3.modulus)
print("tau =", tower.tau.coeffs, " pi = tau^(q^2+q+1) =", tower.pi.coeffs)

# powers of tau hit every nonzero element once
seen = np.unique(f3.exp_table[: f3.order])
print("distinct powers of tau:", len(seen), "of", f3.size - 1)

# x_1 .. x_q are the embedded elements of F_4
for k in range(1, tower.q + 1):
    print(f"x_{k} ->", tower.xk(k).coeffs)

a = f3.elem(37)
print("Tr(a) =", abs_trace(a))
print("relative trace lands in F_4:", rel_trace_to_mid(a, 4) ** 4 == rel_trace_to_mid(a, 4))
print("norm lands in F_4:", subfield_norm(a, 4) ** 4 == subfield_norm(a, 4))

# the full trace distribution is flat: p^(m-1) elements per value
traces = [abs_trace(x) for x in f3.elements()]
print("trace histogram:", np.bincount(traces))
