"""Certifying "for every q >= q0" with Sturm sequences."""
from trialitycheck.polyineq import Q, certify_positive_ge, sturm_count

dl = Q**5 - Q**3 + Q - 1
print("d_l =", dl, " d_l(2) =", dl(2))

diff = dl**2 - Q**3 * (Q**2 - 1) * (Q**3 + 1)
print("\n", diff)
for q0 in (1, 2, 3, 4):
    c = certify_positive_ge(diff, q0)
    print(f"  q0={q0}: {c.status}, roots beyond q0 = {c.root_count_ge_threshold}")

b2 = Q**10 - Q**9 - Q**8 - Q**6 - Q**5 - Q**4 + Q**2 - Q - 2
print("\n", b2)
print("  real roots:", sturm_count(b2), " beyond 2:", sturm_count(b2, 2))
print("  ", certify_positive_ge(b2, 2).status)

# a failure carries a witness
bad = certify_positive_ge((Q - 7) * (Q - 9), 2)
print("\n(q-7)(q-9) from 2:", bad.status, "witness", bad.witness)
