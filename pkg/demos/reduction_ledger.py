"""The degree-bound ledger: each case numerically and symbolically."""
from trialitycheck.field_tower import prime_powers_upto
from trialitycheck.ledger import check_case, check_case_symbolic, ledger_cases

qs = prime_powers_upto(100)
for case in ledger_cases():
    statuses = [check_case(case.id, q).status for q in qs]
    sym = check_case_symbolic(case.id).status
    print(f"{case.id:15s} numeric verified at {statuses.count('verified'):2d} q, "
          f"violated at {statuses.count('violated')}, symbolic {sym}")

print()
for d in check_case("TORUS_SU3", 2).details:
    print(" ", d["check"], d["lhs"], d["rel"], d["rhs"])
