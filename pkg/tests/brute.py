"""Term-by-term reference evaluation of the character sums.

Walks every (i, j, s) with element arithmetic and accumulates additive
character values as cyclotomic integers.  Slow, but shares nothing with the
counting kernel beyond the field and the choice of tau and twist.
"""

from __future__ import annotations

from trialitycheck.charsum import Family, SumContext
from trialitycheck.cyclotomic import CycInt, additive_char


def brute_sum(ctx: SumContext, family: Family, k: int) -> CycInt:
    tower = ctx.tower
    q, f3 = tower.q, tower.f3
    N = q * q + q + 1
    tau = tower.tau
    pi = tau**N
    twist = f3.elem(ctx.twist_code)
    total = CycInt.zero(f3.p)
    if family is Family.CHI16_EVEN:
        xk = tower.xk(k)
        for i in range(1, q**3):
            for j in range(1, q):
                for s in f3.elements():
                    arg = tau ** ((-q * q + q + 1) * i) * s ** (q + 1) + xk * pi ** (2 * j - i) + pi ** (i - j) * s**N
                    total = total + additive_char(arg, twist)
    elif family is Family.CHI18_19_ODD:
        for i in range(1, q**3):
            for j in range(1, (q - 1) // 2 + 1):
                for s in f3.elements():
                    arg = -(tau ** ((-q * q - q + 1) * i) * pi**j * s) - pi ** (i - j + k) * s**N
                    total = total + additive_char(arg, twist)
    else:
        shift = 0 if k <= (q - 1) // 2 else 1
        for i in range(1, q**3):
            for j in range(1, q):
                for s in f3.elements():
                    arg = (pi ** (2 * j - i + k) - tau ** ((-q * q - q + 1) * i) * pi**j * s
                           - pi ** (i - j + shift) * s**N)
                    total = total + additive_char(arg, twist)
    return total
