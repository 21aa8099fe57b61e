"""Degree-bound inequalities eliminating maximal subgroups of 3D4(q).

Every quantitative step is a :class:`LedgerCase`.  A case can be checked
numerically at one q (exact integer arithmetic) or symbolically, where each
polynomial inequality is certified for all real q beyond its threshold and
the finitely many exceptional rows are checked directly.  Comparisons with a
square root are stored squared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .charsum import Family, m_bounds
from .field_tower import PrimePower
from .polyineq import IntPoly, Q, certify_positive_ge

# Degrees of the 3-modular and complex irreducibles of 3D4(2) of degree at
# most 36, read off the published character tables; not recomputed here.
ATLAS_3D4_2_DEGREE_ELL_3 = 25
ATLAS_3D4_2_DEGREE_ELL_NOT_3 = 26
ORDER_2S4 = 48
ORDER_SL2_3 = 24

DL_POLY = Q**5 - Q**3 + Q - 1
D4_ORDER_POLY = Q**12 * (Q**6 - 1) ** 2 * (Q**4 - Q**2 + 1)
G2_ORDER_POLY = Q**6 * (Q**6 - 1) * (Q**2 - 1)
PARA_Q_ORDER_POLY = Q**12 * (Q**3 - 1) * (Q**2 - 1)

_ORDERS: dict[str, Callable[[int], int]] = {
    "D4_3": lambda q: D4_ORDER_POLY(q),
    "G2": lambda q: G2_ORDER_POLY(q),
    "PGL3_PLUS": lambda q: q**3 * (q**2 - 1) * (q**3 - 1),
    "PGL3_MINUS": lambda q: q**3 * (q**2 - 1) * (q**3 + 1),
    "SL3": lambda q: q**3 * (q**2 - 1) * (q**3 - 1),
    "SU3": lambda q: q**3 * (q**2 - 1) * (q**3 + 1),
    "L2": lambda q: q * (q**2 - 1) // math.gcd(2, q - 1),
    "PARA_P": lambda q: q**12 * (q**6 - 1) * (q - 1),
    "PARA_Q": lambda q: PARA_Q_ORDER_POLY(q),
    "NORM_TORUS_PLUS": lambda q: (q**2 + q + 1) ** 2 * ORDER_SL2_3,
    "NORM_TORUS_MINUS": lambda q: (q**2 - q + 1) ** 2 * ORDER_SL2_3,
    "TORUS_Z4": lambda q: (q**4 - q**2 + 1) * 4,
}
GROUP_NAMES = tuple(_ORDERS)


def _check_q(q: int | PrimePower) -> int:
    if isinstance(q, PrimePower):
        return q.q
    PrimePower.from_q(q)
    return q


def group_order(name: str, q: int | PrimePower) -> int:
    if name not in _ORDERS:
        raise KeyError(f"unknown group {name!r}")
    return _ORDERS[name](_check_q(q))


def mc_upper(name: str, q: int | PrimePower) -> int:
    """Largest complex irreducible degree (or the bound used for it)."""
    q = _check_q(q)
    if name == "SL3":
        return {2: 8, 3: 39, 4: 84}.get(q, (q + 1) * (q * q + q + 1))
    if name == "SU3":
        return 8 if q == 2 else (q + 1) ** 2 * (q - 1)
    if name == "L2":
        return {2: 2, 3: 3, 5: 5}.get(q, q + 1)
    raise KeyError(f"no degree table for {name!r}")


def dl_lower(q: int | PrimePower) -> int:
    """Lower bound q^5 - q^3 + q - 1 on the smallest nontrivial degree of 3D4(q)."""
    q = q.q if isinstance(q, PrimePower) else q
    return DL_POLY(q)


def f_plus(q: int) -> int:
    return math.gcd(3, q * q + q + 1)


def f_minus(q: int) -> int:
    return math.gcd(3, q * q - q + 1)


@dataclass(frozen=True)
class Check:
    """One exact comparison ``lhs rel rhs``."""

    label: str
    lhs: int
    rel: str
    rhs: int

    @property
    def ok(self) -> bool:
        a, b = self.lhs, self.rhs
        if self.rel == "|":
            return a != 0 and b % a == 0
        if self.rel == "!|":
            return a != 0 and b % a != 0
        return {"<": a < b, "<=": a <= b, ">": a > b, "==": a == b}[self.rel]

    def as_dict(self) -> dict:
        return {"check": self.label, "lhs": self.lhs, "rel": self.rel, "rhs": self.rhs, "ok": self.ok}


@dataclass(frozen=True)
class Certificate:
    """``poly > 0`` for all real q >= threshold; ``squared`` notes a squared side."""

    label: str
    poly: IntPoly
    threshold: int
    squared: str = ""


@dataclass
class LedgerCase:
    id: str
    description: str
    kind: str
    applies: Callable[[int], bool]
    numeric: Callable[[int], list[Check]]
    certificates: list[Certificate] = field(default_factory=list)
    rows: Callable[[], list[Check]] = lambda: []
    spot: list[tuple[int, str]] = field(default_factory=list)


@dataclass
class Verdict:
    case_id: str
    mode: str
    status: str
    q: int | None = None
    details: list[dict] = field(default_factory=list)


def _is_power_of_prime_exponent(q: int) -> tuple[int, int] | None:
    """(q0, alpha) with q = q0^alpha, alpha prime >= 5, q0 a prime power."""
    pp = PrimePower.from_q(q)
    for alpha in (5, 7, 11, 13, 17, 19, 23):
        if pp.f % alpha == 0:
            return pp.p ** (pp.f // alpha), alpha
    return None


# -- numeric checks per case --------------------------------------------------


def _pgl3(q: int) -> list[Check]:
    d2 = dl_lower(q) ** 2
    name = "PGL3_PLUS" if q % 3 == 1 else "PGL3_MINUS"
    return [
        Check(f"|{name}| < d_l^2", group_order(name, q), "<", d2),
        Check("q^3(q^2-1)(q^3+1) < d_l^2", q**3 * (q**2 - 1) * (q**3 + 1), "<", d2),
    ]


def _d4_subfield(q: int) -> list[Check]:
    q0, alpha = _is_power_of_prime_exponent(q)  # type: ignore[misc]
    return _d4_subfield_rows(q0, alpha)


def _d4_subfield_rows(q0: int, alpha: int) -> list[Check]:
    q = q0**alpha
    return [
        Check(f"|3D4({q0})| < {q0}^28", group_order("D4_3", q0), "<", q0**28),
        # m(M) <= q0^14 = q^(14/alpha) <= q^(14/5), compared as fifth powers
        Check(f"q0^70 <= q^14 (alpha={alpha})", q0**70, "<=", q**14),
        Check(f"q^14 < d_l({q})^5", q**14, "<", dl_lower(q) ** 5),
        Check(f"{q0}^14 < d_l({q})", q0**14, "<", dl_lower(q)),
    ]


def _l2xl2(q: int) -> list[Check]:
    m = mc_upper("L2", q**3) * mc_upper("L2", q)
    return [Check("m(L2(q^3)) m(L2(q)) < d_l", m, "<", dl_lower(q))]


def _torus_sl3(q: int) -> list[Check]:
    return [Check("2 f+ m(SL3(q)) < d_l", 2 * f_plus(q) * mc_upper("SL3", q), "<", dl_lower(q))]


def _su3_q2_facts() -> list[Check]:
    order_m = 2 * f_minus(2) * group_order("SU3", 2)  # Z_3 o SU3(2) has order |SU3(2)|
    root = math.isqrt(order_m)
    return [
        Check("|M| = 2 f- |SU3(2)|", order_m, "==", 1296),
        Check("26 does not divide |M|", ATLAS_3D4_2_DEGREE_ELL_NOT_3, "!|", order_m),
        Check("isqrt(|M|)^2 = |M|", root * root, "==", order_m),
        Check("sqrt(|M|) = 36", root, "==", 36),
        Check("degree 25 (l = 3) <= 36", ATLAS_3D4_2_DEGREE_ELL_3, "<=", root),
        Check("degree 26 (l != 3) <= 36", ATLAS_3D4_2_DEGREE_ELL_NOT_3, "<=", root),
        Check("|2S4| < 7^2", ORDER_2S4, "<", 49),
        Check("7 < 25", 7, "<", ATLAS_3D4_2_DEGREE_ELL_3),
    ]


def _torus_su3(q: int) -> list[Check]:
    if q == 2:
        return _su3_q2_facts()
    return [Check("2 f- m(SU3(q)) < d_l", 2 * f_minus(q) * mc_upper("SU3", q), "<", dl_lower(q))]


def _torus_sl23(q: int) -> list[Check]:
    return [Check("|SL2(3)| < d_l", ORDER_SL2_3, "<", dl_lower(q))]


def _torus_z4(q: int) -> list[Check]:
    return [Check("4 < d_l", 4, "<", dl_lower(q))]


def _g2(q: int) -> list[Check]:
    return [
        Check("|G2(q)| < q^14", group_order("G2", q), "<", q**14),
        Check("q^7 < q^8+q^4+1", q**7, "<", q**8 + q**4 + 1),
    ]


def _b1(q: int) -> list[Check]:
    return [
        Check("|3D4(q)| < q^28", group_order("D4_3", q), "<", q**28),
        Check("2 q^14 < (q^2-1) q^8 (q^6-1)", 2 * q**14, "<", (q**2 - 1) * q**8 * (q**6 - 1)),
    ]


def _b2(q: int) -> list[Check]:
    return [Check("(q+1)(q^8+q^4+1) < q^2(q^8-q^4+1)-1",
                  (q + 1) * (q**8 + q**4 + 1), "<", q**2 * (q**8 - q**4 + 1) - 1)]


def _uv(q: int, family: Family, chi_u: int) -> list[Check]:
    lo, _ = m_bounds(q, family)
    chi_v_min = lo * q * (q**3 - 1)
    return [Check(f"chi(u) < min chi(v) [{family.value}]", chi_u, "<", chi_v_min)]


def _uv_1819(q: int) -> list[Check]:
    return _uv(q, Family.CHI18_19_ODD, -(q**3 * (q**3 - 1) // 2))


def _uv_20_16(q: int) -> list[Check]:
    fam = Family.CHI16_EVEN if q % 2 == 0 else Family.CHI20_ODD
    return _uv(q, fam, -q**3 * (q**3 - 1))


def _degree_from_u(q: int) -> list[Check]:
    order_q = group_order("PARA_Q", q)
    out = []
    chi_us = [("chi16/chi20", -q**3 * (q**3 - 1))]
    if q % 2:
        chi_us.append(("chi18/chi19", -(q**3 * (q**3 - 1) // 2)))
    for label, chi_u in chi_us:
        deg = -(q**2 - 1) * chi_u
        out += [
            Check(f"chi(1) > 0 [{label}]", 0, "<", deg),
            Check(f"chi(1) < |Q| [{label}]", deg, "<", order_q),
            Check(f"chi(1) divides |Q| [{label}]", deg, "|", order_q),
        ]
    return out


def _rows_at(fn: Callable[[int], list[Check]], qs: list[int]) -> Callable[[], list[Check]]:
    def rows() -> list[Check]:
        out = []
        for q in qs:
            out += [Check(f"q={q}: {c.label}", c.lhs, c.rel, c.rhs) for c in fn(q)]
        return out
    return rows


def _d4_rows() -> list[Check]:
    out = []
    for q0 in (2, 3, 4, 5, 7):
        for alpha in (5, 7):
            out += [Check(f"q0={q0}, alpha={alpha}: {c.label}", c.lhs, c.rel, c.rhs)
                    for c in _d4_subfield_rows(q0, alpha)]
    return out


def ledger_cases() -> list[LedgerCase]:
    dl = DL_POLY
    return [
        LedgerCase(
            "PGL3", "PGL3^eps(q) with 4 <= q = eps 1 mod 3: sqrt|M| < d_l",
            "polynomial-certificate",
            applies=lambda q: q >= 4 and q % 3 != 0,
            numeric=_pgl3,
            certificates=[Certificate("d_l^2 - q^3(q^2-1)(q^3+1)", dl**2 - Q**3 * (Q**2 - 1) * (Q**3 + 1), 4,
                                      squared="both sides of sqrt|M| < d_l")],
            spot=[(4, "62400 < 963^2")],
        ),
        LedgerCase(
            "D4_SUBFIELD_A5", "3D4(q0) with q = q0^alpha, alpha prime >= 5: q0^14 < q^(14/5) < d_l",
            "polynomial-certificate",
            applies=lambda q: _is_power_of_prime_exponent(q) is not None,
            numeric=_d4_subfield,
            certificates=[
                Certificate("q0^28 - |3D4(q0)|", Q**28 - D4_ORDER_POLY, 2, squared="sqrt|M| < q0^14"),
                Certificate("q0^25 - q0^15 - q0^14", Q**25 - Q**15 - Q**14, 2),
                Certificate("d_l(q0^5) - (q0^25 - q0^15)", dl.compose(Q**5) - (Q**25 - Q**15), 2),
                Certificate("d/dq d_l (monotone in alpha)", dl.derivative(), 1),
            ],
            rows=_d4_rows,
            spot=[(32, "2^14 < d_l(32)")],
        ),
        LedgerCase(
            "L2xL2", "L2(q^3) x L2(q), q even: m(M) < d_l",
            "polynomial-certificate",
            applies=lambda q: q % 2 == 0,
            numeric=_l2xl2,
            certificates=[Certificate("d_l - (q+1)(q^3+1)", dl - (Q + 1) * (Q**3 + 1), 4)],
            rows=_rows_at(_l2xl2, [2]),
            spot=[(2, "18 < 25")],
        ),
        LedgerCase(
            "TORUS_SL3", "(Z_{q^2+q+1} o SL3(q)).f+.2: 2 f+ m(SL3(q)) < d_l",
            "finite-table",
            applies=lambda q: q >= 2,
            numeric=_torus_sl3,
            certificates=[Certificate("d_l - 6(q+1)(q^2+q+1)", dl - 6 * (Q + 1) * (Q**2 + Q + 1), 5)],
            rows=_rows_at(_torus_sl3, [2, 3, 4]),
            spot=[(4, "2*3*84 = 504 < 963")],
        ),
        LedgerCase(
            "TORUS_SU3", "(Z_{q^2-q+1} o SU3(q)).f-.2: 2 f- m(SU3(q)) < d_l, and the q = 2 facts",
            "finite-table",
            applies=lambda q: q >= 2,
            numeric=_torus_su3,
            certificates=[Certificate("d_l - 6(q+1)^2(q-1)", dl - 6 * (Q + 1) ** 2 * (Q - 1), 5)],
            rows=_rows_at(_torus_su3, [2, 3, 4]),
            spot=[(2, "26 does not divide 1296"), (3, "64 < 218")],
        ),
        LedgerCase(
            "TORUS_SL23", "(Z_{q^2 +- q+1})^2.SL2(3): m(M) <= 24 < d_l",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_torus_sl23,
            certificates=[Certificate("d_l - 24", dl - ORDER_SL2_3, 2)],
            spot=[(2, "24 < 25")],
        ),
        LedgerCase(
            "TORUS_Z4", "Z_{q^4-q^2+1}.4: m(M) <= 4 < d_l",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_torus_z4,
            certificates=[Certificate("d_l - 4", dl - 4, 2)],
            spot=[(2, "4 < 25")],
        ),
        LedgerCase(
            "G2_DEGREE", "G2(q): sqrt|M| < q^7 < q^8+q^4+1",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_g2,
            certificates=[
                Certificate("q^14 - |G2(q)|", Q**14 - G2_ORDER_POLY, 2, squared="sqrt|G2(q)| < q^7"),
                Certificate("q^8+q^4+1 - q^7", Q**8 + Q**4 + 1 - Q**7, 2),
            ],
            spot=[(2, "12096 < 16384")],
        ),
        LedgerCase(
            "SUBFIELD_B1", "3D4(q) < 3D4(q^2): (q^2-1)q^8(q^6-1)/2 > q^14 > sqrt|H|",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_b1,
            certificates=[
                Certificate("(q^2-1)q^8(q^6-1) - 2q^14", (Q**2 - 1) * Q**8 * (Q**6 - 1) - 2 * Q**14, 2),
                Certificate("q^28 - |3D4(q)|", Q**28 - D4_ORDER_POLY, 2, squared="sqrt|H| < q^14"),
            ],
            spot=[(2, "16384 < 24192")],
        ),
        LedgerCase(
            "SUBFIELD_B2", "3D4(q) < 3D4(q^2): (q+1)(q^8+q^4+1) < q^2(q^8-q^4+1)-1",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_b2,
            certificates=[Certificate("q^2(q^8-q^4+1)-1 - (q+1)(q^8+q^4+1)",
                                      Q**2 * (Q**8 - Q**4 + 1) - 1 - (Q + 1) * (Q**8 + Q**4 + 1), 2)],
            spot=[(2, "margin 144")],
        ),
        LedgerCase(
            "PARA_UV_1819", "Q, chi18/chi19 (q odd): chi(u) = -q^3(q^3-1)/2 < chi(v)",
            "polynomial-certificate",
            applies=lambda q: q % 2 == 1,
            numeric=_uv_1819,
            # 2(min chi(v) - chi(u)) = q(q^3-1)(q^3 - q(q^2-1)) = q(q^3-1) * q
            certificates=[Certificate("q^3(q^3-1) - q(q^2-1)(q^3-1)",
                                      Q**3 * (Q**3 - 1) - Q * (Q**2 - 1) * (Q**3 - 1), 2)],
            spot=[(3, "-351 < -312")],
        ),
        LedgerCase(
            "PARA_UV_20_16", "Q, chi20 (q odd) or chi16 (q even): chi(u) = -q^3(q^3-1) < chi(v)",
            "polynomial-certificate",
            applies=lambda q: q >= 2,
            numeric=_uv_20_16,
            certificates=[Certificate("q^3(q^3-1) - q(q^2-1)(q^3-1)",
                                      Q**3 * (Q**3 - 1) - Q * (Q**2 - 1) * (Q**3 - 1), 2)],
            spot=[(2, "-56 < -42")],
        ),
        LedgerCase(
            "DEGREE_FROM_U", "Q faithful: chi(1) = -(q^2-1) chi(u) is a degree of Q",
            "discrete-fact",
            applies=lambda q: q >= 2,
            numeric=_degree_from_u,
            certificates=[Certificate("|Q| - (q^2-1)q^3(q^3-1)",
                                      PARA_Q_ORDER_POLY - (Q**2 - 1) * Q**3 * (Q**3 - 1), 2)],
            spot=[(2, "168 < 86016")],
        ),
    ]


def get_case(case_id: str) -> LedgerCase:
    for case in ledger_cases():
        if case.id == case_id:
            return case
    raise KeyError(f"unknown ledger case {case_id!r}")


def check_case(case_id: str, q: int | PrimePower) -> Verdict:
    case = get_case(case_id)
    q = q.q if isinstance(q, PrimePower) else q
    try:
        PrimePower.from_q(q)
    except ValueError:
        return Verdict(case_id, "numeric", "inapplicable", q, [{"reason": f"{q} is not a prime power"}])
    if not case.applies(q):
        return Verdict(case_id, "numeric", "inapplicable", q, [{"reason": "q outside case range"}])
    checks = case.numeric(q)
    status = "verified" if all(c.ok for c in checks) else "violated"
    return Verdict(case_id, "numeric", status, q, [c.as_dict() for c in checks])


def check_case_symbolic(case_id: str) -> Verdict:
    case = get_case(case_id)
    details = []
    ok = True
    for cert in case.certificates:
        res = certify_positive_ge(cert.poly, cert.threshold)
        ok &= res.certified
        d = {"certificate": cert.label, "poly": str(cert.poly), "threshold": cert.threshold,
             "status": res.status}
        if cert.squared:
            d["squared"] = cert.squared
        if res.witness is not None:
            d["witness"] = str(res.witness)
        details.append(d)
    for row in case.rows():
        ok &= row.ok
        details.append(row.as_dict())
    return Verdict(case_id, "symbolic", "verified" if ok else "violated", None, details)
