"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import random
import subprocess
import sys
import time

from trialitycheck.charsum import (
    FLOAT_TOLERANCE,
    Family,
    SumContext,
    derive_m,
    eval_y,
    eval_y_even,
    k_range,
    m_bounds,
    scalar_product_eps2,
)
from trialitycheck.cyclotomic import CycInt, additive_char, pick_twist
from trialitycheck.field_tower import (
    PrimePower,
    Tower,
    abs_trace,
    prime_powers_upto,
    rel_trace_to_mid,
    subfield_norm,
)
from trialitycheck.ledger import check_case, check_case_symbolic, get_case, ledger_cases

_computed: dict[tuple[int, Family, int], int] = {}
_contexts: dict[int, SumContext] = {}


def _ctx(q: int) -> SumContext:
    if q not in _contexts:
        _contexts[q] = SumContext.build(q)
    return _contexts[q]


def _eval(q: int, fam: Family, k: int) -> int:
    y = eval_y(fam, k, _ctx(q))
    _computed[(q, fam, k)] = y
    return y


def test_c1_remark_values():
    """C1 eval_y_even(k=1) = q(q^3-1) for q in {2, 4, 8}, under 10 s"""
    t0 = time.perf_counter()
    got = [eval_y_even(1, _ctx(q)) for q in (2, 4, 8)]
    elapsed = time.perf_counter() - t0
    for q, y in zip((2, 4, 8), got):
        _computed[(q, Family.CHI16_EVEN, 1)] = y
    assert got == [14, 252, 4088]
    assert elapsed < 10


def test_c2_even_family():
    """C2 even q in {2, 4, 8}: divisibility, m range, scalar product, under 2 min at q = 8"""
    for q in (2, 4, 8):
        t0 = time.perf_counter()
        fam = Family.CHI16_EVEN
        for k in k_range(PrimePower.from_q(q), fam):
            y = _eval(q, fam, k)
            lo, hi = m_bounds(q, fam)
            assert lo <= derive_m(y, q, fam) <= hi
            assert scalar_product_eps2(y, q, fam) >= 0
        if q == 8:
            assert time.perf_counter() - t0 < 120


def test_c3_odd_families():
    """C3 odd q in {3, 5, 7}: chi18/19 half-range and chi20 full-range, under 5 min at q = 7"""
    for q in (3, 5, 7):
        t0 = time.perf_counter()
        pp = PrimePower.from_q(q)
        for fam in (Family.CHI18_19_ODD, Family.CHI20_ODD):
            for k in k_range(pp, fam):
                y = _eval(q, fam, k)
                lo, hi = m_bounds(q, fam)
                assert lo <= derive_m(y, q, fam) <= hi
                assert scalar_product_eps2(y, q, fam) >= 0
        regimes = {k <= (q - 1) // 2 for k in k_range(pp, Family.CHI20_ODD)}
        assert regimes == {True, False}
        if q == 7:
            assert time.perf_counter() - t0 < 300


def test_c4_float_oracle():
    """C4 float estimate within 0.25 of every exact sum from C1-C3, imaginary part below 0.25"""
    expected = sum(len(k_range(PrimePower.from_q(q), Family.CHI16_EVEN)) for q in (2, 4, 8))
    expected += sum(len(k_range(PrimePower.from_q(q), f)) for q in (3, 5, 7)
                    for f in (Family.CHI18_19_ODD, Family.CHI20_ODD))
    for q in (2, 4, 8):
        for k in k_range(PrimePower.from_q(q), Family.CHI16_EVEN):
            _computed.setdefault((q, Family.CHI16_EVEN, k), eval_y(Family.CHI16_EVEN, k, _ctx(q)))
    for q in (3, 5, 7):
        for f in (Family.CHI18_19_ODD, Family.CHI20_ODD):
            for k in k_range(PrimePower.from_q(q), f):
                _computed.setdefault((q, f, k), eval_y(f, k, _ctx(q)))
    assert len(_computed) == expected
    for (q, fam, k), y in sorted(_computed.items(), key=lambda kv: (kv[0][0], kv[0][1].value, kv[0][2])):
        z = _ctx(q).oracle.estimate(fam, k)
        assert abs(z.real - y) < FLOAT_TOLERANCE, (q, fam, k, z, y)
        assert abs(z.imag) < FLOAT_TOLERANCE, (q, fam, k, z)


def test_c5_ledger_numeric():
    """C5 every ledger case verifies at every prime power up to 100, spot values included, under 10 s"""
    t0 = time.perf_counter()
    for case in ledger_cases():
        for q in prime_powers_upto(100):
            assert check_case(case.id, q).status in ("verified", "inapplicable"), (case.id, q)

    def checks(cid, q):
        v = check_case(cid, q)
        assert v.status == "verified"
        return {(d["lhs"], d["rel"], d["rhs"]) for d in v.details}

    assert (18, "<", 25) in checks("L2xL2", 2)
    su3 = checks("TORUS_SU3", 2)
    assert {(26, "!|", 1296), (36, "==", 36), (48, "<", 49)} <= su3
    assert (2 * 3 * 84, "<", 963) in checks("TORUS_SL3", 4)
    assert time.perf_counter() - t0 < 10


def test_c6_ledger_symbolic():
    """C6 every polynomial case certified by Sturm at its threshold with 50 integer cross-checks, under 10 s"""
    t0 = time.perf_counter()
    n_certs = 0
    for case in ledger_cases():
        v = check_case_symbolic(case.id)
        assert v.status == "verified", (case.id, v.details)
        n_certs += len(case.certificates)
        for cert in case.certificates:
            start = cert.threshold
            assert all(cert.poly(x) > 0 for x in range(start, start + 51))
    b2 = get_case("SUBFIELD_B2").certificates
    assert any(str(c.poly) == "q^10 - q^9 - q^8 - q^6 - q^5 - q^4 + q^2 - q - 2" and c.threshold == 2
               for c in b2)
    assert n_certs >= 13
    assert time.perf_counter() - t0 < 10


def test_c7_property_suites():
    """C7 field, trace/norm, character orthogonality exhaustive for q <= 8; cyclotomic axioms on random triples"""
    for q in (2, 3, 4, 5, 7, 8):
        t = Tower.build(q)
        f3 = t.f3
        elems = list(f3.elements())
        for a in elems:
            assert abs_trace(a) in range(f3.p)
            r = subfield_norm(a, q)
            assert r**q == r and rel_trace_to_mid(a, q) ** q == rel_trace_to_mid(a, q)
            if a:
                assert a * a**-1 == f3.one
        c = pick_twist(f3, q)
        big = CycInt.zero(f3.p)
        for x in elems:
            big = big + additive_char(x, c)
        small = CycInt.zero(f3.p)
        for a in t.fq.elements():
            small = small + additive_char(t.embedding(a), c)
        assert big == CycInt.zero(f3.p) and small == CycInt.zero(f3.p)
    for p in (2, 3, 5, 7, 13):
        rng = random.Random(p)
        for _ in range(1000):
            a, b, c = (CycInt(p, [rng.randint(-99, 99) for _ in range(p - 1)]) for _ in range(3))
            assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c and a * b == b * a


def test_c8_determinism(tmp_path):
    """C8 verify-appendix --q 4 is byte-identical with 1 and 8 threads"""
    outs = []
    for threads in (1, 8):
        res = subprocess.run(
            [sys.executable, "-m", "trialitycheck", "verify-appendix", "--q", "4",
             "--threads", str(threads), "--report-file", str(tmp_path / f"r{threads}.jsonl")],
            capture_output=True, check=True,
        )
        outs.append(res.stdout)
    assert outs[0] == outs[1] and outs[0]
