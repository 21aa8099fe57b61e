from collections import Counter

import pytest
from brute import brute_sum

from trialitycheck.charsum import (
    CharSumSpec,
    Family,
    Negative,
    NonIntegral,
    NotDivisible,
    OutOfRange,
    SumContext,
    derive_m,
    eval_y,
    eval_y_even,
    eval_y_odd_20,
    eval_y_odd_1819,
    families_for,
    k_range,
    m_bounds,
    scalar_product_eps2,
    verify_appendix,
    verify_one,
    y_upper_bound,
)
from trialitycheck.cyclotomic import CycInt, cyc_to_int
from trialitycheck.field_tower import PrimePower, Tower, rel_trace_to_mid

# Exact values checked against the term-by-term evaluator in brute.py.
FROZEN = {
    (2, Family.CHI16_EVEN): [14, -14],
    (3, Family.CHI18_19_ODD): [156, -78, 156],
    (3, Family.CHI20_ODD): [78, -156],
    (4, Family.CHI16_EVEN): [252, 1260, -756, -756],
    (5, Family.CHI18_19_ODD): [1860, -1240, 1860, -1240, 1860],
    (5, Family.CHI20_ODD): [3720, -2480, 620, -2480],
}


@pytest.mark.parametrize("q,family", [(2, Family.CHI16_EVEN), (3, Family.CHI18_19_ODD),
                                      (3, Family.CHI20_ODD), (4, Family.CHI16_EVEN)])
def test_kernel_matches_brute_force(q, family, sum_ctx):
    ctx = sum_ctx(q)
    for k in k_range(PrimePower.from_q(q), family):
        assert ctx.exact(family, k) == brute_sum(ctx, family, k)


@pytest.mark.parametrize("key", list(FROZEN))
def test_frozen_values(key, sum_ctx):
    q, family = key
    ctx = sum_ctx(q)
    got = [eval_y(family, k, ctx) for k in k_range(PrimePower.from_q(q), family)]
    assert got == FROZEN[key]


def test_named_entry_points(sum_ctx):
    assert eval_y_even(1, sum_ctx(2)) == 14
    assert eval_y_odd_1819(2, sum_ctx(3)) == -78
    assert eval_y_odd_20(2, sum_ctx(3)) == -156


def test_exact_sum_is_rational_integer(sum_ctx):
    ctx = sum_ctx(5)
    for fam in families_for(ctx.tower.pp):
        for k in k_range(ctx.tower.pp, fam):
            cyc_to_int(ctx.exact(fam, k))


def test_float_oracle_agrees(sum_ctx):
    ctx = sum_ctx(4)
    for k in range(1, 5):
        z = ctx.oracle.estimate(Family.CHI16_EVEN, k)
        assert abs(z.real - eval_y_even(k, ctx)) < 0.25 and abs(z.imag) < 0.25


def test_family_helpers():
    assert Family.parse("chi16") is Family.CHI16_EVEN
    assert Family.parse("chi18_19") is Family.CHI18_19_ODD
    with pytest.raises(ValueError):
        Family.parse("chi17")
    assert families_for(PrimePower.from_q(4)) == [Family.CHI16_EVEN]
    assert set(families_for(PrimePower.from_q(9))) == {Family.CHI18_19_ODD, Family.CHI20_ODD}
    assert list(k_range(PrimePower.from_q(7), Family.CHI20_ODD)) == list(range(1, 7))
    assert list(k_range(PrimePower.from_q(7), Family.CHI18_19_ODD)) == list(range(1, 8))


def test_invalid_arguments_rejected():
    pp = PrimePower.from_q(4)
    with pytest.raises(ValueError):
        CharSumSpec(pp, Family.CHI16_EVEN, 0)
    with pytest.raises(ValueError):
        CharSumSpec(pp, Family.CHI16_EVEN, 5)
    with pytest.raises(ValueError):
        CharSumSpec(pp, Family.CHI20_ODD, 1)
    with pytest.raises(ValueError):
        CharSumSpec(PrimePower.from_q(5), Family.CHI20_ODD, 5)
    assert CharSumSpec(pp, Family.CHI16_EVEN, 1).label == "chi16(k=1)"
    with pytest.raises(ValueError):
        verify_appendix(6)


def test_derive_m_examples():
    assert derive_m(14, 2, Family.CHI16_EVEN) == 1
    with pytest.raises(NotDivisible):
        derive_m(13, 2, Family.CHI16_EVEN)
    with pytest.raises(OutOfRange):
        derive_m(-56, 2, Family.CHI16_EVEN)
    assert derive_m(-42, 2, Family.CHI16_EVEN) == -3
    assert m_bounds(3, Family.CHI18_19_ODD) == (-4, 9)
    assert m_bounds(3, Family.CHI20_ODD) == (-8, 18)


def test_scalar_product_examples():
    assert scalar_product_eps2(14, 2, Family.CHI16_EVEN) == (42 + 14) // 14
    assert scalar_product_eps2(-42, 2, Family.CHI16_EVEN) == 0
    with pytest.raises(NonIntegral):
        scalar_product_eps2(-43, 2, Family.CHI16_EVEN)
    with pytest.raises(Negative):
        scalar_product_eps2(-56, 2, Family.CHI16_EVEN)
    # halved formula at q = 3
    assert scalar_product_eps2(156, 3, Family.CHI18_19_ODD) == (729 - 81 - 27 + 3 + 312) // 156


def test_upper_bound_holds(sum_ctx):
    for q in (2, 3, 4, 5):
        ctx = sum_ctx(q)
        for fam in families_for(ctx.tower.pp):
            for k in k_range(ctx.tower.pp, fam):
                assert abs(eval_y(fam, k, ctx)) <= y_upper_bound(q, fam)


def test_threaded_matches_serial():
    tower = Tower.build(5)
    serial = SumContext(tower, threads=1)
    threaded = SumContext(tower, threads=4)
    for fam in families_for(tower.pp):
        for k in k_range(tower.pp, fam):
            assert (serial.counts(fam, k) == threaded.counts(fam, k)).all()


def test_verify_appendix_small():
    for q in (2, 3, 4, 5):
        rep = verify_appendix(q)
        assert rep.verified, [r.reason for r in rep.rows if r.status != "verified"]


def test_violation_is_recorded_not_raised(sum_ctx, monkeypatch):
    ctx = sum_ctx(2)
    monkeypatch.setattr(ctx, "exact", lambda fam, k: CycInt.from_int(2, 13))
    row = verify_one(CharSumSpec(PrimePower.from_q(2), Family.CHI16_EVEN, 1), ctx, with_float=False)
    assert row.status == "violated" and "NotDivisible" in row.reason


def test_twist_override_rejected():
    tower = Tower.build(3)
    with pytest.raises(ValueError):
        SumContext(tower, twist=1)  # relative trace of 1 vanishes when p = 3


@pytest.mark.parametrize("q", [2, 3, 4])
def test_multiset_under_other_choices(q, capsys):
    """Compare the value multisets for the default and an alternative (tau, twist)."""
    base = SumContext.build(q)
    f3 = base.tower.f3
    n = f3.order
    alt_tau = next(c for c in range(base.tower.tau_code + 1, f3.size)
                   if f3.elem(c).multiplicative_order() == n)
    alt_twist = next(c for c in range(base.twist_code + 1, f3.size)
                     if rel_trace_to_mid(f3.elem(c), q))
    alt = SumContext(Tower.build(q, tau=alt_tau), twist=alt_twist)
    for fam in families_for(base.tower.pp):
        ks = k_range(base.tower.pp, fam)
        a = Counter(eval_y(fam, k, base) for k in ks)
        b = Counter(eval_y(fam, k, alt) for k in ks)
        with capsys.disabled():
            print(f"\nq={q} {fam.value}: default {sorted(a.elements())} alt {sorted(b.elements())}"
                  f" {'same' if a == b else 'differ'}")
        for k in ks:
            derive_m(eval_y(fam, k, alt), q, fam)

