import math

import pytest

from trialitycheck.field_tower import prime_powers_upto
from trialitycheck.ledger import (
    D4_ORDER_POLY,
    GROUP_NAMES,
    check_case,
    check_case_symbolic,
    dl_lower,
    get_case,
    group_order,
    ledger_cases,
    mc_upper,
)

CASE_IDS = [c.id for c in ledger_cases()]
CENTER = {"SL3": lambda q: math.gcd(3, q - 1), "SU3": lambda q: math.gcd(3, q + 1), "L2": lambda q: 1}


def _checks(verdict):
    return {(d["lhs"], d["rel"], d["rhs"]) for d in verdict.details if "lhs" in d}


def test_group_order_examples():
    assert group_order("D4_3", 2) == 2**12 * 63**2 * 13 == 211341312
    assert group_order("SU3", 2) == 216
    assert group_order("G2", 2) == 12096
    with pytest.raises(KeyError):
        group_order("E8", 2)
    with pytest.raises(ValueError):
        group_order("G2", 6)


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_group_orders_positive(name):
    for q in prime_powers_upto(100):
        assert group_order(name, q) > 0


def test_mc_examples():
    assert mc_upper("SL3", 3) == 39
    assert mc_upper("L2", 5) == 5
    assert mc_upper("SU3", 3) == 32
    assert [dl_lower(q) for q in (2, 3, 4)] == [25, 218, 963]
    with pytest.raises(KeyError):
        mc_upper("G2", 3)


@pytest.mark.parametrize("name", ["SL3", "SU3", "L2"])
def test_mc_below_sqrt_order(name):
    for q in prime_powers_upto(50):
        assert mc_upper(name, q) <= math.isqrt(group_order(name, q) // CENTER[name](q))


def test_d4_order_bound():
    for q0 in range(2, 101):
        assert D4_ORDER_POLY(q0) < q0**28


def test_cases_have_spot_values():
    for case in ledger_cases():
        assert case.spot, case.id
    assert len(CASE_IDS) == len(set(CASE_IDS)) == 13
    with pytest.raises(KeyError):
        get_case("NOPE")


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_numeric_sweep(case_id):
    seen = 0
    for q in prime_powers_upto(100):
        v = check_case(case_id, q)
        assert v.status in ("verified", "inapplicable"), (q, v.details)
        seen += v.status == "verified"
    assert seen >= 1


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_symbolic(case_id):
    v = check_case_symbolic(case_id)
    assert v.status == "verified", v.details


def test_inapplicable_reported():
    assert check_case("PGL3", 3).status == "inapplicable"
    assert check_case("PGL3", 6).status == "inapplicable"
    assert check_case("L2xL2", 3).status == "inapplicable"
    assert check_case("PARA_UV_1819", 4).status == "inapplicable"


def test_spot_values():
    assert (18, "<", 25) in _checks(check_case("L2xL2", 2))
    su3 = _checks(check_case("TORUS_SU3", 2))
    assert (26, "!|", 1296) in su3
    assert (36, "==", 36) in su3
    assert (48, "<", 49) in su3
    assert (504, "<", 963) in _checks(check_case("TORUS_SL3", 4))
    assert (62400, "<", 963**2) in _checks(check_case("PGL3", 4))


def test_b2_margin():
    v = check_case("SUBFIELD_B2", 2)
    ((lhs, _, rhs),) = _checks(v)
    assert rhs - lhs == 144
