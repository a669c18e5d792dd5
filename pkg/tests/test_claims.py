"""Claim verification: exact verdicts, certificates, the builtin ledger."""

import time
from fractions import Fraction as Q

import pytest

from gapscope.algebra import AlgebraicNumber
from gapscope.claims import (
    Claim,
    IllPosedClaimError,
    MU_RANGE,
    format_ledger,
    ml,
    parse_expression,
    parse_ledger,
    recheck_verdict,
    verify_claim,
)
from gapscope.ledger import (
    CROSSING_BRACKET,
    CROSSING_POLY,
    TIGHT_CLAIM_IDS,
    builtin_ledger,
    mutated_ledger,
    specified_mutations,
)


def test_plugin_claim_mean_value_at_34():
    c = Claim.box("plug", parse_expression("(3 - 3*s)/(2 - s)"),
                  parse_expression("1"), Q(3, 4), Q(3, 4))
    v = verify_claim(c)
    assert v.holds and recheck_verdict(c, v)


def test_case_1b_three_term_max():
    lhs = [parse_expression(t) for t in (
        "(7 - 7*s)/(3*s - 1)",
        "(18 - 19*s)/(6*s - 2)",
        "(34 - 34*s)/(15*s - 5)",
    )]
    rhs = parse_expression("1 + (3/(10*s - 7))*((13 - 16*s)/4)")
    c = Claim.box("case1b", lhs, rhs, Q(13, 16), Q(25, 28))
    v = verify_claim(c)
    assert v.holds and recheck_verdict(c, v)
    # this max sits about 0.022 under the rhs, so 3/100 flips it
    cm = Claim.box("case1b-m", lhs, rhs - ml(Q(3, 100)), Q(13, 16), Q(25, 28))
    vm = verify_claim(cm)
    assert not vm.holds
    s, mu = vm.counterexample()
    worst = max(l(s, mu) for l in cm.lhs)
    assert worst > cm.rhs(s, mu)


def test_mu_linear_reduction_checks_both_endpoints():
    # u*(1) <= 1/2 holds iff mu >= 2: fails on [4/3, 2], holds on [2, 19/9]
    lhs = parse_expression("u")
    ok = Claim.box("mu-hi", lhs, ml(Q(1, 2)), Q(1, 2), Q(1), mu=(2, Q(19, 9)))
    bad = Claim.box("mu-lo", lhs, ml(Q(1, 2)), Q(1, 2), Q(1), mu=(Q(4, 3), 2))
    assert verify_claim(ok).holds
    v = verify_claim(bad)
    assert not v.holds and Q(v.certificate["counterexample"]["mu"]) == Q(4, 3)


def test_ill_posed_denominator_rejected():
    c = Claim.box("bad", parse_expression("1/(2*s - 1)"), ml(Q(10)), Q(0), Q(1))
    with pytest.raises(IllPosedClaimError) as exc:
        verify_claim(c)
    lo, hi = exc.value.root_interval
    assert lo <= Q(1, 2) <= hi


def test_expression_parser_round_trip():
    texts = [
        "(3 - 3*s)/(2 - s)",
        "u*(13 - 16*s)/2",
        "5/4 - 2*s",
        "1 + (3/(10*s - 7))*((13 - 16*s)/4)",
        "s^2 - 1/4",
    ]
    for t in texts:
        v = parse_expression(t)
        assert v(Q(3, 4), Q(2)) is not None


def test_parser_rejects_nonlinear_mu():
    with pytest.raises(ValueError):
        parse_expression("u*u")
    with pytest.raises(ValueError):
        parse_expression("1/u")


def test_ledger_round_trip_and_size():
    claims = builtin_ledger()
    assert len(claims) >= 20
    text = format_ledger(claims)
    parsed = parse_ledger(text)
    assert [c.id for c in parsed] == [c.id for c in claims]
    for c in parsed[:8]:
        assert verify_claim(c).holds


def test_builtin_ledger_all_hold_with_rechecks():
    t0 = time.time()
    for c in builtin_ledger():
        v = verify_claim(c)
        assert v.holds, (c.id, v.certificate.get("counterexample"))
        assert recheck_verdict(c, v), c.id
    assert time.time() - t0 < 10.0


def test_crossing_claim_algebraic():
    value = AlgebraicNumber(CROSSING_POLY, *CROSSING_BRACKET)
    c = Claim.ordering("crossing", value, Q(53, 68))
    v = verify_claim(c)
    assert v.holds and recheck_verdict(c, v)
    # and the quadratic really encodes (271 - sqrt(193))/336
    approx = (271 - 193**0.5) / 336
    assert abs(value.to_float() - approx) < 1e-9
    tight = Claim.ordering("crossing-tight", value, Q(76, 100), strict=True)
    assert not verify_claim(tight).holds


def test_specified_mutations_fail_with_rational_counterexamples():
    muts = specified_mutations()
    assert len(muts) == 5
    for m in muts:
        v = verify_claim(m)
        assert not v.holds, m.id
        assert recheck_verdict(m, v), m.id
        s, mu = v.counterexample()
        assert m.sigma_interval[0] <= s <= m.sigma_interval[1]
        assert m.mu_interval[0] <= mu <= m.mu_interval[1]


def test_mutated_ledger_flips_only_the_tight_claims():
    results = {c.id: verify_claim(c).holds for c in mutated_ledger()}
    for cid, holds in results.items():
        if cid.endswith("-mutated"):
            assert not holds
            assert cid[: -len("-mutated")] in TIGHT_CLAIM_IDS
        else:
            assert holds


def test_verdicts_deterministic_and_thread_safe():
    claims = builtin_ledger()
    a = [verify_claim(c).certificate for c in claims]
    b = [verify_claim(c).certificate for c in claims]
    assert a == b
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=4) as pool:
        c4 = [v.certificate for v in pool.map(verify_claim, claims)]
    assert c4 == a


def test_mu_all_is_global_range():
    c = Claim.box("r", parse_expression("u"), ml(Q(3, 4)), Q(1, 2), Q(1))
    assert c.mu_interval == MU_RANGE
    assert verify_claim(c).holds  # u <= 3/4 for mu >= 4/3
