"""Prime engine: sieve against trial division, exact gap statistics, psi."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapscope import primes as P
from gapscope.errors import CapacityError


def trial_primes(lo, hi):
    return [
        n for n in range(max(2, lo), hi + 1)
        if all(n % d for d in range(2, math.isqrt(n) + 1))
    ]


# ---------------------------------------------------------------------------
# sieve_primes
# ---------------------------------------------------------------------------

def test_sieve_small_windows():
    assert P.sieve_primes(1, 10).tolist() == [2, 3, 5, 7]
    assert P.sieve_primes(90, 100).tolist() == [97]
    assert P.sieve_primes(0, 1).tolist() == []
    assert P.sieve_primes(2, 2).tolist() == [2]


def test_sieve_against_trial_division():
    for lo, hi in [(0, 600), (997, 1300), (9950, 10103)]:
        assert P.sieve_primes(lo, hi).tolist() == trial_primes(lo, hi)


def test_sieve_count_to_1e6():
    # pi(10^6) = 78498, checked against the trial-division oracle offline
    assert len(P.sieve_primes(1, 10**6)) == 78498


@settings(max_examples=25, deadline=None)
@given(
    lo=st.integers(min_value=0, max_value=5000),
    span=st.integers(min_value=0, max_value=3000),
    seg=st.sampled_from([16, 64, 1 << 12]),
)
def test_sieve_segmentation_invariance(lo, span, seg):
    hi = lo + span
    assert (
        P.sieve_primes(lo, hi, segment_odds=seg).tolist()
        == P.sieve_primes(lo, hi).tolist()
    )


def test_sieve_ceiling_capacity():
    with pytest.raises(CapacityError):
        P.sieve_primes(0, 10**11)


# ---------------------------------------------------------------------------
# gap statistics
# ---------------------------------------------------------------------------

def test_gap_stream_convention():
    gaps = list(P.iter_gaps(10))
    assert [(g.p, g.next, g.gap) for g in gaps] == [
        (2, 3, 1), (3, 5, 2), (5, 7, 2), (7, 11, 4),
    ]
    for g in gaps:
        assert g.gap == g.next - g.p
        assert g.gap <= g.p  # Bertrand
        assert g.p == 2 or g.gap % 2 == 0


def test_gap_moment_trivial_and_derived():
    s10 = P.gap_moment_sum(10, 2)
    assert s10.sum_gap_sq == 25  # gaps 1,2,2,4
    assert s10.sum_gap == 9  # telescoping to 11 - 2
    assert P.gap_moment_sum(100, 2).sum_gap_sq == 477  # brute-force derived
    assert P.gap_moment_sum(1000, 2).sum_gap_sq == 8173


def test_gap_summary_invariants():
    for x in (10, 97, 1000, 12345):
        s = P.gap_moment_sum(x)
        assert s.sum_gap == P.next_prime_above(x) - 2
        assert s.sum_gap_sq >= s.sum_gap
        assert s.max_gap**2 <= s.sum_gap_sq
        assert s.count == len(P.sieve_primes(2, x))


def test_gap_multiset_prefix_property():
    small = [g.gap for g in P.iter_gaps(500)]
    big = [g.gap for g in P.iter_gaps(2000)]
    assert big[: len(small)] == small


def test_gap_sweep_matches_single_calls():
    limits = [10, 100, 1000, 4999]
    multi = P.gap_sweep(limits)
    for s in multi:
        single = P.gap_moment_sum(s.x)
        assert s == single


def test_max_gap_table_paper_rows_to_1e6():
    rows = P.max_gap_table([10**j for j in range(1, 7)])
    assert rows == [
        (10, 4, 0.60),
        (100, 8, 0.45),
        (1000, 20, 0.43),
        (10000, 36, 0.39),
        (100000, 72, 0.37),
        (1000000, 114, 0.34),
    ]


# ---------------------------------------------------------------------------
# band sums
# ---------------------------------------------------------------------------

def test_band_sum_enumeration_oracle():
    bs = P.dyadic_band_sum(100, 100)
    ps = trial_primes(100, 250)
    manual = sum(
        (q - p) ** 2
        for p, q in zip(ps, ps[1:])
        if 100 <= p <= 200 and 4 <= q - p <= 8
    )
    assert bs.sum_gap_sq == manual == 260
    assert bs.contributing == 10
    assert (bs.lo, bs.hi) == (Fraction(4), Fraction(8))


def test_band_sum_empty_band():
    assert P.dyadic_band_sum(100, 1).sum_gap_sq == 0  # band [400, 800]


def test_band_sum_rational_tau():
    bs = P.dyadic_band_sum(100, Fraction(100, 3))
    assert bs.lo == 12 and bs.hi == 24
    total = 0
    for g in P.iter_gaps(200, start=100):
        if g.p >= 100 and 12 <= g.gap <= 24:
            total += g.gap**2
    assert bs.sum_gap_sq == total


def test_band_sum_1e6_nonzero():
    bs = P.dyadic_band_sum(10**6, 31623)  # tau ~ x^(3/4)
    assert bs.sum_gap_sq == 34848 and bs.contributing == 2


def test_band_decomposition_covers_each_gap_once_or_twice():
    x = 3000
    gaps = [g for g in P.iter_gaps(2 * x, start=x) if g.p >= x]
    hits = {id(g): 0 for g in gaps}
    tau = Fraction(x)
    while Fraction(4 * x) / tau <= max(g.gap for g in gaps):
        lo = Fraction(4 * x) / tau
        hi = Fraction(8 * x) / tau
        for g in gaps:
            if lo <= g.gap <= hi:
                hits[id(g)] += 1
        tau /= 2
    for g in gaps:
        if g.gap >= 4:  # bands with tau <= x cannot reach below 4
            assert 1 <= hits[id(g)] <= 2, g
    # and the dyadic band sums are dominated by the full moment sum
    band_total = 0
    tau = Fraction(x)
    while Fraction(4 * x) / tau <= max(g.gap for g in gaps):
        band_total += P.dyadic_band_sum(x, tau).sum_gap_sq
        tau /= 2
    full = sum(g.gap**2 for g in gaps)
    assert full - sum(g.gap**2 for g in gaps if g.gap < 4) <= band_total <= 2 * full


# ---------------------------------------------------------------------------
# von Mangoldt / psi
# ---------------------------------------------------------------------------

def test_von_mangoldt_values():
    assert P.von_mangoldt(8) == pytest.approx(math.log(2))
    assert P.von_mangoldt(6) == 0.0
    assert P.von_mangoldt(9) == pytest.approx(math.log(3))
    assert P.von_mangoldt(1) == 0.0
    assert P.von_mangoldt(97) == pytest.approx(math.log(97))


def test_psi_against_direct_lambda_sum():
    for y in (1, 10, 97.5, 1000, 10**5):
        direct = math.fsum(P.von_mangoldt(n) for n in range(1, math.floor(y) + 1))
        assert P.chebyshev_psi(y) == pytest.approx(direct, rel=1e-9, abs=1e-12)


def test_psi_examples():
    assert P.chebyshev_psi(1) == 0.0
    expected = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
    assert P.chebyshev_psi(10) == pytest.approx(expected, rel=1e-12)
    assert P.chebyshev_psi(10**6) == pytest.approx(10**6, rel=5e-3)  # PNT sanity


def test_psi_window_examples():
    got = P.psi_window(100, 10)
    want = sum(math.log(p) for p in (101, 103, 107, 109))
    assert got == pytest.approx(want, rel=1e-12)
    assert P.psi_window(2, 2) == pytest.approx(math.log(3))


def test_psi_window_prime_free_bound():
    # windows inside known prime gaps; constant 2 fixed here
    for y, tau in [(114, 10), (524, 32), (31398, 500)]:
        top = y + y / tau
        assert not any(
            P.is_prime(n) for n in range(math.floor(y) + 1, math.floor(top) + 1)
        )
        bound = 2 * math.log(y) ** 2 * math.sqrt(y / tau)
        assert P.psi_window(y, tau) <= bound


# ---------------------------------------------------------------------------
# composite runs
# ---------------------------------------------------------------------------

def test_composite_run_small():
    r = P.composite_run_demo(2)
    assert (r.primorial, r.start, r.length) == (6, 8, 2)
    r = P.composite_run_demo(3)
    assert r.primorial == 30 and r.start == 32 and r.length >= 4


def test_composite_run_certificates():
    r = P.composite_run_demo(5)
    assert r.primorial == 2310
    for offset, witness in enumerate(r.witnesses):
        value = r.start + offset
        assert value % witness == 0 and witness < value
        assert not P.is_prime(value)


def test_composite_run_guard():
    with pytest.raises(CapacityError):
        P.composite_run_demo(13)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=20000))
def test_is_prime_matches_trial_division(n):
    assert P.is_prime(n) == (n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1)))
