"""Lambda recovery through the combinatorial identity and its dyadic tiling."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapscope import identity as I
from gapscope.errors import CapacityError, WindowError
from gapscope.primes import von_mangoldt

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Moebius
# ---------------------------------------------------------------------------

def test_mobius_values():
    assert I.mobius(1) == 1
    assert I.mobius(12) == 0
    assert I.mobius(30) == -1
    assert I.mobius(2 * 3 * 5 * 7) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=3000))
def test_mobius_sieve_matches_pointwise(n):
    assert int(I.mobius_sieve(n)[n]) == I.mobius(n)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=300))
def test_mobius_multiplicative_on_coprimes(a, b):
    if math.gcd(a, b) == 1:
        assert I.mobius(a * b) == I.mobius(a) * I.mobius(b)


# ---------------------------------------------------------------------------
# K_j and the identity
# ---------------------------------------------------------------------------

def test_Kj_divisor_examples():
    cfg = I.make_config(2, 1)
    assert I.compute_Kj(4, 1, cfg) == pytest.approx(math.log(2))  # log4 - log2
    assert I.compute_Kj(1, 1, cfg) == 0.0
    assert I.compute_Kj(5, 1, cfg) == pytest.approx(math.log(5))  # pairs (1,5),(5,1)


def test_identity_sign_convention():
    # the weight (-1)^(j+1) C(k,j) recovers Lambda; the flipped sign fails at n=4
    cfg = I.make_config(2, 1)
    assert I.lambda_via_identity(4, cfg) == pytest.approx(math.log(2))
    flipped = sum(
        (-1) ** j * math.comb(1, j) * I.compute_Kj(4, j, cfg) for j in (1,)
    )
    assert flipped == pytest.approx(-math.log(2))


def test_identity_examples():
    cfg2 = I.make_config(2, 2)
    assert I.lambda_via_identity(6, cfg2) == pytest.approx(0.0, abs=1e-12)
    for k in (1, 2, 3):
        cfg = I.make_config(53, k)  # 106 = 2*53 prime
        assert I.lambda_via_identity(106, cfg) == pytest.approx(0.0, abs=1e-9)
        cfg = I.make_config(64, k)
        assert I.lambda_via_identity(127, cfg) == pytest.approx(math.log(127), rel=1e-12)


def test_identity_window_guard():
    cfg = I.make_config(50, 2)
    with pytest.raises(WindowError):
        I.lambda_via_identity(49, cfg)
    with pytest.raises(WindowError):
        I.lambda_via_identity(151, cfg)
    assert I.lambda_via_identity(50, cfg) == pytest.approx(von_mangoldt(50), abs=1e-9)


def test_identity_residual_tables():
    for x in (8, 50, 137):
        for k in (1, 2, 3):
            cfg = I.make_config(x, k)
            assert float(I.identity_residuals(cfg).max()) < 1e-9


def test_config_cutoff_invariant():
    for x, k in [(2, 1), (50, 3), (5000, 3), (1000, 6)]:
        cfg = I.make_config(x, k)
        c = cfg.mobius_cutoff
        assert c**k <= 3 * x < (c + 1) ** k
    with pytest.raises(ValueError):
        I.IdentityConfig(50, 2, 13)  # 13^2 > 150


def test_identity_works_beyond_enumeration_order():
    # compute_Kj needs no tuple enumeration, so large k still evaluates
    cfg = I.make_config(20, 8)
    n = 43
    assert I.lambda_via_identity(n, cfg) == pytest.approx(math.log(43), rel=1e-9)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def brute_count(cfg):
    """Independent recursive counter over the full dyadic grids."""
    k, x, cut = cfg.k, cfg.x, cfg.mobius_cutoff
    lo = Fraction(x, 2 ** (2 * k))
    hi = Fraction(3 * x)
    mob = [HALF] + [Fraction(2**e) for e in range(max(0, (cut - 1).bit_length()))]
    units = [HALF] + [Fraction(2**e) for e in range((6 * x).bit_length() + 2)]
    logs = [Fraction(2**e) for e in range((6 * x).bit_length() + 2)]
    total = 0
    for j in range(1, k + 1):
        slots = [mob] * j + [units] * (j - 1) + [logs]

        def rec(i, prod):
            nonlocal total
            if i == len(slots):
                total += lo <= prod * HALF ** (2 * (k - j)) <= hi
                return
            for N in slots[i]:
                rec(i + 1, prod * N)

        rec(0, Fraction(1))
    return total


@pytest.mark.parametrize("x,k", [(8, 1), (16, 1), (8, 2), (16, 2)])
def test_enumeration_count_and_invariants(x, k):
    cfg = I.make_config(x, k)
    fs = I.enumerate_factorizations(cfg)
    assert len({(f.j, f.lengths) for f in fs}) == len(fs)
    for f in fs:
        f.validate(cfg)
    assert len(fs) == brute_count(cfg)


def test_enumeration_x8_k1_frozen():
    cfg = I.make_config(8, 1)
    fs = I.enumerate_factorizations(cfg)
    assert len(fs) == 18
    tuples = sorted((f.lengths[0], f.lengths[1]) for f in fs)
    assert set(t[0] for t in tuples) == {HALF, Fraction(1), Fraction(2),
                                         Fraction(4), Fraction(8), Fraction(16)}
    for N1, N2 in tuples:
        assert Fraction(2) <= N1 * N2 <= Fraction(24)


def test_placeholders_forced_at_half():
    cfg = I.make_config(16, 2)
    for f in I.enumerate_factorizations(cfg):
        k, j = f.k, f.j
        for i in range(1, 2 * k + 1):
            if (j < i <= k) or (k + j <= i < 2 * k):
                assert f.lengths[i - 1] == HALF
                assert f.classes[i - 1] is I.CoefficientClass.SINGLETON


def test_enumeration_capacity_guard():
    with pytest.raises(CapacityError):
        I.enumerate_factorizations(I.make_config(64, 7))


# ---------------------------------------------------------------------------
# window coefficients
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("x,k", [(8, 1), (16, 1), (8, 2), (30, 2)])
def test_window_coefficients_recover_lambda(x, k):
    cfg = I.make_config(x, k)
    total = I.window_coefficient_sum(cfg)
    for n in range(x + 1, 3 * x + 1):
        assert total.get(n, 0.0) == pytest.approx(von_mangoldt(n), abs=1e-9)


def test_window_coefficient_point_values():
    cfg = I.make_config(8, 1)
    total = I.window_coefficient_sum(cfg)
    assert total.get(9, 0.0) == pytest.approx(math.log(3))
    assert abs(total.get(12, 0.0)) < 1e-12


def test_small_product_factorization_is_empty_in_window():
    cfg = I.make_config(16, 2)
    for f in I.enumerate_factorizations(cfg):
        if all(c is I.CoefficientClass.SINGLETON for c in f.classes[:-1]):
            if f.lengths[-1] < cfg.x / 2:
                assert I.coefficients_of_product(f, cfg) == {}


def test_factorization_dump_shape():
    cfg = I.make_config(8, 1)
    d = I.enumerate_factorizations(cfg)[0].as_dict()
    assert set(d) == {"j", "lengths", "classes", "weight"}
    assert all(isinstance(s, str) for s in d["lengths"])


# ---------------------------------------------------------------------------
# long/short split
# ---------------------------------------------------------------------------

def test_split_long_partition_and_membership():
    cfg = I.make_config(1024, 1)
    fs = I.enumerate_factorizations(cfg)
    f_part, g_part = I.split_long(fs, 1024, Fraction(19, 20))
    assert len(f_part) + len(g_part) == len(fs)
    # x = 2^10: membership decided by N_i > 2^9.5, i.e. N_i >= 2^10 dyadically
    for f in fs:
        expected_long = any(N >= 1024 for N in f.lengths)
        assert (f in f_part) == expected_long


def test_split_long_thresholds():
    cfg = I.make_config(64, 1)
    fs = I.enumerate_factorizations(cfg)
    with pytest.raises(ValueError):
        I.split_long(fs, 64, Fraction(0))
    f1, g1 = I.split_long(fs, 64, Fraction(1))
    # the predicate is N_i > x; blocks above x exist (up to 3x), so f is nonempty
    assert f1 and all(any(N > 64 for N in f.lengths) for f in f1)
