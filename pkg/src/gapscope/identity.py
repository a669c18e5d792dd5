"""Combinatorial identity machinery for the von Mangoldt function.

Writing M_x(s) = sum_{n <= (3x)^(1/k)} mu(n) n^{-s}, the expansion of
-zeta'/zeta against (1 - M_x zeta)^k gives, for every n <= 3x,

    Lambda(n) = sum_{j=1}^{k} (-1)^(j+1) binom(k, j) K_j(n),

where K_j(n) runs over ordered factorizations n = n_1 ... n_{2j} with the
first j variables Moebius-weighted and capped at the cutoff, the next j-1
unit-weighted, and the last carrying log(n_{2j}).  (The sign here differs
from a common typeset form of the identity; the convolution below is the one
that actually recovers Lambda, which the tests verify numerically.)

The identity is exact for n <= 3x because the discarded term's Dirichlet
coefficients vanish there: each factor of (1 - M_x zeta) is supported on
integers with a divisor above the cutoff, so the k-fold product is supported
above cutoff^k-adjacent values, and (cutoff+1)^k > 3x.

Dyadic decomposition then splits each K_j into products of short polynomials
S_1 ... S_2k over blocks (N_i, 2N_i]; `enumerate_factorizations` lists the
admissible block tuples and `coefficients_of_product` recovers their exact
window coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import CapacityError, WindowError
from .primes import von_mangoldt

EXACTNESS_TOL = 1e-9


class CoefficientClass(Enum):
    MOBIUS = "mobius"
    UNIT = "unit"
    LOG = "log"
    SINGLETON = "singleton"  # length 1/2, only term n_i = 1


@dataclass(frozen=True)
class IdentityConfig:
    x: int
    k: int
    mobius_cutoff: int

    def __post_init__(self):
        if self.x < 2 or self.k < 1:
            raise ValueError("need x >= 2 and k >= 1")
        c = self.mobius_cutoff
        if not (c**self.k <= 3 * self.x < (c + 1) ** self.k):
            raise ValueError("mobius_cutoff is not floor((3x)^(1/k))")


def make_config(x: int, k: int) -> IdentityConfig:
    return IdentityConfig(x, k, _integer_root(3 * x, k))


def _integer_root(n: int, k: int) -> int:
    """floor(n^(1/k)) by correction of the float estimate."""
    if n < 0 or k < 1:
        raise ValueError
    r = max(1, int(round(n ** (1.0 / k))))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


# ---------------------------------------------------------------------------
# Moebius function
# ---------------------------------------------------------------------------

def mobius(n: int) -> int:
    """mu(n) via factorization."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1
    m = n
    for p in (2, 3):
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                result = -result
        f += 6
    if m > 1:
        result = -result
    return result


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(1..limit) as an int8 array (index 0 unused)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    primes_done = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if not primes_done[p]:
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
            primes_done[p::p] = True
    return mu


# ---------------------------------------------------------------------------
# K_j convolutions
# ---------------------------------------------------------------------------

def compute_Kj(n: int, j: int, cfg: IdentityConfig) -> float:
    """The 2j-fold convolution at a single n."""
    if not (1 <= j <= cfg.k):
        raise ValueError("need 1 <= j <= k")
    if n > 3 * cfg.x:
        raise ValueError("n beyond 3x")
    cut = cfg.mobius_cutoff

    @lru_cache(maxsize=None)
    def unit_part(m: int, slots: int) -> float:
        # (1^(*slots) * log)(m)
        if slots == 0:
            return math.log(m)
        return sum(unit_part(m // d, slots - 1) for d in _divisors(m))

    @lru_cache(maxsize=None)
    def mob_part(m: int, slots: int) -> float:
        if slots == 0:
            return unit_part(m, j - 1)
        total = 0.0
        for d in _divisors(m):
            if d <= cut:
                mu = mobius(d)
                if mu:
                    total += mu * mob_part(m // d, slots - 1)
        return total

    return mob_part(n, j)


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    small = []
    large = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def identity_weight(k: int, j: int) -> int:
    """c_j = (-1)^(j+1) * binom(k, j); the sign that recovers Lambda."""
    return (-1) ** (j + 1) * math.comb(k, j)


def lambda_via_identity(n: int, cfg: IdentityConfig) -> float:
    """Evaluate sum_j c_j K_j(n); equals Lambda(n) on the window [x, 3x]."""
    if not (cfg.x <= n <= 3 * cfg.x):
        raise WindowError(f"n={n} outside [{cfg.x}, {3 * cfg.x}]")
    return math.fsum(
        identity_weight(cfg.k, j) * compute_Kj(n, j, cfg) for j in range(1, cfg.k + 1)
    )


def kj_table(cfg: IdentityConfig, j: int) -> np.ndarray:
    """K_j(n) for all n <= 3x as a float array (index 0 unused)."""
    N = 3 * cfg.x
    mu = mobius_sieve(N).astype(np.float64)
    mu[cfg.mobius_cutoff + 1 :] = 0.0
    logs = np.zeros(N + 1)
    logs[1:] = np.log(np.arange(1, N + 1, dtype=np.float64))
    ones = np.ones(N + 1)
    ones[0] = 0.0
    acc = logs
    for _ in range(j - 1):
        acc = _dirichlet_convolve(ones, acc)
    for _ in range(j):
        acc = _dirichlet_convolve(mu, acc)
    return acc


def _dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    N = len(a) - 1
    out = np.zeros(N + 1)
    for i in range(1, N + 1):
        ai = a[i]
        if ai != 0.0:
            m = N // i
            out[i :: i] += ai * b[1 : m + 1]
    return out


def identity_residuals(cfg: IdentityConfig) -> np.ndarray:
    """|sum_j c_j K_j(n) - Lambda(n)| for n in (x, 3x], via batched tables."""
    N = 3 * cfg.x
    total = np.zeros(N + 1)
    for j in range(1, cfg.k + 1):
        total += identity_weight(cfg.k, j) * kj_table(cfg, j)
    lam = np.array([0.0] + [von_mangoldt(n) for n in range(1, N + 1)])
    window = slice(cfg.x + 1, N + 1)
    return np.abs(total[window] - lam[window])


# ---------------------------------------------------------------------------
# Dyadic factorizations
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Factorization:
    """One dyadic block tuple (N_1..N_2k) with its identity weight c_j."""

    j: int
    k: int
    lengths: tuple[Fraction, ...]
    classes: tuple[CoefficientClass, ...]
    weight: int

    def validate(self, cfg: IdentityConfig) -> None:
        k, j = self.k, self.j
        assert k == cfg.k and 1 <= j <= k
        assert len(self.lengths) == 2 * k == len(self.classes)
        prod = Fraction(1)
        for i, (N, cls) in enumerate(zip(self.lengths, self.classes), start=1):
            prod *= N
            assert N == HALF or (N.denominator == 1 and _is_pow2(N.numerator))
            forced = (j < i <= k) or (k + j <= i < 2 * k)
            if forced:
                assert N == HALF and cls is CoefficientClass.SINGLETON
            if N == HALF:
                assert cls is CoefficientClass.SINGLETON
            elif i <= k:
                assert cls is CoefficientClass.MOBIUS and N <= cfg.mobius_cutoff
            elif i < 2 * k:
                assert cls is CoefficientClass.UNIT
            else:
                assert cls is CoefficientClass.LOG
        assert Fraction(cfg.x, 2 ** (2 * k)) <= prod <= 3 * cfg.x
        assert self.weight == identity_weight(k, j)

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "lengths": [str(N) for N in self.lengths],
            "classes": [c.value for c in self.classes],
            "weight": self.weight,
        }


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def enumerate_factorizations(cfg: IdentityConfig) -> list[Factorization]:
    """Every admissible block tuple, each exactly once, in deterministic order.

    Active Moebius slots may sit at any dyadic N below the cutoff (the top
    block is truncated at the cutoff); N = 1/2 marks a slot pinned to n_i = 1
    and is the forced value at placeholder positions.  The log slot skips
    N = 1/2 since log 1 = 0 would zero the product.
    """
    if cfg.k > 6:
        est = (int(math.log2(3 * cfg.x)) + 2) ** (2 * cfg.k)
        raise CapacityError(
            f"enumeration refused for k={cfg.k} > 6 (~{est:g} tuples)"
        )
    k, x, cut = cfg.k, cfg.x, cfg.mobius_cutoff
    lo_prod = Fraction(x, 2 ** (2 * k))
    hi_prod = Fraction(3 * x)

    mob_grid = [HALF] + [Fraction(2**e) for e in range(0, _ceil_log2(cut))]

    out: list[Factorization] = []
    for j in range(1, k + 1):
        weight = identity_weight(k, j)
        # slot spec: (position kind, grid) for the 2j active slots in order
        placeholder_count = 2 * (k - j)
        base = HALF**placeholder_count

        def rec(slot: int, partial: Fraction, chosen: list[Fraction]):
            if slot == 2 * j:
                if lo_prod <= partial <= hi_prod:
                    out.append(_assemble(cfg, j, weight, chosen))
                return
            remaining = 2 * j - slot - 1  # active slots after this one
            if slot < j:
                grid: Iterable[Fraction] = mob_grid
            elif slot < 2 * j - 1:
                grid = _unit_grid(partial, hi_prod, remaining)
            else:
                grid = _log_grid(partial, hi_prod)
            for N in grid:
                nxt = partial * N
                # later slots contribute at least 1/2 each, the log slot >= 1
                min_rest = HALF ** max(0, remaining - 1)
                if nxt * min_rest > hi_prod:
                    break  # grids ascend
                rec(slot + 1, nxt, chosen + [N])

        rec(0, base, [])
    return out


def _ceil_log2(n: int) -> int:
    return max(0, (n - 1).bit_length())


def _unit_grid(partial: Fraction, hi: Fraction, remaining: int):
    yield HALF
    e = 0
    while partial * (2**e) * HALF ** max(0, remaining - 1) <= hi:
        yield Fraction(2**e)
        e += 1


def _log_grid(partial: Fraction, hi: Fraction):
    e = 0
    while partial * (2**e) <= hi:
        yield Fraction(2**e)
        e += 1


def _assemble(cfg: IdentityConfig, j: int, weight: int, chosen: list[Fraction]) -> Factorization:
    k = cfg.k
    lengths = [HALF] * (2 * k)
    for t in range(j):
        lengths[t] = chosen[t]
    for t in range(j - 1):
        lengths[k + t] = chosen[j + t]
    lengths[2 * k - 1] = chosen[2 * j - 1]
    classes = []
    for i, N in enumerate(lengths, start=1):
        if N == HALF:
            classes.append(CoefficientClass.SINGLETON)
        elif i <= k:
            classes.append(CoefficientClass.MOBIUS)
        elif i < 2 * k:
            classes.append(CoefficientClass.UNIT)
        else:
            classes.append(CoefficientClass.LOG)
    f = Factorization(j, k, tuple(lengths), tuple(classes), weight)
    f.validate(cfg)
    return f


def factor_support(N: Fraction, cls: CoefficientClass, cfg: IdentityConfig):
    """The integer support of one dyadic factor with its coefficients."""
    if cls is CoefficientClass.SINGLETON:
        return [(1, 1.0)]
    lo = int(N) if N.denominator == 1 else 0
    hi = int(2 * N)
    if cls is CoefficientClass.MOBIUS:
        hi = min(hi, cfg.mobius_cutoff)
        return [(n, float(m)) for n in range(lo + 1, hi + 1) if (m := mobius(n))]
    if cls is CoefficientClass.UNIT:
        return [(n, 1.0) for n in range(lo + 1, hi + 1)]
    return [(n, math.log(n)) for n in range(lo + 1, hi + 1)]


def coefficients_of_product(
    f: Factorization, cfg: IdentityConfig, window: tuple[int, int] | None = None
) -> dict[int, float]:
    """Exact coefficients of prod S_i on the window (lo, hi] (default (x, 3x])."""
    lo, hi = window if window else (cfg.x, 3 * cfg.x)
    supports = [
        factor_support(N, cls, cfg)
        for N, cls in zip(f.lengths, f.classes)
        if cls is not CoefficientClass.SINGLETON
    ]
    out: dict[int, float] = {}

    def rec(idx: int, n: int, coeff: float):
        if n > hi:
            return
        if idx == len(supports):
            if lo < n <= hi and coeff != 0.0:
                out[n] = out.get(n, 0.0) + coeff
            return
        for v, c in supports[idx]:
            if n * v > hi:
                break  # supports ascend
            rec(idx + 1, n * v, coeff * c)

    rec(0, 1, 1.0)
    return out


def window_coefficient_sum(cfg: IdentityConfig) -> dict[int, float]:
    """sum over factorizations of weight * coefficients, on (x, 3x]."""
    total: dict[int, float] = {}
    for f in enumerate_factorizations(cfg):
        for n, c in coefficients_of_product(f, cfg).items():
            total[n] = total.get(n, 0.0) + f.weight * c
    return total


def split_long(
    factorizations: Iterable[Factorization],
    x: int,
    threshold: Fraction = Fraction(19, 20),
) -> tuple[list[Factorization], list[Factorization]]:
    """Partition by whether some N_i exceeds x^threshold (exact comparison)."""
    if not (0 < threshold <= 1):
        raise ValueError("threshold exponent must be in (0, 1]")
    p, q = threshold.numerator, threshold.denominator
    f_part: list[Factorization] = []
    g_part: list[Factorization] = []
    for f in factorizations:
        long = any(N**q > Fraction(x) ** p for N in f.lengths)
        (f_part if long else g_part).append(f)
    return f_part, g_part
