"""Dirichlet polynomials on the line Re(s) = c: evaluation, unit-interval
sups, large-value classification, and the R / R* counting machinery.

A factor is one short polynomial S(s) = sum_{N < n <= 2N} a_n n^{-s} with
unit, log, or Moebius coefficients (or the singleton constant 1).  Products
of factors are classified over integer unit intervals [m, m+1]: each factor
lands in a dyadic magnitude band N^(1-c) 2^(-b), and the profile of band
indices partitions [T, 2T] exactly (everything below the 1/x floor falls
into the leftover class S0).

The sup over a unit interval is approximated by G equally spaced samples
plus golden-section refinement around the best sample; this underestimates
the true sup by at most a Lipschitz factor |S'| <= sum |a_n| log(n) n^{-c},
which callers can query via `lipschitz_bound`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError
from .identity import CoefficientClass, mobius_sieve

EVAL_BUDGET = 10**7
GOLDEN = (math.sqrt(5) - 1) / 2


# ---------------------------------------------------------------------------
# Factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyFactor:
    cls: CoefficientClass
    N: Fraction
    mobius_cutoff: int | None = None  # optional truncation of the top block

    def __post_init__(self):
        if self.cls is CoefficientClass.SINGLETON:
            if self.N != Fraction(1, 2):
                raise ValueError("singleton factors have N = 1/2")
        elif self.N < 1 or self.N.denominator != 1:
            raise ValueError("non-singleton factors need integer dyadic N >= 1")
        if self.N > EVAL_BUDGET:
            raise CapacityError(f"factor length {self.N} over direct-summation budget")

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        """(values, coefficients) of the factor, ascending."""
        if self.cls is CoefficientClass.SINGLETON:
            return np.array([1], dtype=np.int64), np.array([1.0])
        lo, hi = int(self.N), int(2 * self.N)
        if self.cls is CoefficientClass.MOBIUS and self.mobius_cutoff is not None:
            hi = min(hi, self.mobius_cutoff)
        ns = np.arange(lo + 1, hi + 1, dtype=np.int64)
        if self.cls is CoefficientClass.UNIT:
            an = np.ones(len(ns))
        elif self.cls is CoefficientClass.LOG:
            an = np.log(ns.astype(np.float64))
        else:
            mu = mobius_sieve(hi)
            an = mu[ns].astype(np.float64)
        keep = an != 0.0
        return ns[keep], an[keep]


def unit_factor(N) -> PolyFactor:
    return PolyFactor(CoefficientClass.UNIT, Fraction(N))


def log_factor(N) -> PolyFactor:
    return PolyFactor(CoefficientClass.LOG, Fraction(N))


def mobius_factor(N, cutoff: int | None = None) -> PolyFactor:
    return PolyFactor(CoefficientClass.MOBIUS, Fraction(N), cutoff)


def singleton_factor() -> PolyFactor:
    return PolyFactor(CoefficientClass.SINGLETON, Fraction(1, 2))


def eval_factor(f: PolyFactor, c: float, t: float) -> complex:
    """sum a_n n^(-c-it) by direct compensated summation."""
    ns, an = f.support()
    if len(ns) == 0:
        return 0.0 + 0.0j
    mags = an * ns.astype(np.float64) ** (-c)
    phases = -t * np.log(ns.astype(np.float64))
    re = math.fsum((mags * np.cos(phases)).tolist())
    im = math.fsum((mags * np.sin(phases)).tolist())
    return complex(re, im)


def eval_factor_grid(f: PolyFactor, c: float, ts: np.ndarray) -> np.ndarray:
    """Vectorized factor values on an array of t (chunked against the budget)."""
    ns, an = f.support()
    if len(ns) == 0:
        return np.zeros(len(ts), dtype=complex)
    logs = np.log(ns.astype(np.float64))
    mags = an * np.exp(-c * logs)
    out = np.empty(len(ts), dtype=complex)
    chunk = max(1, EVAL_BUDGET // max(1, len(ns)))
    for a in range(0, len(ts), chunk):
        tt = ts[a : a + chunk]
        out[a : a + chunk] = np.exp(-1j * np.outer(tt, logs)) @ mags
    return out


def eval_product_grid(factors: Sequence[PolyFactor], c: float, ts: np.ndarray) -> np.ndarray:
    out = np.ones(len(ts), dtype=complex)
    for f in factors:
        out *= eval_factor_grid(f, c, ts)
    return out


def lipschitz_bound(f: PolyFactor, c: float) -> float:
    """|S'(c+it)| <= sum |a_n| log(n) n^(-c), the documented sup padding."""
    ns, an = f.support()
    if len(ns) == 0:
        return 0.0
    nf = ns.astype(np.float64)
    return float(np.sum(np.abs(an) * np.log(np.maximum(nf, 2.0)) * nf**-c))


# ---------------------------------------------------------------------------
# Unit-interval sups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SupEstimate:
    value: float
    samples: int


def sup_on_unit_interval(
    factors: Sequence[PolyFactor] | PolyFactor,
    c: float,
    m: int,
    samples: int = 32,
    refine_iters: int = 3,
) -> SupEstimate:
    """Approximate sup over [m, m+1] of |prod S_i(c+it)|."""
    if m < 1:
        raise ValueError("m must be >= 1")
    fs = [factors] if isinstance(factors, PolyFactor) else list(factors)
    ts = m + np.linspace(0.0, 1.0, samples + 1)
    vals = np.abs(eval_product_grid(fs, c, ts))
    best = int(np.argmax(vals))
    peak = float(vals[best])
    used = len(ts)
    lo = ts[max(0, best - 1)]
    hi = ts[min(len(ts) - 1, best + 1)]
    for _ in range(refine_iters):
        t1 = hi - GOLDEN * (hi - lo)
        t2 = lo + GOLDEN * (hi - lo)
        v = np.abs(eval_product_grid(fs, c, np.array([t1, t2])))
        used += 2
        peak = max(peak, float(v.max()))
        if v[0] >= v[1]:
            hi = t2
        else:
            lo = t1
    return SupEstimate(peak, used)


def _sup_grid(
    fs: Sequence[PolyFactor], c: float, ms: np.ndarray,
    samples: int, refine_iters: int,
) -> np.ndarray:
    """Vectorized per-interval sups of |prod fs| for every m in ms."""
    offsets = np.linspace(0.0, 1.0, samples + 1)
    ts = (ms[:, None] + offsets[None, :]).ravel()
    vals = np.abs(eval_product_grid(fs, c, ts)).reshape(len(ms), samples + 1)
    best = np.argmax(vals, axis=1)
    peak = vals[np.arange(len(ms)), best]
    lo = ms + offsets[np.maximum(best - 1, 0)]
    hi = ms + offsets[np.minimum(best + 1, samples)]
    for _ in range(refine_iters):
        t1 = hi - GOLDEN * (hi - lo)
        t2 = lo + GOLDEN * (hi - lo)
        v1 = np.abs(eval_product_grid(fs, c, t1))
        v2 = np.abs(eval_product_grid(fs, c, t2))
        peak = np.maximum(peak, np.maximum(v1, v2))
        take_left = v1 >= v2
        hi = np.where(take_left, t2, hi)
        lo = np.where(take_left, lo, t1)
    return peak


# ---------------------------------------------------------------------------
# Large-value classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LargeValueProfile:
    """One magnitude cell: per-factor dyadic band indices b_i >= 0.

    Band b corresponds to sup in [N^(1-c) 2^(-b-1), N^(1-c) 2^(-b)) shifted
    so that b = 0 is the top cell sigma_i = 1; sigma_i = 1 - b log2 / log N_i
    whenever log N_i > 0.  Singleton factors sit in the top cell by
    convention.
    """

    band_indices: tuple[int, ...]
    c: float
    lengths: tuple[Fraction, ...]

    @property
    def sigmas(self) -> tuple[float, ...]:
        out = []
        for b, N in zip(self.band_indices, self.lengths):
            logN = math.log(float(N))
            if logN > 0:
                out.append(1.0 - b * math.log(2.0) / logN)
            else:
                out.append(1.0)
        return tuple(out)

    def aggregate_sigma(self) -> float:
        """sigma with x1^sigma = prod N_i^(sigma_i), i.e. x1 2^(-sum b)."""
        x1 = float(math.prod(self.lengths))
        return 1.0 - sum(self.band_indices) * math.log(2.0) / math.log(x1)


@dataclass
class Classification:
    factors: tuple[PolyFactor, ...]
    c: float
    T: float
    cells: dict[LargeValueProfile, list[int]]
    s0: list[int]
    sups: dict[int, float] = field(default_factory=dict)  # product sup per m

    def total(self) -> int:
        return sum(len(v) for v in self.cells.values()) + len(self.s0)


def band_index(sup: float, N: Fraction, c: float, floor_x: float) -> int | None:
    """Dyadic band of a factor sup; None marks the S0 leftover class.

    b is the largest grid step with N^(1-c) 2^(-b) <= sup (clamped at the top
    cell b = 0); sups below N^(1-c)/floor_x fall into S0.
    """
    top = float(N) ** (1.0 - c)
    if sup <= 0.0:
        return None
    b = max(0, math.ceil(math.log2(top / sup) - 1e-12))
    b_max = math.floor(math.log2(float(N) * floor_x) + 1e-12)
    if b > b_max:
        return None
    return b


def classify_profile(
    factors: Sequence[PolyFactor],
    c: float,
    T: float,
    floor_x: float | None = None,
    samples: int = 32,
    refine_iters: int = 3,
) -> Classification:
    """Assign every integer m in [T, 2T] to one profile cell or S0."""
    if T < 1:
        raise ValueError("T must be >= 1")
    fs = tuple(factors)
    ms = np.arange(math.ceil(T), math.floor(2 * T) + 1, dtype=np.int64)
    if floor_x is None:
        floor_x = max(2.0, float(math.prod(f.N for f in fs)))
    actives = [f for f in fs if f.cls is not CoefficientClass.SINGLETON]
    per_factor = [
        _sup_grid([f], c, ms.astype(np.float64), samples, refine_iters)
        for f in actives
    ]
    prod_sup = _sup_grid(fs, c, ms.astype(np.float64), samples, refine_iters)

    cells: dict[LargeValueProfile, list[int]] = {}
    s0: list[int] = []
    sups: dict[int, float] = {}
    lengths = tuple(f.N for f in fs)
    for i, m in enumerate(ms.tolist()):
        sups[m] = float(prod_sup[i])
        bands: list[int] = []
        dead = False
        for f, sup_arr in zip(actives, per_factor):
            b = band_index(float(sup_arr[i]), f.N, c, floor_x)
            if b is None:
                dead = True
                break
            bands.append(b)
        if dead:
            s0.append(m)
            continue
        # singleton factors occupy the top cell by convention
        full_bands = []
        it = iter(bands)
        for f in fs:
            full_bands.append(0 if f.cls is CoefficientClass.SINGLETON else next(it))
        profile = LargeValueProfile(tuple(full_bands), c, lengths)
        cells.setdefault(profile, []).append(m)
    return Classification(fs, c, float(T), cells, s0, sups)


# ---------------------------------------------------------------------------
# R / R* counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LargeValueCounts:
    T: float
    R: int
    R_star: int
    profile: LargeValueProfile | None = None
    x1: float | None = None
    sigma_agg: float | None = None
    mu: float | None = None


def count_R_Rstar(
    members: Iterable[int],
    T: float,
    profile: LargeValueProfile | None = None,
    T0: float | None = None,
) -> LargeValueCounts:
    """R = |members|, R* = #{(m1,m2,m3,m4): m1+m2 = m3+m4} via pair sums."""
    ms = sorted(members)
    if any(not (T <= m <= 2 * T) for m in ms):
        raise ValueError("member set must sit inside [T, 2T]")
    pair_sums = Counter()
    for i, a in enumerate(ms):
        for b in ms:
            pair_sums[a + b] += 1
    r_star = sum(v * v for v in pair_sums.values())
    x1 = sigma = mu = None
    if profile is not None:
        x1 = float(math.prod(profile.lengths))
        sigma = profile.aggregate_sigma()
        if T0 is not None and T0 > 1:
            mu = math.log(x1) / math.log(T0)
    return LargeValueCounts(float(T), len(ms), r_star, profile, x1, sigma, mu)


def rstar_bruteforce(members: Sequence[int]) -> int:
    """O(R^4) quadruple enumeration (the oracle for count_R_Rstar)."""
    ms = np.asarray(sorted(members), dtype=np.int64)
    if len(ms) == 0:
        return 0
    sums = (ms[:, None] + ms[None, :]).ravel()
    return int(np.count_nonzero(sums[:, None] == sums[None, :]))


def ap_rstar_exact(R: int) -> int:
    """Closed form (2R^3 + R)/3 for an arithmetic progression of length R."""
    return (2 * R**3 + R) // 3


# ---------------------------------------------------------------------------
# Published-bound comparison formulas (constants set to 1; monitored)
# ---------------------------------------------------------------------------

def _log_scale(N: float, T: float) -> float:
    return max(1.0, math.log(max(N, T)))


def montgomery_rhs(N: float, sigma_prime: float, T: float, mean_sq: float) -> float:
    """Mean-value comparison value log * (N^(2-2s') + T N^(1-2s')) * mean_sq."""
    if N < 1 or not (sigma_prime <= 2.0):
        raise ValueError("need N >= 1 and sigma' <= 2")
    return _log_scale(N, T) * (N ** (2 - 2 * sigma_prime) + T * N ** (1 - 2 * sigma_prime)) * mean_sq


def huxley_rhs(N: float, sigma: float, T: float, mean_sq: float) -> float:
    """Large-values comparison log^2 * (N^(2-2s) + T N^(4-6s)) * (1+mean_sq)^3."""
    if N < 1:
        raise ValueError("need N >= 1")
    return (
        _log_scale(N, T) ** 2
        * (N ** (2 - 2 * sigma) + T * N ** (4 - 6 * sigma))
        * (1 + mean_sq) ** 3
    )


def hb_rstar_rhs(R: int, R_star: int, N: float, sigma_prime: float, T: float) -> float:
    """Implicit R* comparison value; zero iff R = 0."""
    if R == 0:
        return 0.0
    first = R * N + R**2 + R ** 1.25 * math.sqrt(T)
    second = R_star * N + R**4 + R * R_star**0.75 * math.sqrt(T)
    return N ** (1 - 2 * sigma_prime) * math.sqrt(first) * math.sqrt(second)


def hb_rstar_check(counts: LargeValueCounts, N: float, sigma_prime: float, T: float) -> dict:
    rhs = hb_rstar_rhs(counts.R, counts.R_star, N, sigma_prime, T)
    ratio = float("nan") if rhs == 0 else counts.R_star / rhs
    return {
        "R": counts.R,
        "R_star": counts.R_star,
        "rhs": rhs,
        "ratio": ratio,
        "vacuous": counts.R == 0,
    }
