"""Exponent calculus: the least nu proving sum d_n^2 << x^(1+nu) pointwise.

At a grid point (s, mu) — s the aggregate magnitude exponent, mu the ratio
log x1 / log T0 — each available estimate bounds R, R*, or the product R R*
by a power T0^(p + mu q(s)).  Against the targets

    (ii)  R  <= T0 * x1^(1 + nu - 2s)
    (iii) R* <= T0 * x1^(3 + nu - 4s)

such a bound demands nu >= (p-1)/mu + q(s) - 1 + 2s (for R), the analogous
form with -3 + 4s (for R*), or the averaged form (for R R*).  An R-bound
whose exponent is at most mu(1-s) instead lands in the negligible regime
(condition "R << x1^(1-s)") and demands nothing.

Routes:
  * the published large-value estimates (the `BoundCatalog`), each a single
    exponent valid on a sigma range;
  * the combination derivations, which split the product polynomial into two
    halves M <= N with a guaranteed floor on M and case-split on which term
    of the governing mean-value estimate dominates.  A combination route is
    adversarial over its internal cases, so it contributes the max of its
    case demands; the overall demand at (s, mu) is the min over routes.

All arithmetic is exact (Fractions); epsilon refinements are dropped and the
log-power savings of the negligible regime are treated as free, so boundary
comparisons are non-strict.  The polynomial-structure reduction (every
factor short except at most one of length <= x1^(3/5)) is assumed here; its
inequality chains are certified separately in the builtin ledger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .claims import MU_RANGE

Q = Fraction

SIGMA_RANGE = (Q(1, 2), Q(1))
NU_FLOOR = Q(29, 120)  # configured floor; flagged if the optimum dips below


# ---------------------------------------------------------------------------
# Published bound catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """R or R* bounded by T0^(num(s)/den(s)) on [s_lo, s_hi] (den > 0 there)."""

    name: str
    kind: str  # "R" or "Rstar"
    num: tuple[Fraction, Fraction]  # a + b s
    den: tuple[Fraction, Fraction]
    s_lo: Fraction
    s_hi: Fraction

    def applies(self, s: Fraction) -> bool:
        if not (self.s_lo <= s <= self.s_hi):
            return False
        return self._den(s) > 0

    def _den(self, s: Fraction) -> Fraction:
        return self.den[0] + self.den[1] * s

    def exponent(self, s: Fraction) -> Fraction:
        return (self.num[0] + self.num[1] * s) / self._den(s)


def _entry(name, kind, num, den, s_lo, s_hi) -> CatalogEntry:
    return CatalogEntry(
        name, kind,
        (Q(num[0]), Q(num[1])), (Q(den[0]), Q(den[1])),
        Q(s_lo), Q(s_hi),
    )


@dataclass(frozen=True)
class BoundCatalog:
    entries: tuple[CatalogEntry, ...]

    def applicable(self, s: Fraction, kind: str | None = None) -> list[CatalogEntry]:
        return [
            e for e in self.entries
            if e.applies(s) and (kind is None or e.kind == kind)
        ]


def builtin_catalog() -> BoundCatalog:
    return BoundCatalog((
        _entry("mean-value", "R", (3, -3), (2, -1), "1/2", "3/4"),
        _entry("large-values", "R", (3, -3), (-1, 3), "3/4", 1),
        _entry("r-short-range", "R", (3, -3), (-7, 10), "7/10", "25/28"),
        _entry("r-near-one", "R", (4, -4), (-1, 4), "25/28", 1),
        _entry("trivial", "R", (1, 0), (1, 0), "1/2", 1),
        _entry("rstar-low", "Rstar", ("15/2", -8), (1, 0), "1/2", "3/4"),
        _entry("rstar-high", "Rstar", (12, -12), (-1, 4), "3/4", 1),
    ))


# ---------------------------------------------------------------------------
# Demand of a single bound against the targets
# ---------------------------------------------------------------------------

def _demand(kind: str, e: Fraction, s: Fraction, mu: Fraction) -> Fraction | None:
    """Least nu so that a bound T0^e on `kind` implies (ii)/(iii); None means
    the bound is negligible (condition (i))."""
    if kind == "R":
        if e <= mu * (1 - s):
            return None
        return (e - 1) / mu - 1 + 2 * s
    if kind == "Rstar":
        return (e - 1) / mu - 3 + 4 * s
    if kind == "RRstar":
        return ((e - 2) / mu - 4 + 6 * s) / 2
    raise ValueError(kind)


Case = tuple[str, Fraction, Fraction]  # (kind, p, q): bound T0^(p + mu q)


def _case_demand(case: Case, s: Fraction, mu: Fraction) -> Fraction:
    kind, p, q = case
    d = _demand(kind, p + mu * q, s, mu)
    return Q(0) if d is None else max(Q(0), d)


# ---------------------------------------------------------------------------
# Combination routes
# ---------------------------------------------------------------------------

def _comb_low_cases(s: Fraction, mu: Fraction) -> Optional[list[Case]]:
    """Split routes for s <= 3/4 (mean-value estimate on both halves)."""
    if s > Q(3, 4) or mu > 2:
        return None
    cases: list[Case] = [("R", Q(1), Q(1, 2) - s)]  # both halves short
    if mu <= Q(5, 3):
        # the split can always keep both halves below T0
        return cases
    if s < Q(7, 10):
        return None  # the floor M >= x1^(2/5) is only certified from 7/10 on
    g = Q(2, 5)  # M >= x1^g
    cases += [
        ("RRstar", Q(0), 4 - 4 * s),
        ("Rstar", Q(3, 4), Q(7, 2) * (1 - s) - Q(5, 4) * g),
        ("Rstar", Q(2, 5), Q(16, 5) * (1 - s) - Q(4, 5) * g),
    ]
    return cases


def _comb_high_cases(s: Fraction, mu: Fraction) -> Optional[list[Case]]:
    """Split routes for 3/4 <= s <= 13/16 (large-values estimate)."""
    if not (Q(3, 4) <= s <= Q(13, 16)):
        return None
    if not (Q(8, 5) <= mu <= 4 / (4 * s - 1)):
        return None
    if mu >= Q(5, 3):
        g, h = Q(2, 5), Q(0)  # M >= x1^(2/5)
    else:
        g, h = Q(1), Q(-1)  # M >= x1 / T0
    return [
        ("R", Q(1), 2 - 3 * s),
        ("R", Q(1, 2), Q(3, 2) - 2 * s),
        ("R", Q(0), 1 - s),
        ("RRstar", Q(0), 4 - 4 * s),
        ("Rstar", Q(3, 8) - Q(5, 4) * h, Q(17, 4) * (1 - s) - Q(5, 4) * g),
        ("Rstar", Q(2, 5) - Q(4, 5) * h, Q(16, 5) * (1 - s) - Q(4, 5) * g),
    ]


def _comb_mid_cases(s: Fraction, mu: Fraction) -> Optional[list[Case]]:
    """Raised-polynomial routes for 13/16 <= s <= 25/28 at large mu."""
    if not (Q(13, 16) <= s <= Q(25, 28)):
        return None
    if not (4 / (4 * s - 1) <= mu <= 3 / (10 * s - 7)):
        return None
    short = [
        (7 - 7 * s) / (3 * s - 1),
        (18 - 19 * s) / (6 * s - 2),
        (34 - 34 * s) / (15 * s - 5),
    ]
    long = short + [
        (69 - 73 * s) / (24 * s - 8),
        (31 - 31 * s) / (15 * s - 5),
        (128 - 124 * s) / (60 * s - 15),
    ]
    return [
        ("R", (4 - 4 * s) / (4 * s - 1), Q(0)),  # lands in the negligible regime
        ("Rstar", max(short), Q(0)),
        ("Rstar", max(long), Q(0)),
    ]


_COMBINATION_ROUTES: tuple[tuple[str, Callable], ...] = (
    ("split-low", _comb_low_cases),
    ("split-high", _comb_high_cases),
    ("split-mid", _comb_mid_cases),
)


# ---------------------------------------------------------------------------
# required_nu and the grid optimizer
# ---------------------------------------------------------------------------

def required_nu(
    sigma: Fraction, mu: Fraction, cat: BoundCatalog | None = None
) -> Optional[Fraction]:
    """Least nu provable at (sigma, mu); None when condition (i) already holds.

    Exact over Fractions.  min over routes; a combination route is the max
    over its internal cases.
    """
    s, mu = Q(sigma), Q(mu)
    if not (SIGMA_RANGE[0] <= s <= SIGMA_RANGE[1]):
        raise ValueError(f"sigma={s} outside [1/2, 1]")
    if not (MU_RANGE[0] <= mu <= MU_RANGE[1]):
        raise ValueError(f"mu={mu} outside [4/3, 19/9]")
    cat = cat or builtin_catalog()

    demands: list[Fraction] = []
    for entry in cat.applicable(s):
        d = _demand(entry.kind, entry.exponent(s), s, mu)
        if d is None:
            return None  # negligible: any nu is admissible
        demands.append(d)
    for _name, route in _COMBINATION_ROUTES:
        cases = route(s, mu)
        if cases is not None:
            demands.append(max(_case_demand(c, s, mu) for c in cases))
    return max(Q(0), min(demands))


def required_nu_value(sigma, mu, cat: BoundCatalog | None = None) -> Fraction:
    """required_nu with the negligible regime collapsed to 0."""
    d = required_nu(sigma, mu, cat)
    return Q(0) if d is None else d


@dataclass
class OptimizeResult:
    nu_star: Fraction
    argmax: tuple[Fraction, Fraction]
    maximizing_mu: list[Fraction]  # mu grid cells attaining nu_star at argmax sigma
    grid: list[tuple[Fraction, Fraction, Fraction]]
    below_floor: bool
    refinement_levels: int

    def as_dict(self) -> dict:
        return {
            "nu_star": str(self.nu_star),
            "nu_star_float": float(self.nu_star),
            "argmax_sigma": str(self.argmax[0]),
            "argmax_mu": str(self.argmax[1]),
            "maximizing_mu": [str(m) for m in self.maximizing_mu],
            "below_floor_29_120": self.below_floor,
            "refinement_levels": self.refinement_levels,
            "grid_cells": len(self.grid),
        }


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    """Multiples of step inside [lo, hi], plus both endpoints."""
    first = -((-lo) // step)  # ceil(lo/step)
    vals = {lo, hi}
    k = first
    while k * step <= hi:
        vals.add(k * step)
        k += 1
    return sorted(vals)


def optimize_nu(
    resolution: Fraction = Q(1, 64),
    cat: BoundCatalog | None = None,
    sigma_range: tuple[Fraction, Fraction] = SIGMA_RANGE,
    mu_range: tuple[Fraction, Fraction] = MU_RANGE,
    refine_levels: int = 6,
    threads: int = 1,
) -> OptimizeResult:
    """Grid supremum of required_nu with dyadic-midpoint refinement."""
    resolution = Q(resolution)
    if resolution > Q(1, 64):
        raise ValueError("resolution must be <= 1/64")
    cat = cat or builtin_catalog()
    sig = _grid(Q(sigma_range[0]), Q(sigma_range[1]), resolution)
    mus = _grid(Q(mu_range[0]), Q(mu_range[1]), resolution)

    def row(s: Fraction) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [(s, m, required_nu_value(s, m, cat)) for m in mus]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, sig))
    else:
        rows = [row(s) for s in sig]
    grid = [cell for r in rows for cell in r]

    nu_star = max(v for _, _, v in grid)
    argmax = next((s, m) for s, m, v in grid if v == nu_star)
    maximizing_mu = [m for s, m, v in grid if s == argmax[0] and v == nu_star]

    # local refinement: walk dyadic midpoints around the best cell
    best_s, best_m, best_v = argmax[0], argmax[1], nu_star
    step = resolution
    for _ in range(refine_levels):
        step = step / 2
        improved = True
        while improved:
            improved = False
            for ds in (-step, Q(0), step):
                for dm in (-step, Q(0), step):
                    s2 = min(max(best_s + ds, Q(sigma_range[0])), Q(sigma_range[1]))
                    m2 = min(max(best_m + dm, Q(mu_range[0])), Q(mu_range[1]))
                    v2 = required_nu_value(s2, m2, cat)
                    if v2 > best_v:
                        best_s, best_m, best_v = s2, m2, v2
                        improved = True
    return OptimizeResult(
        nu_star=best_v,
        argmax=(best_s, best_m),
        maximizing_mu=maximizing_mu,
        grid=grid,
        below_floor=best_v < NU_FLOOR,
        refinement_levels=refine_levels,
    )


# ---------------------------------------------------------------------------
# Case-region coverage
# ---------------------------------------------------------------------------

SIGMA_NEAR_ONE = 1 - Q(1, 10**22)

REGIONS: tuple[tuple[str, Callable[[Fraction, Fraction], bool]], ...] = (
    ("low-sigma", lambda s, m: s <= Q(3, 4)),
    ("high-sigma-small-mu", lambda s, m: s >= Q(3, 4) and m <= 4 / (4 * s - 1)),
    ("high-sigma-large-mu",
     lambda s, m: Q(3, 4) <= s <= SIGMA_NEAR_ONE and m >= 4 / (4 * s - 1)),
    ("sigma-near-one", lambda s, m: s >= SIGMA_NEAR_ONE),
)


def coverage_check(
    resolution: Fraction = Q(1, 64),
    exclude: Iterable[str] = (),
) -> dict:
    """Check every grid cell of the (sigma, mu) box is claimed by a region."""
    resolution = Q(resolution)
    excluded = set(exclude)
    regions = [(n, f) for n, f in REGIONS if n not in excluded]
    uncovered: list[tuple[str, str]] = []
    doubly: int = 0
    cells = 0
    for s in _grid(*SIGMA_RANGE, resolution):
        for m in _grid(*MU_RANGE, resolution):
            cells += 1
            owners = [n for n, f in regions if f(s, m)]
            if not owners:
                uncovered.append((str(s), str(m)))
            if len(owners) > 1:
                doubly += 1
    return {
        "cells": cells,
        "uncovered": uncovered,
        "covered": not uncovered,
        "multiply_claimed": doubly,
        "excluded": sorted(excluded),
    }
