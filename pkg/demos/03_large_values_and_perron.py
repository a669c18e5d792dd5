#!/usr/bin/env python3
"""Large-value cells of a polynomial product and a truncated window estimate."""

import math

from gapscope.dirichlet import (
    classify_profile,
    count_R_Rstar,
    mobius_factor,
    unit_factor,
)
from gapscope.experiments import analyze_classification, octave_residuals
from gapscope.perron import make_perron_params, perron_window

factors = [unit_factor(16), mobius_factor(8)]
c, T = 1.12, 80.0
cls = classify_profile(factors, c, T)
print(f"Classifying |S_1 S_2| over [{T:.0f}, {2*T:.0f}] "
      f"({cls.total()} unit intervals, {len(cls.s0)} in the leftover class):")
for rep in analyze_classification(cls)[:8]:
    print(f"  sigmas {tuple(round(s, 3) for s in rep.sigmas)}:  R = {rep.R:3d}  "
          f"R* = {rep.R_star:6d}   R/mean-value-rhs = {rep.mont_ratio:.4f}")

members = max(cls.cells.values(), key=len)
counts = count_R_Rstar(members, T)
print(f"\nBusiest cell: R = {counts.R}, R* = {counts.R_star} "
      f"(sandwich {counts.R**2} <= {counts.R_star} <= {counts.R**3})")

print("\nTruncated window estimate (y = 201.5, tau = 10, unit block (128, 256]):")
params = make_perron_params(201.5, 10.0)
rep = perron_window(params, [unit_factor(128)])
print(f"  T0 = {params.T0:.0f}: estimate {rep.estimate:.6f}  "
      f"direct {rep.direct:.0f}  residual {rep.residual:.2e}")
print(f"  envelope base y log^2 y / T0 + log y = {rep.envelope_base:.2f}  "
      f"implied constant {rep.implied_constant:.2e}")

print("\nResidual per octave of truncation heights (max over 6 samples each):")
octs, K = octave_residuals(201.5, 10.0, [unit_factor(128)])
for j, r in enumerate(octs):
    print(f"  [T0*2^{j}, T0*2^{j+1}): {r:.3e}")
