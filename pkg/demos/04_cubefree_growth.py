# Count distinct cubefree quartic fields from X^4 - X^2 - u and fit the
# growth exponent.  The window is kept small so this runs in seconds; the
# acceptance suite runs the same thing up to u = 100000.
import sys

from kfree.families import quadratic_twist_compose
from kfree.intpoly import parse_poly
from kfree.search import Campaign, count_fit, counted, default_grid, disc_bound_check, scan

hi = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
cover = quadratic_twist_compose(parse_poly("X^2 - X"), parse_poly("X"))
records = scan(Campaign(cover, (1, hi), k=3))
good = counted(records)
print(f"{len(records)} fields scanned, {len(good)} distinct with cubefree discriminant")

grid = default_grid(records, (1, hi))
fit = count_fit(records, grid, cover.sum_finite_index)
for B, n in zip(fit.grid, fit.counts):
    print(f"  N({B:14.0f}) = {n}")
print(f"alpha_hat = {fit.alpha_hat:.3f}   alpha* = {fit.alpha_star:.3f}   residual {fit.residual:.3f}")

bound = disc_bound_check(records, cover.sum_finite_index)
print(f"|disc| <= {bound.C:.0f} u^{bound.exponent}, violations: {len(bound.violations)}")
