# Degree 6 fields from the 4-cycle cover of X^3 - X - 1.
#
# Integer u always leaves 2^6 or 2^11 in the discriminant; taking u = a/8
# makes 2 unramified and the tame exponents (at most 3) do the rest.
from kfree.families import lemlast_family
from kfree.intpoly import format_poly, parse_poly
from kfree.search import Campaign, Mode, counted, scan

cover = lemlast_family(parse_poly("X^3 - X - 1"))
print("F =", format_poly(cover.F))

ints = scan(Campaign(cover, (-100, 100), k=4, mode=Mode.PREDICT_AND_VERIFY))
print("integer u: ", sorted({r.disc.exponent(2) for r in ints}), "are the 2-adic exponents seen")

rats = scan(Campaign(cover, (-3, 3), k=4, mode=Mode.PREDICT_AND_VERIFY, denominator=8))
for r in counted(rats)[:8]:
    print(f"  u = {str(r.t0):>6}  disc {r.disc}")
