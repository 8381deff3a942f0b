# Predict the discriminant of a specialisation from the branch data, then
# compute it exactly and compare.
from kfree.beckmann import predict_specialization
from kfree.discverify import field_discriminant, is_irreducible
from kfree.families import quadratic_twist_compose
from kfree.intpoly import format_poly, monic_integral, parse_poly

cover = quadratic_twist_compose(parse_poly("X^2 - X"), parse_poly("X"))
print("cover:", format_poly(cover.F))
print("bad primes:", sorted(cover.bad_primes))
for b in cover.branch:
    mu = "infinity" if b.mu is None else format_poly(b.mu)
    print(f"  branch {mu:>10}  e = {b.e}  cycle type {b.cycle_type}")

# 2 is a bad prime here and v_2 of the polynomial discriminant is large,
# so the prediction alone cannot certify cubefreeness: the verdict stays
# Undetermined and the exact computation decides.
for t0 in (5, 12, 36, 97, 250):
    report = predict_specialization(cover, t0)
    if not is_irreducible(report.poly):
        print(f"u = {t0:4d}  {format_poly(report.poly)} is reducible")
        continue
    res = field_discriminant(monic_integral(report.poly))
    predicted = {e.prime: e.exponent for e in report.entries}
    verified = {p: d.valuation for p, d in res.per_prime.items() if p not in cover.bad_primes and d.valuation}
    print(f"u = {t0:4d}  disc {str(res.field_disc):>24}  predicted {predicted}  verified {verified}"
          f"  cubefree verdict {report.verdict(3).value}")
