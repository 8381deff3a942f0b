# Two specialisations of Malle's AGL(3,2) octic have prime-square discriminants.
from kfree.discverify import field_discriminant
from kfree.families import malle_polynomial
from kfree.intpoly import format_poly

for a in (4, 6):
    f = malle_polynomial(a)
    res = field_discriminant(f)
    print(f"a = {a}: {format_poly(f)}")
    print(f"   polynomial disc {res.poly_disc}")
    print(f"   field disc      {res.field_disc}")
    for p, d in sorted(res.per_prime.items()):
        print(f"     p = {p}: v_p = {d.valuation}, index {d.index_valuation}, via {d.method.value}")
