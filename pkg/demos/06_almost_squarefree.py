# Cubefree discriminants that are also close to squarefree, measured by
# log(N / s(N)) / log N with s(N) the product of primes dividing N once.
from kfree.families import quadratic_twist_compose
from kfree.intpoly import parse_poly
from kfree.search import almost_squarefree_scan

cover = quadratic_twist_compose(parse_poly("X^2 - X"), parse_poly("X*(X - 2)*(X - 3)*(X - 4)*(X - 5)"))
found = almost_squarefree_scan(cover, (-100, 100), k=3, epsilon=0.5)
found.sort(key=lambda r: r.metric)
for r in found[:10]:
    print(f"u = {r.t0:5d}  metric {r.metric:.3f}  disc {r.disc}")
