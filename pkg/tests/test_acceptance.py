"""Acceptance criteria 1-9.

Each test records one PASS/FAIL line; the lines are printed in the terminal
summary of a pytest run and also when this file is run as a script.
"""
from __future__ import annotations

import math
import random
import sys
import time

import pytest

from kfree import gfp
from kfree.beckmann import BranchDatum, build_cover, is_degenerate, predict_specialization
from kfree.discverify import dedekind_test, field_discriminant, is_irreducible, pmax_disc_valuation
from kfree.factor import factor_integer, integer_profile
from kfree.families import (
    a2n_family,
    lemlast_family,
    malle_polynomial,
    quadratic_twist_compose,
    split_sn_family,
)
from kfree.groups import generator_index, named_group
from kfree.intpoly import IPoly, discriminant, monic_integral, parse_poly
from kfree.perm import CycleType, Perm, power_cycle_type, product_action, product_cycle_type
from kfree.search import (
    Campaign,
    Mode,
    almost_squarefree_scan,
    count_fit,
    counted,
    default_grid,
    disc_bound_check,
    scan,
)

from conftest import DISC_LOG

P = parse_poly
REPORT: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self):
        self.start = time.time()
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        took = time.time() - self.start
        line = f"criterion {self.number} [{status}] {self.title}: {self.detail} ({took:.1f}s)"
        if exc_type is not None:
            line += f" -- {exc_type.__name__}: {exc}"
        REPORT.append(line)
        print(line)
        return False


def sqrt_cover():
    return build_cover(P("X^2 - t", param="t"), [
        BranchDatum(P("t", var="t"), 2, CycleType([2]), "zero"),
        BranchDatum(None, 2, CycleType([2]), "infinity"),
    ])


# ---------------------------------------------------------------------------

GI_TABLE = (
    [(f"S{n}", 1) for n in range(2, 8)]
    + [(f"A{n}", 2) for n in range(4, 8)]
    + [(f"C2WrSn({n})", 2) for n in range(2, 5)]
    + [(f"C2WrSnEven({n})", 2) for n in range(2, 5)]
    + [("D5", 2), ("PSL25", 2), ("PSL32", 2), ("AGL32", 2)]
    + [(f"D{n}", (n - 1) // 2) for n in (5, 7, 9)]
    + [(f"C{p}", p - 1) for p in (3, 5, 7)]
)


def test_criterion_1_generator_index_table():
    with Criterion(1, "generator index table") as c:
        t = time.time()
        wrong = [(name, gi, generator_index(named_group(name))) for name, gi in GI_TABLE]
        wrong = [w for w in wrong if w[1] != w[2]]
        c.detail = f"{len(GI_TABLE)} groups, {len(wrong)} wrong"
        assert not wrong, wrong
        assert time.time() - t < 300


def _random_perm(rng, n):
    img = list(range(n))
    rng.shuffle(img)
    return Perm(img)


def test_criterion_2_cycle_formulas():
    with Criterion(2, "cycle formula oracle") as c:
        rng = random.Random(2024)
        bad_prod = bad_pow = 0
        for _ in range(1000):
            g = _random_perm(rng, rng.randint(1, 7))
            h = _random_perm(rng, rng.randint(1, 7))
            if product_cycle_type(g.cycle_type(), h.cycle_type()) != product_action(g, h).cycle_type():
                bad_prod += 1
            k = rng.randint(1, 60)
            if power_cycle_type(g.cycle_type(), k) != (g ** k).cycle_type():
                bad_pow += 1
        c.detail = f"1000 pairs, product mismatches {bad_prod}, power mismatches {bad_pow}"
        assert bad_prod == bad_pow == 0


def _agreement(cover, window):
    """Predicted against verified v_p at every good prime, for every non-branch t0.

    Reducible fibres are included: the discriminant of the etale algebra is
    what the prediction describes there.
    """
    checked = mismatches = 0
    for t0 in range(window[0], window[1] + 1):
        if is_degenerate(cover, t0):
            continue
        report = predict_specialization(cover, t0)
        res = field_discriminant(monic_integral(report.poly))
        assert not res.undetermined
        primes = set(res.per_prime) | {e.prime for e in report.entries}
        for p in primes - cover.bad_primes:
            verified = res.per_prime[p].valuation if p in res.per_prime else 0
            if report.predicted_valuation(p) != verified:
                mismatches += 1
        checked += 1
    return checked, mismatches


def test_criterion_3_beckmann_agreement():
    with Criterion(3, "Beckmann prediction vs Round 2") as c:
        covers = {
            "X^2 - t": sqrt_cover(),
            "split S3": split_sn_family([0, 1, 2]),
            "split S4": split_sn_family([0, 1, 2, 4]),
            "X^4 - X^2 - u": quadratic_twist_compose(P("X^2 - X"), P("X")),
        }
        parts = []
        total = 0
        t = time.time()
        for name, cover in covers.items():
            checked, bad = _agreement(cover, (-200, 200))
            total += bad
            parts.append(f"{name}: {checked} t0, {bad} mismatches")
        c.detail = "; ".join(parts)
        assert total == 0
        assert time.time() - t < 1800


def test_criterion_4_malle():
    with Criterion(4, "Malle AGL(3,2) octics") as c:
        d4 = field_discriminant(malle_polynomial(4, 1)).field_disc
        d6 = field_discriminant(malle_polynomial(6, 1)).field_disc
        c.detail = f"a=4: {d4}, a=6: {d6}"
        for d in (d4, d6):
            assert d.sign == 1 and len(d.factors) == 1 and d.factors[0][1] == 2
            assert d.is_k_free(3)
        assert d4.factors[0][0] != d6.factors[0][0]


def _even_frobenius_check(cover, wanted=100, primes=50):
    types = named_group(cover.group_hint).cycle_types
    n = cover.degree
    fields = 0
    frob = 0
    t0 = 0
    while fields < wanted:
        for s in ((t0,) if t0 == 0 else (t0, -t0)):
            if fields >= wanted or is_degenerate(cover, s):
                continue
            poly = predict_specialization(cover, s).poly
            if not is_irreducible(poly):
                continue
            f = monic_integral(poly)
            res = field_discriminant(f)
            root = math.isqrt(res.value) if res.value > 0 else -1
            assert root * root == res.value, f"s = {s}: {res.field_disc} is not a square"
            fields += 1
            D = res.poly_disc
            p, used = 2, 0
            while used < primes:
                p = int(gfp_next_prime(p))
                if D % p == 0:
                    continue
                ct = CycleType(gfp.degree_pattern(gfp.reduce(list(f.coeffs), p), p))
                assert ct.degree == n and ct.is_even() and ct in types, (s, p, ct)
                used += 1
                frob += 1
        t0 += 1
    return fields, frob


def gfp_next_prime(p):
    from kfree.factor import next_prime
    return next_prime(p)


def test_criterion_5_a2n_square_discriminants():
    with Criterion(5, "A2n square discriminants") as c:
        parts = []
        for f in ("X^2 - X", "X*(X - 1)*(X - 2)"):
            cover = a2n_family(P(f), P("X"))
            fields, frob = _even_frobenius_check(cover)
            parts.append(f"degree {cover.degree}: {fields} square discs, {frob} even Frobenius types")
        c.detail = "; ".join(parts)


def test_criterion_6_cubefree_growth():
    with Criterion(6, "cubefree growth for X^4 - X^2 - u") as c:
        cover = quadratic_twist_compose(P("X^2 - X"), P("X"))
        window = (1, 100_000)
        recs = scan(Campaign(cover, window, k=3))
        grid = default_grid(recs, window)
        fit = count_fit(recs, grid, cover.sum_finite_index)
        bound = disc_bound_check(recs, cover.sum_finite_index)
        c.detail = (f"{len(counted(recs))} distinct cubefree fields, counts {fit.counts}, "
                    f"alpha_hat {fit.alpha_hat:.3f} vs alpha* {fit.alpha_star:.3f}, "
                    f"C = {bound.C:.1f}, {len(bound.violations)} bound violations")
        assert len(grid) == 5
        assert fit.alpha_hat >= fit.alpha_star - 0.15
        assert not bound.violations


def test_criterion_7_four_free_family():
    with Criterion(7, "4-free family from X^3 - X - 1") as c:
        cover = lemlast_family(P("X^3 - X - 1"))
        assert all(b.index == 3 for b in cover.finite_branch())
        # integer points: every prediction checked against Round 2
        ints = scan(Campaign(cover, (-5000, 5000), k=4, mode=Mode.PREDICT_AND_VERIFY))
        # points a/8 of the same window: 2 is then unramified
        rats = scan(Campaign(cover, (-60, 60), k=4, mode=Mode.PREDICT_AND_VERIFY, denominator=8))
        max_exp = 0
        for rec in ints + rats:
            a, b = (rec.t0, 1) if isinstance(rec.t0, int) else (rec.t0.numerator, rec.t0.denominator)
            for e in predict_specialization(cover, a, b).entries:
                max_exp = max(max_exp, e.exponent)
        good = [r for r in counted(ints + rats) if r.kfree]
        c.detail = (f"max predicted exponent {max_exp}; integer t0: {len(counted(ints))} of {len(ints)} "
                    f"4-free; t0 = a/8: {len(counted(rats))} of {len(rats)} 4-free "
                    f"(first {good[0].t0 if good else None}, disc {good[0].disc if good else None}); "
                    f"0 mismatches")
        assert max_exp <= 3
        assert good and all(monic_integral(P(r.poly)).degree == 6 for r in good[:5])


def test_criterion_8_metric():
    with Criterion(8, "almost squarefree metric") as c:
        assert abs(integer_profile(12, 3).metric - math.log(4) / math.log(12)) < 1e-12
        assert integer_profile(2 * 3 * 5 * 7 * 11, 3).metric == 0.0
        assert integer_profile(8, 3).metric == 1.0
        cover = quadratic_twist_compose(P("X^2 - X"), P("X*(X - 2)*(X - 3)*(X - 4)*(X - 5)"))
        recs = almost_squarefree_scan(cover, (-300, 300), k=3, epsilon=0.5)
        c.detail = (f"metric values exact; {len(recs)} fields with metric < 0.5 "
                    f"(smallest {min(r.metric for r in recs):.3f})" if recs else "no records")
        assert recs and all(r.metric < 0.5 and r.kfree for r in recs)


def test_criterion_9_oracle_consistency():
    with Criterion(9, "oracle consistency") as c:
        rng = random.Random(99)
        pairs = agree = 0
        while pairs < 500:
            n = rng.randint(2, 6)
            f = IPoly([rng.randint(-40, 40) for _ in range(n)] + [1])
            D = discriminant(f)
            if D == 0:
                continue
            for p in factor_integer(D).primes():
                if pairs >= 500:
                    break
                _, ind = pmax_disc_valuation(f, p)
                agree += dedekind_test(f, p) == (ind == 0)
                pairs += 1
            field_discriminant(f)
        bad = 0
        for value, poly_disc, vals in DISC_LOG:
            if value % 4 not in (0, 1):
                bad += 1
            for p, v in vals.items():
                w = 0
                x = poly_disc
                while x % p == 0:
                    x //= p
                    w += 1
                if (w - v) % 2:
                    bad += 1
        c.detail = (f"dedekind agrees with index 0 on {agree}/{pairs} pairs; "
                    f"{len(DISC_LOG)} field discriminants re-checked, {bad} violations")
        assert agree == pairs == 500
        assert bad == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
