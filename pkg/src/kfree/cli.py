"""Command line interface: ``python -m kfree <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .beckmann import Cover, predict_specialization
from .discverify import (
    dedekind_test,
    field_discriminant,
    field_fingerprint,
    is_irreducible,
    pmax_disc_valuation,
    ramification_shape,
)
from .families import (
    a2n_family,
    lemlast_family,
    malle_agl32,
    malle_polynomial,
    quadratic_twist_compose,
    split_sn_family,
)
from .groups import generator_index, group_from_text, named_group
from .intpoly import format_poly, monic_integral, parse_poly
from .search import (
    Campaign,
    InsufficientData,
    Mode,
    count_fit,
    counted,
    default_grid,
    load_campaign,
    parse_window,
    scan,
)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_gi(args) -> int:
    if args.file:
        with open(args.file) as fh:
            G = group_from_text(fh.read())
        name = args.file
    else:
        G = named_group(args.group)
        name = args.group
    _emit({"group": name, "degree": G.degree, "order": G.order, "generator_index": generator_index(G)})
    return 0


def _parse_t0(text: str) -> tuple[int, int]:
    q = Fraction(text)
    return q.numerator, q.denominator


def _load_cover(path: str) -> Cover:
    with open(path) as fh:
        return Cover.from_json(fh.read())


def cmd_predict(args) -> int:
    cover = _load_cover(args.cover)
    a, b = _parse_t0(args.t0)
    report = predict_specialization(cover, a, b)
    out = report.to_dict(ks=args.k)
    if args.verify:
        res = field_discriminant(monic_integral(report.poly))
        out["verified"] = res.to_dict()
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    f = parse_poly(args.poly)
    if not is_irreducible(f):
        print(f"warning: {format_poly(f)} is reducible; results describe the etale algebra",
              file=sys.stderr)
    g = monic_integral(f)
    if args.prime:
        p = args.prime
        v, ind = pmax_disc_valuation(g, p)
        shape = ramification_shape(g, p)
        _emit({
            "poly": format_poly(g), "prime": p, "dedekind_maximal": dedekind_test(g, p),
            "valuation": v, "index_valuation": ind,
            "shape": [list(x) for x in shape.parts], "shape_status": shape.status.value,
        })
        return 0
    res = field_discriminant(g)
    out = res.to_dict()
    if args.fingerprint and not res.undetermined:
        out["fingerprint"] = field_fingerprint(g, res).key()
    _emit(out)
    return 0


def _int_list(text: str) -> list:
    return [Fraction(x) for x in text.split(",") if x.strip()]


def cmd_families(args) -> int:
    kind = args.make
    if kind == "split":
        cover = split_sn_family(_int_list(args.alphas or "0,1,2"))
    elif kind in ("twist", "quadtwist"):
        cover = quadratic_twist_compose(parse_poly(args.f or "X^2 - X"), parse_poly(args.h or "X"))
    elif kind == "a2n":
        cover = a2n_family(parse_poly(args.f or "X^2 - X"), parse_poly(args.h or "X"))
    elif kind == "malle":
        cover = malle_agl32(args.t)
    elif kind == "lemlast":
        cover = lemlast_family(parse_poly(args.f or "X^3 - X - 1"))
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(f"unknown family {kind}")
    out = cover.to_dict()
    if kind == "malle" and args.a is not None:
        octic = malle_polynomial(args.a, args.t)
        res = field_discriminant(octic)
        out["specialization"] = {"a": args.a, "t": args.t, "poly": format_poly(octic),
                                 "field_disc": str(res.value), "factored": str(res.field_disc)}
    text = json.dumps(out, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def cmd_search(args) -> int:
    if args.config:
        camp = load_campaign(args.config)
    else:
        if not args.cover or not args.window:
            raise SystemExit("search needs --cover and --window (or --config)")
        avoid = frozenset(int(x) for x in args.avoid.split(",") if x) if args.avoid else frozenset()
        camp = Campaign(_load_cover(args.cover), parse_window(args.window), args.k, avoid,
                        Mode(args.mode), args.jobs, args.out, args.denominator)
    if args.jobs and args.config:
        camp.jobs = args.jobs
    if args.out and args.config:
        camp.out = args.out
    records = scan(camp)
    good = counted(records)
    summary = {
        "window": list(camp.window), "denominator": camp.denominator, "k": camp.k, "avoid": sorted(camp.avoid),
        "records": len(records), "kfree_distinct": len(good),
        "alpha_star": camp.cover.alpha_star,
    }
    try:
        grid = default_grid(records, camp.window)
        summary["fit"] = count_fit(records, grid, camp.cover.sum_finite_index).to_dict()
    except InsufficientData as exc:
        summary["fit"] = f"unavailable: {exc}"
    _emit(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kfree", description="k-free discriminant toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gi", help="generator index of a permutation group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="name such as S5, A6, C2WrSn(3), PSL32")
    src.add_argument("--file", help="file with one generator per line")
    p.set_defaults(func=cmd_gi)

    p = sub.add_parser("predict", help="ramification prediction at t0")
    p.add_argument("--cover", required=True)
    p.add_argument("--t0", required=True, help="integer or a/b")
    p.add_argument("--k", type=int, nargs="*", default=[2, 3, 4])
    p.add_argument("--verify", action="store_true", help="also compute the field discriminant")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="exact field discriminant of a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--fingerprint", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("families", help="build a cover as JSON")
    p.add_argument("--make", required=True, choices=["split", "twist", "quadtwist", "a2n", "malle", "lemlast"])
    p.add_argument("--alphas")
    p.add_argument("--f")
    p.add_argument("--h")
    p.add_argument("--a", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("search", help="scan specialisations for k-free discriminants")
    p.add_argument("--cover")
    p.add_argument("--window", help="a..b")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--avoid", default="")
    p.add_argument("--mode", default=Mode.PREDICT_ONLY.value, choices=[m.value for m in Mode])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--denominator", type=int, default=1, help="scan t0 = a/d with gcd(a, d) = 1")
    p.add_argument("--out")
    p.add_argument("--config", help="JSON campaign file")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
