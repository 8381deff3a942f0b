"""Search campaigns over specialisations of a cover.

Each integer t0 in the window is specialised, predicted with Beckmann's
criterion and, when the prediction cannot settle the k-free question (or
the campaign asks for it), verified exactly.  k-free fields are
deduplicated by fingerprint, and their counts below a grid of bounds give
an empirical growth exponent.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .beckmann import Cover, Verdict, is_degenerate, predict_specialization, branch_values
from .discverify import field_discriminant, field_fingerprint, is_irreducible
from .factor import Factorization, integer_profile, squarefree_kernel
from .intpoly import format_poly, monic_integral


class Mode(str, Enum):
    PREDICT_ONLY = "PredictOnly"
    PREDICT_AND_VERIFY = "PredictAndVerify"


class PredictionMismatch(RuntimeError):
    """Prediction and exact verification disagree at a good prime."""


@dataclass
class Campaign:
    cover: Cover
    window: tuple[int, int]
    k: int = 3
    avoid: frozenset[int] = frozenset()
    mode: Mode = Mode.PREDICT_ONLY
    jobs: int = 1
    out: str | None = None
    denominator: int = 1

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"empty window {lo}..{hi}")
        self.avoid = frozenset(self.avoid)
        self.mode = Mode(self.mode)


@dataclass
class FieldRecord:
    t0: int | Fraction
    poly: str
    verdict: Verdict
    verified: bool
    disc: Factorization | None = None
    kfree: bool = False
    s_unramified: bool = False
    metric: float | None = None
    fingerprint: str | None = None

    @property
    def disc_value(self) -> int | None:
        return None if self.disc is None else self.disc.value

    def csv_row(self) -> list[str]:
        return [
            str(self.t0),
            self.poly,
            "" if self.disc is None else str(self.disc),
            "1" if self.kfree else "0",
            "" if self.metric is None else f"{self.metric:.6f}",
            self.fingerprint or "",
        ]


CSV_COLUMNS = ["t0", "poly", "disc_factored", "kfree", "metric", "fingerprint"]


def _process(cover: Cover, t0: int | Fraction, k: int, avoid: frozenset[int], mode: Mode) -> FieldRecord | None:
    a, b = (t0, 1) if isinstance(t0, int) else (t0.numerator, t0.denominator)
    if is_degenerate(cover, a, b):
        return None
    report = predict_specialization(cover, a, b)
    poly = report.poly
    if not is_irreducible(poly):
        return None
    verdict = report.verdict(k)
    rec = FieldRecord(t0, format_poly(poly), verdict, False)
    if verdict is Verdict.NOT_KFREE and mode is Mode.PREDICT_ONLY:
        return rec
    hints = [v for v in branch_values(cover, a, b) if abs(v) > 1]
    res = field_discriminant(monic_integral(poly), hints=tuple(hints))
    rec.verified = True
    rec.disc = res.field_disc
    if res.undetermined:
        return rec
    for p, data in res.per_prime.items():
        if p in cover.bad_primes:
            continue
        predicted = report.predicted_valuation(p)
        if predicted != data.valuation:
            raise PredictionMismatch(
                f"t0 = {t0}, p = {p}: predicted {predicted}, verified {data.valuation} for {rec.poly}"
            )
    for e in report.entries:
        if e.prime not in res.per_prime:
            raise PredictionMismatch(f"t0 = {t0}, p = {e.prime}: predicted {e.exponent}, verified 0")
    if verdict is Verdict.NOT_KFREE and res.is_k_free(k):
        raise PredictionMismatch(f"t0 = {t0}: prediction says not {k}-free but the field is")
    rec.kfree = res.is_k_free(k)
    value = res.value
    rec.s_unramified = all(value % p for p in avoid)
    if abs(value) >= 2:
        rec.metric = integer_profile(res.field_disc, k).metric
    if rec.kfree and rec.s_unramified:
        rec.fingerprint = field_fingerprint(monic_integral(poly), res).key()
    return rec


def _run_chunk(args) -> list[FieldRecord]:
    cover, values, k, avoid, mode = args
    out = []
    for t0 in values:
        rec = _process(cover, t0, k, avoid, mode)
        if rec is not None:
            out.append(rec)
    return out


def _chunks(values: list[int], size: int) -> list[list[int]]:
    return [values[i:i + size] for i in range(0, len(values), size)]


def window_values(window: tuple[int, int], denominator: int = 1) -> list:
    """The points a/denominator (in lowest terms exactly so) inside the window."""
    lo, hi = window
    if denominator == 1:
        return list(range(lo, hi + 1))
    return [Fraction(a, denominator) for a in range(lo * denominator, hi * denominator + 1)
            if math.gcd(a, denominator) == 1]


def scan(campaign: Campaign, progress=None) -> list[FieldRecord]:
    """Records for every usable t0, fingerprint-deduplicated, in t0 order.

    Records flagged k-free always carry an exact, fully factored field
    discriminant.  Duplicates (same fingerprint) keep the first t0 by
    height.
    """
    values = sorted(window_values(campaign.window, campaign.denominator), key=lambda t: (abs(t), t))
    args = (campaign.cover, campaign.k, campaign.avoid, campaign.mode)
    records: list[FieldRecord] = []
    if campaign.jobs > 1 and len(values) > 1:
        size = max(1, len(values) // (campaign.jobs * 8))
        tasks = [(campaign.cover, chunk, *args[1:]) for chunk in _chunks(values, size)]
        with ProcessPoolExecutor(max_workers=campaign.jobs) as pool:
            for part in pool.map(_run_chunk, tasks):
                records.extend(part)
                if progress:
                    progress(len(records))
    else:
        for i, t0 in enumerate(values):
            rec = _process(campaign.cover, t0, *args[1:])
            if rec is not None:
                records.append(rec)
            if progress and i % 1000 == 0:
                progress(i)
    records.sort(key=lambda r: (abs(r.t0), r.t0))
    seen: set[str] = set()
    out = []
    for rec in records:
        if rec.fingerprint is not None:
            if rec.fingerprint in seen:
                continue
            seen.add(rec.fingerprint)
        out.append(rec)
    if campaign.out:
        write_csv(out, campaign.out)
    return out


def write_csv(records: Iterable[FieldRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for rec in records:
            w.writerow(rec.csv_row())


def counted(records: Iterable[FieldRecord]) -> list[FieldRecord]:
    """Distinct k-free fields unramified at the avoided primes."""
    return [r for r in records if r.kfree and r.s_unramified and r.fingerprint]


# ---------------------------------------------------------------------------
# growth fit
# ---------------------------------------------------------------------------

class InsufficientData(ValueError):
    pass


@dataclass
class CountRecord:
    grid: list[float]
    counts: list[int]
    alpha_hat: float
    residual: float
    alpha_star: float
    intercept: float = 0.0

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "counts": self.counts,
            "alpha_hat": self.alpha_hat,
            "residual": self.residual,
            "alpha_star": self.alpha_star,
        }


def default_grid(
    records: Sequence[FieldRecord],
    window: tuple[int, int],
    points: int = 5,
    min_count: int = 10,
    edge_quantile: float = 1.0,
) -> list[float]:
    """Log-spaced bounds B between a small-count floor and the edge of completeness.

    A field whose discriminant lies above the typical size reached at the
    window edge may come from a t0 outside the window, so counts there are
    truncated.  The top bound is a low percentile (``edge_quantile``) of
    |disc| over counted records with |t0| in the outer tenth of the window;
    the bottom is the |disc| of the ``min_count``-th smallest field.
    """
    recs = counted(records)
    if len(recs) < max(points, min_count):
        raise InsufficientData("not enough counted records for a grid")
    edge = max(abs(window[0]), abs(window[1]))
    outer = [abs(r.disc_value) for r in recs if abs(r.t0) >= 0.9 * edge]
    discs = sorted(abs(r.disc_value) for r in recs)
    top = float(np.percentile(outer, edge_quantile)) if outer else float(discs[-1])
    bottom = float(discs[min_count - 1])
    if bottom >= top:
        raise InsufficientData("discriminants do not spread over a range")
    return [float(x) for x in np.geomspace(bottom, top, points)]


def count_fit(records: Sequence[FieldRecord], grid: Sequence[float], sum_finite_index: int) -> CountRecord:
    """Counts N(B) of distinct counted fields with |disc| <= B and their log-log slope."""
    if len(grid) < 4:
        raise InsufficientData("need at least 4 grid points")
    discs = np.sort(np.array([abs(r.disc_value) for r in counted(records)], dtype=float))
    B = np.array(sorted(grid), dtype=float)
    counts = np.searchsorted(discs, B, side="right")
    if np.count_nonzero(counts) < 4:
        raise InsufficientData("need at least 4 grid points with nonzero counts")
    mask = counts > 0
    x = np.log(B[mask])
    y = np.log(counts[mask])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return CountRecord(
        [float(b) for b in B], [int(c) for c in counts], float(slope), resid,
        1.0 / sum_finite_index, float(intercept),
    )


@dataclass
class BoundCheck:
    C: float
    exponent: int
    violations: list[int] = field(default_factory=list)


def disc_bound_check(records: Sequence[FieldRecord], exponent: int, fit_fraction: float = 0.5) -> BoundCheck:
    """Fit C from records with small |t0|, then test |disc| <= C |t0|^exponent on all.

    Uses log-space arithmetic so large discriminants do not overflow.
    """
    recs = [r for r in records if r.disc is not None and r.t0 != 0 and not r.disc.composite]
    if not recs:
        raise InsufficientData("no verified records")
    height = max(abs(r.t0) for r in recs)
    fit = [r for r in recs if abs(r.t0) <= fit_fraction * height] or recs
    logC = max(math.log(abs(r.disc_value)) - exponent * math.log(abs(r.t0)) for r in fit)
    slack = 1e-9
    bad = [
        r.t0 for r in recs
        if math.log(abs(r.disc_value)) - exponent * math.log(abs(r.t0)) > logC + slack
    ]
    return BoundCheck(math.exp(logC), exponent, bad)


# ---------------------------------------------------------------------------
# quadratic matching and almost squarefree scans
# ---------------------------------------------------------------------------

def quadratic_match(disc: int) -> int | None:
    """The discriminant D of Q(sqrt m) if ``disc`` is one, else None."""
    if disc in (0, 1):
        return None
    if disc % 4 == 1:
        m = disc
    elif disc % 4 == 0:
        m = disc // 4
        if m % 4 not in (2, 3):
            return None
    else:
        return None
    if squarefree_kernel(m) != m:
        return None
    return disc


def almost_squarefree_scan(
    cover: Cover,
    window: tuple[int, int],
    k: int,
    epsilon: float,
    avoid: Iterable[int] = (),
    jobs: int = 1,
) -> list[FieldRecord]:
    """k-free fields whose discriminant has metric below epsilon."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    camp = Campaign(cover, window, k, frozenset(avoid), Mode.PREDICT_ONLY, jobs)
    return [r for r in counted(scan(camp)) if r.metric is not None and r.metric < epsilon]


# ---------------------------------------------------------------------------
# campaign files
# ---------------------------------------------------------------------------

def parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"window must look like a..b, got {text!r}")
    return int(lo), int(hi)


def load_campaign(path: str) -> Campaign:
    """JSON campaign: {"cover": path-or-object, "window": "a..b", "k", "avoid", "mode", "jobs", "out", "denominator"}."""
    with open(path) as fh:
        cfg = json.load(fh)
    cover_ref = cfg["cover"]
    if isinstance(cover_ref, str):
        with open(cover_ref) as fh:
            cover = Cover.from_json(fh.read())
    else:
        cover = Cover.from_dict(cover_ref)
    window = cfg["window"]
    window = parse_window(window) if isinstance(window, str) else tuple(window)
    return Campaign(
        cover, window, int(cfg.get("k", 3)), frozenset(cfg.get("avoid", ())),
        Mode(cfg.get("mode", Mode.PREDICT_ONLY.value)), int(cfg.get("jobs", 1)), cfg.get("out"),
        int(cfg.get("denominator", 1)),
    )
