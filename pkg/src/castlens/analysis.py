"""Ranking, outlier selection, sample sizing, census and agreement.

Everything here operates on scored CastReportEntry objects (or plain
values) so each stage can be driven from a file written by the previous
one.
"""

from __future__ import annotations

import csv
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from statistics import NormalDist, fmean, pstdev

from .report import CastReportEntry

# per-kind report order (largest census share first)
KIND_ORDER = ("static", "reinterpret", "dynamic", "const")

# z for the upper quartile of a standard normal: outliers sit above
# mean + z * stddev, i.e. in the distribution's top quarter tail fit
UPPER_QUARTILE_Z = 0.67449

OUTLIER_MODES = ("gaussian", "empirical")


def rank(entries) -> dict[str, list[CastReportEntry]]:
    """Scored entries grouped by kind, most discordant first.

    Ties break on (file, line, col) so the order is reproducible.
    """
    by_kind: dict[str, list[CastReportEntry]] = {k: [] for k in KIND_ORDER}
    for e in entries:
        if e.ce is None:
            continue
        by_kind.setdefault(e.cast_kind, []).append(e)
    for kind in by_kind:
        by_kind[kind].sort(key=lambda e: (-e.ce, e.file, e.line, e.col))
    return by_kind


def fit_gaussian(values) -> tuple[float, float]:
    """Population mean and stddev of a sample of scores."""
    vals = list(values)
    if len(vals) < 2:
        raise ValueError("need at least 2 values to fit")
    return fmean(vals), pstdev(vals)


@dataclass
class OutlierSet:
    kind: str
    population: int
    mean: float
    stddev: float
    threshold: float
    members: list[CastReportEntry] = field(default_factory=list)


def select_outliers(ranked: dict[str, list[CastReportEntry]], mode: str = "gaussian") -> dict[str, OutlierSet]:
    """Per-kind outliers: scores strictly above the upper-quartile threshold.

    gaussian: threshold = mean + z0.75 * population stddev; a degenerate
    fit (all scores equal, or a single score) selects nothing.
    empirical: threshold = the empirical 75th percentile.
    """
    if mode not in OUTLIER_MODES:
        raise ValueError(f"unknown outlier mode: {mode!r}")
    out: dict[str, OutlierSet] = {}
    for kind, entries in ranked.items():
        if not entries:
            continue
        values = [e.ce for e in entries]
        if mode == "gaussian":
            if len(values) < 2:
                mean, stddev = values[0], 0.0
            else:
                mean, stddev = fit_gaussian(values)
            threshold = mean + UPPER_QUARTILE_Z * stddev
        else:
            mean = fmean(values)
            stddev = pstdev(values) if len(values) > 1 else 0.0
            threshold = _percentile(values, 75.0)
        members = [e for e in entries if e.ce > threshold]
        out[kind] = OutlierSet(kind=kind, population=len(values), mean=mean,
                               stddev=stddev, threshold=threshold, members=members)
    return out


def _percentile(values, q: float) -> float:
    """Linear-interpolation percentile (inclusive), matching the common default."""
    vals = sorted(values)
    if len(vals) == 1:
        return vals[0]
    pos = (len(vals) - 1) * q / 100.0
    lo = math.floor(pos)
    hi = math.ceil(pos)
    if lo == hi:
        return vals[lo]
    frac = pos - lo
    return vals[lo] * (1 - frac) + vals[hi] * frac


def sample_size(population: int, confidence: float, margin: float, p: float = 0.5) -> int:
    """Cochran sample size with finite population correction.

    n0 = z^2 p (1-p) / margin^2 with z the two-sided normal quantile for
    the confidence level; then n = ceil(n0 / (1 + (n0 - 1) / N)), capped
    at N.
    """
    if population < 1:
        raise ValueError("population must be at least 1")
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must be in (0, 1)")
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must be in (0, 1)")
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    n0 = (z * z) * p * (1.0 - p) / (margin * margin)
    n = math.ceil(n0 / (1.0 + (n0 - 1.0) / population))
    return min(n, population)


def draw_sample(entries, n: int, seed: int) -> list[CastReportEntry]:
    """Uniform sample without replacement, fully determined by the seed.

    The population is ordered by record id first so the draw does not
    depend on input order.
    """
    pool = sorted(entries, key=lambda e: e.record_id)
    if n > len(pool):
        raise ValueError(f"sample size {n} exceeds population {len(pool)}")
    return random.Random(seed).sample(pool, n)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


@dataclass
class StatsRow:
    name: str
    assign: dict[str, int]
    call: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.assign.values()) + sum(self.call.values())


@dataclass
class StatsTable:
    rows: list[StatsRow]

    @property
    def assign_totals(self) -> dict[str, int]:
        return self._totals("assign")

    @property
    def call_totals(self) -> dict[str, int]:
        return self._totals("call")

    def _totals(self, which: str) -> dict[str, int]:
        totals: dict[str, int] = {k: 0 for k in KIND_ORDER}
        for row in self.rows:
            for k, v in getattr(row, which).items():
                totals[k] = totals.get(k, 0) + v
        return totals

    @property
    def grand_total(self) -> int:
        return sum(row.total for row in self.rows)

    def kind_share(self, kind: str) -> float:
        """Percent of all counted casts that are of this kind."""
        total = self.grand_total
        if total == 0:
            return 0.0
        count = self.assign_totals.get(kind, 0) + self.call_totals.get(kind, 0)
        return 100.0 * count / total

    def context_share(self, context: str) -> float:
        """Percent of all counted casts in assignment vs call context."""
        total = self.grand_total
        if total == 0:
            return 0.0
        totals = self.assign_totals if context == "assignment" else self.call_totals
        return 100.0 * sum(totals.values()) / total


def aggregate(entries, component_for=None) -> StatsTable:
    """Counts per component, split by context and kind; rows sorted by total.

    Only assignment and call-argument casts are counted (the census covers
    binding contexts); macro-body records count under their context like
    any other. `component_for` maps a file path to its component label.
    """
    if component_for is None:
        from .corpus import component_for_path
        component_for = component_for_path
    counts: Counter = Counter()
    for e in entries:
        if e.context not in ("assignment", "call_arg"):
            continue
        counts[(component_for(e.file), e.context, e.cast_kind)] += 1
    components = sorted({key[0] for key in counts})
    rows = []
    for comp in components:
        assign = {k: counts.get((comp, "assignment", k), 0) for k in KIND_ORDER}
        call = {k: counts.get((comp, "call_arg", k), 0) for k in KIND_ORDER}
        rows.append(StatsRow(name=comp, assign=assign, call=call))
    rows.sort(key=lambda r: (-r.total, r.name))
    return StatsTable(rows=rows)


# ---------------------------------------------------------------------------
# rater agreement
# ---------------------------------------------------------------------------

LABELS = ("TP", "FP")


@dataclass
class RatingSheet:
    rater_id: str
    labels: dict[str, str]  # record_id -> TP | FP


def load_rating_sheet(path: str, rater_id: str | None = None) -> RatingSheet:
    """Read a record_id,label CSV; labels must be TP or FP."""
    import os

    labels: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["record_id", "label"]:
            raise ValueError(f"{path}: expected header record_id,label")
        for i, row in enumerate(reader, start=2):
            if not row or not "".join(row).strip():
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{i}: expected record_id,label")
            rid, label = row[0].strip(), row[1].strip()
            if label not in LABELS:
                raise ValueError(f"{path}:{i}: label must be TP or FP, got {label!r}")
            labels[rid] = label
    if rater_id is None:
        rater_id = os.path.splitext(os.path.basename(path))[0]
    return RatingSheet(rater_id=rater_id, labels=labels)


def cohen_kappa(a: RatingSheet, b: RatingSheet) -> float:
    """Cohen's kappa over the two-label space {TP, FP}.

    kappa = (po - pe) / (1 - pe), with pe from each rater's marginal
    label frequencies. When pe is 1 (both raters constant and identical)
    kappa is 1 by convention.
    """
    if set(a.labels) != set(b.labels):
        raise ValueError("rating sheets cover different record ids")
    ids = sorted(a.labels)
    if not ids:
        raise ValueError("rating sheets are empty")
    n = len(ids)
    po = sum(1 for rid in ids if a.labels[rid] == b.labels[rid]) / n
    pe = 0.0
    for label in LABELS:
        pa = sum(1 for rid in ids if a.labels[rid] == label) / n
        pb = sum(1 for rid in ids if b.labels[rid] == label) / n
        pe += pa * pb
    if pe == 1.0:
        return 1.0
    return (po - pe) / (1.0 - pe)


def mean_pairwise_kappa(sheets) -> float:
    """Mean Cohen's kappa over all unordered pairs of sheets."""
    sheets = list(sheets)
    if len(sheets) < 2:
        raise ValueError("need at least 2 rating sheets")
    kappas = []
    for i in range(len(sheets)):
        for j in range(i + 1, len(sheets)):
            kappas.append(cohen_kappa(sheets[i], sheets[j]))
    return fmean(kappas)
