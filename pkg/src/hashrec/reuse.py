"""Reuse categorization and temporal decay analysis.

Every hashtag assignment is classified by where the tag could have been
picked up: the user's own earlier tweets, the earlier tweets of accounts
they follow, both, anywhere else in the corpus, or nowhere (first ever
use).  Reuse ages are then histogrammed on a log-spaced grid and fit
with a straight line in log-log space to estimate the decay exponent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from hashrec.corpus import Corpus, FollowGraph, Timestamp, Tweet, UsageIndex

BUCKETS_PER_DECADE = 20

TIME_UNIT_SECONDS = {"seconds": 1, "hours": 3600, "days": 86400}


class ReuseCategory(enum.Enum):
    """Origin of a hashtag assignment relative to strictly earlier uses."""

    INDIVIDUAL = "individual"
    SOCIAL = "social"
    INDIVIDUAL_SOCIAL = "individual_social"
    NETWORK = "network"
    EXTERNAL = "external"


def categorize_assignment(
    index: UsageIndex,
    graph: FollowGraph,
    user_id: str,
    hashtag: str,
    now: Timestamp,
) -> ReuseCategory:
    """Classify one assignment against strictly earlier usage events.

    Own earlier use and followee earlier use combine into
    INDIVIDUAL_SOCIAL; either alone gives INDIVIDUAL or SOCIAL; an
    earlier use by anyone else gives NETWORK; no earlier use at all is
    EXTERNAL.  Events at exactly ``now`` never count.
    """
    own = index.used_before(user_id, hashtag, now)
    social = any(index.used_before(f, hashtag, now) for f in graph.followees(user_id))
    if own and social:
        return ReuseCategory.INDIVIDUAL_SOCIAL
    if own:
        return ReuseCategory.INDIVIDUAL
    if social:
        return ReuseCategory.SOCIAL
    if index.anyone_used_before(hashtag, now):
        return ReuseCategory.NETWORK
    return ReuseCategory.EXTERNAL


def _time_batches(tweets: tuple[Tweet, ...]) -> Iterator[list[Tweet]]:
    """Yield runs of same-timestamp tweets, in chronological order."""
    batch: list[Tweet] = []
    for tweet in tweets:
        if batch and tweet.time != batch[0].time:
            yield batch
            batch = []
        batch.append(tweet)
    if batch:
        yield batch


def category_distribution(corpus: Corpus) -> dict[ReuseCategory, tuple[int, float]]:
    """Count and share of every category over all hashtag assignments.

    Processes tweets chronologically so each assignment is judged only
    against strictly earlier events; same-timestamp tweets are batched
    and cannot see each other.  All five categories appear in the
    result; shares are zero for an empty corpus.
    """
    own_used: dict[str, set[str]] = {}
    any_used: set[str] = set()
    counts = {category: 0 for category in ReuseCategory}
    total = 0
    for batch in _time_batches(corpus.tweets):
        for tweet in batch:
            followees = corpus.graph.followees(tweet.user_id)
            for tag in tweet.hashtags:
                own = tag in own_used.get(tweet.user_id, ())
                social = any(tag in own_used.get(f, ()) for f in followees)
                if own and social:
                    category = ReuseCategory.INDIVIDUAL_SOCIAL
                elif own:
                    category = ReuseCategory.INDIVIDUAL
                elif social:
                    category = ReuseCategory.SOCIAL
                elif tag in any_used:
                    category = ReuseCategory.NETWORK
                else:
                    category = ReuseCategory.EXTERNAL
                counts[category] += 1
                total += 1
        for tweet in batch:
            for tag in tweet.hashtags:
                own_used.setdefault(tweet.user_id, set()).add(tag)
                any_used.add(tag)
    return {
        category: (count, count / total if total else 0.0)
        for category, count in counts.items()
    }


@dataclass(frozen=True)
class AgeHistogram:
    """Counts of reuse ages over strictly increasing bucket edges.

    Edges and counts satisfy ``len(edges) == len(counts) + 1``; ages at
    the right edge of the last bucket are included in it.
    """

    edges: np.ndarray
    counts: np.ndarray
    time_unit: str

    def __post_init__(self) -> None:
        if len(self.edges) != len(self.counts) + 1:
            raise ValueError("edges must have exactly one more entry than counts")
        if not np.all(np.diff(self.edges) > 0):
            raise ValueError("edges must be strictly increasing")
        if np.any(self.counts < 0):
            raise ValueError("counts must be non-negative")

    def midpoints(self) -> np.ndarray:
        """Geometric midpoint of every bucket."""
        return np.sqrt(self.edges[:-1] * self.edges[1:])


def log_bucket_edges(
    min_age: float, max_age: float, buckets_per_decade: int = BUCKETS_PER_DECADE
) -> np.ndarray:
    """Log-spaced edges 10**(i/buckets_per_decade) covering [min_age, max_age]."""
    if min_age <= 0 or max_age < min_age:
        raise ValueError("ages must be positive with max_age >= min_age")
    lo = math.floor(buckets_per_decade * math.log10(min_age))
    hi = math.ceil(buckets_per_decade * math.log10(max_age))
    # Float rounding in log10 can push the computed edge past the
    # extreme age; widen by one step so every age lands in a bucket.
    while 10.0 ** (lo / buckets_per_decade) > min_age:
        lo -= 1
    while 10.0 ** (hi / buckets_per_decade) < max_age:
        hi += 1
    if hi == lo:
        hi += 1
    exponents = np.arange(lo, hi + 1, dtype=float) / buckets_per_decade
    return np.power(10.0, exponents)


def _reuse_ages(corpus: Corpus, kind: str) -> list[float]:
    """Ages (seconds) between each assignment and the most recent
    strictly earlier use in the relevant history."""
    own_last: dict[tuple[str, str], Timestamp] = {}
    user_last: dict[str, dict[str, Timestamp]] = {}
    ages: list[float] = []
    for batch in _time_batches(corpus.tweets):
        for tweet in batch:
            if kind == "individual":
                for tag in tweet.hashtags:
                    last = own_last.get((tweet.user_id, tag))
                    if last is not None:
                        ages.append(float(tweet.time - last))
            else:
                followees = corpus.graph.followees(tweet.user_id)
                for tag in tweet.hashtags:
                    best: Timestamp | None = None
                    for followee in followees:
                        last = user_last.get(followee, {}).get(tag)
                        if last is not None and (best is None or last > best):
                            best = last
                    if best is not None:
                        ages.append(float(tweet.time - best))
        for tweet in batch:
            for tag in tweet.hashtags:
                own_last[(tweet.user_id, tag)] = tweet.time
                user_last.setdefault(tweet.user_id, {})[tag] = tweet.time
    return ages


def reuse_age_histogram(
    corpus: Corpus,
    kind: str = "individual",
    time_unit: str = "seconds",
    buckets_per_decade: int = BUCKETS_PER_DECADE,
) -> AgeHistogram:
    """Histogram reuse ages on a log-spaced grid.

    ``kind`` selects which history defines a reuse: "individual" pairs
    each assignment with the user's own most recent earlier use of the
    tag, "social" with the most recent earlier use among followees.
    Ages are converted to ``time_unit`` and clamped below at one unit so
    the log grid is always applicable.  A corpus with no reuses of the
    requested kind yields a single all-zero bucket.
    """
    if kind not in ("individual", "social"):
        raise ValueError(f"unknown reuse kind {kind!r}")
    if time_unit not in TIME_UNIT_SECONDS:
        raise ValueError(f"unknown time unit {time_unit!r}")
    unit = TIME_UNIT_SECONDS[time_unit]
    if len(corpus.tweets) >= 2 and corpus.span_seconds() < unit:
        raise ValueError(
            f"time unit {time_unit!r} is coarser than the corpus span "
            f"({corpus.span_seconds()} s)"
        )
    ages = np.array(_reuse_ages(corpus, kind), dtype=float) / unit
    ages = np.maximum(ages, 1.0)
    if ages.size == 0:
        edges = log_bucket_edges(1.0, 10.0 ** (1.0 / buckets_per_decade), buckets_per_decade)
        return AgeHistogram(edges=edges, counts=np.zeros(len(edges) - 1, dtype=int), time_unit=time_unit)
    edges = log_bucket_edges(float(ages.min()), float(ages.max()), buckets_per_decade)
    counts, _ = np.histogram(ages, bins=edges)
    return AgeHistogram(edges=edges, counts=counts.astype(int), time_unit=time_unit)


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares line through (ln age, ln count) bucket points."""

    slope: float
    intercept: float
    r_squared: float


def fit_power_law(hist: AgeHistogram) -> PowerLawFit:
    """Fit ln(count) = slope * ln(age midpoint) + intercept by least squares.

    Only buckets with positive counts participate; fewer than two such
    buckets is an error.  r_squared is 1 - SS_res/SS_tot, defined as 1.0
    when the log-counts are constant (SS_tot = 0), and clamped to [0, 1].
    """
    mask = hist.counts > 0
    if int(mask.sum()) < 2:
        raise ValueError("need at least two positive buckets to fit")
    x = np.log(hist.midpoints()[mask])
    y = np.log(hist.counts[mask].astype(float))
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    ss_res = float(np.dot(residuals, residuals))
    centered = y - y.mean()
    ss_tot = float(np.dot(centered, centered))
    if ss_tot == 0.0:
        r_squared = 1.0 if math.isclose(ss_res, 0.0, abs_tol=1e-12) else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return PowerLawFit(slope=float(slope), intercept=float(intercept), r_squared=r_squared)
