"""Seeded synthetic corpus generator with planted temporal structure.

The generator emits a tweet stream in which a configurable fraction of
hashtag assignments are reuses of the same user's earlier tag
(individual) or adoptions from a followee's recent tweet (social), and
the delay between a use and its reuse is drawn from a truncated Pareto
law.  Reuses are scheduled forward on an event heap the moment the
source tweet is emitted, so realized reuse ages follow the planted
delay distribution directly and the log-log age histogram comes out
with slope close to -(alpha).  Everything is driven by one seeded
numpy generator, so equal configs give byte-identical output.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import MISSING, dataclass

import numpy as np

from hashrec.corpus import FollowGraph, Tweet, follows_to_tsv, tweets_to_jsonl

logger = logging.getLogger(__name__)

# Reuse delays live on [REUSE_DELAY_MIN_GAPS * mean_gap, span / REUSE_DELAY_SPAN_FRACTION].
# The lower edge sits well above the mean inter-tweet gap so bucket
# counts near the left edge are not distorted by arrival granularity;
# the upper edge stays a fraction of the corpus span so late reuses
# are rarely cut off by the end of the stream.
REUSE_DELAY_MIN_GAPS = 10.0
REUSE_DELAY_SPAN_FRACTION = 8.0

_FRESH_DRAW_ATTEMPTS = 20

_KIND_INDIVIDUAL = 0
_KIND_SOCIAL = 1


@dataclass(frozen=True)
class GenConfig:
    """Generator knobs; invalid values raise listing every bad field."""

    n_users: int
    n_tweets: int
    follow_prob: float
    p_individual: float
    p_social: float
    alpha: float
    zipf_s: float
    vocab_size: int
    seed: int
    start_time: int = 1_500_000_000
    mean_gap: float = 60.0

    def __post_init__(self) -> None:
        violations = []
        if self.n_users < 1:
            violations.append("n_users must be >= 1")
        if self.n_tweets < 1:
            violations.append("n_tweets must be >= 1")
        if not 0.0 <= self.follow_prob <= 1.0:
            violations.append("follow_prob must lie in [0, 1]")
        if self.p_individual < 0.0:
            violations.append("p_individual must be >= 0")
        if self.p_social < 0.0:
            violations.append("p_social must be >= 0")
        if self.p_individual + self.p_social > 1.0:
            violations.append("p_individual + p_social must be <= 1")
        if self.p_social > 0.0 and self.n_users < 2:
            violations.append("n_users must be >= 2 when p_social > 0")
        if self.alpha <= 0.0:
            violations.append("alpha must be > 0")
        if self.zipf_s < 0.0:
            violations.append("zipf_s must be >= 0")
        if self.vocab_size < 1:
            violations.append("vocab_size must be >= 1")
        if self.seed < 0:
            violations.append("seed must be >= 0")
        if self.start_time < 0:
            violations.append("start_time must be >= 0")
        if self.mean_gap <= 0.0:
            violations.append("mean_gap must be > 0")
        if violations:
            raise ValueError("invalid generator config: " + "; ".join(violations))

    @classmethod
    def from_dict(cls, data: dict) -> "GenConfig":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config field(s): {', '.join(unknown)}")
        missing = sorted(
            name
            for name, fld in cls.__dataclass_fields__.items()
            if fld.default is MISSING and name not in data
        )
        if missing:
            raise ValueError(f"missing config field(s): {', '.join(missing)}")
        return cls(**data)


@dataclass
class GenStats:
    """Realized event counts; fallbacks are logged, not hidden."""

    n_tweets: int = 0
    n_fresh: int = 0
    n_individual: int = 0
    n_social: int = 0
    n_social_cancelled: int = 0
    n_fresh_collisions: int = 0
    n_unfired_events: int = 0
    n_edges: int = 0

    def individual_share(self) -> float:
        return self.n_individual / self.n_tweets if self.n_tweets else 0.0

    def social_share(self) -> float:
        return self.n_social / self.n_tweets if self.n_tweets else 0.0

    def to_dict(self) -> dict:
        return {
            "n_tweets": self.n_tweets,
            "n_fresh": self.n_fresh,
            "n_individual": self.n_individual,
            "n_social": self.n_social,
            "n_social_cancelled": self.n_social_cancelled,
            "n_fresh_collisions": self.n_fresh_collisions,
            "n_unfired_events": self.n_unfired_events,
            "n_edges": self.n_edges,
            "individual_share": self.individual_share(),
            "social_share": self.social_share(),
        }


@dataclass(frozen=True)
class GenResult:
    """Serialized corpus plus realized generation statistics."""

    tweets_jsonl: str
    follows_tsv: str
    stats: GenStats


def _truncated_pareto(rng: np.random.Generator, alpha: float, lo: float, hi: float) -> float:
    """Inverse-CDF draw with density proportional to a**-(1+alpha) on [lo, hi]."""
    u = rng.random()
    lo_a = lo**-alpha
    hi_a = hi**-alpha
    return (lo_a - u * (lo_a - hi_a)) ** (-1.0 / alpha)


def _build_follow_graph(rng: np.random.Generator, config: GenConfig) -> tuple[dict[int, list[int]], list[list[int]]]:
    """Random directed graph; returns (followees by user, followers by user)."""
    followees: dict[int, list[int]] = {}
    followers: list[list[int]] = [[] for _ in range(config.n_users)]
    for follower in range(config.n_users):
        mask = rng.random(config.n_users) < config.follow_prob
        mask[follower] = False
        targets = np.flatnonzero(mask)
        if targets.size:
            followees[follower] = [int(t) for t in targets]
            for target in targets:
                followers[int(target)].append(follower)
    return followees, followers


def generate(config: GenConfig) -> GenResult:
    """Generate a synthetic corpus as (tweets JSONL, follows TSV, stats).

    Each emitted tweet schedules, with probability p_individual, a
    future reuse by the same user after a truncated-Pareto delay, and
    for every follower independently a possible adoption of the tag
    (the per-follower probability is p_social divided by the mean
    follower count, so social events arrive at about p_social of the
    stream).  Between scheduled events a baseline stream emits fresh
    Zipf-drawn hashtags at a rate chosen so scheduled plus fresh tweets
    together keep the configured mean gap.  Adoptions of a tag the
    follower already uses are cancelled and counted, keeping the
    individual reuse-age histogram on the planted delay law.
    """
    rng = np.random.default_rng(config.seed)
    user_ids = [f"u{i:06d}" for i in range(config.n_users)]
    tag_names = [f"h{i:07d}" for i in range(config.vocab_size)]
    topic_words = [f"w{i:07d}" for i in range(config.vocab_size)]

    followees, followers = _build_follow_graph(rng, config)
    n_edges = sum(len(v) for v in followees.values())
    mean_followers = n_edges / config.n_users if config.n_users else 0.0
    q_social = config.p_social / mean_followers if mean_followers > 0 else 0.0
    if q_social > 1.0:
        logger.warning(
            "follow graph too sparse for p_social=%.3f (mean followers %.3f); social share will fall short",
            config.p_social,
            mean_followers,
        )
        q_social = 1.0

    weights = 1.0 / np.arange(1, config.vocab_size + 1, dtype=float) ** config.zipf_s
    zipf_cdf = np.cumsum(weights / weights.sum())

    span = config.n_tweets * config.mean_gap
    delay_lo = REUSE_DELAY_MIN_GAPS * config.mean_gap
    delay_hi = max(span / REUSE_DELAY_SPAN_FRACTION, 1.5 * delay_lo)

    base_keep = 1.0 - config.p_individual - config.p_social
    base_gap = config.mean_gap / base_keep if base_keep > 0 else math.inf

    stats = GenStats(n_edges=n_edges)
    own_tags: list[set[int]] = [set() for _ in range(config.n_users)]
    heap: list[tuple[float, int, int, int, int]] = []
    seq = 0
    tweets: list[Tweet] = []
    last_time = float(config.start_time)
    next_base = (
        float(config.start_time) + rng.exponential(base_gap)
        if math.isfinite(base_gap)
        else math.inf
    )

    def fresh_tag(user: int) -> int:
        history = own_tags[user]
        tag = -1
        for _ in range(_FRESH_DRAW_ATTEMPTS):
            tag = int(np.searchsorted(zipf_cdf, rng.random()))
            if tag not in history:
                return tag
        stats.n_fresh_collisions += 1
        return tag

    def emit(user: int, tag: int, time_f: float) -> None:
        nonlocal seq, last_time
        now = int(round(time_f))
        tweets.append(
            Tweet(
                tweet_id=f"t{len(tweets):08d}",
                user_id=user_ids[user],
                time=now,
                hashtags=frozenset((tag_names[tag],)),
                tokens=(topic_words[tag],),
            )
        )
        last_time = time_f
        own_tags[user].add(tag)
        if rng.random() < config.p_individual:
            delay = _truncated_pareto(rng, config.alpha, delay_lo, delay_hi)
            heapq.heappush(heap, (time_f + delay, seq, _KIND_INDIVIDUAL, user, tag))
            seq += 1
        if q_social > 0.0:
            for follower in followers[user]:
                if rng.random() < q_social:
                    delay = _truncated_pareto(rng, config.alpha, delay_lo, delay_hi)
                    heapq.heappush(heap, (time_f + delay, seq, _KIND_SOCIAL, follower, tag))
                    seq += 1

    while len(tweets) < config.n_tweets:
        if heap and heap[0][0] <= next_base:
            time_f, _, kind, user, tag = heapq.heappop(heap)
            if kind == _KIND_SOCIAL and tag in own_tags[user]:
                stats.n_social_cancelled += 1
                continue
            emit(user, tag, time_f)
            if kind == _KIND_INDIVIDUAL:
                stats.n_individual += 1
            else:
                stats.n_social += 1
        else:
            if math.isfinite(next_base):
                time_f = next_base
                next_base += rng.exponential(base_gap)
            else:
                # Entire stream is scheduled reuse; keep time moving
                # when nothing is pending yet (at most the first tweet).
                time_f = last_time + rng.exponential(config.mean_gap)
            user = int(rng.integers(config.n_users))
            emit(user, fresh_tag(user), time_f)
            stats.n_fresh += 1

    stats.n_tweets = len(tweets)
    stats.n_unfired_events = len(heap)
    logger.info(
        "generated %d tweets: fresh=%d individual=%d (%.3f) social=%d (%.3f) "
        "cancelled=%d collisions=%d unfired=%d",
        stats.n_tweets,
        stats.n_fresh,
        stats.n_individual,
        stats.individual_share(),
        stats.n_social,
        stats.social_share(),
        stats.n_social_cancelled,
        stats.n_fresh_collisions,
        stats.n_unfired_events,
    )

    graph = FollowGraph(
        edges={
            user_ids[u]: frozenset(user_ids[v] for v in targets)
            for u, targets in followees.items()
        }
    )
    header = (
        "synthetic follow graph",
        f"rng: numpy default_rng (PCG64), seed={config.seed}",
    )
    return GenResult(
        tweets_jsonl=tweets_to_jsonl(tweets),
        follows_tsv=follows_to_tsv(graph, header_comments=header),
        stats=stats,
    )
