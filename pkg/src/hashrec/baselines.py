"""Frequency and recency baselines for the evaluation harness.

Each baseline ranks hashtags from the same strictly-before-now usage
events the activation recommender sees, so comparisons isolate the
value of power-law decay rather than differences in data access.
"""

from __future__ import annotations

from hashrec.activation import ScoredList, rank_top_k
from hashrec.corpus import FollowGraph, Timestamp, UsageIndex


def mp_global(index: UsageIndex, now: Timestamp, k: int = 10) -> ScoredList:
    """Most popular overall: global use counts strictly before now."""
    scores: dict[str, float] = {}
    for hashtag in index.hashtags():
        count = index.count_global_before(hashtag, now)
        if count:
            scores[hashtag] = float(count)
    return rank_top_k(scores, k)


def mp_user(index: UsageIndex, user_id: str, now: Timestamp, k: int = 10) -> ScoredList:
    """Most popular in the user's own history strictly before now."""
    scores: dict[str, float] = {}
    for hashtag in index.user_history(user_id):
        count = index.count_user_before(user_id, hashtag, now)
        if count:
            scores[hashtag] = float(count)
    return rank_top_k(scores, k)


def mp_social(index: UsageIndex, graph: FollowGraph, user_id: str, now: Timestamp, k: int = 10) -> ScoredList:
    """Most popular across followee histories strictly before now."""
    scores: dict[str, float] = {}
    for followee in sorted(graph.followees(user_id)):
        for hashtag in index.user_history(followee):
            count = index.count_user_before(followee, hashtag, now)
            if count:
                scores[hashtag] = scores.get(hashtag, 0.0) + float(count)
    return rank_top_k(scores, k)


def most_recent(index: UsageIndex, user_id: str, now: Timestamp, k: int = 10) -> ScoredList:
    """The user's own hashtags, freshest first.

    Scores are the negated age of the last use before now, so larger is
    more recent and the shared tie rule (score desc, hashtag asc) keeps
    the ordering deterministic.
    """
    scores: dict[str, float] = {}
    for hashtag in index.user_history(user_id):
        last = index.last_use_before(user_id, hashtag, now)
        if last is not None:
            scores[hashtag] = -float(now - last)
    return rank_top_k(scores, k)
