"""Content-aware scoring from token-to-hashtag co-occurrence.

Training tweets with text build a token/hashtag profile: document
frequencies for idf and co-occurrence counts linking tokens to the
hashtags they appeared with.  At query time the tweet's tokens vote for
hashtags with tf-idf weight, spread over each token's associated tags.
The hybrid recommender blends this content score into the activation
mix so users with thin histories still get ranked candidates.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from hashrec.activation import (
    ActivationParams,
    ScoredList,
    individual_activations,
    mix_scores,
    normalize_softmax,
    rank_top_k,
    social_activations,
)
from hashrec.corpus import Corpus, FollowGraph, Timestamp, UsageIndex


@dataclass(frozen=True)
class TokenHashtagProfile:
    """Token document frequencies and token-hashtag co-occurrence.

    ``doc_count`` counts training tweets that carried tokens.  ``df[w]``
    counts those tweets containing w at least once.  ``assoc[w][h]``
    counts tweets where token w and hashtag h appeared together;
    ``assoc_total[w]`` is the row sum used to spread a token's vote.
    """

    doc_count: int
    df: Mapping[str, int]
    assoc: Mapping[str, Mapping[str, int]]
    assoc_total: Mapping[str, int]


def build_profiles(train: Corpus) -> TokenHashtagProfile:
    """Count df and token-hashtag co-occurrence over training tweets.

    Tweets without tokens are skipped entirely; tweets with tokens but
    no hashtags still raise doc_count and df so idf stays honest.
    Tokens are counted once per tweet (document frequency).
    """
    doc_count = 0
    df: Counter[str] = Counter()
    assoc: dict[str, Counter[str]] = {}
    for tweet in train.tweets:
        if not tweet.tokens:
            continue
        doc_count += 1
        distinct = set(tweet.tokens)
        df.update(distinct)
        if tweet.hashtags:
            for token in distinct:
                counter = assoc.setdefault(token, Counter())
                for hashtag in tweet.hashtags:
                    counter[hashtag] += 1
    assoc_total = {token: sum(counter.values()) for token, counter in assoc.items()}
    return TokenHashtagProfile(
        doc_count=doc_count,
        df=dict(df),
        assoc={token: dict(counter) for token, counter in assoc.items()},
        assoc_total=assoc_total,
    )


def idf(profile: TokenHashtagProfile, token: str) -> float:
    """ln(doc_count / df[token]); KeyError for tokens never seen."""
    return math.log(profile.doc_count / profile.df[token])


def content_scores(profile: TokenHashtagProfile, tokens: Sequence[str]) -> dict[str, float]:
    """tf-idf-weighted hashtag votes from the query tokens.

    Each known token contributes tf * idf, split across its associated
    hashtags in proportion to co-occurrence counts.  Tokens absent from
    the profile, or seen only in hashtag-less tweets, contribute
    nothing; with no usable tokens the result is empty.
    """
    scores: dict[str, float] = {}
    tf = Counter(tokens)
    for token in sorted(tf):
        row = profile.assoc.get(token)
        if not row:
            continue
        weight = tf[token] * idf(profile, token)
        total = profile.assoc_total[token]
        for hashtag in sorted(row):
            scores[hashtag] = scores.get(hashtag, 0.0) + weight * row[hashtag] / total
    return scores


def recommend_bll_isc(
    index: UsageIndex,
    graph: FollowGraph,
    profile: TokenHashtagProfile,
    user_id: str,
    now: Timestamp,
    tokens: Sequence[str] | None,
    params: ActivationParams = ActivationParams(),
    lambda_weight: float = 0.5,
    k: int = 10,
) -> ScoredList:
    """Blend activation mixing with content scores.

    final = lambda_weight * (beta-mixed softmaxed activations)
          + (1 - lambda_weight) * softmaxed content scores,
    over the union of both candidate sets.  lambda_weight = 1 reduces to
    the history-only recommender on the shared candidates; 0 ranks by
    content alone.
    """
    if not 0.0 <= lambda_weight <= 1.0:
        raise ValueError("lambda_weight must lie in [0, 1]")
    individual = normalize_softmax(individual_activations(index, user_id, now, params))
    social = normalize_softmax(social_activations(index, graph, user_id, now, params))
    mixed = mix_scores(individual, social, params.beta)
    content = normalize_softmax(content_scores(profile, tokens or []))
    final: dict[str, float] = {}
    for hashtag in sorted(set(mixed) | set(content)):
        final[hashtag] = lambda_weight * mixed.get(hashtag, 0.0) + (1.0 - lambda_weight) * content.get(
            hashtag, 0.0
        )
    return rank_top_k(final, k)
