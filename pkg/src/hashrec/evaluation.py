"""Offline top-k evaluation of hashtag recommenders.

Held-out hashtag-bearing tweets become queries: the recommender sees
only training history strictly before the query time and is scored on
how highly it ranks the tweet's actual hashtags.  Metrics are averaged
per query (macro) so prolific users do not dominate.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from hashrec.activation import ActivationParams, ScoredList, recommend_bll_is
from hashrec.baselines import most_recent, mp_global, mp_social, mp_user
from hashrec.content import TokenHashtagProfile, build_profiles, recommend_bll_isc
from hashrec.corpus import Corpus, Tweet, UsageIndex, build_usage_index

logger = logging.getLogger(__name__)

ALGORITHMS = ("bll_is", "bll_isc", "mp", "mp_u", "mp_s", "mr")


def _ranked_tags(recommended: Sequence) -> list[str]:
    """Accept a scored list or a plain ranked list of hashtags."""
    return [item[0] if isinstance(item, tuple) else item for item in recommended]


def _check_relevant(relevant: frozenset[str] | set[str]) -> None:
    if not relevant:
        raise ValueError("relevant set must be non-empty")


def precision_at_k(recommended: Sequence, relevant: set[str] | frozenset[str], k: int) -> float:
    """Hits in the top k divided by k (not by list length)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_relevant(relevant)
    tags = _ranked_tags(recommended)[:k]
    hits = sum(1 for tag in tags if tag in relevant)
    return hits / k


def recall_at_k(recommended: Sequence, relevant: set[str] | frozenset[str], k: int) -> float:
    """Hits in the top k divided by the number of relevant hashtags."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_relevant(relevant)
    tags = _ranked_tags(recommended)[:k]
    hits = sum(1 for tag in tags if tag in relevant)
    return hits / len(relevant)


def mrr(recommended: Sequence, relevant: set[str] | frozenset[str]) -> float:
    """Reciprocal rank of the first relevant hashtag, else 0."""
    _check_relevant(relevant)
    for rank, tag in enumerate(_ranked_tags(recommended), start=1):
        if tag in relevant:
            return 1.0 / rank
    return 0.0


def average_precision(recommended: Sequence, relevant: set[str] | frozenset[str], k: int | None = None) -> float:
    """Mean of precision at each hit rank, truncated at k.

    The denominator is min(|relevant|, k) so that a perfect list of
    length k scores 1 even when more relevant items exist than fit.
    """
    _check_relevant(relevant)
    tags = _ranked_tags(recommended)
    if k is None:
        k = len(tags) if tags else 1
    if k < 1:
        raise ValueError("k must be >= 1")
    hits = 0
    total = 0.0
    for rank, tag in enumerate(tags[:k], start=1):
        if tag in relevant:
            hits += 1
            total += hits / rank
    return total / min(len(relevant), k)


def ndcg_at_k(recommended: Sequence, relevant: set[str] | frozenset[str], k: int) -> float:
    """Binary-gain nDCG: DCG over the ideal DCG of min(|relevant|, k) hits."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_relevant(relevant)
    dcg = 0.0
    for rank, tag in enumerate(_ranked_tags(recommended)[:k], start=1):
        if tag in relevant:
            dcg += 1.0 / math.log2(rank + 1)
    ideal_hits = min(len(relevant), k)
    idcg = sum(1.0 / math.log2(rank + 1) for rank in range(1, ideal_hits + 1))
    return dcg / idcg


def query_metrics(recommended: Sequence, relevant: set[str] | frozenset[str], k_max: int) -> dict:
    """All per-query metrics at once: P@1..k_max, R@1..k_max, MRR, AP, nDCG."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    tags = _ranked_tags(recommended)
    return {
        "precision": [precision_at_k(tags, relevant, k) for k in range(1, k_max + 1)],
        "recall": [recall_at_k(tags, relevant, k) for k in range(1, k_max + 1)],
        "mrr": mrr(tags, relevant),
        "ap": average_precision(tags, relevant, k_max),
        "ndcg": ndcg_at_k(tags, relevant, k_max),
    }


@dataclass(frozen=True)
class EvalReport:
    """Macro-averaged metrics for one algorithm."""

    algorithm: str
    n_test_queries: int
    k_max: int
    precision: list[float]
    recall: list[float]
    f1_at_5: float
    mrr: float
    map: float
    ndcg: float

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "n_test_queries": self.n_test_queries,
            "k_max": self.k_max,
            "precision": list(self.precision),
            "recall": list(self.recall),
            "f1_at_5": self.f1_at_5,
            "mrr": self.mrr,
            "map": self.map,
            "ndcg": self.ndcg,
        }


def pr_curve(report: EvalReport) -> list[tuple[int, float, float]]:
    """(k, precision@k, recall@k) points for k = 1..k_max."""
    return [
        (k, report.precision[k - 1], report.recall[k - 1])
        for k in range(1, report.k_max + 1)
    ]


def _make_recommenders(
    index: UsageIndex,
    graph,
    profile: TokenHashtagProfile | None,
    params: ActivationParams,
    lambda_weight: float,
    k_max: int,
) -> Mapping[str, Callable[[Tweet, Sequence[str] | None], ScoredList]]:
    return {
        "bll_is": lambda q, tokens: recommend_bll_is(index, graph, q.user_id, q.time, params, k_max),
        "bll_isc": lambda q, tokens: recommend_bll_isc(
            index, graph, profile, q.user_id, q.time, tokens, params, lambda_weight, k_max
        ),
        "mp": lambda q, tokens: mp_global(index, q.time, k_max),
        "mp_u": lambda q, tokens: mp_user(index, q.user_id, q.time, k_max),
        "mp_s": lambda q, tokens: mp_social(index, graph, q.user_id, q.time, k_max),
        "mr": lambda q, tokens: most_recent(index, q.user_id, q.time, k_max),
    }


def run_eval(
    train: Corpus,
    test: Sequence[Tweet],
    scenario: int = 1,
    algorithms: Sequence[str] = ALGORITHMS,
    params: ActivationParams = ActivationParams(),
    lambda_weight: float = 0.5,
    k_max: int = 10,
    threads: int = 1,
) -> dict[str, EvalReport]:
    """Evaluate the named algorithms over the held-out queries.

    Scenario 1 hides query text (history-only); scenario 2 passes the
    query tweet's tokens to content-capable algorithms.  Queries run in
    (time, tweet_id) order regardless of input order, and per-query
    rows are reduced in that same order, so results do not depend on
    the test sequence ordering or on ``threads``.
    """
    if scenario not in (1, 2):
        raise ValueError("scenario must be 1 or 2")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if not algorithms:
        raise ValueError("no algorithms requested")
    unknown = [name for name in algorithms if name not in ALGORITHMS]
    if unknown:
        raise ValueError(f"unknown algorithm(s): {', '.join(unknown)}")
    queries = sorted(test, key=Tweet.sort_key)
    if not queries:
        raise ValueError("no test queries")
    for query in queries:
        if not query.hashtags:
            raise ValueError(f"test tweet {query.tweet_id!r} has no hashtags")
    train_ids = {t.tweet_id for t in train.tweets}
    leaked = [q.tweet_id for q in queries if q.tweet_id in train_ids]
    if leaked:
        raise ValueError(f"test tweet(s) also present in training data: {', '.join(leaked[:5])}")

    index = build_usage_index(train)
    profile: TokenHashtagProfile | None = None
    if scenario == 2 or "bll_isc" in algorithms:
        profile = build_profiles(train)
    if scenario == 2:
        has_text = (profile is not None and profile.doc_count > 0) or any(
            q.tokens for q in queries
        )
        if not has_text:
            raise ValueError("scenario 2 requires text, but neither training nor test tweets have any")

    recommenders = _make_recommenders(index, train.graph, profile, params, lambda_weight, k_max)

    def evaluate_query(query: Tweet) -> dict[str, dict]:
        tokens = query.tokens if scenario == 2 else None
        rows: dict[str, dict] = {}
        for name in algorithms:
            recommended = recommenders[name](query, tokens)
            rows[name] = query_metrics(recommended, query.hashtags, k_max)
        return rows

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            all_rows = list(pool.map(evaluate_query, queries))
    else:
        all_rows = [evaluate_query(query) for query in queries]

    n = len(queries)
    reports: dict[str, EvalReport] = {}
    for name in algorithms:
        precision_sums = [0.0] * k_max
        recall_sums = [0.0] * k_max
        mrr_sum = 0.0
        ap_sum = 0.0
        ndcg_sum = 0.0
        for rows in all_rows:
            row = rows[name]
            for i in range(k_max):
                precision_sums[i] += row["precision"][i]
                recall_sums[i] += row["recall"][i]
            mrr_sum += row["mrr"]
            ap_sum += row["ap"]
            ndcg_sum += row["ndcg"]
        precision = [s / n for s in precision_sums]
        recall = [s / n for s in recall_sums]
        k5 = min(5, k_max)
        p5, r5 = precision[k5 - 1], recall[k5 - 1]
        f1 = 2 * p5 * r5 / (p5 + r5) if (p5 + r5) > 0 else 0.0
        reports[name] = EvalReport(
            algorithm=name,
            n_test_queries=n,
            k_max=k_max,
            precision=precision,
            recall=recall,
            f1_at_5=f1,
            mrr=mrr_sum / n,
            map=ap_sum / n,
            ndcg=ndcg_sum / n,
        )
        logger.info(
            "%s: n=%d R@%d=%.4f MRR=%.4f MAP=%.4f nDCG=%.4f",
            name,
            n,
            k5,
            recall[k5 - 1],
            reports[name].mrr,
            reports[name].map,
            reports[name].ndcg,
        )
    return reports
