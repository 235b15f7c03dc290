"""Ranking metrics and the offline evaluation harness."""

import math

import numpy as np
import pytest

from hashrec.corpus import FollowGraph, Tweet, build_corpus, chronological_split
from hashrec.evaluation import (
    average_precision,
    mrr,
    ndcg_at_k,
    pr_curve,
    precision_at_k,
    query_metrics,
    recall_at_k,
    run_eval,
)


def make_tweet(tweet_id, user_id, time, hashtags, tokens=None):
    return Tweet(
        tweet_id=tweet_id,
        user_id=user_id,
        time=time,
        hashtags=frozenset(hashtags),
        tokens=tuple(tokens) if tokens is not None else None,
    )


class TestPrecisionRecall:
    def test_hand_counts(self):
        assert precision_at_k(["a", "c"], {"a", "b"}, 2) == 0.5
        assert recall_at_k(["a", "c"], {"a", "b"}, 2) == 0.5

    def test_empty_recommendation(self):
        assert precision_at_k([], {"a"}, 5) == 0.0
        assert recall_at_k([], {"a"}, 5) == 0.0

    def test_all_relevant_tops(self):
        assert precision_at_k(["a", "b"], {"a", "b"}, 2) == 1.0
        assert recall_at_k(["a", "b"], {"a", "b"}, 5) == 1.0

    def test_precision_denominator_is_k_even_for_short_lists(self):
        assert precision_at_k(["a"], {"a"}, 5) == 0.2

    def test_scored_lists_accepted(self):
        assert precision_at_k([("a", 0.9), ("c", 0.1)], {"a", "b"}, 2) == 0.5

    def test_empty_relevant_rejected(self):
        with pytest.raises(ValueError):
            precision_at_k(["a"], set(), 1)
        with pytest.raises(ValueError):
            recall_at_k(["a"], set(), 1)


class TestRankMetrics:
    def test_first_item_relevant(self):
        assert mrr(["a", "b"], {"a"}) == 1.0

    def test_second_item_relevant_hand_values(self):
        rec, relevant = ["x", "a"], {"a"}
        assert mrr(rec, relevant) == 0.5
        assert average_precision(rec, relevant, 2) == 0.5
        np.testing.assert_allclose(ndcg_at_k(rec, relevant, 2), 1 / math.log2(3), rtol=1e-12)

    def test_nothing_relevant_retrieved(self):
        assert mrr(["x", "y"], {"a"}) == 0.0
        assert average_precision(["x", "y"], {"a"}, 2) == 0.0
        assert ndcg_at_k(["x", "y"], {"a"}, 2) == 0.0

    def test_ap_denominator_truncates_at_k(self):
        # Perfect top-3 out of 5 relevant: k caps the achievable set.
        assert average_precision(["a", "b", "c"], {"a", "b", "c", "d", "e"}, 3) == 1.0

    def test_ndcg_ideal_truncates_at_k(self):
        assert ndcg_at_k(["a", "b"], {"a", "b", "c"}, 2) == 1.0

    def test_ap_defaults_to_full_list(self):
        np.testing.assert_allclose(
            average_precision(["x", "a", "b"], {"a", "b"}),
            (1 / 2 + 2 / 3) / 2,
            rtol=1e-12,
        )


class TestQueryMetrics:
    def test_consistent_with_individual_functions(self):
        rng = np.random.default_rng(42)
        pool = [f"h{i}" for i in range(8)]
        for _ in range(30):
            size = int(rng.integers(0, 7))
            rec = list(rng.choice(pool, size=size, replace=False))
            relevant = set(rng.choice(pool, size=int(rng.integers(1, 5)), replace=False))
            k_max = int(rng.integers(1, 8))
            row = query_metrics(rec, relevant, k_max)
            for k in range(1, k_max + 1):
                assert row["precision"][k - 1] == precision_at_k(rec, relevant, k)
                assert row["recall"][k - 1] == recall_at_k(rec, relevant, k)
            assert row["mrr"] == mrr(rec, relevant)
            assert row["ap"] == average_precision(rec, relevant, k_max)
            assert row["ndcg"] == ndcg_at_k(rec, relevant, k_max)

    def test_recall_non_decreasing_in_k(self):
        rng = np.random.default_rng(42)
        pool = [f"h{i}" for i in range(8)]
        for _ in range(30):
            rec = list(rng.choice(pool, size=int(rng.integers(0, 8)), replace=False))
            relevant = set(rng.choice(pool, size=int(rng.integers(1, 5)), replace=False))
            row = query_metrics(rec, relevant, 8)
            assert all(a <= b + 1e-15 for a, b in zip(row["recall"], row["recall"][1:]))


def two_user_fixture():
    """u1 reuses x constantly; u2 mostly y.  Holdout-1 split gives two
    test queries whose mp_u outputs are hand-predictable."""
    tweets = [
        make_tweet("a1", "u1", 10, ["x"]),
        make_tweet("a2", "u1", 20, ["x"]),
        make_tweet("a3", "u1", 30, ["y"]),
        make_tweet("a4", "u1", 40, ["x"]),
        make_tweet("b1", "u2", 15, ["y"]),
        make_tweet("b2", "u2", 25, ["y"]),
        make_tweet("b3", "u2", 45, ["z"]),
    ]
    return build_corpus(tweets, FollowGraph(edges={}))


class TestRunEval:
    def test_hand_computed_report_for_mp_user(self):
        train, test = chronological_split(two_user_fixture())
        assert {t.tweet_id for t in test} == {"a4", "b3"}
        reports = run_eval(train, test, scenario=1, algorithms=["mp_u"], k_max=2)
        report = reports["mp_u"]
        # a4: history {x:2, y:1} → rec [x, y]; relevant {x}: P@1=1, P@2=1/2,
        #     R@1=R@2=1, MRR=1, AP=1, nDCG@2=1.
        # b3: history {y:2} → rec [y]; relevant {z}: all zeros.
        assert report.n_test_queries == 2
        np.testing.assert_allclose(report.precision, [0.5, 0.25], rtol=1e-12)
        np.testing.assert_allclose(report.recall, [0.5, 0.5], rtol=1e-12)
        np.testing.assert_allclose(report.mrr, 0.5, rtol=1e-12)
        np.testing.assert_allclose(report.map, 0.5, rtol=1e-12)
        np.testing.assert_allclose(report.ndcg, 0.5, rtol=1e-12)
        # F1 from the k=min(5, k_max)=2 means: 2PR/(P+R)
        np.testing.assert_allclose(report.f1_at_5, 2 * 0.25 * 0.5 / 0.75, rtol=1e-12)

    def test_perfect_recommender_scores_one(self):
        tweets = [
            make_tweet("a1", "u1", 10, ["x"]),
            make_tweet("a2", "u1", 20, ["x"]),
        ]
        train, test = chronological_split(build_corpus(tweets, FollowGraph(edges={})))
        report = run_eval(train, test, algorithms=["mp_u"], k_max=1)["mp_u"]
        assert report.precision[0] == 1.0
        assert report.recall[0] == 1.0
        assert report.mrr == 1.0 and report.map == 1.0 and report.ndcg == 1.0

    def test_queries_with_empty_history_still_run(self):
        tweets = [
            make_tweet("a1", "u1", 10, ["x"]),
            make_tweet("a2", "u1", 20, ["x"]),
            make_tweet("b1", "u2", 5, ["y"]),
            make_tweet("b2", "u2", 30, ["y"]),
        ]
        corpus = build_corpus(tweets, FollowGraph(edges={}))
        train, test = chronological_split(corpus)
        # drop u2's train tweet so its query has zero history
        train = build_corpus([t for t in train.tweets if t.user_id != "u2"], corpus.graph)
        report = run_eval(train, test, algorithms=["mp_u"], k_max=2)["mp_u"]
        assert report.n_test_queries == 2
        np.testing.assert_allclose(report.recall[1], 0.5, rtol=1e-12)

    def test_threads_do_not_change_results(self):
        train, test = chronological_split(two_user_fixture())
        a = run_eval(train, test, algorithms=["mp_u", "mr"], k_max=2, threads=1)
        b = run_eval(train, test, algorithms=["mp_u", "mr"], k_max=2, threads=8)
        assert a == b

    def test_test_order_does_not_change_results(self):
        train, test = chronological_split(two_user_fixture())
        a = run_eval(train, test, algorithms=["mp_u"], k_max=2)
        b = run_eval(train, list(reversed(test)), algorithms=["mp_u"], k_max=2)
        assert a == b

    def test_scenario_two_passes_tokens_to_content(self):
        tweets = [
            make_tweet("a1", "u1", 10, ["x"], ["query", "words"]),
            make_tweet("a2", "u2", 20, ["x"], None),
            make_tweet("a3", "u2", 30, ["x"], ["query"]),
        ]
        corpus = build_corpus(tweets, FollowGraph(edges={}))
        train, test = chronological_split(corpus)
        assert [t.tweet_id for t in test] == ["a3"]
        s1 = run_eval(train, test, scenario=1, algorithms=["bll_isc"], k_max=1)["bll_isc"]
        s2 = run_eval(train, test, scenario=2, algorithms=["bll_isc"], k_max=1)["bll_isc"]
        # u2's history has x; content adds evidence for x only in s2.
        assert s1.recall[0] == 1.0 and s2.recall[0] == 1.0

    def test_validation_errors(self):
        train, test = chronological_split(two_user_fixture())
        with pytest.raises(ValueError, match="scenario"):
            run_eval(train, test, scenario=3, algorithms=["mp_u"])
        with pytest.raises(ValueError, match="unknown algorithm"):
            run_eval(train, test, algorithms=["mp_u", "bogus"])
        with pytest.raises(ValueError, match="no test queries"):
            run_eval(train, [], algorithms=["mp_u"])
        with pytest.raises(ValueError, match="no algorithms"):
            run_eval(train, test, algorithms=[])
        with pytest.raises(ValueError, match="k_max"):
            run_eval(train, test, algorithms=["mp_u"], k_max=0)
        with pytest.raises(ValueError, match="threads"):
            run_eval(train, test, algorithms=["mp_u"], threads=0)

    def test_leakage_guard_rejects_overlap(self):
        corpus = two_user_fixture()
        train, test = chronological_split(corpus)
        with pytest.raises(ValueError, match="training"):
            run_eval(corpus, test, algorithms=["mp_u"])

    def test_hashtagless_test_tweet_rejected(self):
        train, _ = chronological_split(two_user_fixture())
        bad = [make_tweet("q1", "u1", 99, [])]
        with pytest.raises(ValueError, match="no hashtags"):
            run_eval(train, bad, algorithms=["mp_u"])

    def test_scenario_two_without_any_text_rejected(self):
        train, test = chronological_split(two_user_fixture())
        with pytest.raises(ValueError, match="text"):
            run_eval(train, test, scenario=2, algorithms=["mp_u"])


class TestPrCurve:
    def test_rows_match_report(self):
        train, test = chronological_split(two_user_fixture())
        report = run_eval(train, test, algorithms=["mp_u"], k_max=10)["mp_u"]
        rows = pr_curve(report)
        assert len(rows) == 10
        assert rows[0] == (1, report.precision[0], report.recall[0])
        recs = [r for _, _, r in rows]
        assert all(a <= b + 1e-15 for a, b in zip(recs, recs[1:]))

    def test_all_metrics_within_unit_interval(self):
        train, test = chronological_split(two_user_fixture())
        for report in run_eval(train, test, k_max=4).values():
            values = report.precision + report.recall + [report.f1_at_5, report.mrr, report.map, report.ndcg]
            assert all(0.0 <= v <= 1.0 for v in values)
