"""Frequency and recency baselines."""

import numpy as np
import pytest

from hashrec.activation import ActivationParams, recommend_bll_is
from hashrec.baselines import most_recent, mp_global, mp_social, mp_user
from hashrec.corpus import FollowGraph, Tweet, build_corpus, build_usage_index


def index_of(*rows):
    tweets = [
        Tweet(tweet_id=f"t{i}", user_id=u, time=t, hashtags=frozenset(tags))
        for i, (u, t, tags) in enumerate(rows)
    ]
    return build_usage_index(build_corpus(tweets))


class TestMpGlobal:
    def test_count_order(self):
        index = index_of(("u1", 1, ["a"]), ("u2", 2, ["a"]), ("u3", 3, ["a", "b"]))
        assert mp_global(index, 10) == [("a", 3.0), ("b", 1.0)]

    def test_empty_index(self):
        assert mp_global(index_of(), 10) == []

    def test_tie_counts_lexicographic(self):
        index = index_of(("u1", 1, ["zz", "aa"]))
        assert [t for t, _ in mp_global(index, 10)] == ["aa", "zz"]

    def test_strictly_before_now(self):
        index = index_of(("u1", 5, ["a"]), ("u1", 10, ["a"]), ("u1", 15, ["a"]))
        assert mp_global(index, 10) == [("a", 1.0)]


class TestMpUser:
    def test_own_counts_only(self):
        index = index_of(("u1", 1, ["x"]), ("u2", 2, ["y"]), ("u2", 3, ["y"]))
        assert mp_user(index, "u1", 10) == [("x", 1.0)]

    def test_unknown_user(self):
        assert mp_user(index_of(("u1", 1, ["x"])), "zz", 10) == []

    def test_equal_counts_lexicographic(self):
        index = index_of(("u1", 1, ["x"]), ("u1", 2, ["y"]), ("u1", 3, ["x"]), ("u1", 4, ["y"]))
        assert mp_user(index, "u1", 10) == [("x", 2.0), ("y", 2.0)]


class TestMpSocial:
    GRAPH = FollowGraph(edges={"u1": frozenset({"a", "b"})})

    def test_single_followee_counts(self):
        index = index_of(("a", 1, ["p"]), ("a", 2, ["p"]), ("a", 3, ["q"]))
        assert mp_social(index, self.GRAPH, "u1", 10) == [("p", 2.0), ("q", 1.0)]

    def test_no_followees(self):
        index = index_of(("a", 1, ["p"]))
        assert mp_social(index, FollowGraph(edges={}), "u1", 10) == []

    def test_pooled_across_followees(self):
        index = index_of(("a", 1, ["p"]), ("b", 2, ["p"]), ("b", 3, ["q"]), ("zz", 4, ["q"]))
        assert mp_social(index, self.GRAPH, "u1", 10) == [("p", 2.0), ("q", 1.0)]


class TestMostRecent:
    def test_fresher_first(self):
        index = index_of(("u1", 5, ["x"]), ("u1", 9, ["y"]))
        assert most_recent(index, "u1", 10) == [("y", -1.0), ("x", -5.0)]

    def test_same_last_use_lexicographic(self):
        index = index_of(("u1", 9, ["b", "a"]))
        assert [t for t, _ in most_recent(index, "u1", 10)] == ["a", "b"]

    def test_unknown_user(self):
        assert most_recent(index_of(("u1", 1, ["x"])), "zz", 10) == []

    def test_use_at_now_excluded(self):
        index = index_of(("u1", 10, ["x"]), ("u1", 4, ["y"]))
        assert most_recent(index, "u1", 10) == [("y", -6.0)]


class TestAgreementWithActivationLimits:
    def test_mp_user_matches_bll_ranking_as_decay_vanishes(self):
        # With d almost 0 every age contributes ~1, so activation
        # becomes a pure count.  Distinct counts per hashtag keep the
        # comparison away from ties, where the two tie rules
        # legitimately differ (lexicographic vs. residual recency).
        rng = np.random.default_rng(42)
        graph = FollowGraph(edges={})
        params = ActivationParams(d_individual=1e-6, d_social=1e-6, beta=1.0)
        for _ in range(25):
            n_tags = int(rng.integers(2, 7))
            times = iter(sorted(rng.choice(np.arange(1, 5000), size=n_tags * (n_tags + 1) // 2, replace=False)))
            rows = []
            for i in range(n_tags):
                rows.extend(("u1", int(next(times)), [f"h{i}"]) for _ in range(i + 1))
            index = index_of(*rows)
            now = 10_000
            counts = [t for t, _ in mp_user(index, "u1", now, k=50)]
            bll = [t for t, _ in recommend_bll_is(index, graph, "u1", now, params, k=50)]
            assert counts == bll

    def test_most_recent_matches_bll_on_single_use_histories(self):
        rng = np.random.default_rng(42)
        graph = FollowGraph(edges={})
        params = ActivationParams(beta=1.0)
        for _ in range(25):
            n = int(rng.integers(2, 12))
            times = rng.choice(np.arange(1, 900), size=n, replace=False)
            rows = [("u1", int(t), [f"h{i}"]) for i, t in enumerate(times)]
            index = index_of(*rows)
            recency = [t for t, _ in most_recent(index, "u1", 1000, k=20)]
            bll = [t for t, _ in recommend_bll_is(index, graph, "u1", 1000, params, k=20)]
            assert recency == bll


class TestSharedContracts:
    @pytest.mark.parametrize("k", [0, -3])
    def test_k_validated_everywhere(self, k):
        index = index_of(("u1", 1, ["x"]))
        graph = FollowGraph(edges={})
        for call in (
            lambda: mp_global(index, 10, k),
            lambda: mp_user(index, "u1", 10, k),
            lambda: mp_social(index, graph, "u1", 10, k),
            lambda: most_recent(index, "u1", 10, k),
        ):
            with pytest.raises(ValueError):
                call()
