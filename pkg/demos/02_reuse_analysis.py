"""Categorize hashtag reuse and fit the temporal decay law.

Every hashtag assignment is classified against strictly earlier events:
did this user use the tag before (individual), did a followee
(social), both, someone un-followed (network), or nobody (external)?
Then the ages of individual re-uses are histogrammed on a log grid and
a power law is fitted in log-log space; on a synthetic corpus the
fitted slope should recover the planted exponent.  Run:

    python3 demos/02_reuse_analysis.py
"""

from hashrec import (
    GenConfig,
    build_corpus,
    category_distribution,
    fit_power_law,
    generate,
    parse_follows,
    parse_tweets,
    reuse_age_histogram,
)

PLANTED_ALPHA = 1.0

config = GenConfig(
    n_users=200,
    n_tweets=40_000,
    follow_prob=0.02,
    p_individual=0.45,
    p_social=0.22,
    alpha=PLANTED_ALPHA,
    zipf_s=0.6,
    vocab_size=20_000,
    seed=13,
)
result = generate(config)
corpus = build_corpus(
    parse_tweets(result.tweets_jsonl.splitlines()),
    parse_follows(result.follows_tsv.splitlines()),
)
print(f"corpus: {len(corpus.tweets)} tweets, {len(corpus.users)} users")

print("\nreuse categories (count, share):")
for category, (count, share) in sorted(
    category_distribution(corpus).items(), key=lambda item: -item[1][0]
):
    print(f"  {category.value:<18} {count:>6}  {share:6.3f}")

hist = reuse_age_histogram(corpus, kind="individual", time_unit="seconds")
fit = fit_power_law(hist)
print(f"\nindividual reuse-age decay (log-log least squares over "
      f"{int(hist.counts.sum())} re-uses):")
print(f"  fitted slope     {fit.slope:8.4f}   (planted exponent -{PLANTED_ALPHA})")
print(f"  fitted intercept {fit.intercept:8.4f}")
print(f"  r_squared        {fit.r_squared:8.4f}")

print("\ncount per log-spaced age bucket (ascii sketch):")
midpoints = hist.midpoints()
peak = hist.counts.max()
for mid, count in zip(midpoints[::6], hist.counts[::6]):
    bar = "#" * int(round(40 * count / peak)) if peak else ""
    print(f"  age ~{mid:>10.0f}s  {int(count):>5}  {bar}")
