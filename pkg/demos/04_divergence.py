"""Jensen-Shannon divergence between source and target feature distributions.

Base-2 JS divergence lies in [0, 1]: 0 for identical distributions, 1
for disjoint supports. Per-feature divergences are averaged into group
aggregates, and a group is flagged ("bold") when its aggregate reaches
the 0.075 threshold.
"""
import random

from styleprof.corpus import Sentence, SentencePair, Split
from styleprof.divergence import (
    BOLD_THRESHOLD,
    Distribution,
    divergence_report,
    js_divergence,
)
from styleprof.features import FeatureGroup

# ------------------------------------------------------------------
# The measure itself, on hand-built categorical distributions.
uniform = Distribution(probs=(0.5, 0.5), categories=(0, 1))
skewed = Distribution(probs=(0.9, 0.1), categories=(0, 1))
flipped = Distribution(probs=(0.1, 0.9), categories=(0, 1))
print(f"JS(uniform, uniform) = {js_divergence(uniform, uniform):.4f}")
print(f"JS(uniform, skewed)  = {js_divergence(uniform, skewed):.4f}")
print(f"JS(skewed,  flipped) = {js_divergence(skewed, flipped):.4f}")

# ------------------------------------------------------------------
# A corpus where target token counts are doubled by comma padding while
# the words stay identically distributed: the sentence length group
# should light up, word-level groups should stay below threshold.
WORDS = ["table", "river", "stone", "window", "garden", "paper"]
rng = random.Random(2)
pairs = []
for i in range(150):
    src = " ".join(rng.choice(WORDS) for _ in range(rng.randint(5, 9)))
    tgt_words = [rng.choice(WORDS) for _ in range(rng.randint(5, 9))]
    pairs.append(
        SentencePair(
            id=i,
            source=Sentence.from_raw(src),
            target=Sentence.from_raw(" ".join(w + " ," for w in tgt_words)),
        )
    )
split = Split(name="test", pairs=pairs)

groups = (FeatureGroup.SenL, FeatureGroup.LexD, FeatureGroup.Read, FeatureGroup.Sub)
report = divergence_report(split, groups, dataset="planted-length")

print(f"\ngroup aggregates (bold threshold {BOLD_THRESHOLD})")
for group, agg in report.per_group.items():
    marker = "  <-- bold" if report.bold[group] else ""
    print(f"  {group:5} {agg:.4f}{marker}")

print("\nlargest per-feature divergences")
top = sorted(report.per_feature.items(), key=lambda kv: -kv[1])[:5]
for name, val in top:
    print(f"  {name:25} {val:.4f}  ({report.feature_groups[name]})")
