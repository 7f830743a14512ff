"""Per-feature Jensen-Shannon divergence between the two style classes.

Base-2 logarithms throughout, so every divergence lies in [0, 1] and the
0.075 bold threshold is directly comparable across features. Continuous
features are histogrammed with equal-frequency (quantile) bin edges
computed on the pooled source+target values; small-support integer
features get exact categorical distributions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import Split
from .errors import EmptySplit, SupportMismatch
from .features import FeatureGroup, GROUP_ORDER, build_matrix

BOLD_THRESHOLD = 0.075
DEFAULT_BINS = 20


@dataclass(frozen=True)
class Distribution:
    """Categorical or histogram distribution; probabilities sum to 1."""

    probs: tuple[float, ...]
    categories: tuple = ()  # categorical support, empty for histograms
    bin_edges: tuple[float, ...] = ()  # strictly increasing, empty for categorical

    def __post_init__(self):
        total = sum(self.probs)
        if any(p < 0 for p in self.probs) or abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities must be nonnegative and sum to 1, got {total}")
        if self.bin_edges and any(
            b <= a for a, b in zip(self.bin_edges, self.bin_edges[1:])
        ):
            raise ValueError("bin edges must be strictly increasing")

    def support_key(self):
        return (self.categories, self.bin_edges, len(self.probs))


def js_divergence(p: Distribution, q: Distribution) -> float:
    """JS(p, q) = KL(p||m)/2 + KL(q||m)/2 with m the midpoint, log base 2."""
    if p.support_key() != q.support_key():
        raise SupportMismatch("distributions have different supports")
    pa = np.asarray(p.probs)
    qa = np.asarray(q.probs)
    m = (pa + qa) / 2

    def kl(a, mref):
        mask = a > 0
        return float(np.sum(a[mask] * np.log2(a[mask] / mref[mask])))

    val = kl(pa, m) / 2 + kl(qa, m) / 2
    return float(min(max(val, 0.0), 1.0))


def paired_distributions(
    source_values: np.ndarray, target_values: np.ndarray, bins: int = DEFAULT_BINS
) -> tuple[Distribution, Distribution]:
    """Distributions for one feature over the two classes, on shared support."""
    s = np.asarray(source_values, dtype=float)
    t = np.asarray(target_values, dtype=float)
    if s.size == 0 or t.size == 0:
        raise EmptySplit("cannot build a distribution from no values")
    pooled = np.concatenate([s, t])
    distinct = np.unique(pooled)

    integral = np.allclose(pooled, np.round(pooled))
    if len(distinct) == 1 or (integral and len(distinct) <= bins):
        cats = tuple(float(v) for v in distinct)
        ps = tuple(float(np.mean(s == v)) for v in distinct)
        pt = tuple(float(np.mean(t == v)) for v in distinct)
        return (
            Distribution(probs=ps, categories=cats),
            Distribution(probs=pt, categories=cats),
        )

    qs = np.linspace(0.0, 1.0, bins + 1)
    edges = np.unique(np.quantile(pooled, qs))
    if len(edges) < 2:
        edges = np.array([distinct[0] - 0.5, distinct[0] + 0.5])
    # Open outer edges so every value lands in a bin.
    edges[0] -= 1e-9
    edges[-1] += 1e-9
    hs, _ = np.histogram(s, bins=edges)
    ht, _ = np.histogram(t, bins=edges)
    return (
        Distribution(probs=tuple(hs / hs.sum()), bin_edges=tuple(edges)),
        Distribution(probs=tuple(ht / ht.sum()), bin_edges=tuple(edges)),
    )


def feature_distributions(
    split: Split, feature: str, bins: int = DEFAULT_BINS, **matrix_kwargs
) -> tuple[Distribution, Distribution]:
    """Source and target distributions of a named feature over a split."""
    matrix = build_matrix(split, **matrix_kwargs)
    names = [s.name for s in matrix.schema]
    if feature not in names:
        raise KeyError(f"unknown feature {feature!r}")
    col = matrix.X[:, names.index(feature)]
    return paired_distributions(col[matrix.labels == 0], col[matrix.labels == 1], bins=bins)


@dataclass
class DivergenceReport:
    dataset: str
    per_feature: dict[str, float] = field(default_factory=dict)
    feature_groups: dict[str, str] = field(default_factory=dict)
    per_group: dict[str, float] = field(default_factory=dict)
    bold: dict[str, bool] = field(default_factory=dict)  # per group, value >= 0.075
    bin_edges: dict[str, list[float]] = field(default_factory=dict)

    CSV_HEADER = "dataset," + ",".join(g.value for g in GROUP_ORDER)

    def csv_row(self) -> str:
        vals = []
        for g in GROUP_ORDER:
            vals.append(f"{self.per_group[g.value]:.4f}" if g.value in self.per_group else "NA")
        return self.dataset + "," + ",".join(vals)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dataset": self.dataset,
                "per_feature": self.per_feature,
                "feature_groups": self.feature_groups,
                "per_group": self.per_group,
                "bold": self.bold,
                "bold_threshold": BOLD_THRESHOLD,
                "bin_edges": self.bin_edges,
            },
            indent=2,
        )


def divergence_report(
    split: Split,
    groups=GROUP_ORDER,
    bins: int = DEFAULT_BINS,
    dataset: str = "",
    **matrix_kwargs,
) -> DivergenceReport:
    """Per-feature JS divergences with arithmetic-mean group aggregates.

    Bold flags mark group aggregates at or above the 0.075 threshold.
    """
    groups = [g for g in GROUP_ORDER if g in set(groups)]
    matrix = build_matrix(split, groups, **matrix_kwargs)
    src = matrix.labels == 0
    tgt = matrix.labels == 1

    report = DivergenceReport(dataset=dataset)
    by_group: dict[str, list[float]] = {g.value: [] for g in groups}
    for idx, spec in enumerate(matrix.schema):
        col = matrix.X[:, idx]
        p, q = paired_distributions(col[src], col[tgt], bins=bins)
        val = js_divergence(p, q)
        report.per_feature[spec.name] = val
        report.feature_groups[spec.name] = spec.group.value
        if p.bin_edges:
            report.bin_edges[spec.name] = list(p.bin_edges)
        by_group[spec.group.value].append(val)
    for g, vals in by_group.items():
        agg = float(np.mean(vals)) if vals else 0.0
        report.per_group[g] = agg
        report.bold[g] = agg >= BOLD_THRESHOLD
    return report
