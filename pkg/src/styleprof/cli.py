"""Command-line driver: ingestion, analysis, caching, report emission.

Subcommands: ingest, similarity, ablate, diverge, bleu, profile. Reports
are written as JSON plus per-table CSVs. All file writes are atomic
(write temp, then rename). Feature matrices are cached under
<out-dir>/cache keyed by a content hash of the corpus files, tag source,
lexicon, and tokenizer version.

The STYLEPROF_ASSETS environment variable names a directory searched for
tagger model and lexicon files.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .annotate import TaggerModel, default_model, load_conllu
from .bleu import corpus_bleu
from .classify import ABLATION_ROWS, TrainConfig, ablate
from .corpus import TOKENIZER_VERSION, Sentence, load_dataset, load_parallel
from .divergence import DEFAULT_BINS, divergence_report
from .errors import StyleprofError
from .features import (
    FeatureGroup,
    SentimentLexicon,
    build_matrix,
    load_matrix,
    save_matrix,
)
from .similarity import SimilarityReport, summarize


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class TagSource:
    """Either the built-in perceptron tagger or a pre-tagged CoNLL-U file."""

    spec: str  # "builtin" or "conllu:<path>"
    tagger: TaggerModel | None = None
    lookup: dict | None = None

    @classmethod
    def from_spec(cls, spec: str) -> "TagSource":
        if spec == "builtin":
            return cls(spec=spec, tagger=default_model())
        if spec.startswith("conllu:"):
            path = _resolve_asset(spec.split(":", 1)[1])
            lookup = {ts.sentence.raw: ts for ts in load_conllu(path)}
            return cls(spec=spec, lookup=lookup)
        raise StyleprofError(f"unknown tagger spec {spec!r}; use builtin or conllu:<path>")


def _resolve_asset(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    assets = os.environ.get("STYLEPROF_ASSETS")
    if assets and (Path(assets) / name).exists():
        return Path(assets) / name
    raise StyleprofError(f"cannot find asset {name!r}")


def parse_groups(arg: str | None) -> list[FeatureGroup]:
    if not arg:
        return list(FeatureGroup)
    out = []
    for name in arg.split(","):
        name = name.strip()
        try:
            out.append(FeatureGroup(name))
        except ValueError:
            valid = ",".join(g.value for g in FeatureGroup)
            raise StyleprofError(f"unknown feature group {name!r}; valid: {valid}")
    return out


def _cache_key(dataset, split_name, groups, tag_spec, bins=None) -> str:
    h = hashlib.sha256()
    h.update(f"tok-v{TOKENIZER_VERSION};tagger={tag_spec};bins={bins};".encode())
    h.update(",".join(g.value for g in groups).encode())
    for pair in dataset.splits[split_name].pairs:
        h.update(pair.source.raw.encode())
        h.update(b"\x00")
        h.update(pair.target.raw.encode())
        h.update(b"\x01")
    return h.hexdigest()[:16]


def cached_matrix(dataset, split_name, groups, tag_source, bow_vocab, cache_dir):
    """Feature matrix with an on-disk CSV cache; a hit is loaded verbatim."""
    key = _cache_key(dataset, split_name, groups, tag_source.spec)
    path = Path(cache_dir) / f"{dataset.card.name}.{split_name}.{key}.csv"
    if path.exists():
        matrix, _ = load_matrix(path)
        return matrix
    matrix = build_matrix(
        dataset.splits[split_name],
        groups,
        tagger=tag_source.tagger,
        tagged_lookup=tag_source.lookup,
        bow_vocab=bow_vocab,
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    save_matrix(matrix, path)
    return matrix


def cmd_ingest(args) -> int:
    dataset = load_dataset(args.config)
    card = dataset.card
    payload = {
        "name": card.name,
        "style_task": card.style_task,
        "source_class": card.source_class,
        "target_class": card.target_class,
        "domain": card.domain,
        "annotation": card.annotation,
        "sizes": card.sizes,
    }
    out = Path(args.out_dir) / f"{card.name}.card.json"
    atomic_write(out, json.dumps(payload, indent=2) + "\n")
    print(f"loaded {card.name}: " + ", ".join(f"{k}={v}" for k, v in card.sizes.items()))
    return 0


def cmd_similarity(args) -> int:
    dataset = load_dataset(args.config)
    report = summarize(dataset.splits["train"])
    out_dir = Path(args.out_dir)
    atomic_write(out_dir / "similarity.json", report.to_json() + "\n")
    atomic_write(
        out_dir / "similarity.csv",
        SimilarityReport.CSV_HEADER + "\n" + report.csv_row(dataset.card.name) + "\n",
    )
    print(report.csv_row(dataset.card.name))
    return 0


def _train_config(args) -> TrainConfig:
    return TrainConfig(lam=args.lam, seed=args.seed)


def cmd_ablate(args) -> int:
    dataset = load_dataset(args.config)
    tag_source = TagSource.from_spec(args.tagger)
    groups = parse_groups(args.groups)
    result = ablate(
        dataset,
        config=_train_config(args),
        groups=groups,
        tagger=tag_source.tagger,
        tagged_lookup=tag_source.lookup,
    )
    atomic_write(
        Path(args.out_dir) / "ablation.csv",
        result.CSV_HEADER + "\n" + result.csv_row() + "\n",
    )
    for row in ABLATION_ROWS:
        if row in result.cells:
            print(f"{row}: {result.cells[row]:.4f}")
        elif row in result.errors:
            print(f"{row}: FAILED ({result.errors[row]})")
    return 0


def cmd_diverge(args) -> int:
    dataset = load_dataset(args.config)
    tag_source = TagSource.from_spec(args.tagger)
    groups = parse_groups(args.groups)
    split = dataset.splits.get("test") or dataset.splits["train"]
    report = divergence_report(
        split,
        groups,
        bins=args.bins,
        dataset=dataset.card.name,
        tagger=tag_source.tagger,
        tagged_lookup=tag_source.lookup,
    )
    out_dir = Path(args.out_dir)
    atomic_write(out_dir / "divergence.csv", report.CSV_HEADER + "\n" + report.csv_row() + "\n")
    atomic_write(out_dir / "divergence.json", report.to_json() + "\n")
    print(report.csv_row())
    return 0


def cmd_bleu(args) -> int:
    hyp_lines = Path(args.hyp).read_text("utf-8").splitlines()
    ref_lines = Path(args.ref).read_text("utf-8").splitlines()
    score = corpus_bleu(
        [line.split() for line in hyp_lines], [line.split() for line in ref_lines]
    )
    print(score)
    return 0


def cmd_profile(args) -> int:
    dataset = load_dataset(args.config)
    tag_source = TagSource.from_spec(args.tagger)
    groups = parse_groups(args.groups)
    out_dir = Path(args.out_dir)
    cache_dir = out_dir / "cache"

    sim = summarize(dataset.splits["train"])
    atomic_write(
        out_dir / "similarity.csv",
        SimilarityReport.CSV_HEADER + "\n" + sim.csv_row(dataset.card.name) + "\n",
    )

    abl = ablate(
        dataset,
        config=_train_config(args),
        groups=groups,
        tagger=tag_source.tagger,
        tagged_lookup=tag_source.lookup,
    )
    atomic_write(out_dir / "ablation.csv", abl.CSV_HEADER + "\n" + abl.csv_row() + "\n")

    div_split = dataset.splits.get("test") or dataset.splits["train"]
    div = divergence_report(
        div_split,
        groups,
        bins=args.bins,
        dataset=dataset.card.name,
        tagger=tag_source.tagger,
        tagged_lookup=tag_source.lookup,
    )
    atomic_write(out_dir / "divergence.csv", div.CSV_HEADER + "\n" + div.csv_row() + "\n")

    # Warm the feature cache so repeated profiles skip extraction.
    for split_name in dataset.splits:
        cached_matrix(dataset, split_name, groups, tag_source, None, cache_dir)

    report = {
        "tool_version": __version__,
        "config": {
            "config_path": str(args.config),
            "tagger": args.tagger,
            "lambda": args.lam,
            "bins": args.bins,
            "groups": [g.value for g in groups],
            "seed": args.seed,
        },
        "card": {
            "name": dataset.card.name,
            "style_task": dataset.card.style_task,
            "source_class": dataset.card.source_class,
            "target_class": dataset.card.target_class,
            "domain": dataset.card.domain,
            "annotation": dataset.card.annotation,
            "sizes": dataset.card.sizes,
        },
        "similarity": json.loads(sim.to_json()),
        "ablation": {"cells": abl.cells, "errors": abl.errors},
        "divergence": json.loads(div.to_json()),
    }
    atomic_write(out_dir / "report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"profile written to {out_dir / 'report.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="styleprof", description="Profile parallel text style transfer datasets."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="dataset config file")
        p.add_argument("--out-dir", default="styleprof-out", help="output directory")

    def analysis_flags(p):
        p.add_argument("--tagger", default="builtin", help="builtin or conllu:<path>")
        p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                       help="L1 strength (scaled by 1/n)")
        p.add_argument("--bins", type=int, default=DEFAULT_BINS, help="histogram bins")
        p.add_argument("--groups", default=None, help="comma-separated feature groups")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("ingest", help="load a dataset and emit its card")
    common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("similarity", help="source/target similarity metrics (train split)")
    common(p)
    p.set_defaults(func=cmd_similarity)

    p = sub.add_parser("ablate", help="feature-group ablation accuracies (train -> test)")
    common(p)
    analysis_flags(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("diverge", help="per-feature JS divergence (test split)")
    common(p)
    analysis_flags(p)
    p.set_defaults(func=cmd_diverge)

    p = sub.add_parser("bleu", help="corpus BLEU of hypothesis vs reference file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("profile", help="run similarity + ablation + divergence")
    common(p)
    analysis_flags(p)
    p.set_defaults(func=cmd_profile)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StyleprofError as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}), file=sys.stderr)
        return 1
    except OSError as exc:
        print(json.dumps({"error": str(exc), "type": "IoError"}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
