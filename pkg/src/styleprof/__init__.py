"""styleprof: profiling toolkit for parallel text style transfer corpora."""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    DatasetCard,
    ParallelDataset,
    Sentence,
    SentencePair,
    Split,
    Token,
    load_dataset,
    load_parallel,
    tokenize,
)
from .similarity import (  # noqa: F401
    SimilarityReport,
    f1_overlap,
    jaccard,
    levenshtein,
    levenshtein_norm,
    summarize,
)
from .annotate import (  # noqa: F401
    PosTag,
    Span,
    TaggedSentence,
    TaggerModel,
    chunk,
    default_model,
    load_conllu,
    tag,
    train_tagger,
)
from .features import (  # noqa: F401
    FeatureGroup,
    FeatureMatrix,
    FeatureVector,
    ScalingParams,
    SentimentLexicon,
    apply_scaler,
    build_bow_vocab,
    build_matrix,
    fit_scaler,
)
from .classify import (  # noqa: F401
    AblationResult,
    LogRegModel,
    TrainConfig,
    ablate,
    accuracy,
    predict,
    train,
)
from .divergence import (  # noqa: F401
    Distribution,
    DivergenceReport,
    divergence_report,
    feature_distributions,
    js_divergence,
)
from .bleu import BleuScore, corpus_bleu  # noqa: F401
