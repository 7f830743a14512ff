"""L1-regularized logistic regression and the feature-group ablation harness.

The solver is proximal gradient descent (ISTA) with backtracking line
search and an optional FISTA acceleration flag. The objective is

    (1/n) * sum_i log(1 + exp(-z_i * (w.x_i + b))) + lambda * ||w||_1

with the bias unpenalized. Soft-thresholding gives exact zeros, so with
lambda large enough the weight vector is exactly zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import ParallelDataset
from .errors import SchemaMismatch, SingleClass
from .features import (
    FeatureGroup,
    FeatureMatrix,
    GROUP_ORDER,
    ScalingParams,
    apply_scaler,
    build_bow_vocab,
    build_matrix,
    fit_scaler,
)

ABLATION_ROWS = ("FF",) + tuple(g.value for g in GROUP_ORDER)


@dataclass
class TrainConfig:
    lam: float = 1.0  # multiplied by 1/n at train time
    max_iter: int = 5000
    tol: float = 1e-6  # relative objective change
    seed: int = 0
    fista: bool = False

    def __post_init__(self):
        if self.lam <= 0 or self.tol <= 0:
            raise ValueError("lam and tol must be positive")


@dataclass
class LogRegModel:
    weights: np.ndarray
    bias: float
    lam: float
    schema_names: tuple[str, ...]
    scaling: ScalingParams | None = None
    converged: bool = True
    n_iter: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "weights": self.weights.tolist(),
                "bias": self.bias,
                "lambda": self.lam,
                "schema": list(self.schema_names),
                "scaling": None
                if self.scaling is None
                else {"mean": self.scaling.mean.tolist(), "std": self.scaling.std.tolist()},
                "converged": self.converged,
                "n_iter": self.n_iter,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "LogRegModel":
        d = json.loads(text)
        scaling = None
        if d["scaling"] is not None:
            scaling = ScalingParams(
                mean=np.asarray(d["scaling"]["mean"]), std=np.asarray(d["scaling"]["std"])
            )
        return cls(
            weights=np.asarray(d["weights"]),
            bias=d["bias"],
            lam=d["lambda"],
            schema_names=tuple(d["schema"]),
            scaling=scaling,
            converged=d["converged"],
            n_iter=d["n_iter"],
        )


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _log1pexp(z: np.ndarray) -> np.ndarray:
    # log(1 + exp(z)) without overflow
    return np.where(z > 30, z, np.log1p(np.exp(np.minimum(z, 30))))


def smooth_loss(X: np.ndarray, y: np.ndarray, w: np.ndarray, b: float) -> float:
    margins = X @ w + b
    signed = np.where(y == 1, -margins, margins)
    return float(np.mean(_log1pexp(signed)))


def smooth_grad(X, y, w, b):
    p = sigmoid(X @ w + b)
    r = p - y
    return (X.T @ r) / len(y), float(np.mean(r))


def objective(X, y, w, b, lam) -> float:
    return smooth_loss(X, y, w, b) + lam * float(np.abs(w).sum())


def soft_threshold(v: np.ndarray, t: float) -> np.ndarray:
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def lambda_max(X: np.ndarray, y: np.ndarray) -> float:
    """Smallest lambda at which the optimum has all-zero weights.

    Computed at the optimal intercept of the weight-free problem, which is
    the log-odds of the class prior.
    """
    pbar = float(np.mean(y))
    pbar = min(max(pbar, 1e-12), 1 - 1e-12)
    b_star = np.log(pbar / (1 - pbar))
    g, _ = smooth_grad(X, y, np.zeros(X.shape[1]), b_star)
    return float(np.abs(g).max())


def train(matrix: FeatureMatrix, config: TrainConfig | None = None) -> LogRegModel:
    """Fit by ISTA with backtracking; deterministic given config and data."""
    config = config or TrainConfig()
    X, y = matrix.X, matrix.labels.astype(float)
    classes = np.unique(matrix.labels)
    if len(classes) < 2:
        raise SingleClass(f"labels contain only class {classes.tolist()}")
    n, d = X.shape
    lam = config.lam / n

    w = np.zeros(d)
    b = 0.0
    step = 1.0
    obj = objective(X, y, w, b, lam)
    converged = False
    it = 0
    # FISTA momentum state
    v_w, v_b, t_k = w.copy(), b, 1.0
    for it in range(1, config.max_iter + 1):
        if config.fista:
            gw, gb = smooth_grad(X, y, v_w, v_b)
            base_w, base_b = v_w, v_b
            base_loss = smooth_loss(X, y, v_w, v_b)
        else:
            gw, gb = smooth_grad(X, y, w, b)
            base_w, base_b = w, b
            base_loss = smooth_loss(X, y, w, b)
        # Backtracking on the smooth part's quadratic upper bound.
        while True:
            w_new = soft_threshold(base_w - step * gw, step * lam)
            b_new = base_b - step * gb
            dw = w_new - base_w
            db = b_new - base_b
            quad = (
                base_loss
                + float(gw @ dw)
                + gb * db
                + (float(dw @ dw) + db * db) / (2 * step)
            )
            if smooth_loss(X, y, w_new, b_new) <= quad + 1e-12:
                break
            step *= 0.5
            if step < 1e-12:
                break
        if config.fista:
            t_next = (1 + np.sqrt(1 + 4 * t_k * t_k)) / 2
            v_w = w_new + ((t_k - 1) / t_next) * (w_new - w)
            v_b = b_new + ((t_k - 1) / t_next) * (b_new - b)
            t_k = t_next
        w, b = w_new, b_new
        new_obj = objective(X, y, w, b, lam)
        if abs(obj - new_obj) <= config.tol * max(abs(obj), 1.0):
            obj = new_obj
            converged = True
            break
        obj = new_obj
    return LogRegModel(
        weights=w,
        bias=b,
        lam=lam,
        schema_names=tuple(s.name for s in matrix.schema),
        converged=converged,
        n_iter=it,
    )


def predict(model: LogRegModel, x: np.ndarray) -> tuple[int, float]:
    """Class (ties at 0.5 go to class 1) and probability of class 1."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != len(model.weights):
        raise SchemaMismatch(
            f"vector has {x.shape[-1]} features, model expects {len(model.weights)}"
        )
    p = float(sigmoid(np.atleast_1d(x @ model.weights + model.bias))[0])
    return (1 if p >= 0.5 else 0), p


def accuracy(model: LogRegModel, matrix: FeatureMatrix) -> float:
    if matrix.X.shape[1] != len(model.weights):
        raise SchemaMismatch(
            f"matrix has {matrix.X.shape[1]} features, model expects {len(model.weights)}"
        )
    p = sigmoid(matrix.X @ model.weights + model.bias)
    pred = (p >= 0.5).astype(int)
    return float(np.mean(pred == matrix.labels))


@dataclass
class AblationResult:
    dataset: str
    cells: dict[str, float] = field(default_factory=dict)  # row label -> test accuracy
    errors: dict[str, str] = field(default_factory=dict)  # row label -> failure message

    CSV_HEADER = "dataset," + ",".join(ABLATION_ROWS)

    def csv_row(self) -> str:
        vals = []
        for row in ABLATION_ROWS:
            vals.append(f"{self.cells[row]:.4f}" if row in self.cells else "NA")
        return self.dataset + "," + ",".join(vals)


def _train_eval_cell(train_matrix, test_matrix, config) -> float:
    params = fit_scaler(train_matrix)
    model = train(apply_scaler(train_matrix, params), config)
    model.scaling = params
    return accuracy(model, apply_scaler(test_matrix, params))


def ablate(
    dataset: ParallelDataset,
    config: TrainConfig | None = None,
    groups=GROUP_ORDER,
    tagger=None,
    tagged_lookup=None,
    lexicon=None,
) -> AblationResult:
    """Full-feature plus per-group train/test accuracies (Table-4-shaped row).

    Per-cell training failures are recorded in `errors` rather than
    aborting the whole run.
    """
    if "train" not in dataset.splits or "test" not in dataset.splits:
        raise ValueError("ablation needs train and test splits")
    train_split = dataset.splits["train"]
    test_split = dataset.splits["test"]
    groups = [g for g in GROUP_ORDER if g in set(groups)]
    bow_vocab = build_bow_vocab(train_split) if FeatureGroup.BoW in groups else ()

    result = AblationResult(dataset=dataset.card.name)
    cells: list[tuple[str, list[FeatureGroup]]] = [("FF", groups)]
    cells += [(g.value, [g]) for g in groups]
    for label, cell_groups in cells:
        try:
            kw = dict(
                tagger=tagger, tagged_lookup=tagged_lookup, lexicon=lexicon, bow_vocab=bow_vocab
            )
            tm = build_matrix(train_split, cell_groups, **kw)
            sm = build_matrix(test_split, cell_groups, **kw)
            result.cells[label] = _train_eval_cell(tm, sm, config)
        except Exception as exc:  # record and continue with remaining cells
            result.errors[label] = f"{type(exc).__name__}: {exc}"
    return result
