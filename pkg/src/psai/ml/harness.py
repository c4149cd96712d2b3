"""Training and evaluation harness.

fit() wraps every classifier kind behind one contract: features are
standardized with training statistics stored in the model, zero-variance
columns are dropped (recorded, not fatal), and the fitted model is
deterministic given (spec.seed, training data). evaluate() runs stratified
k-fold cross-validation and pools the per-fold confusion matrices into
failure-class precision/recall/F.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domain import FeatureDataset, PsaiError, SingleClass
from ..rng import derive_seed, stream
from .boosting import AdaBoost
from .folds import stratified_kfold
from .forest import RandomForest
from .knn import KNearestNeighbors
from .metrics import ConfusionMatrix, confusion, f_measure, precision, recall
from .net import NeuralNet
from .spec import ClassifierSpec
from .standardize import Standardizer, fit_standardizer
from .svm import LinearSVM
from .tree import DecisionTree


class ArityMismatch(PsaiError):
    pass


class _ConstantModel:
    """Fallback when every feature column is degenerate: predict the majority."""

    def __init__(self, positive_rate: float):
        self.positive_rate = positive_rate

    def predict(self, X: np.ndarray) -> np.ndarray:
        label = 1 if self.positive_rate >= 0.5 else 0
        return np.full(np.asarray(X).shape[0], label, dtype=np.int64)


@dataclass(frozen=True)
class FittedModel:
    spec: ClassifierSpec
    standardizer: Standardizer
    inner: object
    feature_names: tuple[str, ...]

    @property
    def dropped_features(self) -> tuple[str, ...]:
        return self.standardizer.dropped_features


def fit(spec: ClassifierSpec, train: FeatureDataset) -> FittedModel:
    y = train.labels
    if spec.kind == "knn":
        if train.n_rows < 1:
            raise SingleClass("knn needs at least one training row")
    elif train.n_rows < 2 or len(np.unique(y)) < 2:
        raise SingleClass(f"{spec.kind} needs both classes in the training data")

    standardizer = fit_standardizer(train.rows, train.feature_names)
    X = standardizer.apply(train.rows)
    hp = spec.hyperparams

    inner: object
    if X.shape[1] == 0:
        inner = _ConstantModel(float(y.mean()))
    elif spec.kind == "decision_tree":
        inner = DecisionTree(max_depth=hp["max_depth"], min_leaf=hp["min_leaf"]).fit(X, y)
    elif spec.kind == "knn":
        inner = KNearestNeighbors(n_neighbors=hp["n_neighbors"]).fit(X, y)
    elif spec.kind == "linear_svm":
        rng = stream(spec.seed, "linear_svm")
        inner = LinearSVM(reg_lambda=hp["reg_lambda"], epochs=hp["epochs"]).fit(X, y, rng)
    elif spec.kind == "random_forest":
        inner = RandomForest(
            n_trees=hp["n_trees"],
            max_depth=hp["max_depth"],
            min_leaf=hp["min_leaf"],
            bootstrap=hp["bootstrap"],
            features_per_split=hp["features_per_split"],
            seed=derive_seed(spec.seed, "random_forest"),
        ).fit(X, y)
    elif spec.kind == "adaboost":
        inner = AdaBoost(rounds=hp["rounds"]).fit(X, y)
    elif spec.kind == "neural_net":
        rng = stream(spec.seed, "neural_net")
        inner = NeuralNet(
            hidden_units=hp["hidden_units"],
            learning_rate=hp["learning_rate"],
            epochs=hp["epochs"],
        ).fit(X, y, rng)
    else:  # unreachable: spec construction validates the kind
        raise AssertionError(spec.kind)

    return FittedModel(
        spec=spec, standardizer=standardizer, inner=inner, feature_names=train.feature_names
    )


def predict(model: FittedModel, rows: np.ndarray) -> np.ndarray:
    X = np.asarray(rows, dtype=float)
    if X.ndim != 2:
        X = X.reshape(0, len(model.feature_names)) if X.size == 0 else X.reshape(1, -1)
    if X.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    if X.shape[1] != len(model.feature_names):
        raise ArityMismatch(
            f"model expects {len(model.feature_names)} features, got {X.shape[1]}"
        )
    return model.inner.predict(model.standardizer.apply(X))


@dataclass(frozen=True)
class EvalReport:
    classifier: ClassifierSpec
    dataset_provenance: str
    k: int
    seed: int
    folds: tuple[ConfusionMatrix, ...]
    precision: float
    recall: float
    f_measure: float

    def pooled(self) -> ConfusionMatrix:
        total = ConfusionMatrix()
        for cm in self.folds:
            total = total + cm
        return total

    def to_json_dict(self) -> dict:
        return {
            "classifier": self.classifier.kind,
            "provenance": self.dataset_provenance,
            "k": self.k,
            "seed": self.seed,
            "folds": [cm.to_json_dict() for cm in self.folds],
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
        }


def evaluate(spec: ClassifierSpec, dataset: FeatureDataset, k: int, seed: int) -> EvalReport:
    """Stratified k-fold CV with pooled (micro) failure-class metrics."""
    folds = stratified_kfold(dataset.labels, k, seed)
    all_idx = np.arange(dataset.n_rows)

    matrices: list[ConfusionMatrix] = []
    for i, test_idx in enumerate(folds):
        train_mask = np.ones(dataset.n_rows, dtype=bool)
        train_mask[test_idx] = False
        train = dataset.take(all_idx[train_mask])
        test = dataset.take(test_idx)
        model = fit(spec.with_seed(derive_seed(spec.seed, "fold", i)), train)
        matrices.append(confusion(test.labels, predict(model, test.rows)))

    pooled = ConfusionMatrix()
    for cm in matrices:
        pooled = pooled + cm
    return EvalReport(
        classifier=spec,
        dataset_provenance=dataset.provenance,
        k=k,
        seed=seed,
        folds=tuple(matrices),
        precision=precision(pooled),
        recall=recall(pooled),
        f_measure=f_measure(pooled),
    )
