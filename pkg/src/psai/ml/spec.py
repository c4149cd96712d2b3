"""Classifier configuration: kinds, default hyperparameters, validation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from ..domain import PsaiError

CLASSIFIER_KINDS = (
    "decision_tree",
    "knn",
    "linear_svm",
    "random_forest",
    "adaboost",
    "neural_net",
)

# Desk-scale configurations: small, deterministic, testable.
DEFAULT_HYPERPARAMS: Mapping[str, Mapping[str, object]] = {
    "decision_tree": {"max_depth": 8, "min_leaf": 5},
    "knn": {"n_neighbors": 5},
    "linear_svm": {"reg_lambda": 1e-3, "epochs": 20},
    "random_forest": {
        "n_trees": 100,
        "max_depth": 8,
        "min_leaf": 5,
        "bootstrap": True,
        "features_per_split": "sqrt",
    },
    "adaboost": {"rounds": 50},
    "neural_net": {"hidden_units": 8, "learning_rate": 0.1, "epochs": 500},
}


class UnknownClassifier(PsaiError):
    pass


class UnknownHyperparameter(PsaiError):
    pass


@dataclass(frozen=True)
class ClassifierSpec:
    """A classifier kind plus its full hyperparameter set and a seed.

    Construction fills unspecified hyperparameters from the kind's
    defaults and rejects names the kind does not define.
    """

    kind: str
    hyperparams: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in CLASSIFIER_KINDS:
            raise UnknownClassifier(
                f"unknown classifier {self.kind!r}; valid kinds: {', '.join(CLASSIFIER_KINDS)}"
            )
        defaults = DEFAULT_HYPERPARAMS[self.kind]
        unknown = set(self.hyperparams) - set(defaults)
        if unknown:
            raise UnknownHyperparameter(
                f"{self.kind} does not define hyperparameter(s): {', '.join(sorted(unknown))}"
            )
        object.__setattr__(self, "hyperparams", {**defaults, **self.hyperparams})

    def with_seed(self, seed: int) -> "ClassifierSpec":
        return replace(self, seed=seed)

    def __getitem__(self, name: str) -> object:
        return self.hyperparams[name]


def make_spec(kind: str, seed: int = 0, **hyperparams: object) -> ClassifierSpec:
    return ClassifierSpec(kind=kind, hyperparams=dict(hyperparams), seed=seed)
