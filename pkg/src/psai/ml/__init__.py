"""Desk-scale classifiers, stratified cross-validation and F-measure reports."""

from .boosting import AdaBoost
from .folds import TooFewPerClass, stratified_kfold
from .forest import RandomForest
from .harness import ArityMismatch, EvalReport, FittedModel, evaluate, fit, predict
from .knn import KNearestNeighbors
from .metrics import ConfusionMatrix, confusion, f_measure, precision, recall
from .net import NeuralNet, net_gradients, net_loss
from .spec import (
    CLASSIFIER_KINDS,
    DEFAULT_HYPERPARAMS,
    ClassifierSpec,
    UnknownClassifier,
    UnknownHyperparameter,
    make_spec,
)
from .standardize import Standardizer, fit_standardizer
from .svm import LinearSVM
from .tree import DecisionTree

__all__ = [
    "AdaBoost",
    "ArityMismatch",
    "CLASSIFIER_KINDS",
    "ClassifierSpec",
    "ConfusionMatrix",
    "DEFAULT_HYPERPARAMS",
    "DecisionTree",
    "EvalReport",
    "FittedModel",
    "KNearestNeighbors",
    "LinearSVM",
    "NeuralNet",
    "RandomForest",
    "Standardizer",
    "TooFewPerClass",
    "UnknownClassifier",
    "UnknownHyperparameter",
    "confusion",
    "evaluate",
    "f_measure",
    "fit",
    "fit_standardizer",
    "make_spec",
    "net_gradients",
    "net_loss",
    "precision",
    "predict",
    "recall",
    "stratified_kfold",
]
