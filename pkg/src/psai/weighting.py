"""Exponential course-difficulty weights.

A course's weight is ``beta * exp(-alpha * mean_mark)``: strictly
decreasing in the course's average mark, so courses that grade low weigh
high. The two parameters are solved from a pair of anchor points, by
default (mean 1.15 -> weight 2.0) for an extremely hard course and
(mean 4.15 -> weight 0.5) for an extremely easy one, which makes the
hardest anchor four times the weight of the easiest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .domain import MARK_MAX, MARK_MIN, MarkOutOfRange, PsaiError


class DegenerateAnchors(PsaiError):
    pass


@dataclass(frozen=True, slots=True)
class AnchorPoint:
    """A (mean mark, weight) boundary condition for the fit."""

    mean_mark: float
    weight: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean_mark) or not (MARK_MIN <= self.mean_mark <= MARK_MAX):
            raise MarkOutOfRange(f"anchor mean mark {self.mean_mark!r} outside the grade scale")
        if not math.isfinite(self.weight) or self.weight <= 0:
            raise DegenerateAnchors(f"anchor weight must be positive, got {self.weight!r}")


DEFAULT_HARD_ANCHOR = AnchorPoint(mean_mark=1.15, weight=2.0)
DEFAULT_EASY_ANCHOR = AnchorPoint(mean_mark=4.15, weight=0.5)


@dataclass(frozen=True, slots=True)
class WeightParams:
    """Fitted (alpha, beta) plus the anchors that produced them."""

    alpha: float
    beta: float
    easy_anchor: AnchorPoint
    hard_anchor: AnchorPoint

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DegenerateAnchors(f"alpha must be positive, got {self.alpha!r}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise DegenerateAnchors(f"beta must be positive, got {self.beta!r}")
        for anchor in (self.easy_anchor, self.hard_anchor):
            reproduced = self.beta * math.exp(-self.alpha * anchor.mean_mark)
            if abs(reproduced - anchor.weight) > 1e-12 * anchor.weight:
                raise DegenerateAnchors(
                    f"params do not reproduce anchor {anchor}: got {reproduced!r}"
                )


def fit_weight_params(
    hard: AnchorPoint = DEFAULT_HARD_ANCHOR,
    easy: AnchorPoint = DEFAULT_EASY_ANCHOR,
) -> WeightParams:
    """Solve beta*exp(-alpha*m) through both anchors.

    Dividing the two anchor equations gives
    ``alpha = ln(w_hard / w_easy) / (m_easy - m_hard)``; substituting back
    gives ``beta = w_hard * exp(alpha * m_hard)``.
    """
    if hard.mean_mark >= easy.mean_mark:
        raise DegenerateAnchors(
            f"hard anchor mean ({hard.mean_mark}) must lie below easy anchor mean "
            f"({easy.mean_mark})"
        )
    if hard.weight <= easy.weight:
        raise DegenerateAnchors(
            f"hard anchor weight ({hard.weight}) must exceed easy anchor weight "
            f"({easy.weight})"
        )
    alpha = math.log(hard.weight / easy.weight) / (easy.mean_mark - hard.mean_mark)
    beta = hard.weight * math.exp(alpha * hard.mean_mark)
    return WeightParams(alpha=alpha, beta=beta, easy_anchor=easy, hard_anchor=hard)


def default_weight_params() -> WeightParams:
    return fit_weight_params(DEFAULT_HARD_ANCHOR, DEFAULT_EASY_ANCHOR)


def course_weight(params: WeightParams, mean_mark: float) -> float:
    """Evaluate the weight at a course's mean mark.

    Means outside the grade scale signal upstream corruption and are
    rejected rather than extrapolated.
    """
    if not math.isfinite(mean_mark) or not (MARK_MIN <= mean_mark <= MARK_MAX):
        raise MarkOutOfRange(f"mean mark {mean_mark!r} outside [{MARK_MIN}, {MARK_MAX}]")
    return params.beta * math.exp(-params.alpha * mean_mark)


def parse_anchor(text: str) -> AnchorPoint:
    """Parse a CLI anchor flag of the form MARK:WEIGHT, e.g. '1.15:2.0'."""
    parts = text.split(":")
    if len(parts) != 2:
        raise DegenerateAnchors(f"anchor {text!r} is not of the form MARK:WEIGHT")
    try:
        mean_mark, weight = float(parts[0]), float(parts[1])
    except ValueError:
        raise DegenerateAnchors(f"anchor {text!r} has non-numeric parts") from None
    return AnchorPoint(mean_mark=mean_mark, weight=weight)
