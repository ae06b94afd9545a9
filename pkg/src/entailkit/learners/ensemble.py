"""Majority voting over an ordered list of trained members."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import EntailmentLabel
from .base import LABEL_TO_CODE, LearnerError


@dataclass
class EnsembleModel:
    """Members vote once each; member order is the tie-break precedence."""

    members: list

    def __post_init__(self):
        if len(self.members) < 2:
            raise LearnerError("an ensemble needs at least 2 members")

    def predict(self, x) -> EntailmentLabel:
        return resolve_votes([m.predict(x) for m in self.members])

    def predict_batch(self, queries) -> list[EntailmentLabel]:
        per_member = [m.predict_batch(queries) for m in self.members]
        return [resolve_votes(list(votes)) for votes in zip(*per_member)]


def ensemble_predict(ensemble: EnsembleModel, x) -> EntailmentLabel:
    return ensemble.predict(x)


def resolve_votes(votes: list[EntailmentLabel]) -> EntailmentLabel:
    counts: dict[EntailmentLabel, int] = {}
    for vote in votes:
        counts[vote] = counts.get(vote, 0) + 1
    top = max(counts.values())
    tied = {label for label, count in counts.items() if count == top}
    if len(tied) == 1:
        return next(iter(tied))
    for vote in votes:  # earliest member whose pick is among the tied labels
        if vote in tied:
            return vote
    raise AssertionError("unreachable: tie without a voting member")
