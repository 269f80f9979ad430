"""Author-order indexes: first-author, contribution (middle) and seniority (last)."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .disambig import names_match
from .errors import MultipleSlotsMatch, NoPublishingResearchers
from .ingest import ProgramRoster, Publication

log = logging.getLogger(__name__)


class Position(Enum):
    SOLE = "sole"
    FIRST = "first"
    MIDDLE = "middle"
    LAST = "last"
    NOT_AN_AUTHOR = "not_an_author"


@dataclass(frozen=True)
class AuthorOrderIndexes:
    firstAuthorIndex: float = 0.0
    contributionIndex: float = 0.0
    seniorityIndex: float = 0.0
    # publications the triple was computed from; 0 means "did not publish"
    counted: int = 0

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.firstAuthorIndex, self.contributionIndex, self.seniorityIndex)


INDEX_FIELDS = ("firstAuthorIndex", "contributionIndex", "seniorityIndex")


def author_position(pub: Publication, researcher_name: str) -> Position:
    slots = [i for i, a in enumerate(pub.authors) if names_match(a, researcher_name)]
    if not slots:
        return Position.NOT_AN_AUTHOR
    if len(slots) > 1:
        raise MultipleSlotsMatch(
            f"{researcher_name!r} matches author slots {slots} of {pub.title!r}"
        )
    if len(pub.authors) == 1:
        return Position.SOLE
    if slots[0] == 0:
        return Position.FIRST
    if slots[0] == len(pub.authors) - 1:
        return Position.LAST
    return Position.MIDDLE


def researcher_indexes(pubs: Iterable[Publication], researcher_name: str) -> AuthorOrderIndexes:
    """Share of a researcher's publications where they are first (or sole),
    in the middle, or last.

    Publications where the name matches more than one author slot cannot be
    placed and are left out of the count.
    """
    counts = dict.fromkeys(Position, 0)
    for pub in pubs:
        try:
            counts[author_position(pub, researcher_name)] += 1
        except MultipleSlotsMatch as exc:
            log.warning("skipping publication: %s", exc)
    n = counts[Position.SOLE] + counts[Position.FIRST] + counts[Position.MIDDLE] + counts[Position.LAST]
    if n == 0:
        return AuthorOrderIndexes()
    return AuthorOrderIndexes(
        (counts[Position.FIRST] + counts[Position.SOLE]) / n,
        counts[Position.MIDDLE] / n,
        counts[Position.LAST] / n,
        n,
    )


def program_indexes(
    roster: ProgramRoster | None, per_researcher: Sequence[AuthorOrderIndexes]
) -> AuthorOrderIndexes:
    """Unweighted mean over researchers with at least one counted publication."""
    active = [ix for ix in per_researcher if ix.counted > 0]
    if not active:
        pid = roster.program_id if roster is not None else "?"
        raise NoPublishingResearchers(f"no researcher of program {pid} has a counted publication")
    n = len(active)
    return AuthorOrderIndexes(
        math.fsum(ix.firstAuthorIndex for ix in active) / n,
        math.fsum(ix.contributionIndex for ix in active) / n,
        math.fsum(ix.seniorityIndex for ix in active) / n,
        sum(ix.counted for ix in active),
    )
