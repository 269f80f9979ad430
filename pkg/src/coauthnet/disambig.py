"""Author-name normalization and edit-distance matching.

Names coming from résumé exports are noisy: accents are dropped, case and
punctuation vary, and small typos creep in.  Two names are considered the
same person when their normalized forms are within Levenshtein distance 2.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MATCH_THRESHOLD = 2

_PUNCT = re.compile(r"[^\w\s]", re.UNICODE)
_SPACES = re.compile(r"\s+")


@lru_cache(maxsize=65536)
def normalize_name(name: str) -> str:
    """Lowercase, strip diacritics and punctuation, collapse whitespace.

    >>> normalize_name("O'Neil,  Ana")
    'oneil ana'
    """
    decomposed = unicodedata.normalize("NFKD", name)
    no_marks = "".join(c for c in decomposed if not unicodedata.combining(c))
    no_punct = _PUNCT.sub("", no_marks.lower()).replace("_", "")
    return _SPACES.sub(" ", no_punct).strip()


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character insertions, deletions and
    substitutions turning `a` into `b`."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        curr = [i]
        for j, cb in enumerate(b, 1):
            curr.append(min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = curr
    return prev[-1]


def within_distance(a: str, b: str, k: int) -> bool:
    """True iff ``levenshtein(a, b) <= k``.

    Only the diagonal band of width ``2k + 1`` is filled and the scan stops
    as soon as every cell in a row exceeds `k`.
    """
    if a == b:
        return True
    la, lb = len(a), len(b)
    if abs(la - lb) > k:
        return False
    if la == 0 or lb == 0:
        return max(la, lb) <= k
    big = k + 1
    prev = [j if j <= k else big for j in range(lb + 1)]
    for i in range(1, la + 1):
        lo = max(1, i - k)
        hi = min(lb, i + k)
        curr = [big] * (lb + 1)
        curr[0] = i if i <= k else big
        ca = a[i - 1]
        row_min = curr[0]
        for j in range(lo, hi + 1):
            v = prev[j - 1] + (ca != b[j - 1])
            if prev[j] + 1 < v:
                v = prev[j] + 1
            if curr[j - 1] + 1 < v:
                v = curr[j - 1] + 1
            if v > big:
                v = big
            curr[j] = v
            if v < row_min:
                row_min = v
        if row_min > k:
            return False
        prev = curr
    return prev[lb] <= k


@lru_cache(maxsize=1 << 18)
def _normalized_match(na: str, nb: str) -> bool:
    return within_distance(na, nb, MATCH_THRESHOLD)


def names_match(a: str, b: str) -> bool:
    """Whether two raw names refer to the same person under the distance-2 rule."""
    na, nb = normalize_name(a), normalize_name(b)
    if nb < na:
        na, nb = nb, na
    return _normalized_match(na, nb)


@dataclass(frozen=True)
class AuthorRef:
    """Resolution of one publication author string against a roster.

    `kind` is ``"internal"``, ``"external"`` or ``"ambiguous"``; `ids` holds
    the single matched id for internal refs and every candidate (at least
    two) for ambiguous ones.
    """

    kind: str
    ids: tuple[str, ...] = ()

    @classmethod
    def internal(cls, researcher_id: str) -> "AuthorRef":
        return cls("internal", (researcher_id,))

    @classmethod
    def external(cls) -> "AuthorRef":
        return cls("external")

    @classmethod
    def ambiguous(cls, ids: Iterable[str]) -> "AuthorRef":
        ids = tuple(ids)
        if len(ids) < 2:
            raise ValueError("an ambiguous reference needs at least two candidates")
        return cls("ambiguous", ids)

    @property
    def researcher_id(self) -> str | None:
        return self.ids[0] if self.kind == "internal" else None


def resolve_one(author: str, roster_names: Sequence[tuple[str, str]]) -> AuthorRef:
    norm = normalize_name(author)
    exact = [rid for rid, name in roster_names if normalize_name(name) == norm]
    if len(exact) == 1:
        return AuthorRef.internal(exact[0])
    candidates = [rid for rid, name in roster_names if names_match(author, name)]
    if not candidates:
        return AuthorRef.external()
    if len(candidates) == 1:
        return AuthorRef.internal(candidates[0])
    return AuthorRef.ambiguous(candidates)


def resolve_authors(
    author_strings: Sequence[str], roster_names: Sequence[tuple[str, str]]
) -> list[AuthorRef]:
    """Resolve each author string to a roster researcher.

    A unique match within the threshold gives an internal reference.  When
    several roster names match, a unique exact match (after normalization)
    wins; otherwise the author is reported as ambiguous.  Output order
    follows `author_strings`.
    """
    ids = [rid for rid, _ in roster_names]
    if len(set(ids)) != len(ids):
        raise ValueError("roster researcher ids must be distinct")
    return [resolve_one(a, roster_names) for a in author_strings]
