import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coauthnet.errors import MultipleSlotsMatch, NoPublishingResearchers
from coauthnet.indexes import AuthorOrderIndexes, Position, author_position, program_indexes, researcher_indexes
from coauthnet.ingest import DEFAULT_PERIODS, Kind, Nature, Publication, filter_publications, load_resumes, parse_rosters

ME = "Ana Souza"


def paper(*authors):
    return Publication("t", 2010, Kind.EVENT, Nature.COMPLETE, tuple(authors))


def test_positions():
    assert author_position(paper(ME), ME) is Position.SOLE
    assert author_position(paper(ME, "B", "C"), ME) is Position.FIRST
    assert author_position(paper("B", "C", ME), ME) is Position.LAST
    assert author_position(paper("B", "Ana Sousa", "C"), ME) is Position.MIDDLE
    assert author_position(paper("Bruno Lima"), ME) is Position.NOT_AN_AUTHOR
    with pytest.raises(MultipleSlotsMatch):
        author_position(paper(ME, "Ana Sousa"), ME)


def test_researcher_examples():
    ix = researcher_indexes([paper(ME, "B", "C"), paper("B", ME)], ME)
    assert ix.as_tuple() == (0.5, 0.0, 0.5)
    assert researcher_indexes([paper(ME), paper(ME)], ME).as_tuple() == (1.0, 0.0, 0.0)
    assert researcher_indexes([paper("B", ME, "C")] * 3, ME).as_tuple() == (0.0, 1.0, 0.0)
    assert researcher_indexes([paper(ME, "B")], ME).contributionIndex == 0.0
    empty = researcher_indexes([paper("Bruno Lima")], ME)
    assert empty.as_tuple() == (0.0, 0.0, 0.0) and empty.counted == 0


def test_multi_slot_publication_skipped():
    ix = researcher_indexes([paper(ME, "Ana Sousa"), paper("B", ME)], ME)
    assert ix.counted == 1 and ix.seniorityIndex == 1.0


def test_program_examples():
    a = AuthorOrderIndexes(1.0, 0.0, 0.0, 2)
    b = AuthorOrderIndexes(0.0, 0.0, 1.0, 1)
    assert program_indexes(None, [a, b]).as_tuple() == (0.5, 0.0, 0.5)
    assert program_indexes(None, [a, AuthorOrderIndexes()]).as_tuple() == a.as_tuple()
    with pytest.raises(NoPublishingResearchers):
        program_indexes(None, [AuthorOrderIndexes()])


def test_mini_program_hand_computed(mini_dir):
    # see tests/data/mini_program/README.md for the enumeration
    (roster,) = parse_rosters((mini_dir / "roster.csv").read_bytes())
    period = DEFAULT_PERIODS[1]
    per = [
        researcher_indexes(filter_publications(r.publications, period), r.full_name)
        for r in load_resumes(mini_dir / "resumes")
    ]
    assert [ix.counted for ix in per] == [3, 2, 2, 0]
    got = program_indexes(roster, per)
    want = (Fraction(2, 9), Fraction(5, 18), Fraction(1, 2))
    for g, w in zip(got.as_tuple(), want):
        assert g == pytest.approx(float(w), abs=1e-15)


names = st.sampled_from(["Bruno Lima", "Carla Dias", "Davi Rocha", "Eva Prado", "Fabio Reis"])


@st.composite
def pub_sets(draw):
    out = []
    for _ in range(draw(st.integers(0, 12))):
        others = draw(st.lists(names, max_size=4))
        if draw(st.booleans()):
            others.insert(draw(st.integers(0, len(others))), ME)
        if others:
            out.append(paper(*others))
    return out


@given(pub_sets())
def test_triple_sums_to_one(pubs):
    ix = researcher_indexes(pubs, ME)
    assert all(0 <= x <= 1 for x in ix.as_tuple())
    if ix.counted:
        assert abs(math.fsum(ix.as_tuple()) - 1) <= 1e-12
    else:
        assert ix.as_tuple() == (0, 0, 0)


triples = st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=8)


@given(triples, st.randoms(use_true_random=False))
def test_program_sum_and_permutation(counts, rnd):
    per = [
        AuthorOrderIndexes(f / (f + m + l), m / (f + m + l), l / (f + m + l), f + m + l) if f + m + l else AuthorOrderIndexes()
        for f, m, l in counts
    ]
    if not any(ix.counted for ix in per):
        with pytest.raises(NoPublishingResearchers):
            program_indexes(None, per)
        return
    base = program_indexes(None, per)
    assert abs(math.fsum(base.as_tuple()) - 1) <= 1e-12
    shuffled = list(per)
    rnd.shuffle(shuffled)
    assert program_indexes(None, shuffled) == base
