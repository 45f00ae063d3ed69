"""Shared fixture builders.

The hand-computed corpora here are tiny on purpose: every expected number in
the kernel tests can be recomputed with pencil and paper from these
definitions.
"""

from __future__ import annotations

import pytest

from litrec.corpus import Article, Corpus, SparseInteractionMatrix, UsageEvent


def make_article(
    article_id: str,
    refs: tuple[str, ...] = (),
    journal: str = "j-main",
    text: str | None = None,
    year: int = 2005,
) -> Article:
    return Article(
        id=article_id,
        title=f"Title of {article_id}",
        journal=journal,
        year=year,
        references=refs,
        full_text=text,
    )


@pytest.fixture
def pair_cited_corpus() -> Corpus:
    """Two citing articles over three cited ones.

    a cites {c, d}; b cites {c, d, e}. By hand: citers(c) = citers(d) =
    {a, b}, citers(e) = {b}, so sim(c,d) = 1.0 and sim(c,e) = sim(d,e)
    = 1/sqrt(2).
    """
    return Corpus(
        [
            make_article("a", refs=("c", "d")),
            make_article("b", refs=("c", "d", "e")),
            make_article("c"),
            make_article("d"),
            make_article("e"),
        ]
    )


@pytest.fixture
def pair_cited_with_seed() -> Corpus:
    """Same shape plus a seed article f citing only c.

    f's own citation row joins the matrix, so citers(c) = {a, b, f} and the
    scores seen from f's profile are sim(c,d) = 2/sqrt(6), sim(c,e) =
    1/sqrt(3).
    """
    return Corpus(
        [
            make_article("a", refs=("c", "d")),
            make_article("b", refs=("c", "d", "e")),
            make_article("c"),
            make_article("d"),
            make_article("e"),
            make_article("f", refs=("c",)),
        ]
    )


@pytest.fixture
def session_matrix_xyz() -> SparseInteractionMatrix:
    """Two sessions: s1 = {x, y}, s2 = {x, y, z}."""
    return SparseInteractionMatrix(
        row_ids=("s1", "s2"),
        col_ids=("x", "y", "z"),
        links=[("s1", "x"), ("s1", "y"), ("s2", "x"), ("s2", "y"), ("s2", "z")],
    )


@pytest.fixture
def clique_corpus() -> Corpus:
    """Ten articles, each citing the other nine."""
    ids = [f"q{i}" for i in range(10)]
    return Corpus(
        [
            make_article(aid, refs=tuple(other for other in ids if other != aid))
            for aid in ids
        ]
    )


def make_events(rows: list[tuple[str, str, int]]) -> list[UsageEvent]:
    return [UsageEvent(actor=a, article=b, timestamp=t) for a, b, t in rows]
