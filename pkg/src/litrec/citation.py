"""Citation-based recommendation.

An article's reference list is read as its taste profile: the works it cites
are the items it "likes". Item-item cosine similarity over the citation
matrix then surfaces articles whose citer sets overlap with the citer sets of
the seed's references. No full text, metadata, or usage signal is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, SparseInteractionMatrix, build_citation_matrix
from .errors import UnknownSeedError
from .similarity import (
    SimilarityIndex,
    build_index,
    rank_scores,
    score_candidates,
)

DEFAULT_K = 50
INDEX_KIND = "citation"


@dataclass(frozen=True)
class Recommendation:
    """One ranked result. Ranks are 1-based and scores non-increasing by rank."""

    article: str
    score: float
    rank: int


def build_similarity_index(
    matrix: SparseInteractionMatrix,
    k: int | None = DEFAULT_K,
    fingerprint: str = "",
    params: dict | None = None,
) -> SimilarityIndex:
    """Index the citation matrix; ``k=None`` keeps all positive neighbors."""
    return build_index(
        matrix, k=k, min_count=1, kind=INDEX_KIND, fingerprint=fingerprint, params=params
    )


def build_citation_index(
    corpus: Corpus, k: int | None = DEFAULT_K, fingerprint: str = ""
) -> SimilarityIndex:
    """Convenience: citation matrix plus index in one step."""
    return build_similarity_index(build_citation_matrix(corpus), k=k, fingerprint=fingerprint)


def recommend_for_profile(
    profile: frozenset[str] | set[str],
    n: int,
    index: SimilarityIndex,
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[Recommendation]:
    """Rank candidates for an explicit item profile.

    A candidate's score is the sum of its similarities to the profile items;
    profile members and everything in ``exclude`` are barred from the result.
    The hold-out evaluation queries this directly with a reference list that
    has one item removed.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    barred = frozenset(profile) | frozenset(exclude)
    scores = score_candidates(index, profile, barred)
    ranked = rank_scores(scores, n)
    return [
        Recommendation(article=item, score=score, rank=pos)
        for pos, (item, score) in enumerate(ranked, start=1)
    ]


def recommend(
    seed: str, n: int, index: SimilarityIndex, corpus: Corpus
) -> list[Recommendation]:
    """Top-n articles for a seed article, scored through its reference list.

    Unknown seeds raise; a known seed with no references, or whose candidate
    pool scores zero, legitimately yields an empty list. Those empty results
    are a real phenomenon on sparse collections, not an error.
    """
    article = corpus.get(seed)
    if article is None:
        raise UnknownSeedError(seed)
    profile = frozenset(article.references)
    return recommend_for_profile(profile, n, index, exclude={seed})
