"""Usage-based recommendation.

Sessionized download logs give a session-by-article boolean matrix; items
that keep showing up in the same sessions are neighbors. The query model is
deliberately minimal: the profile is the single seed article, and the answer
is its neighbor list. That matches the interaction this engine serves (one
article page asking "what else did readers of this download?") rather than
the citation engine's multi-item profile.
"""

from __future__ import annotations

from .citation import Recommendation
from .corpus import Corpus, SparseInteractionMatrix
from .errors import UnknownSeedError
from .similarity import SimilarityIndex, build_index

DEFAULT_K = 50
DEFAULT_MIN_COOCCURRENCE = 2
INDEX_KIND = "usage"


def build_usage_index(
    matrix: SparseInteractionMatrix,
    k: int | None = DEFAULT_K,
    min_cooccurrence: int = DEFAULT_MIN_COOCCURRENCE,
    fingerprint: str = "",
    params: dict | None = None,
) -> SimilarityIndex:
    """Index the session matrix.

    ``min_cooccurrence`` is the noise floor: item pairs sharing fewer
    sessions than this are dropped before ranking, because a single shared
    session in a modest log is usually chance, not affinity.
    """
    if min_cooccurrence < 1:
        raise ValueError("min_cooccurrence must be a positive integer")
    merged = {"min_cooccurrence": min_cooccurrence}
    if params:
        merged.update(params)
    return build_index(
        matrix,
        k=k,
        min_count=min_cooccurrence,
        kind=INDEX_KIND,
        fingerprint=fingerprint,
        params=merged,
    )


def recommend_by_usage(
    seed: str,
    n: int,
    index: SimilarityIndex,
    corpus: Corpus | None = None,
) -> list[Recommendation]:
    """The seed's co-download neighbors, best first, truncated to n.

    An id absent from the index is only an error when it is also absent from
    the corpus (when one is supplied): an article nobody has downloaded is a
    cold item and gets an empty list, not an exception.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if seed not in index:
        if corpus is not None and seed in corpus:
            return []
        raise UnknownSeedError(seed)
    neighbors = index.neighbors_of(seed)[:n]
    return [
        Recommendation(article=nb.item, score=nb.similarity, rank=pos)
        for pos, nb in enumerate(neighbors, start=1)
    ]
