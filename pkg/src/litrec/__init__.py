"""litrec: dual-engine scholarly article recommender.

Two item-based collaborative filtering engines over one corpus — citations
as boolean ratings, and sessionized download logs as co-occurrence data —
plus a random-indexing journal similarity map and an evaluation harness
that compares the engines on coverage, complementarity, and diversity.
"""

from .citation import Recommendation, build_similarity_index, recommend, recommend_for_profile
from .corpus import (
    Article,
    Corpus,
    SparseInteractionMatrix,
    UsageEvent,
    build_citation_matrix,
    corpus_fingerprint,
    ingest_articles,
    load_usage_events,
    sessionize,
    sparsity,
)
from .errors import (
    ArtifactFormatError,
    IngestError,
    LitrecError,
    NoJournalTextError,
    UniverseMismatchError,
    UnknownJournalError,
    UnknownSeedError,
)
from .evaluation import (
    ComparisonReport,
    TopNResult,
    complementarity,
    coverage,
    diversity_compare,
    leave_one_out,
    run_comparison,
)
from .semantic import (
    VectorConfig,
    build_vector_store,
    journal_similarity,
    journal_vector,
    seed_to_recommendation_similarity,
    term_vector,
    tokenize,
)
from .similarity import SimilarityIndex, build_index, cosine
from .usage import build_usage_index, recommend_by_usage

__version__ = "0.1.0"

__all__ = [
    "Article",
    "ArtifactFormatError",
    "ComparisonReport",
    "Corpus",
    "IngestError",
    "LitrecError",
    "NoJournalTextError",
    "Recommendation",
    "SimilarityIndex",
    "SparseInteractionMatrix",
    "TopNResult",
    "UniverseMismatchError",
    "UnknownJournalError",
    "UnknownSeedError",
    "UsageEvent",
    "VectorConfig",
    "build_citation_matrix",
    "build_index",
    "build_similarity_index",
    "build_usage_index",
    "build_vector_store",
    "complementarity",
    "corpus_fingerprint",
    "cosine",
    "coverage",
    "diversity_compare",
    "ingest_articles",
    "journal_similarity",
    "journal_vector",
    "leave_one_out",
    "load_usage_events",
    "recommend",
    "recommend_by_usage",
    "recommend_for_profile",
    "run_comparison",
    "seed_to_recommendation_similarity",
    "sessionize",
    "sparsity",
    "term_vector",
    "tokenize",
]
