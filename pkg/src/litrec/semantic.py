"""Journal-level semantic similarity from full text.

Every term gets a deterministic sparse ternary random-index vector; a journal
is the concatenation of its articles' full text, so its vector is the
frequency-weighted sum of its term vectors, L2-normalized. Cosine between two
journal vectors then approximates vocabulary overlap: near 1.0 for journals
writing about the same things, near 0.0 for disjoint vocabularies. The
comparison harness uses this as its diversity instrument, scoring how far a
recommendation's journal sits from the seed's journal.

Term vectors come from repeated hashing rather than a random number
generator, so a store rebuilt on any platform or interpreter version is
bit-identical.
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .errors import (
    ArtifactFormatError,
    NoJournalTextError,
    UnknownJournalError,
    UnknownSeedError,
)

DEFAULT_DIMENSION = 4096
DEFAULT_SEED_ENTRIES = 16
DEFAULT_RNG_SEED = 42

STORE_MAGIC = b"LRVS\x01"

# Function words excluded from full-text tokenization. Fixed list: changing
# it silently changes every journal vector, so treat edits as format changes.
STOPWORDS = frozenset(
    """
    the and that have for not with you this but his from they her she
    will one all would there their what out about who which when
    can like him into your some could them other
    than then now only its over also after how our any these most
    was were been has had did does doing are being because between both
    each few here more once such too very where why while during
    before again against above below down off under until upon those whom
    whose shall should might must may cannot among within without across
    however therefore thus although though since unless whether every
    another anything something nothing everything anyone someone everyone
    itself himself herself themselves yourself myself ourselves yours
    theirs ours hers own same
    """.split()
)


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, drop short and function words.

    Tokens shorter than 3 characters are discarded before the stopword check.
    """
    tokens: list[str] = []
    word: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            word.append(ch)
            continue
        if word:
            token = "".join(word)
            if len(token) >= 3 and token not in STOPWORDS:
                tokens.append(token)
            word = []
    if word:
        token = "".join(word)
        if len(token) >= 3 and token not in STOPWORDS:
            tokens.append(token)
    return tokens


@dataclass(frozen=True)
class VectorConfig:
    """Random-index geometry: dimension d, non-zeros per term s, and the seed."""

    dimension: int = DEFAULT_DIMENSION
    seed_entries: int = DEFAULT_SEED_ENTRIES
    rng_seed: int = DEFAULT_RNG_SEED

    def __post_init__(self) -> None:
        if self.seed_entries < 2 or self.seed_entries % 2 != 0:
            raise ValueError("seed_entries must be an even integer >= 2")
        if self.dimension < self.seed_entries:
            raise ValueError("dimension must be >= seed_entries")


def _term_positions(term: str, config: VectorConfig) -> list[int]:
    # Uniform distinct positions in [0, d) from a counter-mode hash stream.
    # Rejection below `limit` removes modulo bias; the stream is a pure
    # function of (term, seed, d, s).
    d = config.dimension
    positions: list[int] = []
    seen: set[int] = set()
    limit = (2**64 // d) * d
    counter = 0
    prefix = f"{config.rng_seed}|{d}|{config.seed_entries}|".encode("utf-8")
    term_bytes = term.encode("utf-8")
    while len(positions) < config.seed_entries:
        digest = hashlib.sha256(
            prefix + counter.to_bytes(8, "big") + b"|" + term_bytes
        ).digest()
        counter += 1
        for offset in range(0, 32, 8):
            value = int.from_bytes(digest[offset : offset + 8], "big")
            if value >= limit:
                continue
            position = value % d
            if position in seen:
                continue
            seen.add(position)
            positions.append(position)
            if len(positions) == config.seed_entries:
                break
    return positions


def term_vector(term: str, config: VectorConfig) -> np.ndarray:
    """Deterministic unit-norm ternary vector for one term.

    Exactly s/2 entries at +1/sqrt(s) and s/2 at -1/sqrt(s); all other
    entries zero. Distinct terms get nearly orthogonal vectors with high
    probability, which is the entire trick: no vocabulary-sized dense basis
    is ever materialized.
    """
    positions = _term_positions(term, config)
    magnitude = 1.0 / math.sqrt(config.seed_entries)
    vector = np.zeros(config.dimension, dtype=np.float64)
    half = config.seed_entries // 2
    for position in positions[:half]:
        vector[position] = magnitude
    for position in positions[half:]:
        vector[position] = -magnitude
    return vector


@dataclass(frozen=True)
class JournalVector:
    journal: str
    vector: np.ndarray
    article_count: int
    token_count: int

    @property
    def empty(self) -> bool:
        """True when the journal contributed no usable text."""
        return self.token_count == 0 or not np.any(self.vector)


class JournalVectorStore:
    """Finished per-journal vectors plus the config that produced them."""

    def __init__(
        self,
        config: VectorConfig,
        vectors: dict[str, JournalVector],
        fingerprint: str = "",
    ):
        self._config = config
        self._vectors = {j: vectors[j] for j in sorted(vectors)}
        self._fingerprint = fingerprint

    @property
    def config(self) -> VectorConfig:
        return self._config

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    @property
    def journal_ids(self) -> tuple[str, ...]:
        return tuple(self._vectors)

    def __contains__(self, journal: str) -> bool:
        return journal in self._vectors

    def get(self, journal: str) -> JournalVector:
        if journal not in self._vectors:
            raise UnknownJournalError(journal)
        return self._vectors[journal]

    def non_empty_ids(self) -> tuple[str, ...]:
        return tuple(j for j, v in self._vectors.items() if not v.empty)


def _aggregate(journal: str, articles, config: VectorConfig) -> JournalVector:
    counts: dict[str, int] = {}
    token_count = 0
    for article in articles:
        if article.full_text is None:
            continue
        for token in tokenize(article.full_text):
            counts[token] = counts.get(token, 0) + 1
            token_count += 1
    vector = np.zeros(config.dimension, dtype=np.float64)
    for term in sorted(counts):
        vector += counts[term] * term_vector(term, config)
    norm = float(np.linalg.norm(vector))
    if norm > 0.0:
        vector = vector / norm
    return JournalVector(
        journal=journal,
        vector=vector,
        article_count=len(articles),
        token_count=token_count,
    )


def journal_vector(
    journal: str, corpus: Corpus, config: VectorConfig
) -> JournalVector:
    """Aggregate one journal's full text into a unit vector.

    Concatenation semantics: every token occurrence contributes its term
    vector once, so term frequency is the implicit weighting. Token order
    never matters. Journals with no full text (or text that tokenizes to
    nothing) come back flagged empty.
    """
    if journal not in corpus.journals:
        raise UnknownJournalError(journal)
    return _aggregate(journal, corpus.in_journal(journal), config)


def build_vector_store(
    corpus: Corpus,
    config: VectorConfig = VectorConfig(),
    fingerprint: str = "",
) -> JournalVectorStore:
    grouped: dict[str, list] = {journal: [] for journal in corpus.journals}
    for article in corpus:
        grouped[article.journal].append(article)
    vectors = {
        journal: _aggregate(journal, articles, config)
        for journal, articles in grouped.items()
    }
    return JournalVectorStore(config, vectors, fingerprint)


def journal_similarity(a: str, b: str, store: JournalVectorStore) -> float:
    """Cosine between two journals' unit vectors, in [-1, 1].

    A journal without text raises: silently reporting 0.0 would read as
    "maximally diverse" and corrupt every statistic downstream.
    """
    vec_a = store.get(a)
    vec_b = store.get(b)
    if vec_a.empty:
        raise NoJournalTextError(a)
    if vec_b.empty:
        raise NoJournalTextError(b)
    if a == b:
        return 1.0
    return float(np.dot(vec_a.vector, vec_b.vector))


def seed_to_recommendation_similarity(
    seed: str, rec: str, corpus: Corpus, store: JournalVectorStore
) -> float:
    """Similarity between the journals of a seed article and a recommended one.

    Same journal is exactly 1.0 by definition, text or no text; distinct
    journals defer to the vector comparison and therefore require text on
    both sides.
    """
    seed_article = corpus.get(seed)
    if seed_article is None:
        raise UnknownSeedError(seed)
    rec_article = corpus.get(rec)
    if rec_article is None:
        raise UnknownSeedError(rec)
    if seed_article.journal == rec_article.journal:
        return 1.0
    return journal_similarity(seed_article.journal, rec_article.journal, store)


@dataclass(frozen=True)
class JournalSimilarityMatrix:
    journal_ids: tuple[str, ...]
    values: np.ndarray


def export_similarity_matrix(store: JournalVectorStore) -> JournalSimilarityMatrix:
    """Full pairwise matrix over the non-empty journals.

    Symmetric by construction (each off-diagonal cell computed once and
    mirrored) with an exact 1.0 diagonal.
    """
    ids = store.non_empty_ids()
    if not ids:
        raise NoJournalTextError("<all journals>")
    size = len(ids)
    values = np.eye(size, dtype=np.float64)
    for i in range(size):
        for j in range(i + 1, size):
            sim = journal_similarity(ids[i], ids[j], store)
            values[i, j] = sim
            values[j, i] = sim
    return JournalSimilarityMatrix(journal_ids=ids, values=values)


def write_similarity_csv(matrix: JournalSimilarityMatrix, path: str | Path) -> None:
    """CSV with journal ids as both header row and leading column."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("journal," + ",".join(matrix.journal_ids) + "\n")
        for i, journal in enumerate(matrix.journal_ids):
            cells = ",".join(repr(float(v)) for v in matrix.values[i])
            handle.write(f"{journal},{cells}\n")


def save_vector_store(store: JournalVectorStore, path: str | Path) -> None:
    """Versioned binary artifact: magic, JSON header, then fixed-width records."""
    header = {
        "dimension": store.config.dimension,
        "seed_entries": store.config.seed_entries,
        "rng_seed": store.config.rng_seed,
        "fingerprint": store.fingerprint,
        "n_journals": len(store.journal_ids),
    }
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(STORE_MAGIC)
        handle.write(struct.pack(">I", len(header_bytes)))
        handle.write(header_bytes)
        for journal in store.journal_ids:
            record = store.get(journal)
            id_bytes = journal.encode("utf-8")
            handle.write(struct.pack(">H", len(id_bytes)))
            handle.write(id_bytes)
            handle.write(struct.pack(">IQ", record.article_count, record.token_count))
            handle.write(record.vector.astype("<f8").tobytes())


def load_vector_store(path: str | Path) -> JournalVectorStore:
    with open(path, "rb") as handle:
        magic = handle.read(len(STORE_MAGIC))
        if magic != STORE_MAGIC:
            raise ArtifactFormatError("not a journal vector store artifact")
        (header_len,) = struct.unpack(">I", _read_exact(handle, 4))
        try:
            header = json.loads(_read_exact(handle, header_len).decode("utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ArtifactFormatError("vector store header is not JSON") from exc
        try:
            config = VectorConfig(
                dimension=header["dimension"],
                seed_entries=header["seed_entries"],
                rng_seed=header["rng_seed"],
            )
            fingerprint = header["fingerprint"]
            n_journals = header["n_journals"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactFormatError(f"invalid vector store header: {exc}") from exc
        if not isinstance(fingerprint, str):
            raise ArtifactFormatError("invalid fingerprint in vector store header")
        vectors: dict[str, JournalVector] = {}
        for _ in range(n_journals):
            (id_len,) = struct.unpack(">H", _read_exact(handle, 2))
            journal = _read_exact(handle, id_len).decode("utf-8")
            article_count, token_count = struct.unpack(">IQ", _read_exact(handle, 12))
            raw = _read_exact(handle, 8 * config.dimension)
            vector = np.frombuffer(raw, dtype="<f8").astype(np.float64)
            vectors[journal] = JournalVector(
                journal=journal,
                vector=vector,
                article_count=article_count,
                token_count=token_count,
            )
        if handle.read(1):
            raise ArtifactFormatError("trailing bytes after vector store records")
    return JournalVectorStore(config, vectors, fingerprint)


def _read_exact(handle, size: int) -> bytes:
    data = handle.read(size)
    if len(data) != size:
        raise ArtifactFormatError("vector store truncated")
    return data
