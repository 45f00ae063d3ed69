"""Read-only HTTP facade over pre-built artifacts.

The service never builds or mutates anything: it loads a corpus, two
similarity indexes, and a journal vector store produced by the CLI, verifies
they all came from the same ingested data, and serves lookups. Every
response body is produced by the same payload builders the CLI uses, so a
answer fetched over HTTP is byte-for-byte the answer the library gives.

All errors use the envelope {"code": ..., "message": ...}.
"""

from __future__ import annotations

from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import citation as citation_mod
from . import usage as usage_mod
from .citation import Recommendation
from .corpus import Corpus, corpus_fingerprint, load_corpus_dir
from .errors import (
    NoJournalTextError,
    UnknownJournalError,
    UnknownSeedError,
    UniverseMismatchError,
)
from .evaluation import (
    WINNER_A,
    WINNER_B,
    diversity_compare,
    side_mean_similarity,
)
from .semantic import (
    JournalVectorStore,
    journal_similarity,
    load_vector_store,
    seed_to_recommendation_similarity,
)
from .similarity import SimilarityIndex, load_index

DEFAULT_N = 10
MAX_N = 100

ENGINE_CITATION = "citation"
ENGINE_USAGE = "usage"


@dataclass(frozen=True)
class ServicePaths:
    corpus_dir: Path
    citation_index: Path
    usage_index: Path
    vector_store: Path


@dataclass(frozen=True)
class ArtifactBundle:
    corpus: Corpus
    citation_index: SimilarityIndex
    usage_index: SimilarityIndex
    store: JournalVectorStore
    fingerprint: str


def load_bundle(paths: ServicePaths) -> ArtifactBundle:
    """Load all artifacts and refuse mismatched builds.

    Every artifact records the fingerprint of the corpus it was built from;
    serving an index over a different corpus would silently produce wrong
    titles and similarities, so the combination is rejected outright.
    """
    corpus, events, _meta = load_corpus_dir(paths.corpus_dir)
    fingerprint = corpus_fingerprint(corpus, events)
    cit_index = load_index(paths.citation_index)
    use_index = load_index(paths.usage_index)
    store = load_vector_store(paths.vector_store)
    for name, artifact_fp in (
        ("citation index", cit_index.fingerprint),
        ("usage index", use_index.fingerprint),
        ("vector store", store.fingerprint),
    ):
        if artifact_fp != fingerprint:
            raise UniverseMismatchError(
                f"{name} was built from a different corpus "
                f"({artifact_fp[:12]}... != {fingerprint[:12]}...)"
            )
    return ArtifactBundle(
        corpus=corpus,
        citation_index=cit_index,
        usage_index=use_index,
        store=store,
        fingerprint=fingerprint,
    )


def _similarity_or_none(
    corpus: Corpus, store: JournalVectorStore, seed: str, rec: str
) -> float | None:
    if corpus.get(rec) is None:
        return None
    try:
        return seed_to_recommendation_similarity(seed, rec, corpus, store)
    except NoJournalTextError:
        return None


def recommendation_payload(
    corpus: Corpus,
    store: JournalVectorStore,
    seed: str,
    recs: list[Recommendation],
) -> list[dict]:
    """The wire shape of one ranked list; shared by service and CLI."""
    payload: list[dict] = []
    for rec in recs:
        article = corpus.get(rec.article)
        payload.append(
            {
                "article": rec.article,
                "title": article.title if article else None,
                "journal": article.journal if article else None,
                "score": rec.score,
                "rank": rec.rank,
                "seed_journal_similarity": _similarity_or_none(
                    corpus, store, seed, rec.article
                ),
            }
        )
    return payload


def compare_payload(
    bundle: ArtifactBundle, seed: str, n: int
) -> dict:
    """Both engines' answers for one seed plus the diversity verdict.

    Winner is null unless both engines produced output; the A/B slots of the
    comparison map to citation/usage respectively.
    """
    corpus = bundle.corpus
    cit_recs = citation_mod.recommend(seed, n, bundle.citation_index, corpus)
    use_recs = usage_mod.recommend_by_usage(seed, n, bundle.usage_index, corpus)
    cit_ids = [r.article for r in cit_recs]
    use_ids = [r.article for r in use_recs]
    winner: str | None = None
    if cit_ids and use_ids:
        outcome = diversity_compare(seed, cit_ids, use_ids, corpus, bundle.store)
        winner = {WINNER_A: ENGINE_CITATION, WINNER_B: ENGINE_USAGE}.get(
            outcome.winner, outcome.winner
        )
        mean_cit: float | None = outcome.mean_a
        mean_use: float | None = outcome.mean_b
    else:
        mean_cit = (
            side_mean_similarity(seed, cit_ids, corpus, bundle.store)
            if cit_ids
            else None
        )
        mean_use = (
            side_mean_similarity(seed, use_ids, corpus, bundle.store)
            if use_ids
            else None
        )
    seed_article = corpus.get(seed)
    return {
        "seed": seed,
        "seed_title": seed_article.title if seed_article else None,
        "seed_journal": seed_article.journal if seed_article else None,
        "n": n,
        "citation": recommendation_payload(corpus, bundle.store, seed, cit_recs),
        "usage": recommendation_payload(corpus, bundle.store, seed, use_recs),
        "mean_similarity_citation": mean_cit,
        "mean_similarity_usage": mean_use,
        "winner": winner,
    }


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def _parse_n(raw: str | None, default_n: int) -> int | JSONResponse:
    if raw is None:
        return default_n
    try:
        n = int(raw)
    except ValueError:
        return _error(400, "bad_request", f"n must be an integer, got {raw!r}")
    if n < 1 or n > MAX_N:
        return _error(400, "bad_request", f"n must be between 1 and {MAX_N}")
    return n


def create_app(
    paths: ServicePaths | None = None,
    bundle: ArtifactBundle | None = None,
    default_n: int = DEFAULT_N,
) -> FastAPI:
    """Build the app. Artifacts load on startup when only paths are given;
    requests answered before loading completes get 503."""

    @asynccontextmanager
    async def lifespan(application: FastAPI):
        if application.state.bundle is None and application.state.paths is not None:
            application.state.bundle = load_bundle(application.state.paths)
        yield

    app = FastAPI(title="litrec", docs_url=None, redoc_url=None, lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    app.state.bundle = bundle
    app.state.paths = paths

    def current_bundle() -> ArtifactBundle | None:
        return app.state.bundle

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        return _error(exc.status_code, "http_error", str(exc.detail))

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception) -> JSONResponse:
        return _error(500, "internal_error", str(exc))

    @app.get("/healthz")
    def healthz() -> JSONResponse:
        b = current_bundle()
        if b is None:
            return _error(503, "loading", "artifacts not loaded yet")
        return JSONResponse(
            {
                "status": "ok",
                "fingerprint": b.fingerprint,
                "articles": len(b.corpus),
                "journals": len(b.corpus.journals),
                "citation_k": b.citation_index.k,
                "usage_k": b.usage_index.k,
            }
        )

    @app.get("/recommend")
    def recommend_endpoint(
        seed: str | None = None, engine: str | None = None, n: str | None = None
    ):
        b = current_bundle()
        if b is None:
            return _error(503, "loading", "artifacts not loaded yet")
        if not seed:
            return _error(400, "bad_request", "missing required parameter: seed")
        engine = engine or ENGINE_CITATION
        if engine not in (ENGINE_CITATION, ENGINE_USAGE):
            return _error(
                400, "bad_request", f"engine must be 'citation' or 'usage', got {engine!r}"
            )
        parsed = _parse_n(n, default_n)
        if isinstance(parsed, JSONResponse):
            return parsed
        try:
            if engine == ENGINE_CITATION:
                recs = citation_mod.recommend(seed, parsed, b.citation_index, b.corpus)
            else:
                recs = usage_mod.recommend_by_usage(seed, parsed, b.usage_index, b.corpus)
        except UnknownSeedError:
            return _error(404, "unknown_seed", f"unknown seed article: {seed!r}")
        return JSONResponse(recommendation_payload(b.corpus, b.store, seed, recs))

    @app.get("/compare")
    def compare_endpoint(seed: str | None = None, n: str | None = None):
        b = current_bundle()
        if b is None:
            return _error(503, "loading", "artifacts not loaded yet")
        if not seed:
            return _error(400, "bad_request", "missing required parameter: seed")
        parsed = _parse_n(n, default_n)
        if isinstance(parsed, JSONResponse):
            return parsed
        try:
            return JSONResponse(compare_payload(b, seed, parsed))
        except UnknownSeedError:
            return _error(404, "unknown_seed", f"unknown seed article: {seed!r}")

    @app.get("/journals/similarity")
    def journal_similarity_endpoint(a: str | None = None, b: str | None = None):
        bnd = current_bundle()
        if bnd is None:
            return _error(503, "loading", "artifacts not loaded yet")
        if not a or not b:
            return _error(400, "bad_request", "missing required parameters: a, b")
        try:
            value = journal_similarity(a, b, bnd.store)
        except UnknownJournalError as exc:
            return _error(404, "unknown_journal", str(exc))
        except NoJournalTextError as exc:
            return _error(422, "no_journal_text", str(exc))
        return JSONResponse({"a": a, "b": b, "similarity": value})

    return app
