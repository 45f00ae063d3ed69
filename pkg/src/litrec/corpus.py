"""Data model and ingestion for articles, journals, citation links, and usage events.

The corpus is the shared substrate for both recommendation engines: the
citation engine treats each article's reference list as a boolean taste
profile, and the usage engine mines co-downloads out of sessionized access
logs. Both views end up in the same sparse boolean actor-by-item matrix.
"""

from __future__ import annotations

import csv
import hashlib
import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import IngestError

ArticleId = str
JournalId = str
ActorId = str

DEFAULT_SESSION_WINDOW = 1800

ARTICLES_FILENAME = "articles.jsonl"
USAGE_FILENAME = "usage.csv"
META_FILENAME = "meta.json"


@dataclass(frozen=True)
class Article:
    """A bibliographic record.

    ``references`` holds the ids of the works this article cites. They are
    deduplicated at ingest and may point outside the corpus: collections with
    partial citation coverage are normal, and a dangling reference can still
    be recommended by id.
    """

    id: ArticleId
    title: str
    journal: JournalId
    year: int
    references: tuple[ArticleId, ...]
    full_text: str | None = None


@dataclass(frozen=True)
class UsageEvent:
    """One article download by one actor, at integer seconds since the epoch."""

    actor: ActorId
    article: ArticleId
    timestamp: int


class Corpus:
    """Immutable collection of articles plus the registry of their journals."""

    def __init__(self, articles: Iterable[Article]):
        by_id: dict[str, Article] = {}
        for article in articles:
            if article.id in by_id:
                raise IngestError(f"duplicate article id: {article.id!r}")
            by_id[article.id] = article
        self._articles = {aid: by_id[aid] for aid in sorted(by_id)}
        self._journals = tuple(sorted({a.journal for a in by_id.values()}))

    def __len__(self) -> int:
        return len(self._articles)

    def __contains__(self, article_id: str) -> bool:
        return article_id in self._articles

    def __iter__(self) -> Iterator[Article]:
        return iter(self._articles.values())

    def get(self, article_id: str) -> Article | None:
        return self._articles.get(article_id)

    @property
    def article_ids(self) -> tuple[ArticleId, ...]:
        return tuple(self._articles)

    @property
    def journals(self) -> tuple[JournalId, ...]:
        return self._journals

    def in_journal(self, journal: JournalId) -> tuple[Article, ...]:
        return tuple(a for a in self._articles.values() if a.journal == journal)


class SparseInteractionMatrix:
    """Boolean actor-by-item matrix stored as a set of (row, col) links.

    Rows are actors (citing articles, or download sessions), columns are
    articles. Links are unweighted: the engines work on boolean interactions
    only. Instances are immutable and safe to share across threads.
    """

    __slots__ = ("_row_ids", "_col_ids", "_links", "_by_row", "_by_col")

    def __init__(
        self,
        row_ids: Sequence[str],
        col_ids: Sequence[str],
        links: Iterable[tuple[str, str]],
    ):
        self._row_ids = tuple(row_ids)
        self._col_ids = tuple(col_ids)
        if len(set(self._row_ids)) != len(self._row_ids):
            raise ValueError("duplicate row ids")
        if len(set(self._col_ids)) != len(self._col_ids):
            raise ValueError("duplicate col ids")
        rows = set(self._row_ids)
        cols = set(self._col_ids)
        link_set = frozenset(links)
        by_row: dict[str, set[str]] = {}
        by_col: dict[str, set[str]] = {}
        for row, col in link_set:
            if row not in rows:
                raise ValueError(f"link references unknown row {row!r}")
            if col not in cols:
                raise ValueError(f"link references unknown col {col!r}")
            by_row.setdefault(row, set()).add(col)
            by_col.setdefault(col, set()).add(row)
        self._links = link_set
        self._by_row = {r: frozenset(c) for r, c in by_row.items()}
        self._by_col = {c: frozenset(r) for c, r in by_col.items()}

    @property
    def row_ids(self) -> tuple[str, ...]:
        return self._row_ids

    @property
    def col_ids(self) -> tuple[str, ...]:
        return self._col_ids

    @property
    def links(self) -> frozenset[tuple[str, str]]:
        return self._links

    @property
    def n_rows(self) -> int:
        return len(self._row_ids)

    @property
    def n_cols(self) -> int:
        return len(self._col_ids)

    @property
    def n_links(self) -> int:
        return len(self._links)

    def cols_of(self, row: str) -> frozenset[str]:
        """Items linked to one actor (empty set when the row has no links)."""
        return self._by_row.get(row, frozenset())

    def rows_of(self, col: str) -> frozenset[str]:
        """Actors linked to one item (empty set when the column has no links)."""
        return self._by_col.get(col, frozenset())

    def without_link(self, row: str, col: str) -> "SparseInteractionMatrix":
        """Copy of this matrix with a single link masked out.

        Used by the hold-one-reference-out protocol: the held-out citation
        must be invisible to similarity computation, not just to the query.
        """
        return SparseInteractionMatrix(
            self._row_ids, self._col_ids, self._links - {(row, col)}
        )


def ingest_articles(path: str | Path) -> Corpus:
    """Load a line-delimited JSON article file into a corpus.

    Each line is one object with fields ``id``, ``title``, ``journal``,
    ``year``, ``references`` and optional ``full_text``. Malformed lines,
    duplicate ids and self-citations are rejected with the line number;
    references to ids absent from the file are kept as dangling.
    """
    articles: list[Article] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise IngestError(f"invalid JSON ({exc.msg})", line=line_no) from exc
            article = _parse_article(obj, line_no)
            if article.id in seen:
                raise IngestError(
                    f"duplicate article id: {article.id!r}", line=line_no
                )
            seen.add(article.id)
            articles.append(article)
    return Corpus(articles)


def _parse_article(obj: object, line_no: int) -> Article:
    if not isinstance(obj, dict):
        raise IngestError("record is not a JSON object", line=line_no)
    for field_name in ("id", "title", "journal", "year", "references"):
        if field_name not in obj:
            raise IngestError(f"missing field {field_name!r}", line=line_no)
    article_id = obj["id"]
    if not isinstance(article_id, str) or not article_id:
        raise IngestError("'id' must be a non-empty string", line=line_no)
    title = obj["title"]
    if not isinstance(title, str):
        raise IngestError("'title' must be a string", line=line_no)
    journal = obj["journal"]
    if not isinstance(journal, str) or not journal:
        raise IngestError("'journal' must be a non-empty string", line=line_no)
    year = obj["year"]
    if isinstance(year, bool) or not isinstance(year, int):
        raise IngestError("'year' must be an integer", line=line_no)
    raw_refs = obj["references"]
    if not isinstance(raw_refs, list) or not all(
        isinstance(r, str) and r for r in raw_refs
    ):
        raise IngestError(
            "'references' must be an array of non-empty strings", line=line_no
        )
    references: list[str] = []
    for ref in raw_refs:
        if ref == article_id:
            raise IngestError(
                f"article {article_id!r} cites itself", line=line_no
            )
        if ref not in references:
            references.append(ref)
    full_text = obj.get("full_text")
    if full_text is not None and not isinstance(full_text, str):
        raise IngestError("'full_text' must be a string or null", line=line_no)
    return Article(
        id=article_id,
        title=title,
        journal=journal,
        year=year,
        references=tuple(references),
        full_text=full_text,
    )


def load_usage_events(path: str | Path) -> list[UsageEvent]:
    """Load the canonical usage log: CSV with header ``actor,article,timestamp``.

    Timestamps must be non-negative integer seconds; sub-second precision is
    rejected so fixtures stay bit-exact.
    """
    events: list[UsageEvent] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["actor", "article", "timestamp"]:
            raise IngestError(
                "usage log must start with header 'actor,article,timestamp'", line=1
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise IngestError(f"expected 3 columns, got {len(row)}", line=line_no)
            actor, article, raw_ts = (cell.strip() for cell in row)
            if not actor or not article:
                raise IngestError("empty actor or article id", line=line_no)
            try:
                timestamp = int(raw_ts)
            except ValueError as exc:
                raise IngestError(
                    f"timestamp must be integer seconds, got {raw_ts!r}", line=line_no
                ) from exc
            if timestamp < 0:
                raise IngestError("timestamp must be non-negative", line=line_no)
            events.append(UsageEvent(actor=actor, article=article, timestamp=timestamp))
    return events


def build_citation_matrix(corpus: Corpus) -> SparseInteractionMatrix:
    """Citation matrix: each citing article is a row, each cited article a column.

    Rows are the articles with at least one reference; columns are every id
    that appears as a reference target, whether or not it has a record of its
    own.
    """
    rows = [a.id for a in corpus if a.references]
    cols = sorted({ref for a in corpus for ref in a.references})
    links = {(a.id, ref) for a in corpus for ref in a.references}
    return SparseInteractionMatrix(rows, cols, links)


def sessionize(
    events: Iterable[UsageEvent], window: int = DEFAULT_SESSION_WINDOW
) -> SparseInteractionMatrix:
    """Group usage events into per-actor sessions and return the session matrix.

    A session is a maximal run of one actor's events in which consecutive
    events are at most ``window`` seconds apart. Rows are sessions (ids of the
    form ``actor#n``), columns are the downloaded articles, and repeat
    downloads within a session collapse to a single link. The result is
    invariant under permutation of the input: events are sorted by
    (actor, timestamp, article) before splitting.
    """
    if window <= 0:
        raise ValueError("session window must be positive")
    ordered = sorted(events, key=lambda e: (e.actor, e.timestamp, e.article))
    row_ids: list[str] = []
    links: set[tuple[str, str]] = set()
    session_id: str | None = None
    session_count = 0
    prev_actor: str | None = None
    prev_ts = 0
    for event in ordered:
        new_actor = event.actor != prev_actor
        if new_actor or event.timestamp - prev_ts > window:
            session_count = 1 if new_actor else session_count + 1
            session_id = f"{event.actor}#{session_count}"
            row_ids.append(session_id)
        assert session_id is not None
        links.add((session_id, event.article))
        prev_actor = event.actor
        prev_ts = event.timestamp
    col_ids = sorted({e.article for e in ordered})
    return SparseInteractionMatrix(row_ids, col_ids, links)


def sparsity(matrix: SparseInteractionMatrix) -> float:
    """Fraction of possible actor-item links that are present, in [0, 1].

    Useful for judging whether a collection has enough interaction signal
    for collaborative filtering at all. A matrix with zero rows or zero
    columns reports 0.0.
    """
    cells = matrix.n_rows * matrix.n_cols
    if cells == 0:
        return 0.0
    return matrix.n_links / cells


def convert_openurl_log(path: str | Path) -> list[UsageEvent]:
    """Placeholder for ingesting raw OpenURL link-resolver logs.

    Resolver logs are vendor-specific key-value request dumps. The mapping to
    the canonical CSV is: the requesting user or IP hash becomes ``actor``,
    the resolved target identifier (DOI or article id) becomes ``article``,
    and the request time becomes ``timestamp`` (integer seconds). Only the
    canonical CSV format is supported; convert logs externally.
    """
    raise NotImplementedError(
        "raw OpenURL logs are not supported; convert to the canonical "
        "'actor,article,timestamp' CSV first"
    )


def write_articles_jsonl(corpus: Corpus, path: str | Path) -> None:
    """Write the canonical line-JSON form: sorted by id, stable key order."""
    with open(path, "w", encoding="utf-8") as handle:
        for article in corpus:
            handle.write(article_record_line(article))
            handle.write("\n")


def article_record_line(article: Article) -> str:
    record: dict[str, object] = {
        "id": article.id,
        "title": article.title,
        "journal": article.journal,
        "year": article.year,
        "references": list(article.references),
    }
    if article.full_text is not None:
        record["full_text"] = article.full_text
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def write_usage_csv(events: Iterable[UsageEvent], path: str | Path) -> None:
    """Write the canonical usage CSV, sorted by (actor, timestamp, article)."""
    ordered = sorted(events, key=lambda e: (e.actor, e.timestamp, e.article))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["actor", "article", "timestamp"])
        for event in ordered:
            writer.writerow([event.actor, event.article, event.timestamp])


def corpus_fingerprint(corpus: Corpus, events: Iterable[UsageEvent] = ()) -> str:
    """Content hash shared by every artifact built from one ingested corpus.

    Computed over the canonical serializations, so it is stable across
    re-ingestion of the same data regardless of input ordering.
    """
    digest = hashlib.sha256()
    for article in corpus:
        digest.update(article_record_line(article).encode("utf-8"))
        digest.update(b"\n")
    digest.update(b"\x00")
    for event in sorted(events, key=lambda e: (e.actor, e.timestamp, e.article)):
        digest.update(f"{event.actor},{event.article},{event.timestamp}\n".encode("utf-8"))
    return digest.hexdigest()


def load_corpus_dir(path: str | Path) -> tuple[Corpus, list[UsageEvent], dict]:
    """Load a directory produced by the ingest command.

    Returns the corpus, the usage events (empty when no log was ingested)
    and the metadata record.
    """
    root = Path(path)
    articles_path = root / ARTICLES_FILENAME
    if not articles_path.exists():
        raise IngestError(f"not a corpus directory (missing {ARTICLES_FILENAME}): {root}")
    corpus = ingest_articles(articles_path)
    usage_path = root / USAGE_FILENAME
    events = load_usage_events(usage_path) if usage_path.exists() else []
    meta_path = root / META_FILENAME
    meta: dict = {}
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    return corpus, events, meta
