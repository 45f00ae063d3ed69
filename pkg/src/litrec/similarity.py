"""Item-item cosine similarity over boolean interaction matrices.

This is the shared kernel of both recommendation engines. Items are matrix
columns; each item's profile is the set of actors (rows) linked to it. For
boolean profiles the cosine of two items reduces to

    |rows(i) & rows(j)| / sqrt(|rows(i)| * |rows(j)|)

which is what gets precomputed here, column pair by column pair, into a
neighborhood index. The computation is exact set arithmetic on purpose:
results must be reproducible bit for bit across platforms, and the matrices
involved are far too sparse for dense linear algebra to pay off.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .corpus import SparseInteractionMatrix
from .errors import ArtifactFormatError, UnknownSeedError

INDEX_FORMAT = "litrec-simidx"
INDEX_VERSION = 1


def cosine(matrix: SparseInteractionMatrix, item_a: str, item_b: str) -> float:
    """Cosine similarity of two items' boolean actor profiles.

    Items with empty profiles have similarity 0.0 to everything, including
    themselves; otherwise the self-similarity is exactly 1.0.
    """
    rows_a = matrix.rows_of(item_a)
    rows_b = matrix.rows_of(item_b)
    if not rows_a or not rows_b:
        return 0.0
    shared = len(rows_a & rows_b)
    if shared == 0:
        return 0.0
    return shared / math.sqrt(len(rows_a) * len(rows_b))


@dataclass(frozen=True)
class Neighbor:
    item: str
    similarity: float


class SimilarityIndex:
    """Precomputed per-item neighbor lists, ordered best-first.

    Neighbor lists hold only strictly positive similarities, sorted by
    descending similarity with ascending item id breaking ties, and truncated
    to ``k`` entries when a cap is set. ``k=None`` keeps every positive
    neighbor, which the evaluation protocol uses to stay exact.
    """

    def __init__(
        self,
        item_ids: tuple[str, ...],
        neighbors: dict[str, tuple[Neighbor, ...]],
        k: int | None,
        kind: str = "",
        fingerprint: str = "",
        params: dict | None = None,
    ):
        self._item_ids = item_ids
        self._item_set = frozenset(item_ids)
        self._neighbors = neighbors
        self._k = k
        self._kind = kind
        self._fingerprint = fingerprint
        self._params = dict(params) if params else {}

    @property
    def item_ids(self) -> tuple[str, ...]:
        return self._item_ids

    @property
    def k(self) -> int | None:
        return self._k

    @property
    def kind(self) -> str:
        """Which matrix the index was built from: 'citation' or 'usage'."""
        return self._kind

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    @property
    def params(self) -> dict:
        """Build parameters worth echoing into reports (window, noise floor)."""
        return dict(self._params)

    def __contains__(self, item: str) -> bool:
        return item in self._item_set

    def neighbors_of(self, item: str) -> tuple[Neighbor, ...]:
        if item not in self._item_set:
            raise UnknownSeedError(item)
        return self._neighbors.get(item, ())


def build_index(
    matrix: SparseInteractionMatrix,
    k: int | None = 50,
    min_count: int = 1,
    kind: str = "",
    fingerprint: str = "",
    params: dict | None = None,
) -> SimilarityIndex:
    """Compute every positive item pair similarity and keep the top k per item.

    Pairs are enumerated through shared rows, so the cost is quadratic in row
    degree rather than in the number of items. Pairs sharing fewer than
    ``min_count`` rows are dropped before ranking; the usage engine sets this
    above 1 to suppress chance co-downloads. Ties at the truncation boundary
    resolve by ascending item id, mirroring query-time ranking.
    """
    if k is not None and k < 1:
        raise ValueError("k must be a positive integer or None")
    if min_count < 1:
        raise ValueError("min_count must be a positive integer")
    overlap: dict[str, dict[str, int]] = {}
    for row in matrix.row_ids:
        cols = sorted(matrix.cols_of(row))
        for pos, item_a in enumerate(cols):
            bucket = overlap.setdefault(item_a, {})
            for item_b in cols[pos + 1 :]:
                bucket[item_b] = bucket.get(item_b, 0) + 1
    degree = {col: len(matrix.rows_of(col)) for col in matrix.col_ids}
    pairwise: dict[str, list[Neighbor]] = {col: [] for col in matrix.col_ids}
    for item_a, bucket in overlap.items():
        for item_b, shared in bucket.items():
            if shared < min_count:
                continue
            sim = shared / math.sqrt(degree[item_a] * degree[item_b])
            pairwise[item_a].append(Neighbor(item_b, sim))
            pairwise[item_b].append(Neighbor(item_a, sim))
    neighbors: dict[str, tuple[Neighbor, ...]] = {}
    for item, entries in pairwise.items():
        entries.sort(key=lambda n: (-n.similarity, n.item))
        if k is not None:
            entries = entries[:k]
        if entries:
            neighbors[item] = tuple(entries)
    return SimilarityIndex(tuple(matrix.col_ids), neighbors, k, kind, fingerprint, params)


def score_candidates(
    index: SimilarityIndex,
    profile: frozenset[str] | set[str],
    exclude: frozenset[str] | set[str],
) -> dict[str, float]:
    """Accumulate neighborhood similarity mass for every reachable candidate.

    Each profile item contributes its neighbor list; a candidate's score is
    the plain sum of similarities to the profile items that know it. Items in
    ``exclude`` never appear as candidates. Profile items absent from the
    index contribute nothing (they have no neighbors to offer).
    """
    scores: dict[str, float] = {}
    for item in sorted(profile):
        if item not in index:
            continue
        for neighbor in index.neighbors_of(item):
            if neighbor.item in exclude:
                continue
            scores[neighbor.item] = scores.get(neighbor.item, 0.0) + neighbor.similarity
    return scores


def rank_scores(scores: dict[str, float], n: int) -> list[tuple[str, float]]:
    """Top n candidates by descending score, ascending id on exact ties."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[:n]


def save_index(index: SimilarityIndex, path: str | Path) -> None:
    """Serialize to the versioned single-file artifact format.

    Header line is a JSON object; every following line is one item's
    neighbor list. Floats are written with repr round-tripping so a load
    reproduces the index exactly.
    """
    with open(path, "w", encoding="utf-8") as handle:
        _dump_index(index, handle)


def _dump_index(index: SimilarityIndex, handle: io.TextIOBase) -> None:
    header = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "k": index.k,
        "kind": index.kind,
        "fingerprint": index.fingerprint,
        "params": index.params,
        "n_items": len(index.item_ids),
    }
    handle.write(json.dumps(header, sort_keys=True, separators=(",", ":")))
    handle.write("\n")
    for item in index.item_ids:
        entries = index._neighbors.get(item, ())
        row = [item, [[n.item, n.similarity] for n in entries]]
        handle.write(json.dumps(row, sort_keys=True, separators=(",", ":")))
        handle.write("\n")


def load_index(path: str | Path) -> SimilarityIndex:
    """Load an index artifact, validating format and version."""
    with open(path, "r", encoding="utf-8") as handle:
        raw_header = handle.readline()
        try:
            header = json.loads(raw_header)
        except json.JSONDecodeError as exc:
            raise ArtifactFormatError(f"index header is not JSON: {exc.msg}") from exc
        if not isinstance(header, dict) or header.get("format") != INDEX_FORMAT:
            raise ArtifactFormatError("not a similarity index artifact")
        if header.get("version") != INDEX_VERSION:
            raise ArtifactFormatError(
                f"unsupported index version: {header.get('version')!r}"
            )
        k = header.get("k")
        if k is not None and (isinstance(k, bool) or not isinstance(k, int) or k < 1):
            raise ArtifactFormatError(f"invalid k in index header: {k!r}")
        kind = header.get("kind", "")
        if not isinstance(kind, str):
            raise ArtifactFormatError("invalid kind in index header")
        fingerprint = header.get("fingerprint", "")
        if not isinstance(fingerprint, str):
            raise ArtifactFormatError("invalid fingerprint in index header")
        params = header.get("params", {})
        if not isinstance(params, dict):
            raise ArtifactFormatError("invalid params in index header")
        item_ids: list[str] = []
        neighbors: dict[str, tuple[Neighbor, ...]] = {}
        for line_no, raw in enumerate(handle, start=2):
            if not raw.strip():
                continue
            try:
                row = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ArtifactFormatError(
                    f"index line {line_no} is not JSON: {exc.msg}"
                ) from exc
            if (
                not isinstance(row, list)
                or len(row) != 2
                or not isinstance(row[0], str)
                or not isinstance(row[1], list)
            ):
                raise ArtifactFormatError(f"malformed index line {line_no}")
            item, raw_entries = row
            entries: list[Neighbor] = []
            for entry in raw_entries:
                if (
                    not isinstance(entry, list)
                    or len(entry) != 2
                    or not isinstance(entry[0], str)
                    or not isinstance(entry[1], (int, float))
                    or isinstance(entry[1], bool)
                ):
                    raise ArtifactFormatError(f"malformed neighbor on line {line_no}")
                entries.append(Neighbor(entry[0], float(entry[1])))
            item_ids.append(item)
            if entries:
                neighbors[item] = tuple(entries)
        n_items = header.get("n_items")
        if n_items != len(item_ids):
            raise ArtifactFormatError(
                f"index truncated: header says {n_items} items, found {len(item_ids)}"
            )
    return SimilarityIndex(tuple(item_ids), neighbors, k, kind, fingerprint, params)
