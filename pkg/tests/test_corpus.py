"""Ingestion, matrices, sessionization, sparsity, canonical writers."""

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from litrec.corpus import (
    Corpus,
    SparseInteractionMatrix,
    UsageEvent,
    build_citation_matrix,
    convert_openurl_log,
    corpus_fingerprint,
    ingest_articles,
    load_usage_events,
    sessionize,
    sparsity,
    write_articles_jsonl,
    write_usage_csv,
)
from litrec.errors import IngestError

from conftest import make_article, make_events


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def record(article_id, refs=(), journal="j1", **extra):
    rec = {
        "id": article_id,
        "title": f"t {article_id}",
        "journal": journal,
        "year": 2010,
        "references": list(refs),
    }
    rec.update(extra)
    return json.dumps(rec)


class TestIngest:
    def test_loads_well_formed_records(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1"), record("x2", journal="j2"), record("x3")])
        corpus = ingest_articles(path)
        assert len(corpus) == 3
        assert corpus.journals == ("j1", "j2")
        assert "x2" in corpus
        assert corpus.get("x2").journal == "j2"

    def test_self_citation_rejected_with_line_number(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1"), record("x2", refs=["x2"])])
        with pytest.raises(IngestError, match="line 2"):
            ingest_articles(path)

    def test_dangling_reference_survives(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1", refs=["ghost"]), record("x2")])
        corpus = ingest_articles(path)
        assert corpus.get("x1").references == ("ghost",)

    def test_duplicate_id_rejected(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1"), record("x1")])
        with pytest.raises(IngestError, match="line 2"):
            ingest_articles(path)

    def test_duplicate_references_collapse_preserving_order(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1", refs=["b", "a", "b", "a"])])
        assert ingest_articles(path).get("x1").references == ("b", "a")

    def test_malformed_json_names_line(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, [record("x1"), "{not json"])
        with pytest.raises(IngestError, match="line 2"):
            ingest_articles(path)

    @pytest.mark.parametrize("missing", ["id", "title", "journal", "year", "references"])
    def test_missing_field_names_line(self, tmp_path, missing):
        rec = json.loads(record("x1"))
        del rec[missing]
        path = tmp_path / "articles.jsonl"
        write_lines(path, [json.dumps(rec)])
        with pytest.raises(IngestError, match="line 1"):
            ingest_articles(path)

    @pytest.mark.parametrize(
        "field,value",
        [
            ("id", ""),
            ("id", 7),
            ("journal", ""),
            ("year", "2010"),
            ("year", True),
            ("references", "c1"),
            ("references", [1]),
            ("references", [""]),
            ("full_text", 5),
            ("title", None),
        ],
    )
    def test_bad_field_types_rejected(self, tmp_path, field, value):
        rec = json.loads(record("x1"))
        rec[field] = value
        path = tmp_path / "articles.jsonl"
        write_lines(path, [json.dumps(rec)])
        with pytest.raises(IngestError):
            ingest_articles(path)

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        path.write_text(record("x1") + "\n\n" + record("x2") + "\n", encoding="utf-8")
        assert len(ingest_articles(path)) == 2

    def test_non_object_line_rejected(self, tmp_path):
        path = tmp_path / "articles.jsonl"
        write_lines(path, ["[1,2]"])
        with pytest.raises(IngestError, match="line 1"):
            ingest_articles(path)


class TestUsageLog:
    def test_round_trip(self, tmp_path):
        events = make_events(
            [("u2", "x1", 50), ("u1", "x2", 10), ("u1", "x1", 5)]
        )
        path = tmp_path / "usage.csv"
        write_usage_csv(events, path)
        loaded = load_usage_events(path)
        assert loaded == sorted(events, key=lambda e: (e.actor, e.timestamp, e.article))

    def test_header_required(self, tmp_path):
        path = tmp_path / "usage.csv"
        path.write_text("user,item,time\nu1,x1,5\n", encoding="utf-8")
        with pytest.raises(IngestError, match="line 1"):
            load_usage_events(path)

    @pytest.mark.parametrize("bad_ts", ["1.5", "-3", "soon", ""])
    def test_bad_timestamps_rejected(self, tmp_path, bad_ts):
        path = tmp_path / "usage.csv"
        path.write_text(f"actor,article,timestamp\nu1,x1,{bad_ts}\n", encoding="utf-8")
        with pytest.raises(IngestError, match="line 2"):
            load_usage_events(path)

    def test_wrong_column_count_rejected(self, tmp_path):
        path = tmp_path / "usage.csv"
        path.write_text("actor,article,timestamp\nu1,x1\n", encoding="utf-8")
        with pytest.raises(IngestError, match="line 2"):
            load_usage_events(path)

    def test_empty_ids_rejected(self, tmp_path):
        path = tmp_path / "usage.csv"
        path.write_text("actor,article,timestamp\n,x1,5\n", encoding="utf-8")
        with pytest.raises(IngestError, match="line 2"):
            load_usage_events(path)


class TestCitationMatrix:
    def test_two_citers_fixture(self, pair_cited_corpus):
        matrix = build_citation_matrix(pair_cited_corpus)
        assert set(matrix.row_ids) == {"a", "b"}
        assert set(matrix.col_ids) == {"c", "d", "e"}
        assert matrix.n_links == 5
        assert matrix.cols_of("a") == {"c", "d"}
        assert matrix.rows_of("e") == {"b"}

    def test_no_references_gives_empty_matrix(self):
        corpus = Corpus([make_article("x1"), make_article("x2")])
        matrix = build_citation_matrix(corpus)
        assert matrix.n_rows == 0 and matrix.n_cols == 0 and matrix.n_links == 0

    def test_single_citation_minimal_matrix(self):
        corpus = Corpus([make_article("x1", refs=("x2",)), make_article("x2")])
        matrix = build_citation_matrix(corpus)
        assert matrix.row_ids == ("x1",)
        assert matrix.col_ids == ("x2",)
        assert matrix.links == {("x1", "x2")}

    def test_link_count_equals_total_references(self, pair_cited_with_seed):
        matrix = build_citation_matrix(pair_cited_with_seed)
        expected = sum(len(a.references) for a in pair_cited_with_seed)
        assert matrix.n_links == expected


class TestMatrixValidation:
    def test_unknown_row_in_link(self):
        with pytest.raises(ValueError, match="unknown row"):
            SparseInteractionMatrix(("r1",), ("c1",), [("r2", "c1")])

    def test_unknown_col_in_link(self):
        with pytest.raises(ValueError, match="unknown col"):
            SparseInteractionMatrix(("r1",), ("c1",), [("r1", "c2")])

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError):
            SparseInteractionMatrix(("r1", "r1"), ("c1",), [])

    def test_without_link_masks_one_pair(self):
        matrix = SparseInteractionMatrix(
            ("r1", "r2"), ("c1", "c2"), [("r1", "c1"), ("r2", "c2")]
        )
        masked = matrix.without_link("r1", "c1")
        assert masked.links == {("r2", "c2")}
        assert masked.row_ids == matrix.row_ids
        assert masked.col_ids == matrix.col_ids
        assert matrix.links == {("r1", "c1"), ("r2", "c2")}


class TestSessionize:
    def test_gap_splits_sessions(self):
        events = make_events(
            [("u1", "x", 0), ("u1", "y", 100), ("u1", "z", 10000)]
        )
        matrix = sessionize(events, window=1800)
        assert matrix.row_ids == ("u1#1", "u1#2")
        assert matrix.cols_of("u1#1") == {"x", "y"}
        assert matrix.cols_of("u1#2") == {"z"}

    def test_empty_events(self):
        matrix = sessionize([], window=1800)
        assert matrix.n_rows == 0 and matrix.n_cols == 0

    def test_repeat_download_deduplicated(self):
        events = make_events([("u1", "x", 0), ("u1", "x", 60)])
        matrix = sessionize(events, window=1800)
        assert matrix.links == {("u1#1", "x")}

    def test_window_must_be_positive(self):
        with pytest.raises(ValueError):
            sessionize([], window=0)

    def test_boundary_gap_stays_in_session(self):
        events = make_events([("u1", "x", 0), ("u1", "y", 1800)])
        assert sessionize(events, window=1800).n_rows == 1

    def test_actors_never_share_sessions(self):
        events = make_events([("u1", "x", 0), ("u2", "y", 0)])
        matrix = sessionize(events, window=1800)
        assert matrix.row_ids == ("u1#1", "u2#1")

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["u1", "u2", "u3"]),
                st.sampled_from(["x1", "x2", "x3", "x4"]),
                st.integers(min_value=0, max_value=20000),
            ),
            max_size=30,
        ),
        st.randoms(),
    )
    @settings(max_examples=60, deadline=None)
    def test_permutation_invariance(self, rows, rng):
        events = make_events(rows)
        shuffled = list(events)
        rng.shuffle(shuffled)
        a = sessionize(events, window=1800)
        b = sessionize(shuffled, window=1800)
        assert a.row_ids == b.row_ids
        assert a.col_ids == b.col_ids
        assert a.links == b.links

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["u1", "u2"]),
                st.sampled_from(["x1", "x2", "x3"]),
                st.integers(min_value=0, max_value=50000),
            ),
            max_size=30,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_sessions_replay_within_window(self, rows):
        window = 1800
        events = make_events(rows)
        matrix = sessionize(events, window=window)
        # replay: events of one session, in time order, never gap more than
        # the window, and every event lands in exactly one session
        ordered = sorted(events, key=lambda e: (e.actor, e.timestamp, e.article))
        session_idx = 0
        prev = None
        for event in ordered:
            if prev is None or event.actor != prev.actor or event.timestamp - prev.timestamp > window:
                session_idx = 1 if (prev is None or event.actor != prev.actor) else session_idx + 1
            session_id = f"{event.actor}#{session_idx}"
            assert (session_id, event.article) in matrix.links
            prev = event


class TestSparsity:
    def test_half_full(self):
        links = [("r1", "c1"), ("r1", "c2"), ("r2", "c3"), ("r2", "c4"), ("r3", "c1"), ("r3", "c3")]
        matrix = SparseInteractionMatrix(("r1", "r2", "r3"), ("c1", "c2", "c3", "c4"), links)
        assert sparsity(matrix) == 0.5

    def test_full_matrix(self):
        matrix = SparseInteractionMatrix(
            ("r1", "r2"), ("c1", "c2"), [(r, c) for r in ("r1", "r2") for c in ("c1", "c2")]
        )
        assert sparsity(matrix) == 1.0

    def test_empty_dimensions(self):
        assert sparsity(SparseInteractionMatrix((), (), [])) == 0.0
        assert sparsity(SparseInteractionMatrix(("r1",), (), [])) == 0.0

    @given(
        st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=30)
    )
    @settings(max_examples=60, deadline=None)
    def test_identity_links_equals_product(self, cells):
        rows = tuple(f"r{i}" for i in range(6))
        cols = tuple(f"c{j}" for j in range(6))
        links = [(f"r{i}", f"c{j}") for i, j in cells]
        matrix = SparseInteractionMatrix(rows, cols, links)
        value = sparsity(matrix)
        assert 0.0 <= value <= 1.0
        assert value * matrix.n_rows * matrix.n_cols == pytest.approx(matrix.n_links)


class TestCanonicalForms:
    def test_articles_round_trip_and_fingerprint_stability(self, tmp_path):
        articles = [
            make_article("x2", refs=("x1",), text="beta gamma"),
            make_article("x1", journal="j9"),
        ]
        corpus = Corpus(articles)
        shuffled = Corpus(reversed(articles))
        path_a = tmp_path / "a.jsonl"
        path_b = tmp_path / "b.jsonl"
        write_articles_jsonl(corpus, path_a)
        write_articles_jsonl(shuffled, path_b)
        assert path_a.read_bytes() == path_b.read_bytes()
        reloaded = ingest_articles(path_a)
        assert corpus_fingerprint(reloaded) == corpus_fingerprint(corpus)
        assert reloaded.get("x2").full_text == "beta gamma"

    def test_full_text_omitted_when_absent(self, tmp_path):
        path = tmp_path / "a.jsonl"
        write_articles_jsonl(Corpus([make_article("x1")]), path)
        assert "full_text" not in path.read_text(encoding="utf-8")

    def test_fingerprint_covers_usage(self):
        corpus = Corpus([make_article("x1")])
        with_events = corpus_fingerprint(corpus, make_events([("u1", "x1", 5)]))
        without = corpus_fingerprint(corpus)
        assert with_events != without

    def test_fingerprint_ignores_event_order(self):
        corpus = Corpus([make_article("x1")])
        events = make_events([("u1", "x1", 5), ("u2", "x1", 3)])
        assert corpus_fingerprint(corpus, events) == corpus_fingerprint(
            corpus, list(reversed(events))
        )


def test_openurl_converter_is_a_documented_stub(tmp_path):
    log = tmp_path / "resolver.log"
    log.write_text("rft_id=x&user=u\n", encoding="utf-8")
    with pytest.raises(NotImplementedError):
        convert_openurl_log(log)
