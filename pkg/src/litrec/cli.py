"""Command line pipeline: ingest, build artifacts, query, evaluate, serve.

Exit codes: 0 success, 1 runtime error (bad data, missing artifacts),
2 usage error (bad flags). Progress chatter goes to stderr; only payloads
(`recommend`, `evaluate` JSON) go to stdout.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import citation as citation_mod
from . import usage as usage_mod
from .corpus import (
    ARTICLES_FILENAME,
    DEFAULT_SESSION_WINDOW,
    META_FILENAME,
    USAGE_FILENAME,
    build_citation_matrix,
    corpus_fingerprint,
    ingest_articles,
    load_corpus_dir,
    load_usage_events,
    sessionize,
    sparsity,
    write_articles_jsonl,
    write_usage_csv,
)
from .errors import LitrecError
from .evaluation import (
    leave_one_out,
    run_comparison,
    topn_to_dict,
    write_per_seed_csv,
    write_report_json,
)
from .figures import plot_topn_hits, render_comparison_figures
from .fixtures import FixtureConfig, generate_fixture
from .semantic import (
    VectorConfig,
    build_vector_store,
    export_similarity_matrix,
    save_vector_store,
    write_similarity_csv,
)
from .service import (
    ServicePaths,
    create_app,
    load_bundle,
    recommendation_payload,
)
from .similarity import save_index

CITATION_INDEX_FILENAME = "citation.simidx"
USAGE_INDEX_FILENAME = "usage.simidx"
VECTOR_STORE_FILENAME = "journals.vec"
SIMILARITY_CSV_FILENAME = "journal_similarity.csv"
SEEDS_FILENAME = "seeds.txt"

ENGINE_LABELS = ("citation", "usage")


def artifact_paths(artifacts_dir: str | Path) -> ServicePaths:
    root = Path(artifacts_dir)
    return ServicePaths(
        corpus_dir=root,
        citation_index=root / CITATION_INDEX_FILENAME,
        usage_index=root / USAGE_INDEX_FILENAME,
        vector_store=root / VECTOR_STORE_FILENAME,
    )


def _friendly(fn):
    # Map domain and IO failures to exit code 1 with a clean message;
    # click keeps exit code 2 for flag errors.
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (LitrecError, OSError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _info(message: str) -> None:
    click.echo(message, err=True)


def _read_seeds(seeds_path: str | None, corpus) -> list[str]:
    if seeds_path is None:
        return list(corpus.article_ids)
    lines = Path(seeds_path).read_text(encoding="utf-8").splitlines()
    seeds = [line.strip() for line in lines if line.strip()]
    if not seeds:
        raise click.ClickException(f"seed file {seeds_path} is empty")
    return seeds


def _dump_stdout(payload) -> None:
    # Match the service's wire encoding exactly so CLI output and HTTP
    # bodies can be compared byte for byte.
    click.echo(json.dumps(payload, ensure_ascii=False, separators=(",", ":")))


@click.group()
@click.version_option(package_name="litrec")
def main() -> None:
    """Dual-engine scholarly article recommender."""


@main.command()
@click.option("--articles", "articles_path", required=True, type=click.Path(exists=True, dir_okay=False), help="line-JSON article file")
@click.option("--usage", "usage_path", type=click.Path(exists=True, dir_okay=False), help="usage log CSV (actor,article,timestamp)")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="corpus directory to create")
@_friendly
def ingest(articles_path: str, usage_path: str | None, out_dir: str) -> None:
    """Validate raw data and write the canonical corpus directory."""
    corpus = ingest_articles(articles_path)
    events = load_usage_events(usage_path) if usage_path else []
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_articles_jsonl(corpus, out / ARTICLES_FILENAME)
    if usage_path:
        write_usage_csv(events, out / USAGE_FILENAME)
    meta = {
        "fingerprint": corpus_fingerprint(corpus, events),
        "n_articles": len(corpus),
        "n_journals": len(corpus.journals),
        "n_usage_events": len(events),
    }
    (out / META_FILENAME).write_text(
        json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    _info(
        f"ingested {len(corpus)} articles, {len(corpus.journals)} journals, "
        f"{len(events)} usage events -> {out}"
    )


@main.command("build-index")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--mode", required=True, type=click.Choice(["citation", "usage"]))
@click.option("--k", type=click.IntRange(min=0), default=50, show_default=True, help="neighbors kept per item; 0 keeps all")
@click.option("--window", type=click.IntRange(min=1), default=DEFAULT_SESSION_WINDOW, show_default=True, help="session inactivity gap, seconds (usage mode)")
@click.option("--min-cooccurrence", type=click.IntRange(min=1), default=usage_mod.DEFAULT_MIN_COOCCURRENCE, show_default=True, help="drop item pairs sharing fewer sessions (usage mode)")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="output .simidx path (default: inside the corpus dir)")
@_friendly
def build_index_cmd(
    corpus_dir: str,
    mode: str,
    k: int,
    window: int,
    min_cooccurrence: int,
    out_path: str | None,
) -> None:
    """Build a similarity index over the citation or the session matrix."""
    corpus, events, _meta = load_corpus_dir(corpus_dir)
    fingerprint = corpus_fingerprint(corpus, events)
    k_value = None if k == 0 else k
    if mode == "citation":
        matrix = build_citation_matrix(corpus)
        index = citation_mod.build_similarity_index(
            matrix, k=k_value, fingerprint=fingerprint
        )
        default_name = CITATION_INDEX_FILENAME
    else:
        if not events:
            raise click.ClickException(
                "corpus directory has no usage log; cannot build a usage index"
            )
        matrix = sessionize(events, window)
        index = usage_mod.build_usage_index(
            matrix,
            k=k_value,
            min_cooccurrence=min_cooccurrence,
            fingerprint=fingerprint,
            params={"window": window},
        )
        default_name = USAGE_INDEX_FILENAME
    out = Path(out_path) if out_path else Path(corpus_dir) / default_name
    save_index(index, out)
    _info(
        f"{mode} matrix: {matrix.n_rows} actors x {matrix.n_cols} items, "
        f"{matrix.n_links} links (sparsity {sparsity(matrix):.3e})"
    )
    _info(f"wrote {out}")


@main.command("build-map")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--dim", type=click.IntRange(min=2), default=VectorConfig().dimension, show_default=True, help="vector dimension d")
@click.option("--seeds", "seed_entries", type=click.IntRange(min=2), default=VectorConfig().seed_entries, show_default=True, help="non-zeros per term vector (even)")
@click.option("--rng-seed", type=int, default=VectorConfig().rng_seed, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="output directory (default: the corpus dir)")
@_friendly
def build_map(
    corpus_dir: str, dim: int, seed_entries: int, rng_seed: int, out_dir: str | None
) -> None:
    """Build journal vectors from full text and export the similarity matrix."""
    try:
        config = VectorConfig(dimension=dim, seed_entries=seed_entries, rng_seed=rng_seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    corpus, events, _meta = load_corpus_dir(corpus_dir)
    fingerprint = corpus_fingerprint(corpus, events)
    store = build_vector_store(corpus, config, fingerprint)
    out = Path(out_dir) if out_dir else Path(corpus_dir)
    out.mkdir(parents=True, exist_ok=True)
    store_path = out / VECTOR_STORE_FILENAME
    save_vector_store(store, store_path)
    matrix = export_similarity_matrix(store)
    csv_path = out / SIMILARITY_CSV_FILENAME
    write_similarity_csv(matrix, csv_path)
    empty = len(store.journal_ids) - len(store.non_empty_ids())
    _info(
        f"vectorized {len(store.journal_ids)} journals "
        f"({empty} without text) at d={dim}, s={seed_entries}"
    )
    _info(f"wrote {store_path} and {csv_path}")


@main.command()
@click.option("--artifacts", "artifacts_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--seed", required=True, help="seed article id")
@click.option("--engine", type=click.Choice(list(ENGINE_LABELS)), default="citation", show_default=True)
@click.option("--n", type=click.IntRange(min=1), default=10, show_default=True)
@_friendly
def recommend(artifacts_dir: str, seed: str, engine: str, n: int) -> None:
    """Print ranked recommendations for one seed as JSON."""
    bundle = load_bundle(artifact_paths(artifacts_dir))
    if engine == "citation":
        recs = citation_mod.recommend(seed, n, bundle.citation_index, bundle.corpus)
    else:
        recs = usage_mod.recommend_by_usage(seed, n, bundle.usage_index, bundle.corpus)
    _dump_stdout(recommendation_payload(bundle.corpus, bundle.store, seed, recs))


@main.command()
@click.option("--artifacts", "artifacts_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--protocol", required=True, type=click.Choice(["topn", "comparison"]))
@click.option("--seeds", "seeds_path", type=click.Path(exists=True, dir_okay=False), help="seed id file, one per line (default: every article)")
@click.option("--n", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--k", type=click.IntRange(min=0), default=0, show_default=True, help="neighborhood size for topn rebuilds; 0 keeps all")
@click.option("--rotate-all", is_flag=True, help="topn: test every reference of every seed, not just one")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="report", show_default=True)
@_friendly
def evaluate(
    artifacts_dir: str,
    protocol: str,
    seeds_path: str | None,
    n: int,
    k: int,
    rotate_all: bool,
    out_dir: str,
) -> None:
    """Run an evaluation protocol and write report files plus figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if protocol == "topn":
        corpus, _events, _meta = load_corpus_dir(artifacts_dir)
        seeds = _read_seeds(seeds_path, corpus)
        result = leave_one_out(
            corpus,
            seeds,
            n_max=max(n, 10),
            k=None if k == 0 else k,
            rotate_all=rotate_all,
        )
        payload = {
            "protocol": "topn",
            **topn_to_dict(result),
            "config": {
                "n_max": max(n, 10),
                "k": None if k == 0 else k,
                "rotate_all": rotate_all,
            },
        }
        report_path = out / "topn.json"
        with open(report_path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, indent=2)
            handle.write("\n")
        plot_topn_hits(result, out / "topn_hits.png")
        _dump_stdout(payload)
        _info(f"wrote {report_path} and {out / 'topn_hits.png'}")
        return
    bundle = load_bundle(artifact_paths(artifacts_dir))
    seeds = _read_seeds(seeds_path, bundle.corpus)

    def engine_a(seed: str, size: int):
        return citation_mod.recommend(seed, size, bundle.citation_index, bundle.corpus)

    def engine_b(seed: str, size: int):
        return usage_mod.recommend_by_usage(seed, size, bundle.usage_index, bundle.corpus)

    report = run_comparison(engine_a, engine_b, bundle.corpus, seeds, bundle.store, n)
    usage_params = bundle.usage_index.params
    config = {
        "n": n,
        "k_citation": bundle.citation_index.k,
        "k_usage": bundle.usage_index.k,
        "window": usage_params.get("window"),
        "min_cooccurrence": usage_params.get("min_cooccurrence"),
        "dimension": bundle.store.config.dimension,
        "seed_entries": bundle.store.config.seed_entries,
        "rng_seed": bundle.store.config.rng_seed,
        "engine_a": ENGINE_LABELS[0],
        "engine_b": ENGINE_LABELS[1],
    }
    write_report_json(report, out / "report.json", config)
    write_per_seed_csv(report, out / "per_seed.csv")
    figures = render_comparison_figures(report, out, labels=ENGINE_LABELS)
    _info(
        f"coverage: {ENGINE_LABELS[0]} {report.coverage_a:.1%}, "
        f"{ENGINE_LABELS[1]} {report.coverage_b:.1%}, union {report.union_coverage:.1%}"
    )
    _info(
        f"wrote {out / 'report.json'}, {out / 'per_seed.csv'}, "
        + ", ".join(str(p) for p in figures)
    )


@main.command("gen-fixture")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--topics", type=click.IntRange(min=1), default=FixtureConfig().topics, show_default=True)
@click.option("--journals-per-topic", type=click.IntRange(min=1), default=FixtureConfig().journals_per_topic, show_default=True)
@click.option("--articles", "n_articles", type=click.IntRange(min=2), default=FixtureConfig().n_articles, show_default=True)
@click.option("--rng-seed", type=int, default=FixtureConfig().rng_seed, show_default=True)
@_friendly
def gen_fixture(
    out_dir: str, topics: int, journals_per_topic: int, n_articles: int, rng_seed: int
) -> None:
    """Generate a synthetic corpus with planted topic structure."""
    try:
        config = FixtureConfig(
            topics=topics,
            journals_per_topic=journals_per_topic,
            n_articles=n_articles,
            rng_seed=rng_seed,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    corpus, events = generate_fixture(config)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_articles_jsonl(corpus, out / ARTICLES_FILENAME)
    write_usage_csv(events, out / USAGE_FILENAME)
    (out / SEEDS_FILENAME).write_text(
        "".join(f"{aid}\n" for aid in corpus.article_ids), encoding="utf-8"
    )
    _info(
        f"generated {len(corpus)} articles in {len(corpus.journals)} journals, "
        f"{len(events)} usage events -> {out}"
    )


@main.command()
@click.option("--artifacts", "artifacts_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=click.IntRange(min=1, max=65535), default=8000, show_default=True)
@click.option("--n", "default_n", type=click.IntRange(min=1), default=10, show_default=True, help="default result size")
@_friendly
def serve(artifacts_dir: str, host: str, port: int, default_n: int) -> None:
    """Serve the read-only HTTP API over pre-built artifacts."""
    import uvicorn

    bundle = load_bundle(artifact_paths(artifacts_dir))
    app = create_app(bundle=bundle, default_n=default_n)
    _info(f"serving corpus {bundle.fingerprint[:12]} on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
