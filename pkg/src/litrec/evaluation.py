"""Offline evaluation: hold-out accuracy and the engine comparison protocol.

Accuracy for the citation engine is measured by hiding one reference from a
seed article and checking whether the engine re-surfaces it; there is no
ground-truth relevance data in this domain, so a recovered citation is the
available proxy. The two engines are then compared on axes that do not need
relevance labels at all: how many seeds each can serve, whether they serve
the same seeds with the same items, and how far afield (across journals)
their suggestions range.

Throughout this module, side A and side B are interchangeable engine slots;
callers conventionally put the citation engine on A and the usage engine on
B, but nothing here assumes it.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .citation import Recommendation, build_similarity_index, recommend_for_profile
from .corpus import Corpus, build_citation_matrix
from .errors import NoJournalTextError, UnknownSeedError, UniverseMismatchError
from .semantic import JournalVectorStore, seed_to_recommendation_similarity

TOP_N_LEVELS = (1, 5, 10)

Engine = Callable[[str, int], list[Recommendation]]

WINNER_A = "A"
WINNER_B = "B"
WINNER_TIE = "tie"
WINNER_ZERO_BOTH = "zero-both"
WINNER_INCOMPARABLE = "incomparable"

TIE_EPSILON = 1e-9


@dataclass(frozen=True)
class TopNResult:
    """Hold-out recovery counts. ``trials`` equals ``seeds_tested`` unless
    every reference is rotated through, in which case each removal is one
    trial."""

    seeds_tested: int
    trials: int
    hits_at: dict[int, int]
    skipped: int

    def hit_rate(self, n: int) -> float:
        if self.trials == 0:
            return 0.0
        return self.hits_at[n] / self.trials


def leave_one_out(
    corpus: Corpus,
    seeds: Sequence[str],
    n_max: int = 10,
    k: int | None = None,
    rotate_all: bool = False,
) -> TopNResult:
    """Hide one reference per seed and test whether the engine recovers it.

    For each seed with at least two references, the hidden reference is
    removed from the similarity data itself (not merely from the query
    profile: the seed's own citation row must not leak the answer) and the
    remaining references are used as the query. A seed with fewer than two
    references is skipped, since removal would leave nothing to query with.

    The hidden reference is the lexicographically smallest by default, which
    keeps runs reproducible; ``rotate_all`` tests every reference of every
    seed in turn and counts each removal as a separate trial. ``k=None``
    evaluates with untruncated neighbor lists.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seed list is empty")
    if n_max < max(TOP_N_LEVELS):
        raise ValueError(f"n_max must be at least {max(TOP_N_LEVELS)}")
    matrix = build_citation_matrix(corpus)
    hits = {n: 0 for n in TOP_N_LEVELS}
    seeds_tested = 0
    trials = 0
    skipped = 0
    for seed in seeds:
        article = corpus.get(seed)
        if article is None:
            raise UnknownSeedError(seed)
        refs = sorted(article.references)
        if len(refs) < 2:
            skipped += 1
            continue
        seeds_tested += 1
        removals = refs if rotate_all else refs[:1]
        for removed in removals:
            trials += 1
            masked = matrix.without_link(seed, removed)
            index = build_similarity_index(masked, k=k)
            profile = frozenset(refs) - {removed}
            assert removed not in profile
            recs = recommend_for_profile(profile, n_max, index, exclude={seed})
            rank = next((r.rank for r in recs if r.article == removed), None)
            if rank is None:
                continue
            for n in TOP_N_LEVELS:
                if rank <= n:
                    hits[n] += 1
    return TopNResult(
        seeds_tested=seeds_tested, trials=trials, hits_at=hits, skipped=skipped
    )


@dataclass(frozen=True)
class CoverageResult:
    ratio: float
    covered: frozenset[str]
    recommendations: dict[str, tuple[str, ...]]


def coverage(engine: Engine, seeds: Sequence[str], n: int = 10) -> CoverageResult:
    """Fraction of seeds for which the engine returns at least one item.

    Seeds the engine does not know are simply uncovered; coverage quantifies
    reach, so a not-found is the same observation as an empty answer.
    """
    covered: set[str] = set()
    recommendations: dict[str, tuple[str, ...]] = {}
    for seed in seeds:
        try:
            recs = engine(seed, n)
        except UnknownSeedError:
            recs = []
        recommendations[seed] = tuple(r.article for r in recs)
        if recs:
            covered.add(seed)
    ratio = len(covered) / len(seeds) if seeds else 0.0
    return CoverageResult(
        ratio=ratio, covered=frozenset(covered), recommendations=recommendations
    )


@dataclass(frozen=True)
class ComplementarityResult:
    joint_seeds: int
    union_coverage: float
    overlap_items: int


def complementarity(
    universe: Sequence[str],
    covered_a: frozenset[str],
    covered_b: frozenset[str],
    recs_a: dict[str, tuple[str, ...]],
    recs_b: dict[str, tuple[str, ...]],
) -> ComplementarityResult:
    """How much the two engines' reach and output coincide.

    ``overlap_items`` counts (seed, article) pairs recommended by both sides
    on jointly covered seeds: zero means the engines are perfectly
    complementary in what they suggest even where they overlap in reach.
    """
    universe_set = frozenset(universe)
    for name, covered in (("A", covered_a), ("B", covered_b)):
        if not covered <= universe_set:
            raise UniverseMismatchError(
                f"covered seeds of side {name} are not a subset of the universe"
            )
    joint = covered_a & covered_b
    union = covered_a | covered_b
    overlap_items = 0
    for seed in joint:
        overlap_items += len(set(recs_a.get(seed, ())) & set(recs_b.get(seed, ())))
    union_coverage = len(union) / len(universe_set) if universe_set else 0.0
    return ComplementarityResult(
        joint_seeds=len(joint),
        union_coverage=union_coverage,
        overlap_items=overlap_items,
    )


def side_mean_similarity(
    seed: str,
    rec_ids: Iterable[str],
    corpus: Corpus,
    store: JournalVectorStore,
) -> float | None:
    """Mean seed-journal-to-recommendation-journal similarity for one side.

    Recommendations whose journals cannot be compared (no text) are skipped;
    when nothing on the side can be scored the mean is None, marking the
    side incomparable rather than pretending a value.
    """
    values: list[float] = []
    for rec in rec_ids:
        try:
            values.append(seed_to_recommendation_similarity(seed, rec, corpus, store))
        except NoJournalTextError:
            continue
    if not values:
        return None
    return sum(values) / len(values)


@dataclass(frozen=True)
class DiversityOutcome:
    winner: str
    mean_a: float | None
    mean_b: float | None


def diversity_compare(
    seed: str,
    recs_a: Sequence[str],
    recs_b: Sequence[str],
    corpus: Corpus,
    store: JournalVectorStore,
) -> DiversityOutcome:
    """Which side's suggestions stray further from the seed's journal.

    Lower mean similarity wins (more diverse). Two degenerate outcomes are
    kept distinct from a win: ``zero-both`` when every suggestion on both
    sides comes from the seed's own journal, and ``incomparable`` when a
    side has no scorable suggestion at all.
    """
    if not recs_a or not recs_b:
        raise ValueError("diversity comparison requires recommendations on both sides")
    mean_a = side_mean_similarity(seed, recs_a, corpus, store)
    mean_b = side_mean_similarity(seed, recs_b, corpus, store)
    if mean_a is None or mean_b is None:
        return DiversityOutcome(WINNER_INCOMPARABLE, mean_a, mean_b)
    seed_journal = _journal_of(seed, corpus)
    if all(_journal_of(r, corpus) == seed_journal for r in recs_a) and all(
        _journal_of(r, corpus) == seed_journal for r in recs_b
    ):
        return DiversityOutcome(WINNER_ZERO_BOTH, mean_a, mean_b)
    if abs(mean_a - mean_b) <= TIE_EPSILON:
        return DiversityOutcome(WINNER_TIE, mean_a, mean_b)
    winner = WINNER_A if mean_a < mean_b else WINNER_B
    return DiversityOutcome(winner, mean_a, mean_b)


def _journal_of(article_id: str, corpus: Corpus) -> str | None:
    article = corpus.get(article_id)
    return article.journal if article is not None else None


@dataclass(frozen=True)
class SeedComparison:
    """One row of the per-seed detail: what each side returned for one seed."""

    seed: str
    covered_a: bool
    covered_b: bool
    n_a: int
    n_b: int
    mean_sim_a: float | None
    mean_sim_b: float | None
    winner: str


@dataclass(frozen=True)
class ComparisonReport:
    seeds_total: int
    covered_a: int
    covered_b: int
    coverage_a: float
    coverage_b: float
    recs_a_total: int
    recs_b_total: int
    joint_seeds: int
    union_coverage: float
    joint_ratio_union: float
    joint_ratio_sum: float
    overlap_items: int
    diversity_wins_a: int
    diversity_wins_b: int
    diversity_ties: int
    zero_diversity_both: int
    diversity_incomparable: int
    mean_seed_similarity_a: float | None
    mean_seed_similarity_b: float | None
    per_seed: tuple[SeedComparison, ...]


def run_comparison(
    engine_a: Engine,
    engine_b: Engine,
    corpus: Corpus,
    seeds: Sequence[str],
    store: JournalVectorStore,
    n: int = 10,
) -> ComparisonReport:
    """Full side-by-side evaluation over one seed list.

    Aggregates are all derivable from the per-seed rows; the mean seed
    similarity of a side is the unweighted mean of its per-seed means over
    the seeds it covers with scorable output (macro average), so the CSV and
    JSON views of a report can never disagree.
    """
    seeds = list(seeds)
    if len(set(seeds)) != len(seeds):
        raise ValueError("seed list contains duplicates")
    cov_a = coverage(engine_a, seeds, n)
    cov_b = coverage(engine_b, seeds, n)
    comp = complementarity(
        seeds, cov_a.covered, cov_b.covered, cov_a.recommendations, cov_b.recommendations
    )
    rows: list[SeedComparison] = []
    wins_a = wins_b = ties = zero_both = incomparable = 0
    means_a: list[float] = []
    means_b: list[float] = []
    for seed in seeds:
        recs_a = cov_a.recommendations[seed]
        recs_b = cov_b.recommendations[seed]
        winner = ""
        if recs_a and recs_b:
            outcome = diversity_compare(seed, recs_a, recs_b, corpus, store)
            winner = outcome.winner
            mean_a = outcome.mean_a
            mean_b = outcome.mean_b
            if winner == WINNER_A:
                wins_a += 1
            elif winner == WINNER_B:
                wins_b += 1
            elif winner == WINNER_TIE:
                ties += 1
            elif winner == WINNER_ZERO_BOTH:
                zero_both += 1
            else:
                incomparable += 1
        else:
            mean_a = (
                side_mean_similarity(seed, recs_a, corpus, store) if recs_a else None
            )
            mean_b = (
                side_mean_similarity(seed, recs_b, corpus, store) if recs_b else None
            )
        if mean_a is not None:
            means_a.append(mean_a)
        if mean_b is not None:
            means_b.append(mean_b)
        rows.append(
            SeedComparison(
                seed=seed,
                covered_a=seed in cov_a.covered,
                covered_b=seed in cov_b.covered,
                n_a=len(recs_a),
                n_b=len(recs_b),
                mean_sim_a=mean_a,
                mean_sim_b=mean_b,
                winner=winner,
            )
        )
    union_size = len(cov_a.covered | cov_b.covered)
    sum_size = len(cov_a.covered) + len(cov_b.covered)
    return ComparisonReport(
        seeds_total=len(seeds),
        covered_a=len(cov_a.covered),
        covered_b=len(cov_b.covered),
        coverage_a=cov_a.ratio,
        coverage_b=cov_b.ratio,
        recs_a_total=sum(len(r) for r in cov_a.recommendations.values()),
        recs_b_total=sum(len(r) for r in cov_b.recommendations.values()),
        joint_seeds=comp.joint_seeds,
        union_coverage=comp.union_coverage,
        joint_ratio_union=comp.joint_seeds / union_size if union_size else 0.0,
        joint_ratio_sum=comp.joint_seeds / sum_size if sum_size else 0.0,
        overlap_items=comp.overlap_items,
        diversity_wins_a=wins_a,
        diversity_wins_b=wins_b,
        diversity_ties=ties,
        zero_diversity_both=zero_both,
        diversity_incomparable=incomparable,
        mean_seed_similarity_a=sum(means_a) / len(means_a) if means_a else None,
        mean_seed_similarity_b=sum(means_b) / len(means_b) if means_b else None,
        per_seed=tuple(rows),
    )


def report_to_dict(report: ComparisonReport, config: dict | None = None) -> dict:
    """JSON-ready view of a report: aggregates plus the config echo."""
    payload: dict = {
        "seeds_total": report.seeds_total,
        "covered_a": report.covered_a,
        "covered_b": report.covered_b,
        "coverage_a": report.coverage_a,
        "coverage_b": report.coverage_b,
        "recs_a_total": report.recs_a_total,
        "recs_b_total": report.recs_b_total,
        "joint_seeds": report.joint_seeds,
        "union_coverage": report.union_coverage,
        "joint_ratio_union": report.joint_ratio_union,
        "joint_ratio_sum": report.joint_ratio_sum,
        "overlap_items": report.overlap_items,
        "diversity_wins_a": report.diversity_wins_a,
        "diversity_wins_b": report.diversity_wins_b,
        "diversity_ties": report.diversity_ties,
        "zero_diversity_both": report.zero_diversity_both,
        "diversity_incomparable": report.diversity_incomparable,
        "mean_seed_similarity_a": report.mean_seed_similarity_a,
        "mean_seed_similarity_b": report.mean_seed_similarity_b,
    }
    if config is not None:
        payload["config"] = dict(sorted(config.items()))
    return payload


def write_report_json(
    report: ComparisonReport, path: str | Path, config: dict | None = None
) -> None:
    payload = report_to_dict(report, config)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def write_per_seed_csv(report: ComparisonReport, path: str | Path) -> None:
    """Per-seed detail; empty cells mean "not computable", never 0.0."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["seed", "covered_a", "covered_b", "n_a", "n_b", "mean_sim_a", "mean_sim_b", "winner"]
        )
        for row in report.per_seed:
            writer.writerow(
                [
                    row.seed,
                    "true" if row.covered_a else "false",
                    "true" if row.covered_b else "false",
                    row.n_a,
                    row.n_b,
                    repr(row.mean_sim_a) if row.mean_sim_a is not None else "",
                    repr(row.mean_sim_b) if row.mean_sim_b is not None else "",
                    row.winner,
                ]
            )


def topn_to_dict(result: TopNResult) -> dict:
    return {
        "seeds_tested": result.seeds_tested,
        "trials": result.trials,
        "skipped": result.skipped,
        "hits_at": {str(n): result.hits_at[n] for n in TOP_N_LEVELS},
        "hit_rate_at": {str(n): result.hit_rate(n) for n in TOP_N_LEVELS},
    }
