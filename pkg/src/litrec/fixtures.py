"""Synthetic corpus generator for evaluation and demos.

Real article collections with aligned citation, usage, and full-text data are
proprietary, so the comparison harness ships with a generator that plants the
structure the harness is supposed to detect. Articles split into topics with
mostly disjoint vocabularies. Citations cross topic lines fairly often;
download sessions almost never do. A correct pipeline therefore measures the
citation engine's suggestions as more journal-diverse than the usage
engine's, and that expectation is what the directional tests assert.

Everything is driven by one seeded RNG in a fixed iteration order, so a
given parameter set always produces byte-identical files.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass

from .corpus import Article, Corpus, UsageEvent

# Text model. Each topic owns TOPIC_VOCAB words; each journal inside a topic
# emphasizes a sliding window of them, so same-topic journals overlap heavily
# and cross-topic journals share only the small common pool.
TOPIC_VOCAB = 90
JOURNAL_SLICE = 60
JOURNAL_SLICE_STEP = 15
SHARED_VOCAB = 20
TOKENS_PER_ARTICLE = 40
P_SHARED_TOKEN = 0.12
P_TOPIC_TOKEN = 0.30

# Citation model.
REFS_MIN = 3
REFS_MAX = 8
P_CROSS_TOPIC_CITATION = 0.30

# Usage model.
SESSIONS_PER_ARTICLE = 2.0
SESSION_SIZE_MIN = 2
SESSION_SIZE_MAX = 5
P_WITHIN_TOPIC_SESSION = 0.90
N_ACTORS = 60
SESSION_GAP_SECONDS = 7200
EVENT_GAP_SECONDS = 60
BASE_TIMESTAMP = 1_600_000_000

# Popularity skew shared by citation targets and downloads; overlap between
# actor sets is what gives collaborative filtering something to chew on.
ZIPF_EXPONENT = 0.8


@dataclass(frozen=True)
class FixtureConfig:
    topics: int = 2
    journals_per_topic: int = 3
    n_articles: int = 240
    rng_seed: int = 42

    def __post_init__(self) -> None:
        if self.topics < 1:
            raise ValueError("topics must be >= 1")
        if self.journals_per_topic < 1:
            raise ValueError("journals_per_topic must be >= 1")
        if self.n_articles < 2 * self.topics:
            raise ValueError("need at least two articles per topic")


class _ZipfSampler:
    """Draws indices 0..n-1 with probability proportional to 1/(i+1)^a."""

    def __init__(self, n: int, exponent: float = ZIPF_EXPONENT):
        weights = [1.0 / (i + 1) ** exponent for i in range(n)]
        total = 0.0
        self._cumulative: list[float] = []
        for w in weights:
            total += w
            self._cumulative.append(total)
        self._total = total

    def sample(self, rng: random.Random) -> int:
        return bisect.bisect_left(self._cumulative, rng.random() * self._total)


def _journal_id(topic: int, journal: int) -> str:
    return f"j{topic}.{journal}"


def _topic_word(topic: int, index: int) -> str:
    return f"t{topic}w{index:03d}"


def _shared_word(index: int) -> str:
    return f"common{index:03d}"


def _article_text(rng: random.Random, topic: int, journal: int) -> str:
    slice_start = journal * JOURNAL_SLICE_STEP
    tokens: list[str] = []
    for _ in range(TOKENS_PER_ARTICLE):
        roll = rng.random()
        if roll < P_SHARED_TOKEN:
            tokens.append(_shared_word(rng.randrange(SHARED_VOCAB)))
        elif roll < P_SHARED_TOKEN + P_TOPIC_TOKEN:
            tokens.append(_topic_word(topic, rng.randrange(TOPIC_VOCAB)))
        else:
            offset = rng.randrange(JOURNAL_SLICE)
            tokens.append(_topic_word(topic, (slice_start + offset) % TOPIC_VOCAB))
    return " ".join(tokens)


def generate_fixture(config: FixtureConfig = FixtureConfig()) -> tuple[Corpus, list[UsageEvent]]:
    """Build the synthetic corpus and its usage log in memory."""
    rng = random.Random(config.rng_seed)
    topic_of: dict[str, int] = {}
    topic_articles: list[list[str]] = [[] for _ in range(config.topics)]
    drafts: list[tuple[str, int, int]] = []
    for i in range(config.n_articles):
        topic = i % config.topics
        journal = rng.randrange(config.journals_per_topic)
        article_id = f"a{i:04d}"
        topic_of[article_id] = topic
        topic_articles[topic].append(article_id)
        drafts.append((article_id, topic, journal))

    zipf = {
        topic: _ZipfSampler(len(ids)) for topic, ids in enumerate(topic_articles)
    }

    def pick_article(topic: int) -> str:
        ids = topic_articles[topic]
        return ids[zipf[topic].sample(rng)]

    articles: list[Article] = []
    for article_id, topic, journal in drafts:
        n_refs = rng.randint(REFS_MIN, REFS_MAX)
        refs: list[str] = []
        attempts = 0
        while len(refs) < n_refs and attempts < 50 * n_refs:
            attempts += 1
            if config.topics > 1 and rng.random() < P_CROSS_TOPIC_CITATION:
                target_topic = rng.randrange(config.topics - 1)
                if target_topic >= topic:
                    target_topic += 1
            else:
                target_topic = topic
            target = pick_article(target_topic)
            if target != article_id and target not in refs:
                refs.append(target)
        articles.append(
            Article(
                id=article_id,
                title=f"Study {article_id} ({_journal_id(topic, journal)})",
                journal=_journal_id(topic, journal),
                year=2000 + int(article_id[1:]) % 20,
                references=tuple(refs),
                full_text=_article_text(rng, topic, journal),
            )
        )

    events: list[UsageEvent] = []
    n_sessions = int(config.n_articles * SESSIONS_PER_ARTICLE)
    actor_clock = {f"u{i:03d}": BASE_TIMESTAMP for i in range(N_ACTORS)}
    for _ in range(n_sessions):
        actor = f"u{rng.randrange(N_ACTORS):03d}"
        size = rng.randint(SESSION_SIZE_MIN, SESSION_SIZE_MAX)
        session_topic = rng.randrange(config.topics)
        within = config.topics == 1 or rng.random() < P_WITHIN_TOPIC_SESSION
        chosen: list[str] = []
        attempts = 0
        while len(chosen) < size and attempts < 50 * size:
            attempts += 1
            if within:
                topic = session_topic
            else:
                topic = rng.randrange(config.topics)
            candidate = pick_article(topic)
            if candidate not in chosen:
                chosen.append(candidate)
        start = actor_clock[actor]
        actor_clock[actor] = start + SESSION_GAP_SECONDS
        for offset, article_id in enumerate(chosen):
            events.append(
                UsageEvent(
                    actor=actor,
                    article=article_id,
                    timestamp=start + offset * EVENT_GAP_SECONDS,
                )
            )
    return Corpus(articles), events
