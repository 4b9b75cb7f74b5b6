"""Scoring: word/sentence accuracy, run aggregation, McNemar's test.

Predictions are lemma slots keyed by sentence id — one slot per gold
token, None where the system produced nothing.  The strict policy counts
such holes as wrong; renormalize drops them from the denominator (useful
for diagnosing parse loss separately from lemma quality).

Paired system comparison uses McNemar's test on per-word correctness:
exact binomial when fewer than 25 discordant pairs, otherwise chi-square
with continuity correction.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Mapping, Sequence

from .corpus import Corpus
from .errors import ScoringError

STRICT = "strict"
RENORMALIZE = "renormalize"

EXACT_THRESHOLD = 25  # discordant pairs below this use the exact binomial

LemmaSlots = Mapping[str, Sequence[str | None]]


def _check_coverage(predictions: LemmaSlots, gold: Corpus):
    for sentence in gold.sentences:
        if sentence.id not in predictions:
            raise ScoringError(f"no prediction for sentence {sentence.id}")
        slots = predictions[sentence.id]
        if len(slots) != len(sentence.tokens):
            raise ScoringError(
                f"{sentence.id}: {len(slots)} lemma slots for {len(sentence.tokens)} tokens"
            )


def _token_outcomes(predictions: LemmaSlots, gold: Corpus) -> list[bool | None]:
    """One entry per gold token in corpus order: True/False, None = missing."""
    _check_coverage(predictions, gold)
    outcomes: list[bool | None] = []
    for sentence in gold.sentences:
        slots = predictions[sentence.id]
        for token, predicted in zip(sentence.tokens, slots):
            if token.lemma is None:
                raise ScoringError(f"gold token {token.wordform!r} in {sentence.id} has no lemma")
            outcomes.append(None if predicted is None else predicted == token.lemma)
    return outcomes


def word_accuracy(predictions: LemmaSlots, gold: Corpus, policy: str = STRICT) -> float:
    """Fraction of gold tokens whose predicted lemma matches exactly."""
    if policy not in (STRICT, RENORMALIZE):
        raise ScoringError(f"unknown missing-word policy {policy!r}")
    outcomes = _token_outcomes(predictions, gold)
    if policy == RENORMALIZE:
        outcomes = [o for o in outcomes if o is not None]
    if not outcomes:
        return 0.0
    return sum(o is True for o in outcomes) / len(outcomes)


def sentence_accuracy(predictions: LemmaSlots, gold: Corpus) -> float:
    """Fraction of sentences with every token lemma correct (all-or-nothing)."""
    _check_coverage(predictions, gold)
    correct = 0
    for sentence in gold.sentences:
        slots = predictions[sentence.id]
        if all(p == t.lemma for p, t in zip(slots, sentence.tokens)):
            correct += 1
    return correct / len(gold.sentences) if gold.sentences else 0.0


def correctness_vector(predictions: LemmaSlots, gold: Corpus) -> list[bool]:
    """Strict per-word correctness in corpus order (missing counts as wrong)."""
    return [o is True for o in _token_outcomes(predictions, gold)]


def aggregate_runs(values: Sequence[float]) -> tuple[float, float]:
    """Mean and population standard deviation across repeat runs."""
    if not values:
        raise ScoringError("aggregate_runs needs at least one value")
    return statistics.fmean(values), statistics.pstdev(values)


@dataclass(frozen=True)
class McNemarResult:
    b01: int  # first system wrong, second right
    b10: int  # first system right, second wrong
    statistic: float
    p_value: float
    method: str  # "exact" or "chi-square"

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha


def mcnemar(first_correct: Sequence[bool], second_correct: Sequence[bool]) -> McNemarResult:
    """Paired McNemar's test on two correctness vectors of equal length."""
    if len(first_correct) != len(second_correct):
        raise ScoringError(
            f"correctness vectors differ in length: {len(first_correct)} vs {len(second_correct)}"
        )
    b01 = sum(1 for a, b in zip(first_correct, second_correct) if not a and b)
    b10 = sum(1 for a, b in zip(first_correct, second_correct) if a and not b)
    n = b01 + b10
    if n == 0:
        return McNemarResult(0, 0, 0.0, 1.0, "exact")
    if n < EXACT_THRESHOLD:
        k = min(b01, b10)
        tail = sum(math.comb(n, i) for i in range(k + 1)) / 2**n
        return McNemarResult(b01, b10, float(k), min(1.0, 2.0 * tail), "exact")
    statistic = (abs(b01 - b10) - 1) ** 2 / n
    p_value = math.erfc(math.sqrt(statistic / 2.0))
    return McNemarResult(b01, b10, statistic, p_value, "chi-square")


@dataclass(frozen=True)
class RunScore:
    """Scores plus error tallies for one system on one corpus, one run."""

    word_accuracy: float
    sentence_accuracy: float
    correct: int
    total: int
    correct_sentences: int
    sentences: int
    missing: int
    wrong: int
    random: int


@dataclass(frozen=True)
class EvalReport:
    system: str
    corpus: str
    runs: tuple[RunScore, ...]

    def word_stats(self) -> tuple[float, float]:
        return aggregate_runs([r.word_accuracy for r in self.runs])

    def sentence_stats(self) -> tuple[float, float]:
        return aggregate_runs([r.sentence_accuracy for r in self.runs])

    def mean_errors(self) -> tuple[float, float, float]:
        missing = statistics.fmean(r.missing for r in self.runs)
        wrong = statistics.fmean(r.wrong for r in self.runs)
        rand = statistics.fmean(r.random for r in self.runs)
        return missing, wrong, rand


def score_run(
    predictions: LemmaSlots,
    gold: Corpus,
    policy: str = STRICT,
    diagnostics: Mapping[str, Mapping[str, int]] | None = None,
) -> RunScore:
    """Score one run; wrong/random tallies come from alignment diagnostics."""
    outcomes = _token_outcomes(predictions, gold)
    scored = [o for o in outcomes if o is not None] if policy == RENORMALIZE else outcomes
    correct = sum(o is True for o in scored)
    total = len(scored)
    correct_sentences = sum(
        all(p == t.lemma for p, t in zip(predictions[s.id], s.tokens)) for s in gold.sentences
    )
    wrong = rand = 0
    if diagnostics:
        wrong = sum(int(d.get("wrong", 0)) for d in diagnostics.values())
        rand = sum(int(d.get("random", 0)) for d in diagnostics.values())
    return RunScore(
        word_accuracy=correct / total if total else 0.0,
        sentence_accuracy=correct_sentences / len(gold.sentences) if gold.sentences else 0.0,
        correct=correct,
        total=total,
        correct_sentences=correct_sentences,
        sentences=len(gold.sentences),
        missing=sum(o is None for o in outcomes),
        wrong=wrong,
        random=rand,
    )


SCORES_COLUMNS = (
    "system\tcorpus\truns\tword_acc_mean\tword_acc_std\tsent_acc_mean\tsent_acc_std"
    "\tmissing_mean\twrong_mean\trandom_mean"
)


def render_scores_tsv(reports: Sequence[EvalReport], metadata: Mapping[str, str]) -> str:
    lines = [f"# {k} = {v}" for k, v in metadata.items()]
    lines.append(SCORES_COLUMNS)
    for report in reports:
        w_mean, w_std = report.word_stats()
        s_mean, s_std = report.sentence_stats()
        miss, wrong, rand = report.mean_errors()
        lines.append(
            f"{report.system}\t{report.corpus}\t{len(report.runs)}"
            f"\t{w_mean:.4f}\t{w_std:.4f}\t{s_mean:.4f}\t{s_std:.4f}"
            f"\t{miss:.1f}\t{wrong:.1f}\t{rand:.1f}"
        )
    return "\n".join(lines) + "\n"


def render_mcnemar_tsv(
    rows: Sequence[tuple[str, str, str, McNemarResult]],
    metadata: Mapping[str, str],
    alpha: float = 0.05,
) -> str:
    """Rows are (corpus, system_a, system_b, result)."""
    lines = [f"# {k} = {v}" for k, v in metadata.items()]
    lines.append("corpus\tsystem_a\tsystem_b\tb01\tb10\tmethod\tstatistic\tp_value\tsignificant")
    for corpus, sys_a, sys_b, res in rows:
        flag = "yes" if res.significant(alpha) else "no"
        lines.append(
            f"{corpus}\t{sys_a}\t{sys_b}\t{res.b01}\t{res.b10}"
            f"\t{res.method}\t{res.statistic:.6f}\t{res.p_value:.6g}\t{flag}"
        )
    return "\n".join(lines) + "\n"


def render_report_text(
    reports: Sequence[EvalReport],
    mcnemar_rows: Sequence[tuple[str, str, str, McNemarResult]],
    metadata: Mapping[str, str],
    alpha: float = 0.05,
) -> str:
    """Human-readable summary; '*' marks the best word accuracy per corpus."""
    lines = ["Lemmatization report", "=" * 20, ""]
    for key, value in metadata.items():
        lines.append(f"{key}: {value}")
    if metadata:
        lines.append("")

    by_corpus: dict[str, list[EvalReport]] = {}
    for report in reports:
        by_corpus.setdefault(report.corpus, []).append(report)

    for corpus in sorted(by_corpus):
        group = by_corpus[corpus]
        best = max(r.word_stats()[0] for r in group)
        lines.append(f"Corpus: {corpus}")
        lines.append(f"{'system':<28}{'word acc':>18}{'sent acc':>18}{'runs':>6}")
        for report in group:
            w_mean, w_std = report.word_stats()
            s_mean, s_std = report.sentence_stats()
            marker = " *" if w_mean == best else ""
            lines.append(
                f"{report.system + marker:<28}"
                f"{f'{w_mean:.4f} ± {w_std:.4f}':>18}"
                f"{f'{s_mean:.4f} ± {s_std:.4f}':>18}"
                f"{len(report.runs):>6}"
            )
        lines.append("")

    if mcnemar_rows:
        lines.append(f"McNemar's test (alpha = {alpha})")
        for corpus, sys_a, sys_b, res in mcnemar_rows:
            verdict = "significant" if res.significant(alpha) else "not significant"
            lines.append(
                f"  {corpus}: {sys_a} vs {sys_b}: b01={res.b01} b10={res.b10} "
                f"{res.method} statistic={res.statistic:.4f} p={res.p_value:.6g} ({verdict})"
            )
        lines.append("")
    lines.append("* best word accuracy on the corpus")
    return "\n".join(lines) + "\n"
