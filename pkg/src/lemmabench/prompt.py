"""Prompt construction for in-context lemma generation.

Two templates (basic task description, or the same plus eight explicit
lemmatization instructions), two ways of presenting the target sentence
(one quoted string, or a bracketed word list), and 0-5 worked examples
chosen manually, at random, or by how many errors a prior dev run made on
each candidate sentence.  Wording lives in versioned text assets under
``templates/``; rendering is a pure function of (spec, examples, target).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from random import Random
from typing import Mapping

from .corpus import Corpus, Sentence
from .errors import MissingLemmaError, PromptError

BASIC = "basic"
FULL = "full"
SENTENCE_STRING = "sentence-string"
WORD_LIST = "word-list"
MANUAL = "manual"
RANDOM = "random"
MOST_ERRORS = "most-errors"

MAX_SHOTS = 5


def _asset(name: str) -> str:
    return resources.files(__package__).joinpath(f"templates/{name}").read_text("utf-8")


TEMPLATE_VERSION = _asset("VERSION").strip()
_TASK_HEADER = _asset("task_header.txt").rstrip("\n")
_INSTRUCTIONS = _asset("instructions.txt").rstrip("\n")
_OUTPUT_FORMAT = _asset("output_format.txt").rstrip("\n")
_CLOSING = _asset("closing.txt").rstrip("\n")
_EXAMPLE_INTRO = _asset("example_intro.txt").rstrip("\n")
_EXAMPLE_OUTPUT_INTRO = _asset("example_output_intro.txt").rstrip("\n")


@dataclass(frozen=True)
class PromptSpec:
    """One prompt configuration; shots=0 makes the selection fields moot."""

    template: str = BASIC
    input_mode: str = WORD_LIST
    shots: int = 4
    selection: str = MOST_ERRORS
    seed: int = 0
    language_name: str = "English"

    def __post_init__(self):
        if self.template not in (BASIC, FULL):
            raise PromptError(f"unknown template {self.template!r}")
        if self.input_mode not in (SENTENCE_STRING, WORD_LIST):
            raise PromptError(f"unknown input mode {self.input_mode!r}")
        if not 0 <= self.shots <= MAX_SHOTS:
            raise PromptError(f"shots must be in [0, {MAX_SHOTS}], got {self.shots}")
        if self.selection not in (MANUAL, RANDOM, MOST_ERRORS):
            raise PromptError(f"unknown selection strategy {self.selection!r}")


@dataclass(frozen=True)
class FewShotExample:
    sentence: Sentence
    gold_pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(self.gold_pairs) != len(self.sentence.tokens):
            raise PromptError(
                f"example {self.sentence.id}: {len(self.gold_pairs)} pairs "
                f"for {len(self.sentence.tokens)} tokens"
            )

    @classmethod
    def from_sentence(cls, sentence: Sentence) -> "FewShotExample":
        pairs = []
        for token in sentence.tokens:
            if token.lemma is None:
                raise MissingLemmaError(
                    f"token {token.index} ({token.wordform!r}) of {sentence.id} has no lemma"
                )
            pairs.append((token.wordform, token.lemma))
        return cls(sentence=sentence, gold_pairs=tuple(pairs))


def _quote_word(word: str) -> str:
    return "'" + word.replace("'", "\\'") + "'"


def _sentence_block(mode: str, sentence: Sentence) -> str:
    words = sentence.wordforms()
    if mode == SENTENCE_STRING:
        return f'Sentence: "{" ".join(words)}"'
    listed = ", ".join(_quote_word(w) for w in words)
    return f"Sentence:\n[{listed}]"


def _example_lines(example: FewShotExample) -> list[str]:
    lines = [w for w, _ in example.gold_pairs]
    lines.append(_EXAMPLE_OUTPUT_INTRO)
    lines.extend(f"{w}\t{l}" for w, l in example.gold_pairs)
    return lines


def render_prompt(spec: PromptSpec, examples: list[FewShotExample], target: Sentence) -> str:
    """Assemble the final prompt text; deterministic, no trailing newline.

    The first example's lead-in continues the preceding paragraph, further
    examples start their own block, mirroring the worked-example layout.
    """
    if len(examples) != spec.shots:
        raise PromptError(f"spec asks for {spec.shots} examples, got {len(examples)}")

    lines = [_TASK_HEADER.format(language_name=spec.language_name)]
    if spec.template == FULL:
        lines.extend(_INSTRUCTIONS.splitlines())
    for i, example in enumerate(examples):
        if i == 0:
            lines[-1] = f"{lines[-1]} {_EXAMPLE_INTRO}"
        else:
            lines.append(_EXAMPLE_INTRO)
        lines.extend(_example_lines(example))
    lines.extend(_OUTPUT_FORMAT.splitlines())
    lines.extend(_sentence_block(spec.input_mode, target).splitlines())
    lines.append(_CLOSING)
    return "\n".join(lines)


def _error_total(entry) -> int:
    if isinstance(entry, Mapping):
        return sum(int(v) for v in entry.values())
    return int(entry)


def select_examples(
    selection: str,
    k: int,
    pool: Corpus,
    dev_diagnostics: Mapping[str, object] | None = None,
    seed: int = 0,
    manual_ids: list[str] | None = None,
) -> list[FewShotExample]:
    """Pick k worked examples from a pool corpus.

    most-errors ranks pool sentences by the total error count of a prior
    dev run (ties broken by sentence id); random is reproducible from its
    seed; manual takes an explicit id list.
    """
    if k == 0:
        return []
    if k > len(pool):
        raise PromptError(f"asked for {k} examples but pool {pool.name} has {len(pool)}")

    if selection == MANUAL:
        if manual_ids is None or len(manual_ids) != k:
            raise PromptError(f"manual selection needs exactly {k} sentence ids")
        chosen = [pool.sentence_by_id(sentence_id) for sentence_id in manual_ids]
    elif selection == RANDOM:
        chosen = Random(seed).sample(list(pool.sentences), k)
    elif selection == MOST_ERRORS:
        if dev_diagnostics is None:
            raise PromptError("most-errors selection requires dev diagnostics")
        missing = [s.id for s in pool.sentences if s.id not in dev_diagnostics]
        if missing:
            raise PromptError(f"diagnostics do not cover pool sentences: {missing[:5]}")
        ranked = sorted(
            pool.sentences, key=lambda s: (-_error_total(dev_diagnostics[s.id]), s.id)
        )
        chosen = ranked[:k]
    else:
        raise PromptError(f"unknown selection strategy {selection!r}")
    return [FewShotExample.from_sentence(s) for s in chosen]
