"""Model-output parsing and order-preserving alignment to input tokens.

Raw completions are messy: words get skipped, wordforms come back with
case changes or typos, and extra material appears (quoted fields,
explanation lines, duplicated answer blocks).  Parsing keeps every
plausible word/lemma line and rejects the rest; alignment then matches
output rows to input tokens in order and classifies the damage:

- missing: input tokens no output row aligned to
- wrong:   rows whose wordform only nearly matches (case change or one edit)
- random:  output rows that align to nothing, plus unparseable lines

Aligned lemmas land in one slot per input token (None where missing) so
downstream scoring never loses or reorders words.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .corpus import Sentence

# Tab(s) or runs of 2+ spaces separate fields; a single space never does,
# since wordforms themselves may contain one.
_SEPARATOR = re.compile(r"\t+| {2,}")
_QUOTE_PAIRS = {('"', '"'), ("'", "'"), ("`", "`"), ("“", "”"), ("‘", "’")}

_MATCH = 2
_NEAR = 1
_GAP = -1

PREDICTION_FORMAT = "lemmabench-predictions/1"


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _strip_quotes(field: str) -> str:
    while len(field) >= 2 and (field[0], field[-1]) in _QUOTE_PAIRS:
        field = field[1:-1]
    return field


@dataclass(frozen=True)
class ParsedOutput:
    pairs: tuple[tuple[str, str], ...]  # (wordform, lemma) rows, in output order
    rejects: tuple[str, ...]  # lines that were not two-field rows


def parse_output(raw_text: str) -> ParsedOutput:
    """Extract candidate wordform/lemma rows from a raw completion."""
    pairs: list[tuple[str, str]] = []
    rejects: list[str] = []
    for line in raw_text.splitlines():
        line = line.strip()
        if not line:
            continue
        fields = [_strip_quotes(f.strip()) for f in _SEPARATOR.split(line)]
        fields = [f for f in fields if f]
        if len(fields) == 2:
            pairs.append((_nfc(fields[0]), _nfc(fields[1])))
        else:
            rejects.append(line)
    return ParsedOutput(pairs=tuple(pairs), rejects=tuple(rejects))


def _distance_is_one(a: str, b: str) -> bool:
    """True when Levenshtein distance is exactly 1 (single edit)."""
    if a == b or abs(len(a) - len(b)) > 1:
        return False
    if len(a) > len(b):
        a, b = b, a
    i = 0
    while i < len(a) and a[i] == b[i]:
        i += 1
    if len(a) == len(b):
        return a[i + 1 :] == b[i + 1 :]
    return a[i:] == b[i + 1 :]


def _pair_score(out_word: str, in_word: str) -> int | None:
    if out_word == in_word:
        return _MATCH
    if out_word.casefold() == in_word.casefold() or _distance_is_one(out_word, in_word):
        return _NEAR
    return None


def align_sequences(out_words: list[str], in_words: list[str]) -> list[tuple[int, int]]:
    """Globally align output words to input words, preserving order.

    Returns matched (output_index, input_index) pairs, ascending in both.
    Ties prefer leaving later output rows unmatched, so a duplicated
    answer block matches on its first copy and the copy counts as noise.
    """
    n, m = len(out_words), len(in_words)
    neg = float("-inf")
    score = [[0.0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        score[i][0] = i * _GAP
    for j in range(1, m + 1):
        score[0][j] = j * _GAP
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            s = _pair_score(out_words[i - 1], in_words[j - 1])
            diag = score[i - 1][j - 1] + s if s is not None else neg
            score[i][j] = max(diag, score[i - 1][j] + _GAP, score[i][j - 1] + _GAP)

    matched: list[tuple[int, int]] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and score[i][j] == score[i - 1][j] + _GAP:
            i -= 1  # output row left unmatched
            continue
        if i > 0 and j > 0:
            s = _pair_score(out_words[i - 1], in_words[j - 1])
            if s is not None and score[i][j] == score[i - 1][j - 1] + s:
                matched.append((i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        j -= 1  # input token left unmatched
    matched.reverse()
    return matched


@dataclass(frozen=True)
class AlignedPrediction:
    """Per-token lemma slots for one sentence plus the error tallies."""

    sentence_id: str
    lemmas: tuple[str | None, ...]  # one slot per input token; None = missing
    missing_words: tuple[int, ...]  # input indices with no aligned output
    wrong_words: tuple[int, ...]  # input indices aligned via a near match
    random_outputs: int  # output rows aligned to nothing + rejected lines

    def counts(self) -> dict[str, int]:
        return {
            "missing": len(self.missing_words),
            "wrong": len(self.wrong_words),
            "random": self.random_outputs,
        }


def align(parsed: ParsedOutput, sentence: Sentence) -> AlignedPrediction:
    """Assign each parsed row to an input token and classify the errors."""
    in_words = sentence.wordforms()
    out_words = [w for w, _ in parsed.pairs]
    matched = align_sequences(out_words, in_words)

    lemmas: list[str | None] = [None] * len(in_words)
    wrong: list[int] = []
    matched_outputs = set()
    for out_idx, in_idx in matched:
        matched_outputs.add(out_idx)
        lemmas[in_idx] = parsed.pairs[out_idx][1]
        if out_words[out_idx] != in_words[in_idx]:
            wrong.append(in_idx)
    missing = [idx for idx, lemma in enumerate(lemmas) if lemma is None]
    random_outputs = (len(out_words) - len(matched_outputs)) + len(parsed.rejects)
    return AlignedPrediction(
        sentence_id=sentence.id,
        lemmas=tuple(lemmas),
        missing_words=tuple(missing),
        wrong_words=tuple(wrong),
        random_outputs=random_outputs,
    )


@dataclass(frozen=True)
class PredictionBlock:
    sentence_id: str | None  # None when the file carries no sent_id comments
    pairs: tuple[tuple[str, str | None], ...]  # (wordform, lemma-or-missing)


def write_predictions(
    path: str | Path,
    blocks: list[tuple[str, list[str], list[str | None]]],
    metadata: dict[str, str] | None = None,
):
    """Write sentence-per-block prediction TSV.

    Each block is (sentence_id, wordforms, lemma slots); a missing lemma
    becomes an empty second field so token counts stay intact on disk.
    """
    lines = [f"# format = {PREDICTION_FORMAT}"]
    for key, value in (metadata or {}).items():
        lines.append(f"# {key} = {value}")
    for sentence_id, wordforms, lemmas in blocks:
        lines.append(f"# sent_id = {sentence_id}")
        for wordform, lemma in zip(wordforms, lemmas):
            lines.append(f"{wordform}\t{lemma if lemma is not None else ''}")
        lines.append("")
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


def read_predictions(path: str | Path) -> tuple[dict[str, str], list[PredictionBlock]]:
    """Read a prediction file back into metadata plus ordered blocks.

    Accepts externally produced files too: blocks are separated by blank
    lines, and sent_id comments are optional (identity then falls back to
    corpus order at scoring time).
    """
    metadata: dict[str, str] = {}
    blocks: list[PredictionBlock] = []
    current_id: str | None = None
    current_pairs: list[tuple[str, str | None]] = []
    seen_block = False

    def flush():
        nonlocal current_id, current_pairs, seen_block
        if seen_block and (current_pairs or current_id is not None):
            blocks.append(PredictionBlock(current_id, tuple(current_pairs)))
        current_id, current_pairs, seen_block = None, [], False

    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, value = body.split("=", 1)
                    key, value = key.strip(), value.strip()
                    if key == "sent_id":
                        flush()
                        current_id = value
                        seen_block = True
                    else:
                        metadata[key] = value
                continue
            fields = line.split("\t")
            wordform = _nfc(fields[0])
            lemma = _nfc(fields[1]) if len(fields) > 1 and fields[1] != "" else None
            current_pairs.append((wordform, lemma))
            seen_block = True
    flush()
    return metadata, blocks


def write_diagnostics(path: str | Path, metadata: dict, sentences: dict[str, dict]):
    """Persist per-sentence error counts as deterministic JSON."""
    payload = {"metadata": metadata, "sentences": sentences}
    text = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", "utf-8")


def read_diagnostics(path: str | Path) -> tuple[dict, dict[str, dict]]:
    payload = json.loads(Path(path).read_text("utf-8"))
    return payload.get("metadata", {}), payload.get("sentences", {})
