"""Corpus ingestion and split management.

Two input formats are supported: CoNLL-U (UD v2, 10 tab-separated columns)
and a plain two-column ``wordform<TAB>lemma`` TSV with blank lines between
sentences.  Only FORM and LEMMA are kept; everything is NFC-normalized on
the way in so downstream comparisons can be exact string equality.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from random import Random

from .errors import CorpusFormatError, EmptyCorpusError, SplitError

# Syntactic-word IDs are plain integers; "3-4" is a multiword-token range
# line and "5.1" an empty node, neither of which carries a scorable lemma.
_RANGE_ID = re.compile(r"^\d+-\d+$")
_EMPTY_NODE_ID = re.compile(r"^\d+\.\d+$")
_WORD_ID = re.compile(r"^\d+$")

FIRST_N = "first-n"
SEEDED_RANDOM = "seeded-random"


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class Token:
    """One surface wordform with its gold lemma and 1-based position."""

    index: int
    wordform: str
    lemma: str | None = None


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: tuple[Token, ...]

    def wordforms(self) -> list[str]:
        return [t.wordform for t in self.tokens]

    def lemmas(self) -> list[str | None]:
        return [t.lemma for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Corpus:
    name: str
    language: str
    sentences: tuple[Sentence, ...]

    def __len__(self) -> int:
        return len(self.sentences)

    def sentence_by_id(self, sentence_id: str) -> Sentence:
        for sentence in self.sentences:
            if sentence.id == sentence_id:
                return sentence
        raise KeyError(sentence_id)

    def token_pairs(self) -> list[tuple[str, str]]:
        """All (wordform, lemma) pairs of lemma-annotated tokens."""
        return [
            (t.wordform, t.lemma)
            for s in self.sentences
            for t in s.tokens
            if t.lemma is not None
        ]


@dataclass(frozen=True)
class SplitSpec:
    train_count: int
    dev_count: int
    test_count: int
    selection_rule: str = FIRST_N  # first-n | seeded-random
    seed: int = 0

    def __post_init__(self):
        if min(self.train_count, self.dev_count, self.test_count) < 0:
            raise SplitError("split counts must be non-negative")
        if self.selection_rule not in (FIRST_N, SEEDED_RANDOM):
            raise SplitError(f"unknown selection rule: {self.selection_rule!r}")


def _sentence(corpus_name: str, ordinal: int, tokens: list[Token]) -> Sentence:
    return Sentence(id=f"{corpus_name}-{ordinal:04d}", tokens=tuple(tokens))


def ingest_conllu(path: str | Path, name: str | None = None, language: str = "und") -> Corpus:
    """Read a CoNLL-U file into a Corpus.

    Keeps FORM as wordform and LEMMA as lemma ("_" maps to no lemma).
    Multiword-token range lines and empty-node lines are dropped; comments
    are ignored.  Raises CorpusFormatError on a token line that does not
    have exactly 10 tab-separated columns, EmptyCorpusError if no sentence
    survives.
    """
    path = Path(path)
    corpus_name = name or path.stem
    sentences: list[Sentence] = []
    tokens: list[Token] = []

    with open(path, encoding="utf-8-sig") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                if tokens:
                    sentences.append(_sentence(corpus_name, len(sentences), tokens))
                    tokens = []
                continue
            if line.startswith("#"):
                continue
            columns = line.split("\t")
            if len(columns) != 10:
                raise CorpusFormatError(
                    path, line_no, f"expected 10 columns, found {len(columns)}"
                )
            token_id = columns[0]
            if _RANGE_ID.match(token_id) or _EMPTY_NODE_ID.match(token_id):
                continue
            if not _WORD_ID.match(token_id):
                raise CorpusFormatError(path, line_no, f"unrecognized token ID {token_id!r}")
            form = _nfc(columns[1])
            if not form:
                raise CorpusFormatError(path, line_no, "empty FORM column")
            lemma = None if columns[2] == "_" else _nfc(columns[2])
            tokens.append(Token(index=len(tokens) + 1, wordform=form, lemma=lemma))
    if tokens:
        sentences.append(_sentence(corpus_name, len(sentences), tokens))
    if not sentences:
        raise EmptyCorpusError(f"{path}: no sentences found")
    return Corpus(name=corpus_name, language=language, sentences=tuple(sentences))


def ingest_tsv(path: str | Path, name: str | None = None, language: str = "und") -> Corpus:
    """Read a two-column ``wordform<TAB>lemma`` file, blank line between sentences.

    An empty lemma field means the token is unannotated.  A line with any
    other field count is a CorpusFormatError naming the line.
    """
    path = Path(path)
    corpus_name = name or path.stem
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    pending_id: str | None = None  # explicit id from a "# sent_id = ..." comment

    def close_sentence():
        nonlocal pending_id
        if tokens:
            if pending_id is not None:
                sentences.append(Sentence(id=pending_id, tokens=tuple(tokens)))
            else:
                sentences.append(_sentence(corpus_name, len(sentences), tokens))
            tokens.clear()
            pending_id = None

    with open(path, encoding="utf-8-sig") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                close_sentence()
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("sent_id") and "=" in body:
                    close_sentence()
                    pending_id = body.split("=", 1)[1].strip()
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise CorpusFormatError(
                    path, line_no, f"expected 2 tab-separated fields, found {len(fields)}"
                )
            form = _nfc(fields[0])
            if not form:
                raise CorpusFormatError(path, line_no, "empty wordform field")
            lemma = _nfc(fields[1]) if fields[1] else None
            tokens.append(Token(index=len(tokens) + 1, wordform=form, lemma=lemma))
    close_sentence()
    if not sentences:
        raise EmptyCorpusError(f"{path}: no sentences found")
    return Corpus(name=corpus_name, language=language, sentences=tuple(sentences))


def write_tsv(
    corpus: Corpus,
    path: str | Path,
    header_lines: list[str] | None = None,
    include_ids: bool = True,
) -> None:
    """Serialize a corpus in the two-column TSV format ingest_tsv reads back.

    With include_ids, sentence ids ride along as sent_id comments and
    survive the round trip, which keeps split members traceable on disk.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        for line in header_lines or []:
            handle.write(f"# {line}\n")
        for sentence in corpus.sentences:
            if include_ids:
                handle.write(f"# sent_id = {sentence.id}\n")
            for token in sentence.tokens:
                handle.write(f"{token.wordform}\t{token.lemma or ''}\n")
            handle.write("\n")


def corpus_stats(corpus: Corpus) -> tuple[int, int]:
    """(token count, sentence count)."""
    return sum(len(s) for s in corpus.sentences), len(corpus.sentences)


def reduce_corpus(
    corpus: Corpus, max_sentences: int, rule: str = FIRST_N, seed: int = 0
) -> Corpus:
    """Cap a corpus at max_sentences, keeping original sentence order."""
    if len(corpus) <= max_sentences:
        return corpus
    if rule == FIRST_N:
        kept = corpus.sentences[:max_sentences]
    elif rule == SEEDED_RANDOM:
        picked = set(Random(seed).sample(range(len(corpus)), max_sentences))
        kept = tuple(s for i, s in enumerate(corpus.sentences) if i in picked)
    else:
        raise SplitError(f"unknown reduction rule: {rule!r}")
    return Corpus(name=corpus.name, language=corpus.language, sentences=kept)


def make_splits(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Partition a corpus into disjoint train/dev/test corpora.

    first-n takes consecutive prefixes in corpus order; seeded-random
    shuffles sentence indices reproducibly, then assigns consecutive
    blocks.  Sentence ids are preserved so splits stay traceable.
    """
    total = spec.train_count + spec.dev_count + spec.test_count
    if total > len(corpus):
        raise SplitError(
            f"split sizes sum to {total} but corpus {corpus.name} has {len(corpus)} sentences"
        )
    order = list(range(len(corpus)))
    if spec.selection_rule == SEEDED_RANDOM:
        Random(spec.seed).shuffle(order)
    cuts = (
        order[: spec.train_count],
        order[spec.train_count : spec.train_count + spec.dev_count],
        order[spec.train_count + spec.dev_count : total],
    )
    parts = []
    for part_name, indices in zip(("train", "dev", "test"), cuts):
        indices = sorted(indices)  # keep original document order inside each split
        parts.append(
            Corpus(
                name=f"{corpus.name}-{part_name}",
                language=corpus.language,
                sentences=tuple(corpus.sentences[i] for i in indices),
            )
        )
    return parts[0], parts[1], parts[2]


def write_split_manifest(
    splits: dict[str, Corpus], path: str | Path, header_lines: list[str] | None = None
) -> None:
    """Record which sentence ids landed in which split (split<TAB>sentence_id)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        for line in header_lines or []:
            handle.write(f"# {line}\n")
        for split_name, part in splits.items():
            for sentence in part.sentences:
                handle.write(f"{split_name}\t{sentence.id}\n")


def read_split_manifest(path: str | Path) -> dict[str, list[str]]:
    manifest: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            split_name, sentence_id = line.split("\t")
            manifest.setdefault(split_name, []).append(sentence_id)
    return manifest
