"""Minimum edit scripts mapping a wordform to its lemma.

A script is a casing flag plus a prefix and a suffix operation, each
"delete N leading/trailing characters, then splice in a replacement".
This family keeps the label inventory finite while covering concatenative
morphology; a whole-word replacement is always representable, so induction
is total.  All counts are Unicode code points, never bytes.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus
from .errors import InapplicableScriptError, LemmabenchError, MissingLemmaError

PRESERVE = "preserve"
LOWER_FIRST = "lowercase-first"
UPPER_FIRST = "uppercase-first"

_CASE_FLAGS = (PRESERVE, LOWER_FIRST, UPPER_FIRST)


@dataclass(frozen=True, order=True)
class EditScript:
    case_flag: str = PRESERVE
    prefix_drop: int = 0
    prefix_add: str = ""
    suffix_drop: int = 0
    suffix_add: str = ""

    @property
    def edit_size(self) -> int:
        """Total characters deleted or inserted (the minimality measure)."""
        return self.prefix_drop + len(self.prefix_add) + self.suffix_drop + len(self.suffix_add)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def encode(self) -> str:
        """Stable single-field encoding (JSON escapes tabs/newlines)."""
        return json.dumps(
            [self.case_flag, self.prefix_drop, self.prefix_add, self.suffix_drop, self.suffix_add],
            ensure_ascii=False,
            separators=(",", ":"),
        )

    @classmethod
    def decode(cls, encoded: str) -> "EditScript":
        case_flag, prefix_drop, prefix_add, suffix_drop, suffix_add = json.loads(encoded)
        return cls(case_flag, prefix_drop, prefix_add, suffix_drop, suffix_add)


IDENTITY = EditScript()


def _recase(flag: str, word: str) -> str:
    if flag == LOWER_FIRST:
        return word[:1].lower() + word[1:]
    if flag == UPPER_FIRST:
        return word[:1].upper() + word[1:]
    return word


def apply(script: EditScript, wordform: str) -> str:
    """Run a script on a wordform; deterministic, identity-preserving.

    Raises InapplicableScriptError when the deletions do not fit the word.
    """
    word = _recase(script.case_flag, wordform)
    if script.prefix_drop + script.suffix_drop > len(word):
        raise InapplicableScriptError(
            f"script {script.encode()} deletes more than the {len(word)} characters of {wordform!r}"
        )
    core = word[script.prefix_drop : len(word) - script.suffix_drop]
    return script.prefix_add + core + script.suffix_add


def _common_cores(word: str, lemma: str) -> list[tuple[int, int, int]]:
    """All (word_start, lemma_start, length) with maximal shared-substring length.

    length runs over contiguous substrings common to both strings; only the
    longest matter because edit size is len(word)+len(lemma)-2*length.
    """
    n, m = len(word), len(lemma)
    best = 0
    hits: list[tuple[int, int, int]] = []
    # run[j] = length of common suffix of word[:i] and lemma[:j]
    run = [0] * (m + 1)
    for i in range(1, n + 1):
        prev_diag = 0
        for j in range(1, m + 1):
            current = run[j]
            if word[i - 1] == lemma[j - 1]:
                run[j] = prev_diag + 1
                if run[j] > best:
                    best = run[j]
                    hits = [(i - run[j], j - run[j], run[j])]
                elif run[j] == best and best > 0:
                    hits.append((i - run[j], j - run[j], run[j]))
            else:
                run[j] = 0
            prev_diag = current
    return hits if best > 0 else [(0, 0, 0)]


def induce(wordform: str, lemma: str) -> EditScript:
    """Find a minimum-edit script transforming wordform into lemma.

    Guarantees apply(induce(w, l), w) == l.  Among minimal-edit candidates,
    ties prefer (in order): no casing change, suffix edits over prefix
    edits, shorter replacement strings, and finally the lexicographically
    smallest operation tuple, so equal inputs always yield the same script.
    """
    if not wordform or not lemma:
        raise LemmabenchError("induce requires non-empty wordform and lemma")

    best_key = None
    best_script = None
    for flag_rank, flag in enumerate(_CASE_FLAGS):
        recased = _recase(flag, wordform)
        for word_start, lemma_start, length in _common_cores(recased, lemma):
            prefix_drop = word_start
            prefix_add = lemma[:lemma_start]
            suffix_drop = len(recased) - word_start - length
            suffix_add = lemma[lemma_start + length :]
            script = EditScript(flag, prefix_drop, prefix_add, suffix_drop, suffix_add)
            key = (
                script.edit_size,
                flag_rank,
                prefix_drop + len(prefix_add),
                len(prefix_add) + len(suffix_add),
                (prefix_drop, prefix_add, suffix_drop, suffix_add),
            )
            if best_key is None or key < best_key:
                best_key = key
                best_script = script
    assert best_script is not None
    return best_script


class LabelInventory:
    """Distinct edit scripts of a training corpus with dense, stable ids.

    Ids sort by frequency (descending), then by encoded script, so two
    builds over the same corpus agree byte for byte.
    """

    def __init__(self, frequencies: dict[EditScript, int]):
        ordered = sorted(frequencies.items(), key=lambda item: (-item[1], item[0].encode()))
        self._scripts = [script for script, _ in ordered]
        self._ids = {script: i for i, script in enumerate(self._scripts)}
        self._freq = dict(frequencies)

    def __len__(self) -> int:
        return len(self._scripts)

    def __contains__(self, script: EditScript) -> bool:
        return script in self._ids

    def id_of(self, script: EditScript) -> int:
        return self._ids[script]

    def script_of(self, label_id: int) -> EditScript:
        return self._scripts[label_id]

    def frequency(self, script: EditScript) -> int:
        return self._freq[script]

    def items(self) -> list[tuple[int, EditScript, int]]:
        return [(i, s, self._freq[s]) for i, s in enumerate(self._scripts)]


def build_inventory(train: Corpus) -> LabelInventory:
    """Induce a script for every training token and tabulate the label set."""
    counts: Counter[EditScript] = Counter()
    saw_token = False
    for sentence in train.sentences:
        for token in sentence.tokens:
            if token.lemma is None:
                raise MissingLemmaError(
                    f"token {token.index} ({token.wordform!r}) of {sentence.id} has no lemma"
                )
            counts[induce(token.wordform, token.lemma)] += 1
            saw_token = True
    if not saw_token:
        raise MissingLemmaError(f"corpus {train.name} has no tokens to induce labels from")
    return LabelInventory(counts)


INVENTORY_FORMAT = "lemmabench-inventory/1"


def write_inventory(inventory: LabelInventory, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"# format = {INVENTORY_FORMAT}\n")
        handle.write("# columns = id\tscript\tfrequency\n")
        for label_id, script, freq in inventory.items():
            handle.write(f"{label_id}\t{script.encode()}\t{freq}\n")


def read_inventory(path: str | Path) -> LabelInventory:
    frequencies: dict[EditScript, int] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            _, encoded, freq = line.split("\t")
            frequencies[EditScript.decode(encoded)] = int(freq)
    return LabelInventory(frequencies)
