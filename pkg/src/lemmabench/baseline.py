"""Frequency-table lemmatizer over induced edit scripts.

Lookup order per token: exact case-folded form, then longest stored suffix
(max length down to 1), then the identity script.  Stored scripts come from
training counts with ties broken by label-inventory id, so training twice
on the same corpus gives the same model.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, Sentence
from .editscript import IDENTITY, EditScript, LabelInventory, apply, induce
from .errors import EmptyCorpusError, InapplicableScriptError, MissingLemmaError

DEFAULT_MAX_SUFFIX = 5


@dataclass
class BaselineModel:
    form_table: dict[str, EditScript] = field(default_factory=dict)
    suffix_table: dict[str, EditScript] = field(default_factory=dict)
    max_suffix_len: int = DEFAULT_MAX_SUFFIX


def train(
    train_corpus: Corpus,
    inventory: LabelInventory,
    max_suffix_len: int = DEFAULT_MAX_SUFFIX,
) -> BaselineModel:
    """Count scripts per case-folded form and per suffix, keep the majority."""
    if len(train_corpus) == 0:
        raise EmptyCorpusError(f"cannot train on empty corpus {train_corpus.name}")

    form_counts: dict[str, Counter[EditScript]] = defaultdict(Counter)
    suffix_counts: dict[str, Counter[EditScript]] = defaultdict(Counter)
    for sentence in train_corpus.sentences:
        for token in sentence.tokens:
            if token.lemma is None:
                raise MissingLemmaError(
                    f"token {token.index} ({token.wordform!r}) of {sentence.id} has no lemma"
                )
            script = induce(token.wordform, token.lemma)
            key = token.wordform.casefold()
            form_counts[key][script] += 1
            for length in range(1, min(max_suffix_len, len(key)) + 1):
                suffix_counts[key[-length:]][script] += 1

    def majority(counter: Counter[EditScript]) -> EditScript:
        # highest count wins; ties go to the lower (more frequent) label id
        return min(counter.items(), key=lambda item: (-item[1], inventory.id_of(item[0])))[0]

    return BaselineModel(
        form_table={form: majority(counts) for form, counts in form_counts.items()},
        suffix_table={suffix: majority(counts) for suffix, counts in suffix_counts.items()},
        max_suffix_len=max_suffix_len,
    )


def _candidate_scripts(model: BaselineModel, key: str):
    script = model.form_table.get(key)
    if script is not None:
        yield script
    for length in range(min(model.max_suffix_len, len(key)), 0, -1):
        script = model.suffix_table.get(key[-length:])
        if script is not None:
            yield script
    yield IDENTITY


def predict(model: BaselineModel, sentence: Sentence) -> list[str]:
    """One lemma per input token, never skipping or reordering."""
    lemmas = []
    for token in sentence.tokens:
        key = token.wordform.casefold()
        for script in _candidate_scripts(model, key):
            try:
                lemmas.append(apply(script, token.wordform))
                break
            except InapplicableScriptError:
                continue  # script induced from a longer word; fall back
    return lemmas


def predict_identity(sentence: Sentence) -> list[str]:
    """The do-nothing lemmatizer every trained model has to beat."""
    return [token.wordform for token in sentence.tokens]


MODEL_FORMAT = "lemmabench-baseline/1"


def write_model(model: BaselineModel, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"# format = {MODEL_FORMAT}\n")
        handle.write(f"# max_suffix_len = {model.max_suffix_len}\n")
        handle.write("# columns = table\tkey\tscript\n")
        for table_name, table in (("form", model.form_table), ("suffix", model.suffix_table)):
            for key in sorted(table):
                handle.write(f"{table_name}\t{key}\t{table[key].encode()}\n")


def read_model(path: str | Path) -> BaselineModel:
    model = BaselineModel()
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if line.startswith("# max_suffix_len = "):
                model.max_suffix_len = int(line.rsplit(" ", 1)[1])
                continue
            if not line or line.startswith("#"):
                continue
            table_name, key, encoded = line.split("\t")
            table = model.form_table if table_name == "form" else model.suffix_table
            table[key] = EditScript.decode(encoded)
    return model
