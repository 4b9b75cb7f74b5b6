"""Output parsing, alignment taxonomy, and prediction file round trips."""

import random
import unicodedata

import pytest

from lemmabench.align import (
    AlignedPrediction,
    align,
    align_sequences,
    parse_output,
    read_diagnostics,
    read_predictions,
    write_diagnostics,
    write_predictions,
)

from conftest import sentence
from synthgen import make_case


def _aligned(raw_text, *pairs):
    return align(parse_output(raw_text), sentence("s-0", *pairs))


# --- parsing ----------------------------------------------------------------


def test_parse_tab_separated_rows():
    parsed = parse_output("dogs\tdog\ncats\tcat")
    assert parsed.pairs == (("dogs", "dog"), ("cats", "cat"))
    assert parsed.rejects == ()


def test_parse_accepts_multi_tab_and_double_space():
    parsed = parse_output("dogs\t\tdog\ncats  cat\nbirds   bird")
    assert parsed.pairs == (("dogs", "dog"), ("cats", "cat"), ("birds", "bird"))


def test_parse_single_space_is_not_a_separator():
    parsed = parse_output("dogs dog")
    assert parsed.pairs == ()
    assert parsed.rejects == ("dogs dog",)


def test_parse_strips_paired_quotes_only():
    parsed = parse_output(
        '"dogs"\t"dog"\n'
        "'cats'\t'cat'\n"
        "`birds`\t`bird`\n"
        "“fish”\t“fish”\n"
        "l'eau\tle\n"
    )
    assert parsed.pairs == (
        ("dogs", "dog"),
        ("cats", "cat"),
        ("birds", "bird"),
        ("fish", "fish"),
        ("l'eau", "le"),  # internal apostrophe untouched
    )


def test_parse_strips_nested_quote_layers():
    parsed = parse_output("\"'dogs'\"\tdog")
    assert parsed.pairs == (("dogs", "dog"),)


def test_parse_rejects_odd_field_counts():
    parsed = parse_output("one\none\ttwo\tthree\nHere is an explanation.\n```tsv")
    assert parsed.pairs == ()
    assert len(parsed.rejects) == 4


def test_parse_skips_blank_lines_and_pads():
    parsed = parse_output("\n  dogs \t dog  \n\n\t\n")
    assert parsed.pairs == (("dogs", "dog"),)
    assert parsed.rejects == ()


def test_parse_drops_empty_fields_from_edges():
    parsed = parse_output("\tdogs\tdog\t")
    assert parsed.pairs == (("dogs", "dog"),)


def test_parse_normalizes_to_nfc():
    decomposed = "café"
    parsed = parse_output(f"{decomposed}\t{decomposed}")
    composed = unicodedata.normalize("NFC", decomposed)
    assert parsed.pairs == ((composed, composed),)
    assert len(parsed.pairs[0][0]) == 4


# --- alignment hand cases ----------------------------------------------------


def test_align_perfect_output():
    result = _aligned("Los\tel\nperros\tperro", ("Los", "el"), ("perros", "perro"))
    assert result.lemmas == ("el", "perro")
    assert result.counts() == {"missing": 0, "wrong": 0, "random": 0}


def test_align_skipped_word_is_missing():
    result = _aligned(
        "Los\tel\ncorren\tcorrer",
        ("Los", "el"),
        ("perros", "perro"),
        ("corren", "correr"),
    )
    assert result.lemmas == ("el", None, "correr")
    assert result.missing_words == (1,)
    assert result.counts() == {"missing": 1, "wrong": 0, "random": 0}


def test_align_case_change_is_wrong_but_scored():
    result = _aligned("los\tel\nperros\tperro", ("Los", "el"), ("perros", "perro"))
    assert result.lemmas == ("el", "perro")  # lemma still lands in the slot
    assert result.wrong_words == (0,)
    assert result.counts() == {"missing": 0, "wrong": 1, "random": 0}


def test_align_one_edit_typo_is_wrong():
    result = _aligned("perro\tperro", ("perros", "perro"))
    assert result.wrong_words == (0,)
    assert result.lemmas == ("perro",)


def test_align_two_edits_is_not_a_match():
    result = _aligned("gato\tgato", ("perros", "perro"))
    assert result.lemmas == (None,)
    assert result.counts() == {"missing": 1, "wrong": 0, "random": 1}


def test_align_unmatched_output_is_random():
    result = _aligned(
        "Los\tel\nextra\textra\nperros\tperro",
        ("Los", "el"),
        ("perros", "perro"),
    )
    assert result.lemmas == ("el", "perro")
    assert result.counts() == {"missing": 0, "wrong": 0, "random": 1}


def test_align_rejected_lines_count_as_random():
    result = _aligned(
        "Sure, here you go:\nLos\tel\nperros\tperro",
        ("Los", "el"),
        ("perros", "perro"),
    )
    assert result.counts() == {"missing": 0, "wrong": 0, "random": 1}


def test_align_duplicated_block_matches_first_copy():
    block = "Los\tel\nperros\tperro"
    result = _aligned(block + "\n" + block, ("Los", "el"), ("perros", "perro"))
    assert result.lemmas == ("el", "perro")
    assert result.counts() == {"missing": 0, "wrong": 0, "random": 2}


def test_align_empty_output_is_all_missing():
    result = _aligned("", ("Los", "el"), ("perros", "perro"))
    assert result.lemmas == (None, None)
    assert result.counts() == {"missing": 2, "wrong": 0, "random": 0}


def test_align_out_of_order_rows_cannot_both_match():
    result = _aligned("perros\tperro\nLos\tel", ("Los", "el"), ("perros", "perro"))
    assert result.counts()["missing"] == 1
    assert result.counts()["random"] == 1
    assert sum(1 for lemma in result.lemmas if lemma is not None) == 1


def test_align_repeated_wordforms_stay_positional():
    result = _aligned(
        "la\tel\nla\tel",
        ("la", "el"),
        ("casa", "casa"),
        ("la", "el"),
    )
    assert result.lemmas == ("el", None, "el")
    assert result.counts() == {"missing": 1, "wrong": 0, "random": 0}


def test_align_sequences_is_monotonic():
    rng = random.Random(7)
    for _ in range(50):
        _, raw, _, _ = make_case(rng)
        parsed = parse_output(raw)
        out_words = [w for w, _ in parsed.pairs]
        in_words = [f"tok{i}{i}end" for i in range(12)]
        matched = align_sequences(out_words, in_words)
        for (o1, i1), (o2, i2) in zip(matched, matched[1:]):
            assert o1 < o2 and i1 < i2


# --- synthetic taxonomy property ---------------------------------------------


def test_alignment_taxonomy_on_synthetic_perturbations():
    rng = random.Random(20240818)
    for case_no in range(300):
        sent, raw, expected_counts, expected_slots = make_case(rng, f"synth-{case_no}")
        result = align(parse_output(raw), sent)
        assert result.counts() == expected_counts, f"case {case_no}: {raw!r}"
        assert result.lemmas == expected_slots, f"case {case_no}: {raw!r}"


# --- prediction and diagnostic files -----------------------------------------


def test_prediction_file_round_trip(tmp_path):
    path = tmp_path / "run0.tsv"
    blocks = [
        ("es-0000", ["Los", "perros"], ["el", None]),
        ("es-0001", ["ladran", "."], ["ladrar", "."]),
    ]
    write_predictions(path, blocks, metadata={"system": "demo", "run": "0"})
    metadata, read = read_predictions(path)
    assert metadata["system"] == "demo" and metadata["run"] == "0"
    assert metadata["format"] == "lemmabench-predictions/1"
    assert [b.sentence_id for b in read] == ["es-0000", "es-0001"]
    assert read[0].pairs == (("Los", "el"), ("perros", None))
    assert read[1].pairs == (("ladran", "ladrar"), (".", "."))


def test_prediction_missing_lemma_is_empty_field(tmp_path):
    path = tmp_path / "run0.tsv"
    write_predictions(path, [("s-0", ["a", "b"], ["x", None])])
    lines = path.read_text("utf-8").splitlines()
    assert "a\tx" in lines and "b\t" in lines


def test_read_predictions_accepts_anonymous_blocks(tmp_path):
    path = tmp_path / "external.tsv"
    path.write_text("Los\tel\nperros\tperro\n\nladran\tladrar\n", "utf-8")
    metadata, blocks = read_predictions(path)
    assert metadata == {}
    assert [b.sentence_id for b in blocks] == [None, None]
    assert blocks[0].pairs == (("Los", "el"), ("perros", "perro"))
    assert blocks[1].pairs == (("ladran", "ladrar"),)


def test_prediction_round_trip_is_byte_stable(tmp_path):
    blocks = [("s-0", ["a"], ["b"])]
    write_predictions(tmp_path / "one.tsv", blocks, metadata={"k": "v"})
    write_predictions(tmp_path / "two.tsv", blocks, metadata={"k": "v"})
    assert (tmp_path / "one.tsv").read_bytes() == (tmp_path / "two.tsv").read_bytes()


def test_diagnostics_round_trip(tmp_path):
    path = tmp_path / "diag.json"
    sentences = {
        "s-0": {"missing": 1, "wrong": 0, "random": 2, "incorrect": 1},
        "s-1": {"missing": 0, "wrong": 0, "random": 0, "incorrect": 0},
    }
    write_diagnostics(path, {"system": "demo"}, sentences)
    metadata, read = read_diagnostics(path)
    assert metadata == {"system": "demo"}
    assert read == sentences
    assert path.read_text("utf-8").endswith("\n")


def test_counts_shape():
    prediction = AlignedPrediction("s-0", ("a", None), (1,), (), 3)
    assert prediction.counts() == {"missing": 1, "wrong": 0, "random": 3}
