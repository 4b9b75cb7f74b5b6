"""Experiment orchestration: staged pipeline over a JSON configuration.

Stages mirror the CLI subcommands and communicate only through files in
the output directory, so any stage can be rerun in isolation:

    corpora/      canonical two-column TSV of the ingested corpus
    splits/       train/dev/test TSVs plus a membership manifest
    inventory/    edit-script label inventory induced from train
    models/       frequency-table baseline model (+ its dev diagnostics)
    predictions/  per system: {corpus}.run{r}.tsv and .diag.json
    reports/      scores.tsv, mcnemar.tsv, report.txt

No artifact embeds a timestamp or an absolute path, so rerunning an
experiment from the same inputs reproduces every file byte for byte.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from . import baseline as baseline_mod
from . import corpus as corpus_mod
from . import editscript as editscript_mod
from . import evaluation as eval_mod
from . import gateway as gateway_mod
from . import prompt as prompt_mod
from .align import (
    PredictionBlock,
    align as align_prediction,
    parse_output,
    read_diagnostics,
    read_predictions,
    write_diagnostics,
    write_predictions,
)
from .errors import ConfigError, ScoringError

CONLLU = "conllu"
TSV = "tsv"

BASELINE = "baseline"
LLM = "llm"
EXTERNAL = "external"


@dataclass(frozen=True)
class SystemSpec:
    """One system under evaluation; exactly one kind of source."""

    name: str
    kind: str
    prompt: prompt_mod.PromptSpec | None = None
    manual_ids: tuple[str, ...] = ()
    dev_diagnostics: str | None = None  # path; default is the baseline dev run
    predictions: tuple[str, ...] = ()  # external files, one per run or one shared


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    language: str
    corpus_path: str
    corpus_format: str
    corpus_name: str
    split: corpus_mod.SplitSpec
    reduce_to: int | None
    reduce_rule: str
    reduce_seed: int
    max_suffix_len: int
    systems: tuple[SystemSpec, ...]
    provider: gateway_mod.ProviderConfig
    runs: int
    parallelism: int
    cache_dir: str
    cache_mode: str
    out_dir: str
    policy: str
    alpha: float
    mcnemar_run: int
    comparisons: tuple[tuple[str, str], ...]
    config_hash: str


def _hash_config(raw: dict) -> str:
    blob = json.dumps(raw, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


def _parse_system(entry: dict, base: Path, runs: int, language: str) -> SystemSpec:
    try:
        name, kind = entry["name"], entry["kind"]
    except KeyError as exc:
        raise ConfigError(f"system entry missing {exc}") from exc
    if kind == BASELINE:
        return SystemSpec(name=name, kind=kind)
    if kind == LLM:
        spec = prompt_mod.PromptSpec(**{"language_name": language, **entry.get("prompt", {})})
        diag = entry.get("dev_diagnostics")
        return SystemSpec(
            name=name,
            kind=kind,
            prompt=spec,
            manual_ids=tuple(entry.get("manual_ids", [])),
            dev_diagnostics=str(base / diag) if diag else None,
        )
    if kind == EXTERNAL:
        paths = entry.get("predictions")
        if not paths:
            raise ConfigError(f"external system {name} needs a predictions path list")
        if isinstance(paths, str):
            paths = [paths]
        if len(paths) not in (1, runs):
            raise ConfigError(f"external system {name}: give 1 or {runs} prediction files")
        return SystemSpec(name=name, kind=kind, predictions=tuple(str(base / p) for p in paths))
    raise ConfigError(f"system {name}: unknown kind {kind!r}")


def load_config(
    path: str | Path, out_dir: str | None = None, cache_mode: str | None = None
) -> ExperimentConfig:
    """Load and validate a JSON experiment config.

    Relative paths are resolved against the config file's directory;
    out_dir and cache_mode accept command-line overrides.
    """
    path = Path(path)
    base = path.parent
    try:
        raw = json.loads(path.read_text("utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    try:
        corpus_raw = raw["corpus"]
        split_raw = raw["split"]
    except KeyError as exc:
        raise ConfigError(f"config missing section {exc}") from exc

    corpus_format = corpus_raw.get("format", CONLLU)
    if corpus_format not in (CONLLU, TSV):
        raise ConfigError(f"unknown corpus format {corpus_format!r}")

    split = corpus_mod.SplitSpec(
        train_count=split_raw["train"],
        dev_count=split_raw["dev"],
        test_count=split_raw["test"],
        selection_rule=split_raw.get("rule", corpus_mod.FIRST_N),
        seed=split_raw.get("seed", 0),
    )
    reduce_raw = raw.get("reduce", {})
    runs = int(raw.get("runs", 1))
    if runs < 1:
        raise ConfigError("runs must be >= 1")

    language = raw.get("language", "English")
    systems = tuple(_parse_system(e, base, runs, language) for e in raw.get("systems", []))
    if len({s.name for s in systems}) != len(systems):
        raise ConfigError("system names must be unique")

    provider = gateway_mod.ProviderConfig(**raw.get("provider", {}))
    scoring = raw.get("scoring", {})
    comparisons_raw = raw.get("comparisons", "all-pairs")
    if comparisons_raw == "all-pairs":
        comparisons = tuple(itertools.combinations([s.name for s in systems], 2))
    else:
        comparisons = tuple((a, b) for a, b in comparisons_raw)
    known = {s.name for s in systems}
    for a, b in comparisons:
        if a not in known or b not in known:
            raise ConfigError(f"comparison ({a}, {b}) names an unknown system")

    mode = cache_mode or raw.get("cache_mode", gateway_mod.REPLAY)
    return ExperimentConfig(
        name=raw.get("name", path.stem),
        language=language,
        corpus_path=str(base / corpus_raw["path"]),
        corpus_format=corpus_format,
        corpus_name=corpus_raw.get("name", Path(corpus_raw["path"]).stem),
        split=split,
        reduce_to=reduce_raw.get("max_sentences"),
        reduce_rule=reduce_raw.get("rule", corpus_mod.FIRST_N),
        reduce_seed=reduce_raw.get("seed", 0),
        max_suffix_len=int(raw.get("baseline", {}).get("max_suffix_len", 5)),
        systems=systems,
        provider=provider,
        runs=runs,
        parallelism=int(raw.get("parallelism", 4)),
        cache_dir=str(base / raw.get("cache_dir", "cache")),
        cache_mode=mode,
        out_dir=str(Path(out_dir) if out_dir else base / raw.get("out_dir", "out")),
        policy=scoring.get("policy", eval_mod.STRICT),
        alpha=float(scoring.get("alpha", 0.05)),
        mcnemar_run=int(scoring.get("mcnemar_run", 0)),
        comparisons=comparisons,
        config_hash=_hash_config(raw),
    )


class Layout:
    """All output paths in one place, derived from the experiment config."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.root = Path(cfg.out_dir)

    def corpus_tsv(self) -> Path:
        return self.root / "corpora" / f"{self.cfg.corpus_name}.tsv"

    def split_tsv(self, part: str) -> Path:
        return self.root / "splits" / f"{self.cfg.corpus_name}-{part}.tsv"

    def manifest(self) -> Path:
        return self.root / "splits" / "manifest.tsv"

    def inventory(self) -> Path:
        return self.root / "inventory" / f"{self.cfg.corpus_name}.tsv"

    def model(self) -> Path:
        return self.root / "models" / "baseline.tsv"

    def predictions(self, system: str, corpus: str, run: int) -> Path:
        return self.root / "predictions" / system / f"{corpus}.run{run}.tsv"

    def diagnostics(self, system: str, corpus: str, run: int) -> Path:
        return self.root / "predictions" / system / f"{corpus}.run{run}.diag.json"

    def scores(self) -> Path:
        return self.root / "reports" / "scores.tsv"

    def mcnemar(self) -> Path:
        return self.root / "reports" / "mcnemar.tsv"

    def report(self) -> Path:
        return self.root / "reports" / "report.txt"


def _meta(cfg: ExperimentConfig, **extra: str) -> dict[str, str]:
    meta = {"experiment": cfg.name, "config_hash": cfg.config_hash}
    meta.update(extra)
    return meta


def _header_lines(meta: dict[str, str]) -> list[str]:
    return [f"{k} = {v}" for k, v in meta.items()]


def run_ingest(cfg: ExperimentConfig) -> corpus_mod.Corpus:
    """Read the source corpus, optionally cap its size, write canonical TSV."""
    if cfg.corpus_format == CONLLU:
        corpus = corpus_mod.ingest_conllu(cfg.corpus_path, cfg.corpus_name, cfg.language)
    else:
        corpus = corpus_mod.ingest_tsv(cfg.corpus_path, cfg.corpus_name, cfg.language)
    if cfg.reduce_to is not None:
        corpus = corpus_mod.reduce_corpus(corpus, cfg.reduce_to, cfg.reduce_rule, cfg.reduce_seed)
    layout = Layout(cfg)
    meta = _meta(cfg, source=Path(cfg.corpus_path).name, language=cfg.language)
    corpus_mod.write_tsv(corpus, layout.corpus_tsv(), header_lines=_header_lines(meta))
    return corpus


def _load_corpus(cfg: ExperimentConfig) -> corpus_mod.Corpus:
    return corpus_mod.ingest_tsv(Layout(cfg).corpus_tsv(), cfg.corpus_name, cfg.language)


def _load_split(cfg: ExperimentConfig, part: str) -> corpus_mod.Corpus:
    return corpus_mod.ingest_tsv(
        Layout(cfg).split_tsv(part), f"{cfg.corpus_name}-{part}", cfg.language
    )


def run_split(cfg: ExperimentConfig) -> dict[str, corpus_mod.Corpus]:
    corpus = _load_corpus(cfg)
    train, dev, test = corpus_mod.make_splits(corpus, cfg.split)
    layout = Layout(cfg)
    splits = {"train": train, "dev": dev, "test": test}
    for part, sub in splits.items():
        meta = _meta(cfg, split=part, rule=cfg.split.selection_rule, seed=str(cfg.split.seed))
        corpus_mod.write_tsv(sub, layout.split_tsv(part), header_lines=_header_lines(meta))
    corpus_mod.write_split_manifest(
        {s.name: s for s in (train, dev, test)},
        layout.manifest(),
        header_lines=_header_lines(_meta(cfg)),
    )
    return splits


def run_induce(cfg: ExperimentConfig) -> editscript_mod.LabelInventory:
    train = _load_split(cfg, "train")
    inventory = editscript_mod.build_inventory(train)
    editscript_mod.write_inventory(inventory, Layout(cfg).inventory())
    return inventory


def _write_system_run(
    cfg: ExperimentConfig,
    system: str,
    gold: corpus_mod.Corpus,
    run: int,
    lemmas_by_id: dict[str, tuple[str | None, ...]],
    counts_by_id: dict[str, dict[str, int]],
    extra_meta: dict[str, str] | None = None,
):
    """Write one run's prediction file and its diagnostics sidecar."""
    layout = Layout(cfg)
    blocks = []
    sentences: dict[str, dict[str, int]] = {}
    for sentence in gold.sentences:
        slots = lemmas_by_id[sentence.id]
        blocks.append((sentence.id, sentence.wordforms(), list(slots)))
        counts = dict(counts_by_id.get(sentence.id, {}))
        incorrect = sum(
            1
            for predicted, token in zip(slots, sentence.tokens)
            if predicted is not None and predicted != token.lemma
        )
        counts.setdefault("missing", sum(s is None for s in slots))
        counts.setdefault("wrong", 0)
        counts.setdefault("random", 0)
        counts["incorrect"] = incorrect
        sentences[sentence.id] = counts
    meta = _meta(cfg, system=system, corpus=gold.name, run=str(run), **(extra_meta or {}))
    path = layout.predictions(system, gold.name, run)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_predictions(path, blocks, metadata=meta)
    write_diagnostics(layout.diagnostics(system, gold.name, run), meta, sentences)


def run_train_baseline(cfg: ExperimentConfig) -> baseline_mod.BaselineModel:
    """Train the baseline and score it on dev for later example selection."""
    layout = Layout(cfg)
    train = _load_split(cfg, "train")
    dev = _load_split(cfg, "dev")
    inventory = editscript_mod.read_inventory(layout.inventory())
    model = baseline_mod.train(train, inventory, cfg.max_suffix_len)
    baseline_mod.write_model(model, layout.model())
    lemmas = {
        s.id: tuple(baseline_mod.predict(model, s)) for s in dev.sentences
    }
    _write_system_run(cfg, BASELINE, dev, 0, lemmas, {})
    return model


def _default_dev_diagnostics(cfg: ExperimentConfig) -> Path:
    return Layout(cfg).diagnostics(BASELINE, f"{cfg.corpus_name}-dev", 0)


def _select_examples(
    cfg: ExperimentConfig, system: SystemSpec, dev: corpus_mod.Corpus
) -> list[prompt_mod.FewShotExample]:
    spec = system.prompt
    diagnostics = None
    if spec.shots and spec.selection == prompt_mod.MOST_ERRORS:
        diag_path = system.dev_diagnostics or _default_dev_diagnostics(cfg)
        _, diagnostics = read_diagnostics(diag_path)
    return prompt_mod.select_examples(
        spec.selection,
        spec.shots,
        dev,
        dev_diagnostics=diagnostics,
        seed=spec.seed,
        manual_ids=list(system.manual_ids) or None,
    )


def select_system_examples(
    cfg: ExperimentConfig, system: SystemSpec, dev: corpus_mod.Corpus
) -> list[prompt_mod.FewShotExample]:
    """Public wrapper so callers can reproduce a system's exact prompts."""
    return _select_examples(cfg, system, dev)


def _run_llm_system(
    cfg: ExperimentConfig,
    system: SystemSpec,
    test: corpus_mod.Corpus,
    dev: corpus_mod.Corpus,
    gateway: gateway_mod.LlmGateway,
):
    examples = _select_examples(cfg, system, dev)
    prompts = [
        prompt_mod.render_prompt(system.prompt, examples, sentence)
        for sentence in test.sentences
    ]
    batch = gateway.run_batch(prompts, runs=cfg.runs, parallelism=cfg.parallelism)
    for run in range(cfg.runs):
        lemmas_by_id: dict[str, tuple[str | None, ...]] = {}
        counts_by_id: dict[str, dict[str, int]] = {}
        failed = batch.failed_items(run)
        for idx, sentence in enumerate(test.sentences):
            if idx in failed:
                # A sentence whose request failed scores as all missing
                # rather than silently vanishing from the denominator.
                lemmas_by_id[sentence.id] = tuple([None] * len(sentence.tokens))
                counts_by_id[sentence.id] = {
                    "missing": len(sentence.tokens), "wrong": 0, "random": 0,
                }
                continue
            response = batch.responses[run][idx]
            aligned = align_prediction(parse_output(response.raw_text), sentence)
            lemmas_by_id[sentence.id] = aligned.lemmas
            counts_by_id[sentence.id] = aligned.counts()
        extra = {
            "model": cfg.provider.model,
            "template_version": prompt_mod.TEMPLATE_VERSION,
            "failures": str(len(failed)),
        }
        _write_system_run(cfg, system.name, test, run, lemmas_by_id, counts_by_id, extra)


def _run_external_system(cfg: ExperimentConfig, system: SystemSpec, test: corpus_mod.Corpus):
    for run in range(cfg.runs):
        source = system.predictions[run if len(system.predictions) > 1 else 0]
        _, blocks = read_predictions(source)
        slots = blocks_to_slots(blocks, test)
        _write_system_run(cfg, system.name, test, run, slots, {})


def run_predictions(cfg: ExperimentConfig, transport: gateway_mod.Transport | None = None) -> None:
    """Produce prediction files for every configured system and run."""
    layout = Layout(cfg)
    test = _load_split(cfg, "test")
    dev = _load_split(cfg, "dev")
    gateway = None
    for system in cfg.systems:
        if system.kind == BASELINE:
            model = baseline_mod.read_model(layout.model())
            lemmas = {s.id: tuple(baseline_mod.predict(model, s)) for s in test.sentences}
            for run in range(cfg.runs):
                # Deterministic system: every run is the same honest pass.
                _write_system_run(cfg, system.name, test, run, lemmas, {})
        elif system.kind == EXTERNAL:
            _run_external_system(cfg, system, test)
        elif system.kind == LLM:
            if gateway is None:
                cache = gateway_mod.ResponseCache(cfg.cache_dir)
                gateway = gateway_mod.LlmGateway(
                    cfg.provider, cache, cfg.cache_mode, transport=transport
                )
            _run_llm_system(cfg, system, test, dev, gateway)
        else:  # pragma: no cover - rejected at config load
            raise ConfigError(f"unknown system kind {system.kind!r}")


def blocks_to_slots(
    blocks: list[PredictionBlock], gold: corpus_mod.Corpus
) -> dict[str, tuple[str | None, ...]]:
    """Map prediction blocks onto gold sentences by id, else by order."""
    with_ids = [b for b in blocks if b.sentence_id is not None]
    if with_ids and len(with_ids) != len(blocks):
        raise ScoringError("prediction file mixes sent_id blocks with anonymous blocks")
    if with_ids:
        return {b.sentence_id: tuple(l for _, l in b.pairs) for b in blocks}
    if len(blocks) != len(gold.sentences):
        raise ScoringError(
            f"{len(blocks)} anonymous prediction blocks for {len(gold.sentences)} sentences"
        )
    return {
        s.id: tuple(l for _, l in b.pairs) for s, b in zip(gold.sentences, blocks)
    }


def _load_run(
    cfg: ExperimentConfig, system: str, gold: corpus_mod.Corpus, run: int
) -> tuple[dict[str, tuple[str | None, ...]], dict[str, dict]]:
    layout = Layout(cfg)
    _, blocks = read_predictions(layout.predictions(system, gold.name, run))
    slots = blocks_to_slots(blocks, gold)
    diag_path = layout.diagnostics(system, gold.name, run)
    diag = read_diagnostics(diag_path)[1] if diag_path.exists() else {}
    return slots, diag


def run_score(cfg: ExperimentConfig) -> list[eval_mod.EvalReport]:
    test = _load_split(cfg, "test")
    reports = []
    for system in cfg.systems:
        runs = []
        for run in range(cfg.runs):
            slots, diag = _load_run(cfg, system.name, test, run)
            runs.append(eval_mod.score_run(slots, test, cfg.policy, diag))
        reports.append(eval_mod.EvalReport(system.name, test.name, tuple(runs)))
    layout = Layout(cfg)
    layout.scores().parent.mkdir(parents=True, exist_ok=True)
    meta = _meta(cfg, policy=cfg.policy, runs=str(cfg.runs))
    layout.scores().write_text(eval_mod.render_scores_tsv(reports, meta), "utf-8")
    return reports


def run_compare(cfg: ExperimentConfig) -> list[tuple[str, str, str, eval_mod.McNemarResult]]:
    """McNemar's test over configured system pairs, on one agreed run."""
    test = _load_split(cfg, "test")
    vectors: dict[str, list[bool]] = {}
    for system in cfg.systems:
        slots, _ = _load_run(cfg, system.name, test, cfg.mcnemar_run)
        vectors[system.name] = eval_mod.correctness_vector(slots, test)
    rows = [
        (test.name, a, b, eval_mod.mcnemar(vectors[a], vectors[b]))
        for a, b in cfg.comparisons
    ]
    layout = Layout(cfg)
    layout.mcnemar().parent.mkdir(parents=True, exist_ok=True)
    meta = _meta(cfg, run=str(cfg.mcnemar_run), alpha=str(cfg.alpha))
    layout.mcnemar().write_text(eval_mod.render_mcnemar_tsv(rows, meta, cfg.alpha), "utf-8")
    return rows


def run_report(cfg: ExperimentConfig) -> str:
    reports = run_score(cfg)
    rows = run_compare(cfg) if cfg.comparisons else []
    meta = _meta(cfg, corpus=cfg.corpus_name, language=cfg.language, policy=cfg.policy)
    text = eval_mod.render_report_text(reports, rows, meta, cfg.alpha)
    layout = Layout(cfg)
    layout.report().parent.mkdir(parents=True, exist_ok=True)
    layout.report().write_text(text, "utf-8")
    return text
