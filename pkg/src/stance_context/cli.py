"""Command-line entry point: stats, extract, train, predict, evaluate, ablate.

Options may also come from a JSON config file (``--config``) whose keys are
the long option names with dashes replaced by underscores; flags given on the
command line win over the file. Lexicons not named explicitly are looked up in
``--lexicon-dir`` or $STANCE_LEXICON_DIR; knowledge bases default to the
shipped Clinton/Trump files unless $STANCE_KB_DIR or ``--kb`` says otherwise.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from stance_context import paths
from stance_context.ablation import Setting, format_table, results_to_json, run_ablation, write_table_tsv
from stance_context.context_kb import TargetKnowledge, build_knowledge, load_target_spec, shipped_kb_path
from stance_context.corpus import StanceLabel, corpus_path_schema, corpus_stats, read_corpus
from stance_context.errors import ConfigurationError, StanceError
from stance_context.features import (
    FeatureGroup,
    feature_matrix,
    parse_groups,
    write_feature_table,
)
from stance_context.gnb import GnbModel, fit_matrix
from stance_context.lexicons import RESOURCE_KEYS, LexiconSet, load_lexicons
from stance_context.metrics import evaluate

log = logging.getLogger("stance_context")

COMMANDS = ("stats", "extract", "train", "predict", "evaluate", "ablate")

DEFAULTS = {
    "target": "Hillary Clinton",
    "transfer_target": "Donald Trump",
    "setting": "experiment1",
    "output_dir": ".",
    "jobs": 1,
    "encoding": "utf-8",
    "top": 10,
}

# Input files each subcommand needs.
REQUIRED = {
    "stats": ("corpus",),
    "extract": ("corpus",),
    "train": ("train",),
    "predict": ("model", "corpus"),
    "evaluate": ("gold", "predictions"),
    "ablate": ("train", "test"),
}


@dataclass
class RunConfig:
    command: str
    target: str
    transfer_target: str
    setting: Setting
    output_dir: Path
    jobs: int
    encoding: str
    top: int
    groups: tuple[FeatureGroup, ...] | None = None
    inputs: dict[str, Path] = field(default_factory=dict)
    lexicon_paths: dict[str, Path] = field(default_factory=dict)
    kb: Path | None = None
    rival_kb: Path | None = None
    transfer_kb: Path | None = None

    @classmethod
    def from_options(cls, opts: dict) -> "RunConfig":
        command = opts["command"]
        try:
            setting = Setting(opts["setting"])
        except ValueError:
            raise ConfigurationError(f"unknown setting {opts['setting']!r}") from None

        groups = None
        raw_groups = opts.get("groups")
        if raw_groups:
            if isinstance(raw_groups, str):
                raw_groups = [g for g in raw_groups.replace(",", " ").split() if g]
            groups = parse_groups(raw_groups)
            if FeatureGroup.LABELED_BASED in groups and setting is not Setting.EXPERIMENT2:
                raise ConfigurationError("labeled_based features require --setting experiment2")

        inputs = {}
        for key in ("corpus", "train", "test", "transfer_test", "model", "gold", "predictions"):
            if opts.get(key):
                inputs[key] = Path(opts[key])
        for key in REQUIRED[command]:
            if key not in inputs:
                raise ConfigurationError(f"{command}: --{key.replace('_', '-')} is required")

        jobs = int(opts["jobs"])
        if jobs < 1:
            raise ConfigurationError("--jobs must be at least 1")

        config = cls(
            command=command,
            target=opts["target"],
            transfer_target=opts["transfer_target"],
            setting=setting,
            output_dir=Path(opts["output_dir"]),
            jobs=jobs,
            encoding=opts["encoding"],
            top=int(opts["top"]),
            groups=groups,
            inputs=inputs,
            lexicon_paths=_resolve_lexicons(opts),
            kb=Path(opts["kb"]) if opts.get("kb") else None,
            rival_kb=Path(opts["rival_kb"]) if opts.get("rival_kb") else None,
            transfer_kb=Path(opts["transfer_kb"]) if opts.get("transfer_kb") else None,
        )
        config.validate()
        return config

    def validate(self) -> None:
        to_check = dict(self.inputs)
        to_check.update({f"lexicon {k}": v for k, v in self.lexicon_paths.items()})
        for name in ("kb", "rival_kb", "transfer_kb"):
            if getattr(self, name) is not None:
                to_check[name] = getattr(self, name)
        for name, path in to_check.items():
            if not path.is_file():
                raise ConfigurationError(f"{name}: file not found: {path}")
        if self.command in ("extract", "train", "predict", "ablate") and self.output_dir.exists() \
                and not self.output_dir.is_dir():
            raise ConfigurationError(f"output directory is a file: {self.output_dir}")
        if self.command in ("extract", "train", "ablate"):
            groups = self.groups or self.setting.candidate_groups
            needs = {
                FeatureGroup.AFINN: ("afinn",),
                FeatureGroup.HL: ("hl_positive", "hl_negative"),
                FeatureGroup.LIWC: ("liwc",),
                FeatureGroup.DAL: ("dal",),
            }
            for g in groups:
                for key in needs.get(g, ()):
                    if key not in self.lexicon_paths:
                        raise ConfigurationError(
                            f"feature group {g.value} selected but no {key} lexicon was given "
                            f"(use --{key.replace('_', '-')}, --lexicon-dir or ${paths.LEXICON_DIR_ENV})"
                        )
            if FeatureGroup.CONTEXT_BASED in groups:
                if _kb_for(self.target, self.kb, self.rival_kb) is None:
                    raise ConfigurationError(f"no knowledge base for target {self.target!r}; pass --kb")
                if self.command == "ablate" and "transfer_test" in self.inputs \
                        and _kb_for(self.transfer_target, self.transfer_kb, None) is None:
                    raise ConfigurationError(
                        f"no knowledge base for transfer target {self.transfer_target!r}; pass --transfer-kb"
                    )


def _resolve_lexicons(opts: dict) -> dict[str, Path]:
    found: dict[str, Path] = {}
    directory = opts.get("lexicon_dir") or paths.env_lexicon_dir()
    if directory:
        directory = Path(directory)
        if not directory.is_dir():
            raise ConfigurationError(f"lexicon directory not found: {directory}")
        found.update(paths.scan_lexicon_dir(directory))
    for key in RESOURCE_KEYS:
        if opts.get(key):
            found[key] = Path(opts[key])
    if ("hl_positive" in found) != ("hl_negative" in found):
        raise ConfigurationError("the Hu&Liu lexicon needs both positive and negative wordlists")
    return found


def _kb_for(target: str, explicit: Path | None, rival: Path | None) -> TargetKnowledge | None:
    if explicit is not None:
        return build_knowledge(load_target_spec(explicit, rival))
    directory = paths.env_kb_dir()
    if directory is not None:
        for candidate in sorted(Path(directory).glob("*.json")):
            if json.loads(candidate.read_text(encoding="utf-8")).get("target") == target:
                return build_knowledge(load_target_spec(candidate, rival))
    try:
        return build_knowledge(load_target_spec(shipped_kb_path(target), rival))
    except ConfigurationError:
        return None


class Outputs:
    """Buffers output files and writes them all at the end, atomically."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.files: dict[str, str] = {}

    def add(self, name: str, content: str) -> None:
        self.files[name] = content

    def commit(self) -> list[Path]:
        self.directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name, content in self.files.items():
            target = self.directory / name
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{name}.", suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                    fh.write(content)
                os.replace(tmp, target)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
            written.append(target)
        return written


class App:
    def __init__(self, config: RunConfig, stdout):
        self.config = config
        self.stdout = stdout
        self.outputs = Outputs(config.output_dir)

    def corpus(self, key: str, target: str | None):
        path = self.config.inputs[key]
        schema = corpus_path_schema(path, target=target, encoding=self.config.encoding)
        records = read_corpus(path, schema, encoding=self.config.encoding)
        if not records:
            raise StanceError(f"{path}: no records for target {target!r}")
        log.info("%s: %d records", path, len(records))
        return records

    def lexicons(self) -> LexiconSet:
        return load_lexicons({k: str(v) for k, v in self.config.lexicon_paths.items()})

    def kb(self) -> TargetKnowledge | None:
        return _kb_for(self.config.target, self.config.kb, self.config.rival_kb)

    def transfer_kb(self) -> TargetKnowledge | None:
        return _kb_for(self.config.transfer_target, self.config.transfer_kb, None)

    def groups(self) -> tuple[FeatureGroup, ...]:
        return self.config.groups or self.config.setting.candidate_groups

    def print(self, text: str = "") -> None:
        print(text, file=self.stdout)

    # -- subcommands --------------------------------------------------------

    def stats(self):
        report = corpus_stats(self.corpus("corpus", self.config.target))
        self.print(f"target   {self.config.target}")
        self.print(f"total    {report.total}")
        self.print(f"against  {report.pct_against:.1f}")
        self.print(f"favor    {report.pct_favor:.1f}")
        self.print(f"none     {report.pct_none:.1f}")

    def extract(self):
        records = self.corpus("corpus", self.config.target)
        schema, X = feature_matrix(records, self.groups(), self.lexicons(), self.kb())
        buf = io.StringIO()
        write_feature_table(buf, records, schema, X)
        self.outputs.add("features.tsv", buf.getvalue())
        self.print(f"extracted {X.shape[1]} features for {X.shape[0]} tweets")

    def train(self):
        records = self.corpus("train", self.config.target)
        schema, X = feature_matrix(records, self.groups(), self.lexicons(), self.kb())
        model = fit_matrix(X, [r.stance for r in records], schema)
        self.outputs.add("model.json", model.dumps())
        self.print(f"trained on {len(records)} tweets, {len(schema)} features, "
                   f"classes {' '.join(c.value for c in model.classes)}")

    def predict(self):
        model = GnbModel.loads(self.config.inputs["model"].read_text(encoding="utf-8"))
        groups = tuple(dict.fromkeys(g for g, _ in model.schema))
        if FeatureGroup.LABELED_BASED in groups and self.config.setting is not Setting.EXPERIMENT2:
            raise ConfigurationError("model uses labeled_based features; pass --setting experiment2")
        records = self.corpus("corpus", self.config.target)
        schema, X = feature_matrix(records, groups, self.lexicons(), self.kb())
        if schema != model.schema:
            raise ConfigurationError("extracted feature schema does not match the model")
        joint = model.log_joint(X)
        labels = model.predict_matrix(X)
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
        writer.writerow(["ID", "Stance", *(f"log_joint_{c.value}" for c in model.classes)])
        for record, label, row in zip(records, labels, joint):
            writer.writerow([record.id, label.value, *(repr(float(v)) for v in row)])
        self.outputs.add("predictions.tsv", buf.getvalue())
        self.print(f"predicted {len(records)} tweets")

    def evaluate(self):
        gold = self.corpus("gold", self.config.target)
        predicted = read_predictions(self.config.inputs["predictions"], self.config.encoding)
        missing = [r.id for r in gold if r.id not in predicted]
        if missing:
            raise StanceError(f"no prediction for {len(missing)} tweets (first id {missing[0]})")
        report = evaluate([predicted[r.id] for r in gold], [r.stance for r in gold])
        self.outputs.add("evaluation.json", json.dumps(report.to_dict(), indent=1) + "\n")
        self.print(report.format())

    def ablate(self):
        cfg = self.config
        train = self.corpus("train", cfg.target)
        test = self.corpus("test", cfg.target)
        transfer = transfer_kb = None
        if "transfer_test" in cfg.inputs:
            transfer = self.corpus("transfer_test", cfg.transfer_target)
            transfer_kb = self.transfer_kb()
        started = time.perf_counter()
        results = run_ablation(
            train, test, transfer,
            setting=cfg.setting,
            lexicons=self.lexicons(),
            kb=self.kb(),
            transfer_kb=transfer_kb,
            groups=cfg.groups,
            jobs=cfg.jobs,
        )
        log.info("%d subsets in %.2fs", len(results), time.perf_counter() - started)
        primary_name = cfg.target
        transfer_name = cfg.transfer_target
        buf = io.StringIO()
        write_table_tsv(buf, results, primary_name, transfer_name)
        self.outputs.add("ablation.tsv", buf.getvalue())
        self.outputs.add("ablation.json", results_to_json(results))
        self.print(f"{len(results)} feature-group subsets evaluated ({cfg.setting.value})")
        self.print(format_table(results, cfg.top, primary_name, transfer_name))

    def run(self) -> list[Path]:
        getattr(self, self.config.command)()
        return self.outputs.commit()


def read_predictions(path: Path, encoding: str = "utf-8") -> dict[str, StanceLabel]:
    with open(path, encoding=encoding, newline="") as fh:
        rows = csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE)
        header = [h.strip().lower() for h in next(rows, [])]
        if "id" not in header or "stance" not in header:
            raise StanceError(f"{path}: predictions need 'ID' and 'Stance' columns")
        i_id, i_stance = header.index("id"), header.index("stance")
        out = {}
        for n, row in enumerate(rows, start=1):
            if not row:
                continue
            try:
                out[row[i_id].strip()] = StanceLabel.parse(row[i_stance])
            except (IndexError, ValueError) as exc:
                raise StanceError(f"{path}: row {n}: {exc}") from None
        return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--target", help="target whose tweets are used (default: Hillary Clinton)")
    common.add_argument("--encoding", help="corpus file encoding (default: utf-8)")
    common.add_argument("--setting", choices=[s.value for s in Setting])
    common.add_argument("--groups", help="comma-separated feature groups, e.g. mention,punct_marks,AFINN")
    common.add_argument("--output-dir", help="where output files are written (default: .)")
    common.add_argument("--jobs", type=int, help="parallel workers for ablation")
    common.add_argument("--lexicon-dir", help="directory scanned for lexicon files")
    for key in RESOURCE_KEYS:
        common.add_argument(f"--{key.replace('_', '-')}", metavar="PATH")
    common.add_argument("--kb", metavar="PATH", help="knowledge file for --target")
    common.add_argument("--rival-kb", metavar="PATH", help="knowledge file of the target's rival")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="stance-context", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("stats", parents=[common], argument_default=argparse.SUPPRESS, help="stance distribution of a corpus")
    p.add_argument("--corpus", metavar="TSV")

    p = sub.add_parser("extract", parents=[common], argument_default=argparse.SUPPRESS, help="write the feature table")
    p.add_argument("--corpus", metavar="TSV")

    p = sub.add_parser("train", parents=[common], argument_default=argparse.SUPPRESS, help="fit and save a model")
    p.add_argument("--train", metavar="TSV")

    p = sub.add_parser("predict", parents=[common], argument_default=argparse.SUPPRESS, help="label a corpus with a saved model")
    p.add_argument("--model", metavar="JSON")
    p.add_argument("--corpus", metavar="TSV")

    p = sub.add_parser("evaluate", parents=[common], argument_default=argparse.SUPPRESS, help="score predictions against gold labels")
    p.add_argument("--gold", metavar="TSV")
    p.add_argument("--predictions", metavar="TSV")

    p = sub.add_parser("ablate", parents=[common], argument_default=argparse.SUPPRESS, help="rank every feature-group subset")
    p.add_argument("--train", metavar="TSV")
    p.add_argument("--test", metavar="TSV")
    p.add_argument("--transfer-test", metavar="TSV")
    p.add_argument("--transfer-target", help="target of --transfer-test (default: Donald Trump)")
    p.add_argument("--transfer-kb", metavar="PATH")
    p.add_argument("--top", type=int, help="rows printed (files always hold every subset)")
    return parser


def merge_options(ns: argparse.Namespace) -> dict:
    given = vars(ns)
    from_file = {}
    if "config" in given:
        with open(given["config"], encoding="utf-8") as fh:
            from_file = json.load(fh)
        if not isinstance(from_file, dict):
            raise ConfigurationError("config file must hold a JSON object")
        from_file = {k.replace("-", "_"): v for k, v in from_file.items()}
    return {**DEFAULTS, **from_file, **given}


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if getattr(ns, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=stderr,
    )
    try:
        config = RunConfig.from_options(merge_options(ns))
        written = App(config, stdout).run()
    except (StanceError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"stance-context {ns.command}: error: {exc}", file=stderr)
        return 1
    for path in written:
        log.info("wrote %s", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
