"""Command line entry point.

Subcommands::

    analyze-text  --input statements.csv --out results.csv
    analyze-audio --wav meeting.wav --transcriber "asr-tool --model x"
    live          [--stdin | --wav-stream meeting.wav --transcriber CMD]
    evaluate      --pred results.csv --gold gold.csv
    compare3      --a author.csv --b human.csv --c sa.csv
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import __version__
from .classify import (
    ClassifierConfig,
    ConfigError,
    ExternalClassifierError,
    LexiconError,
    classify_slots,
    default_config,
    load_config,
)
from .core import Polarity, Statement, UnknownLabelError, format_percent, session_summary
from .ingest import (
    AudioFormatError,
    CsvParseError,
    Dictionary,
    SchemaError,
    VadConfig,
    load_dictionary,
    normalize_spelling,
    read_csv,
    read_labels,
    read_live,
    read_wav,
    segment_audio,
    transcribe,
    write_results,
)
from .ingest.transcribe import TranscriptionError
from .metrics import evaluate, venn3
from .pipeline import analyze, analyze_audio, complete_votes

log = logging.getLogger("polarity_ensemble")

GREEN = "\x1b[32m"
RED = "\x1b[31m"
RESET = "\x1b[0m"
SQUARE = "■"

EXPECTED_ERRORS = (
    OSError, SchemaError, CsvParseError, UnknownLabelError, ConfigError, LexiconError,
    ExternalClassifierError, AudioFormatError, ValueError,
)


def marker(label: Polarity, color: bool = True) -> str:
    if not color:
        return {Polarity.POSITIVE: "[+]", Polarity.NEGATIVE: "[-]", Polarity.NEUTRAL: "[ ]"}[label]
    if label is Polarity.POSITIVE:
        return f"{GREEN}{SQUARE}{RESET}"
    if label is Polarity.NEGATIVE:
        return f"{RED}{SQUARE}{RESET}"
    return SQUARE


class Session:
    """Output sinks plus the error bookkeeping that decides the exit status."""

    def __init__(self, out: TextIO, err: TextIO):
        self.out = out
        self.err = err
        self.errors = 0

    def print(self, *lines: str) -> None:
        for line in lines:
            print(line, file=self.out)
        self.out.flush()

    def error(self, message: str) -> None:
        self.errors += 1
        print(f"error: {message}", file=self.err)
        self.err.flush()

    @property
    def status(self) -> int:
        return 1 if self.errors else 0


def _config(args) -> ClassifierConfig:
    if args.config:
        return load_config(args.config)
    return default_config(args.lang)


def _dictionary(args, language: str) -> Optional[Dictionary]:
    if getattr(args, "no_spelling_dictionary", False):
        return None
    if getattr(args, "dictionary", None):
        return Dictionary.load(args.dictionary)
    return load_dictionary(language)


def _summary(session: Session, results) -> None:
    report = session_summary(results)
    session.print(f"analyzed {report.total} statement(s)", *report.lines())


def run_analyze_text(args, session: Session) -> int:
    config = _config(args)
    statements = read_csv(args.input)
    results = analyze(statements, config)
    write_results(results, args.out)
    _summary(session, results)
    return session.status


def run_analyze_audio(args, session: Session) -> int:
    config = _config(args)
    clip = read_wav(Path(args.wav))
    audio = analyze_audio(clip, args.transcriber, config, VadConfig(),
                          _dictionary(args, config.language), max_workers=args.workers)
    for exc in audio.errors:
        session.error(str(exc))
    for r in audio.results:
        session.print(f"[{r.statement.start_time:7.2f}s] {marker(r.combined, args.color)} {r.statement.text}")
    write_results(audio.results, args.out)
    session.print(f"{audio.segments} segment(s), {audio.dropped} without transcription, "
                  f"{len(audio.errors)} failed")
    _summary(session, audio.results)
    return session.status


def _audio_statements(args, config: ClassifierConfig, session: Session):
    clip = read_wav(sys.stdin.buffer if args.wav_stream == "-" else Path(args.wav_stream))
    dictionary = _dictionary(args, config.language)
    next_id = 0
    for seg in segment_audio(clip, VadConfig()):
        try:
            text = transcribe(clip, seg, args.transcriber)
        except TranscriptionError as exc:
            session.error(str(exc))
            continue
        if not text.strip():
            continue
        text = normalize_spelling(text, dictionary, config.language).strip()
        yield Statement(next_id, text, "audio", seg.start_time)
        next_id += 1


def run_live(args, session: Session) -> int:
    config = _config(args)
    if args.wav_stream:
        if not args.transcriber:
            raise ConfigError("--wav-stream needs --transcriber")
        stream = _audio_statements(args, config, session)
    else:
        stream = read_live(sys.stdin)

    rt = config.realtime_slot
    collected: list[Statement] = []
    rt_votes = []
    for st in stream:
        try:
            vote = classify_slots([st], config, [rt])[rt][0]
        except ExternalClassifierError as exc:
            session.error(f"statement {st.id}: {exc}")
            continue
        session.print(f"{marker(vote.label, args.color)} {st.text}")
        collected.append(st)
        rt_votes.append(vote)

    results, failures = complete_votes(collected, rt_votes, config)
    for st, exc in failures:
        session.error(f"statement {st.id}: {exc}")
    if args.out:
        write_results(results, args.out)
    _summary(session, results)
    return session.status


def _write_report(path: Optional[str], payload: dict) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def run_evaluate(args, session: Session) -> int:
    if args.gold:
        pred = read_labels(args.pred, args.pred_column)
        gold = read_labels(args.gold, args.gold_column or "Polarity")
    else:
        pred = read_labels(args.pred, args.pred_column or "combined")
        gold = read_labels(args.pred, args.gold_column or "Polarity")
    if len(pred) != len(gold):
        raise ValueError(f"row count mismatch: {len(pred)} predicted vs {len(gold)} gold rows")
    report = evaluate(gold, pred)
    session.print(report.format_table())
    _write_report(args.report, report.to_dict())
    return session.status


def run_compare3(args, session: Session) -> int:
    names = [n.strip() for n in args.names.split(",")]
    if len(names) != 3:
        raise ValueError("--names takes three comma-separated names")
    labels = [read_labels(p, args.column) for p in (args.a, args.b, args.c)]
    sizes = {len(x) for x in labels}
    if len(sizes) != 1:
        raise ValueError(f"inputs are not aligned: row counts {[len(x) for x in labels]}")

    pairs = [(0, 1), (0, 2), (1, 2)]
    reports = {f"{names[i]}-{names[j]}": evaluate(labels[i], labels[j]) for i, j in pairs}
    width = max(len(k) for k in reports)
    session.print(f"{'true - pred':<{width}}  {'matches':>8}  {'agreement':>9}  {'kappa':>6}")
    for key, rep in reports.items():
        session.print(f"{key:<{width}}  {f'{rep.matches}/{rep.n}':>8}  "
                      f"{rep.accuracy:>9.3f}  {rep.cohen_kappa:>6.3f}")
    for key, rep in reports.items():
        session.print("", f"== {key} ==", rep.format_table())

    venn = venn3(*labels)
    n = venn.total
    session.print(
        "",
        "agreement partition:",
        f"  all three       {venn.all_three} ({format_percent(venn.all_three / n)})",
        f"  only {names[0]}-{names[1]:<8} {venn.only_ab}",
        f"  only {names[0]}-{names[2]:<8} {venn.only_ac}",
        f"  only {names[1]}-{names[2]:<8} {venn.only_bc}",
        f"  none            {venn.none_agree}",
        f"  at least two    {venn.at_least_two}/{n}",
    )
    _write_report(args.report, {
        "names": names,
        "pairs": {k: r.to_dict() for k, r in reports.items()},
        "venn": {
            "all_three": venn.all_three, "only_ab": venn.only_ab, "only_ac": venn.only_ac,
            "only_bc": venn.only_bc, "none_agree": venn.none_agree,
            "at_least_two": venn.at_least_two,
        },
    })
    return session.status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarity-ensemble", description="Statement polarity ensemble")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def classifier_flags(p):
        p.add_argument("--lang", choices=("en", "de"), default="en")
        p.add_argument("--config", help="classifier quartet TOML file")
        p.add_argument("--no-color", dest="color", action="store_false")

    def audio_flags(p):
        p.add_argument("--transcriber", help="speech-to-text command, called with a WAV path")
        p.add_argument("--dictionary", help="spelling dictionary (word<TAB>frequency[<TAB>noun])")
        p.add_argument("--no-spelling-dictionary", action="store_true",
                       help="capitalization-only normalization")

    p = sub.add_parser("analyze-text", help="classify statements from a CSV file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    classifier_flags(p)
    p.set_defaults(func=run_analyze_text)

    p = sub.add_parser("analyze-audio", help="segment, transcribe and classify a WAV file")
    p.add_argument("--wav", required=True)
    p.add_argument("--out", default="results.csv")
    p.add_argument("--workers", type=int, default=4)
    classifier_flags(p)
    audio_flags(p)
    p.set_defaults(func=run_analyze_audio)

    p = sub.add_parser("live", help="real-time feedback on a statement stream")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--stdin", action="store_true", help="one statement per line (default)")
    src.add_argument("--wav-stream", metavar="WAV", help="WAV file or - for standard input")
    p.add_argument("--out", default="results.csv")
    classifier_flags(p)
    audio_flags(p)
    p.set_defaults(func=run_live)

    p = sub.add_parser("evaluate", help="compare predicted labels with gold labels")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold")
    p.add_argument("--pred-column")
    p.add_argument("--gold-column")
    p.add_argument("--report", help="write the metrics as JSON")
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("compare3", help="pairwise agreement of three label sources")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--names", default="a,b,c")
    p.add_argument("--column", help="label column name (default: first of Polarity, combined, label)")
    p.add_argument("--report", help="write the metrics as JSON")
    p.set_defaults(func=run_compare3)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    session = Session(stdout or sys.stdout, stderr or sys.stderr)
    try:
        return args.func(args, session)
    except EXPECTED_ERRORS as exc:
        session.error(str(exc))
        return 1
    except KeyboardInterrupt:
        session.error("interrupted")
        return 130
