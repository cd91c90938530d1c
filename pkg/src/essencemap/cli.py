"""Command-line surface and report rendering.

Commands: ``map`` (full context-to-context report), ``score`` (detail view
for one concept pair), ``parse`` (corpus validation), ``version``.  Exit
codes: 0 success, 1 usage error, 2 parse/read error, 3 reference error.
Reports are byte-identical across runs for identical inputs; diagnostics
go to the error stream, never into the report.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .concepts import (
    AttrRef,
    Concept,
    SemanticContext,
    equivalent,
    independent,
    related,
    similarity,
    sub_concept,
    super_concept,
)
from .corpus import AnnotationTable, load_annotations, load_concepts, load_lexicon
from .errors import (
    CorpusSyntaxError,
    EmptyContextError,
    EssenceMapError,
    NoAttributesError,
    UnannotatedPairError,
    UnknownReferenceError,
)
from .lta import EMPTY_LEXICON, MODES, NO_VERB_MARKER, extract_spo
from .mapper import MapConfig, MappingReport, map_contexts
from .matching import candidate_pairs, max_matching

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_REFERENCE = 3

OUTPUT_FORMATS = ("table", "tsv", "jsonl")

TSV_HEADER = "left\tright\tsimilarity_pct\trelation\tmatches"


class UsageError(Exception):
    """Bad invocation; maps to exit code 1."""


def format_pct(value: Fraction) -> str:
    """Render a percentage to one decimal, rounding halves up."""
    tenths = value * 10 + Fraction(1, 2)
    scaled = tenths.numerator // tenths.denominator
    return f"{scaled // 10}.{scaled % 10}"


def _matches_cell(result) -> str:
    return ",".join(f"{p.left.attr}-{p.right.attr}" for p in result.match_set.pairs)


def render_table(report: MappingReport) -> str:
    lines = [
        f"mapping {report.practice_context} -> {report.framework_context}"
        f"  (mode {report.mode}, threshold {report.threshold})",
        "",
    ]
    for result in report.results:
        left = result.left.partition("/")[2]
        right = result.right.partition("/")[2]
        matches = " ".join(f"{p.left.attr}-{p.right.attr}" for p in result.match_set.pairs)
        lines.append(
            f"{left} -> {right}  {format_pct(result.similarity_pct)}%"
            f"  {result.relation}  [{matches or '-'}]"
        )
    lines.append("")
    lines.append("best matches:")
    for best in report.best_matches:
        lines.append(f"{best.practice} -> {best.framework}  {format_pct(best.similarity_pct)}%")
    return "\n".join(lines) + "\n"


def render_tsv(report: MappingReport) -> str:
    lines = [TSV_HEADER]
    for result in report.results:
        lines.append(
            "\t".join(
                (
                    result.left,
                    result.right,
                    format_pct(result.similarity_pct),
                    result.relation,
                    _matches_cell(result),
                )
            )
        )
    lines.append("")
    lines.append("practice\tbest_framework\tsimilarity_pct")
    for best in report.best_matches:
        lines.append(f"{best.practice}\t{best.framework}\t{format_pct(best.similarity_pct)}")
    return "\n".join(lines) + "\n"


def render_jsonl(report: MappingReport) -> str:
    lines = []
    for result in report.results:
        lines.append(
            json.dumps(
                {
                    "left": result.left,
                    "right": result.right,
                    "similarity_pct": float(format_pct(result.similarity_pct)),
                    "relation": result.relation,
                    "matches": [f"{p.left.attr}-{p.right.attr}" for p in result.match_set.pairs],
                }
            )
        )
    for best in report.best_matches:
        lines.append(
            json.dumps(
                {
                    "practice": best.practice,
                    "best_match": best.framework,
                    "similarity_pct": float(format_pct(best.similarity_pct)),
                }
            )
        )
    return "\n".join(lines) + "\n"


_RENDERERS = {"table": render_table, "tsv": render_tsv, "jsonl": render_jsonl}


@dataclass(frozen=True)
class CliConfig:
    """Resolved options for the ``map`` command."""

    practice: Path
    framework: Path
    lexicon: Optional[Path] = None
    annotations: Optional[Path] = None
    mode: str = "hybrid"
    threshold: int = 2
    out_format: str = "table"
    out: Optional[Path] = None


def _load_map_config(config: CliConfig) -> tuple[SemanticContext, SemanticContext, MapConfig]:
    if config.mode == "annotated" and config.annotations is None:
        raise UsageError("--mode annotated requires --annotations")
    practice = load_concepts(config.practice)
    framework = load_concepts(config.framework)
    lexicon = load_lexicon(config.lexicon) if config.lexicon else EMPTY_LEXICON
    annotations = None
    if config.annotations:
        annotations = load_annotations(config.annotations, (practice, framework))
    return practice, framework, MapConfig(lexicon, annotations, config.mode, config.threshold)


def cmd_map(config: CliConfig) -> tuple[str, list[str]]:
    """Run the full pipeline; returns (rendered report, diagnostics)."""
    practice, framework, map_config = _load_map_config(config)
    report = map_contexts(practice, framework, map_config)
    diagnostics = sorted({note for result in report.results for note in result.diagnostics})
    return _RENDERERS[config.out_format](report), diagnostics


def cmd_parse(path: Path, show_spo: bool = False, lexicon_path: Optional[Path] = None) -> str:
    """Validate a concept file; optionally show each statement's split."""
    context = load_concepts(path)
    lexicon = load_lexicon(lexicon_path) if lexicon_path else EMPTY_LEXICON
    n_concepts = len(context.concepts)
    n_attrs = sum(len(c.attributes) for c in context.concepts)
    lines = [
        f"{context.id}: {n_concepts} concept{'s' if n_concepts != 1 else ''},"
        f" {n_attrs} attribute{'s' if n_attrs != 1 else ''}"
    ]
    if show_spo:
        for concept in context.concepts:
            lines.append(f"concept {concept.name}")
            for attr in concept.attributes:
                spo = extract_spo(attr, concept.name, lexicon)
                predicate = " ".join(spo.predicate)
                lines.append(
                    f"  {attr.id}: subject={' '.join(spo.subject)}"
                    f" | predicate={predicate}"
                    f" | object={' '.join(spo.object_part)}"
                )
    return "\n".join(lines) + "\n"


def _resolve_concept(reference: str, contexts: dict[str, SemanticContext]) -> tuple[str, Concept]:
    context_id, sep, name = reference.partition("/")
    if not sep or not context_id or not name:
        raise UsageError(f"expected <ctx>/<ConceptName>, got {reference!r}")
    context = contexts.get(context_id)
    if context is None:
        raise UnknownReferenceError(f"unknown context {context_id!r} in {reference!r}")
    try:
        return context_id, context.concept(name)
    except KeyError:
        raise UnknownReferenceError(f"unknown concept {name!r} in {reference!r}") from None


def cmd_score(left_ref: str, right_ref: str, config: CliConfig) -> str:
    """Detail view for one concept pair: matrix, matching, predicates."""
    practice, framework, map_config = _load_map_config(config)
    contexts = {practice.id: practice}
    contexts.setdefault(framework.id, framework)
    left_ctx, left_concept = _resolve_concept(left_ref, contexts)
    right_ctx, right_concept = _resolve_concept(right_ref, contexts)
    if not left_concept.attributes:
        raise NoAttributesError(f"concept {left_ref} has no attributes")
    if not right_concept.attributes:
        raise NoAttributesError(f"concept {right_ref} has no attributes")

    scorer = map_config.make_scorer()
    lines = [
        f"pair: {left_ctx}/{left_concept.name} vs {right_ctx}/{right_concept.name}"
        f"  (mode {map_config.mode}, threshold {map_config.threshold})",
        "",
        "level matrix:",
    ]
    for attr1 in left_concept.attributes:
        for attr2 in right_concept.attributes:
            level = scorer.level(
                AttrRef(left_ctx, left_concept.name, attr1.id),
                attr1,
                AttrRef(right_ctx, right_concept.name, attr2.id),
                attr2,
            )
            lines.append(f"{attr1.id} {attr2.id} {level}")

    candidates = candidate_pairs(
        left_ctx, left_concept, right_ctx, right_concept, scorer, map_config.threshold
    )
    lines.append("")
    lines.append(f"candidates (level >= {map_config.threshold}):")
    for pair in candidates:
        lines.append(f"{pair.left.attr} {pair.right.attr} {pair.level}")
    if not candidates:
        lines.append("(none)")

    match = max_matching(candidates, len(left_concept.attributes), len(right_concept.attributes))
    rendered = " ".join(f"{p.left.attr}-{p.right.attr}" for p in match.pairs)
    lines.append("")
    lines.append(f"matching: {rendered or '(empty)'}")

    k = len(match.pairs)
    union = len(left_concept.attributes) + len(right_concept.attributes) - k
    pct = similarity(left_concept, right_concept, match)
    lines.append(f"similarity: {k}/{union} = {format_pct(pct)}%")

    lines.append("")
    lines.append("relations:")
    predicates = (
        ("related", related),
        ("independent", independent),
        ("equivalent", equivalent),
        ("sub-concept", sub_concept),
        ("super-concept", super_concept),
    )
    values = {label: fn(left_concept, right_concept, match) for label, fn in predicates}
    for label, _ in predicates:
        lines.append(f"{label}: {'yes' if values[label] else 'no'}")
    headline = next(
        (label for label in ("equivalent", "sub-concept", "super-concept", "related") if values[label]),
        "independent",
    )

    lines.append("")
    lines.append(
        f"{left_concept.name} -> {right_concept.name}  {format_pct(pct)}%  {headline}"
    )
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(f"{message}\n{self.format_usage()}".rstrip())


def _add_corpus_options(parser: argparse.ArgumentParser, *, framework_required: bool):
    parser.add_argument("--practice", required=True, type=Path, help="practice concept file")
    parser.add_argument(
        "--framework",
        required=framework_required,
        type=Path,
        help="framework concept file" + ("" if framework_required else " (defaults to --practice)"),
    )
    parser.add_argument("--lexicon", type=Path, help="lexicon file (syn:/stop:/verb: lines)")
    parser.add_argument("--annotations", type=Path, help="annotation table file")
    parser.add_argument("--mode", choices=MODES, default="hybrid")
    parser.add_argument("--threshold", type=int, choices=(1, 2, 3), default=2)


def build_parser() -> _Parser:
    parser = _Parser(prog="essencemap", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    map_parser = sub.add_parser("map", help="map a practice context onto a framework context")
    _add_corpus_options(map_parser, framework_required=True)
    map_parser.add_argument("--format", choices=OUTPUT_FORMATS, default="table", dest="out_format")
    map_parser.add_argument("--out", type=Path, help="write the report here instead of stdout")

    parse_parser = sub.add_parser("parse", help="validate a concept file")
    parse_parser.add_argument("path", type=Path)
    parse_parser.add_argument("--show-spo", action="store_true")
    parse_parser.add_argument("--lexicon", type=Path)

    score_parser = sub.add_parser("score", help="detail view for one concept pair")
    score_parser.add_argument("--left", required=True, help="<ctx>/<ConceptName>")
    score_parser.add_argument("--right", required=True, help="<ctx>/<ConceptName>")
    _add_corpus_options(score_parser, framework_required=False)

    sub.add_parser("version", help="print the package version")
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        practice=args.practice,
        framework=args.framework if args.framework else args.practice,
        lexicon=args.lexicon,
        annotations=args.annotations,
        mode=args.mode,
        threshold=args.threshold,
        out_format=getattr(args, "out_format", "table"),
        out=getattr(args, "out", None),
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().rstrip())
        if args.command == "version":
            print(f"essencemap {__version__}")
            return EXIT_OK
        if args.command == "parse":
            sys.stdout.write(cmd_parse(args.path, args.show_spo, args.lexicon))
            return EXIT_OK
        if args.command == "score":
            sys.stdout.write(cmd_score(args.left, args.right, _config_from_args(args)))
            return EXIT_OK
        config = _config_from_args(args)
        rendered, diagnostics = cmd_map(config)
        for note in diagnostics:
            print(note, file=sys.stderr)
        if config.out is not None:
            config.out.write_text(rendered, encoding="utf-8")
        else:
            sys.stdout.write(rendered)
        return EXIT_OK
    except UsageError as exc:
        print(f"essencemap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownReferenceError, UnannotatedPairError) as exc:
        print(f"essencemap: {exc}", file=sys.stderr)
        return EXIT_REFERENCE
    except (CorpusSyntaxError, NoAttributesError, EmptyContextError) as exc:
        print(f"essencemap: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"essencemap: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
