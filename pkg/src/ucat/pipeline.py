"""End-to-end helpers shared by the CLI and the HTTP service."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ontology import XSD, Literal, Ontology, Triple, build_ontology, to_triples
from .rus import RusFile, StatementMatcher, compile_matcher, parse_rus
from .typemap import ClassDecl, TypeMap, ValidationReport, parse_types, validate_assignment
from .usecase import (
    EmptyListError,
    EntitySet,
    LineError,
    Statement,
    TupleStatement,
    UseCaseLine,
    expand_multi,
    extract_entities,
    extract_tuples,
    parse_use_case,
    parse_usecase_file,
)

DEFAULT_BASE = "http://www.url.com/Requirements"


@dataclass
class Extraction:
    """Matched + expanded statements with their entities and tuples."""

    statements: list[Statement] = field(default_factory=list)
    errors: list[LineError] = field(default_factory=list)
    entities: EntitySet = field(default_factory=EntitySet)
    tuples: list[TupleStatement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def run_extraction(rus: RusFile, lines: list[UseCaseLine]) -> Extraction:
    """Match every line, expand lists, and collect entities and tuples.

    Lines that fail to match — or whose list is empty — end up in
    ``errors``; the rest of the pipeline still runs on the good lines.
    """
    matcher = compile_matcher(rus)
    matched, errors = parse_use_case(lines, matcher)
    expanded: list[Statement] = []
    for statement in matched:
        try:
            expanded.extend(expand_multi(statement))
        except EmptyListError:
            errors.append(LineError(statement.origin, "EmptyList", ["list has no items"]))
    errors.sort(key=lambda e: e.origin.line_number)
    return Extraction(
        statements=expanded,
        errors=errors,
        entities=extract_entities(expanded),
        tuples=extract_tuples(expanded),
    )


def build_graph(ontology: Ontology) -> frozenset[Triple]:
    return to_triples(ontology)


@dataclass
class PipelineResult:
    extraction: Extraction
    report: ValidationReport
    ontology: Ontology
    graph: frozenset[Triple]


def run_pipeline(
    rus_text: str,
    usecase_text: str,
    types_text: "str | None" = None,
    base: str = DEFAULT_BASE,
    permissive: bool = False,
) -> PipelineResult:
    """Text in, queried-ready graph out; raises on unmatched lines."""
    rus = parse_rus(rus_text)
    extraction = run_extraction(rus, parse_usecase_file(usecase_text))
    if extraction.errors:
        raise PipelineError(extraction.errors)
    classes: list[ClassDecl] = []
    typemap = TypeMap()
    if types_text is not None:
        classes, typemap = parse_types(types_text)
    report = validate_assignment(extraction.entities.individuals, typemap)
    ontology = build_ontology(
        base, extraction.entities, extraction.tuples, classes, typemap, permissive=permissive
    )
    return PipelineResult(extraction, report, ontology, build_graph(ontology))


class PipelineError(Exception):
    def __init__(self, errors: list[LineError]):
        super().__init__("\n".join(e.render() for e in errors))
        self.errors = errors


def shorten_term(term: "str | Literal", base: str) -> str:
    """Render a query result term: local name under ``base``, else verbatim."""
    if isinstance(term, Literal):
        if term.datatype == XSD + "string":
            return f'"{term.value}"'
        return f'"{term.value}"^^<{term.datatype}>'
    prefix = base + "#"
    if term.startswith(prefix):
        return term[len(prefix):]
    return f"<{term}>"
