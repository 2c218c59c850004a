"""Pattern catalogs: named ASK queries matched against an ontology graph.

A catalog is a set of ``.rq`` files, each carrying a ``# pattern: <name>``
header comment (and optionally ``# description: ...``) above an ASK query.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .ontology import Triple
from .query import GroupPattern, Query, eval_ask, parse_query


class CatalogError(Exception):
    def __init__(self, message: str, source: str):
        super().__init__(f"{source}: {message}")
        self.source = source


class MissingPatternHeader(CatalogError):
    pass


class DuplicatePatternName(CatalogError):
    pass


class NotAskQuery(CatalogError):
    pass


class NoPositivePattern(CatalogError):
    pass


@dataclass(frozen=True)
class PatternQuery:
    name: str
    description: str
    query: Query
    source: str


_HEADER_RE = re.compile(r"^#\s*pattern\s*:\s*(\S.*?)\s*$", re.MULTILINE)
_DESCRIPTION_RE = re.compile(r"^#\s*description\s*:\s*(\S.*?)\s*$", re.MULTILINE)


def _positive_patterns(group: GroupPattern) -> int:
    return len(group.patterns)


def parse_pattern(text: str, source: str) -> PatternQuery:
    header = _HEADER_RE.search(text)
    if not header:
        raise MissingPatternHeader("no '# pattern: <name>' header", source)
    description = _DESCRIPTION_RE.search(text)
    query = parse_query(text)
    if query.form != "ask":
        raise NotAskQuery("catalog queries must be ASK queries", source)
    if _positive_patterns(query.body) == 0:
        raise NoPositivePattern("pattern body needs at least one triple pattern", source)
    return PatternQuery(
        header.group(1), description.group(1) if description else "", query, source
    )


def load_catalog(entries: "list[tuple[str, str]]") -> list[PatternQuery]:
    """Parse (source, text) pairs, preserving order; names must be unique."""
    patterns: list[PatternQuery] = []
    seen: dict[str, str] = {}
    for source, text in entries:
        pattern = parse_pattern(text, source)
        if pattern.name in seen:
            raise DuplicatePatternName(
                f"pattern '{pattern.name}' already defined in {seen[pattern.name]}",
                source,
            )
        seen[pattern.name] = source
        patterns.append(pattern)
    return patterns


def load_catalog_dir(path: "str | Path") -> list[PatternQuery]:
    """Load every ``*.rq`` under ``path``, sorted by file name."""
    files = sorted(Path(path).glob("*.rq"))
    return load_catalog([(f.name, f.read_text(encoding="utf-8")) for f in files])


def match_patterns(
    catalog: list[PatternQuery], graph: frozenset[Triple]
) -> list[tuple[str, bool]]:
    """Evaluate each pattern's ASK against the graph, in catalog order."""
    return [(p.name, eval_ask(p.query, graph)) for p in catalog]
