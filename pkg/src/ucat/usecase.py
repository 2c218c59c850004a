"""Use-case files: matched statements, list expansion, entities, 4-tuples.

A use-case file is one controlled-language statement per line. Lines may
carry a role prefix (``U> `` for the user, ``S> `` for the system); ``#``
starts a comment line and blank lines are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .rus import (
    Captures,
    Keyword,
    ListIntro,
    Placeholder,
    PlaceholderKind,
    RusRule,
    SlotRef,
    StatementMatcher,
    TupleTemplate,
)


class Role(Enum):
    USER = "user"
    SYSTEM = "system"


class UseCaseError(Exception):
    """Malformed use-case input; ``line`` is the 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


class EmptyListError(UseCaseError):
    pass


@dataclass(frozen=True)
class UseCaseLine:
    text: str
    role: Role = Role.USER
    line_number: int = 1


@dataclass
class Statement:
    """A use-case line bound to the first rule that matched it."""

    rule: RusRule
    captures: Captures
    origin: UseCaseLine


@dataclass
class LineError:
    """A line no rule matched (or whose list was empty), with reasons."""

    origin: UseCaseLine
    code: str
    reasons: list[str] = field(default_factory=list)

    def render(self) -> str:
        head = f"line {self.origin.line_number}: {self.code}: {self.origin.text}"
        return "\n".join([head] + [f"  {r}" for r in self.reasons])


def parse_usecase_file(text: str) -> list[UseCaseLine]:
    lines: list[UseCaseLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        role = Role.USER
        if stripped.startswith("U>"):
            stripped = stripped[2:].strip()
        elif stripped.startswith("S>"):
            role = Role.SYSTEM
            stripped = stripped[2:].strip()
        lines.append(UseCaseLine(stripped, role, lineno))
    return lines


def parse_use_case(
    lines: list[UseCaseLine], matcher: StatementMatcher
) -> tuple[list[Statement], list[LineError]]:
    """Match every line; unmatched lines become errors, never exceptions."""
    statements: list[Statement] = []
    errors: list[LineError] = []
    for line in lines:
        m = matcher.match(line.text)
        if m is None:
            errors.append(LineError(line, "NoRuleMatches", matcher.failures(line.text)))
        else:
            statements.append(Statement(m.rule, m.captures, line))
    return statements, errors


def _singular_rule(rule: RusRule) -> RusRule:
    """The one-item analogue of a list rule: drop ':' and the '+'."""
    pattern = []
    for tok in rule.pattern:
        if isinstance(tok, ListIntro):
            continue
        if isinstance(tok, Placeholder) and tok.multi:
            pattern.append(Placeholder(tok.kind, tok.slot))
        else:
            pattern.append(tok)
    tmpl = rule.template
    parts = tuple(
        SlotRef(p.slot) if isinstance(p, SlotRef) and p.multi else p
        for p in tmpl.value_parts
    )
    template = TupleTemplate(tmpl.entity_kind, tmpl.entity_slot, tmpl.property_keyword, parts)
    return RusRule(tuple(pattern), template, rule.source_line)


def expand_multi(statement: Statement) -> list[Statement]:
    """Expand a list capture into one singular statement per item.

    Statements without a list capture pass through unchanged (as a
    one-element list). An empty list raises :class:`EmptyListError`.
    """
    multi_slots = [s for s, v in statement.captures.items() if isinstance(v, tuple)]
    if not multi_slots:
        return [statement]
    slot = multi_slots[0]
    items = statement.captures[slot]
    if not items:
        raise EmptyListError("list introduced by ':' has no items", statement.origin.line_number)
    singular = _singular_rule(statement.rule)
    expanded = []
    for item in items:
        captures = dict(statement.captures)
        captures[slot] = item
        expanded.append(Statement(singular, captures, statement.origin))
    return expanded


def expand_all(statements: list[Statement]) -> list[Statement]:
    out: list[Statement] = []
    for st in statements:
        out.extend(expand_multi(st))
    return out


@dataclass
class EntitySet:
    """Entity names per placeholder kind, unique, in first-seen order."""

    individuals: list[str] = field(default_factory=list)
    relations: list[str] = field(default_factory=list)
    data_properties: list[str] = field(default_factory=list)
    types: list[str] = field(default_factory=list)

    def _bucket(self, kind: PlaceholderKind) -> list[str]:
        return {
            PlaceholderKind.INDIVIDUAL: self.individuals,
            PlaceholderKind.RELATION: self.relations,
            PlaceholderKind.DATA: self.data_properties,
            PlaceholderKind.TYPE: self.types,
        }[kind]

    def add(self, kind: PlaceholderKind, name: str) -> None:
        bucket = self._bucket(kind)
        if name not in bucket:
            bucket.append(name)

    def kind_conflicts(self) -> list[str]:
        """Names that landed in more than one category."""
        seen: dict[str, int] = {}
        for bucket in (self.individuals, self.relations, self.data_properties, self.types):
            for name in bucket:
                seen[name] = seen.get(name, 0) + 1
        return sorted(name for name, n in seen.items() if n > 1)


def extract_entities(statements: list[Statement]) -> EntitySet:
    """Collect captured names by placeholder kind (expand lists first)."""
    entities = EntitySet()
    for st in statements:
        kinds = {ph.slot: ph.kind for ph in st.rule.placeholders}
        for slot, value in sorted(st.captures.items()):
            items = value if isinstance(value, tuple) else (value,)
            for item in items:
                entities.add(kinds[slot], item)
    return entities


@dataclass(frozen=True)
class TupleStatement:
    """The 4-tuple a rule renders from one (expanded) statement."""

    entity_kind: str
    entity: str
    property: str
    value: str

    def render(self) -> str:
        return f"{self.entity_kind},{self.entity},{self.property},{self.value}"


def render_tuple(statement: Statement) -> TupleStatement:
    tmpl = statement.rule.template
    parts = []
    for part in tmpl.value_parts:
        if isinstance(part, SlotRef):
            value = statement.captures[part.slot]
            if isinstance(value, tuple):
                raise ValueError("list capture not expanded; call expand_multi first")
            parts.append(value)
        else:
            parts.append(part)
    entity = statement.captures[tmpl.entity_slot]
    assert isinstance(entity, str)
    return TupleStatement(tmpl.entity_kind, entity, tmpl.property_keyword, "".join(parts))


def extract_tuples(statements: list[Statement]) -> list[TupleStatement]:
    return [render_tuple(st) for st in statements]
