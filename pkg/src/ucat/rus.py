"""Rule files (.rus): a template grammar for controlled use-case statements.

A rule maps a statement pattern to a 4-tuple template:

    <I> <R> : <I>+ -> Individual:,<I>,Facts:,<R> <I>+

The pattern side is whitespace-separated tokens: placeholders (``<I>``,
``<R>``, ``<T>``, ``<D>``, and the multi form ``<I>+``), keywords marked
with a leading underscore (``_has`` matches the statement token ``has``),
and the list introducer ``:``. The target side is a comma-separated 4-tuple
whose value component may mix placeholder slots with verbatim text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class PlaceholderKind(Enum):
    INDIVIDUAL = "I"
    RELATION = "R"
    TYPE = "T"
    DATA = "D"


class RusError(Exception):
    """Malformed rule file; ``line`` is the 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


class MissingArrow(RusError):
    pass


class UnknownTag(RusError):
    pass


class PlaceholderCountError(RusError):
    pass


class MultiNotLast(RusError):
    pass


class TupleArityError(RusError):
    pass


class SlotResolutionError(RusError):
    pass


class EmptyRusFile(RusError):
    pass


@dataclass(frozen=True)
class Placeholder:
    """A capture position; ``slot`` counts placeholders left to right from 1."""

    kind: PlaceholderKind
    slot: int
    multi: bool = False


@dataclass(frozen=True)
class Keyword:
    """A literal word the statement must contain (written ``_word`` in rules)."""

    surface: str


@dataclass(frozen=True)
class ListIntro:
    """The ``:`` token that introduces a comma-separated list."""


PatternToken = Placeholder | Keyword | ListIntro


@dataclass(frozen=True)
class SlotRef:
    """A placeholder slot spliced into the tuple's value component."""

    slot: int
    multi: bool = False


@dataclass(frozen=True)
class TupleTemplate:
    """Right-hand side of a rule: entity kind, entity slot, property, value.

    ``value_parts`` interleaves slot references with verbatim text fragments;
    fragments are preserved byte-for-byte when a tuple is rendered.
    """

    entity_kind: str
    entity_slot: int
    property_keyword: str
    value_parts: tuple[SlotRef | str, ...]


@dataclass(frozen=True)
class RusRule:
    pattern: tuple[PatternToken, ...]
    template: TupleTemplate
    source_line: int

    @property
    def placeholders(self) -> tuple[Placeholder, ...]:
        return tuple(t for t in self.pattern if isinstance(t, Placeholder))


@dataclass(frozen=True)
class RusFile:
    rules: tuple[RusRule, ...]


_PLACEHOLDER_RE = re.compile(r"<([A-Za-z])>(\+)?\Z")
_TARGET_SLOT_RE = re.compile(r"<([A-Za-z])>(\+)?")
_WORD_RE = re.compile(r"[^\s<>,:]+\Z")


def _parse_pattern(text: str, line: int) -> tuple[PatternToken, ...]:
    tokens: list[PatternToken] = []
    slot = 0
    for raw in text.split():
        m = _PLACEHOLDER_RE.match(raw)
        if m:
            tag, plus = m.group(1), bool(m.group(2))
            try:
                kind = PlaceholderKind(tag)
            except ValueError:
                raise UnknownTag(f"unknown placeholder tag '<{tag}>'", line) from None
            if plus and kind is not PlaceholderKind.INDIVIDUAL:
                raise UnknownTag(f"'<{tag}>+' is not supported; only '<I>+' takes a list", line)
            slot += 1
            tokens.append(Placeholder(kind, slot, multi=plus))
        elif raw == ":":
            tokens.append(ListIntro())
        elif raw.startswith("_"):
            word = raw[1:]
            if not _WORD_RE.match(word):
                raise RusError(f"bad keyword token '{raw}'", line)
            tokens.append(Keyword(word))
        elif _WORD_RE.match(raw):
            tokens.append(Keyword(raw))
        else:
            raise UnknownTag(f"bad pattern token '{raw}'", line)

    placeholders = [t for t in tokens if isinstance(t, Placeholder)]
    if not 2 <= len(placeholders) <= 3:
        raise PlaceholderCountError(
            f"rule needs 2 or 3 placeholders, found {len(placeholders)}", line
        )
    multis = [t for t in tokens if isinstance(t, Placeholder) and t.multi]
    if len(multis) > 1 or (multis and tokens[-1] is not multis[0]):
        raise MultiNotLast("a multi placeholder must be the final pattern token", line)
    return tuple(tokens)


def _parse_target(
    text: str, placeholders: tuple[Placeholder, ...], line: int
) -> TupleTemplate:
    parts = text.split(",", 3)
    if len(parts) < 4:
        raise TupleArityError(f"tuple template needs 4 components, found {len(parts)}", line)
    entity_kind, entity_ref, property_keyword, value = (p.strip() for p in parts)

    # The k-th occurrence of <X> anywhere in the target binds to the k-th
    # <X> placeholder of the pattern, scanning the entity component first.
    remaining: dict[PlaceholderKind, list[Placeholder]] = {}
    for ph in placeholders:
        remaining.setdefault(ph.kind, []).append(ph)

    def resolve(tag: str, plus: bool) -> Placeholder:
        try:
            kind = PlaceholderKind(tag)
        except ValueError:
            raise UnknownTag(f"unknown placeholder tag '<{tag}>' in tuple template", line) from None
        queue = remaining.get(kind) or []
        if not queue:
            raise SlotResolutionError(
                f"tuple template uses '<{tag}>' more times than the pattern provides", line
            )
        ph = queue.pop(0)
        if plus and not ph.multi:
            raise SlotResolutionError(f"'<{tag}>+' in template but the pattern slot is single", line)
        if ph.multi and not plus:
            raise SlotResolutionError(f"'<{tag}>' in template but the pattern slot is a list", line)
        return ph

    m = _PLACEHOLDER_RE.match(entity_ref)
    if not m:
        raise SlotResolutionError(
            f"entity component must be a single placeholder, found '{entity_ref}'", line
        )
    entity = resolve(m.group(1), bool(m.group(2)))
    if entity.multi:
        raise SlotResolutionError("entity component cannot be a list placeholder", line)

    parts_out: list[SlotRef | str] = []
    pos = 0
    for sm in _TARGET_SLOT_RE.finditer(value):
        if sm.start() > pos:
            parts_out.append(value[pos : sm.start()])
        ph = resolve(sm.group(1), bool(sm.group(2)))
        parts_out.append(SlotRef(ph.slot, multi=ph.multi))
        pos = sm.end()
    if pos < len(value):
        parts_out.append(value[pos:])

    return TupleTemplate(entity_kind, entity.slot, property_keyword, tuple(parts_out))


def parse_rus(text: str) -> RusFile:
    """Parse a rule file. ``//`` starts a comment; blank lines are skipped."""
    rules: list[RusRule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise MissingArrow("rule has no '->' separator", lineno)
        pattern_text, target_text = line.split("->", 1)
        pattern = _parse_pattern(pattern_text, lineno)
        placeholders = tuple(t for t in pattern if isinstance(t, Placeholder))
        template = _parse_target(target_text, placeholders, lineno)
        rules.append(RusRule(pattern, template, lineno))
    if not rules:
        raise EmptyRusFile("rule file declares no rules", 1)
    return RusFile(tuple(rules))


_PUNCTUATION = {":", ","}
_STATEMENT_TOKEN_RE = re.compile(r"[^\s:,]+|[:,]")

Captures = dict[int, "str | tuple[str, ...]"]


def tokenize_statement(text: str) -> list[str]:
    """Split a statement into word tokens plus standalone ':' and ','."""
    return _STATEMENT_TOKEN_RE.findall(text)


@dataclass(frozen=True)
class Match:
    rule: RusRule
    captures: Captures  # slot -> token, or tuple of tokens for a multi slot


def _match_rule(rule: RusRule, tokens: list[str]) -> Captures | str:
    """Return captures on success, or a human-readable failure reason."""
    captures: Captures = {}
    i = 0
    for tok in rule.pattern:
        if isinstance(tok, Placeholder) and tok.multi:
            rest = tokens[i:]
            items: list[str] = []
            expect_item = True
            for t in rest:
                if expect_item:
                    if t in _PUNCTUATION:
                        return f"expected a list item, found '{t}'"
                    items.append(t)
                    expect_item = False
                else:
                    if t != ",":
                        return f"expected ',' between list items, found '{t}'"
                    expect_item = True
            if items and expect_item:
                return "list ends with a trailing ','"
            captures[tok.slot] = tuple(items)
            i = len(tokens)
        elif isinstance(tok, Placeholder):
            if i >= len(tokens):
                return "statement is too short"
            if tokens[i] in _PUNCTUATION:
                return f"expected a word, found '{tokens[i]}'"
            captures[tok.slot] = tokens[i]
            i += 1
        elif isinstance(tok, Keyword):
            if i >= len(tokens):
                return "statement is too short"
            if tokens[i] != tok.surface:
                return f"expected keyword '{tok.surface}', found '{tokens[i]}'"
            i += 1
        else:  # ListIntro
            if i >= len(tokens):
                return "statement is too short"
            if tokens[i] != ":":
                return f"expected ':', found '{tokens[i]}'"
            i += 1
    if i < len(tokens):
        return f"unexpected trailing token '{tokens[i]}'"
    return captures


class StatementMatcher:
    """Matches statements against a rule file, first matching rule wins."""

    def __init__(self, rus: RusFile):
        self.rules = rus.rules

    def match(self, text: str) -> Match | None:
        tokens = tokenize_statement(text)
        for rule in self.rules:
            result = _match_rule(rule, tokens)
            if not isinstance(result, str):
                return Match(rule, result)
        return None

    def failures(self, text: str) -> list[str]:
        """Per-rule failure reasons, for diagnostics on unmatched statements."""
        tokens = tokenize_statement(text)
        reasons = []
        for rule in self.rules:
            result = _match_rule(rule, tokens)
            if isinstance(result, str):
                reasons.append(f"rule at line {rule.source_line}: {result}")
            else:  # a later rule may match even if an earlier one failed
                reasons.append(f"rule at line {rule.source_line}: matches")
        return reasons


def compile_matcher(rus: RusFile) -> StatementMatcher:
    return StatementMatcher(rus)
