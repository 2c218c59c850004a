"""A small SPARQL subset over the ontology's triple view.

Supported: ``PREFIX`` declarations, ``ASK`` and ``SELECT`` (variable list
or ``*``, optional ``WHERE``), basic graph patterns of triple patterns
separated by optional ``.``, and ``FILTER NOT EXISTS { ... }`` groups.
``#`` starts a comment outside of brackets and strings.

``rdf:type`` patterns with a constant predicate see the transitive
``rdfs:subClassOf`` closure (an individual asserted into a class is matched
by every ancestor class); every other predicate — including a variable
predicate position — matches asserted triples only.

A ``FILTER NOT EXISTS`` group is a veto: the body's candidate bindings are
computed first, and if any one of them extends to a solution of the group
(shared variables kept, group-only variables existential), the whole
candidate set is rejected. Nested groups apply the same rule recursively.

Two evaluators are provided: the join-based engine (:func:`eval_ask`,
:func:`eval_select`) and :func:`brute_force_eval`, which enumerates every
variable assignment over the graph's terms. They are implemented
independently and must agree; the brute-force form exists as an oracle for
randomized testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ontology import RDF_TYPE, RDFS_SUBCLASSOF, Literal, Triple


class SparqlSyntaxError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UndeclaredPrefix(SparqlSyntaxError):
    def __init__(self, label: str, line: int, column: int):
        super().__init__(f"undeclared prefix '{label}:'", line, column)
        self.label = label


class EmptyBody(SparqlSyntaxError):
    def __init__(self, line: int, column: int):
        super().__init__("group has no triple patterns", line, column)


class OracleTooLarge(Exception):
    pass


@dataclass(frozen=True)
class Var:
    name: str


Term = "Var | str | Literal"  # str is an IRI


@dataclass(frozen=True)
class TriplePattern:
    subject: "Var | str | Literal"
    predicate: "Var | str | Literal"
    object: "Var | str | Literal"


@dataclass(frozen=True)
class GroupPattern:
    patterns: tuple[TriplePattern, ...]
    not_exists: tuple["GroupPattern", ...] = ()


@dataclass(frozen=True)
class Query:
    form: str  # "ask" | "select"
    body: GroupPattern
    projection: "tuple[str, ...] | None" = None  # None on SELECT means *


@dataclass(frozen=True)
class Token:
    kind: str  # WORD PNAME VAR IRI STRING PUNCT EOF
    value: str
    line: int
    column: int


_PUNCT = {"{", "}", ".", "*"}


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)

    def err(msg: str) -> SparqlSyntaxError:
        return SparqlSyntaxError(msg, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
        elif ch.isspace():
            i, col = i + 1, col + 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "<":
            end = text.find(">", i)
            if end < 0 or "\n" in text[i:end]:
                raise err("unterminated IRI")
            tokens.append(Token("IRI", text[i + 1 : end], line, col))
            col += end - i + 1
            i = end + 1
        elif ch == "?":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            if j == i + 1:
                raise err("'?' without a variable name")
            tokens.append(Token("VAR", text[i + 1 : j], line, col))
            col += j - i
            i = j
        elif ch == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                elif text[j] == "\n":
                    raise err("unterminated string")
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise err("unterminated string")
            tokens.append(Token("STRING", "".join(buf), line, col))
            col += j - i + 1
            i = j + 1
        elif text.startswith("^^", i):
            tokens.append(Token("PUNCT", "^^", line, col))
            i, col = i + 2, col + 2
        elif ch in _PUNCT:
            tokens.append(Token("PUNCT", ch, line, col))
            i, col = i + 1, col + 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if j < n and text[j] == ":":
                j += 1
                k = j
                while k < n and (text[k].isalnum() or text[k] == "_"):
                    k += 1
                tokens.append(Token("PNAME", text[i:k], line, col))
                col += k - i
                i = k
            else:
                tokens.append(Token("WORD", word, line, col))
                col += j - i
                i = j
        else:
            raise err(f"unexpected character '{ch}'")
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def err(self, message: str, tok: "Token | None" = None) -> SparqlSyntaxError:
        tok = tok or self.peek()
        return SparqlSyntaxError(message, tok.line, tok.column)

    def keyword(self, tok: Token) -> str:
        return tok.value.upper() if tok.kind == "WORD" else ""

    def expect_punct(self, value: str) -> Token:
        tok = self.next()
        if tok.kind != "PUNCT" or tok.value != value:
            raise self.err(f"expected '{value}', got '{tok.value or tok.kind}'", tok)
        return tok

    def parse(self) -> Query:
        while self.keyword(self.peek()) == "PREFIX":
            self.next()
            label_tok = self.next()
            if label_tok.kind != "PNAME" or not label_tok.value.endswith(":"):
                raise self.err("expected a prefix label like 'ont:'", label_tok)
            iri_tok = self.next()
            if iri_tok.kind != "IRI":
                raise self.err("expected an <IRI>", iri_tok)
            self.prefixes[label_tok.value[:-1]] = iri_tok.value

        form_tok = self.next()
        form = self.keyword(form_tok)
        if form == "ASK":
            body = self.group()
            query = Query("ask", body)
        elif form == "SELECT":
            projection = self.projection()
            if self.keyword(self.peek()) == "WHERE":
                self.next()
            body = self.group()
            query = Query("select", body, projection)
            if projection is not None:
                bound = {v.name for p in body.patterns for v in _pattern_vars(p)}
                for name in projection:
                    if name not in bound:
                        raise self.err(
                            f"projected variable ?{name} is not bound in the body", form_tok
                        )
        else:
            raise self.err("expected ASK or SELECT", form_tok)
        tail = self.next()
        if tail.kind != "EOF":
            raise self.err(f"unexpected trailing '{tail.value}'", tail)
        return query

    def projection(self) -> "tuple[str, ...] | None":
        if self.peek().kind == "PUNCT" and self.peek().value == "*":
            self.next()
            return None
        names: list[str] = []
        while self.peek().kind == "VAR":
            names.append(self.next().value)
        if not names:
            raise self.err("SELECT needs variables or '*'")
        return tuple(names)

    def group(self) -> GroupPattern:
        open_tok = self.expect_punct("{")
        patterns: list[TriplePattern] = []
        filters: list[GroupPattern] = []
        while True:
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == "}":
                self.next()
                break
            if tok.kind == "EOF":
                raise self.err("unterminated group, expected '}'", tok)
            if self.keyword(tok) == "FILTER":
                self.next()
                not_tok = self.next()
                exists_tok = self.next()
                if self.keyword(not_tok) != "NOT" or self.keyword(exists_tok) != "EXISTS":
                    raise self.err("only FILTER NOT EXISTS is supported", not_tok)
                filters.append(self.group())
            else:
                patterns.append(self.triple())
            if self.peek().kind == "PUNCT" and self.peek().value == ".":
                self.next()
        if not patterns and not filters:
            raise EmptyBody(open_tok.line, open_tok.column)
        return GroupPattern(tuple(patterns), tuple(filters))

    def triple(self) -> TriplePattern:
        return TriplePattern(self.term(), self.term(), self.term())

    def term(self) -> "Var | str | Literal":
        tok = self.next()
        if tok.kind == "VAR":
            return Var(tok.value)
        if tok.kind == "IRI":
            return tok.value
        if tok.kind == "PNAME":
            return self.expand(tok)
        if tok.kind == "STRING":
            datatype = "http://www.w3.org/2001/XMLSchema#string"
            if self.peek().kind == "PUNCT" and self.peek().value == "^^":
                self.next()
                dt_tok = self.next()
                if dt_tok.kind == "IRI":
                    datatype = dt_tok.value
                elif dt_tok.kind == "PNAME":
                    datatype = self.expand(dt_tok)
                else:
                    raise self.err("expected a datatype after '^^'", dt_tok)
            return Literal(tok.value, datatype)
        raise self.err(f"expected a term, got '{tok.value or tok.kind}'", tok)

    def expand(self, tok: Token) -> str:
        label, _, local = tok.value.partition(":")
        if label not in self.prefixes:
            raise UndeclaredPrefix(label, tok.line, tok.column)
        return self.prefixes[label] + local


def parse_query(text: str) -> Query:
    return _Parser(text).parse()


def _pattern_vars(tp: TriplePattern):
    for term in (tp.subject, tp.predicate, tp.object):
        if isinstance(term, Var):
            yield term


def _group_vars(group: GroupPattern, include_filters: bool = False) -> list[str]:
    """Variable names in first-appearance order."""
    names: list[str] = []

    def walk(g: GroupPattern) -> None:
        for tp in g.patterns:
            for v in _pattern_vars(tp):
                if v.name not in names:
                    names.append(v.name)
        if include_filters:
            for ne in g.not_exists:
                walk(ne)

    walk(group)
    return names


def _term_key(term: "str | Literal"):
    if isinstance(term, Literal):
        return ("literal", term.value, term.datatype)
    return ("iri", term)


@dataclass
class SelectResult:
    variables: list[str]
    rows: list[tuple]  # one term per variable, deduplicated, sorted


class _GraphIndex:
    """Predicate-indexed triples plus the entailed rdf:type relation."""

    def __init__(self, graph: frozenset[Triple]):
        self.triples = graph
        self.by_predicate: dict[str, list[Triple]] = {}
        for t in sorted(graph, key=lambda t: (_term_key(t.subject), _term_key(t.object))):
            self.by_predicate.setdefault(t.predicate, []).append(t)

        ancestors: dict[str, set[str]] = {}
        edges: dict[str, set[str]] = {}
        for t in self.by_predicate.get(RDFS_SUBCLASSOF, []):
            if isinstance(t.object, str):
                edges.setdefault(t.subject, set()).add(t.object)

        def close(cls: str) -> set[str]:
            if cls in ancestors:
                return ancestors[cls]
            ancestors[cls] = {cls}  # pre-seeded so cycles terminate
            closure = {cls}
            for parent in edges.get(cls, ()):
                closure |= close(parent)
            ancestors[cls] = closure
            return closure

        entailed: set[Triple] = set()
        for t in self.by_predicate.get(RDF_TYPE, []):
            if isinstance(t.object, str):
                for cls in close(t.object):
                    entailed.add(Triple(t.subject, RDF_TYPE, cls))
            else:
                entailed.add(t)
        self.entailed_types = sorted(
            entailed, key=lambda t: (_term_key(t.subject), _term_key(t.object))
        )

    def candidates(self, predicate: "Var | str | Literal") -> list[Triple]:
        # Entailment is keyed on the pattern's own predicate term: only a
        # literal rdf:type constant sees the subclass closure. A variable
        # predicate ranges over asserted triples, even once bound.
        if isinstance(predicate, Var):
            return [t for ts in self.by_predicate.values() for t in ts]
        if predicate == RDF_TYPE:
            return self.entailed_types
        if isinstance(predicate, str):
            return self.by_predicate.get(predicate, [])
        return []  # a literal can never be a predicate


Binding = dict[str, "str | Literal"]


def _match_pattern(tp: TriplePattern, binding: Binding, index: _GraphIndex):
    for t in index.candidates(tp.predicate):
        extended = dict(binding)
        ok = True
        for term, value in ((tp.subject, t.subject), (tp.predicate, t.predicate), (tp.object, t.object)):
            if isinstance(term, Var):
                bound = extended.get(term.name)
                if bound is None:
                    extended[term.name] = value
                elif bound != value:
                    ok = False
                    break
            elif term != value:
                ok = False
                break
        if ok:
            yield extended


def _solutions(group: GroupPattern, index: _GraphIndex, seed: Binding) -> list[Binding]:
    sols = [seed]
    for tp in group.patterns:
        sols = [ext for b in sols for ext in _match_pattern(tp, b, index)]
        if not sols:
            return []
    for ne in group.not_exists:
        if any(_solutions(ne, index, dict(b)) for b in sols):
            return []
    return sols


def _project(
    solutions: list[Binding], body: GroupPattern, projection: "tuple[str, ...] | None"
) -> SelectResult:
    variables = list(projection) if projection is not None else _group_vars(body)
    rows = {tuple(b[name] for name in variables) for b in solutions}
    return SelectResult(variables, sorted(rows, key=lambda r: tuple(_term_key(t) for t in r)))


def eval_ask(query: Query, graph: frozenset[Triple]) -> bool:
    if query.form != "ask":
        raise ValueError("not an ASK query")
    return bool(_solutions(query.body, _GraphIndex(graph), {}))


def eval_select(query: Query, graph: frozenset[Triple]) -> SelectResult:
    if query.form != "select":
        raise ValueError("not a SELECT query")
    sols = _solutions(query.body, _GraphIndex(graph), {})
    return _project(sols, query.body, query.projection)


# --- brute-force oracle -----------------------------------------------------

_MAX_GRAPH = 1000
_MAX_VARS = 6
_MAX_ASSIGNMENTS = 5_000_000


def _graph_terms(graph: frozenset[Triple]) -> list:
    terms = set()
    for t in graph:
        terms.add(t.subject)
        terms.add(t.predicate)
        terms.add(t.object)
    return sorted(terms, key=_term_key)


def _subclass_reachable(graph: frozenset[Triple], start: str, goal: str) -> bool:
    """Is ``goal`` an ancestor of ``start`` (reflexively)? Fresh BFS per call;
    intentionally shares nothing with the engine's closure."""
    frontier = [start]
    seen = {start}
    while frontier:
        cls = frontier.pop()
        if cls == goal:
            return True
        for t in graph:
            if t.predicate == RDFS_SUBCLASSOF and t.subject == cls and t.object not in seen:
                seen.add(t.object)
                frontier.append(t.object)
    return False


def _holds(tp: TriplePattern, binding: Binding, graph: frozenset[Triple]) -> bool:
    def value(term):
        return binding[term.name] if isinstance(term, Var) else term

    s, p, o = value(tp.subject), value(tp.predicate), value(tp.object)
    # Same rule as the engine: the closure applies only when the pattern
    # spells out rdf:type, never through a variable binding.
    if tp.predicate == RDF_TYPE and isinstance(o, str):
        return any(
            t.predicate == RDF_TYPE
            and t.subject == s
            and isinstance(t.object, str)
            and _subclass_reachable(graph, t.object, o)
            for t in graph
        )
    return Triple(s, p, o) in graph


def _enumerate_group(
    group: GroupPattern, fixed: Binding, graph: frozenset[Triple], terms: list
) -> list[Binding]:
    free = [name for name in _group_vars(group) if name not in fixed]
    if len(terms) ** len(free) > _MAX_ASSIGNMENTS:
        raise OracleTooLarge(f"{len(terms)}^{len(free)} assignments")
    candidates: list[Binding] = []
    for combo in itertools.product(terms, repeat=len(free)):
        binding = {**fixed, **dict(zip(free, combo))}
        if all(_holds(tp, binding, graph) for tp in group.patterns):
            candidates.append(binding)
    for ne in group.not_exists:
        if any(_enumerate_group(ne, c, graph, terms) for c in candidates):
            return []
    return candidates


def brute_force_eval(query: Query, graph: frozenset[Triple]):
    """Exhaustive evaluator: every assignment of variables to graph terms.

    Same veto filter semantics as the engine, reached by enumeration rather
    than joins. Raises :class:`OracleTooLarge` beyond 1000 triples, 6
    distinct variables, or 5e6 assignments at any level.
    """
    if len(graph) > _MAX_GRAPH:
        raise OracleTooLarge(f"{len(graph)} triples")
    all_vars = _group_vars(query.body, include_filters=True)
    if len(all_vars) > _MAX_VARS:
        raise OracleTooLarge(f"{len(all_vars)} variables")
    terms = _graph_terms(graph)
    solutions = _enumerate_group(query.body, {}, graph, terms)
    if query.form == "ask":
        return bool(solutions)
    return _project(solutions, query.body, query.projection)
