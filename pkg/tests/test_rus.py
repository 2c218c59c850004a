"""Rule-file parsing and statement matching."""

import pytest

from ucat.rus import (
    EmptyRusFile,
    Keyword,
    ListIntro,
    MissingArrow,
    MultiNotLast,
    Placeholder,
    PlaceholderCountError,
    PlaceholderKind,
    RusError,
    SlotRef,
    SlotResolutionError,
    TupleArityError,
    UnknownTag,
    compile_matcher,
    parse_rus,
    tokenize_statement,
)

RULES = """\
<I> <R> <I> -> Individual:,<I>,Facts:,<R> <I>          //action on individual
<I> <R> : <I>+ -> Individual:,<I>,Facts:,<R> <I>+      //action on several individuals
<I> _has <D>->Individual:,<I>,Facts:,<D>""^^xsd:string //individual has a property
"""


def test_parses_three_rules():
    rus = parse_rus(RULES)
    assert len(rus.rules) == 3
    assert [r.source_line for r in rus.rules] == [1, 2, 3]


def test_rule_pattern_structure():
    first, second, third = parse_rus(RULES).rules
    assert first.pattern == (
        Placeholder(PlaceholderKind.INDIVIDUAL, 1),
        Placeholder(PlaceholderKind.RELATION, 2),
        Placeholder(PlaceholderKind.INDIVIDUAL, 3),
    )
    assert second.pattern == (
        Placeholder(PlaceholderKind.INDIVIDUAL, 1),
        Placeholder(PlaceholderKind.RELATION, 2),
        ListIntro(),
        Placeholder(PlaceholderKind.INDIVIDUAL, 3, multi=True),
    )
    assert third.pattern == (
        Placeholder(PlaceholderKind.INDIVIDUAL, 1),
        Keyword("has"),
        Placeholder(PlaceholderKind.DATA, 2),
    )


def test_rule_templates():
    first, second, third = parse_rus(RULES).rules
    assert first.template.entity_kind == "Individual:"
    assert first.template.entity_slot == 1
    assert first.template.property_keyword == "Facts:"
    assert first.template.value_parts == (SlotRef(2), " ", SlotRef(3))
    assert second.template.value_parts == (SlotRef(2), " ", SlotRef(3, multi=True))
    # The verbatim fragment survives byte-for-byte.
    assert third.template.value_parts == (SlotRef(2), '""^^xsd:string')


def test_comments_and_blank_lines_skipped():
    rus = parse_rus("// a comment\n\n<I> <R> <I> -> A:,<I>,B:,<R> <I>\n")
    assert len(rus.rules) == 1
    assert rus.rules[0].source_line == 3


@pytest.mark.parametrize(
    "text,error",
    [
        ("<I> <R> <I>", MissingArrow),
        ("<I> <Q> <I> -> A:,<I>,B:,<Q> <I>", UnknownTag),
        ("<I> <R> : <R>+ -> A:,<I>,B:,<R>+", UnknownTag),
        ("<I> -> A:,<I>,B:,x", PlaceholderCountError),
        ("<I> <R> <I> <D> -> A:,<I>,B:,<R>", PlaceholderCountError),
        ("<I> <I>+ <R> -> A:,<I>,B:,<R>", MultiNotLast),
        ("<I>+ <R> : <I>+ -> A:,<I>,B:,<R>", MultiNotLast),
        ("<I> <R> <I> -> A:,<I>,B:", TupleArityError),
        ("<I> <R> <I> -> A:,<I>,<R> <I>", TupleArityError),
        ("<I> <R> <I> -> A:,<D>,B:,<R> <I>", SlotResolutionError),
        ("<I> <R> <I> -> A:,<I>,B:,<R> <I> <I>", SlotResolutionError),
        ("<I> <R> <I> -> A:,x,B:,<R> <I>", SlotResolutionError),
        ("<I> <R> : <I>+ -> A:,<I>+,B:,<R>", SlotResolutionError),
        ("<I> <R> : <I>+ -> A:,<I>,B:,<R> <I>", SlotResolutionError),
        ("", EmptyRusFile),
        ("// only comments\n", EmptyRusFile),
    ],
)
def test_rule_errors(text, error):
    with pytest.raises(error):
        parse_rus(text)


def test_errors_carry_line_numbers():
    with pytest.raises(MissingArrow) as exc:
        parse_rus("<I> <R> <I> -> A:,<I>,B:,<R> <I>\nbroken rule\n")
    assert exc.value.line == 2


def test_keyword_must_be_wordlike():
    with pytest.raises(RusError):
        parse_rus("<I> _a,b <I> -> A:,<I>,B:,<I>")


def test_tokenize_statement_punctuation():
    assert tokenize_statement("system requests : name, description") == [
        "system", "requests", ":", "name", ",", "description",
    ]
    assert tokenize_statement("a:b") == ["a", ":", "b"]
    assert tokenize_statement("  spaced   out  ") == ["spaced", "out"]


@pytest.fixture(scope="module")
def matcher():
    return compile_matcher(parse_rus(RULES))


def test_match_single(matcher):
    m = matcher.match("user clicks newModel")
    assert m is not None
    assert m.rule.source_line == 1
    assert m.captures == {1: "user", 2: "clicks", 3: "newModel"}


def test_match_list(matcher):
    m = matcher.match("system requests : name, description, scope")
    assert m is not None
    assert m.rule.source_line == 2
    assert m.captures == {1: "system", 2: "requests", 3: ("name", "description", "scope")}


def test_match_empty_list_is_allowed(matcher):
    # The empty list is caught later, at expansion.
    m = matcher.match("system requests :")
    assert m is not None
    assert m.captures[3] == ()


def test_first_match_wins(matcher):
    # A three-word statement satisfies the first rule before the keyword rule
    # gets a chance, so 'has' is captured as a plain relation.
    m = matcher.match("user has password")
    assert m.rule.source_line == 1


def test_keyword_rule_matches_when_earlier_rules_fail():
    rus = parse_rus('<I> _has <D> -> Individual:,<I>,Facts:,<D>""^^xsd:string')
    m = compile_matcher(rus).match("user has password")
    assert m is not None
    assert m.captures == {1: "user", 2: "password"}
    assert compile_matcher(rus).match("user sees password") is None


def test_no_match_returns_none(matcher):
    assert matcher.match("user clicks the newModel link") is None
    assert matcher.match("user clicks") is None
    assert matcher.match(": name") is None


def test_placeholder_never_captures_punctuation(matcher):
    for text in ("user : newModel", "user clicks :", "user , newModel"):
        m = matcher.match(text)
        if m is not None:
            captured: list[str] = []
            for value in m.captures.values():
                captured.extend(value if isinstance(value, tuple) else (value,))
            assert ":" not in captured
            assert "," not in captured


def test_list_shape_is_strict(matcher):
    assert matcher.match("system requests : name,, description") is None
    assert matcher.match("system requests : name, description,") is None
    assert matcher.match("system requests : , name") is None


def test_failure_reasons_name_rules(matcher):
    reasons = matcher.failures("user clicks the newModel link")
    assert len(reasons) == 3
    assert any("rule at line 1" in r for r in reasons)
    assert any("trailing" in r or "expected" in r for r in reasons)


def test_type_placeholder_rule():
    rus = parse_rus("<I> _is <T> -> Individual:,<I>,Types:,<T>")
    m = compile_matcher(rus).match("user is Actor")
    assert m is not None
    assert m.captures == {1: "user", 2: "Actor"}
    assert m.rule.template.property_keyword == "Types:"
