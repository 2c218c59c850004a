"""Types files: class declarations, assignments, validation."""

import pytest

from ucat.typemap import (
    ClassDecl,
    SubclassCycle,
    TypesError,
    UndeclaredClass,
    parse_types,
    validate_assignment,
)


def test_parse_golden_types(types_text):
    classes, typemap = parse_types(types_text)
    assert [c.name for c in classes] == ["Actor", "Link", "Field", "Text", "Object"]
    assert all(c.parents == () for c in classes)
    assert typemap.classes_of("user") == ("Actor",)
    assert typemap.classes_of("name") == ("Field", "Text")
    assert typemap.classes_of("save") == ("Link",)
    assert len(typemap.assignments) == 12
    assert typemap.warnings == []


def test_subclass_declaration():
    classes, _ = parse_types("class Actor\nclass Admin < Actor\n")
    assert classes == [ClassDecl("Actor"), ClassDecl("Admin", ("Actor",))]


def test_multiple_parents():
    classes, _ = parse_types("class A\nclass B\nclass C < A, B\n")
    assert classes[2] == ClassDecl("C", ("A", "B"))


def test_parent_must_be_declared_first():
    with pytest.raises(UndeclaredClass) as exc:
        parse_types("class Admin < Actor\nclass Actor\n")
    assert exc.value.line == 1


def test_assignment_requires_declared_class():
    with pytest.raises(UndeclaredClass) as exc:
        parse_types("class Actor\nuser: Actor, Ghost\n")
    assert exc.value.line == 2


def test_duplicate_class_merges_with_warning():
    classes, typemap = parse_types("class A\nclass B\nclass C < A\nclass C < B\n")
    assert classes[2] == ClassDecl("C", ("A", "B"))
    assert any("duplicate class 'C'" in w for w in typemap.warnings)


def test_duplicate_assignment_merges_with_warning():
    _, typemap = parse_types("class A\nclass B\nuser: A\nuser: B, A\n")
    assert typemap.classes_of("user") == ("A", "B")
    assert any("duplicate assignment for 'user'" in w for w in typemap.warnings)


def test_cycle_via_merge_detected():
    with pytest.raises(SubclassCycle) as exc:
        parse_types("class A\nclass B < A\nclass A < B\n")
    assert "A" in str(exc.value) and "B" in str(exc.value)


def test_unrecognized_line():
    with pytest.raises(TypesError) as exc:
        parse_types("class A\nnot a declaration\n")
    assert exc.value.line == 2


def test_bad_name():
    with pytest.raises(TypesError):
        parse_types("class A,B\n")


def test_comments_and_blanks():
    classes, typemap = parse_types("# header\n\nclass A\n  # indented comment\nuser: A\n")
    assert [c.name for c in classes] == ["A"]
    assert typemap.classes_of("user") == ("A",)


def test_validate_assignment_reports():
    _, typemap = parse_types("class A\nuser: A\nghost: A\n")
    report = validate_assignment(["user", "system"], typemap)
    assert report.untyped == ["system"]
    assert report.unknown == ["ghost"]
    assert not report.ok
    report = validate_assignment(["user"], typemap)
    assert report.untyped == []
    assert report.ok


def test_assignment_order_is_first_seen():
    _, typemap = parse_types("class A\nclass B\nuser: B, A, B\n")
    assert typemap.classes_of("user") == ("B", "A")
