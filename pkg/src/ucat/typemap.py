"""Types files: class declarations and class assignment for individuals.

Syntax, one declaration per line (``#`` comments, blank lines skipped):

    class Actor
    class Admin < Actor
    user: Actor
    name: Field, Text
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class TypesError(Exception):
    """Malformed types input; ``line`` is the 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


class UndeclaredClass(TypesError):
    pass


class SubclassCycle(TypesError):
    pass


@dataclass(frozen=True)
class ClassDecl:
    name: str
    parents: tuple[str, ...] = ()


@dataclass
class TypeMap:
    """Ordered class assignments per individual, plus merge warnings."""

    assignments: dict[str, tuple[str, ...]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def classes_of(self, individual: str) -> tuple[str, ...]:
        return self.assignments.get(individual, ())


_NAME_RE = re.compile(r"[^\s<>,:]+\Z")


def _name(token: str, line: int) -> str:
    token = token.strip()
    if not _NAME_RE.match(token):
        raise TypesError(f"bad name '{token}'", line)
    return token


def parse_types(text: str) -> tuple[list[ClassDecl], TypeMap]:
    """Parse declarations; classes must be declared before they are used."""
    classes: dict[str, ClassDecl] = {}
    typemap = TypeMap()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("class ") or line == "class":
            rest = line[len("class") :].strip()
            if "<" in rest:
                name_part, parent_part = rest.split("<", 1)
                name = _name(name_part, lineno)
                parents = tuple(_name(p, lineno) for p in parent_part.split(","))
            else:
                name = _name(rest, lineno)
                parents = ()
            for parent in parents:
                if parent not in classes:
                    raise UndeclaredClass(f"parent class '{parent}' not declared", lineno)
            if name in classes:
                old = classes[name]
                merged = old.parents + tuple(p for p in parents if p not in old.parents)
                classes[name] = ClassDecl(name, merged)
                typemap.warnings.append(f"line {lineno}: duplicate class '{name}' merged")
            else:
                classes[name] = ClassDecl(name, parents)
        elif ":" in line:
            name_part, class_part = line.split(":", 1)
            name = _name(name_part, lineno)
            assigned = tuple(_name(c, lineno) for c in class_part.split(","))
            for cls in assigned:
                if cls not in classes:
                    raise UndeclaredClass(f"class '{cls}' not declared", lineno)
            if name in typemap.assignments:
                old = typemap.assignments[name]
                typemap.assignments[name] = old + tuple(c for c in assigned if c not in old)
                typemap.warnings.append(
                    f"line {lineno}: duplicate assignment for '{name}' merged"
                )
            else:
                typemap.assignments[name] = tuple(dict.fromkeys(assigned))
        else:
            raise TypesError(f"unrecognized declaration '{line}'", lineno)
    _check_acyclic(list(classes.values()))
    return list(classes.values()), typemap


def _check_acyclic(classes: list[ClassDecl]) -> None:
    parents = {c.name: set(c.parents) for c in classes}
    # Kahn's algorithm; whatever survives sits on a cycle.
    remaining = dict(parents)
    changed = True
    while changed:
        changed = False
        for name in [n for n, ps in remaining.items() if not ps]:
            del remaining[name]
            for ps in remaining.values():
                ps.discard(name)
            changed = True
    if remaining:
        cycle = ", ".join(sorted(remaining))
        raise SubclassCycle(f"subclass cycle involving: {cycle}", 1)


@dataclass
class ValidationReport:
    """Individuals that block ontology generation, and unknown assignees."""

    untyped: list[str] = field(default_factory=list)
    unknown: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.untyped


def validate_assignment(individuals: list[str], typemap: TypeMap) -> ValidationReport:
    """Every extracted individual needs at least one class before ontology
    generation; assignments for names that were never extracted are reported
    but harmless."""
    known = set(individuals)
    return ValidationReport(
        untyped=[i for i in individuals if not typemap.classes_of(i)],
        unknown=sorted(set(typemap.assignments) - known),
    )
