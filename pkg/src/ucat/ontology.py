"""Ontology model, Manchester-syntax writer/reader, and triple view.

The ontology holds classes (with parents), object/data properties, and
individuals with class memberships and facts. It serializes to a small
Manchester-syntax subset (Prefix/Class/ObjectProperty/DataProperty/
Individual frames with SubClassOf/Types/Facts lines, full IRIs in angle
brackets) and converts to a set of triples for querying. Negated facts are
kept in the document but carry no triple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF + "type"
RDFS_SUBCLASSOF = RDFS + "subClassOf"

STANDARD_PREFIXES = {"owl": OWL, "rdf": RDF, "rdfs": RDFS, "xsd": XSD}

LOCAL_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class OntologyError(Exception):
    pass


class IllegalLocalName(OntologyError):
    def __init__(self, name: str):
        super().__init__(f"illegal local name '{name}'")
        self.name = name


class InvalidBaseIri(OntologyError):
    pass


class UntypedIndividuals(OntologyError):
    def __init__(self, names: list[str]):
        super().__init__("untyped individuals: " + ", ".join(names))
        self.names = names


class UnknownEntityInTuple(OntologyError):
    def __init__(self, message: str, tuple_index: int):
        super().__init__(f"tuple {tuple_index}: {message}")
        self.tuple_index = tuple_index


class UndeclaredAssignment(OntologyError):
    def __init__(self, individual: str, cls: str):
        super().__init__(f"individual '{individual}' assigned to undeclared class '{cls}'")
        self.individual = individual
        self.cls = cls


class MalformedFactValue(OntologyError):
    def __init__(self, message: str, tuple_index: int):
        super().__init__(f"tuple {tuple_index}: {message}")
        self.tuple_index = tuple_index


class ManchesterSyntaxError(OntologyError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnsupportedConstruct(OntologyError):
    def __init__(self, construct: str, line: int):
        super().__init__(f"line {line}: unsupported construct: {construct}")
        self.construct = construct
        self.line = line


@dataclass(frozen=True)
class Literal:
    value: str
    datatype: str = XSD + "string"


@dataclass(frozen=True)
class Fact:
    """One Facts: entry; ``object`` is an individual name or a literal."""

    property: str
    object: "str | Literal"
    negated: bool = False


@dataclass(frozen=True)
class IndividualRecord:
    types: tuple[str, ...] = ()  # sorted
    facts: tuple[Fact, ...] = ()  # first-seen order, duplicates dropped


@dataclass
class Ontology:
    base: str
    classes: dict[str, tuple[str, ...]] = field(default_factory=dict)
    object_properties: tuple[str, ...] = ()
    data_properties: tuple[str, ...] = ()
    individuals: dict[str, IndividualRecord] = field(default_factory=dict)

    @property
    def prefixes(self) -> dict[str, str]:
        return {"ont": self.base + "#", **STANDARD_PREFIXES}

    def iri(self, local_name: str) -> str:
        return f"{self.base}#{local_name}"


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: "str | Literal"


def _check_local_name(name: str) -> str:
    if not LOCAL_NAME_RE.match(name):
        raise IllegalLocalName(name)
    return name


def normalize_base(base: str) -> str:
    base = base.strip().rstrip("#/")
    if not re.match(r"[A-Za-z][A-Za-z0-9+.-]*://\S+\Z", base):
        raise InvalidBaseIri(f"base IRI must be absolute, got '{base}'")
    return base


_LITERAL_RE = re.compile(r'"((?:[^"\\]|\\.)*)"(?:\^\^(\S+))?\Z')


def _unescape(value: str) -> str:
    return value.replace('\\"', '"').replace("\\\\", "\\")


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def _parse_fact_value(value: str, index: int) -> Fact:
    """Split a tuple's value component into property + individual/literal."""
    rest = value.strip()
    negated = False
    if rest == "not" or rest.startswith("not "):
        negated = True
        rest = rest[3:].strip()
    quote = rest.find('"')
    if quote >= 0:
        prop = rest[:quote].strip()
        m = _LITERAL_RE.match(rest[quote:])
        if not m:
            raise MalformedFactValue(f"bad literal in '{value}'", index)
        lexical, datatype = m.group(1), m.group(2)
        return Fact(prop, Literal(_unescape(lexical), _expand_datatype(datatype, index)), negated)
    parts = rest.split()
    if len(parts) != 2:
        raise MalformedFactValue(
            f"expected 'property object' or 'property \"literal\"', got '{value}'", index
        )
    return Fact(parts[0], parts[1], negated)


def _expand_datatype(token: "str | None", index: int) -> str:
    if token is None:
        return XSD + "string"
    if token.startswith("<") and token.endswith(">"):
        return token[1:-1]
    if ":" in token:
        prefix, local = token.split(":", 1)
        if prefix in STANDARD_PREFIXES:
            return STANDARD_PREFIXES[prefix] + local
    raise MalformedFactValue(f"unknown datatype '{token}'", index)


def build_ontology(
    base: str,
    entities,
    tuples,
    classes: "list | None" = None,
    typemap=None,
    permissive: bool = False,
) -> Ontology:
    """Assemble the ontology from extraction output and type assignments.

    ``entities``/``tuples`` come from :mod:`ucat.usecase`; ``classes`` and
    ``typemap`` from :mod:`ucat.typemap`. Unless ``permissive`` is set,
    every individual must have at least one class.
    """
    base = normalize_base(base)
    class_parents: dict[str, tuple[str, ...]] = {}
    for decl in classes or []:
        _check_local_name(decl.name)
        for p in decl.parents:
            _check_local_name(p)
        class_parents[decl.name] = tuple(sorted(set(decl.parents)))
    for name in entities.types:
        class_parents.setdefault(_check_local_name(name), ())

    # Property and parent orderings are normalized so that structurally
    # equal ontologies compare equal regardless of extraction order.
    object_properties = tuple(sorted(_check_local_name(n) for n in entities.relations))
    data_properties = tuple(sorted(_check_local_name(n) for n in entities.data_properties))
    individual_names = [_check_local_name(n) for n in entities.individuals]

    types: dict[str, list[str]] = {name: [] for name in individual_names}
    facts: dict[str, list[Fact]] = {name: [] for name in individual_names}
    if typemap is not None:
        for name in individual_names:
            for cls in typemap.classes_of(name):
                if cls not in class_parents:
                    raise UndeclaredAssignment(name, cls)
                if cls not in types[name]:
                    types[name].append(cls)

    properties = set(object_properties) | set(data_properties)
    for index, tup in enumerate(tuples, start=1):
        if tup.entity_kind != "Individual:":
            raise UnknownEntityInTuple(f"unsupported entity kind '{tup.entity_kind}'", index)
        if tup.entity not in facts:
            raise UnknownEntityInTuple(f"'{tup.entity}' is not an extracted individual", index)
        if tup.property == "Types:":
            cls = tup.value.strip()
            _check_local_name(cls)
            class_parents.setdefault(cls, ())
            if cls not in types[tup.entity]:
                types[tup.entity].append(cls)
            continue
        if tup.property != "Facts:":
            raise UnknownEntityInTuple(f"unsupported property kind '{tup.property}'", index)
        fact = _parse_fact_value(tup.value, index)
        if fact.property not in properties:
            raise UnknownEntityInTuple(
                f"'{fact.property}' is not an extracted relation or data property", index
            )
        if isinstance(fact.object, Literal):
            if fact.property not in data_properties:
                raise MalformedFactValue(
                    f"object property '{fact.property}' cannot take a literal", index
                )
        else:
            if fact.property not in object_properties:
                raise MalformedFactValue(
                    f"data property '{fact.property}' needs a literal value", index
                )
            if fact.object not in facts:
                raise UnknownEntityInTuple(
                    f"fact object '{fact.object}' is not an extracted individual", index
                )
        if fact not in facts[tup.entity]:
            facts[tup.entity].append(fact)

    untyped = [n for n in individual_names if not types[n]]
    if untyped and not permissive:
        raise UntypedIndividuals(untyped)

    individuals = {
        name: IndividualRecord(tuple(sorted(types[name])), tuple(facts[name]))
        for name in individual_names
    }
    return Ontology(
        base=base,
        classes=class_parents,
        object_properties=object_properties,
        data_properties=data_properties,
        individuals=individuals,
    )


def _render_literal(lit: Literal) -> str:
    if lit.datatype.startswith(XSD):
        dt = "xsd:" + lit.datatype[len(XSD) :]
    else:
        dt = f"<{lit.datatype}>"
    return f'"{_escape(lit.value)}"^^{dt}'


def serialize_manchester(ont: Ontology) -> str:
    """Deterministic Manchester text: frames alphabetical, facts as built."""
    out: list[str] = []
    out.append(f"Prefix: ont: <{ont.base}#>")
    for label in sorted(STANDARD_PREFIXES):
        out.append(f"Prefix: {label}: <{STANDARD_PREFIXES[label]}>")

    def ref(name: str) -> str:
        return f"<{ont.iri(name)}>"

    for name in sorted(ont.classes):
        out.append("")
        out.append(f"Class: {ref(name)}")
        parents = ont.classes[name]
        if parents:
            out.append("  SubClassOf: " + ", ".join(ref(p) for p in sorted(parents)))
    for name in sorted(ont.object_properties):
        out.append("")
        out.append(f"ObjectProperty: {ref(name)}")
    for name in sorted(ont.data_properties):
        out.append("")
        out.append(f"DataProperty: {ref(name)}")
    for name in sorted(ont.individuals):
        record = ont.individuals[name]
        out.append("")
        out.append(f"Individual: {ref(name)}")
        if record.types:
            out.append("  Types: " + ", ".join(ref(t) for t in sorted(record.types)))
        if record.facts:
            rendered = []
            for fact in record.facts:
                obj = (
                    _render_literal(fact.object)
                    if isinstance(fact.object, Literal)
                    else ref(fact.object)
                )
                entry = f"{ref(fact.property)} {obj}"
                rendered.append("not " + entry if fact.negated else entry)
            out.append("  Facts: " + ", ".join(rendered))
    return "\n".join(out) + "\n"


def _split_entries(text: str, line: int) -> list[str]:
    """Split on commas that sit outside quotes and angle brackets."""
    entries: list[str] = []
    buf: list[str] = []
    in_string = False
    in_angle = False
    escaped = False
    for ch in text:
        if in_string:
            buf.append(ch)
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif in_angle:
            buf.append(ch)
            if ch == ">":
                in_angle = False
        elif ch == ",":
            entries.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
            if ch == '"':
                in_string = True
            elif ch == "<":
                in_angle = True
    if in_string or in_angle:
        raise ManchesterSyntaxError("unterminated literal or IRI", line)
    entries.append("".join(buf).strip())
    return entries


_FRAME_KEYWORDS = ("Class", "ObjectProperty", "DataProperty", "Individual")


class _Reader:
    """Line-oriented reader for the Manchester subset the writer emits."""

    def __init__(self, text: str):
        self.prefixes: dict[str, str] = dict(STANDARD_PREFIXES)
        self.classes: dict[str, tuple[str, ...]] = {}
        self.object_properties: list[str] = []
        self.data_properties: list[str] = []
        self.types: dict[str, list[str]] = {}
        self.facts: dict[str, list[Fact]] = {}
        self.base: "str | None" = None
        self._parse(text)

    def _local(self, token: str, line: int) -> str:
        if not (token.startswith("<") and token.endswith(">")):
            raise ManchesterSyntaxError(f"expected an <IRI>, got '{token}'", line)
        iri = token[1:-1]
        assert self.base is not None
        prefix = self.base + "#"
        if not iri.startswith(prefix):
            raise UnsupportedConstruct(f"IRI outside the ontology namespace: <{iri}>", line)
        name = iri[len(prefix):]
        if not LOCAL_NAME_RE.match(name):
            raise ManchesterSyntaxError(f"illegal local name in <{iri}>", line)
        return name

    def _parse(self, text: str) -> None:
        frame: "tuple[str, str] | None" = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            indented = raw[0] in " \t"
            line = raw.strip()
            key, sep, rest = line.partition(":")
            if not sep:
                raise ManchesterSyntaxError(f"expected 'Keyword: ...', got '{line}'", lineno)
            key = key.strip()
            rest = rest.strip()
            if not indented and key == "Prefix":
                label, sep2, iri = rest.partition(":")
                label, iri = label.strip(), iri.strip()
                if not sep2 or not (iri.startswith("<") and iri.endswith(">")):
                    raise ManchesterSyntaxError("bad prefix declaration", lineno)
                self.prefixes[label] = iri[1:-1]
                if label == "ont":
                    self.base = iri[1:-1].rstrip("#")
                continue
            if self.base is None:
                raise ManchesterSyntaxError("missing 'Prefix: ont:' declaration", lineno)
            if not indented:
                if key not in _FRAME_KEYWORDS:
                    raise UnsupportedConstruct(f"{key}: frame", lineno)
                name = self._local(rest, lineno)
                frame = (key, name)
                if key == "Class":
                    self.classes.setdefault(name, ())
                elif key == "ObjectProperty":
                    if name not in self.object_properties:
                        self.object_properties.append(name)
                elif key == "DataProperty":
                    if name not in self.data_properties:
                        self.data_properties.append(name)
                else:
                    self.types.setdefault(name, [])
                    self.facts.setdefault(name, [])
                continue
            if frame is None:
                raise ManchesterSyntaxError("property line outside a frame", lineno)
            self._inner(frame, key, rest, lineno)

    def _inner(self, frame: tuple[str, str], key: str, rest: str, lineno: int) -> None:
        frame_kind, name = frame
        if frame_kind == "Class":
            if key != "SubClassOf":
                raise UnsupportedConstruct(f"{key}: in a Class frame", lineno)
            parents = tuple(self._local(e, lineno) for e in _split_entries(rest, lineno))
            self.classes[name] = tuple(sorted(set(self.classes.get(name, ()) + parents)))
        elif frame_kind == "Individual":
            if key == "Types":
                for entry in _split_entries(rest, lineno):
                    cls = self._local(entry, lineno)
                    if cls not in self.types[name]:
                        self.types[name].append(cls)
            elif key == "Facts":
                for entry in _split_entries(rest, lineno):
                    self._fact(name, entry, lineno)
            else:
                raise UnsupportedConstruct(f"{key}: in an Individual frame", lineno)
        else:
            raise UnsupportedConstruct(f"{key}: in a {frame_kind} frame", lineno)

    def _fact(self, name: str, entry: str, lineno: int) -> None:
        negated = False
        if entry.startswith("not ") or entry.startswith("not\t"):
            negated = True
            entry = entry[4:].strip()
        parts = entry.split(None, 1)
        if len(parts) != 2:
            raise ManchesterSyntaxError(f"bad fact entry '{entry}'", lineno)
        prop = self._local(parts[0], lineno)
        obj_text = parts[1].strip()
        obj: "str | Literal"
        if obj_text.startswith('"'):
            m = _LITERAL_RE.match(obj_text)
            if not m:
                raise ManchesterSyntaxError(f"bad literal '{obj_text}'", lineno)
            datatype = m.group(2)
            if datatype is None:
                dt_iri = XSD + "string"
            elif datatype.startswith("<") and datatype.endswith(">"):
                dt_iri = datatype[1:-1]
            elif ":" in datatype:
                label, local = datatype.split(":", 1)
                if label not in self.prefixes:
                    raise ManchesterSyntaxError(f"undeclared prefix '{label}'", lineno)
                dt_iri = self.prefixes[label] + local
            else:
                raise ManchesterSyntaxError(f"bad datatype '{datatype}'", lineno)
            obj = Literal(_unescape(m.group(1)), dt_iri)
        else:
            obj = self._local(obj_text, lineno)
        fact = Fact(prop, obj, negated)
        if fact not in self.facts[name]:
            self.facts[name].append(fact)


def parse_manchester(text: str) -> Ontology:
    """Read back the subset :func:`serialize_manchester` writes."""
    reader = _Reader(text)
    if reader.base is None:
        raise ManchesterSyntaxError("missing 'Prefix: ont:' declaration", 1)
    for name, record_types in reader.types.items():
        for cls in record_types:
            reader.classes.setdefault(cls, ())
    individuals = {
        name: IndividualRecord(tuple(sorted(reader.types[name])), tuple(reader.facts[name]))
        for name in reader.types
    }
    return Ontology(
        base=reader.base,
        classes=reader.classes,
        object_properties=tuple(sorted(reader.object_properties)),
        data_properties=tuple(sorted(reader.data_properties)),
        individuals=individuals,
    )


def to_triples(ont: Ontology) -> frozenset[Triple]:
    """Asserted triples only: types, subclass edges, non-negated facts."""
    triples: set[Triple] = set()
    for name, parents in ont.classes.items():
        for parent in parents:
            triples.add(Triple(ont.iri(name), RDFS_SUBCLASSOF, ont.iri(parent)))
    for name, record in ont.individuals.items():
        subject = ont.iri(name)
        for cls in record.types:
            triples.add(Triple(subject, RDF_TYPE, ont.iri(cls)))
        for fact in record.facts:
            if fact.negated:
                continue
            obj = fact.object if isinstance(fact.object, Literal) else ont.iri(fact.object)
            triples.add(Triple(subject, ont.iri(fact.property), obj))
    return frozenset(triples)
