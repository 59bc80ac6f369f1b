"""JSON algebra descriptions and the bundled fixture corpus.

A description looks like::

    {"field": "Q",
     "vertices": ["x", "y"],
     "arrows": [{"name": "a", "from": "x", "to": "y"}],
     "relations": [[["1", ["b", "a"]], ["-1", ["c"]]]]}

Each relation is a list of ``[coefficient, word]`` terms, the word listing
arrow names right to left (the last arrow is applied first).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path as FsPath

from .algebra import Arrow, AlgebraTable, Quiver, Relation, build_table, path_from_word
from .errors import InadmissibleRelation, ParseError
from .linalg import Field, QQ

FIXTURE_NAMES = ("ex1_10", "s4_2", "s4_3", "s4_4", "s4_5", "s4_6",
                 "hereditary_a2", "local_dual_numbers", "semisimple_2", "zero")


@dataclass(frozen=True)
class AlgebraDescription:
    quiver: Quiver
    relations: tuple[Relation, ...]
    field: Field = QQ
    name: str | None = None
    notes: str | None = None

    def build(self, field: Field | None = None, **kwargs) -> AlgebraTable:
        return build_table(self.quiver, self.relations, field or self.field, **kwargs)


_GF = re.compile(r"^\s*(?:GF|F_?|Z/)\(?\s*(\d+)\s*\)?Z?\s*$", re.IGNORECASE)


def parse_field(value) -> Field:
    if isinstance(value, dict):
        kind = value.get("kind")
        if kind == "rationals":
            return QQ
        if kind == "prime-field":
            p = value.get("characteristic")
            if not isinstance(p, int):
                raise ParseError("prime-field needs an integer characteristic", "$.field")
            return _prime_field(p)
        raise ParseError(f"unknown field kind {kind!r}", "$.field")
    if isinstance(value, int) and not isinstance(value, bool):
        return QQ if value == 0 else _prime_field(value)
    if isinstance(value, str):
        if value.strip() in ("Q", "QQ", "rationals"):
            return QQ
        m = _GF.match(value)
        if m:
            return _prime_field(int(m.group(1)))
    raise ParseError(f"unrecognised field {value!r}", "$.field")


def _prime_field(p: int) -> Field:
    try:
        return Field(p)
    except ValueError as exc:
        raise ParseError(str(exc), "$.field") from None


def field_to_json(F: Field) -> str:
    return "Q" if F.characteristic == 0 else f"GF({F.characteristic})"


def _coefficient(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError("coefficient must be a string like \"-3/2\" or an integer", where)
    try:
        return Fraction(raw.strip() if isinstance(raw, str) else raw)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {raw!r}", where) from None


def _expect(cond: bool, message: str, where: str):
    if not cond:
        raise ParseError(message, where)


def from_document(doc, source: str = "<input>") -> AlgebraDescription:
    _expect(isinstance(doc, dict), "top level must be an object", "$")
    unknown = set(doc) - {"field", "vertices", "arrows", "relations", "notes", "name"}
    _expect(not unknown, f"unknown keys {sorted(unknown)}", "$")
    field = parse_field(doc.get("field", "Q"))
    vertices = doc.get("vertices", [])
    _expect(isinstance(vertices, list) and all(isinstance(v, str) and v for v in vertices),
            "vertices must be a list of non-empty strings", "$.vertices")
    arrows = []
    for i, a in enumerate(doc.get("arrows", [])):
        where = f"$.arrows[{i}]"
        _expect(isinstance(a, dict) and set(a) == {"name", "from", "to"},
                "arrow must be an object with name, from, to", where)
        _expect(all(isinstance(a[k], str) and a[k] for k in a), "arrow fields must be non-empty strings", where)
        for k in ("from", "to"):
            _expect(a[k] in vertices, f"unknown vertex {a[k]!r}", f"{where}.{k}")
        arrows.append(Arrow(a["name"], a["from"], a["to"]))
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except ParseError as exc:
        raise ParseError(str(exc), "$") from None
    relations = []
    for i, rel in enumerate(doc.get("relations", [])):
        where = f"$.relations[{i}]"
        _expect(isinstance(rel, list) and rel, "relation must be a non-empty list of terms", where)
        terms = []
        for j, term in enumerate(rel):
            tw = f"{where}[{j}]"
            _expect(isinstance(term, list) and len(term) == 2 and isinstance(term[1], list),
                    "term must be [coefficient, [arrow names]]", tw)
            coeff = _coefficient(term[0], f"{tw}[0]")
            word = term[1]
            _expect(all(isinstance(n, str) for n in word), "arrow names must be strings", f"{tw}[1]")
            try:
                path = path_from_word(quiver, word) if word else None
            except ParseError as exc:
                raise ParseError(str(exc), f"{tw}[1]") from None
            if path is None:
                raise InadmissibleRelation("trivial paths are not allowed in relations", f"{tw}[1]")
            terms.append((coeff, path))
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise InadmissibleRelation("relation terms are not parallel paths", where)
        if all(c == 0 for c, _ in terms):
            raise InadmissibleRelation("relation has only zero coefficients", where)
        relations.append(Relation(tuple((c, p.word) for c, p in terms)))
    notes = doc.get("notes")
    name = doc.get("name")
    _expect(notes is None or isinstance(notes, str), "notes must be a string", "$.notes")
    _expect(name is None or isinstance(name, str), "name must be a string", "$.name")
    return AlgebraDescription(quiver, tuple(relations), field, name, notes)


def parse_text(text: str, source: str = "<input>") -> AlgebraDescription:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    try:
        return from_document(doc, source)
    except ParseError as exc:
        raise type(exc)(str(exc), None if str(exc).startswith(source) else source) from None


def to_document(desc: AlgebraDescription) -> dict:
    doc = {}
    if desc.name is not None:
        doc["name"] = desc.name
    doc["field"] = field_to_json(desc.field)
    doc["vertices"] = list(desc.quiver.vertices)
    doc["arrows"] = [{"name": a.name, "from": a.source, "to": a.target} for a in desc.quiver.arrows]
    doc["relations"] = [[[str(c), list(w)] for c, w in r.terms] for r in desc.relations]
    if desc.notes is not None:
        doc["notes"] = desc.notes
    return doc


def serialize(desc: AlgebraDescription) -> str:
    """Stable JSON text; one arrow or relation per line."""
    doc = to_document(desc)
    lines = ["{"]
    items = []
    for key, value in doc.items():
        if key in ("arrows", "relations") and value:
            inner = ",\n".join("    " + json.dumps(v, ensure_ascii=False) for v in value)
            items.append(f"  {json.dumps(key)}: [\n{inner}\n  ]")
        else:
            items.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}")
    lines.append(",\n".join(items))
    lines.append("}")
    return "\n".join(lines) + "\n"


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise ParseError(f"unknown fixture {name!r}")
    return resources.files("stratalg").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")


def fixture(name: str) -> AlgebraDescription:
    return parse_text(fixture_text(name), f"fixtures/{name}")


def fixtures() -> dict[str, AlgebraDescription]:
    return {n: fixture(n) for n in FIXTURE_NAMES}


def fixture_table(name: str, field: Field | None = None) -> AlgebraTable:
    return fixture(name).build(field)


def load(source: str) -> AlgebraDescription:
    """Read a description from a file path, or a bundled fixture by name (``s4_2`` or ``fixtures/s4_2``)."""
    p = FsPath(source)
    if p.is_file():
        try:
            text = p.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read file: {exc}", source) from None
        return parse_text(text, source)
    name = source[len("fixtures/"):] if source.startswith("fixtures/") else source
    name = name[:-5] if name.endswith(".json") else name
    if name in FIXTURE_NAMES:
        return fixture(name)
    raise ParseError("no such file or fixture", source)
