"""Finite relational structures: a carrier plus named binary relations and
binary partial operations.

A structure is immutable once built.  Element identifiers are opaque strings
and the carrier keeps its declaration order, which every search and check in
the package uses as its tie-breaking order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Iterable, Mapping

Pair = tuple[str, str]


class StructureError(ValueError):
    """Raised for malformed structure input."""


class ParseError(StructureError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class DanglingReference(StructureError):
    def __init__(self, name: str, entry: tuple, element: str):
        super().__init__(
            f"{name}: entry {list(entry)!r} references {element!r}, which is not in the carrier"
        )
        self.name = name
        self.entry = entry
        self.element = element


class DuplicateName(StructureError):
    pass


@dataclass(frozen=True)
class Structure:
    """A microworld ``(P, F)``: carrier ``P`` and binary relations/operations ``F``.

    ``relations`` maps a name to a frozenset of ordered pairs, ``operations``
    maps a name to a partial function given as ``{(a, b): value}``.
    """

    carrier: tuple[str, ...]
    relations: Mapping[str, frozenset[Pair]] = field(default_factory=dict)
    operations: Mapping[str, Mapping[Pair, str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        carrier = tuple(self.carrier)
        if not carrier:
            raise StructureError("carrier must be non-empty")
        seen: set[str] = set()
        for e in carrier:
            if not isinstance(e, str):
                raise StructureError(f"element identifiers must be strings, got {e!r}")
            if e in seen:
                raise StructureError(f"duplicate element {e!r} in carrier")
            seen.add(e)

        clash = set(self.relations) & set(self.operations)
        if clash:
            raise DuplicateName(f"name used for both a relation and an operation: {sorted(clash)[0]!r}")

        relations = {}
        for name, pairs in self.relations.items():
            frozen = frozenset(tuple(p) for p in pairs)
            for p in frozen:
                if len(p) != 2:
                    raise StructureError(f"{name}: relations are binary, got {list(p)!r}")
                for e in p:
                    if e not in seen:
                        raise DanglingReference(name, p, e)
            relations[name] = frozen

        operations = {}
        for name, graph in self.operations.items():
            table: dict[Pair, str] = {}
            for args, value in graph.items():
                args = tuple(args)
                if len(args) != 2:
                    raise StructureError(f"{name}: operations are binary, got arguments {list(args)!r}")
                for e in (*args, value):
                    if e not in seen:
                        raise DanglingReference(name, (*args, value), e)
                table[args] = value
            operations[name] = MappingProxyType(table)

        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "relations", MappingProxyType(relations))
        object.__setattr__(self, "operations", MappingProxyType(operations))

    @cached_property
    def index(self) -> Mapping[str, int]:
        return MappingProxyType({e: i for i, e in enumerate(self.carrier)})

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.relations) + tuple(self.operations)

    def kind(self, name: str) -> str | None:
        if name in self.relations:
            return "relation"
        if name in self.operations:
            return "operation"
        return None

    def holds(self, relation: str, a: str, b: str) -> bool:
        return (a, b) in self.relations[relation]

    def apply(self, operation: str, a: str, b: str) -> str | None:
        """Value of ``a op b``, or None where the operation is undefined."""
        return self.operations[operation].get((a, b))

    def restrict(self, subset: Iterable[str]) -> "Structure":
        return restrict(self, subset)

    def render(self) -> str:
        return render(self)

    def with_tables(
        self,
        relations: Mapping[str, Iterable[Pair]] | None = None,
        operations: Mapping[str, Mapping[Pair, str]] | None = None,
        carrier: Iterable[str] | None = None,
    ) -> "Structure":
        """Copy with some tables (or the carrier) replaced or added."""
        rels = dict(self.relations)
        ops = dict(self.operations)
        rels.update(relations or {})
        ops.update(operations or {})
        return Structure(tuple(carrier) if carrier is not None else self.carrier, rels, ops)

    def without(self, *names: str) -> "Structure":
        return Structure(
            self.carrier,
            {k: v for k, v in self.relations.items() if k not in names},
            {k: v for k, v in self.operations.items() if k not in names},
        )


def restrict(s: Structure, subset: Iterable[str]) -> Structure:
    """Substructure on ``subset`` (kept in carrier order).

    Relations are intersected with ``subset x subset``; an operation keeps an
    entry only if both arguments and the value lie in ``subset``.
    """
    keep = set(subset)
    if not keep:
        raise StructureError("cannot restrict to an empty subset")
    missing = keep - set(s.carrier)
    if missing:
        raise StructureError(f"element {sorted(missing)[0]!r} is not in the carrier")
    carrier = tuple(e for e in s.carrier if e in keep)
    relations = {
        name: frozenset(p for p in pairs if p[0] in keep and p[1] in keep)
        for name, pairs in s.relations.items()
    }
    operations = {
        name: {
            args: v
            for args, v in graph.items()
            if args[0] in keep and args[1] in keep and v in keep
        }
        for name, graph in s.operations.items()
    }
    return Structure(carrier, relations, operations)


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise StructureError(message)


def structure_from_dict(doc: Mapping[str, Any]) -> Structure:
    _expect(isinstance(doc, Mapping), "structure document must be a JSON object")
    unknown = set(doc) - {"carrier", "relations", "operations"}
    if unknown:
        raise StructureError(f"unknown field {sorted(unknown)[0]!r} in structure document")
    carrier = doc.get("carrier")
    _expect(isinstance(carrier, list), "'carrier' must be an array of strings")
    relations = doc.get("relations", {})
    operations = doc.get("operations", {})
    _expect(isinstance(relations, Mapping), "'relations' must be an object")
    _expect(isinstance(operations, Mapping), "'operations' must be an object")

    rels: dict[str, list[Pair]] = {}
    for name, pairs in relations.items():
        _expect(isinstance(pairs, list), f"relation {name!r} must be an array of pairs")
        rows = []
        for p in pairs:
            _expect(isinstance(p, list), f"relation {name!r}: entries must be arrays")
            if len(p) != 2:
                raise StructureError(
                    f"relation {name!r}: only binary relations are supported, got arity {len(p)}"
                )
            rows.append(tuple(p))
        rels[name] = rows

    ops: dict[str, dict[Pair, str]] = {}
    for name, rows in operations.items():
        _expect(isinstance(rows, list), f"operation {name!r} must be an array of [a, b, value]")
        if name in rels:
            raise DuplicateName(f"name {name!r} is used for both a relation and an operation")
        graph: dict[Pair, str] = {}
        for row in rows:
            _expect(isinstance(row, list), f"operation {name!r}: entries must be arrays")
            if len(row) != 3:
                raise StructureError(
                    f"operation {name!r}: entries must be [a, b, value] (binary operations only)"
                )
            a, b, v = row
            if (a, b) in graph and graph[(a, b)] != v:
                raise StructureError(
                    f"operation {name!r} is not functional at {[a, b]!r}: {graph[(a, b)]!r} vs {v!r}"
                )
            graph[(a, b)] = v
        ops[name] = graph
    return Structure(tuple(carrier), rels, ops)


def build_structure(text: str | bytes | Mapping[str, Any]) -> Structure:
    """Parse a structure document (JSON text or an already-decoded object)."""
    if isinstance(text, Mapping):
        return structure_from_dict(text)
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return structure_from_dict(doc)


def load_structure(path) -> Structure:
    with open(path, encoding="utf-8") as fh:
        return build_structure(fh.read())


def structure_to_dict(s: Structure) -> dict[str, Any]:
    idx = s.index
    return {
        "carrier": list(s.carrier),
        "relations": {
            name: [list(p) for p in sorted(s.relations[name], key=lambda p: (idx[p[0]], idx[p[1]]))]
            for name in sorted(s.relations)
        },
        "operations": {
            name: [
                [a, b, v]
                for (a, b), v in sorted(s.operations[name].items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))
            ]
            for name in sorted(s.operations)
        },
    }


def render(s: Structure) -> str:
    """Canonical document text: one table entry per line, names sorted."""
    doc = structure_to_dict(s)

    def dump(x) -> str:
        return json.dumps(x, ensure_ascii=False)

    def block(tables: dict) -> str:
        if not tables:
            return "{}"
        parts = []
        for name, rows in tables.items():
            if rows:
                body = ",\n".join(f"      {dump(r)}" for r in rows)
                parts.append(f"    {dump(name)}: [\n{body}\n    ]")
            else:
                parts.append(f"    {dump(name)}: []")
        return "{\n" + ",\n".join(parts) + "\n  }"

    return (
        "{\n"
        f'  "carrier": {dump(doc["carrier"])},\n'
        f'  "relations": {block(doc["relations"])},\n'
        f'  "operations": {block(doc["operations"])}\n'
        "}\n"
    )
