"""Theory-elements: staged predicates over structures.

A theory-element bundles a signature, three axiom lists (partial models,
potential models, models) and a named constraint over sets of applications.
Theory-elements are plain data so that they can be loaded from JSON; the
built-in presets are ``counting``, ``pps``, ``tfv`` and ``tfi``.

Signature kinds are ``relation``, ``operation`` and ``constant``.  A constant
is stored in a structure as a relation containing the single pair ``(z, z)``;
dropping a theoretical constant from a structure also drops ``z`` from the
carrier.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from . import geometry, worlds  # noqa: F401  (registers domain axioms)
from .axioms import FAIL, PASS, AxiomId, CheckReport, axiom, check_axiom
from .structure import Structure, restrict

KINDS = ("relation", "operation", "constant")


class SignatureError(ValueError):
    """A structure lacks a name the signature requires, or has it with the wrong kind."""


class StageError(ValueError):
    """A structure did not pass the stage a check presupposes."""


@dataclass(frozen=True)
class Signature:
    kinds: Mapping[str, str]
    theoretical: frozenset[str] = frozenset()

    def __post_init__(self):
        kinds = dict(self.kinds)
        for name, kind in kinds.items():
            if kind not in KINDS:
                raise SignatureError(f"{name!r}: unknown kind {kind!r}")
        theoretical = frozenset(self.theoretical)
        if not theoretical <= set(kinds):
            extra = sorted(theoretical - set(kinds))[0]
            raise SignatureError(f"theoretical term {extra!r} is not in the signature")
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "theoretical", theoretical)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.kinds)

    @property
    def partial_names(self) -> tuple[str, ...]:
        return tuple(n for n in self.kinds if n not in self.theoretical)


def _structure_kind(s: Structure, name: str, declared: str) -> str | None:
    actual = s.kind(name)
    if declared == "constant" and actual == "relation":
        return "constant"
    return actual


def require(s: Structure, sig: Signature, names: Iterable[str]) -> None:
    for name in names:
        declared = sig.kinds[name]
        actual = _structure_kind(s, name, declared)
        if actual is None:
            raise SignatureError(f"structure has no {declared} named {name!r}")
        if actual != declared:
            raise SignatureError(f"{name!r} should be a {declared}, structure has a {actual}")


def reduct(s: Structure, sig: Signature, keep: Iterable[str]) -> Structure:
    """Forget every table not in ``keep``; elements marked by a dropped
    signature constant leave the carrier with it."""
    keep = set(keep)
    dropped_constants = [
        n for n, k in sig.kinds.items() if k == "constant" and n not in keep and n in s.relations
    ]
    marked = {a for n in dropped_constants for (a, b) in s.relations[n]}
    slim = Structure(
        s.carrier,
        {n: v for n, v in s.relations.items() if n in keep},
        {n: v for n, v in s.operations.items() if n in keep},
    )
    if marked:
        rest = [e for e in s.carrier if e not in marked]
        return restrict(slim, rest)
    return slim


ConstraintFn = Callable[["TheoryElement", Sequence[Structure]], CheckReport]
CONSTRAINTS: dict[str, ConstraintFn] = {}


def register_constraint(name: str):
    def deco(fn: ConstraintFn) -> ConstraintFn:
        CONSTRAINTS[name] = fn
        return fn

    return deco


@dataclass(frozen=True)
class TheoryElement:
    name: str
    signature: Signature
    partial_axioms: tuple[AxiomId, ...] = ()
    potential_axioms: tuple[AxiomId, ...] = ()
    model_axioms: tuple[AxiomId, ...] = ()
    constraint: str = "trivial"

    def __post_init__(self):
        for attr in ("partial_axioms", "potential_axioms", "model_axioms"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if self.constraint not in CONSTRAINTS:
            raise SignatureError(f"unknown constraint {self.constraint!r}")
        names = set(self.signature.kinds)
        for stage in ("partial_axioms", "potential_axioms", "model_axioms"):
            for a in getattr(self, stage):
                for arg in a.args:
                    if isinstance(arg, str) and arg not in names:
                        raise SignatureError(f"{self.name}: axiom {a} names {arg!r}, not in the signature")
        for a in self.partial_axioms:
            for arg in a.args:
                if arg in self.signature.theoretical:
                    raise SignatureError(
                        f"{self.name}: partial-model axiom {a} uses theoretical term {arg!r}"
                    )

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "signature": dict(self.signature.kinds),
            "theoretical": sorted(self.signature.theoretical),
            "partial": [str(a) for a in self.partial_axioms],
            "potential": [str(a) for a in self.potential_axioms],
            "model": [str(a) for a in self.model_axioms],
            "constraint": self.constraint,
        }


def theory_from_dict(doc: Mapping[str, Any]) -> TheoryElement:
    try:
        sig = Signature(doc["signature"], frozenset(doc.get("theoretical", ())))
        return TheoryElement(
            name=doc["name"],
            signature=sig,
            partial_axioms=tuple(AxiomId.parse(t) for t in doc.get("partial", ())),
            potential_axioms=tuple(AxiomId.parse(t) for t in doc.get("potential", ())),
            model_axioms=tuple(AxiomId.parse(t) for t in doc.get("model", ())),
            constraint=doc.get("constraint", "trivial"),
        )
    except KeyError as exc:
        raise SignatureError(f"theory document lacks field {exc.args[0]!r}") from None


def load_theory(path) -> TheoryElement:
    with open(path, encoding="utf-8") as fh:
        return theory_from_dict(json.load(fh))


@dataclass(frozen=True)
class Verdict:
    stage: str
    passed: bool
    reports: tuple[CheckReport, ...] = ()
    violation: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d = {
            "stage": self.stage,
            "pass": self.passed,
            "reports": [r.to_dict() for r in self.reports],
        }
        if self.violation is not None:
            d["violation"] = self.violation
        return d


def _run(s: Structure, axioms: Iterable[AxiomId]) -> list[CheckReport]:
    return [check_axiom(s, a) for a in axioms]


def check_partial_model(te: TheoryElement, s: Structure) -> Verdict:
    sig = te.signature
    require(s, sig, sig.partial_names)
    reports = _run(reduct(s, sig, sig.partial_names), te.partial_axioms)
    return Verdict("partial", all(r.passed for r in reports), tuple(reports))


def check_potential_model(te: TheoryElement, s: Structure) -> Verdict:
    sig = te.signature
    require(s, sig, sig.names)
    partial = check_partial_model(te, s)
    full = reduct(s, sig, sig.names)
    reports = list(partial.reports) + _run(full, te.potential_axioms)
    return Verdict("potential", all(r.passed for r in reports), tuple(reports))


def check_model(te: TheoryElement, s: Structure) -> Verdict:
    potential = check_potential_model(te, s)
    if not potential.passed:
        return Verdict("model", False, potential.reports, violation="not a potential model")
    full = reduct(s, te.signature, te.signature.names)
    reports = list(potential.reports) + _run(full, te.model_axioms)
    return Verdict("model", all(r.passed for r in reports), tuple(reports))


def check_constraint(te: TheoryElement, structures: Sequence[Structure]) -> CheckReport:
    structures = list(structures)
    for i, s in enumerate(structures):
        if not check_potential_model(te, s).passed:
            raise StageError(f"application {i + 1} is not a potential model of {te.name}")
    return CONSTRAINTS[te.constraint](te, structures)


@register_constraint("trivial")
def _trivial(te: TheoryElement, structures: Sequence[Structure]) -> CheckReport:
    return CheckReport(axiom("constraint", te.name), PASS)


@register_constraint("equal_measure_on_zgl")
def _equal_measure(te: TheoryElement, structures: Sequence[Structure]) -> CheckReport:
    """Equidecomposable rectangles in different applications get the same measure.

    A counterexample is ``(i, a, b, j, c, d)``: rectangle ``(a, b)`` of
    application ``i`` and rectangle ``(c, d)`` of application ``j``, with
    applications counted from 1.
    """
    op = next(n for n, k in te.signature.kinds.items() if k == "operation")
    entries = []
    for i, s in enumerate(structures):
        for (a, b), v in s.operations[op].items():
            entries.append((i, a, b, v, geometry.rectangle_of(a, b)))
    entries.sort(key=lambda e: (e[0], structures[e[0]].index[e[1]], structures[e[0]].index[e[2]]))
    for (i, a, b, v, r), (j, c, d, w, q) in itertools.combinations(entries, 2):
        if i == j or r is None or q is None:
            continue
        if v != w and geometry.zgl(r, q) is not None:
            return CheckReport(
                axiom("constraint", te.name),
                FAIL,
                (str(i + 1), a, b, str(j + 1), c, d),
                detail=f"{op}({a},{b}) = {v} but {op}({c},{d}) = {w}",
            )
    return CheckReport(axiom("constraint", te.name), PASS)


# -- presets ------------------------------------------------------------------------

_LINEAR = ("reflexive", "antisymmetric", "transitive", "connex")


def _linear(order: str) -> list[AxiomId]:
    return [axiom(k, order) for k in _LINEAR]


COUNTING = TheoryElement(
    name="counting",
    signature=Signature({"leq": "relation", "plus": "operation"}),
    partial_axioms=tuple(_linear("leq")),
    model_axioms=(axiom("counting_on", "leq", "plus"),),
)

PPS = TheoryElement(
    name="pps",
    signature=Signature(
        {"leq": "relation", "plus": "operation", "zero": "constant"}, frozenset({"zero"})
    ),
    partial_axioms=tuple(_linear("leq")) + (axiom("counting_on", "leq", "plus"),),
    potential_axioms=(axiom("singleton", "zero"), *_linear("leq"), axiom("least_element", "leq", "zero")),
    model_axioms=(axiom("identity_element", "plus", "zero"),),
)

TFV = TheoryElement(
    name="tfv",
    signature=Signature(
        {
            "cong": "relation",
            "sub": "relation",
            "zgl": "relation",
            "rect": "relation",
            "comp": "operation",
            "prec": "relation",
        },
        frozenset({"prec"}),
    ),
    potential_axioms=(axiom("prec_definition", "prec", "zgl", "sub"),),
    model_axioms=(
        axiom("equivalence", "cong"),
        axiom("asymmetric", "sub"),
        axiom("transitive", "sub"),
        axiom("equivalence", "zgl"),
        axiom("associative_mod", "comp", "zgl"),
        axiom("commutative_mod", "comp", "zgl"),
        axiom("trichotomy", "prec", "zgl"),
        axiom("rectangle_normal_form", "zgl", "rect"),
    ),
)

TFI = TheoryElement(
    name="tfi",
    signature=Signature({"mu": "operation"}, frozenset({"mu"})),
    partial_axioms=(axiom("measure_lexicon"),),
    potential_axioms=(axiom("measure_typing", "mu"),),
    model_axioms=(axiom("area_formula", "mu"),),
    constraint="equal_measure_on_zgl",
)

PRESETS: dict[str, TheoryElement] = {te.name: te for te in (COUNTING, PPS, TFV, TFI)}
