"""Decidable axiom predicates over finite structures.

Every axiom is a universally quantified body over a fixed number of element
variables.  ``check_axiom`` enumerates instances in lexicographic order of the
carrier (declaration order) and stops at the first instance whose body is
false, so counterexamples are deterministic.  A body may also answer ``None``,
meaning the instance mentions an undefined operation application; such
instances count as vacuously true and are tallied in the report.

Domain-specific predicates (zero laws, area formulas, ...) are added with
:func:`register_axiom` by the modules that own them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .structure import Structure, StructureError

PASS = "pass"
FAIL = "fail"
PASS_UP_TO_BOUND = "pass_up_to_bound"


class AxiomError(ValueError):
    """Unknown axiom, unknown name, or a name of the wrong kind."""


@dataclass(frozen=True)
class AxiomId:
    kind: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}:{','.join(str(a) for a in self.args)}"

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        """``"transitive:leq"`` -> ``AxiomId("transitive", ("leq",))``."""
        kind, _, rest = text.strip().partition(":")
        kind = kind.strip().replace("-", "_")
        if kind not in REGISTRY:
            raise AxiomError(f"unknown axiom {kind!r}")
        spec = REGISTRY[kind]
        raw = [a.strip() for a in rest.split(",")] if rest else []
        if len(raw) != len(spec.params):
            raise AxiomError(
                f"axiom {kind!r} takes {len(spec.params)} argument(s) ({', '.join(spec.params)}), got {len(raw)}"
            )
        args = []
        for value, p in zip(raw, spec.params):
            if p == "int":
                try:
                    args.append(int(value))
                except ValueError:
                    raise AxiomError(f"axiom {kind!r}: expected an integer, got {value!r}") from None
            else:
                args.append(value)
        return cls(kind, tuple(args))


def axiom(kind: str, *args) -> AxiomId:
    return AxiomId(kind, tuple(args))


@dataclass(frozen=True)
class CheckReport:
    axiom: AxiomId
    verdict: str
    counterexample: tuple | None = None
    bound_used: int | None = None
    vacuous: int = 0
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "axiom": str(self.axiom),
            "verdict": self.verdict,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "bound_used": self.bound_used,
            "vacuous": self.vacuous,
            "detail": self.detail,
        }


Body = Callable[..., "bool | None"]


@dataclass(frozen=True)
class AxiomSpec:
    kind: str
    params: tuple[str, ...]  # "relation", "operation", "int"
    arity: int
    body: Body
    bounded: bool = False


REGISTRY: dict[str, AxiomSpec] = {}


def register_axiom(kind: str, params: Iterable[str], arity: int, *, bounded: bool = False):
    """Register ``body(s, *args, *elements) -> bool | None`` under ``kind``."""

    def deco(body: Body) -> Body:
        REGISTRY[kind] = AxiomSpec(kind, tuple(params), arity, body, bounded)
        return body

    return deco


def _validate(s: Structure, a: AxiomId) -> AxiomSpec:
    spec = REGISTRY.get(a.kind)
    if spec is None:
        raise AxiomError(f"unknown axiom {a.kind!r}")
    if len(a.args) != len(spec.params):
        raise AxiomError(f"axiom {a.kind!r} expects {len(spec.params)} argument(s), got {len(a.args)}")
    for value, p in zip(a.args, spec.params):
        if p == "int":
            if not isinstance(value, int) or value < 1:
                raise AxiomError(f"axiom {a.kind!r}: bound must be a positive integer, got {value!r}")
            continue
        actual = s.kind(value)
        if actual is None:
            raise AxiomError(f"axiom {a}: no relation or operation named {value!r}")
        if actual != p:
            raise AxiomError(f"axiom {a}: {value!r} is a {actual}, expected a {p}")
    return spec


def evaluate(s: Structure, a: AxiomId, instance: tuple) -> bool | None:
    """Evaluate the axiom body on one instance (True, False, or None if vacuous)."""
    spec = _validate(s, a)
    if len(instance) != spec.arity:
        raise AxiomError(f"axiom {a} quantifies over {spec.arity} element(s), got {len(instance)}")
    return spec.body(s, *a.args, *instance)


def replay(s: Structure, report: CheckReport) -> bool | None:
    """Re-evaluate a report's counterexample; a genuine one yields False."""
    if report.counterexample is None:
        raise AxiomError("report carries no counterexample")
    return evaluate(s, report.axiom, tuple(report.counterexample))


def check_axiom(s: Structure, a: AxiomId) -> CheckReport:
    spec = _validate(s, a)
    body = spec.body
    vacuous = 0
    for inst in itertools.product(s.carrier, repeat=spec.arity):
        result = body(s, *a.args, *inst)
        if result is None:
            vacuous += 1
        elif not result:
            return CheckReport(a, FAIL, inst, a.args[-1] if spec.bounded else None, vacuous)
    if spec.bounded:
        return CheckReport(a, PASS_UP_TO_BOUND, None, a.args[-1], vacuous)
    return CheckReport(a, PASS, None, None, vacuous)


def check_all(s: Structure, axioms: Iterable[AxiomId]) -> list[CheckReport]:
    return [check_axiom(s, a) for a in axioms]


# -- relation properties ---------------------------------------------------


@register_axiom("reflexive", ["relation"], 1)
def _reflexive(s, r, a):
    return (a, a) in s.relations[r]


@register_axiom("irreflexive", ["relation"], 1)
def _irreflexive(s, r, a):
    return (a, a) not in s.relations[r]


@register_axiom("symmetric", ["relation"], 2)
def _symmetric(s, r, a, b):
    R = s.relations[r]
    return (a, b) not in R or (b, a) in R


@register_axiom("asymmetric", ["relation"], 2)
def _asymmetric(s, r, a, b):
    R = s.relations[r]
    return not ((a, b) in R and (b, a) in R)


@register_axiom("antisymmetric", ["relation"], 2)
def _antisymmetric(s, r, a, b):
    R = s.relations[r]
    return a == b or not ((a, b) in R and (b, a) in R)


@register_axiom("transitive", ["relation"], 3)
def _transitive(s, r, a, b, c):
    R = s.relations[r]
    return not ((a, b) in R and (b, c) in R) or (a, c) in R


@register_axiom("connex", ["relation"], 2)
def _connex(s, r, a, b):
    R = s.relations[r]
    return (a, b) in R or (b, a) in R


@register_axiom("equivalence", ["relation"], 3)
def _equivalence(s, r, a, b, c):
    return _reflexive(s, r, a) and _symmetric(s, r, a, b) and _transitive(s, r, a, b, c)


@register_axiom("weak_order", ["relation"], 3)
def _weak_order(s, r, a, b, c):
    return _reflexive(s, r, a) and _connex(s, r, a, b) and _transitive(s, r, a, b, c)


@register_axiom("trichotomy", ["relation", "relation"], 2)
def _trichotomy(s, order, eq, a, b):
    O = s.relations[order]
    return (a, b) in O or (a, b) in s.relations[eq] or (b, a) in O


# -- operation properties ----------------------------------------------------


@register_axiom("total_operation", ["operation"], 2)
def _total(s, op, a, b):
    return (a, b) in s.operations[op]


@register_axiom("closed_operation", ["operation"], 2)
def _closed(s, op, a, b):
    # Values outside the carrier are already rejected when the structure is built.
    v = s.operations[op].get((a, b))
    return v is None or v in s.index


@register_axiom("associative_mod", ["operation", "relation"], 3)
def _associative_mod(s, op, eq, a, b, c):
    f = s.operations[op]
    bc, ab = f.get((b, c)), f.get((a, b))
    if bc is None or ab is None:
        return None
    left, right = f.get((a, bc)), f.get((ab, c))
    if left is None or right is None:
        return None
    return (left, right) in s.relations[eq]


@register_axiom("commutative_mod", ["operation", "relation"], 2)
def _commutative_mod(s, op, eq, a, b):
    f = s.operations[op]
    ab, ba = f.get((a, b)), f.get((b, a))
    if ab is None or ba is None:
        return None
    return (ab, ba) in s.relations[eq]


def _strictly(R, a, b) -> bool:
    return (a, b) in R and (b, a) not in R


@register_axiom("monotone", ["relation", "operation"], 3)
def _monotone(s, order, op, a, b, c):
    """a >= b  <->  a.c >= b.c  <->  c.a >= c.b"""
    R, f = s.relations[order], s.operations[op]
    ac, bc, ca, cb = f.get((a, c)), f.get((b, c)), f.get((c, a)), f.get((c, b))
    if None in (ac, bc, ca, cb):
        return None
    return ((a, b) in R) == ((ac, bc) in R) == ((ca, cb) in R)


@register_axiom("positive", ["relation", "operation"], 2)
def _positive(s, order, op, a, b):
    ab = s.operations[op].get((a, b))
    if ab is None:
        return None
    return _strictly(s.relations[order], ab, a)


def multiple(s: Structure, op: str, a: str, n: int) -> str | None:
    """``n a`` with ``1a = a`` and ``(n+1)a = na o a``; None once undefined."""
    f = s.operations[op]
    x: str | None = a
    for _ in range(n - 1):
        x = f.get((x, a))
        if x is None:
            return None
    return x


@register_axiom("archimedean", ["relation", "operation", "int"], 4, bounded=True)
def _archimedean(s, order, op, bound, a, b, c, d):
    """a > b  ->  some n <= bound with  na o c > nb > d."""
    R, f = s.relations[order], s.operations[op]
    if not _strictly(R, a, b):
        return True
    undefined = False
    na, nb = a, b
    for n in range(1, bound + 1):
        if n > 1:
            na = f.get((na, a)) if na is not None else None
            nb = f.get((nb, b)) if nb is not None else None
        nac = f.get((na, c)) if na is not None else None
        if nac is None or nb is None:
            undefined = True
            continue
        if _strictly(R, nac, nb) and _strictly(R, nb, d):
            return True
    return None if undefined else False


# -- designated elements ------------------------------------------------------
#
# A constant is encoded as a relation holding exactly the pair (z, z).


def constant_value(s: Structure, const: str) -> str | None:
    pairs = s.relations[const]
    if len(pairs) != 1:
        return None
    (a, b), = pairs
    return a if a == b else None


@register_axiom("singleton", ["relation"], 0)
def _singleton(s, const):
    return constant_value(s, const) is not None


@register_axiom("least_element", ["relation", "relation"], 1)
def _least_element(s, order, const, k):
    z = constant_value(s, const)
    if z is None:
        return False
    R = s.relations[order]
    return (z, k) in R and (k == z or (k, z) not in R)


@register_axiom("identity_element", ["operation", "relation"], 1)
def _identity_element(s, op, const, k):
    """k + z = z + k = k"""
    z = constant_value(s, const)
    if z is None:
        return False
    f = s.operations[op]
    return f.get((k, z)) == k and f.get((z, k)) == k


# -- closed extensive structures -------------------------------------------------


def indifference_name(order: str) -> str:
    return f"{order}~"


def with_indifference(s: Structure, order: str) -> Structure:
    """Add ``a ~ b  <->  a >= b and b >= a`` under the name ``order~``."""
    R = s.relations[order]
    sim = {(a, b) for (a, b) in R if (b, a) in R}
    name = indifference_name(order)
    if s.kind(name) is not None:
        raise StructureError(f"name {name!r} is reserved for the indifference relation of {order!r}")
    return s.with_tables(relations={name: sim})


def extensive_axioms(order: str, op: str, bound: int) -> list[AxiomId]:
    """The five axioms of a closed extensive structure, in order."""
    return [
        axiom("weak_order", order),
        axiom("associative_mod", op, indifference_name(order)),
        axiom("monotone", order, op),
        axiom("archimedean", order, op, bound),
        axiom("positive", order, op),
    ]


def check_extensive_structure(s: Structure, order: str, op: str, bound: int) -> list[CheckReport]:
    """Check ``<A; >=; o>`` against the closed-extensive-structure axioms 1-5.

    Reports are returned in axiom order.  Axiom 2 is evaluated modulo the
    indifference relation derived from ``order``; to replay its counterexample
    use ``with_indifference(s, order)``.
    """
    if s.kind(order) != "relation":
        raise AxiomError(f"{order!r} is not a relation of the structure")
    if s.kind(op) != "operation":
        raise AxiomError(f"{op!r} is not an operation of the structure")
    if not isinstance(bound, int) or bound < 1:
        raise AxiomError("bound must be a positive integer")
    derived = with_indifference(s, order)
    return [check_axiom(derived, a) for a in extensive_axioms(order, op, bound)]
