"""Relations between worlds and theory-elements: series worlds and
specializations (found by injective-morphism search), conform modelling and
theoretization.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .axioms import FAIL, PASS, CheckReport, axiom
from .structure import Structure
from .theory import StageError, TheoryElement, check_model, check_partial_model, reduct

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    raw = os.environ.get("THEORIA_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"THEORIA_BUDGET must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError("THEORIA_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget of {nodes} nodes exhausted")
        self.nodes = nodes


@dataclass(frozen=True)
class Embedding:
    """``alpha`` maps elements of a part into the whole, ``beta`` maps its names."""

    alpha: Mapping[str, str]
    beta: Mapping[str, str]

    def to_dict(self) -> dict[str, Any]:
        return {"alpha": dict(self.alpha), "beta": dict(self.beta)}


@dataclass(frozen=True)
class MorphismWitness:
    maps: tuple[Embedding, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"maps": [m.to_dict() for m in self.maps]}


# -- replay ---------------------------------------------------------------------


def verify_embedding(part: Structure, whole: Structure, emb: Embedding) -> bool:
    """Check one ``(alpha_i, beta_i)`` against the series-world conditions.

    Written to follow the definition literally: for every ``a, b`` of the
    whole and every name ``f`` of the whole, (i) a relation pulled back along
    ``alpha``/``beta`` must hold in ``f``; (ii) for an operation,
    ``alpha(g(alpha^-1 a, alpha^-1 b)) = f(a, b)`` wherever the part's
    operation ``g`` is defined.
    """
    alpha, beta = dict(emb.alpha), dict(emb.beta)
    if set(alpha) != set(part.carrier) or set(beta) != set(part.names):
        return False
    if len(set(alpha.values())) != len(alpha) or len(set(beta.values())) != len(beta):
        return False
    if any(v not in whole.index for v in alpha.values()):
        return False
    for g, f in beta.items():
        if whole.kind(f) is None or part.kind(g) != whole.kind(f):
            return False
    alpha_inv = {v: k for k, v in alpha.items()}
    beta_inv = {v: k for k, v in beta.items()}
    image = set(alpha_inv)
    for a in whole.carrier:
        if a not in image:
            continue
        for b in whole.carrier:
            if b not in image:
                continue
            x, y = alpha_inv[a], alpha_inv[b]
            for f in whole.names:
                if f not in beta_inv:
                    continue
                g = beta_inv[f]
                if whole.kind(f) == "relation":
                    if (x, y) in part.relations[g] and (a, b) not in whole.relations[f]:
                        return False
                else:
                    z = part.operations[g].get((x, y))
                    if z is not None and whole.operations[f].get((a, b)) != alpha[z]:
                        return False
    return True


def verify_series_world(parts: Sequence[Structure], whole: Structure, witness: MorphismWitness) -> bool:
    return len(parts) == len(witness.maps) and all(
        verify_embedding(p, whole, m) for p, m in zip(parts, witness.maps)
    )


# -- search -------------------------------------------------------------------------


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.budget)


def _beta_candidates(part: Structure, whole: Structure):
    prel, pop = list(part.relations), list(part.operations)
    wrel, wop = list(whole.relations), list(whole.operations)
    for rs in itertools.permutations(wrel, len(prel)):
        for os_ in itertools.permutations(wop, len(pop)):
            beta = dict(zip(prel, rs))
            beta.update(zip(pop, os_))
            yield beta


class _AlphaSearch:
    """Backtracking over injective element maps for a fixed name map.

    The next variable is the unassigned part element with the fewest
    consistent images (ties: declaration order); images are tried in the
    whole's carrier order.
    """

    def __init__(self, part: Structure, whole: Structure, beta: Mapping[str, str], counter: _Counter):
        self.part, self.whole, self.counter = part, whole, counter
        self.rels = [(part.relations[g], whole.relations[f]) for g, f in beta.items() if g in part.relations]
        self.ops = [
            (part.operations[g], whole.operations[f]) for g, f in beta.items() if g in part.operations
        ]
        # entries of each part operation touching an element
        self.touch: dict[str, list[tuple[Mapping, Mapping, tuple[str, str], str]]] = {
            x: [] for x in part.carrier
        }
        for g, G in self.ops:
            for (p, q), z in g.items():
                for e in {p, q, z}:
                    self.touch[e].append((g, G, (p, q), z))
        self.degrees = [(_degrees(r), _degrees(R)) for r, R in self.rels]
        self.domains = {x: [v for v in whole.carrier if self._unary_ok(x, v)] for x in part.carrier}

    def _unary_ok(self, x: str, v: str) -> bool:
        for (r, R), (dr, dR) in zip(self.rels, self.degrees):
            if (x, x) in r and (v, v) not in R:
                return False
            (out_x, in_x), (out_v, in_v) = dr.get(x, (0, 0)), dR.get(v, (0, 0))
            if out_x > out_v or in_x > in_v:
                return False
        for g, G in self.ops:
            z = g.get((x, x))
            if z == x and G.get((v, v)) != v:
                return False
            if z is not None and (v, v) not in G:
                return False
        return True

    def _consistent(self, x: str, v: str, alpha: dict[str, str], used: set[str]) -> bool:
        for r, R in self.rels:
            for y, w in alpha.items():
                if (x, y) in r and (v, w) not in R:
                    return False
                if (y, x) in r and (w, v) not in R:
                    return False
        if not self.touch[x]:
            return True
        trial = dict(alpha)
        trial[x] = v
        for _, G, (p, q), z in self.touch[x]:
            if p in trial and q in trial:
                got = G.get((trial[p], trial[q]))
                if got is None:
                    return False
                if z in trial:
                    if got != trial[z]:
                        return False
                elif got in used or got == v:
                    return False
        return True

    def run(self) -> dict[str, str] | None:
        if any(not d for d in self.domains.values()):
            return None
        return self._extend({}, set())

    def _extend(self, alpha: dict[str, str], used: set[str]) -> dict[str, str] | None:
        if len(alpha) == len(self.part.carrier):
            return dict(alpha)
        best, best_cands = None, None
        for x in self.part.carrier:
            if x in alpha:
                continue
            cands = [v for v in self.domains[x] if v not in used and self._consistent(x, v, alpha, used)]
            if best is None or len(cands) < len(best_cands):
                best, best_cands = x, cands
                if not cands:
                    return None
        for v in best_cands:
            self.counter.tick()
            alpha[best] = v
            used.add(v)
            found = self._extend(alpha, used)
            if found is not None:
                return found
            del alpha[best]
            used.discard(v)
        return None


def _degrees(rel) -> dict[str, tuple[int, int]]:
    out: dict[str, list[int]] = {}
    for a, b in rel:
        out.setdefault(a, [0, 0])[0] += 1
        out.setdefault(b, [0, 0])[1] += 1
    return {k: (v[0], v[1]) for k, v in out.items()}


def _embed(part: Structure, whole: Structure, counter: _Counter) -> Embedding | None:
    if len(part.carrier) > len(whole.carrier):
        return None
    if len(part.relations) > len(whole.relations) or len(part.operations) > len(whole.operations):
        return None
    for beta in _beta_candidates(part, whole):
        counter.tick()
        alpha = _AlphaSearch(part, whole, beta, counter).run()
        if alpha is not None:
            ordered = {x: alpha[x] for x in part.carrier}
            return Embedding(ordered, beta)
    return None


def find_series_world_morphism(
    parts: Sequence[Structure], whole: Structure, budget: int | None = None
) -> MorphismWitness | None:
    """Injective structure-preserving maps from every part into ``whole``.

    Returns None when some part provably has no such map.  Raises
    BudgetExhausted when the node budget (shared by all parts) runs out.
    Images of different parts may overlap.
    """
    counter = _Counter(default_budget() if budget is None else budget)
    maps = []
    for part in parts:
        emb = _embed(part, whole, counter)
        if emb is None:
            return None
        maps.append(emb)
    return MorphismWitness(tuple(maps))


def check_is_specialization(part: Structure, whole: Structure, budget: int | None = None) -> MorphismWitness | None:
    return find_series_world_morphism([part], whole, budget)


# -- conform modelling -----------------------------------------------------------------


class ConformError(ValueError):
    pass


@dataclass(frozen=True)
class Incompatibility:
    """World ``i`` and world ``j`` (counted from 1) disagree on shared name ``kappa`` at ``pair``."""

    kappa: str
    i: int
    j: int
    pair: tuple[str, str]
    detail: str

    def to_dict(self) -> dict[str, Any]:
        return {"kappa": self.kappa, "i": self.i, "j": self.j, "pair": list(self.pair), "detail": self.detail}


@dataclass(frozen=True)
class ConformWitness:
    """Global tables on the union carrier; ``provenance`` lists the worlds
    (counted from 1) contributing each entry (every entry is forced by some world; pairs no
    world speaks about are left out)."""

    carrier: tuple[str, ...]
    kinds: Mapping[str, str]
    tables: Mapping[str, Any]
    provenance: Mapping[str, Mapping[tuple[str, str], tuple[int, ...]]]

    def to_dict(self) -> dict[str, Any]:
        out = {"carrier": list(self.carrier), "tables": {}}
        for k, table in self.tables.items():
            prov = self.provenance[k]
            if self.kinds[k] == "relation":
                rows = [[a, b, list(prov[(a, b)])] for (a, b) in table]
            else:
                rows = [[a, b, v, list(prov[(a, b)])] for (a, b), v in table.items()]
            out["tables"][k] = {"kind": self.kinds[k], "entries": rows}
        return out


def _correspondences(worlds: Sequence[Structure], shared) -> list[tuple[str, tuple[str, ...]]]:
    out = []
    for corr in shared:
        names = (corr,) * len(worlds) if isinstance(corr, str) else tuple(corr)
        if len(names) != len(worlds):
            raise ConformError(f"correspondence {names!r} must name one table per world")
        kinds = set()
        for i, (w, n) in enumerate(zip(worlds, names)):
            k = w.kind(n)
            if k is None:
                raise ConformError(f"world {i} has no relation or operation named {n!r}")
            kinds.add(k)
        if len(kinds) > 1:
            raise ConformError(f"correspondence {names!r} mixes relations and operations")
        label = names[0] if len(set(names)) == 1 else "=".join(names)
        out.append((label, names))
    return out


def _disagreement(wi: Structure, ni: str, wj: Structure, nj: str, overlap: Sequence[str]):
    if wi.kind(ni) == "relation":
        Ri, Rj = wi.relations[ni], wj.relations[nj]
        for a in overlap:
            for b in overlap:
                if ((a, b) in Ri) != ((a, b) in Rj):
                    held = "holds" if (a, b) in Ri else "fails"
                    return (a, b), f"({a},{b}) {held} in the first world only"
        return None
    fi, fj = wi.operations[ni], wj.operations[nj]
    inj = set(wj.carrier)
    ini = set(wi.carrier)
    for a in overlap:
        for b in overlap:
            u, v = fi.get((a, b)), fj.get((a, b))
            if u is not None and v is not None:
                if u != v:
                    return (a, b), f"values differ: {u} vs {v}"
            elif u is not None and u in inj:
                return (a, b), f"defined as {u} in the first world only"
            elif v is not None and v in ini:
                return (a, b), f"defined as {v} in the second world only"
    return None


def check_conform(worlds: Sequence[Structure], shared: Iterable) -> ConformWitness | Incompatibility:
    """Decide whether the worlds realise each shared table as restrictions of
    one global table on the union of their carriers.

    ``shared`` lists correspondences: a single name (same in every world) or
    a sequence of one name per world.
    """
    worlds = list(worlds)
    corrs = _correspondences(worlds, shared)
    for kappa, names in corrs:
        for i, j in itertools.combinations(range(len(worlds)), 2):
            cj = set(worlds[j].carrier)
            overlap = [e for e in worlds[i].carrier if e in cj]
            bad = _disagreement(worlds[i], names[i], worlds[j], names[j], overlap)
            if bad is not None:
                return Incompatibility(kappa, i + 1, j + 1, bad[0], bad[1])

    carrier: list[str] = []
    seen = set()
    for w in worlds:
        for e in w.carrier:
            if e not in seen:
                seen.add(e)
                carrier.append(e)
    kinds, tables, provenance = {}, {}, {}
    for kappa, names in corrs:
        prov: dict[tuple[str, str], list[int]] = {}
        kind = worlds[0].kind(names[0])
        if kind == "relation":
            table: Any = set()
            for i, (w, n) in enumerate(zip(worlds, names)):
                for p in w.relations[n]:
                    table.add(p)
                    prov.setdefault(p, []).append(i + 1)
        else:
            table = {}
            for i, (w, n) in enumerate(zip(worlds, names)):
                for p, v in w.operations[n].items():
                    table[p] = v
                    prov.setdefault(p, []).append(i + 1)
        pos = {e: k for k, e in enumerate(carrier)}
        keys = sorted(prov, key=lambda p: (pos[p[0]], pos[p[1]]))
        if kind == "relation":
            table = [p for p in keys]
        else:
            table = {p: table[p] for p in keys}
        kinds[kappa] = kind
        tables[kappa] = table
        provenance[kappa] = {p: tuple(prov[p]) for p in keys}
    return ConformWitness(tuple(carrier), kinds, tables, provenance)


def verify_conform(worlds: Sequence[Structure], shared: Iterable, witness: ConformWitness) -> bool:
    """Every world's table equals the global table restricted to its carrier."""
    worlds = list(worlds)
    for kappa, names in _correspondences(worlds, shared):
        table = witness.tables[kappa]
        for w, n in zip(worlds, names):
            c = set(w.carrier)
            if witness.kinds[kappa] == "relation":
                if {p for p in table if p[0] in c and p[1] in c} != set(w.relations[n]):
                    return False
            else:
                if len({p for p in table}) != len(table):
                    return False
                local = {p: v for p, v in table.items() if p[0] in c and p[1] in c and v in c}
                if local != dict(w.operations[n]):
                    return False
    return True


# -- theoretization ----------------------------------------------------------------------


def check_theoretization(
    lower: TheoryElement, upper: TheoryElement, witnesses: Sequence[Structure]
) -> CheckReport:
    """Instance-level check that partial models of ``upper`` are models of ``lower``.

    Each witness must pass ``upper``'s partial-model check; its reduct to
    ``lower``'s signature must then pass ``lower``'s model check.  An empty
    witness list passes vacuously (``vacuous == 1``).
    """
    a = axiom("theoretization", lower.name, upper.name)
    witnesses = list(witnesses)
    if not witnesses:
        return CheckReport(a, PASS, vacuous=1, detail="no witnesses")
    for i, s in enumerate(witnesses):
        if not check_partial_model(upper, s).passed:
            raise StageError(f"witness {i + 1} is not a partial model of {upper.name}")
    for i, s in enumerate(witnesses):
        low = reduct(s, upper.signature, lower.signature.names)
        verdict = check_model(lower, low)
        if not verdict.passed:
            failed = next(r for r in verdict.reports if not r.passed)
            return CheckReport(a, FAIL, (str(i + 1),), detail=f"witness {i + 1}: {failed.axiom} fails")
    return CheckReport(a, PASS)
