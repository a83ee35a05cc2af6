"""Independent reference implementations used by the tests.

Nothing here calls into the search or geometry code it is checking.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from theoria.structure import Structure

# -- morphisms --------------------------------------------------------------


def series_conditions(part: Structure, whole: Structure, alpha: dict, beta: dict) -> bool:
    """Conditions (i) and (ii) evaluated pair by pair over the part."""
    for g, f in beta.items():
        if g in part.relations:
            if not all((alpha[x], alpha[y]) in whole.relations[f] for x, y in part.relations[g]):
                return False
        else:
            for (x, y), z in part.operations[g].items():
                if whole.operations[f].get((alpha[x], alpha[y])) != alpha[z]:
                    return False
    return True


def brute_force_embeds(part: Structure, whole: Structure) -> bool:
    prel, pop = sorted(part.relations), sorted(part.operations)
    for rel_img in itertools.permutations(sorted(whole.relations), len(prel)):
        for op_img in itertools.permutations(sorted(whole.operations), len(pop)):
            beta = dict(zip(prel, rel_img)) | dict(zip(pop, op_img))
            for img in itertools.permutations(whole.carrier, len(part.carrier)):
                if series_conditions(part, whole, dict(zip(part.carrier, img)), beta):
                    return True
    return False


def random_structure(rng: random.Random, n: int, n_rel: int, n_op: int, density: float, prefix: str) -> Structure:
    carrier = [f"{prefix}{i}" for i in range(n)]
    rels = {
        f"r{k}": [(a, b) for a in carrier for b in carrier if rng.random() < density] for k in range(n_rel)
    }
    ops = {
        f"o{k}": [[a, b, rng.choice(carrier)] for a in carrier for b in carrier if rng.random() < density / 2]
        for k in range(n_op)
    }
    return Structure(carrier, rels, {k: {(a, b): c for a, b, c in v} for k, v in ops.items()})


# -- polyominoes ----------------------------------------------------------------


def _normal(cells):
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    return tuple(sorted((x - mx, y - my) for x, y in cells))


def _free_key(cells):
    variants = []
    for sx, sy, swap in itertools.product((1, -1), (1, -1), (False, True)):
        moved = [((y, x) if swap else (x, y)) for x, y in cells]
        variants.append(_normal([(sx * x, sy * y) for x, y in moved]))
    return min(variants)


def free_polyominoes(max_size: int) -> list[tuple[tuple[int, int], ...]]:
    """All free polyominoes with 1..max_size cells, grown cell by cell."""
    level = {_free_key([(0, 0)])}
    out = sorted(level)
    for _ in range(max_size - 1):
        nxt = set()
        for poly in level:
            cells = set(poly)
            for x, y in poly:
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    c = (x + dx, y + dy)
                    if c not in cells:
                        nxt.add(_free_key(cells | {c}))
        level = nxt
        out.extend(sorted(level))
    return out


def atom_area(atoms) -> Fraction:
    return sum((Fraction(1) if p == "F" else Fraction(1, 2) for _, _, p in atoms), Fraction(0))


# -- dissection replay by quarter triangles -------------------------------------
#
# Both diagonals cut a unit cell into four quarters (N, E, S, W).  A full
# cell is all four quarters and a half cell is the two quarters on the side
# of its right angle.  A pose acts on the plane as p -> M p + d, and it maps
# quarter centroids onto quarter centroids, so replaying a dissection reduces
# to comparing finite point sets.

_QUARTERS = {
    "N": (Fraction(1, 2), Fraction(5, 6)),
    "S": (Fraction(1, 2), Fraction(1, 6)),
    "E": (Fraction(5, 6), Fraction(1, 2)),
    "W": (Fraction(1, 6), Fraction(1, 2)),
}
_HALF_QUARTERS = {"F": "NESW", "NE": "NE", "NW": "NW", "SE": "SE", "SW": "SW"}


def quarter_points(atoms):
    pts = []
    for x, y, part in atoms:
        for q in _HALF_QUARTERS[part]:
            qx, qy = _QUARTERS[q]
            pts.append((x + qx, y + qy))
    return pts


def pose_points(points, matrix, dx, dy):
    (a, b), (c, d) = matrix
    return [(a * x + b * y + dx, c * x + d * y + dy) for x, y in points]


def replay_dissection(pieces, poses, symmetries, figure_atoms) -> bool:
    """The posed pieces cover the figure's quarters exactly once each."""
    covered = []
    for piece_atoms, (dx, dy, sym) in zip(pieces, poses):
        covered.extend(pose_points(quarter_points(piece_atoms), symmetries[sym], dx, dy))
    return len(covered) == len(set(covered)) and set(covered) == set(quarter_points(figure_atoms))


def random_pair(rng: random.Random, max_size: int = 6) -> tuple[Structure, Structure]:
    """A (part, whole) pair with |part| <= |whole| <= max_size.

    Half the time the part is planted: a relabelled sub-structure of the
    whole with some entries removed, so an embedding exists.  Otherwise the
    part is drawn independently and usually has none.
    """
    m = rng.randint(2, max_size)
    n = rng.randint(max(1, m - 2), m)
    whole = random_structure(rng, m, 2, 1, rng.uniform(0.2, 0.8), "q")
    if rng.random() < 0.5:
        return random_structure(rng, n, rng.randint(1, 2), rng.randint(0, 1), rng.uniform(0.1, 0.6), "p"), whole
    chosen = rng.sample(list(whole.carrier), n)
    name = {w: f"p{i}" for i, w in enumerate(chosen)}
    keep = rng.uniform(0.5, 1.0)
    rels = {
        "r0": [(name[a], name[b]) for a, b in whole.relations[rng.choice(["r0", "r1"])]
               if a in name and b in name and rng.random() < keep]
    }
    ops = {
        "o0": {(name[a], name[b]): name[v] for (a, b), v in whole.operations["o0"].items()
               if a in name and b in name and v in name and rng.random() < keep}
    }
    carrier = [name[w] for w in chosen]
    rng.shuffle(carrier)
    return Structure(carrier, rels, ops), whole
