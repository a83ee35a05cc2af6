"""Grid figures ("Gebilde") made of unit squares and diagonal half-squares.

An atom is ``(x, y, part)``: the unit cell with lower-left corner ``(x, y)``
and ``part`` one of ``"F"`` (the whole cell) or ``"NE" | "NW" | "SE" | "SW"``,
the right-angled half whose right angle sits at that corner.  Two halves of
one cell are disjoint only when they are complementary (NE/SW or NW/SE); two
complementary halves together make the full cell.

Poses are the 8 symmetries of the square grid followed by an integer
translation.  Symmetry ``k`` acts on cell centres ``(2x+1, 2y+1)`` by the
matrix ``SYMMETRIES[k]``; the pose then shifts by ``(dx, dy)`` cells.

All areas are exact ``Fraction`` values with denominator 1 or 2.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

from .axioms import register_axiom
from .structure import Structure

Atom = tuple[int, int, str]

PARTS = ("F", "NE", "NW", "SE", "SW")
HALVES = ("NE", "NW", "SE", "SW")
_DIRECTION = {"NE": (1, 1), "NW": (-1, 1), "SE": (1, -1), "SW": (-1, -1)}
_PART_OF = {v: k for k, v in _DIRECTION.items()}
_COMPLEMENT = {"NE": "SW", "SW": "NE", "NW": "SE", "SE": "NW"}
_EDGES = {
    "F": frozenset("NESW"),
    "NE": frozenset("NE"),
    "NW": frozenset("NW"),
    "SE": frozenset("SE"),
    "SW": frozenset("SW"),
}
_STEP = {"N": (0, 1, "S"), "S": (0, -1, "N"), "E": (1, 0, "W"), "W": (-1, 0, "E")}
_PART_RANK = {p: i for i, p in enumerate(PARTS)}

# identity, rotations by 90/180/270 degrees, mirror in x, mirror in y,
# transpose, anti-transpose
SYMMETRIES = (
    ((1, 0), (0, 1)),
    ((0, -1), (1, 0)),
    ((-1, 0), (0, -1)),
    ((0, 1), (-1, 0)),
    ((-1, 0), (0, 1)),
    ((1, 0), (0, -1)),
    ((0, 1), (1, 0)),
    ((0, -1), (-1, 0)),
)


def _mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _mat_apply(m, x, y):
    return m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y


_SYM_INDEX = {m: i for i, m in enumerate(SYMMETRIES)}
_COMPOSE = [[_SYM_INDEX[_mat_mul(a, b)] for b in SYMMETRIES] for a in SYMMETRIES]
_INVERSE = [_SYM_INDEX[tuple(zip(*m))] for m in SYMMETRIES]


class GeometryError(ValueError):
    pass


class OverlapError(GeometryError):
    def __init__(self, atom: Atom, message: str | None = None):
        super().__init__(message or f"pieces overlap at atom {list(atom)!r}")
        self.atom = atom


class NormalFormUnavailable(GeometryError):
    pass


def row_major(atom: Atom):
    x, y, part = atom
    return (y, x, _PART_RANK[part])


class Pose(NamedTuple):
    dx: int = 0
    dy: int = 0
    sym: int = 0

    def apply(self, atom: Atom) -> Atom:
        x, y, part = atom
        m = SYMMETRIES[self.sym]
        cx, cy = _mat_apply(m, 2 * x + 1, 2 * y + 1)
        nx, ny = (cx - 1) // 2 + self.dx, (cy - 1) // 2 + self.dy
        if part != "F":
            part = _PART_OF[_mat_apply(m, *_DIRECTION[part])]
        return (nx, ny, part)

    def then(self, after: "Pose") -> "Pose":
        """The pose applying ``self`` first and ``after`` second."""
        m = SYMMETRIES[after.sym]
        tx, ty = _mat_apply(m, self.dx, self.dy)
        return Pose(tx + after.dx, ty + after.dy, _COMPOSE[after.sym][self.sym])

    def inverse(self) -> "Pose":
        inv = _INVERSE[self.sym]
        tx, ty = _mat_apply(SYMMETRIES[inv], self.dx, self.dy)
        return Pose(-tx, -ty, inv)


def _overlap(p: str, q: str) -> bool:
    return p == "F" or q == "F" or _COMPLEMENT[p] != q


def merge_atoms(atoms: Iterable[Atom]) -> frozenset[Atom]:
    """Union of atoms as a normalised region: complementary halves merge into
    the full cell.  Raises OverlapError (at the first colliding atom in
    input order) if two atoms overlap."""
    cells: dict[tuple[int, int], str] = {}
    for atom in atoms:
        x, y, part = atom
        if part not in _PART_RANK:
            raise GeometryError(f"unknown cell part {part!r}")
        prev = cells.get((x, y))
        if prev is None:
            cells[(x, y)] = part
        elif _overlap(prev, part):
            raise OverlapError(atom)
        else:
            cells[(x, y)] = "F"
    return frozenset((x, y, p) for (x, y), p in cells.items())


def _connected(atoms: frozenset[Atom]) -> bool:
    by_cell = {(x, y): p for x, y, p in atoms}
    start = next(iter(by_cell))
    seen = {start}
    todo = deque([start])
    while todo:
        x, y = todo.popleft()
        for edge in _EDGES[by_cell[(x, y)]]:
            ddx, ddy, back = _STEP[edge]
            nb = (x + ddx, y + ddy)
            if nb not in seen and nb in by_cell and back in _EDGES[by_cell[nb]]:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(by_cell)


def _sorted(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    return tuple(sorted(atoms, key=row_major))


@dataclass(frozen=True)
class Piece:
    """A single edge-connected building block."""

    atoms: frozenset[Atom]

    def __post_init__(self):
        atoms = [tuple(a) for a in self.atoms]
        if not atoms:
            raise GeometryError("a piece needs at least one atom")
        region = merge_atoms(atoms)
        if not _connected(region):
            raise GeometryError("piece atoms are not edge-connected")
        object.__setattr__(self, "atoms", region)

    def posed(self, pose: Pose) -> frozenset[Atom]:
        return frozenset(pose.apply(a) for a in self.atoms)


UNIT_SQUARE = Piece(frozenset({(0, 0, "F")}))
HALF_SQUARE = Piece(frozenset({(0, 0, "NE")}))


@dataclass(frozen=True)
class Gebilde:
    """Pieces laid out without overlap; ``region`` is the covered point set."""

    placements: tuple[tuple[Piece, Pose], ...]
    region: frozenset[Atom] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        placements = tuple((piece, Pose(*pose)) for piece, pose in self.placements)
        if not placements:
            raise GeometryError("a figure needs at least one piece")
        atoms = [a for piece, pose in placements for a in _sorted(piece.posed(pose))]
        object.__setattr__(self, "placements", placements)
        object.__setattr__(self, "region", merge_atoms(atoms))

    @classmethod
    def from_atoms(cls, atoms: Iterable[Atom]) -> "Gebilde":
        """Figure whose pieces are the edge-connected components of ``atoms``."""
        region = merge_atoms(tuple(a) for a in atoms)
        if not region:
            raise GeometryError("a figure needs at least one atom")
        pieces = []
        left = dict(((x, y), p) for x, y, p in region)
        for cell in sorted(left, key=lambda c: (c[1], c[0])):
            if cell not in left:
                continue
            comp = {cell}
            todo = deque([cell])
            while todo:
                x, y = todo.popleft()
                for edge in _EDGES[left[(x, y)]]:
                    ddx, ddy, back = _STEP[edge]
                    nb = (x + ddx, y + ddy)
                    if nb not in comp and nb in left and back in _EDGES[left[nb]]:
                        comp.add(nb)
                        todo.append(nb)
            pieces.append(Piece(frozenset((x, y, left[(x, y)]) for x, y in comp)))
            for c in comp:
                del left[c]
        return cls(tuple((p, Pose()) for p in pieces))

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]]) -> "Gebilde":
        return cls.from_atoms((x, y, "F") for x, y in cells)

    def atoms(self) -> tuple[Atom, ...]:
        """Region atoms in row-major order."""
        return _sorted(self.region)

    def posed(self, pose: Pose) -> "Gebilde":
        return Gebilde(tuple((piece, p.then(pose)) for piece, p in self.placements))

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [x for x, _, _ in self.region]
        ys = [y for _, y, _ in self.region]
        return min(xs), min(ys), max(xs), max(ys)


# -- documents -----------------------------------------------------------------


def gebilde_from_dict(doc: Mapping[str, Any]) -> Gebilde:
    if not isinstance(doc, Mapping) or "pieces" not in doc:
        raise GeometryError("figure document needs 'pieces'")
    try:
        pieces = [Piece(frozenset((int(x), int(y), str(p)) for x, y, p in atoms)) for atoms in doc["pieces"]]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError(f"malformed piece: {exc}") from None
    rows = doc.get("placements")
    if rows is None:
        rows = [[i, 0, 0, 0] for i in range(len(pieces))]
    placements = []
    for row in rows:
        if not isinstance(row, list) or len(row) != 4:
            raise GeometryError("placements are [piece index, dx, dy, symmetry]")
        i, dx, dy, sym = row
        if not (isinstance(i, int) and 0 <= i < len(pieces)):
            raise GeometryError(f"placement refers to unknown piece {i!r}")
        if not (isinstance(sym, int) and 0 <= sym < 8):
            raise GeometryError(f"symmetry index must be 0-7, got {sym!r}")
        placements.append((pieces[i], Pose(dx, dy, sym)))
    return Gebilde(tuple(placements))


def gebilde_to_dict(g: Gebilde) -> dict[str, Any]:
    pieces: list[Piece] = []
    rows = []
    for piece, pose in g.placements:
        if piece not in pieces:
            pieces.append(piece)
        rows.append([pieces.index(piece), pose.dx, pose.dy, pose.sym])
    return {
        "pieces": [[list(a) for a in _sorted(p.atoms)] for p in pieces],
        "placements": rows,
    }


def load_gebilde(path) -> Gebilde:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return gebilde_from_dict(doc)


# -- basic shapes --------------------------------------------------------------


def rectangle(m: int, n: int) -> Gebilde:
    """The ``m`` wide, ``n`` high block of unit cells at the origin."""
    if m < 1 or n < 1:
        raise GeometryError("rectangle sides must be positive")
    piece = Piece(frozenset((x, y, "F") for x in range(m) for y in range(n)))
    return Gebilde(((piece, Pose()),))


def strip(n: int) -> Gebilde:
    return rectangle(n, 1)


def is_rectangle(g: Gebilde) -> bool:
    if any(p != "F" for _, _, p in g.region):
        return False
    x0, y0, x1, y1 = g.bbox()
    return len(g.region) == (x1 - x0 + 1) * (y1 - y0 + 1)


# -- congruence ----------------------------------------------------------------


def _normalised(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    atoms = list(atoms)
    mx = min(x for x, _, _ in atoms)
    my = min(y for _, y, _ in atoms)
    return _sorted((x - mx, y - my, p) for x, y, p in atoms)


def _region_of(u) -> frozenset[Atom]:
    if isinstance(u, Gebilde):
        return u.region
    if isinstance(u, Piece):
        return u.atoms
    return merge_atoms(u)


def canonical_form(u: Gebilde | Piece | Iterable[Atom]) -> tuple[Atom, ...]:
    """Least normalised atom list over the 8 grid symmetries."""
    region = _region_of(u)
    return min(_normalised(Pose(0, 0, k).apply(a) for a in region) for k in range(8))


def congruent(u, v) -> bool:
    ru, rv = _region_of(u), _region_of(v)
    if len(ru) != len(rv):
        return False
    return canonical_form(ru) == canonical_form(rv)


def congruence_pose(u, v) -> Pose | None:
    """A pose mapping ``u``'s region exactly onto ``v``'s, if any."""
    ru, rv = _region_of(u), _region_of(v)
    if len(ru) != len(rv):
        return None
    target = _normalised(rv)
    vx = min(x for x, _, _ in rv)
    vy = min(y for _, y, _ in rv)
    for k in range(8):
        moved = [Pose(0, 0, k).apply(a) for a in ru]
        if _normalised(moved) == target:
            mx = min(x for x, _, _ in moved)
            my = min(y for _, y, _ in moved)
            return Pose(vx - mx, vy - my, k)
    return None


# -- area ------------------------------------------------------------------------


def area(u: Gebilde | Piece | Iterable[Atom]) -> Fraction:
    region = _region_of(u)
    full = sum(1 for _, _, p in region if p == "F")
    return Fraction(full) + Fraction(len(region) - full, 2)


def format_area(a: Fraction) -> str:
    return f"{a} e^2"


# -- composition ---------------------------------------------------------------


def compose(u: Gebilde, v: Gebilde, pose: Pose = Pose()) -> Gebilde:
    """``u`` completed by ``v`` placed at ``pose``; pieces must not overlap."""
    moved = v.posed(pose)
    taken = u.region
    cells = {(x, y): p for x, y, p in taken}
    for atom in moved.atoms():
        x, y, part = atom
        prev = cells.get((x, y))
        if prev is not None and _overlap(prev, part):
            raise OverlapError(atom)
    return Gebilde(u.placements + moved.placements)


def juxtaposition_pose(u: Gebilde, v: Gebilde) -> Pose:
    """Translate ``v`` so it starts one column right of ``u``'s bounding box, bottoms aligned."""
    ux0, uy0, ux1, _ = u.bbox()
    vx0, vy0, _, _ = v.bbox()
    return Pose(ux1 + 1 - vx0, uy0 - vy0, 0)


def juxtapose(u: Gebilde, v: Gebilde) -> Gebilde:
    return compose(u, v, juxtaposition_pose(u, v))


# -- equidecomposability -----------------------------------------------------------


def _piece_pose(atom: Atom) -> tuple[Piece, Pose]:
    """The standard piece and the pose that lays it exactly onto ``atom``."""
    x, y, part = atom
    if part == "F":
        return UNIT_SQUARE, Pose(x, y, 0)
    for k in range(8):
        px, py, pp = Pose(0, 0, k).apply((0, 0, "NE"))
        if pp == part:
            return HALF_SQUARE, Pose(x - px, y - py, k)
    raise GeometryError(f"unknown cell part {part!r}")  # pragma: no cover


@dataclass(frozen=True)
class Dissection:
    """``pieces[k]`` placed by ``source[k]`` tiles one figure and placed by
    ``target[k]`` tiles the other; pairing by index is the bijection."""

    pieces: tuple[Piece, ...]
    source: tuple[Pose, ...]
    target: tuple[Pose, ...]

    def __len__(self) -> int:
        return len(self.pieces)

    def source_figure(self) -> Gebilde:
        return Gebilde(tuple(zip(self.pieces, self.source)))

    def target_figure(self) -> Gebilde:
        return Gebilde(tuple(zip(self.pieces, self.target)))

    def inverse(self) -> "Dissection":
        return Dissection(self.pieces, self.target, self.source)

    def is_identity(self) -> bool:
        return self.source == self.target

    def then(self, other: "Dissection") -> "Dissection":
        """Compose ``u -> v`` with ``v -> w`` into ``u -> w``.

        Both dissections are refined to their common atoms on ``v``.  For
        witnesses produced by :func:`zgl` every refined atom is a unit square
        or a half square, so the result is again a single-atom dissection.
        """
        mine = _atom_map(self.pieces, self.target, self.source)
        theirs = _atom_map(other.pieces, other.source, other.target)
        by_cell: dict[tuple[int, int], tuple[list, list]] = {}
        for a in mine:
            by_cell.setdefault(a[:2], ([], []))[0].append(a)
        for a in theirs:
            by_cell.setdefault(a[:2], ([], []))[1].append(a)
        refined = []
        for xs, ys in by_cell.values():
            refined.extend(_finer(xs, ys))
        pieces, source, target = [], [], []
        for atom in sorted(refined, key=row_major):
            back, fwd = _locate(mine, atom), _locate(theirs, atom)
            piece, p_u = _piece_pose(back.apply(atom))
            pieces.append(piece)
            source.append(p_u)
            target.append(p_u.then(back.inverse()).then(fwd))
        return Dissection(tuple(pieces), tuple(source), tuple(target))

    def to_dict(self) -> dict[str, Any]:
        return {
            "pieces": [[list(a) for a in _sorted(p.atoms)] for p in self.pieces],
            "source": [list(p) for p in self.source],
            "target": [list(p) for p in self.target],
        }


def _atom_map(pieces, here, there) -> dict[Atom, Pose]:
    """For each atom covered by the pieces at ``here``: the pose carrying it to ``there``."""
    out = {}
    for piece, h, t in zip(pieces, here, there):
        move = h.inverse().then(t)
        for a in piece.posed(h):
            out[a] = move
    return out


def _finer(xs: list[Atom], ys: list[Atom]) -> list[Atom]:
    if all(p == "F" for _, _, p in xs):
        return ys
    if all(p == "F" for _, _, p in ys) or sorted(xs) == sorted(ys):
        return xs
    raise GeometryError(f"dissections cut cell {list(xs[0][:2])!r} along different diagonals")


def _locate(m: dict[Atom, Pose], atom: Atom) -> Pose:
    if atom in m:
        return m[atom]
    x, y, part = atom
    whole = (x, y, "F")
    if part != "F" and whole in m:
        return m[whole]
    raise GeometryError(f"dissections do not meet at atom {list(atom)!r}")


def _atom_list(g: Gebilde, split: int) -> list[Atom]:
    """Region atoms in row-major order, the first ``split`` full cells cut into NE/SW halves."""
    out = []
    for x, y, p in g.atoms():
        if p == "F" and split > 0:
            out.extend([(x, y, "NE"), (x, y, "SW")])
            split -= 1
        else:
            out.append((x, y, p))
    return out


def zgl(u: Gebilde, v: Gebilde) -> Dissection | None:
    """Equidecomposition witness of ``u`` and ``v``, or None when areas differ.

    Both figures are cut into unit squares and half squares; full cells are
    split in row-major order until both sides hold the same number of halves,
    then squares are paired with squares and halves with halves, each in
    row-major order.
    """
    if area(u) != area(v):
        return None
    hu = sum(1 for _, _, p in u.region if p != "F")
    hv = sum(1 for _, _, p in v.region if p != "F")
    su, sv = max(0, (hv - hu) // 2), max(0, (hu - hv) // 2)
    au, av = _atom_list(u, su), _atom_list(v, sv)
    squares_u = [a for a in au if a[2] == "F"]
    squares_v = [a for a in av if a[2] == "F"]
    halves_u = [a for a in au if a[2] != "F"]
    halves_v = [a for a in av if a[2] != "F"]
    assert len(squares_u) == len(squares_v) and len(halves_u) == len(halves_v)
    pieces, source, target = [], [], []
    for a, b in zip(squares_u + halves_u, squares_v + halves_v):
        piece, pa = _piece_pose(a)
        _, pb = _piece_pose(b)
        pieces.append(piece)
        source.append(pa)
        target.append(pb)
    return Dissection(tuple(pieces), tuple(source), tuple(target))


def verify_dissection(d: Dissection, u: Gebilde, v: Gebilde) -> bool:
    """Replay: the pieces tile exactly ``u`` at the source poses and ``v`` at the targets."""
    try:
        return d.source_figure().region == u.region and d.target_figure().region == v.region
    except GeometryError:
        return False


# -- sub-figures and comparison ---------------------------------------------------


def _covers(region_cells: Mapping[tuple[int, int], str], atom: Atom) -> bool:
    x, y, p = atom
    have = region_cells.get((x, y))
    return have is not None and (have == "F" or have == p)


def is_subgebilde(u: Gebilde, v: Gebilde) -> Pose | None:
    """A pose placing ``u`` strictly inside ``v``, or None.

    Offsets are scanned row-major over ``v``'s bounding box, then symmetry
    index 0-7; the first fit wins.
    """
    if area(u) >= area(v):
        return None
    cells = {(x, y): p for x, y, p in v.region}
    vx0, vy0, vx1, vy1 = v.bbox()
    shapes = []
    for k in range(8):
        moved = [Pose(0, 0, k).apply(a) for a in u.region]
        mx = min(x for x, _, _ in moved)
        my = min(y for _, y, _ in moved)
        shapes.append((k, mx, my, _normalised(moved)))
    for oy in range(vy0, vy1 + 1):
        for ox in range(vx0, vx1 + 1):
            for k, mx, my, shape in shapes:
                if all(_covers(cells, (x + ox, y + oy, p)) for x, y, p in shape):
                    return Pose(ox - mx, oy - my, k)
    return None


class Less(NamedTuple):
    """``u`` is smaller: ``u zgl sub`` and ``sub`` is a proper part of ``v``."""

    sub: Gebilde
    dissection: Dissection


class Equal(NamedTuple):
    dissection: Dissection


class Greater(NamedTuple):
    """``v`` is smaller: ``v zgl sub`` and ``sub`` is a proper part of ``u``."""

    sub: Gebilde
    dissection: Dissection


def carve(v: Gebilde, amount: Fraction) -> Gebilde:
    """A proper part of ``v`` of the given area, taken row-major.

    A half-integer amount takes one of ``v``'s half cells first if there is
    one; otherwise the last unit needed is cut from a full cell.
    """
    amount = Fraction(amount)
    if not 0 < amount < area(v):
        raise GeometryError("carved amount must be positive and below the figure's area")
    taken: list[Atom] = []
    left = amount
    atoms = list(v.atoms())
    if left.denominator == 2:
        half = next((a for a in atoms if a[2] != "F"), None)
        if half is not None:
            taken.append(half)
            atoms.remove(half)
            left -= Fraction(1, 2)
    for x, y, p in atoms:
        if left == 0:
            break
        if p != "F":
            taken.append((x, y, p))
            left -= Fraction(1, 2)
        elif left >= 1:
            taken.append((x, y, "F"))
            left -= 1
        else:
            taken.append((x, y, "SW"))
            left -= Fraction(1, 2)
    return Gebilde.from_atoms(taken)


def compare(u: Gebilde, v: Gebilde) -> Less | Equal | Greater:
    a, b = area(u), area(v)
    if a < b:
        sub = carve(v, a)
        return Less(sub, zgl(u, sub))
    if a > b:
        sub = carve(u, b)
        return Greater(sub, zgl(v, sub))
    return Equal(zgl(u, v))


# -- rectangles and measure ---------------------------------------------------------


def to_rectangle(u: Gebilde) -> tuple[Gebilde, Dissection]:
    """The ``1 x n`` strip equidecomposable with ``u`` plus the witness.

    Only integer areas have a grid rectangle; half-integer areas raise
    NormalFormUnavailable.
    """
    a = area(u)
    if a.denominator != 1:
        raise NormalFormUnavailable(
            f"area {a} is not an integer; no grid rectangle has this area"
        )
    rect = strip(int(a))
    return rect, zgl(u, rect)


def mu(m: int, n: int) -> Fraction:
    """Area assigned to the rectangle with sides ``m e`` and ``n e``."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise GeometryError("side lengths must be positive integers")
    return Fraction(m * n)


# -- the area-comparison structure -------------------------------------------------

TFV_RELATIONS = ("cong", "sub", "zgl", "prec", "rect")
TFV_OPERATION = "comp"


def build_tfv_structure(figures: Sequence[Gebilde], names: Sequence[str] | None = None) -> Structure:
    """Tabulate congruence, proper part, equidecomposability, smaller-area,
    rectangularity and composition over a finite set of figures.

    ``prec`` follows its definition inside the set: ``U prec V`` iff some
    member ``V'`` has ``U zgl V'`` and ``V'`` is a proper part of ``V``.
    ``comp(U, V)`` is the first member congruent to ``V`` laid right of ``U``,
    undefined when there is none.  ``rect`` holds ``(U, U)`` for rectangles.
    """
    figures = list(figures)
    if not figures:
        raise GeometryError("need at least one figure")
    ids = list(names) if names is not None else [f"U{i}" for i in range(1, len(figures) + 1)]
    if len(ids) != len(figures):
        raise GeometryError("one name per figure")
    n = len(figures)
    canon = [canonical_form(f) for f in figures]
    cong = {(ids[i], ids[j]) for i in range(n) for j in range(n) if canon[i] == canon[j]}
    sub = {(ids[i], ids[j]) for i in range(n) for j in range(n) if is_subgebilde(figures[i], figures[j]) is not None}
    eq = {(ids[i], ids[j]) for i in range(n) for j in range(n) if zgl(figures[i], figures[j]) is not None}
    prec = {
        (ids[i], ids[j])
        for i in range(n)
        for j in range(n)
        if any((ids[i], ids[k]) in eq and (ids[k], ids[j]) in sub for k in range(n))
    }
    rect = {(ids[i], ids[i]) for i in range(n) if is_rectangle(figures[i])}
    comp = {}
    for i in range(n):
        for j in range(n):
            c = canonical_form(juxtapose(figures[i], figures[j]))
            k = next((k for k in range(n) if canon[k] == c), None)
            if k is not None:
                comp[(ids[i], ids[j])] = ids[k]
    return Structure(
        tuple(ids),
        {"cong": cong, "sub": sub, "zgl": eq, "prec": prec, "rect": rect},
        {TFV_OPERATION: comp},
    )


@register_axiom("prec_definition", ["relation", "relation", "relation"], 2)
def _prec_definition(s, prec, eq, sub, u, v):
    """u prec v  <->  some w with  u zgl w  and  w proper part of v."""
    E, S = s.relations[eq], s.relations[sub]
    witnessed = any((u, w) in E and (w, v) in S for w in s.carrier)
    return ((u, v) in s.relations[prec]) == witnessed


@register_axiom("rectangle_normal_form", ["relation", "relation"], 1)
def _rectangle_normal_form(s, eq, rect, u):
    """Every figure is zgl to some rectangle of the set."""
    E, R = s.relations[eq], s.relations[rect]
    return any((u, w) in E and (w, w) in R for w in s.carrier)


# -- area measure applications ------------------------------------------------------
#
# An application of the area measure is a structure whose carrier holds side
# lengths written "<m>e" and areas written "<k>e2"; the operation ``mu``
# sends (me, ne) to an area.


def length_label(m: int) -> str:
    return f"{m}e"


def area_label(k: int) -> str:
    return f"{k}e2"


def parse_length(label: str) -> int | None:
    if label.endswith("e") and label[:-1].isdigit() and label[:-1].isascii():
        v = int(label[:-1])
        return v if v > 0 else None
    return None


def parse_area(label: str) -> int | None:
    if label.endswith("e2") and label[:-2].isdigit() and label[:-2].isascii():
        v = int(label[:-2])
        return v if v > 0 else None
    return None


def make_measure_application(rects: Iterable[tuple[int, int]], value=None) -> Structure:
    """Structure assigning ``value(m, n)`` (default ``mu``) to each listed ``m x n`` rectangle."""
    value = value or mu
    rects = list(rects)
    entries = {}
    for m, n in rects:
        entries[(length_label(m), length_label(n))] = area_label(int(value(m, n)))
    carrier = []
    for (a, b), v in entries.items():
        for e in (a, b, v):
            if e not in carrier:
                carrier.append(e)
    return Structure(tuple(carrier), {}, {"mu": entries})


@register_axiom("measure_lexicon", [], 1)
def _measure_lexicon(s, e):
    return parse_length(e) is not None or parse_area(e) is not None


@register_axiom("measure_typing", ["operation"], 2)
def _measure_typing(s, op, a, b):
    v = s.operations[op].get((a, b))
    if v is None:
        return True
    return parse_length(a) is not None and parse_length(b) is not None and parse_area(v) is not None


@register_axiom("area_formula", ["operation"], 2)
def _area_formula(s, op, a, b):
    """mu(me, ne) = (m n) e2 wherever mu is defined."""
    v = s.operations[op].get((a, b))
    if v is None:
        return True
    m, n, k = parse_length(a), parse_length(b), parse_area(v)
    return None not in (m, n, k) and k == m * n


def rectangle_of(a: str, b: str) -> Gebilde | None:
    m, n = parse_length(a), parse_length(b)
    if m is None or n is None:
        return None
    return rectangle(m, n)
