"""Constructors for the numeric microworlds: counting words, the paper-sums
extension with a zero, coins and decades.

Table names used throughout: ``leq`` (reflexive order), ``lt`` (strict
order), ``plus`` (partial addition) and ``zero`` (the designated zero,
encoded as the single pair ``(0, 0)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .axioms import register_axiom
from .structure import Structure


class WorldError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    """Number words in their conventional order."""

    words: tuple[str, ...]

    def __post_init__(self):
        words = tuple(self.words)
        if not words:
            raise WorldError("a lexicon needs at least one word")
        if len(set(words)) != len(words):
            dup = next(w for w in words if words.count(w) > 1)
            raise WorldError(f"duplicate word {dup!r} in lexicon")
        object.__setattr__(self, "words", words)

    @classmethod
    def default(cls, n: int) -> "Lexicon":
        return cls(tuple(f"w{i}" for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.words)


def make_counting_world(lex: Lexicon | Sequence[str] | int) -> Structure:
    """Counting world ``(Z; leq; plus)``.

    ``leq`` is the reflexive linear order of the lexicon.  ``n plus m = l``
    holds when counting on from ``n`` by ``m`` steps lands on ``l``, i.e.
    positions add; it is undefined once counting runs past the last word.
    """
    if isinstance(lex, int):
        lex = Lexicon.default(lex)
    elif not isinstance(lex, Lexicon):
        lex = Lexicon(tuple(lex))
    words = lex.words
    n = len(words)
    leq = [(words[i], words[j]) for i in range(n) for j in range(i, n)]
    # word k (0-based) stands for the count k+1
    plus = {
        (words[i], words[j]): words[i + j + 1]
        for i in range(n)
        for j in range(n)
        if i + j + 1 < n
    }
    return Structure(words, {"leq": leq}, {"plus": plus})


def omega(s: Structure, op: str = "plus") -> frozenset[tuple[str, str, str]]:
    """The counting-on relation ``{(n, m, l) : n + m = l}``."""
    return frozenset((a, b, v) for (a, b), v in s.operations[op].items())


def make_pps_world(base: Structure, zero_symbol: str = "0") -> Structure:
    """Extend a counting world by a fresh least element obeying ``k+0 = 0+k = k``."""
    if zero_symbol in base.index:
        raise WorldError(f"zero symbol {zero_symbol!r} collides with a word of the base world")
    z = zero_symbol
    carrier = (z, *base.carrier)
    leq = set(base.relations["leq"]) | {(z, k) for k in carrier}
    plus = dict(base.operations["plus"])
    for k in carrier:
        plus[(k, z)] = k
        plus[(z, k)] = k
    relations = dict(base.relations)
    relations.update(leq=leq, zero={(z, z)})
    operations = dict(base.operations)
    operations["plus"] = plus
    return Structure(carrier, relations, operations)


def _value_world(values: Sequence[int], limit: int, strict: bool, label) -> Structure:
    labels = [label(v) for v in values]
    order = "lt" if strict else "leq"
    rel = [
        (labels[i], labels[j])
        for i, a in enumerate(values)
        for j, b in enumerate(values)
        if (a < b if strict else a <= b)
    ]
    by_value = dict(zip(values, labels))
    plus = {
        (labels[i], labels[j]): by_value[a + b]
        for i, a in enumerate(values)
        for j, b in enumerate(values)
        if a + b <= limit and a + b in by_value
    }
    return Structure(tuple(labels), {order: rel}, {"plus": plus})


def make_money_world(
    coin_values: Iterable[int], max_value: int, *, strict: bool = True, label=str
) -> Structure:
    """Coins labelled by value, ordered by value, added when the sum is a coin within range.

    ``strict=True`` gives the strict order ``lt``; ``strict=False`` gives the
    reflexive ``leq`` used when comparing with the other numeric worlds.
    """
    values = list(coin_values)
    if not values:
        raise WorldError("at least one coin value is required")
    if len(set(values)) != len(values):
        raise WorldError("coin values must be distinct")
    for v in values:
        if not isinstance(v, int) or v <= 0 or v > max_value:
            raise WorldError(f"coin value {v!r} must be a positive integer <= {max_value}")
    return _value_world(sorted(values), max_value, strict, label)


def make_decade_world(max_decade: int = 90, *, strict: bool = True, label=str) -> Structure:
    """Decades ``10, 20, ..., max_decade`` with order and in-range addition."""
    if not isinstance(max_decade, int) or max_decade < 10 or max_decade % 10:
        raise WorldError("max_decade must be a positive multiple of 10")
    return _value_world(list(range(10, max_decade + 1, 10)), max_decade, strict, label)


@dataclass(frozen=True)
class ColumnNumeral:
    """A numeral as a column list, least significant column first."""

    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(self.digits)
        if not digits:
            raise WorldError("a numeral has at least one column")
        if any(not isinstance(d, int) or not 0 <= d <= 9 for d in digits):
            raise WorldError(f"columns must hold digits 0-9, got {digits!r}")
        if len(digits) > 1 and digits[-1] == 0:
            raise WorldError("leading zero column")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def parse(cls, text: str) -> "ColumnNumeral":
        if not text.isdigit() or not text.isascii():
            raise WorldError(f"not a numeral: {text!r}")
        text = text.lstrip("0") or "0"
        return cls(tuple(int(ch) for ch in reversed(text)))

    def __str__(self) -> str:
        return "".join(str(d) for d in reversed(self.digits))


# Single-column sums as a lookup table: (a, b, carry in) -> (column digit, carry out).
_COLUMN_TABLE = {
    (a, b, c): ((a + b + c) % 10, (a + b + c) // 10)
    for a in range(10)
    for b in range(10)
    for c in (0, 1)
}


def paper_sum_add(a: ColumnNumeral, b: ColumnNumeral) -> ColumnNumeral:
    """Column-wise addition with a carried 1 passed to the next column."""
    out = []
    carry = 0
    for i in range(max(len(a.digits), len(b.digits))):
        x = a.digits[i] if i < len(a.digits) else 0
        y = b.digits[i] if i < len(b.digits) else 0
        d, carry = _COLUMN_TABLE[(x, y, carry)]
        out.append(d)
    if carry:
        out.append(carry)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return ColumnNumeral(tuple(out))


@register_axiom("counting_on", ["relation", "operation"], 3)
def _counting_on(s: Structure, order: str, op: str, n: str, m: str, l: str) -> bool:
    """``n + m = l`` exactly when the position of ``l`` is the sum of the positions of n and m.

    Positions are read off the order: the position of ``x`` is the number of
    elements below or equal to it.
    """
    R = s.relations[order]
    rank = _ranks(s, order, R)
    return (s.operations[op].get((n, m)) == l) == (rank[n] + rank[m] == rank[l])


_rank_cache: dict[int, tuple[frozenset, dict]] = {}


def _ranks(s: Structure, order: str, R: frozenset) -> dict[str, int]:
    key = id(R)
    hit = _rank_cache.get(key)
    if hit is not None and hit[0] is R:
        return hit[1]
    rank = {x: 0 for x in s.carrier}
    for _, b in R:
        rank[b] += 1
    if len(_rank_cache) > 64:
        _rank_cache.clear()
    _rank_cache[key] = (R, rank)
    return rank
