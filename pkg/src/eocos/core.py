"""Core unit model: bordered items, ideal/actual comparison, pseudo-will.

An EoCoS (effect-of-contradictory-structure unit) holds a small set of
items, each placed on one of the two sides of a border (Near or Far).
Two placements are kept side by side: the *ideal* image and the *actual*
image.  Comparing them yields the unit's effect: pleasant when the two
images coincide, unpleasant otherwise, with the disagreeing items forming
the contradiction.  The pseudo-will of a contradictory unit is the minimal
set of cross-border moves that would restore the ideal image.

Intensities are fixed-point integers counting millionths (micro units), so
every arithmetic step in the engine is exact and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping

MICRO = 1_000_000
_FRAC_DIGITS = 6


class EngineError(Exception):
    """Base class for errors raised by engine operations."""


class UnknownItem(EngineError):
    """A move names an item the unit does not contain."""


class StaleMove(EngineError):
    """A move's source side does not match the item's current actual side."""


def parse_micro(text: str) -> int:
    """Parse a signed decimal with at most six fractional digits into micro units.

    Raises ValueError on malformed input; never loses precision.
    """
    s = text.strip()
    sign = 1
    if s[:1] in ("-", "+"):
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    whole, dot, frac = s.partition(".")
    if not (whole.isascii() and whole.isdigit()):
        raise ValueError(f"not a decimal: {text!r}")
    if dot and not (frac.isascii() and frac.isdigit()):
        raise ValueError(f"not a decimal: {text!r}")
    if len(frac) > _FRAC_DIGITS:
        raise ValueError(f"more than {_FRAC_DIGITS} fractional digits: {text!r}")
    return sign * (int(whole) * MICRO + int(frac.ljust(_FRAC_DIGITS, "0")))


def format_micro(micro: int, *, signed: bool = False) -> str:
    """Render micro units as a fixed six-digit decimal, e.g. 1500000 -> '1.500000'."""
    sign = "-" if micro < 0 else ("+" if signed else "")
    whole, frac = divmod(abs(micro), MICRO)
    return f"{sign}{whole}.{frac:06d}"


@dataclass(frozen=True, order=True)
class Intensity:
    """Non-negative strength in micro units (1.0 == 1_000_000 micro).

    Deltas are accumulated as plain integers, so summation is exact,
    commutative and associative.  The configured cap is enforced by the
    montage engine, not by this type.
    """

    micro: int = 0

    def __post_init__(self) -> None:
        if self.micro < 0:
            raise ValueError(f"intensity must be non-negative, got {self.micro} micro")

    @classmethod
    def parse(cls, text: str) -> "Intensity":
        return cls(parse_micro(text))

    def __str__(self) -> str:
        return format_micro(self.micro)


class ItemKind(Enum):
    """Role of an item inside a unit."""

    SUBJECT = "subject"
    OBJECT = "object"
    SUBJECT_ASPECT = "s-aspect"
    OBJECT_ASPECT = "o-aspect"
    PLEASANT = "pleasant"


class Side(Enum):
    """The two regions created by the border.  The names are a convention."""

    NEAR = "Near"
    FAR = "Far"

    @property
    def opposite(self) -> "Side":
        return Side.FAR if self is Side.NEAR else Side.NEAR


@dataclass(frozen=True)
class Placement:
    """Total assignment of item ids to sides of the border."""

    assignments: dict[str, Side]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", dict(sorted(self.assignments.items())))

    @classmethod
    def from_sides(cls, near: Iterable[str] = (), far: Iterable[str] = ()) -> "Placement":
        near, far = list(near), list(far)
        twice = set(near) & set(far)
        if twice:
            raise ValueError(f"items on both sides: {sorted(twice)}")
        out: dict[str, Side] = {i: Side.NEAR for i in near}
        out.update({i: Side.FAR for i in far})
        return cls(out)

    def side_of(self, item: str) -> Side:
        return self.assignments[item]

    def on_side(self, side: Side) -> tuple[str, ...]:
        return tuple(i for i, s in self.assignments.items() if s is side)

    def moved(self, item: str, to: Side) -> "Placement":
        return Placement({**self.assignments, item: to})

    def keys(self):
        return self.assignments.keys()


@dataclass(frozen=True)
class Effect:
    """Outcome of comparing the ideal and actual placements.

    An empty mismatch set means the images coincide (pleasant); a non-empty
    one lists the items whose sides disagree (unpleasant).
    """

    mismatched: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mismatched", tuple(sorted(self.mismatched)))

    @property
    def pleasant(self) -> bool:
        return not self.mismatched

    def __str__(self) -> str:
        if self.pleasant:
            return "Pleasant"
        return "Unpleasant{%s}" % ", ".join(self.mismatched)


PLEASANT = Effect()


@dataclass(frozen=True)
class CrossBorderMove:
    """One item crossing the border, from its current side to its ideal side."""

    item: str
    from_side: Side
    to_side: Side

    def __post_init__(self) -> None:
        if self.from_side is self.to_side:
            raise ValueError(f"move of {self.item!r} does not cross the border")

    def __str__(self) -> str:
        return f"{self.item} {self.from_side.value}->{self.to_side.value}"


@dataclass(frozen=True)
class EoCoS:
    """A contradictory-structure unit.

    Invariants (checked at construction): the subject field names an item of
    kind SUBJECT, exactly one SUBJECT and exactly one PLEASANT item exist,
    and the ideal and actual placements cover exactly the declared items.
    """

    id: str
    subject: str
    items: dict[str, ItemKind]
    ideal: Placement
    actual: Placement
    intensity: Intensity = Intensity(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", dict(sorted(self.items.items())))
        kinds = list(self.items.values())
        if kinds.count(ItemKind.SUBJECT) != 1:
            raise ValueError(f"unit {self.id!r} must have exactly one subject item")
        if kinds.count(ItemKind.PLEASANT) != 1:
            raise ValueError(f"unit {self.id!r} must have exactly one pleasant item")
        if self.items.get(self.subject) is not ItemKind.SUBJECT:
            raise ValueError(f"unit {self.id!r}: subject {self.subject!r} is not a subject item")
        keys = set(self.items)
        if set(self.ideal.keys()) != keys or set(self.actual.keys()) != keys:
            raise ValueError(f"unit {self.id!r}: placements must cover exactly the declared items")

    @property
    def pleasant_item(self) -> str:
        return next(i for i, k in self.items.items() if k is ItemKind.PLEASANT)

    def content_items(self) -> frozenset[str]:
        """Item ids other than the subject and the pleasant marker."""
        return frozenset(self.items) - {self.subject, self.pleasant_item}

    def with_intensity(self, intensity: Intensity) -> "EoCoS":
        return replace(self, intensity=intensity)


def compare(e: EoCoS) -> Effect:
    """Match the ideal image against the actual one.

    Returns PLEASANT when they coincide, otherwise the exact set of items
    whose sides disagree.
    """
    mism = tuple(i for i in e.items if e.ideal.side_of(i) is not e.actual.side_of(i))
    return Effect(mism)


def pseudo_will(e: EoCoS) -> list[CrossBorderMove]:
    """Derive the moves that would dissolve the unit's contradiction.

    Empty for a pleasant unit.  Otherwise one move per mismatched item,
    toward its ideal side, ordered lexicographically by item id.
    """
    effect = compare(e)
    return [
        CrossBorderMove(item, e.actual.side_of(item), e.ideal.side_of(item))
        for item in effect.mismatched
    ]


def apply_moves(e: EoCoS, moves: Iterable[CrossBorderMove]) -> EoCoS:
    """Execute border crossings, returning a new unit with the actual image updated.

    Ideal image and intensity are untouched.  Raises UnknownItem for a move
    naming an absent item, StaleMove when a move's source side disagrees
    with the item's current actual side.
    """
    actual = e.actual
    for move in moves:
        if move.item not in e.items:
            raise UnknownItem(f"unit {e.id!r} has no item {move.item!r}")
        current = actual.side_of(move.item)
        if current is not move.from_side:
            raise StaleMove(
                f"unit {e.id!r}: item {move.item!r} is on {current.value}, "
                f"move expects {move.from_side.value}"
            )
        actual = actual.moved(move.item, move.to_side)
    return replace(e, actual=actual)


__all__ = [
    "MICRO",
    "EngineError",
    "UnknownItem",
    "StaleMove",
    "parse_micro",
    "format_micro",
    "Intensity",
    "ItemKind",
    "Side",
    "Placement",
    "Effect",
    "PLEASANT",
    "CrossBorderMove",
    "EoCoS",
    "compare",
    "pseudo_will",
    "apply_moves",
    "sum_deltas",
]
