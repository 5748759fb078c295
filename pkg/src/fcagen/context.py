"""Binary contexts and the Galois derivation machinery.

A context is a triple (objects, attributes, incidence).  Incidence is kept
as one Python int per object row, bit ``m`` of row ``g`` meaning object ``g``
has attribute ``m``.  Plain ints give word-parallel set operations and stay
exact at any width, which is what the counting work here needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DimensionError, DuplicateNameError, UnknownNameError


def bit_indices(bits: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``bits``, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class _BitSet:
    """A subset of a fixed-width universe, stored as an int bitmask."""

    bits: int
    width: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise DimensionError(
                f"bit pattern {bin(self.bits)} does not fit width {self.width}"
            )

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.width and self.bits >> index & 1 == 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def indices(self) -> tuple[int, ...]:
        return tuple(bit_indices(self.bits))

    def issubset(self, other: "_BitSet") -> bool:
        self._check_same(other)
        return self.bits & ~other.bits == 0

    def _check_same(self, other: "_BitSet") -> None:
        if type(self) is not type(other) or self.width != other.width:
            raise DimensionError(f"cannot combine {self!r} with {other!r}")

    def _make(self, bits: int):
        return type(self)(bits, self.width)

    def __and__(self, other):
        self._check_same(other)
        return self._make(self.bits & other.bits)

    def __or__(self, other):
        self._check_same(other)
        return self._make(self.bits | other.bits)

    def __sub__(self, other):
        self._check_same(other)
        return self._make(self.bits & ~other.bits)

    def complement(self):
        return self._make(~self.bits & (1 << self.width) - 1)


class ObjectSet(_BitSet):
    """A set of objects of a specific context (width == number of objects)."""


class AttributeSet(_BitSet):
    """A set of attributes of a specific context (width == number of attributes)."""


@dataclass(frozen=True)
class Concept:
    """A pair (extent, intent) with extent' = intent and intent' = extent."""

    extent: ObjectSet
    intent: AttributeSet


def _check_names(names: tuple[str, ...], kind: str) -> None:
    if len(set(names)) != len(names):
        raise DuplicateNameError(f"duplicate {kind} names")


@dataclass(frozen=True)
class FormalContext:
    """An immutable binary context.

    Editing operations (:meth:`add_attribute`, :meth:`remove_attributes`)
    return new contexts, so variants obtained by adding or merging
    attributes can be compared side by side.
    """

    object_names: tuple[str, ...]
    attribute_names: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "object_names", tuple(self.object_names))
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))
        object.__setattr__(self, "rows", tuple(self.rows))
        _check_names(self.object_names, "object")
        _check_names(self.attribute_names, "attribute")
        if len(self.rows) != len(self.object_names):
            raise DimensionError(
                f"{len(self.rows)} rows for {len(self.object_names)} objects"
            )
        width = self.n_attributes
        for g, row in enumerate(self.rows):
            if row < 0 or row >> width:
                raise DimensionError(f"row {g} does not fit {width} attributes")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_table(
        cls,
        objects: Iterable[str],
        attributes: Iterable[str],
        table: Iterable[str],
    ) -> "FormalContext":
        """Build a context from 'X'/'.' strings, one per object row."""
        attributes = tuple(attributes)
        rows = []
        for line in table:
            if len(line) != len(attributes):
                raise DimensionError(
                    f"row {line!r} has {len(line)} cells for {len(attributes)} attributes"
                )
            row = 0
            for m, cell in enumerate(line):
                if cell == "X":
                    row |= 1 << m
                elif cell != ".":
                    raise ValueError(f"illegal cell {cell!r} (expected '.' or 'X')")
            rows.append(row)
        return cls(tuple(objects), attributes, tuple(rows))

    @classmethod
    def from_pairs(
        cls,
        objects: Iterable[str],
        attributes: Iterable[str],
        incidence: Iterable[tuple[str, str]],
    ) -> "FormalContext":
        """Build a context from (object, attribute) incidence pairs."""
        objects = tuple(objects)
        attributes = tuple(attributes)
        obj_index = {name: g for g, name in enumerate(objects)}
        att_index = {name: m for m, name in enumerate(attributes)}
        rows = [0] * len(objects)
        for obj, att in incidence:
            try:
                rows[obj_index[obj]] |= 1 << att_index[att]
            except KeyError as exc:
                raise UnknownNameError(f"unknown label {exc.args[0]!r}") from None
        return cls(objects, attributes, tuple(rows))

    # -- basic geometry -------------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.object_names)

    @property
    def n_attributes(self) -> int:
        return len(self.attribute_names)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Attribute columns as object masks (bit g of column m ⇔ row g bit m)."""
        cols = [0] * self.n_attributes
        for g, row in enumerate(self.rows):
            bit = 1 << g
            for m in bit_indices(row):
                cols[m] |= bit
        return tuple(cols)

    @cached_property
    def _object_index(self) -> dict[str, int]:
        return {name: g for g, name in enumerate(self.object_names)}

    @cached_property
    def _attribute_index(self) -> dict[str, int]:
        return {name: m for m, name in enumerate(self.attribute_names)}

    def object_index(self, name: str) -> int:
        try:
            return self._object_index[name]
        except KeyError:
            raise UnknownNameError(f"unknown object {name!r}") from None

    def attribute_index(self, name: str) -> int:
        try:
            return self._attribute_index[name]
        except KeyError:
            raise UnknownNameError(f"unknown attribute {name!r}") from None

    def incidence(self, obj: str, att: str) -> bool:
        return self.rows[self.object_index(obj)] >> self.attribute_index(att) & 1 == 1

    # -- set construction and naming ------------------------------------------

    def object_set(self, names: Iterable[str] = ()) -> ObjectSet:
        bits = 0
        for name in names:
            bits |= 1 << self.object_index(name)
        return ObjectSet(bits, self.n_objects)

    def attribute_set(self, names: Iterable[str] = ()) -> AttributeSet:
        bits = 0
        for name in names:
            bits |= 1 << self.attribute_index(name)
        return AttributeSet(bits, self.n_attributes)

    def all_objects(self) -> ObjectSet:
        return ObjectSet((1 << self.n_objects) - 1, self.n_objects)

    def all_attributes(self) -> AttributeSet:
        return AttributeSet((1 << self.n_attributes) - 1, self.n_attributes)

    def object_labels(self, objects: ObjectSet) -> tuple[str, ...]:
        self._check_objects(objects)
        return tuple(self.object_names[g] for g in bit_indices(objects.bits))

    def attribute_labels(self, attributes: AttributeSet) -> tuple[str, ...]:
        self._check_attributes(attributes)
        return tuple(self.attribute_names[m] for m in bit_indices(attributes.bits))

    def attribute_extent(self, name: str) -> ObjectSet:
        """The column of one attribute, i.e. the derivation of {name}."""
        return ObjectSet(self.columns[self.attribute_index(name)], self.n_objects)

    def _check_objects(self, objects: ObjectSet) -> None:
        if not isinstance(objects, ObjectSet) or objects.width != self.n_objects:
            raise DimensionError(
                f"object set of width {getattr(objects, 'width', '?')} "
                f"used with a context of {self.n_objects} objects"
            )

    def _check_attributes(self, attributes: AttributeSet) -> None:
        if not isinstance(attributes, AttributeSet) or attributes.width != self.n_attributes:
            raise DimensionError(
                f"attribute set of width {getattr(attributes, 'width', '?')} "
                f"used with a context of {self.n_attributes} attributes"
            )

    # -- derivation and closure -----------------------------------------------

    def derive_objects(self, objects: ObjectSet) -> AttributeSet:
        """Attributes shared by every object of the set (all of M for ∅)."""
        self._check_objects(objects)
        common = (1 << self.n_attributes) - 1
        for g in bit_indices(objects.bits):
            common &= self.rows[g]
        return AttributeSet(common, self.n_attributes)

    def derive_attributes(self, attributes: AttributeSet) -> ObjectSet:
        """Objects having every attribute of the set (all of G for ∅)."""
        self._check_attributes(attributes)
        common = (1 << self.n_objects) - 1
        cols = self.columns
        for m in bit_indices(attributes.bits):
            common &= cols[m]
        return ObjectSet(common, self.n_objects)

    def close_objects(self, objects: ObjectSet) -> ObjectSet:
        """The closure A'' of an object set; contains A and is idempotent."""
        return self.derive_attributes(self.derive_objects(objects))

    def close_attributes(self, attributes: AttributeSet) -> AttributeSet:
        return self.derive_objects(self.derive_attributes(attributes))

    def is_extent(self, objects: ObjectSet) -> bool:
        return self.close_objects(objects).bits == objects.bits

    def is_intent(self, attributes: AttributeSet) -> bool:
        return self.close_attributes(attributes).bits == attributes.bits

    # -- editing ----------------------------------------------------------------

    def add_attribute(self, name: str, extent: ObjectSet) -> "FormalContext":
        """A new context with one extra attribute whose column is ``extent``."""
        if name in self._attribute_index:
            raise DuplicateNameError(f"attribute {name!r} already present")
        self._check_objects(extent)
        bit = 1 << self.n_attributes
        rows = tuple(
            row | bit if extent.bits >> g & 1 else row
            for g, row in enumerate(self.rows)
        )
        return FormalContext(self.object_names, self.attribute_names + (name,), rows)

    def remove_attributes(self, names: Iterable[str]) -> "FormalContext":
        """A new context restricted to the attributes not listed."""
        drop = {self.attribute_index(name) for name in names}
        keep = [m for m in range(self.n_attributes) if m not in drop]
        rows = tuple(
            sum((row >> m & 1) << j for j, m in enumerate(keep))
            for row in self.rows
        )
        kept_names = tuple(self.attribute_names[m] for m in keep)
        return FormalContext(self.object_names, kept_names, rows)

    def is_attribute_reduced(self) -> bool:
        """True iff no column is an intersection of other columns.

        The intersection of the empty family is G, so a full column makes
        the context reducible, and so do duplicate columns.
        """
        cols = self.columns
        full = (1 << self.n_objects) - 1
        for m, col in enumerate(cols):
            meet = full
            for x, other in enumerate(cols):
                if x != m and other & col == col:
                    meet &= other
            if meet == col:
                return False
        return True

    # -- misc -------------------------------------------------------------------

    def __repr__(self) -> str:
        return (
            f"FormalContext({self.n_objects} objects, "
            f"{self.n_attributes} attributes)"
        )

    def table_strings(self) -> tuple[str, ...]:
        """Rows rendered as 'X'/'.' strings (inverse of :meth:`from_table`)."""
        width = self.n_attributes
        return tuple(
            "".join("X" if row >> m & 1 else "." for m in range(width))
            for row in self.rows
        )
