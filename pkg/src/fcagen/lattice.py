"""Concept enumeration, the concept order, and Hasse-diagram edges.

Enumeration is Close-by-One over the smaller of the two sides: a DFS over
closed sets with a canonicity test, so each concept is produced exactly once
with no dictionary of seen extents.  The materialized lattice is sorted into
lectic order of extents (object 0 most significant), which keeps the output
order independent of the side the search ran on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .context import AttributeSet, Concept, FormalContext, ObjectSet, bit_indices
from .errors import CapacityError, DimensionError

DEFAULT_MAX_CONCEPTS = 1 << 25

BRUTE_FORCE_LIMIT = 20


def _cbo_pairs(
    side_rows: tuple[int, ...],
    cross_rows: tuple[int, ...],
    n_side: int,
    n_cross: int,
) -> Iterator[tuple[int, int]]:
    """Yield (closed side set, its derivation) pairs, each exactly once.

    ``side_rows[i]`` is the cross-universe mask of side element ``i`` and
    ``cross_rows[j]`` the side-universe mask of cross element ``j``.
    """
    full_side = (1 << n_side) - 1
    full_cross = (1 << n_cross) - 1

    # Bottom closed set: derivation of the empty side set is the full cross
    # universe, whose derivation is the side elements incident to everything.
    derived = full_cross
    closed = full_side
    for j in bit_indices(derived):
        closed &= cross_rows[j]

    # DFS stack of (closed set, derivation, first candidate index).
    stack = [(closed, derived, 0)]
    push = stack.append
    pop = stack.pop
    while stack:
        closed, derived, start = pop()
        yield closed, derived
        children = []
        for i in range(start, n_side):
            if closed >> i & 1:
                continue
            child_derived = derived & side_rows[i]
            child = full_side
            rest = child_derived
            while rest:
                low = rest & -rest
                child &= cross_rows[low.bit_length() - 1]
                rest ^= low
            # Canonicity: the new closed set may not pick up side elements
            # below the generator that the parent did not have.
            if (child ^ closed) & (1 << i) - 1:
                continue
            children.append((child, child_derived, i + 1))
        # LIFO stack: push in reverse so children are visited in ascending
        # generator order, keeping the DFS deterministic.
        for item in reversed(children):
            push(item)


def iter_concept_pairs(ctx: FormalContext) -> Iterator[tuple[int, int]]:
    """Yield every concept of ``ctx`` as raw (extent bits, intent bits).

    Order is a deterministic DFS order, not the lectic order of the
    materialized lattice.
    """
    n_g, n_m = ctx.n_objects, ctx.n_attributes
    if n_g <= n_m:
        yield from _cbo_pairs(ctx.rows, ctx.columns, n_g, n_m)
    else:
        for intent, extent in _cbo_pairs(ctx.columns, ctx.rows, n_m, n_g):
            yield extent, intent


def count_concepts(ctx: FormalContext, *, max_concepts: int | None = DEFAULT_MAX_CONCEPTS) -> int:
    """Number of concepts of ``ctx`` without materializing them."""
    count = 0
    for _ in iter_concept_pairs(ctx):
        count += 1
        if max_concepts is not None and count > max_concepts:
            raise CapacityError(f"more than {max_concepts} concepts")
    return count


def lectic_key(bits: int, width: int) -> int:
    """Sort key realizing lectic order: index 0 is the most significant bit."""
    if width == 0:
        return 0
    return int(f"{bits:0{width}b}"[::-1], 2)


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context in lectic order of extents.

    Raw extents/intents are kept as int masks; ``Concept`` values are
    materialized on access.
    """

    context: FormalContext
    extent_bits: tuple[int, ...]
    intent_bits: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.extent_bits)

    def __len__(self) -> int:
        return len(self.extent_bits)

    def __getitem__(self, i: int) -> Concept:
        return Concept(
            ObjectSet(self.extent_bits[i], self.context.n_objects),
            AttributeSet(self.intent_bits[i], self.context.n_attributes),
        )

    def __iter__(self) -> Iterator[Concept]:
        for i in range(len(self)):
            yield self[i]

    @cached_property
    def concepts(self) -> tuple[Concept, ...]:
        return tuple(self)

    @cached_property
    def extent_set(self) -> frozenset[int]:
        return frozenset(self.extent_bits)

    @cached_property
    def extent_index(self) -> dict[int, int]:
        return {bits: i for i, bits in enumerate(self.extent_bits)}

    def top(self) -> Concept:
        """The greatest concept: extent is all of G."""
        return self[self.extent_index[(1 << self.context.n_objects) - 1]]

    def bottom(self) -> Concept:
        """The least concept: extent is the derivation of all of M."""
        return self[0]


def _build_lattice(ctx: FormalContext, pairs: list[tuple[int, int]]) -> ConceptLattice:
    n_g = ctx.n_objects
    pairs.sort(key=lambda p: lectic_key(p[0], n_g))
    return ConceptLattice(
        context=ctx,
        extent_bits=tuple(e for e, _ in pairs),
        intent_bits=tuple(i for _, i in pairs),
    )


def enumerate_concepts(
    ctx: FormalContext, *, max_concepts: int = DEFAULT_MAX_CONCEPTS
) -> ConceptLattice:
    """Every concept of ``ctx``, exactly once, in lectic order of extents.

    Raises :class:`CapacityError` once more than ``max_concepts`` concepts
    have been produced.
    """
    pairs = []
    for pair in iter_concept_pairs(ctx):
        pairs.append(pair)
        if len(pairs) > max_concepts:
            raise CapacityError(f"more than {max_concepts} concepts")
    return _build_lattice(ctx, pairs)


def brute_force_concepts(ctx: FormalContext) -> ConceptLattice:
    """Independent oracle: close every subset of the smaller side.

    Exhaustive and quadratic in the output at worst; kept deliberately
    simple so it can back the enumeration tests.
    """
    n_g, n_m = ctx.n_objects, ctx.n_attributes
    if min(n_g, n_m) > BRUTE_FORCE_LIMIT:
        raise CapacityError(
            f"brute force limited to min(|G|,|M|) <= {BRUTE_FORCE_LIMIT}"
        )
    seen: dict[int, int] = {}
    if n_g <= n_m:
        for mask in range(1 << n_g):
            intent = ctx.derive_objects(ObjectSet(mask, n_g))
            extent = ctx.derive_attributes(intent)
            seen[extent.bits] = intent.bits
    else:
        for mask in range(1 << n_m):
            extent = ctx.derive_attributes(AttributeSet(mask, n_m))
            intent = ctx.derive_objects(extent)
            seen[extent.bits] = intent.bits
    return _build_lattice(ctx, list(seen.items()))


def order_leq(lower: Concept, upper: Concept) -> bool:
    """Concept order: (A1,B1) <= (A2,B2) iff A1 ⊆ A2."""
    if (
        lower.extent.width != upper.extent.width
        or lower.intent.width != upper.intent.width
    ):
        raise DimensionError("concepts come from different contexts")
    return lower.extent.bits & ~upper.extent.bits == 0


@dataclass(frozen=True)
class CoverEdge:
    """A Hasse edge: ``lower`` is covered by ``upper`` (lattice indices)."""

    lower: int
    upper: int


def covering_relation(lattice: ConceptLattice) -> list[CoverEdge]:
    """The Hasse edges of the lattice, sorted by (lower, upper) index."""
    n = len(lattice)
    extents = lattice.extent_bits
    by_size = sorted(range(n), key=lambda i: (extents[i].bit_count(), i))
    edges = []
    for i in range(n):
        ext = extents[i]
        covers: list[int] = []
        for j in by_size:
            sup = extents[j]
            if sup == ext or sup & ext != ext:
                continue
            if any(extents[k] & sup == extents[k] for k in covers):
                continue
            covers.append(j)
            edges.append(CoverEdge(i, j))
    edges.sort(key=lambda e: (e.lower, e.upper))
    return edges
