"""Total preorders over a finite universe, represented as ordered
partitions into indifference blocks (lowest block = most plausible),
together with profiles, exhaustive enumeration, and the flatness order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .logic import Proposition, Universe, UniverseMismatchError

DEFAULT_ENUM_CAP = 5


class InvalidPartitionError(ValueError):
    """Blocks fail to form an ordered partition of the universe."""


class TPO:
    """A total preorder as an ordered partition ``blocks[0] < blocks[1] < ...``.

    Equality is block-sequence equality; ``rank`` is the 1-based block
    index of a world. Construction validates that the blocks are
    nonempty, pairwise disjoint, and jointly cover the universe.
    """

    __slots__ = ("universe", "block_masks", "_ranks", "_hash")

    def __init__(self, universe: Universe, blocks: Sequence[Proposition | int]):
        masks: list[int] = []
        for b in blocks:
            if isinstance(b, Proposition):
                if b.universe != universe:
                    raise UniverseMismatchError("block from a different universe")
                masks.append(b.mask)
            else:
                masks.append(b)
        full = universe.full_mask
        seen = 0
        for i, m in enumerate(masks):
            if m == 0:
                raise InvalidPartitionError(f"block {i + 1} is empty")
            overlap = seen & m
            if overlap:
                name = universe.world_name(_lowest_bit(overlap))
                raise InvalidPartitionError(f"world {name!r} appears in two blocks")
            seen |= m
        if seen != full:
            name = universe.world_name(_lowest_bit(full & ~seen))
            raise InvalidPartitionError(f"world {name!r} is not covered by any block")
        ranks = [0] * universe.size
        for i, m in enumerate(masks):
            for w in range(universe.size):
                if (m >> w) & 1:
                    ranks[w] = i + 1
        self.universe = universe
        self.block_masks = tuple(masks)
        self._ranks = tuple(ranks)
        self._hash = hash((universe, self.block_masks))

    @classmethod
    def of(cls, universe: Universe, *block_names: str) -> "TPO":
        """Build from space-separated world names, e.g. ``TPO.of(u, "w", "x y")``."""
        return cls(universe, [universe.prop(*names.split()) for names in block_names])

    @property
    def blocks(self) -> tuple[Proposition, ...]:
        return tuple(Proposition(self.universe, m) for m in self.block_masks)

    @property
    def num_blocks(self) -> int:
        return len(self.block_masks)

    def rank(self, world: int | str) -> int:
        """1-based rank of a world (1 = most plausible)."""
        if isinstance(world, str):
            world = self.universe.world_index(world)
        return self._ranks[world]

    def min_mask(self, subset_mask: int) -> int:
        """Mask-level minimal set; the hot path for every aggregator."""
        for m in self.block_masks:
            inter = m & subset_mask
            if inter:
                return inter
        return 0

    def min_set(self, s: Proposition) -> Proposition:
        """The most plausible worlds of ``s``; empty iff ``s`` is empty."""
        if s.universe != self.universe:
            raise UniverseMismatchError("subset from a different universe")
        return Proposition(self.universe, self.min_mask(s.mask))

    def holds(self, x: int, y: int) -> bool:
        """x is at least as plausible as y."""
        return self._ranks[x] <= self._ranks[y]

    def strictly(self, x: int, y: int) -> bool:
        return self._ranks[x] < self._ranks[y]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TPO)
            and self.universe == other.universe
            and self.block_masks == other.block_masks
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render_tpo(self)

    def __repr__(self) -> str:
        return f"TPO({self})"


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def render_tpo(t: TPO) -> str:
    """Canonical text form, blocks lowest first, e.g. ``[w z] < [x y]``.

    World names inside a block are ASCII-sorted. Over an atom universe
    each block is rendered as one formula (a disjunction of minterms) so
    the text reloads through the ``atoms:`` file style.
    """
    u = t.universe
    sep = " | " if u.atoms else " "
    parts = []
    for m in t.block_masks:
        names = sorted(u.world_name(w) for w in Proposition(u, m))
        parts.append("[" + sep.join(names) + "]")
    return " < ".join(parts)


def tpo_from_blocks(blocks: Sequence[Proposition], universe: Universe) -> TPO:
    """Validated TPO from a lowest-first block sequence."""
    return TPO(universe, blocks)


def flatter_or_equal(t1: TPO, t2: TPO) -> bool:
    """True iff ``t1`` is at least as flat as ``t2``.

    Holds when the block sequences are identical, or when at the first
    index where they differ the block of ``t1`` strictly contains the
    block of ``t2``.
    """
    if t1.universe != t2.universe:
        raise UniverseMismatchError("TPOs over different universes")
    if t1.block_masks == t2.block_masks:
        return True
    for m1, m2 in zip(t1.block_masks, t2.block_masks):
        if m1 != m2:
            return m2 & ~m1 == 0
    # equal prefixes of different lengths cannot happen for partitions
    # of the same universe; be explicit anyway
    return False


@lru_cache(maxsize=None)
def _ordered_partitions(size: int) -> tuple[tuple[int, ...], ...]:
    """All ordered partitions of ``size`` worlds into nonempty blocks,
    sorted by block count, then lexicographically on block masks."""
    full = (1 << size) - 1
    results: list[tuple[int, ...]] = []

    def extend(remaining: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            results.append(prefix)
            return
        # iterate over all nonempty submasks of `remaining`
        sub = remaining
        while sub:
            extend(remaining & ~sub, prefix + (sub,))
            sub = (sub - 1) & remaining

    extend(full, ())
    results.sort(key=lambda blocks: (len(blocks), blocks))
    return tuple(results)


def count_tpos(size: int) -> int:
    """Number of TPOs over ``size`` worlds (the ordered Bell number)."""
    return len(_ordered_partitions(size))


def enumerate_tpos(u: Universe, max_worlds: int = DEFAULT_ENUM_CAP) -> Iterator[TPO]:
    """Every TPO over ``u`` exactly once, in a fixed order: by number of
    blocks, then lexicographically on block bitmasks."""
    if u.size > max_worlds:
        raise ValueError(
            f"universe of {u.size} worlds exceeds the enumeration cap of "
            f"{max_worlds}; pass max_worlds explicitly to override"
        )
    for blocks in _ordered_partitions(u.size):
        yield TPO(u, blocks)


class Profile:
    """A nonempty indexed sequence of TPOs over one universe.

    Aggregator indices are 1-based: entry i is ``profile[i - 1]`` and
    the index set is ``profile.indices``.
    """

    __slots__ = ("entries", "universe")

    def __init__(self, entries: Sequence[TPO]):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a profile needs at least one TPO")
        u = entries[0].universe
        for t in entries[1:]:
            if t.universe != u:
                raise UniverseMismatchError("profile entries over different universes")
        self.entries = entries
        self.universe = u

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> TPO:
        return self.entries[i]

    def __iter__(self) -> Iterator[TPO]:
        return iter(self.entries)

    @property
    def indices(self) -> range:
        return range(1, len(self.entries) + 1)

    def entry(self, index: int) -> TPO:
        """Entry by 1-based index."""
        return self.entries[index - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Profile) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "Profile([" + ", ".join(str(t) for t in self.entries) + "])"
