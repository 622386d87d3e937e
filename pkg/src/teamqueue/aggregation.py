"""TeamQueue aggregation of profiles of total preorders.

The generic construction builds the output partition step by step: at
step i a selection rule picks a nonempty set of input indices, the
minima of the selected inputs over the not-yet-placed worlds form the
next output block, and placed worlds are deleted from every queue. The
synchronous instance (``stq``) selects every index at every step; the
min-rank aggregator ranks each world by the best absolute rank it gets
among the inputs. ``naive_ci`` builds the relation forced by requiring
output minima to equal the union of input minima on every pair, which
in general is not a TPO; it exists for the failure demonstration.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .logic import Proposition, Universe, UniverseMismatchError
from .orders import TPO, Profile

DEFAULT_STRATEGY_WORLD_CAP = 4
DEFAULT_STRATEGY_INPUT_CAP = 3


class StrategyError(ValueError):
    """A selection rule produced an unusable index set."""


class SelectionStrategy:
    """Per-step selection of input indices for the queue construction.

    Kinds: ``all`` selects every index at every step (the synchronous
    aggregator); ``constant`` selects one fixed nonempty index set;
    ``explicit`` follows a finite list of index sets and fails if the
    list runs out before the universe is covered.
    """

    __slots__ = ("kind", "steps", "fixed")

    def __init__(self, kind: str, steps: tuple[frozenset[int], ...] = (), fixed: frozenset[int] = frozenset()):
        self.kind = kind
        self.steps = steps
        self.fixed = fixed

    @classmethod
    def all_indices(cls) -> "SelectionStrategy":
        return cls("all")

    @classmethod
    def constant(cls, indices: Sequence[int]) -> "SelectionStrategy":
        fixed = frozenset(indices)
        if not fixed:
            raise StrategyError("constant strategy needs a nonempty index set")
        return cls("constant", fixed=fixed)

    @classmethod
    def explicit(cls, steps: Sequence[Sequence[int]]) -> "SelectionStrategy":
        frozen = tuple(frozenset(s) for s in steps)
        for i, s in enumerate(frozen):
            if not s:
                raise StrategyError(f"explicit strategy step {i + 1} is empty")
        return cls("explicit", steps=frozen)

    def select(self, profile: Profile, step: int) -> frozenset[int]:
        """The index set for 1-based ``step``; always nonempty and within I."""
        n = len(profile)
        if self.kind == "all":
            return frozenset(range(1, n + 1))
        if self.kind == "constant":
            chosen = self.fixed
        else:
            if step > len(self.steps):
                raise StrategyError(
                    f"explicit strategy exhausted at step {step} before the universe was covered"
                )
            chosen = self.steps[step - 1]
        if not chosen:
            raise StrategyError(f"empty index set at step {step}")
        if not chosen <= set(range(1, n + 1)):
            raise StrategyError(f"index set {sorted(chosen)} not within 1..{n}")
        return chosen

    def __str__(self) -> str:
        if self.kind == "all":
            return "all"
        if self.kind == "constant":
            return "constant:{" + ",".join(map(str, sorted(self.fixed))) + "}"
        return "explicit:" + "/".join(
            "{" + ",".join(map(str, sorted(s))) + "}" for s in self.steps
        )

    def __repr__(self) -> str:
        return f"SelectionStrategy({self})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SelectionStrategy)
            and self.kind == other.kind
            and self.steps == other.steps
            and self.fixed == other.fixed
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.steps, self.fixed))


def tq_aggregate(profile: Profile, strategy: SelectionStrategy) -> TPO:
    """Run the queue construction for ``strategy`` over ``profile``.

    Step i places ``union over selected j of min_j(remaining)`` as the
    next output block and removes it from every queue; the construction
    stops as soon as the blocks cover the universe (at most |W| steps).
    """
    u = profile.universe
    remaining = u.full_mask
    blocks: list[int] = []
    step = 1
    while remaining:
        chosen = strategy.select(profile, step)
        block = 0
        for j in chosen:
            block |= profile.entry(j).min_mask(remaining)
        assert block, "minima of a nonempty remainder cannot be empty"
        blocks.append(block)
        remaining &= ~block
        step += 1
    return TPO(u, blocks)


def stq(profile: Profile) -> TPO:
    """Synchronous aggregation: select every input at every step."""
    return tq_aggregate(profile, SelectionStrategy.all_indices())


def minrank(profile: Profile) -> TPO:
    """Rank each world by the minimum absolute rank it receives among
    the inputs; blocks group equal minima, with gaps compressed."""
    u = profile.universe
    best = [min(t.rank(w) for t in profile) for w in range(u.size)]
    blocks: list[int] = []
    for r in sorted(set(best)):
        blocks.append(sum(1 << w for w in range(u.size) if best[w] == r))
    return TPO(u, blocks)


def tq_membership(profile: Profile, candidate: TPO) -> SelectionStrategy | None:
    """Selection strategy producing ``candidate``, if any.

    Extracts the canonical strategy from the candidate's own blocks,
    step i selecting every input whose minimum over the not-yet-placed
    worlds sits inside block i. If some step selects nothing, or
    replaying the extracted strategy does not reproduce the candidate
    exactly, the candidate is not a queue output and None is returned.
    """
    if profile.universe != candidate.universe:
        raise UniverseMismatchError("candidate over a different universe")
    steps: list[frozenset[int]] = []
    remaining = profile.universe.full_mask
    for block in candidate.block_masks:
        chosen = frozenset(
            j for j in profile.indices
            if profile.entry(j).min_mask(remaining) & ~block == 0
        )
        if not chosen:
            return None
        steps.append(chosen)
        remaining &= ~block
    strategy = SelectionStrategy.explicit(steps)
    try:
        replay = tq_aggregate(profile, strategy)
    except StrategyError:
        return None
    return strategy if replay == candidate else None


def enumerate_strategies(
    profile: Profile,
    max_worlds: int = DEFAULT_STRATEGY_WORLD_CAP,
    max_inputs: int = DEFAULT_STRATEGY_INPUT_CAP,
) -> Iterator[SelectionStrategy]:
    """All explicit strategies of length |W| over nonempty subsets of I.

    The length suffices because the construction never takes more than
    |W| steps; unused tail entries are ignored. Subsets are ordered by
    their index bitmask and strategies enumerate lexicographically over
    steps. Deduplication of equal outputs is the caller's concern.
    """
    u = profile.universe
    n = len(profile)
    if u.size > max_worlds or n > max_inputs:
        raise ValueError(
            f"strategy space for {n} inputs over {u.size} worlds exceeds the caps "
            f"({max_inputs} inputs, {max_worlds} worlds); pass caps explicitly to override"
        )
    subsets = [
        frozenset(j for j in range(1, n + 1) if (m >> (j - 1)) & 1)
        for m in range(1, 1 << n)
    ]
    for steps in product(subsets, repeat=u.size):
        yield SelectionStrategy.explicit(steps)


def parse_aggregator(name: str) -> SelectionStrategy | str:
    """Parse an aggregator name: ``stq``, ``minrank``, or
    ``explicit:{1,3}/{2}/{1,2,3}``."""
    if name == "stq":
        return "stq"
    if name == "minrank":
        return "minrank"
    if name.startswith("explicit:"):
        body = name[len("explicit:"):]
        steps = []
        for part in body.split("/"):
            part = part.strip()
            if not (part.startswith("{") and part.endswith("}")):
                raise ValueError(f"malformed strategy step {part!r}")
            inner = part[1:-1].strip()
            if not inner:
                raise ValueError(f"empty strategy step {part!r}")
            try:
                steps.append([int(tok) for tok in inner.split(",")])
            except ValueError:
                raise ValueError(f"malformed strategy step {part!r}") from None
        return SelectionStrategy.explicit(steps)
    raise ValueError(f"unknown aggregator {name!r}")


def aggregate_by_name(profile: Profile, name: str, require_first_all: bool = False) -> TPO:
    """Aggregate under a named method.

    With ``require_first_all`` the first step must select every input,
    which makes the bottom block the union of the input minima; ``stq``
    satisfies this by construction, ``minrank`` does so because its
    bottom block is exactly that union, and explicit strategies are
    rejected unless their first step is the full index set.
    """
    parsed = parse_aggregator(name)
    if parsed == "stq":
        return stq(profile)
    if parsed == "minrank":
        return minrank(profile)
    assert isinstance(parsed, SelectionStrategy)
    if require_first_all:
        first = parsed.select(profile, 1)
        if first != frozenset(profile.indices):
            raise ValueError(
                "this construction requires the first step to select every input; "
                f"got {sorted(first)}"
            )
    return tq_aggregate(profile, parsed)


class RawRelation:
    """A boolean relation over the worlds, with no promised structure.

    ``rows[a]`` is the bitmask of worlds b with a related-to b (read:
    a at least as plausible as b).
    """

    __slots__ = ("universe", "rows")

    def __init__(self, universe: Universe, rows: Sequence[int]):
        if len(rows) != universe.size:
            raise ValueError("one row per world required")
        self.universe = universe
        self.rows = tuple(rows)

    @classmethod
    def from_tpo(cls, t: TPO) -> "RawRelation":
        u = t.universe
        rows = [
            sum(1 << b for b in range(u.size) if t.holds(a, b))
            for a in range(u.size)
        ]
        return cls(u, rows)

    def holds(self, a: int, b: int) -> bool:
        return (self.rows[a] >> b) & 1 == 1

    def strictly(self, a: int, b: int) -> bool:
        return self.holds(a, b) and not self.holds(b, a)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RawRelation)
            and self.universe == other.universe
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.rows))

    def totality_witness(self) -> tuple[int, int] | None:
        """First pair (universe order) related in neither direction."""
        for a in range(self.universe.size):
            for b in range(a + 1, self.universe.size):
                if not self.holds(a, b) and not self.holds(b, a):
                    return (a, b)
        return None

    def _peel_order(self) -> list[int]:
        """Worlds by plausibility levels of the relation itself.

        Repeatedly removes the worlds related to every remaining world;
        if that stalls (possible for broken relations) the leftover is
        appended in universe order. Used to fix the witness scan order,
        so reported counterexamples start from the most plausible
        worlds involved.
        """
        order: list[int] = []
        remaining = set(range(self.universe.size))
        while remaining:
            level = [a for a in remaining if all(self.holds(a, b) for b in remaining)]
            if not level:
                order.extend(sorted(remaining))
                break
            level.sort()
            order.extend(level)
            remaining -= set(level)
        return order

    def tpo_witness(self) -> tuple[int, int, int] | None:
        """A triple (a, b, c) with a <= b, b < c, c <= a, if one exists.

        Such a cycle through one strict edge exists exactly when a total
        reflexive relation fails transitivity. The scan runs in peel
        order: strict edges (b, c) by position pairs, then the closing
        world a by position.
        """
        order = self._peel_order()
        pos = {w: i for i, w in enumerate(order)}
        strict_edges = [
            (b, c)
            for b in range(self.universe.size)
            for c in range(self.universe.size)
            if b != c and self.strictly(b, c)
        ]
        strict_edges.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        for b, c in strict_edges:
            candidates = [
                a for a in range(self.universe.size)
                if a != b and a != c and self.holds(a, b) and self.holds(c, a)
            ]
            if candidates:
                return (min(candidates, key=pos.__getitem__), b, c)
        return None

    def tpo_verdict(self) -> tuple[bool, tuple[str, str, str] | None]:
        """(is_tpo, witness). The witness triple (a, b, c) of world
        names satisfies a <= b, b < c, c <= a and can be re-checked
        through ``holds``; totality failures report (a, b, b)."""
        tw = self.totality_witness()
        name = self.universe.world_name
        if tw is not None:
            return False, (name(tw[0]), name(tw[1]), name(tw[1]))
        cyc = self.tpo_witness()
        if cyc is not None:
            return False, (name(cyc[0]), name(cyc[1]), name(cyc[2]))
        return True, None

    def is_tpo(self) -> bool:
        return self.tpo_verdict()[0]

    def to_tpo(self) -> TPO:
        """Convert via minima peeling; raises if the relation is not a TPO."""
        ok, witness = self.tpo_verdict()
        if not ok:
            raise ValueError(f"relation is not a TPO (witness {witness})")
        blocks: list[int] = []
        remaining = set(range(self.universe.size))
        while remaining:
            level = [a for a in remaining if all(self.holds(a, b) for b in remaining)]
            blocks.append(sum(1 << a for a in level))
            remaining -= set(level)
        return TPO(self.universe, blocks)


def naive_ci(profile: Profile) -> RawRelation:
    """The relation forced by reading output minima as unions of input
    minima on every two-element set: a related-to b iff a belongs to
    some input's minimal set over {a, b}. Total by construction but not
    transitive in general; use ``tpo_verdict`` for the failure triple.
    """
    u = profile.universe
    rows = [0] * u.size
    for a in range(u.size):
        for b in range(u.size):
            pair = (1 << a) | (1 << b)
            union = 0
            for t in profile:
                union |= t.min_mask(pair)
            if (union >> a) & 1:
                rows[a] |= 1 << b
    return RawRelation(u, rows)
