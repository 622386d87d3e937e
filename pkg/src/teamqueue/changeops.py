"""Belief-change operators on preorder-identified states.

A state is just a total preorder; its belief worlds are the bottom
block. Single-step contraction adds the most plausible counter-worlds
to the belief worlds; single-step revision moves to the most plausible
worlds of the input. Two iterated contraction recipes are shipped
(``natural`` merges the promoted worlds into the bottom block and keeps
everything else in place, ``moderate`` additionally pulls all remaining
counter-worlds below all remaining input-worlds), plus two revision
recipes used to instantiate the iterated contraction-from-revision
identity. Parallel contraction contracts serially by each member and
aggregates the results; the ``shuffle`` recipe is a deliberately broken
fixture that reverses the relative order of the surviving input-worlds,
for exercising the witness machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .aggregation import aggregate_by_name
from .logic import Proposition, UniverseMismatchError
from .orders import TPO, Profile

CONTRACTION_KINDS = ("natural-contraction", "moderate-contraction", "shuffle-contraction")
REVISION_KINDS = ("natural-revision", "lexicographic-revision")

_ALIASES = {
    "natural": "natural",
    "moderate": "moderate",
    "lexicographic": "lexicographic",
    "shuffle": "shuffle",
    "natural-contraction": "natural",
    "moderate-contraction": "moderate",
    "shuffle-contraction": "shuffle",
    "natural-revision": "natural",
    "lexicographic-revision": "lexicographic",
}


def _contraction_kind(kind: str) -> str:
    if kind in REVISION_KINDS:
        raise ValueError(f"{kind!r} is a revision kind, not a contraction kind")
    base = _ALIASES.get(kind)
    if base not in ("natural", "moderate", "shuffle"):
        raise ValueError(f"unknown contraction kind {kind!r}")
    return base


def _revision_kind(kind: str) -> str:
    if kind in CONTRACTION_KINDS:
        raise ValueError(f"{kind!r} is a contraction kind, not a revision kind")
    base = _ALIASES.get(kind)
    if base not in ("natural", "lexicographic"):
        raise ValueError(f"unknown revision kind {kind!r}")
    return base


@dataclass(frozen=True, slots=True)
class BeliefState:
    """A belief state identified with its plausibility preorder."""

    tpo: TPO

    @property
    def universe(self):
        return self.tpo.universe

    @property
    def belief_worlds(self) -> Proposition:
        """Model set of the belief set: the bottom block."""
        return Proposition(self.tpo.universe, self.tpo.block_masks[0])

    def believes(self, a: Proposition) -> bool:
        if a.universe != self.tpo.universe:
            raise UniverseMismatchError("sentence over a different universe")
        return self.tpo.block_masks[0] & ~a.mask == 0

    def __str__(self) -> str:
        return str(self.tpo)


@dataclass(frozen=True, slots=True)
class ContractionInput:
    """A nonempty finite set of sentences to remove simultaneously."""

    sentences: tuple[Proposition, ...]

    def __post_init__(self):
        if not self.sentences:
            raise ValueError("contraction input must be nonempty")
        u = self.sentences[0].universe
        for s in self.sentences[1:]:
            if s.universe != u:
                raise UniverseMismatchError("input sentences over different universes")

    @classmethod
    def of(cls, sentences: Sequence[Proposition]) -> "ContractionInput":
        return cls(tuple(sentences))

    @property
    def universe(self):
        return self.sentences[0].universe

    @property
    def conjunction(self) -> Proposition:
        """Model set of the conjunction of all members."""
        mask = self.universe.full_mask
        for s in self.sentences:
            mask &= s.mask
        return Proposition(self.universe, mask)

    @property
    def negations(self) -> tuple[Proposition, ...]:
        return tuple(~s for s in self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    def __str__(self) -> str:
        return "{" + "; ".join(str(s) for s in self.sentences) + "}"


def contract_beliefs(state: BeliefState, a: Proposition) -> Proposition:
    """Belief worlds after single-step contraction by ``a``:
    min(W) union min(complement of a)."""
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    neg = t.universe.full_mask & ~a.mask
    return Proposition(t.universe, t.block_masks[0] | t.min_mask(neg))


def revise_beliefs(state: BeliefState, a: Proposition) -> Proposition:
    """Belief worlds after single-step revision by ``a``: min(a).
    Rejects the inconsistent input (revision is consistency preserving)."""
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    if a.is_empty:
        raise ValueError("cannot revise by an inconsistent sentence")
    return Proposition(t.universe, t.min_mask(a.mask))


def _residual_blocks(t: TPO, keep_mask: int) -> list[int]:
    """The blocks of t restricted to keep_mask, empties dropped."""
    return [b & keep_mask for b in t.block_masks if b & keep_mask]


def serial_contract(state: BeliefState, a: Proposition, kind: str) -> BeliefState:
    """Iterated contraction by a single sentence.

    Both recipes put min(W) union min(complement of a) at the bottom.
    ``natural`` leaves every other world in its input position;
    ``moderate`` then lines up the remaining counter-worlds of ``a``
    (input order) strictly below the remaining a-worlds (input order).
    Contraction by a tautology returns the state unchanged.
    """
    base = _contraction_kind(kind)
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    neg = t.universe.full_mask & ~a.mask
    bottom = t.block_masks[0] | t.min_mask(neg)
    keep = t.universe.full_mask & ~bottom
    if base == "natural":
        blocks = [bottom] + _residual_blocks(t, keep)
    elif base == "moderate":
        blocks = [bottom] + _residual_blocks(t, keep & neg) + _residual_blocks(t, keep & a.mask)
    else:  # shuffle: broken fixture, reverses the surviving a-world blocks
        blocks = (
            [bottom]
            + _residual_blocks(t, keep & neg)
            + list(reversed(_residual_blocks(t, keep & a.mask)))
        )
    return BeliefState(TPO(t.universe, blocks))


def serial_revise(state: BeliefState, a: Proposition, kind: str) -> BeliefState:
    """Iterated revision by a single consistent sentence.

    ``natural`` promotes min(a) to a new strictly-minimal block and
    leaves everything else in place; ``lexicographic`` puts every
    a-world (input order) strictly below every other world (input
    order).
    """
    base = _revision_kind(kind)
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    if a.is_empty:
        raise ValueError("cannot revise by an inconsistent sentence")
    if base == "natural":
        bottom = t.min_mask(a.mask)
        blocks = [bottom] + _residual_blocks(t, t.universe.full_mask & ~bottom)
    else:
        blocks = _residual_blocks(t, a.mask) + _residual_blocks(t, t.universe.full_mask & ~a.mask)
    return BeliefState(TPO(t.universe, blocks))


def parallel_contract(
    state: BeliefState,
    inp: ContractionInput,
    kind: str = "natural",
    agg: str = "stq",
    require_first_all: bool = True,
) -> BeliefState:
    """Simultaneous contraction by a set of sentences: contract serially
    by each member, then aggregate the resulting preorders.

    A singleton input short-circuits to the serial contraction. With
    ``require_first_all`` (the default) the aggregation's first step
    must select every input, which makes the new belief worlds the
    union of the serial contractions' belief worlds.
    """
    if inp.universe != state.tpo.universe:
        raise UniverseMismatchError("input over a different universe")
    if len(inp) == 1:
        return serial_contract(state, inp.sentences[0], kind)
    contracted = [serial_contract(state, a, kind).tpo for a in inp.sentences]
    return BeliefState(aggregate_by_name(Profile(contracted), agg, require_first_all))


def ihi_contract(
    state: BeliefState,
    a: Proposition,
    rev_kind: str = "natural-revision",
    agg: str = "stq",
    require_first_all: bool = True,
) -> BeliefState:
    """Iterated contraction built from revision: aggregate the prior
    preorder with the preorder revised by the complement of ``a``.
    Contraction by a tautology returns the state unchanged."""
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    neg = ~a
    if neg.is_empty:
        return state
    revised = serial_revise(state, neg, rev_kind)
    return BeliefState(
        aggregate_by_name(Profile([t, revised.tpo]), agg, require_first_all)
    )


def is_strongly_believed(state: BeliefState, a: Proposition) -> bool:
    """Strong belief, by the defining quantifier: ``a`` is believed and
    survives revision by every sentence consistent with it."""
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    if a.is_empty:
        return False
    if t.block_masks[0] & ~a.mask:
        return False
    for b in range(1, t.universe.full_mask + 1):
        if a.mask & b and t.min_mask(b) & ~a.mask:
            return False
    return True


def strongly_believed_by_rank(state: BeliefState, a: Proposition) -> bool:
    """Rank shortcut for strong belief: every a-world strictly below
    every other world (vacuously so when ``a`` is the whole universe)."""
    t = state.tpo
    if a.universe != t.universe:
        raise UniverseMismatchError("sentence over a different universe")
    if a.is_empty:
        return False
    outside = [t.rank(w) for w in ~a]
    if not outside:
        return True
    return max(t.rank(w) for w in a) < min(outside)
