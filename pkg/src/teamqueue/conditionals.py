"""Conditional belief over total preorders, and a brute-force rational
closure oracle.

A conditional A > B holds at a preorder when the most plausible
A-worlds all satisfy B. The conditionals jointly held by every entry of
a profile are represented intensionally, by the map taking each world
set S to the union of the entries' minimal sets over S: a preorder's
conditional set contains the intersection exactly when each of its
minimal sets sits inside the corresponding union. The oracle returns
the flattest such preorder by plain enumerate-filter-maximise, on
purpose sharing no code with the queue aggregators it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic import Proposition, UniverseMismatchError
from .orders import TPO, Profile, enumerate_tpos, flatter_or_equal


@dataclass(frozen=True, slots=True)
class Conditional:
    """A > B as a pair of propositions over one universe."""

    antecedent: Proposition
    consequent: Proposition

    def __post_init__(self):
        if self.antecedent.universe != self.consequent.universe:
            raise UniverseMismatchError("conditional parts over different universes")

    def __str__(self) -> str:
        return f"{self.antecedent} > {self.consequent}"


def conditional_holds(t: TPO, c: Conditional) -> bool:
    """min(t, antecedent) within the consequent; vacuously true when the
    antecedent is empty."""
    if t.universe != c.antecedent.universe:
        raise UniverseMismatchError("conditional over a different universe")
    return t.min_mask(c.antecedent.mask) & ~c.consequent.mask == 0


def intersection_holds(profile: Profile, c: Conditional) -> bool:
    """The conditional holds at every entry; equivalently the union of
    the entries' minima over the antecedent sits inside the consequent."""
    if profile.universe != c.antecedent.universe:
        raise UniverseMismatchError("conditional over a different universe")
    union = 0
    for t in profile:
        union |= t.min_mask(c.antecedent.mask)
    return union & ~c.consequent.mask == 0


def _contains_intersection(t: TPO, profile: Profile) -> bool:
    """Every minimal set of t over any nonempty S sits inside the union
    of the profile's minimal sets over S."""
    full = t.universe.full_mask
    for s in range(1, full + 1):
        union = 0
        for entry in profile:
            union |= entry.min_mask(s)
        if t.min_mask(s) & ~union:
            return False
    return True


def rational_closure_tpo(profile: Profile, max_worlds: int = 5) -> TPO:
    """The flattest preorder whose conditional set contains the
    intersection of the entries' conditional sets.

    Brute force: enumerate every TPO over the universe, keep those whose
    minimal set over each nonempty S is covered by the union of the
    entries' minimal sets over S, and return the unique flattest one.
    Each profile entry qualifies, so candidates always exist; flatness
    having several maximal candidates would be a bug and raises.
    """
    candidates = [
        t for t in enumerate_tpos(profile.universe, max_worlds=max_worlds)
        if _contains_intersection(t, profile)
    ]
    assert candidates, "every profile entry satisfies the filter"
    maximal = [
        t for t in candidates
        if all(flatter_or_equal(t, other) for other in candidates)
    ]
    if len(maximal) != 1:
        raise RuntimeError(
            f"expected a unique flattest candidate, found {len(maximal)}"
        )
    return maximal[0]
