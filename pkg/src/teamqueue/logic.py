"""Finite propositional machinery: universes of worlds, bitmask
propositions, and the formula front-end.

A universe either derives its worlds from a list of atoms (one world per
valuation; bit k of the world index gives the truth of atom k, a layout
fixed so fixture files stay portable) or is declared directly as a list
of named worlds. Propositions are world sets stored as bitmasks. Every
sentence is identified with its model set internally; formulas exist
only at the text boundary (CLI arguments and profile files). Belief sets
are likewise carried around as model sets, which reverses inclusions:
the theory of M1 is included in the theory of M2 exactly when M2 is a
subset of M1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

DEFAULT_ATOM_CAP = 5

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED_WORDS = ("true", "false")

_ABSTRACT_NAMES = ("x", "y", "z", "w", "v")


class UniverseMismatchError(ValueError):
    """An operation mixed values from two different universes."""


class UnknownAtomError(ValueError):
    def __init__(self, atom: str):
        super().__init__(f"unknown atom {atom!r}")
        self.atom = atom


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class Universe:
    """The world set every other value is built over.

    Use :meth:`from_atoms` or :meth:`of_worlds`; the constructor itself
    performs no validation. Atom universes name each world by its
    minterm (e.g. ``p&~q``), abstract universes use the declared names.
    """

    __slots__ = ("atoms", "world_names", "_index")

    def __init__(self, atoms: Sequence[str], world_names: Sequence[str]):
        self.atoms = tuple(atoms)
        self.world_names = tuple(world_names)
        self._index = {name: i for i, name in enumerate(self.world_names)}

    @classmethod
    def from_atoms(cls, atoms: Sequence[str], atom_cap: int = DEFAULT_ATOM_CAP) -> "Universe":
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("at least one atom is required")
        if len(atoms) > atom_cap:
            raise ValueError(f"{len(atoms)} atoms exceed the cap of {atom_cap}")
        seen: set[str] = set()
        for a in atoms:
            if not _NAME_RE.match(a):
                raise ValueError(f"invalid atom name {a!r}")
            if a in RESERVED_WORDS:
                raise ValueError(f"{a!r} is reserved and cannot name an atom")
            if a in seen:
                raise ValueError(f"duplicate atom {a!r}")
            seen.add(a)
        names = [
            "&".join(a if (w >> k) & 1 else "~" + a for k, a in enumerate(atoms))
            for w in range(1 << len(atoms))
        ]
        return cls(atoms, names)

    @classmethod
    def of_worlds(cls, names: Sequence[str]) -> "Universe":
        names = tuple(names)
        if not names:
            raise ValueError("at least one world is required")
        seen: set[str] = set()
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid world name {n!r}")
            if n in seen:
                raise ValueError(f"duplicate world {n!r}")
            seen.add(n)
        return cls((), names)

    @property
    def size(self) -> int:
        return len(self.world_names)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.world_names)) - 1

    def __len__(self) -> int:
        return len(self.world_names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Universe)
            and self.atoms == other.atoms
            and self.world_names == other.world_names
        )

    def __hash__(self) -> int:
        return hash((self.atoms, self.world_names))

    def __repr__(self) -> str:
        if self.atoms:
            return f"Universe(atoms={list(self.atoms)})"
        return f"Universe(worlds={list(self.world_names)})"

    def world_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown world {name!r}") from None

    def world_name(self, index: int) -> str:
        return self.world_names[index]

    def atom_mask(self, atom: str) -> int:
        """Bitmask of the worlds making `atom` true."""
        try:
            k = self.atoms.index(atom)
        except ValueError:
            raise UnknownAtomError(atom) from None
        return sum(1 << w for w in range(self.size) if (w >> k) & 1)

    def prop(self, *names: str) -> "Proposition":
        mask = 0
        for n in names:
            mask |= 1 << self.world_index(n)
        return Proposition(self, mask)

    def prop_from_mask(self, mask: int) -> "Proposition":
        return Proposition(self, mask)

    def prop_from_worlds(self, worlds: Sequence[int]) -> "Proposition":
        mask = 0
        for w in worlds:
            mask |= 1 << w
        return Proposition(self, mask)

    @property
    def empty(self) -> "Proposition":
        return Proposition(self, 0)

    @property
    def full(self) -> "Proposition":
        return Proposition(self, self.full_mask)

    def propositions(self, include_empty: bool = True) -> Iterator["Proposition"]:
        """All 2^|W| propositions, by ascending mask."""
        start = 0 if include_empty else 1
        for mask in range(start, self.full_mask + 1):
            yield Proposition(self, mask)

    def models(self, text: str) -> "Proposition":
        """Parse `text` and evaluate it over this universe."""
        return models(parse_formula(text), self)


def abstract_universe(num_worlds: int) -> Universe:
    """Universe of abstractly named worlds x, y, z, w, v (up to five)."""
    if not 1 <= num_worlds <= len(_ABSTRACT_NAMES):
        raise ValueError(f"abstract universes support 1..{len(_ABSTRACT_NAMES)} worlds")
    return Universe.of_worlds(_ABSTRACT_NAMES[:num_worlds])


@dataclass(frozen=True, slots=True)
class Proposition:
    """A set of worlds, the semantic stand-in for a sentence."""

    universe: Universe
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.universe.full_mask:
            raise ValueError(f"mask {self.mask:#x} outside the universe")

    def check_universe(self, other: "Proposition") -> None:
        if self.universe != other.universe:
            raise UniverseMismatchError("propositions belong to different universes")

    # set algebra -----------------------------------------------------

    def __and__(self, other: "Proposition") -> "Proposition":
        self.check_universe(other)
        return Proposition(self.universe, self.mask & other.mask)

    def __or__(self, other: "Proposition") -> "Proposition":
        self.check_universe(other)
        return Proposition(self.universe, self.mask | other.mask)

    def __sub__(self, other: "Proposition") -> "Proposition":
        self.check_universe(other)
        return Proposition(self.universe, self.mask & ~other.mask)

    def __invert__(self) -> "Proposition":
        return Proposition(self.universe, self.universe.full_mask & ~self.mask)

    def issubset(self, other: "Proposition") -> bool:
        self.check_universe(other)
        return self.mask & ~other.mask == 0

    def __le__(self, other: "Proposition") -> bool:
        return self.issubset(other)

    def __contains__(self, world: int | str) -> bool:
        if isinstance(world, str):
            world = self.universe.world_index(world)
        return (self.mask >> world) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        w = 0
        while mask:
            if mask & 1:
                yield w
            mask >>= 1
            w += 1

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.universe.world_name(w) for w in self))

    def __str__(self) -> str:
        return "{" + ",".join(self.names()) + "}"


# formula front-end ----------------------------------------------------


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


TOP = Const(True)
BOTTOM = Const(False)

_TOKEN_RE = re.compile(r"(<->)|(->)|([~&|()])|([a-z][a-z0-9_]*)")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ord(ch) > 127:
            raise FormulaSyntaxError("non-ASCII character", pos)
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", pos)
        tokens.append((m.group(0), pos))
        pos = m.end()
    tokens.append(("", n))
    return tokens


def parse_formula(text: str) -> Formula:
    """Parse a formula.

    Grammar: atoms ``[a-z][a-z0-9_]*``; operators ``~ & | -> <->`` with
    that precedence (tightest first); ``->`` and ``<->`` associate to
    the right; constants ``true`` and ``false``; parentheses allowed;
    whitespace insignificant; ASCII only.
    """
    tokens = _tokenize(text)
    if tokens[0][0] == "":
        raise FormulaSyntaxError("empty formula", 0)
    idx = 0

    def peek() -> str:
        return tokens[idx][0]

    def pos() -> int:
        return tokens[idx][1]

    def advance() -> str:
        nonlocal idx
        tok = tokens[idx][0]
        idx += 1
        return tok

    def parse_iff() -> Formula:
        left = parse_imp()
        if peek() == "<->":
            advance()
            return Iff(left, parse_iff())
        return left

    def parse_imp() -> Formula:
        left = parse_or()
        if peek() == "->":
            advance()
            return Imp(left, parse_imp())
        return left

    def parse_or() -> Formula:
        node = parse_and()
        while peek() == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_unary()
        while peek() == "&":
            advance()
            node = And(node, parse_unary())
        return node

    def parse_unary() -> Formula:
        tok = peek()
        if tok == "~":
            advance()
            return Not(parse_unary())
        if tok == "(":
            open_pos = pos()
            advance()
            node = parse_iff()
            if peek() != ")":
                raise FormulaSyntaxError("unbalanced parenthesis, expected ')'", open_pos)
            advance()
            return node
        if tok == "true":
            advance()
            return TOP
        if tok == "false":
            advance()
            return BOTTOM
        if tok and _NAME_RE.match(tok):
            advance()
            return Atom(tok)
        if tok == "":
            raise FormulaSyntaxError("unexpected end of input", pos())
        raise FormulaSyntaxError(f"unexpected token {tok!r}", pos())

    node = parse_iff()
    if peek() != "":
        raise FormulaSyntaxError(f"unexpected token {peek()!r}", pos())
    return node


_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Imp: "->", Or: "|", And: "&"}


def format_formula(f: Formula) -> str:
    """Render with minimal parentheses; round-trips through the parser."""

    def fmt(node: Formula, ctx: int) -> str:
        if isinstance(node, Atom):
            return node.name
        if isinstance(node, Const):
            return "true" if node.value else "false"
        if isinstance(node, Not):
            return "~" + fmt(node.operand, 5)
        p = _PREC[type(node)]
        if type(node) in (Imp, Iff):
            text = f"{fmt(node.left, p + 1)} {_OPS[type(node)]} {fmt(node.right, p)}"
        else:
            text = f"{fmt(node.left, p)} {_OPS[type(node)]} {fmt(node.right, p + 1)}"
        return f"({text})" if p < ctx else text

    return fmt(f, 0)


def models(f: Formula, u: Universe) -> Proposition:
    """The worlds of `u` satisfying `f` under truth-table semantics."""
    full = u.full_mask

    def ev(node: Formula) -> int:
        if isinstance(node, Atom):
            return u.atom_mask(node.name)
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Not):
            return full & ~ev(node.operand)
        if isinstance(node, And):
            return ev(node.left) & ev(node.right)
        if isinstance(node, Or):
            return ev(node.left) | ev(node.right)
        if isinstance(node, Imp):
            return (full & ~ev(node.left)) | ev(node.right)
        if isinstance(node, Iff):
            return full & ~(ev(node.left) ^ ev(node.right))
        raise TypeError(f"not a formula node: {node!r}")

    return Proposition(u, ev(f))


# theories as model sets ------------------------------------------------
#
# A deductively closed set of sentences is carried around as its model
# set M. Inclusions reverse: theory(M1) <= theory(M2) iff M2 <= M1, and
# the closure of a union of theories has the intersection of their model
# sets. Cn({}) has the full universe as its model set.


def theory_contains(belief_models: Proposition, sentence: Proposition) -> bool:
    """Sentence membership: A is in the theory of M iff M <= [[A]]."""
    belief_models.check_universe(sentence)
    return belief_models.issubset(sentence)


def theory_subset(m1: Proposition, m2: Proposition) -> bool:
    """theory(M1) <= theory(M2) iff M2 <= M1 (the duality)."""
    m1.check_universe(m2)
    return m2.issubset(m1)


def theory_join_models(m1: Proposition, m2: Proposition) -> Proposition:
    """Model set of Cn(T1 u T2): the intersection M1 & M2."""
    return m1 & m2


def theory_meet_models(m1: Proposition, m2: Proposition) -> Proposition:
    """Model set of T1 n T2: the union M1 | M2."""
    return m1 | m2


def cn_empty_models(u: Universe) -> Proposition:
    """Model set of the tautologies: the whole universe."""
    return u.full


def dnf(p: Proposition) -> str:
    """Full disjunctive normal form over the universe's atoms.

    One minterm per member world, joined by `` | ``; the empty
    proposition renders as ``false``. Only defined for atom universes.
    """
    if not p.universe.atoms:
        raise ValueError("DNF requires an atom universe")
    if p.is_empty:
        return "false"
    return " | ".join(p.universe.world_name(w) for w in p)
