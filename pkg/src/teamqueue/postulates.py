"""Executable postulate suites and exhaustive countermodel search.

Every belief-set postulate is evaluated under the model-set translation
(a sentence is in a belief set iff the belief worlds sit inside its
model set, so belief-set inclusions reverse into model-set inclusions).
Quantifiers over sentences range over all propositions of the finite
universe (revision inputs over the nonempty ones). Enumeration orders
are fixed so witnesses are reproducible: states by (block count, block
masks), sentences by ascending mask, world-set quantifiers by
descending mask (whole universe first), input sets by (size, member
masks), and sampled runs draw from a seeded generator recorded in the
report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .aggregation import RawRelation, tq_membership
from .changeops import (
    BeliefState,
    ContractionInput,
    is_strongly_believed,
    parallel_contract,
    serial_contract,
)
from .conditionals import rational_closure_tpo
from .logic import Proposition, Universe, abstract_universe
from .orders import TPO, Profile, enumerate_tpos

SUITES = ("agm", "cc", "ccn", "kp", "fh", "char", "kp6alt")

SEARCH_PROPERTIES = ("naive-ci-is-tpo", "fh-a", "fh-b", "kp7", "kp8")

_DEFAULT_SEED = 7349


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one postulate or one whole suite.

    A failing report always carries a witness whose entries are public
    objects (states, propositions, world names) that reproduce the
    failure when re-run through the public operations.
    """

    name: str
    passed: bool
    cases: int
    witness: dict | None = None
    enumeration: str = ""
    details: tuple["CheckReport", ...] = ()

    def format_lines(self) -> list[str]:
        lines = []
        for sub in self.details or (self,):
            if sub.passed:
                lines.append(f"PASS {sub.name} cases={sub.cases}")
            else:
                lines.append(
                    f"FAIL {sub.name} cases={sub.cases} witness: "
                    + format_witness(sub.witness)
                )
        if self.details:
            lines.append(f"{'PASS' if self.passed else 'FAIL'} {self.name}")
        return lines


def format_witness(w: dict | None) -> str:
    if not w:
        return "(none)"
    return "; ".join(f"{k}={v}" for k, v in w.items())


def _aggregate_report(name: str, subs: Sequence[CheckReport], enumeration: str = "") -> CheckReport:
    failing = [s for s in subs if not s.passed]
    return CheckReport(
        name=name,
        passed=not failing,
        cases=sum(s.cases for s in subs),
        witness=failing[0].witness if failing else None,
        enumeration=enumeration,
        details=tuple(subs),
    )


def _require_tpo(out: object) -> TPO:
    if isinstance(out, RawRelation):
        raise TypeError("candidate must be a TPO, not a raw relation")
    if not isinstance(out, TPO):
        raise TypeError(f"candidate must be a TPO, got {type(out).__name__}")
    return out


def _subsets_desc(full: int) -> range:
    """World-set quantifier order: the whole universe first."""
    return range(full, 0, -1)


# aggregator checks -----------------------------------------------------


def factoring_holds(profile: Profile, out: TPO) -> bool:
    """Fast minimal-set factoring test: for every nonempty S the output
    minimum equals the union of the input minima it covers."""
    full = profile.universe.full_mask
    entries = profile.entries
    for s in _subsets_desc(full):
        mo = out.min_mask(s)
        union = 0
        for t in entries:
            mj = t.min_mask(s)
            if mj & ~mo == 0:
                union |= mj
        if union != mo:
            return False
    return True


def _factoring_min_witness(profile: Profile, out: TPO) -> tuple[int, dict | None]:
    u = profile.universe
    cases = 0
    for s in _subsets_desc(u.full_mask):
        cases += 1
        mo = out.min_mask(s)
        union = 0
        for t in profile.entries:
            mj = t.min_mask(s)
            if mj & ~mo == 0:
                union |= mj
        if union != mo:
            return cases, {
                "S": Proposition(u, s),
                "min_out": Proposition(u, mo),
                "coverable": Proposition(u, union),
            }
    return cases, None


def _factoring_rel_witness(profile: Profile, out: TPO) -> tuple[int, dict | None]:
    u = profile.universe
    n = len(profile)
    worlds = range(u.size)
    cases = 0
    for xs in product(worlds, repeat=n):
        for y in worlds:
            if any(not profile.entry(j + 1).holds(xs[j], y) for j in range(n)):
                continue
            cases += 1
            ok = False
            for j in range(n):
                xj = xs[j]
                if out.holds(xj, y) and (
                    not profile.entry(j + 1).strictly(xj, y) or out.strictly(xj, y)
                ):
                    ok = True
                    break
            if not ok:
                return cases, {
                    "xs": tuple(u.world_name(x) for x in xs),
                    "y": u.world_name(y),
                }
    return cases, None


def check_factoring(profile: Profile, out: TPO) -> CheckReport:
    """Factoring, in both formulations.

    Minimal-set form: for all S there is an index set X with
    min_out(S) = union over j in X of min_j(S). Relational form: when
    every input places some x_i at or below y, some input's verdict on
    (x_i, y) survives into the output. The two verdicts provably agree;
    disagreement raises.
    """
    out = _require_tpo(out)
    cases_min, w_min = _factoring_min_witness(profile, out)
    cases_rel, w_rel = _factoring_rel_witness(profile, out)
    if (w_min is None) != (w_rel is None):
        raise RuntimeError(
            "factoring formulations disagree: "
            f"min={w_min!r} rel={w_rel!r} (profile={profile!r}, out={out})"
        )
    subs = (
        CheckReport("factoring (minimal sets)", w_min is None, cases_min, w_min,
                    "S by descending mask"),
        CheckReport("factoring (relational)", w_rel is None, cases_rel, w_rel,
                    "tuples by world index"),
    )
    return _aggregate_report("factoring", subs)


def _parity_rel_witness(out: TPO, profile: Profile) -> tuple[int, dict | None]:
    u = out.universe
    cases = 0
    for x in range(u.size):
        for y in range(u.size):
            if not out.strictly(x, y):
                continue
            cases += 1
            for j in profile.indices:
                t = profile.entry(j)
                if not any(
                    out.rank(z) == out.rank(x) and t.strictly(z, y)
                    for z in range(u.size)
                ):
                    return cases, {
                        "below": u.world_name(x),
                        "above": u.world_name(y),
                        "input": j,
                    }
    return cases, None


def _parity_min_witness(out: TPO, profile: Profile) -> tuple[int, dict | None]:
    u = out.universe
    cases = 0
    for s in _subsets_desc(u.full_mask):
        comp = u.full_mask & ~s
        # hypothesis: everything outside S strictly below everything in S
        if any(
            not out.strictly(x, y)
            for x in Proposition(u, comp)
            for y in Proposition(u, s)
        ):
            continue
        cases += 1
        union = 0
        for t in profile:
            union |= t.min_mask(s)
        if union & ~out.min_mask(s):
            return cases, {
                "S": Proposition(u, s),
                "input_minima": Proposition(u, union),
                "min_out": Proposition(u, out.min_mask(s)),
            }
    return cases, None


def check_parity(profile: Profile, out: TPO) -> CheckReport:
    """Parity, in both formulations.

    Relational form: any strict output preference x < y is backed, in
    every input, by a witness z tied with x in the output and strictly
    below y in that input. Minimal-set form: whenever everything
    outside S sits strictly below S in the output, the union of input
    minima over S is contained in the output minimum over S.
    """
    out = _require_tpo(out)
    cases_rel, w_rel = _parity_rel_witness(out, profile)
    cases_min, w_min = _parity_min_witness(out, profile)
    if (w_min is None) != (w_rel is None):
        raise RuntimeError(
            "parity formulations disagree: "
            f"rel={w_rel!r} min={w_min!r} (profile={profile!r}, out={out})"
        )
    subs = (
        CheckReport("parity (relational)", w_rel is None, cases_rel, w_rel,
                    "strict pairs by world index, inputs ascending"),
        CheckReport("parity (minimal sets)", w_min is None, cases_min, w_min,
                    "S by descending mask"),
    )
    return _aggregate_report("parity", subs)


def check_pareto(profile: Profile, out: TPO) -> CheckReport:
    """The Pareto-style family, each in two formulations.

    Existential unanimity: if every input puts some x_i (strictly)
    below y, the output does so for at least one of them; equivalently
    output minima are bounded above by the union of input minima
    (strict case) and below by some input's minima (weak case). Plain
    unanimity on fixed pairs corresponds to the relation bounds
    intersection(inputs) <= output <= union(inputs). Paired verdicts
    provably agree; disagreement raises.
    """
    out = _require_tpo(out)
    u = out.universe
    n = len(profile)
    worlds = range(u.size)

    def exist_unanimity(strict: bool) -> tuple[int, dict | None]:
        cases = 0
        for xs in product(worlds, repeat=n):
            for y in worlds:
                hyp = all(
                    (profile.entry(j + 1).strictly(xs[j], y) if strict
                     else profile.entry(j + 1).holds(xs[j], y))
                    for j in range(n)
                )
                if not hyp:
                    continue
                cases += 1
                got = any(
                    (out.strictly(xs[j], y) if strict else out.holds(xs[j], y))
                    for j in range(n)
                )
                if not got:
                    return cases, {
                        "xs": tuple(u.world_name(x) for x in xs),
                        "y": u.world_name(y),
                    }
        return cases, None

    def upper_bound_min() -> tuple[int, dict | None]:
        cases = 0
        for s in _subsets_desc(u.full_mask):
            cases += 1
            union = 0
            for t in profile:
                union |= t.min_mask(s)
            if out.min_mask(s) & ~union:
                return cases, {"S": Proposition(u, s)}
        return cases, None

    def lower_bound_min() -> tuple[int, dict | None]:
        cases = 0
        for s in _subsets_desc(u.full_mask):
            cases += 1
            mo = out.min_mask(s)
            if not any(t.min_mask(s) & ~mo == 0 for t in profile):
                return cases, {"S": Proposition(u, s)}
        return cases, None

    def plain_unanimity(strict: bool) -> tuple[int, dict | None]:
        cases = 0
        for x in worlds:
            for y in worlds:
                hyp = all(
                    (t.strictly(x, y) if strict else t.holds(x, y))
                    for t in profile
                )
                if not hyp:
                    continue
                cases += 1
                got = out.strictly(x, y) if strict else out.holds(x, y)
                if not got:
                    return cases, {"x": u.world_name(x), "y": u.world_name(y)}
        return cases, None

    def bound(kind: str) -> tuple[int, dict | None]:
        cases = 0
        for x in worlds:
            for y in worlds:
                cases += 1
                if kind == "lower":
                    # intersection of the inputs within the output
                    if all(t.holds(x, y) for t in profile) and not out.holds(x, y):
                        return cases, {"x": u.world_name(x), "y": u.world_name(y)}
                else:
                    # output within the union of the inputs
                    if out.holds(x, y) and not any(t.holds(x, y) for t in profile):
                        return cases, {"x": u.world_name(x), "y": u.world_name(y)}
        return cases, None

    c1, w_spu_plus = exist_unanimity(strict=True)
    c2, w_wpu_plus = exist_unanimity(strict=False)
    c3, w_ub = upper_bound_min()
    c4, w_lb = lower_bound_min()
    c5, w_spu = plain_unanimity(strict=True)
    c6, w_wpu = plain_unanimity(strict=False)
    c7, w_bl = bound("lower")
    c8, w_bu = bound("upper")

    pairs = [
        ("strict existential unanimity vs upper bound", w_spu_plus, w_ub),
        ("weak existential unanimity vs lower bound", w_wpu_plus, w_lb),
        ("strict unanimity vs union bound", w_spu, w_bu),
        ("weak unanimity vs intersection bound", w_wpu, w_bl),
    ]
    for label, wa, wb in pairs:
        if (wa is None) != (wb is None):
            raise RuntimeError(
                f"pareto formulations disagree ({label}): {wa!r} vs {wb!r} "
                f"(profile={profile!r}, out={out})"
            )

    subs = (
        CheckReport("strict existential unanimity", w_spu_plus is None, c1, w_spu_plus),
        CheckReport("weak existential unanimity", w_wpu_plus is None, c2, w_wpu_plus),
        CheckReport("upper bound (minimal sets)", w_ub is None, c3, w_ub),
        CheckReport("lower bound (minimal sets)", w_lb is None, c4, w_lb),
        CheckReport("strict unanimity", w_spu is None, c5, w_spu),
        CheckReport("weak unanimity", w_wpu is None, c6, w_wpu),
        CheckReport("relation lower bound (intersection)", w_bl is None, c7, w_bl),
        CheckReport("relation upper bound (union)", w_bu is None, c8, w_bu),
    )
    return _aggregate_report("pareto", subs)


# contraction suites ----------------------------------------------------


class _SuiteContext:
    """Shared enumeration state for one suite run: the universe, its
    states and sentence masks, memoized contractions, and the sampling
    policy."""

    def __init__(
        self,
        universe: Universe,
        kind: str,
        agg: str,
        require_first_all: bool,
        sample: int | None,
        seed: int,
    ):
        self.u = universe
        self.kind = kind
        self.agg = agg
        self.rfa = require_first_all
        self.sample = sample
        self.seed = seed
        self.states: list[TPO] = list(
            enumerate_tpos(universe, max_worlds=max(universe.size, 5))
        )
        self.props: list[int] = list(range(universe.full_mask + 1))
        sets1 = [(m,) for m in self.props]
        sets2 = [
            (m1, m2)
            for i, m1 in enumerate(self.props)
            for m2 in self.props[i + 1:]
        ]
        self.input_sets: list[tuple[int, ...]] = sets1 + sets2
        self._serial: dict[tuple[TPO, int], TPO] = {}
        self._parallel: dict[tuple[TPO, tuple[int, ...]], TPO] = {}

    def enumeration_note(self) -> str:
        base = (
            "states by (blocks, masks); sentences by ascending mask; "
            "input sets by (size, masks); world-set quantifiers by descending mask"
        )
        if self.sample is not None:
            base += f"; sampled {self.sample} cases, seed {self.seed}"
        return base

    def cases(self, *dims: Sequence) -> Iterator[tuple]:
        """Exhaustive product of the dimensions, or a seeded sample."""
        if self.sample is None:
            yield from product(*dims)
        else:
            rng = random.Random(self.seed)
            for _ in range(self.sample):
                yield tuple(d[rng.randrange(len(d))] for d in dims)

    def serial(self, t: TPO, amask: int) -> TPO:
        key = (t, amask)
        got = self._serial.get(key)
        if got is None:
            got = serial_contract(
                BeliefState(t), Proposition(self.u, amask), self.kind
            ).tpo
            self._serial[key] = got
        return got

    def parallel(self, t: TPO, masks: tuple[int, ...]) -> TPO:
        key = (t, masks)
        got = self._parallel.get(key)
        if got is None:
            inp = ContractionInput.of([Proposition(self.u, m) for m in masks])
            got = parallel_contract(
                BeliefState(t), inp, self.kind, self.agg, self.rfa
            ).tpo
            self._parallel[key] = got
        return got

    def set_prop(self, masks: tuple[int, ...]) -> str:
        return "{" + "; ".join(str(Proposition(self.u, m)) for m in masks) + "}"


def _scan(
    name: str,
    ctx: _SuiteContext,
    dims: Sequence[Sequence],
    predicate: Callable[..., dict | None],
) -> CheckReport:
    """Run ``predicate`` over the case space; it returns None on pass
    and a witness dict on failure (vacuous cases return None)."""
    cases = 0
    for case in ctx.cases(*dims):
        cases += 1
        w = predicate(*case)
        if w is not None:
            return CheckReport(name, False, cases, w, ctx.enumeration_note())
    return CheckReport(name, True, cases, None, ctx.enumeration_note())


def _trivial(name: str, note: str) -> CheckReport:
    return CheckReport(name, True, 1, None, note)


def _suite_agm(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u
    full = u.full_mask

    def witness(t: TPO, amask: int, bmask: int | None = None) -> dict:
        w = {"state": t, "A": Proposition(u, amask)}
        if bmask is not None:
            w["B"] = Proposition(u, bmask)
        return w

    def k2(t: TPO, a: int) -> dict | None:
        if t.block_masks[0] & ~ctx.serial(t, a).block_masks[0]:
            return witness(t, a)
        return None

    def k3(t: TPO, a: int) -> dict | None:
        believed = t.block_masks[0] & ~a == 0
        if not believed and ctx.serial(t, a).block_masks[0] != t.block_masks[0]:
            return witness(t, a)
        return None

    def k4(t: TPO, a: int) -> dict | None:
        if a != full and ctx.serial(t, a).block_masks[0] & ~a == 0:
            return witness(t, a)
        return None

    def k5(t: TPO, a: int) -> dict | None:
        believed = t.block_masks[0] & ~a == 0
        if believed and (ctx.serial(t, a).block_masks[0] & a) & ~t.block_masks[0]:
            return witness(t, a)
        return None

    def k7(t: TPO, a: int, b: int) -> dict | None:
        m_ab = ctx.serial(t, a & b).block_masks[0]
        if m_ab & ~(ctx.serial(t, a).block_masks[0] | ctx.serial(t, b).block_masks[0]):
            return witness(t, a, b)
        return None

    def k8(t: TPO, a: int, b: int) -> dict | None:
        m_ab = ctx.serial(t, a & b).block_masks[0]
        if m_ab & ~a and ctx.serial(t, a).block_masks[0] & ~m_ab:
            return witness(t, a, b)
        return None

    return [
        _trivial("K-1 (closure)", "model sets are deductively closed by construction"),
        _scan("K-2 (inclusion): bel(s-A) within bel(s) | models: M <= M_A",
              ctx, (ctx.states, ctx.props), k2),
        _scan("K-3 (vacuity): A not believed -> bel unchanged",
              ctx, (ctx.states, ctx.props), k3),
        _scan("K-4 (success): A not tautologous -> A not in bel(s-A)",
              ctx, (ctx.states, ctx.props), k4),
        _scan("K-5 (recovery): A believed -> bel(s) within Cn(bel(s-A)+{A}) "
              "| models: M_A & [[A]] <= M",
              ctx, (ctx.states, ctx.props), k5),
        _trivial("K-6 (extensionality)",
                 "sentences are identified with their model sets"),
        _scan("K-7: bel(s-A) n bel(s-B) within bel(s-(A&B)) "
              "| models: M_AB <= M_A v M_B",
              ctx, (ctx.states, ctx.props, ctx.props), k7),
        _scan("K-8: A not in bel(s-(A&B)) -> bel(s-(A&B)) within bel(s-A) "
              "| models: M_A <= M_AB",
              ctx, (ctx.states, ctx.props, ctx.props), k8),
    ]


def _suite_cc(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u
    full = u.full_mask
    pairs = [(x, y) for x in range(u.size) for y in range(u.size)]
    nonempty = [m for m in ctx.props if m]

    def wit(t: TPO, a: int, **extra) -> dict:
        w = {"state": t, "A": Proposition(u, a)}
        w.update(extra)
        return w

    def sem(which: int):
        def pred(t: TPO, a: int, pair: tuple[int, int]) -> dict | None:
            x, y = pair
            neg = full & ~a
            tc = ctx.serial(t, a)
            names = {"x": u.world_name(x), "y": u.world_name(y)}
            if which == 1 and (neg >> x) & 1 and (neg >> y) & 1:
                if tc.holds(x, y) != t.holds(x, y):
                    return wit(t, a, **names)
            if which == 2 and (a >> x) & 1 and (a >> y) & 1:
                if tc.holds(x, y) != t.holds(x, y):
                    return wit(t, a, **names)
            if which == 3 and (neg >> x) & 1 and (a >> y) & 1:
                if t.strictly(x, y) and not tc.strictly(x, y):
                    return wit(t, a, **names)
            if which == 4 and (neg >> x) & 1 and (a >> y) & 1:
                if t.holds(x, y) and not tc.holds(x, y):
                    return wit(t, a, **names)
            return None

        return pred

    def syn(which: int):
        def pred(t: TPO, a: int, b: int) -> dict | None:
            neg = full & ~a
            tc = ctx.serial(t, a)
            extra = {"B": Proposition(u, b)}
            if which == 1 and b & ~neg == 0:
                if tc.min_mask(b) != t.min_mask(b):
                    return wit(t, a, **extra)
            if which == 2 and b & ~a == 0:
                if tc.min_mask(b) != t.min_mask(b):
                    return wit(t, a, **extra)
            if which == 3 and t.min_mask(b) & ~neg == 0:
                if tc.min_mask(b) & ~neg:
                    return wit(t, a, **extra)
            if which == 4 and t.min_mask(b) & ~a:
                if tc.min_mask(b) & ~a == 0:
                    return wit(t, a, **extra)
            return None

        return pred

    reports = []
    texts_sem = {
        1: "CC-1 (tpo form): counter-worlds keep their relative order",
        2: "CC-2 (tpo form): input-worlds keep their relative order",
        3: "CC-3 (tpo form): strict counter-over-input preferences survive",
        4: "CC-4 (tpo form): weak counter-over-input preferences survive",
    }
    texts_syn = {
        1: "CC-1 (revision form): not-A entailed by B -> revision by B unchanged",
        2: "CC-2 (revision form): A entailed by B -> revision by B unchanged",
        3: "CC-3 (revision form): not-A kept after revision by B",
        4: "CC-4 (revision form): A still absent after revision by B",
    }
    for i in (1, 2, 3, 4):
        reports.append(_scan(texts_sem[i], ctx, (ctx.states, ctx.props, pairs), sem(i)))
    for i in (1, 2, 3, 4):
        reports.append(_scan(texts_syn[i], ctx, (ctx.states, ctx.props, nonempty), syn(i)))
    return reports


def _suite_kp(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u
    full = u.full_mask

    def wit(t: TPO, s: tuple[int, ...], **extra) -> dict:
        w = {"state": t, "S": ctx.set_prop(s)}
        w.update(extra)
        return w

    def kp2(t: TPO, s: tuple[int, ...]) -> dict | None:
        if t.block_masks[0] & ~ctx.parallel(t, s).block_masks[0]:
            return wit(t, s)
        return None

    def kp3(t: TPO, s: tuple[int, ...]) -> dict | None:
        bel0 = t.block_masks[0]
        if all(bel0 & ~a for a in s):
            if ctx.parallel(t, s).block_masks[0] != bel0:
                return wit(t, s)
        return None

    def kp4(t: TPO, s: tuple[int, ...]) -> dict | None:
        bels = ctx.parallel(t, s).block_masks[0]
        for a in s:
            if a != full and bels & ~a == 0:
                return wit(t, s, A=Proposition(u, a))
        return None

    def kp5(t: TPO, s: tuple[int, ...]) -> dict | None:
        bel0 = t.block_masks[0]
        if all(bel0 & ~a == 0 for a in s):
            conj = full
            for a in s:
                conj &= a
            if (ctx.parallel(t, s).block_masks[0] & conj) & ~bel0:
                return wit(t, s)
        return None

    def kp7(t: TPO, s1: tuple[int, ...], s2: tuple[int, ...]) -> dict | None:
        union = tuple(sorted(set(s1) | set(s2)))
        conj = full
        for a in union:
            conj &= a
        m_conj = ctx.parallel(t, (conj,)).block_masks[0]
        m1 = ctx.parallel(t, s1).block_masks[0]
        m2 = ctx.parallel(t, s2).block_masks[0]
        if m_conj & ~(m1 | m2):
            return wit(t, s1, S2=ctx.set_prop(s2))
        return None

    def kp8(t: TPO, s1: tuple[int, ...], s2: tuple[int, ...]) -> dict | None:
        union = tuple(sorted(set(s1) | set(s2)))
        conj = full
        for a in union:
            conj &= a
        m_conj = ctx.parallel(t, (conj,)).block_masks[0]
        if all(m_conj & ~a for a in s1):
            if ctx.parallel(t, s1).block_masks[0] & ~m_conj:
                return wit(t, s1, S2=ctx.set_prop(s2))
        return None

    return [
        _trivial("KP-1 (closure)", "model sets are deductively closed by construction"),
        _scan("KP-2 (inclusion): bel(s/S) within bel(s)",
              ctx, (ctx.states, ctx.input_sets), kp2),
        _scan("KP-3 (vacuity): no member believed -> bel unchanged",
              ctx, (ctx.states, ctx.input_sets), kp3),
        _scan("KP-4 (success): no non-tautologous member survives",
              ctx, (ctx.states, ctx.input_sets), kp4),
        _scan("KP-5 (recovery): members believed -> bel(s) within Cn(bel(s/S)+S)",
              ctx, (ctx.states, ctx.input_sets), kp5),
        _trivial("KP-6 (extensionality)",
                 "sets of sentences are identified with sets of model sets"),
        _scan("KP-7: bel(s/S1) n bel(s/S2) within bel(s/{conj(S1+S2)})",
              ctx, (ctx.states, ctx.input_sets, ctx.input_sets), kp7),
        _scan("KP-8: S1 disjoint from bel(s/{conj(S1+S2)}) -> that bel within bel(s/S1)",
              ctx, (ctx.states, ctx.input_sets, ctx.input_sets), kp8),
    ]


def _suite_fh(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u

    def fh_a(t: TPO, s1: tuple[int, ...], s2: tuple[int, ...]) -> dict | None:
        shared = tuple(sorted(set(s1) & set(s2)))
        if not shared:
            return None
        m_shared = ctx.parallel(t, shared).block_masks[0]
        m1 = ctx.parallel(t, s1).block_masks[0]
        m2 = ctx.parallel(t, s2).block_masks[0]
        if m_shared & ~(m1 | m2):
            return {"state": t, "S1": ctx.set_prop(s1), "S2": ctx.set_prop(s2)}
        return None

    def fh_b(t: TPO, s1: tuple[int, ...], s2: tuple[int, ...]) -> dict | None:
        m2 = ctx.parallel(t, s2).block_masks[0]
        if not all(m2 & ~a for a in s1):
            return None
        union = tuple(sorted(set(s1) | set(s2)))
        if ctx.parallel(t, union).block_masks[0] & ~m2:
            return {
                "state": t,
                "S1": ctx.set_prop(s1),
                "S2": ctx.set_prop(s2),
                "bel_S2": Proposition(u, m2),
                "bel_union": Proposition(u, ctx.parallel(t, union).block_masks[0]),
            }
        return None

    def mono(t: TPO, s1: tuple[int, ...], s2: tuple[int, ...]) -> dict | None:
        if not set(s1) <= set(s2):
            return None
        m1 = ctx.parallel(t, s1).block_masks[0]
        m2 = ctx.parallel(t, s2).block_masks[0]
        if m1 & ~m2:
            return {"state": t, "S1": ctx.set_prop(s1), "S2": ctx.set_prop(s2)}
        return None

    dims = (ctx.states, ctx.input_sets, ctx.input_sets)
    return [
        _scan("FH-a: S1 meets S2 -> bel(s/S1) n bel(s/S2) within bel(s/(S1 n S2))",
              ctx, dims, fh_a),
        _scan("FH-b: S1 disjoint from bel(s/S2) -> bel(s/S2) within bel(s/(S1 u S2))",
              ctx, dims, fh_b),
        _scan("FH-monotonicity: S1 within S2 -> bel(s/S2) within bel(s/S1)",
              ctx, dims, mono),
    ]


def _suite_ccn(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u
    full = u.full_mask
    pairs = [(x, y) for x in range(u.size) for y in range(u.size)]

    def pred_for(which: int):
        def pred(t: TPO, s: tuple[int, ...], pair: tuple[int, int]) -> dict | None:
            x, y = pair
            allneg = full
            allpos = full
            for a in s:
                allneg &= full & ~a
                allpos &= a
            ts = ctx.parallel(t, s)
            w = {
                "state": t,
                "S": ctx.set_prop(s),
                "x": u.world_name(x),
                "y": u.world_name(y),
            }
            if which == 1 and (allneg >> x) & 1 and (allneg >> y) & 1:
                if ts.holds(x, y) != t.holds(x, y):
                    return w
            if which == 2 and (allpos >> x) & 1 and (allpos >> y) & 1:
                if ts.holds(x, y) != t.holds(x, y):
                    return w
            if which == 3 and (allneg >> x) & 1 and not (allneg >> y) & 1:
                if t.strictly(x, y) and not ts.strictly(x, y):
                    return w
            if which == 4 and (allneg >> x) & 1 and not (allneg >> y) & 1:
                if t.holds(x, y) and not ts.holds(x, y):
                    return w
            return None

        return pred

    texts = {
        1: "CCn-1: worlds refuting every member keep their relative order",
        2: "CCn-2: worlds satisfying every member keep their relative order",
        3: "CCn-3: strict all-refuting-over-other preferences survive",
        4: "CCn-4: weak all-refuting-over-other preferences survive",
    }
    return [
        _scan(texts[i], ctx, (ctx.states, ctx.input_sets, pairs), pred_for(i))
        for i in (1, 2, 3, 4)
    ]


def _suite_char(ctx: _SuiteContext) -> list[CheckReport]:
    u = ctx.u
    full = u.full_mask
    nonempty = [m for m in range(full, 0, -1)]

    def profile_of(t: TPO, s: tuple[int, ...]) -> Profile:
        return Profile([ctx.serial(t, a) for a in s])

    def f_b(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        ts = ctx.parallel(t, s)
        for b in nonempty:
            mo = ts.min_mask(b)
            union = 0
            for entry in prof:
                mj = entry.min_mask(b)
                if mj & ~mo == 0:
                    union |= mj
            if union != mo:
                return {"state": t, "S": ctx.set_prop(s), "B": Proposition(u, b)}
        return None

    def ub_b(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        ts = ctx.parallel(t, s)
        for b in nonempty:
            union = 0
            for entry in prof:
                union |= entry.min_mask(b)
            if ts.min_mask(b) & ~union:
                return {"state": t, "S": ctx.set_prop(s), "B": Proposition(u, b)}
        return None

    def lb_b(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        ts = ctx.parallel(t, s)
        for b in nonempty:
            mo = ts.min_mask(b)
            if not any(entry.min_mask(b) & ~mo == 0 for entry in prof):
                return {"state": t, "S": ctx.set_prop(s), "B": Proposition(u, b)}
        return None

    def par_b(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        ts = ctx.parallel(t, s)
        state = BeliefState(ts)
        for b in nonempty:
            notb = Proposition(u, full & ~b)
            if not is_strongly_believed(state, notb):
                continue
            union = 0
            for entry in prof:
                union |= entry.min_mask(b)
            if union & ~ts.min_mask(b):
                return {"state": t, "S": ctx.set_prop(s), "B": Proposition(u, b)}
        return None

    def int_b(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        union = 0
        for entry in prof:
            union |= entry.block_masks[0]
        if ctx.parallel(t, s).block_masks[0] != union:
            return {"state": t, "S": ctx.set_prop(s)}
        return None

    def ratcon(t: TPO, s: tuple[int, ...]) -> dict | None:
        prof = profile_of(t, s)
        oracle = rational_closure_tpo(prof, max_worlds=max(u.size, 5))
        ts = ctx.parallel(t, s)
        if oracle != ts:
            return {"state": t, "S": ctx.set_prop(s), "oracle": oracle, "output": ts}
        return None

    dims = (ctx.states, ctx.input_sets)
    return [
        _scan("F-b: revised parallel beliefs factor through the serial ones",
              ctx, dims, f_b),
        _scan("UB-b: revised parallel beliefs contain the intersection of "
              "the revised serial ones", ctx, dims, ub_b),
        _scan("LB-b: revised parallel beliefs within the union of the "
              "revised serial ones", ctx, dims, lb_b),
        _scan("PAR-b: not-B strongly believed -> revised parallel beliefs "
              "within every revised serial one", ctx, dims, par_b),
        _scan("Int-b: parallel beliefs = intersection of serial beliefs",
              ctx, dims, int_b),
        _scan("RatCon: parallel preorder = flattest-extension oracle",
              ctx, dims, ratcon),
    ]


def _suite_kp6alt(ctx: _SuiteContext) -> list[CheckReport]:
    """The fixed demonstration that replacing pointwise extensionality
    with whole-set Cn-equivalence contradicts vacuity plus success:
    removing {p&q} alone leaves the beliefs alone, removing {p&q, p}
    does not, yet both sets have the same consequences."""
    from .logic import Universe

    u = Universe.from_atoms(["p", "q"])
    p = u.models("p")
    pq = u.models("p & q")
    t = TPO(u, [p, ~p])
    state = BeliefState(t)
    out1 = parallel_contract(state, ContractionInput.of([pq]), ctx.kind, ctx.agg, ctx.rfa)
    out2 = parallel_contract(state, ContractionInput.of([pq, p]), ctx.kind, ctx.agg, ctx.rfa)

    same_cn = (pq.mask & p.mask) == pq.mask
    subs = [
        CheckReport("inputs have equal consequences: Cn({p&q}) = Cn({p&q, p})",
                    same_cn, 1,
                    None if same_cn else {"conj1": pq, "conj2": pq & p}),
        CheckReport("p&q not believed and bel(s/{p&q}) = bel(s)",
                    not state.believes(pq)
                    and out1.belief_worlds == state.belief_worlds, 1,
                    None if out1.belief_worlds == state.belief_worlds
                    else {"got": out1.belief_worlds}),
        CheckReport("p dropped: bel(s/{p&q, p}) differs from bel(s)",
                    not out2.believes(p)
                    and out2.belief_worlds != state.belief_worlds, 1,
                    None if out2.belief_worlds != state.belief_worlds
                    else {"got": out2.belief_worlds}),
    ]
    return subs


def check_contraction(
    kind: str,
    suite: str,
    agg: str = "stq",
    worlds: int = 3,
    universe: Universe | None = None,
    sample: int | None = None,
    seed: int = _DEFAULT_SEED,
    require_first_all: bool = True,
    postulates: Sequence[str] | None = None,
) -> CheckReport:
    """Run one postulate suite for a contraction configuration.

    ``agm`` and ``cc`` exercise the serial operator alone; ``kp``,
    ``fh``, ``ccn`` and ``char`` exercise the parallel construction
    built from it and ``agg``; ``kp6alt`` runs a fixed two-atom
    demonstration. ``sample`` switches the case quantifiers from
    exhaustive enumeration to a seeded random sample of that size.
    ``postulates`` restricts the run to sub-checks whose name starts
    with one of the given prefixes.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r} (expected one of {SUITES})")
    u = universe if universe is not None else abstract_universe(worlds)
    if u.size > 4 and sample is None:
        raise ValueError("exhaustive suites cap at 4 worlds; pass sample= to override")
    ctx = _SuiteContext(u, kind, agg, require_first_all, sample, seed)
    builder = {
        "agm": _suite_agm,
        "cc": _suite_cc,
        "kp": _suite_kp,
        "fh": _suite_fh,
        "ccn": _suite_ccn,
        "char": _suite_char,
        "kp6alt": _suite_kp6alt,
    }[suite]
    if postulates is None:
        subs = builder(ctx)
    else:
        subs = [
            r for r in builder(ctx)
            if any(r.name.startswith(p) for p in postulates)
        ]
        if not subs:
            raise ValueError(f"no postulate in suite {suite!r} matches {postulates!r}")
    return _aggregate_report(f"suite:{suite}", subs, ctx.enumeration_note())


def search_countermodel(
    property_name: str,
    worlds: int = 3,
    inputs: int = 2,
    kind: str = "natural",
    agg: str = "stq",
    max_worlds: int = 4,
) -> dict | None:
    """Exhaustively search the bounded space for a violation of the
    named property; returns the first witness in enumeration order, or
    None. Contraction properties run under the serial-plus-aggregation
    construction given by ``kind`` and ``agg``."""
    if worlds > max_worlds:
        raise ValueError(f"{worlds} worlds exceed the cap of {max_worlds}")
    u = abstract_universe(worlds)
    if property_name == "naive-ci-is-tpo":
        from .aggregation import naive_ci

        states = list(enumerate_tpos(u))
        for combo in product(states, repeat=inputs):
            profile = Profile(list(combo))
            ok, triple = naive_ci(profile).tpo_verdict()
            if not ok:
                return {
                    "profile": tuple(str(t) for t in combo),
                    "cycle": triple,
                }
        return None
    prefix = {
        "fh-a": ("fh", "FH-a"),
        "fh-b": ("fh", "FH-b"),
        "kp7": ("kp", "KP-7"),
        "kp8": ("kp", "KP-8"),
    }.get(property_name)
    if prefix is None:
        raise ValueError(
            f"unknown property {property_name!r} (expected one of {SEARCH_PROPERTIES})"
        )
    suite, post = prefix
    report = check_contraction(
        kind, suite, agg=agg, universe=u, postulates=[post]
    )
    return report.witness
