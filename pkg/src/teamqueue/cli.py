"""Command-line front end: profile files, subcommand dispatch, and
deterministic line-oriented reports.

Profile files declare a universe on the first content line, either
``worlds: x y z w`` (abstract labels) or ``atoms: p q`` (blocks are then
bracketed formulas), followed by one ``tpo:`` line per profile entry,
blocks lowest (most plausible) first, optionally separated by ``<``.
Lines starting with ``#`` and blank lines are ignored.

Exit codes: 0 all passed / nothing found, 1 failure or witness found,
2 usage error.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .aggregation import aggregate_by_name, stq
from .changeops import BeliefState, ContractionInput, parallel_contract
from .conditionals import rational_closure_tpo
from .logic import Proposition, Universe, dnf
from .orders import TPO, InvalidPartitionError, Profile, render_tpo
from .postulates import SUITES, check_contraction, format_witness, search_countermodel

_BLOCK_RE = re.compile(r"\[([^\[\]]*)\]")


class ProfileFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


def _parse_tpo_line(body: str, universe: Universe, line_no: int) -> TPO:
    stripped = _BLOCK_RE.sub("", body).replace("<", "").strip()
    if stripped:
        raise ProfileFileError(f"unexpected text {stripped!r} in tpo line", line_no)
    blocks: list[Proposition] = []
    for m in _BLOCK_RE.finditer(body):
        content = m.group(1).strip()
        if not content:
            raise ProfileFileError("empty block", line_no)
        if universe.atoms:
            try:
                blocks.append(universe.models(content))
            except ValueError as exc:
                raise ProfileFileError(f"bad block formula: {exc}", line_no) from None
        else:
            names = content.split()
            seen: set[str] = set()
            mask = 0
            for name in names:
                try:
                    idx = universe.world_index(name)
                except ValueError as exc:
                    raise ProfileFileError(str(exc), line_no) from None
                if name in seen:
                    raise ProfileFileError(
                        f"world {name!r} named twice in one block", line_no
                    )
                seen.add(name)
                mask |= 1 << idx
            blocks.append(universe.prop_from_mask(mask))
    if not blocks:
        raise ProfileFileError("tpo line declares no blocks", line_no)
    try:
        return TPO(universe, blocks)
    except InvalidPartitionError as exc:
        raise ProfileFileError(str(exc), line_no) from None


def parse_profile_text(text: str) -> Profile:
    universe: Universe | None = None
    tpos: list[TPO] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if universe is None:
            if line.startswith("worlds:"):
                names = line[len("worlds:"):].split()
                try:
                    universe = Universe.of_worlds(names)
                except ValueError as exc:
                    raise ProfileFileError(str(exc), line_no) from None
            elif line.startswith("atoms:"):
                names = line[len("atoms:"):].split()
                try:
                    universe = Universe.from_atoms(names)
                except ValueError as exc:
                    raise ProfileFileError(str(exc), line_no) from None
            else:
                raise ProfileFileError(
                    "expected a 'worlds:' or 'atoms:' header", line_no
                )
            continue
        if not line.startswith("tpo:"):
            raise ProfileFileError("expected a 'tpo:' line", line_no)
        tpos.append(_parse_tpo_line(line[len("tpo:"):], universe, line_no))
    if universe is None:
        raise ProfileFileError("file declares no universe")
    if not tpos:
        raise ProfileFileError("file declares no tpo lines")
    return Profile(tpos)


def load_profile(path: str) -> Profile:
    """Profile from a file, entries in file order (index 1 = first line)."""
    with open(path, "r", encoding="ascii") as fh:
        return parse_profile_text(fh.read())


def render_profile(profile: Profile) -> str:
    """Canonical file text; reloading yields an equal profile."""
    u = profile.universe
    header = (
        "atoms: " + " ".join(u.atoms)
        if u.atoms
        else "worlds: " + " ".join(u.world_names)
    )
    lines = [header]
    for t in profile:
        lines.append("tpo: " + render_tpo(t))
    return "\n".join(lines) + "\n"


def _cmd_aggregate(args: argparse.Namespace) -> int:
    profile = load_profile(args.file)
    out = aggregate_by_name(profile, args.method)
    print(render_tpo(out))
    return 0


def _cmd_closure(args: argparse.Namespace) -> int:
    profile = load_profile(args.file)
    oracle = rational_closure_tpo(profile)
    via_stq = stq(profile)
    print(f"oracle: {render_tpo(oracle)}")
    print(f"stq:    {render_tpo(via_stq)}")
    verdict = "EQUAL" if oracle == via_stq else "DIFFER"
    print(f"verdict: {verdict}")
    return 0 if verdict == "EQUAL" else 1


def _cmd_contract(args: argparse.Namespace) -> int:
    universe = Universe.from_atoms(args.atoms.replace(",", " ").split())
    state_tpo = _parse_tpo_line(args.state, universe, 1)
    sentences = [universe.models(part) for part in args.by.split(",")]
    state = BeliefState(state_tpo)
    result = parallel_contract(
        state,
        ContractionInput.of(sentences),
        args.op,
        args.agg,
        require_first_all=args.require_first_all,
    )
    print(render_tpo(result.tpo))
    print(dnf(result.belief_worlds))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    report = check_contraction(
        args.op,
        args.suite,
        agg=args.agg,
        worlds=args.worlds,
        sample=args.sample,
        seed=args.seed,
        require_first_all=args.require_first_all,
    )
    for line in report.format_lines():
        print(line)
    return 0 if report.passed else 1


def _cmd_search(args: argparse.Namespace) -> int:
    witness = search_countermodel(
        args.property,
        worlds=args.worlds,
        inputs=args.inputs,
        kind=args.op,
        agg=args.agg,
    )
    if witness is None:
        print("no counterexample")
        return 0
    print("witness: " + format_witness(witness))
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teamqueue",
        description="Aggregation of plausibility orders and parallel belief contraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_agg = sub.add_parser("aggregate", help="aggregate a profile file")
    p_agg.add_argument("--method", required=True,
                       help="stq | minrank | explicit:{1,3}/{2}/...")
    p_agg.add_argument("file")
    p_agg.set_defaults(func=_cmd_aggregate)

    p_clo = sub.add_parser(
        "closure", help="compare the flattest-extension oracle with stq"
    )
    p_clo.add_argument("file")
    p_clo.set_defaults(func=_cmd_closure)

    p_con = sub.add_parser("contract", help="contract a state by sentences")
    p_con.add_argument("--atoms", required=True, help="atom names, e.g. 'p q'")
    p_con.add_argument("--state", required=True,
                       help="tpo over the atoms, e.g. '[p&q] < [p&~q | ~p&q] < [~p&~q]'")
    p_con.add_argument("--by", required=True, help="comma-separated formulas")
    p_con.add_argument("--op", default="natural", choices=["natural", "moderate"])
    p_con.add_argument("--agg", default="stq")
    p_con.add_argument("--no-require-first-all", dest="require_first_all",
                       action="store_false", default=True)
    p_con.set_defaults(func=_cmd_contract)

    p_chk = sub.add_parser("check", help="run a postulate suite")
    p_chk.add_argument("--suite", required=True, choices=list(SUITES))
    p_chk.add_argument("--op", default="natural",
                       choices=["natural", "moderate", "shuffle"])
    p_chk.add_argument("--agg", default="stq")
    p_chk.add_argument("--worlds", type=int, default=3)
    p_chk.add_argument("--sample", type=int, default=None)
    p_chk.add_argument("--seed", type=int, default=7349)
    p_chk.add_argument("--no-require-first-all", dest="require_first_all",
                       action="store_false", default=True)
    p_chk.set_defaults(func=_cmd_check)

    p_sea = sub.add_parser("search", help="search for a countermodel")
    p_sea.add_argument("--property", required=True)
    p_sea.add_argument("--worlds", type=int, default=3)
    p_sea.add_argument("--inputs", type=int, default=2)
    p_sea.add_argument("--op", default="natural")
    p_sea.add_argument("--agg", default="stq")
    p_sea.set_defaults(func=_cmd_search)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
