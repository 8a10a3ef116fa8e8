"""Command-line front end.

Exit status: 0 success, 1 parse or usage error, 2 a checked structural
property failed, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds
from .enumeration import DAY_CAP, InfeasibleError, enumerate_day, load
from .games import GameArena, GameError
from .notation import NotationError, game, to_text
from .poset import (ChainDivision, InvariantViolation, chain_division, check_symmetry,
                    layer_matching, stratify, width_certificate)

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def sci(value, upper: bool = False) -> str:
    """Five significant digits; rounded up when displaying an upper bound."""
    if isinstance(value, Fraction):
        value = math.ceil(value) if upper else math.floor(value)
    digits = str(value)
    if len(digits) <= 6:
        return digits
    head = int(digits[:5])
    if upper and any(d != "0" for d in digits[5:]):
        head += 1
    text = str(head)
    exp = len(digits) - 1 + (len(text) - 5)
    return f"{text[0]}.{text[1:5]}e{exp}"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {"command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_set(args):
    return load(args.infile)


def cmd_gen(args) -> int:
    if args.day > DAY_CAP and not args.allow_beyond_cap:
        raise InfeasibleError(f"day {args.day} exceeds the enumeration cap of {DAY_CAP}; "
                              "day 4 alone holds more than 2^94 canonical forms")
    cap = args.day if args.allow_beyond_cap else DAY_CAP
    gs = enumerate_day(args.day, cap=cap, threads=args.threads)
    if args.out:
        gs.save(args.out)
        _emit(args, {"day": gs.day, "count": len(gs), "path": str(args.out)},
              f"wrote {len(gs)} games born by day {gs.day} to {args.out}")
    elif args.json:
        _emit(args, {"day": gs.day, "count": len(gs), "games": gs.texts()}, "")
    else:
        sys.stdout.write(gs.dumps())
    return EXIT_OK


def cmd_stratify(args) -> int:
    gs = _load_set(args)
    strat = stratify(gs)
    symmetric = check_symmetry(strat)
    matchings = [layer_matching(strat, i).size for i in range(1, len(strat))]
    layers = [{"index": i, "size": len(u), "games": [to_text(gs.arena, g) for g in u]}
              for i, u in enumerate(strat.layers, 1)]
    lines = [f"# day={gs.day} games={len(gs)} layers={len(strat)} symmetric={symmetric}",
             "layer\tsize\tmatching"]
    for i, u in enumerate(strat.layers, 1):
        m = matchings[i - 1] if i < len(strat) else "-"
        lines.append(f"{i}\t{len(u)}\t{m}")
    _emit(args, {"day": gs.day, "count": len(gs), "layers": layers,
                 "matching_sizes": matchings, "symmetric": symmetric}, "\n".join(lines))
    return EXIT_OK if symmetric else EXIT_INVARIANT


def cmd_chains(args) -> int:
    gs = _load_set(args)
    strat = stratify(gs)
    division = chain_division(strat)
    width, antichain, _ = width_certificate(gs, strat, division)
    chains = [[to_text(gs.arena, g) for g in c] for c in division.chains]
    lines = [f"# day={gs.day} games={len(gs)} width={width}",
             "lengths: " + " ".join(map(str, division.lengths))]
    lines += [f"T{i}\t{len(c)}\t" + " > ".join(c) for i, c in enumerate(chains, 1)]
    _emit(args, {"day": gs.day, "width": width, "lengths": division.lengths,
                 "chains": chains,
                 "antichain": [to_text(gs.arena, g) for g in antichain]}, "\n".join(lines))
    return EXIT_OK


def _report_lines(report: bounds.BoundReport) -> list[str]:
    lines = []
    for e in report.entries:
        if e.name.startswith("first_chain_"):
            continue
        lines.append(f"{e.name:<34} {e.kind:<6} {sci(e.value, e.kind == 'upper'):>12}"
                     f"  log10={e.log10:.4f}")
    return lines


def cmd_bounds(args) -> int:
    if args.target == "classical":
        if args.gn is None or args.gn1 is None:
            raise UsageError("bounds classical needs --gn and --gn1")
        report = bounds.classical_report(args.gn, args.gn1)
        _emit(args, {"report": report.to_dict()}, "\n".join(_report_lines(report)))
        return EXIT_OK
    arena = GameArena()
    gs = load(args.infile, arena) if args.infile else enumerate_day(3, arena, threads=args.threads)
    division = None
    if args.chains != "auto":
        data = json.loads(Path(args.chains).read_text(encoding="utf-8"))
        division = ChainDivision([tuple(game(t, arena) for t in c) for c in data["chains"]])
    report = bounds.day4_report(gs, division, fixtures=args.fixtures)
    low = report["lower_headline"]
    headline = {
        "lower": bounds.exact_text(low.value),
        "lower_log10": round(low.log10, 4),
        "upper_own_division": bounds.exact_text(report["upper_refined"].value),
        "upper_own_division_log10": round(report["upper_refined"].log10, 4),
    }
    n = gs.day + 1
    text = (f"lower: 2^{low.value.bit_length() - 1} = 10^{low.log10:.2f} < |G{n}|\n"
            f"upper (own division, exact): |G{n}| <= {sci(report['upper_refined'].value, True)}")
    if args.fixtures:
        fx = report["fixture_refined"]
        headline["upper_fixture_arithmetic"] = bounds.exact_text(fx.value)
        headline["upper_fixture_arithmetic_log10"] = round(fx.log10, 4)
        text += f"\nupper (published chain data): |G{n}| <= {sci(fx.value, True)}"
    _emit(args, {"report": report.to_dict(), "headline": headline},
          "\n".join(_report_lines(report)) + "\n" + text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = bounds.verify_day3()
    _emit(args, {"report": report.to_dict()},
          "\n".join(_report_lines(report)) + f"\nsandwich holds: {report.meta['sandwich']}")
    return EXIT_OK


def cmd_canon(args) -> int:
    arena = GameArena()
    g = game(args.expr, arena)
    text = to_text(arena, g)
    _emit(args, {"input": args.expr, "canonical": text, "birthday": arena.birthday(g)}, text)
    return EXIT_OK


def cmd_cmp(args) -> int:
    arena = GameArena()
    rel = arena.compare(game(args.left, arena), game(args.right, arena))
    _emit(args, {"left": args.left, "right": args.right, "relation": str(rel)}, str(rel))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1)
    p = _Parser(prog="dayfour", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", parents=[common], help="enumerate games born by a day")
    s.add_argument("--day", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--allow-beyond-cap", action="store_true")
    s.set_defaults(func=cmd_gen)

    for name, func in (("stratify", cmd_stratify), ("chains", cmd_chains)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--in", dest="infile", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("bounds", parents=[common])
    s.add_argument("target", choices=["day4", "classical"])
    s.add_argument("--chains", default="auto", help="'auto' or a chains JSON file")
    s.add_argument("--fixtures", action="store_true", help="add published-data arithmetic")
    s.add_argument("--in", dest="infile", help="day-3 game-set file instead of enumerating")
    s.add_argument("--gn", type=int)
    s.add_argument("--gn1", type=int)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("target", choices=["day3"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("canon", parents=[common])
    s.add_argument("expr")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("cmp", parents=[common])
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_cmp)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, NotationError, InfeasibleError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (InvariantViolation, GameError) as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
