"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 input outside an operation's
domain, 3 resource cap exceeded.  Diagnostics go to standard error as one
line; results go to standard output (or ``--out``) and are deterministic.
"""

import argparse
import json
import sys

from . import diagram as dg
from .classify import classify_permutation
from .errors import StrataError, UsageError
from .perm import parse_permutation, require_admissible
from .rauzy import ExtendedRauzyClass, census, closure, same_component
from .surface import (
    SquareTiledSurface,
    permutation_profile,
    spin_parity_perm,
    spin_parity_surface,
    suspend,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, out=None):
    if out:
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, sort_keys=True) + "\n"


# -- subcommands ------------------------------------------------------------------

def cmd_classify(args):
    _emit(classify_permutation(parse_permutation(args.perm)).to_json(), args.out)


def cmd_census(args):
    result = census(args.letters)
    table = "".join(row.to_line() + "\n" for row in result.rows)
    if args.out:
        _emit(table, args.out)
        total = sum(row.class_count for row in result.rows)
        sys.stdout.write(f"m={args.letters} rows={len(result.rows)} classes={total}\n")
    else:
        sys.stdout.write(table)


def _class_summary(cls, profile):
    return _dump({"m": cls.m, "generators": cls.generators, "count": len(cls),
                  "profile": list(profile), "digest": cls.digest()})


def cmd_class(args):
    if args.action in ("enumerate", "save"):
        if not args.perm:
            raise UsageError("--perm is required")
        p = require_admissible(parse_permutation(args.perm))
        cls = closure(p, args.generators)
        profile = permutation_profile(p).stratum
        if args.action == "save":
            if not args.out:
                raise UsageError("class save needs --out")
            _emit(cls.to_text(profile), args.out)
            sys.stdout.write(_class_summary(cls, profile))
        else:
            _emit(cls.to_text(profile), args.out)
        return
    if not args.inp:
        raise UsageError("--in is required")
    cls, profile = ExtendedRauzyClass.from_text(_read(args.inp))
    if args.action == "load":
        if not cls.is_closed():
            raise UsageError("class file is not closed under its generators")
        _emit(_class_summary(cls, profile), args.out)
        return
    # membership
    if not args.perm:
        raise UsageError("--perm is required")
    p = parse_permutation(args.perm)
    _emit(_dump({"pi": list(p), "member": p in cls}), args.out)


def cmd_spin(args):
    if args.origami:
        s = SquareTiledSurface.from_json(_read(args.origami))
        _emit(_dump({"n": s.n_squares, "spin_parity": spin_parity_surface(s)}), args.out)
        return
    if not args.perm:
        raise UsageError("give --perm or --origami")
    p = parse_permutation(args.perm)
    out = {"pi": list(p)}
    if args.route in ("perm", "both"):
        out["spin_parity"] = spin_parity_perm(p)
    if args.route in ("surface", "both"):
        out["surface_parity"] = spin_parity_surface(suspend(p))
    _emit(_dump(out), args.out)


def cmd_suspend(args):
    _emit(suspend(parse_permutation(args.perm)).to_json(), args.out)


def cmd_same(args):
    a, b = parse_permutation(args.perm), parse_permutation(args.other)
    _emit(_dump({"same_component": same_component(a, b)}), args.out)


def _load_diagram(args):
    if not args.inp:
        raise UsageError("--in is required")
    return dg.SeparatrixDiagram.from_json(_read(args.inp))


def _write_diagram(d, args, extra=None):
    if getattr(args, "format", "json") == "dot":
        _emit(d.to_dot(), args.out)
    elif extra:
        obj = d.to_dict()
        obj.update(extra)
        _emit(_dump(obj), args.out)
    else:
        _emit(d.to_json(), args.out)


def cmd_diagram(args):
    a = args.action
    if a == "make":
        if args.type is None or args.genus is None:
            raise UsageError("diagram make needs --type and --genus")
        _write_diagram(dg.make_canonical(args.type, args.genus), args)
        return
    d = _load_diagram(args)
    if a == "validate":
        _write_diagram(d, args)
    elif a == "realize":
        _emit(_dump(dg.realizability(d).to_dict()), args.out)
    elif a == "bubble":
        if args.slot_a is None or args.slot_b is None:
            raise UsageError("bubble needs --slot-a and --slot-b")
        _write_diagram(dg.bubble_handle(d, args.vertex, args.slot_a, args.slot_b), args)
    elif a == "erase":
        new, m = dg.erase_handle(d, _pair(args))
        _write_diagram(new, args, {"m": m})
    elif a == "rotate":
        _write_diagram(dg.rotate_handle(d, _pair(args), args.steps), args)
    elif a == "contract":
        if args.edge is None:
            raise UsageError("contract needs --edge")
        _write_diagram(dg.contract_saddle_connection(d, args.edge), args)
    elif a == "surface":
        _emit(dg.diagram_to_surface(d).to_json(), args.out)


def _pair(args):
    if not args.pair:
        raise UsageError("--pair POS NEG is required")
    return tuple(args.pair)


# -- parser ------------------------------------------------------------------------

def build_parser():
    ap = _Parser(prog="strata", description="Components of strata of abelian differentials.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="component of a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="extended Rauzy classes by profile")
    p.add_argument("--letters", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("class", help="enumerate, save, load or query a class")
    p.add_argument("action", choices=["enumerate", "save", "load", "membership"])
    p.add_argument("--perm")
    p.add_argument("--generators", default="abd")
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("same", help="whether two permutations share a class")
    p.add_argument("--perm", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_same)

    p = sub.add_parser("spin", help="parity of the spin structure")
    p.add_argument("--perm")
    p.add_argument("--origami")
    p.add_argument("--route", choices=["perm", "surface", "both"], default="both")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("suspend", help="square-tiled suspension as origami JSON")
    p.add_argument("--perm", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_suspend)

    p = sub.add_parser("diagram", help="separatrix diagrams")
    p.add_argument("action", choices=["make", "validate", "realize", "bubble", "erase",
                                      "rotate", "contract", "surface"])
    p.add_argument("--type")
    p.add_argument("--genus", type=int)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--in", dest="inp")
    p.add_argument("--out")
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--slot-a", type=int)
    p.add_argument("--slot-b", type=int)
    p.add_argument("--pair", type=int, nargs=2)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--edge", type=int)
    p.set_defaults(func=cmd_diagram)
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except StrataError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
