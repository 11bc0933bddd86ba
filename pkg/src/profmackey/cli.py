"""Command line driver: one subcommand per capability, JSON or table output.

Exit codes: 0 success, 1 domain error (a JSON error object is printed),
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import cb_space as cb
from . import godement as gd
from . import linalg as la
from . import mackey as mk
from . import tower as tw
from .burnside import burnside_report
from .errors import DomainError, InvalidInput, NotFinite
from .finite_group import load_group, subgroup_generators, subgroup_label


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    p = _Parser(prog="profmackey", description="Exact computations with Mackey functors and scattered spaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("json", "table"), default="json")
        return sp

    s = common(sub.add_parser("group", help="subgroup lattice summary"))
    s.add_argument("--group", required=True)

    s = common(sub.add_parser("burnside", help="table of marks and idempotents"))
    s.add_argument("--group", required=True)
    s.add_argument("--idempotents", action="store_true")

    s = common(sub.add_parser("mackey-check", help="verify the Mackey functor axioms"))
    s.add_argument("--group")
    s.add_argument("--functor", default="burnside")

    s = common(sub.add_parser("split", help="Weyl-module family of a Mackey functor"))
    s.add_argument("--group")
    s.add_argument("--tower")
    s.add_argument("--depth", type=int)
    s.add_argument("--functor", default="burnside")
    s.add_argument("--seed", type=int)

    s = common(sub.add_parser("tower", help="levels of a profinite tower"))
    s.add_argument("--tower", required=True)
    s.add_argument("--depth", type=int, default=3)

    s = common(sub.add_parser("stalk", help="Weyl-sheaf stalk along a thread"))
    s.add_argument("--tower", required=True)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--functor", default="zp")
    s.add_argument("--thread", default="e")

    s = common(sub.add_parser("roundtrip", help="round trip certificates"))
    s.add_argument("--group")
    s.add_argument("--tower")
    s.add_argument("--depth", type=int)
    s.add_argument("--functor")
    s.add_argument("--seed", type=int)

    s = common(sub.add_parser("cb", help="Cantor-Bendixson rank and injective dimension"))
    s.add_argument("expr")

    s = common(sub.add_parser("ext", help="Ext report over disc(n), P or (P*P)"))
    s.add_argument("expr")
    return p


# ---------------------------------------------------------------------------
# helpers


def _depth(args, default=None):
    d = args.depth if args.depth is not None else default
    if d is None:
        raise UsageError("--depth is required")
    if d < 1:
        raise UsageError("--depth must be at least 1")
    return d


def _load_functor(G, source):
    if os.path.isfile(source):
        with open(source) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"functor file is not JSON: {exc}") from None
        return mk.from_json(data, G)
    if G is None:
        raise UsageError("--group is required for built-in functors")
    return mk.builtin_functor(G, source)


def _group_report(G):
    lat = G.lattice()
    classes = []
    for c, orbit in enumerate(lat.classes):
        H = lat[orbit[0]]
        classes.append({"class": c, "label": subgroup_label(G, H), "order": H.order, "size": len(orbit),
                        "normal": len(orbit) == 1})
    return {"group": G.name, "order": G.n, "generators": [G.labels[g] for g in G.generators()],
            "subgroups": len(lat), "conjugacy_classes": len(lat.classes), "classes": classes,
            "elements": list(G.labels), "identity": G.labels[G.identity],
            "subgroup_generators": [[G.labels[g] for g in subgroup_generators(G, lat[i])] for i in range(len(lat))]}


def _roundtrip_finite(M, fam=None):
    rt = mk.roundtrip_functor(M)
    out = {"group": M.group.name, "functor": M.name, "dims": [M.dims[h] for h in M.domain],
           "rebuild_split_ok": rt.ok, "problems": rt.problems,
           "functor_iso": {str(h): la.to_strings(m) for h, m in sorted(rt.functor_iso.maps.items())}
           if rt.functor_iso else {}}
    fam = fam or mk.split(M)
    rf = mk.roundtrip_family(fam)
    out["split_rebuild_ok"] = rf.ok
    out["family_iso"] = {str(k): la.to_strings(m) for k, m in sorted(rf.family_iso.items())}
    out["problems"] = out["problems"] + rf.problems
    out["ok"] = rt.ok and rf.ok
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_group(args):
    return _group_report(load_group(args.group))


def cmd_burnside(args):
    return burnside_report(load_group(args.group), idempotents=args.idempotents)


def cmd_mackey_check(args):
    G = load_group(args.group) if args.group else None
    M = _load_functor(G, args.functor)
    return mk.axiom_check(M).to_json()


def cmd_split(args):
    if args.tower:
        raise NotFinite("split works on Mackey functors for finite groups; use stalk or roundtrip for towers")
    if not args.group:
        raise UsageError("--group is required")
    G = load_group(args.group)
    if args.seed is not None:
        M = mk.rebuild(mk.random_family(G, args.seed))
    else:
        M = _load_functor(G, args.functor)
    fam = mk.split(M)
    return {"group": G.name, "functor": M.name, "family": fam.to_json()}


def cmd_tower(args):
    T = tw.load_tower(args.tower, _depth(args))
    levels = [tw.level_space(T, i).to_json() for i in range(T.depth + 1)]
    return {"tower": T.name, "depth": T.depth, "orders": [G.n for G in T.levels], "levels": levels,
            "fiber_law": [tw.fiber_law_check(T, i) for i in range(T.depth)],
            "burnside_colimit": tw.burnside_colimit_check(T)}


def cmd_stalk(args):
    T = tw.load_tower(args.tower, _depth(args))
    TM = tw.tower_functor(T, args.functor)
    th = tw.parse_thread(T, args.thread)
    return {"tower": T.name, "functor": TM.name, "depth": T.depth, "stalk": tw.weyl_stalk(TM, th).to_json()}


def cmd_roundtrip(args):
    if args.tower:
        T = tw.load_tower(args.tower, _depth(args))
        TM = tw.tower_functor(T, args.functor or "zp")
        return tw.roundtrip_certificate(TM)
    if not args.group:
        raise UsageError("--group or --tower is required")
    G = load_group(args.group)
    if args.seed is not None:
        fam = mk.random_family(G, args.seed)
        return _roundtrip_finite(mk.rebuild(fam), fam)
    return _roundtrip_finite(_load_functor(G, args.functor or "burnside"))


def cmd_cb(args):
    return cb.cb_report(cb.parse_space(args.expr))


def cmd_ext(args):
    return gd.ext_report(cb.parse_space(args.expr))


COMMANDS = {
    "group": cmd_group,
    "burnside": cmd_burnside,
    "mackey-check": cmd_mackey_check,
    "split": cmd_split,
    "tower": cmd_tower,
    "stalk": cmd_stalk,
    "roundtrip": cmd_roundtrip,
    "cb": cmd_cb,
    "ext": cmd_ext,
}


# ---------------------------------------------------------------------------
# output


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return "-"
    return str(v)


def _table(rows):
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    cells = [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return lines


def emit(report, fmt="json") -> str:
    """Serialize a report.  JSON keeps insertion order, which every command
    builds deterministically; table renders lists of records as aligned
    columns and everything else as key: value lines."""
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
            lines.append(f"{k}:")
            lines += ["  " + ln for ln in _table(v)]
        elif isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            lines.append(f"{k}:")
            lines += ["  " + "  ".join(_cell(c) for c in r) for r in v]
        else:
            lines.append(f"{k}: {_cell(v)}")
    return "\n".join(lines)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except DomainError as exc:
        print(json.dumps(exc.to_json(), indent=2), file=out)
        return 1
    print(emit(report, args.format), file=out)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
