"""Command line front end: classify, query, and verify databases.

Data goes to files, logs to standard error.  Exit codes: 0 complete,
2 a construction needs a field extension (artifacts written next to the
database), 3 a computation budget was exceeded, 4 unknown id in a query.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import cartan
from .classify import (
    Database,
    RunConfig,
    Session,
    dump_database,
    load_database,
)
from .errors import BudgetExceeded, NotAChain, UnknownId
from .field import NumberField
from .util import rational_str

log = logging.getLogger("liesub")

EXIT_OK = 0
EXIT_NEEDS_OPERATOR = 2
EXIT_BUDGET = 3
EXIT_UNKNOWN_ID = 4


def _parse_field(text):
    if not text:
        return NumberField()
    coeffs = [Fraction(part) for part in text.split(",")]
    return NumberField(coeffs)


def _add_classify(sub):
    p = sub.add_parser("classify", help="classify the semisimple subalgebras of an ambient type")
    p.add_argument("--type", required=True, help='ambient type string, e.g. "A2" or "A1+B2"')
    p.add_argument("--field", default="", help="minimal polynomial coefficients, constant first, e.g. 3,0,1 for t^2+3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="output database path (default <type>.json)")
    p.add_argument("--resume", action="store_true", help="reuse cached per-type results")
    p.add_argument("--budget-gb", type=int, default=200000, help="Groebner pair budget")
    p.add_argument("--budget-bt", type=int, default=10**7, help="conjugacy backtracking node cap")
    p.add_argument("--trials", type=int, default=25, help="random dense-orbit trials per step")
    return p


def _add_query(sub):
    p = sub.add_parser("query", help="inspect a database")
    p.add_argument("db", help="database JSON path")
    p.add_argument("what", choices=["list", "equiv", "includes", "chain"])
    p.add_argument("ids", nargs="*", type=int)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    return p


def _add_verify(sub):
    p = sub.add_parser("verify", help="re-check every stored invariant of a database")
    p.add_argument("db", help="database JSON path")
    return p


def build_parser():
    ap = argparse.ArgumentParser(prog="liesub")
    sub = ap.add_subparsers(dest="command", required=True)
    _add_classify(sub)
    _add_query(sub)
    _add_verify(sub)
    return ap


def cmd_classify(args) -> int:
    field = _parse_field(args.field)
    out_path = args.out or f"{args.type.replace('+', '_')}.json"
    config = RunConfig(
        seed=args.seed,
        trials=args.trials,
        gb_pair_budget=args.budget_gb,
        bt_node_cap=args.budget_bt,
        jobs=args.jobs,
        cache_dir=out_path + ".cache",
        resume=args.resume,
    )
    session = Session(field, config)
    try:
        db = session.classify(args.type)
    except BudgetExceeded as exc:
        log.error("budget exceeded: %s", exc)
        return EXIT_BUDGET
    dump_database(db, out_path)
    log.info("STAT stage=done ambient=%s classes=%d inclusions=%d pending=%d",
             db.ambient_label, len(db.classes), len(db.inclusions), len(db.pending))
    if db.pending:
        for k, item in enumerate(db.pending):
            path = f"{out_path}.artifact-{k}.txt"
            with open(path, "w") as fh:
                fh.write(f"ambient={db.ambient_label}\n")
                fh.write(f"target={cartan.type_label(item.target_typ)}\n")
                hp = [[rational_str(v) for v in lab] for lab in item.h_part]
                fh.write(f"hpart={json.dumps(hp)}\n")
                if item.field_hint:
                    hint = ",".join(rational_str(v) for v in item.field_hint)
                    fh.write(f"suggested_field={hint}\n")
                fh.write(item.system_text + "\n")
            log.error("unsolved triangular system written to %s", path)
        return EXIT_NEEDS_OPERATOR
    return EXIT_OK


def _session_for(db: Database):
    return Session(db.field, RunConfig())


def cmd_query(args) -> int:
    db = load_database(args.db)
    if args.what == "list":
        rows = []
        for c in sorted(db.classes, key=lambda c: c.id):
            is_ambient = c.typ == db.ambient_typ
            idx = "-" if is_ambient else ",".join(rational_str(q) for q in c.indices)
            flags = ("regular " if c.regular else "") + ("maximal" if c.maximal else "")
            rows.append((c.id, c.type_label, idx, flags.strip()))
        if args.json:
            print(json.dumps([
                {"id": r[0], "type": r[1], "indices": r[2], "flags": r[3]} for r in rows
            ]))
        else:
            print(f"{'id':>4}  {'type':<10} {'index':<10} flags")
            for r in rows:
                print(f"{r[0]:>4}  {r[1]:<10} {r[2]:<10} {r[3]}")
        return EXIT_OK
    session = _session_for(db)
    try:
        if args.what == "equiv":
            a, b = args.ids
            ca, cb = db.by_id(a), db.by_id(b)
            from .weylequiv import linearly_equivalent

            L = session.algebra_for(db.ambient_typ)
            ans = linearly_equivalent(L, ca, cb)
            print("yes" if ans else "no")
            return EXIT_OK
        if args.what == "includes":
            a, b = args.ids
            witness = session.includes(db, a, b)
            if witness is None:
                print("no")
            else:
                print(f"yes: class {a} is linearly equivalent to a subalgebra of class {b}")
            return EXIT_OK
        if args.what == "chain":
            gens_list = session.realize_chain(db, args.ids)
            print(json.dumps([{"id": cid, "gens": _gens_json(db, g)}
                              for cid, g in zip(args.ids, gens_list)]))
            return EXIT_OK
    except UnknownId as exc:
        log.error("%s", exc)
        return EXIT_UNKNOWN_ID
    except NotAChain as exc:
        log.error("%s", exc)
        return 1
    return EXIT_OK


def _gens_json(db, gens):
    def vec(v):
        return [[rational_str(c) for c in db.field.coords(x)] for x in v]

    return {
        "h": [vec(v) for v in gens.h],
        "x": [vec(v) for v in gens.x],
        "y": [vec(v) for v in gens.y],
    }


def cmd_verify(args) -> int:
    db = load_database(args.db)
    session = _session_for(db)
    ok, message = session.verify_database(db)
    print(("ok: " if ok else "FAIL: ") + message)
    return EXIT_OK if ok else 1


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "classify":
        return cmd_classify(args)
    if args.command == "query":
        return cmd_query(args)
    if args.command == "verify":
        return cmd_verify(args)
    return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
