"""Command-line front end.

Usage: ``toricmirror COMMAND DATUM.json [options]``.  Exit status is 0 on
success, 1 when a verification fails and 2 on bad input.
"""
import argparse
import json
import os
import sys

from . import acceptance, ifunction, mirror, toric
from .errors import ToricMirrorError

ORDERS_ENV = "TORICMIRROR_ORDERS"


class InputError(Exception):
    pass


def parse_datum(text: str, source: str = "<input>") -> toric.ToricDatum:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object with an 'iota' field")
    if "iota" not in doc:
        raise InputError(f"{source}: missing field 'iota'")
    iota = _int_matrix(doc["iota"], "iota", source)
    beta = _int_matrix(doc["beta"], "beta", source) if doc.get("beta") is not None else None
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError(f"{source}: field 'name' must be a string")
    return toric.validate(iota, beta, name=name)


def _int_matrix(value, field, source):
    if not isinstance(value, list) or not value:
        raise InputError(f"{source}: field '{field}' must be a nonempty array of rows")
    width = None
    for r, row in enumerate(value):
        if not isinstance(row, list):
            raise InputError(f"{source}: {field}[{r}] is not an array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{source}: {field}[{r}] has length {len(row)}, expected {width}")
        for c, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise InputError(f"{source}: {field}[{r}][{c}] = {x!r} is not an integer")
    return value


def load_datum(path: str) -> toric.ToricDatum:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return parse_datum(text, path)


def parse_pair(text: str, what: str = "orders") -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"{what} must look like NZ,NA, got {text!r}")
    try:
        a, b = (int(x) for x in parts)
    except ValueError:
        raise InputError(f"{what} must be two integers, got {text!r}") from None
    if a < 0 or b < 0:
        raise InputError(f"{what} must be nonnegative, got {text!r}")
    return a, b


def default_orders() -> tuple:
    env = os.environ.get(ORDERS_ENV)
    return parse_pair(env, ORDERS_ENV) if env else ifunction.DEFAULT_ORDERS


def parse_point(text: str, X) -> toric.FixedPoint:
    try:
        labels = [int(x) for x in text.strip("{}").split(",") if x.strip()]
    except ValueError:
        raise InputError(f"point must be comma-separated 1-based indices, got {text!r}") from None
    if any(i < 1 or i > X.n for i in labels):
        raise InputError(f"point {text!r} has an index outside 1..{X.n}")
    p = toric.FixedPoint.from_labels(labels)
    if p not in toric.fixed_points(X):
        raise InputError(f"{p} is not a fixed point of this datum")
    return p


# rendering helpers

def _cone_dict(c):
    out = {"open": c.open, "generators": [list(g) for g in c.integer_generators()]}
    if c.inequalities is not None:
        out["inequalities"] = [[int(x) for x in a] for a in c.inequalities]
    return out


def _contribution_dict(contrib, X):
    out = {"point": str(contrib.point), "level": contrib.level,
           "spec": contrib.spec.to_dict(),
           "prefactor": contrib.prefactor.to_rows(),
           "terms": contrib.series.to_records()}
    if contrib.standing is not None and contrib.standing.factors:
        out["standing"] = [{"coeff": str(c), "exp": list(m), "power": e}
                           for (c, m), e in sorted(contrib.standing.factors.items(), key=lambda t: t[0][1])]
    return out


def _print_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


# commands

def cmd_validate(X, args):
    if args.json:
        _print_json({"valid": True, "n": X.n, "k": X.k, "d": X.d, **X.to_dict()})
    else:
        print(f"valid: n={X.n} k={X.k} d={X.d}")
        print(f"iota = {X.iota.tolist()}")
        print(f"beta = {X.beta.tolist()}")
    return 0


def cmd_dual(X, args):
    D = toric.gale_dual(X)
    if args.json:
        _print_json(D.to_dict())
    else:
        print(f"iota^! = {D.iota.tolist()}")
        print(f"beta^! = {D.beta.tolist()}")
    return 0


def cmd_fixed_points(X, args):
    pts = toric.fixed_points(X)
    if args.json:
        _print_json([list(p.labels) for p in pts])
    else:
        for p in pts:
            print(p)
    return 0


def cmd_cones(X, args):
    rows = []
    for p in toric.fixed_points(X):
        rows.append({"point": str(p),
                     "kahler": _cone_dict(toric.kahler_cone(X, p)),
                     "attracting": _cone_dict(toric.attracting_cone(X, p)),
                     "effective": _cone_dict(toric.effective_cone(X, p))})
    if args.json:
        _print_json(rows)
    else:
        for r in rows:
            print(f"{r['point']}: K = {r['kahler']['generators']}  A = {r['attracting']['generators']}  "
                  f"Eff = {r['effective']['generators']}")
    return 0


def cmd_chambers(X, args):
    chs = toric.chambers(X)
    if args.json:
        _print_json([{"generators": [list(g) for g in c.cone.integer_generators()],
                      "points": [str(p) for p in c.points]} for c in chs])
    else:
        for i, c in enumerate(chs, 1):
            print(f"C{i} = cone{c.cone.integer_generators()}: " + " ".join(str(p) for p in c.points))
    return 0


def cmd_restrictions(X, args):
    rows = []
    for p in toric.fixed_points(X):
        t = toric.u_restriction(X, p)
        rows.append({"point": str(p), "C": [list(r) for r in t.C],
                     "U": {str(i + 1): list(t.exponent(i)) for i in t.outside}})
    if args.json:
        _print_json(rows)
    else:
        for r in rows:
            us = ", ".join(f"U{i}|p = {_monomial('a', e)}" for i, e in r["U"].items())
            print(f"{r['point']}: {us}")
    return 0


def _monomial(var, exps):
    parts = [f"{var}{j + 1}" + ("" if e == 1 else f"^{e}") for j, e in enumerate(exps) if e]
    return "*".join(parts) or "1"


def cmd_levels(X, args):
    lv = toric.effective_levels(X)
    if args.json:
        _print_json([str(x) for x in lv])
    else:
        print(" ".join(str(x) for x in lv))
    return 0


def cmd_ifunction(X, args):
    orders = parse_pair(args.orders) if args.orders else default_orders()
    points = [parse_point(args.point, X)] if args.point else toric.fixed_points(X)
    out = []
    for p in points:
        if args.modified:
            c = ifunction.i_eff_modified(X, p, orders=orders)
        else:
            c = ifunction.i_function(X, p, args.level, orders=orders)
        out.append(c)
    if args.json:
        _print_json([_contribution_dict(c, X) for c in out])
    else:
        for c in out:
            print(f"# point {c.point}, level {c.level}, orders {orders}")
            if not c.prefactor.is_zero():
                print(f"# prefactor exp({c.prefactor} / ln q)")
            print(c.series.pretty())
    return 0


def cmd_diffeq_check(X, args):
    orders = parse_pair(args.orders) if args.orders else default_orders()
    report = mirror.diffeq_check(X, orders)
    recursion = {str(p): mirror.uniqueness_recursion_check(X, p, orders) for p in toric.fixed_points(X)}
    ok = report.verdict and all(recursion.values())
    if args.json:
        doc = report.to_dict()
        doc["recursion"] = recursion
        doc["verdict"] = ok
        _print_json(doc)
    else:
        for r in report.results:
            print(f"{'PASS' if r.ok else 'FAIL'} {r.point} {r.kind} {r.label}")
        for p, v in recursion.items():
            print(f"{'PASS' if v else 'FAIL'} {p} recursion")
        print("all equations hold" if ok else "some equations FAILED")
    return 0 if ok else 1


def cmd_mirror_check(X, args):
    orders = parse_pair(args.orders) if args.orders else default_orders()
    report = mirror.mirror_verify(X, orders)
    if args.json:
        _print_json(report.to_dict())
    else:
        for v in report.points:
            status = "PASS" if v.ok else "FAIL"
            extra = "" if v.ok else f" (prefactor {'ok' if v.prefactor_ok else 'differs'}, {len(v.diffs)} coefficient diffs)"
            print(f"{status} {v.point} <-> {v.dual_point}{extra}")
        print("mirror identity holds" if report.verdict else "mirror identity FAILED")
    return 0 if report.verdict else 1


def cmd_acceptance(args):
    numbers = [args.criterion] if args.criterion else None
    results = acceptance.run(numbers)
    if args.json:
        _print_json([{"criterion": k, "title": t, "ok": ok, "seconds": round(dt, 3), "failures": f}
                     for k, t, ok, dt, f in results])
    else:
        for k, t, ok, dt, f in results:
            print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {t} ({dt:.2f} s)")
            for msg in f:
                print(f"    {msg}")
    return 0 if all(r[2] for r in results) else 1


COMMANDS = {
    "validate": (cmd_validate, "check a datum and print its cokernel map"),
    "dual": (cmd_dual, "print the Gale dual datum"),
    "fixed-points": (cmd_fixed_points, "list torus-fixed points"),
    "cones": (cmd_cones, "Kahler, attracting and effective cones per fixed point"),
    "chambers": (cmd_chambers, "GIT chambers and their fixed points (k <= 2)"),
    "restrictions": (cmd_restrictions, "restrictions U_i|_p of the tautological characters"),
    "levels": (cmd_levels, "effective levels"),
    "ifunction": (cmd_ifunction, "I-function series at one or all fixed points"),
    "diffeq-check": (cmd_diffeq_check, "verify the q-difference equations"),
    "mirror-check": (cmd_mirror_check, "verify the mirror identity point by point"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricmirror", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("datum", help="JSON file with an 'iota' matrix")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("ifunction", "diffeq-check", "mirror-check"):
            sp.add_argument("--orders", help=f"NZ,NA truncation orders (default ${ORDERS_ENV} or 3,3)")
        if name == "ifunction":
            sp.add_argument("--point", help="fixed point as 1-based indices, e.g. 1,3")
            sp.add_argument("--level", type=int, default=1, help="integer level l (default 1)")
            sp.add_argument("--modified", action="store_true",
                            help="print the modified series with its log prefactor")
    sp = sub.add_parser("acceptance", help="run the built-in acceptance criteria (no datum needed)")
    sp.add_argument("--criterion", type=int, choices=sorted(acceptance.CRITERIA), help="run only this one")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "acceptance":
        return cmd_acceptance(args)
    handler = COMMANDS[args.command][0]
    try:
        X = load_datum(args.datum)
        return handler(X, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToricMirrorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
