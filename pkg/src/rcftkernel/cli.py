"""Command-line driver: analyze, galois, lambda-check, kernel, table, bound, verify."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import gcd

from . import modular_data as mdmod
from .errors import RCFTError
from .galois import check_gtcom, extract_g, g_via_closed_form, gtcom_witness, units
from .kernel import (DEFAULT_BUDGET, criterion, is_in_kernel, kernel_consequences,
                     kernel_elements, kernel_image, conductor_bound_naive, divides_bound,
                     unit_conjugate)
from . import matrix as mx
from .lambdas import lemma_suite
from .sl2 import SL2NMatrix, check_gal2, lift, rep, sl2_order

SCHEMA = "rcftkernel-report/1"

# (p, q) pairs of the minimal-model table, rows p = 2..10, columns q = 5..11
TABLE_MODELS = (
    (2, 5), (2, 7), (2, 9), (2, 11),
    (3, 5), (3, 7), (3, 8), (3, 10), (3, 11),
    (4, 5), (4, 7), (4, 9), (4, 11),
    (5, 6), (5, 7), (5, 8), (5, 9), (5, 11),
    (6, 7), (6, 11),
    (7, 8), (7, 9), (7, 10), (7, 11),
    (8, 9), (8, 11),
    (9, 10), (9, 11),
    (10, 11),
)


# -- structured values ------------------------------------------------------


def _int(x):
    return str(int(x))


def _rat(x):
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def _matrix(m):
    return [_int(x) for x in m.entries()]


def parse_model(text):
    try:
        p, q = (int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,q but got {text!r}") from None
    return p, q


def load_model(args, validate=True):
    if args.input:
        return mdmod.load(args.input, validate=validate), args.input
    p, q = args.model
    return mdmod.minimal_model(p, q, validate=validate), f"M({p},{q})"


# -- reports ----------------------------------------------------------------


def analyze_report(md, source):
    checks = mdmod.check_axioms(md)
    N, N0 = md.conductor, mdmod.n_zero(md)
    report = {
        "schema": SCHEMA,
        "command": "analyze",
        "source": source,
        "primaries": _int(md.size),
        "labels": [lab.name for lab in md.labels],
        "central_charge": _rat(md.central_charge),
        "t_exponents": [_rat(t) for t in md.t_exponents],
        "N": _int(N),
        "N0": _int(N0),
        "e": _int(N // N0),
        "axioms": [{"name": c.name, "ok": c.ok, "witness": _witness(c.witness)} for c in checks],
    }
    if all(c.ok for c in checks):
        table = mdmod.fusion(md)
        size = md.size
        report["fusion"] = [
            [_int(p), _int(q), _int(r), _int(table[p, q, r])]
            for p in range(size) for q in range(size) for r in range(size) if table[p, q, r]
        ]
    return report, all(c.ok for c in checks)


def _witness(w):
    if w is None:
        return None
    if isinstance(w, (tuple, list)):
        return [_witness(x) for x in w]
    if isinstance(w, Fraction):
        return _rat(w)
    if isinstance(w, int):
        return _int(w)
    return str(w)


def galois_report(md, source):
    rows = []
    ok = True
    for l in units(md.conductor):
        g = extract_g(md, l)
        w = gtcom_witness(md, l, g)
        ok &= w is None
        rows.append({"l": _int(l), "pi": g.cycles(), "eps": [_int(s) for s in g.signs],
                     "gtcom": w is None})
    return {"schema": SCHEMA, "command": "galois", "source": source, "N": _int(md.conductor),
            "rows": rows}, ok


def lambda_report(md, source, max_den, max_l):
    res = lemma_suite(md, max_l=max_l, max_den=max_den)
    suites = [{"name": r.name, "passed": _int(r.passed), "failed": _int(r.failed),
               "first_failure": _witness(r.first_failure)} for r in res.values()]
    return ({"schema": SCHEMA, "command": "lambda-check", "source": source, "suites": suites},
            all(r.ok for r in res.values()))


def kernel_report(md, source, budget, emit_generators):
    rep_ = kernel_image(md, budget=budget)
    out = {
        "schema": SCHEMA,
        "command": "kernel",
        "source": source,
        "modulus": _int(rep_.modulus),
        "order": _int(rep_.order),
        "center_order": _int(rep_.center_order),
        "center_structure": [_int(x) for x in rep_.center_structure],
        "derived_order": _int(rep_.derived_order),
        "derived_exponent": _int(rep_.derived_exponent),
        "derived_structure": (None if rep_.derived_structure is None
                              else [_int(x) for x in rep_.derived_structure]),
    }
    if emit_generators:
        out["generators"] = [_matrix(g) for g in rep_.generators]
    return out, True


def table_row(p, q, budget):
    N, N0, _, _ = mdmod.spectrum_invariants(p, q)
    row = {"p": _int(p), "q": _int(q), "N": _int(N), "ratio": _int(N // N0)}
    if sl2_order(N) > budget:
        row.update(index=None, status="skipped-budget")
        return row
    md = mdmod.minimal_model(p, q)
    assert (md.conductor, mdmod.n_zero(md)) == (N, N0)
    report = kernel_image(md, budget=budget)
    # cross-module invariants before emission
    assert 12 % (N // N0) == 0
    assert divides_bound(N, md.size)
    assert sl2_order(N) % report.order == 0
    assert all(is_in_kernel(md, g) for g in report.generators)
    row.update(index=_int(report.order), status="computed")
    return row


def table_report(models, budget):
    return {"schema": SCHEMA, "command": "table", "budget": _int(budget),
            "rows": [table_row(p, q, budget) for p, q in models]}, True


def bound_report(rs):
    return {"schema": SCHEMA, "command": "bound",
            "rows": [{"r": _int(r), "bound": _int(conductor_bound_naive(r))} for r in rs]}, True


# -- verify -------------------------------------------------------------------


class _Suite:
    def __init__(self, name):
        self.name, self.passed, self.failed, self.witness = name, 0, 0, None

    def record(self, ok, witness):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.witness is None:
                self.witness = witness

    def error(self, exc, witness):
        self.failed += 1
        if self.witness is None:
            self.witness = f"{witness}: {type(exc).__name__}: {exc}"

    def as_dict(self):
        return {"name": self.name, "passed": _int(self.passed), "failed": _int(self.failed),
                "witness": _witness(self.witness)}


def _guarded(suite, witness, fn):
    try:
        suite.record(fn(), witness)
    except RCFTError as exc:
        suite.error(exc, witness)


def verify_suites(md, budget=DEFAULT_BUDGET, max_den=4, max_l=None, seed=0):
    """Every module's invariant checks on one model; returns a list of _Suite."""
    rng = random.Random(seed)
    N = md.conductor
    suites = []

    axioms = _Suite("axioms")
    for c in mdmod.check_axioms(md):
        axioms.record(c.ok, (c.name, c.witness))
    suites.append(axioms)

    gtcom, closed = _Suite("gtcom"), _Suite("g-closed-form")
    for l in units(N):
        _guarded(gtcom, l, lambda: check_gtcom(md, l))
        _guarded(closed, l, lambda: extract_g(md, l).to_matrix(md.field_order)
                 == mx.at_order(g_via_closed_form(md, l), md.field_order))
    suites += [gtcom, closed]

    gal2 = _Suite("gal2")
    for _ in range(100):
        m = _random_sl2n(rng, N)
        l = rng.choice(units(N))
        _guarded(gal2, (m.entries(), l), lambda: check_gal2(md, m, l))
    suites.append(gal2)

    if not (axioms.failed or gtcom.failed):
        lam = lemma_suite(md, max_l=max_l, max_den=max_den)
        for r in lam.values():
            s = _Suite(r.name)
            s.passed, s.failed, s.witness = r.passed, r.failed, r.first_failure
            suites.append(s)

    if not axioms.failed and sl2_order(N) <= budget:
        suites += _kernel_suites(md, rng, budget)
    return suites


def _random_sl2n(rng, N):
    while True:
        c, d = rng.randrange(N), rng.randrange(N)
        if gcd(gcd(c, d), N) == 1:
            break
    a0 = lift(SL2NMatrix(N, *_any_top(N, c, d), c, d))
    j = rng.randrange(N)
    return SL2NMatrix(N, a0.a + j * c, a0.b + j * d, c, d)


def _any_top(N, c, d):
    from .kernel import _top_rows

    return _top_rows(N, c, d)[0]


def _kernel_suites(md, rng, budget):
    N = md.conductor
    elements = kernel_elements(md, budget)
    ident = mx.identity(md.size, md.field_order)

    cons = _Suite("kernel-consequences")
    gamma = _Suite("gamma1-meets-kernel")
    for a, b, c, d in sorted(elements):
        m = unit_conjugate(SL2NMatrix(N, a, b, c, d), N)
        checks = kernel_consequences(md, m)
        cons.record(all(checks.values()), ((a, b, c, d), sorted(k for k, v in checks.items() if not v)))
        if a == 1 % N and d == 1 % N and c == 0:
            gamma.record(b == 0, (a, b, c, d))

    oracle = _Suite("kernel-oracle")
    crit = criterion(md)
    sample = [_random_sl2n(rng, N) for _ in range(200)]
    sample += kernel_image(md, budget).generators
    sample += [SL2NMatrix(N, *g) for g in sorted(elements)[:50]]
    for m in sample:
        M = lift(m)
        oracle.record(crit.contains(M) == (rep(md, M) == ident), m.entries())
    return [cons, gamma, oracle]


def verify_report(md, source, budget, max_den):
    suites = verify_suites(md, budget=budget, max_den=max_den)
    return ({"schema": SCHEMA, "command": "verify", "source": source,
             "suites": [s.as_dict() for s in suites]},
            all(s.failed == 0 for s in suites))


# -- text rendering -----------------------------------------------------------


def _plain(v):
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, str) for x in v) and v[1] != "1":
        return f"{v[0]}/{v[1]}"
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, str) for x in v):
        return v[0]
    return str(v)


def render_text(report):
    cmd = report["command"]
    lines = []
    if cmd == "analyze":
        lines.append(f"model {report['source']}: {report['primaries']} primaries, "
                     f"c = {_plain(report['central_charge'])}")
        lines.append(f"N = {report['N']}  N0 = {report['N0']}  e = {report['e']}")
        for c in report["axioms"]:
            lines.append(f"  {c['name']:<20} {'ok' if c['ok'] else 'FAIL ' + str(c['witness'])}")
        for p, q, r, n in report.get("fusion", []):
            lines.append(f"  N[{p},{q},{r}] = {n}")
    elif cmd == "galois":
        lines.append(f"N = {report['N']}")
        for row in report["rows"]:
            lines.append(f"  l={row['l']:>4}  pi={row['pi'] or '()'}  eps=({','.join(row['eps'])})  "
                         f"gtcom={'ok' if row['gtcom'] else 'FAIL'}")
    elif cmd in ("lambda-check", "verify"):
        for s in report["suites"]:
            tail = "" if s["failed"] == "0" else f"  first failure: {s.get('witness', s.get('first_failure'))}"
            lines.append(f"  {s['name']:<22} passed {s['passed']:>6}  failed {s['failed']}{tail}")
    elif cmd == "kernel":
        lines.append(f"mu_{report['modulus']}(K): order {report['order']}")
        lines.append(f"  center: order {report['center_order']}, Z{' x Z'.join(report['center_structure'])}")
        der = report["derived_structure"]
        lines.append(f"  derived: order {report['derived_order']}, exponent {report['derived_exponent']}"
                     + (f", Z{' x Z'.join(der)}" if der else ""))
        for g in report.get("generators", []):
            a, b, c, d = g
            lines.append(f"  (({a},{b}),({c},{d})) mod {report['modulus']}")
    elif cmd == "table":
        lines.append("p  q     N  N/N0  index")
        for r in report["rows"]:
            idx = r["index"] if r["status"] == "computed" else "skipped-budget"
            lines.append(f"{r['p']:<2} {r['q']:<3} {r['N']:>5} {r['ratio']:>5}  {idx}")
    elif cmd == "bound":
        for r in report["rows"]:
            lines.append(f"N({r['r']}) = {r['bound']}")
    return "\n".join(lines) + "\n"


def emit(report, fmt, output):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if fmt == "json" else render_text(report)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument parsing ---------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="rcft-kernel",
                                     description="Galois action and kernel of RCFT modular representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--model", type=parse_model, metavar="P,Q", help="Virasoro minimal model M(p,q)")
        grp.add_argument("--input", metavar="FILE", help="modular-data JSON file")

    def output(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", "-o", metavar="FILE", help="write the report here instead of stdout")

    p = sub.add_parser("analyze", help="conductor, N0, e, axioms and fusion rules")
    source(p)
    output(p)
    p.add_argument("--save", metavar="FILE", help="also write the modular data to FILE")

    p = sub.add_parser("galois", help="G_l (permutation and signs) for every unit l mod N")
    source(p)
    output(p)

    p = sub.add_parser("lambda-check", help="Lambda(r) and Z_l(r) identity suite")
    source(p)
    output(p)
    p.add_argument("--max-den", type=int, default=6)
    p.add_argument("--max-l", type=int, default=None)

    p = sub.add_parser("kernel", help="enumerate mu_N(K) and its structure")
    source(p)
    output(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--emit-generators", action="store_true")
    p.add_argument("--json", metavar="FILE", help="write the JSON report to FILE as well")

    p = sub.add_parser("table", help="(N, N/N0, index) rows for minimal models")
    p.add_argument("--model", type=parse_model, action="append", metavar="P,Q",
                   help="repeatable; defaults to every model of the minimal-model table")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    output(p)

    p = sub.add_parser("bound", help="naive conductor bound N(r)")
    p.add_argument("r", type=int, nargs="+")
    output(p)

    p = sub.add_parser("verify", help="run every invariant suite on one model")
    source(p)
    output(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--max-den", type=int, default=4)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except RCFTError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _dispatch(args):
    cmd = args.command
    if cmd == "table":
        report, ok = table_report(args.model or TABLE_MODELS, args.budget)
    elif cmd == "bound":
        report, ok = bound_report(args.r)
    elif cmd == "verify":
        md, src = load_model(args, validate=False)
        report, ok = verify_report(md, src, args.budget, args.max_den)
    elif cmd == "analyze":
        md, src = load_model(args, validate=False)
        report, ok = analyze_report(md, src)
        for c in report["axioms"]:
            if not c["ok"]:
                print(f"error: AxiomViolation: {c['name']} (witness {c['witness']})", file=sys.stderr)
        if args.save:
            mdmod.save(md, args.save)
    else:
        md, src = load_model(args)
        if cmd == "galois":
            report, ok = galois_report(md, src)
        elif cmd == "lambda-check":
            report, ok = lambda_report(md, src, args.max_den, args.max_l)
        else:
            report, ok = kernel_report(md, src, args.budget, args.emit_generators)
            if args.json:
                emit(report, "json", args.json)
    emit(report, args.format, args.output)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
