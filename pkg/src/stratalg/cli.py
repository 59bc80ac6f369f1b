"""Command line interface: ``stratalg <command> <algebra> [options]``.

``<algebra>`` is a JSON description file or a bundled fixture name such as
``s4_2`` or ``fixtures/s4_2``.  Orders are comma-separated, maximal first.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .closure import NO_COUNTEREXAMPLE, SearchBounds, bounded_mono_search, qh_closure_criterion
from .errors import EquivalenceViolation, ParseError, StratAlgError
from .graded import associated_graded, bimodule_quiver, graded_equivalence_check, tensor_algebra_check
from .io import load
from .linalg import GF
from .modules import loewy_layers, projective_module
from .orders import all_orders_scan, orders_algorithm, theorem01_check
from .report import build_report, closure_dict, order_str
from .stratification import check_order, is_quasi_hereditary, opposite_table, stratify


def parse_order(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def parse_caps(text: str) -> dict[str, int]:
    caps = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise ParseError(f"caps must look like x=1,y=2 (got {item!r})", "--caps")
        caps[name.strip()] = int(value)
    return caps


def _layers_str(layers) -> str:
    return " ; ".join(",".join(f"{v}" if n == 1 else f"{v}^{n}" for v, n in layer.items()) for layer in layers)


def _dims_str(d: dict) -> str:
    return " ".join(f"{k}:{v}" for k, v in d.items())


def _table(args):
    desc = load(args.algebra)
    field = GF(args.field_prime) if getattr(args, "field_prime", None) else None
    return desc, desc.build(field)


def cmd_basis(args, out):
    _, t = _table(args)
    print(f"field {t.field}, dim A = {t.dim}, nilpotency bound {t.nilpotency_bound}", file=out)
    for b in t.basis:
        print(f"  {b.label}: {b.source} -> {b.target}", file=out)
    print("blocks dim e_to A e_from:", file=out)
    for l in t.vertices:
        row = " ".join(f"{m}:{t.block_dim(m, l)}" for m in t.vertices)
        print(f"  from {l}: {row}", file=out)
    return 0


def cmd_projectives(args, out):
    _, t = _table(args)
    side = "right" if args.right else "left"
    if args.right:
        t = opposite_table(t)
    for v in t.vertices:
        P = projective_module(t, v)
        print(f"{side} P_{v}: dim {P.dim}  layers {_layers_str(loewy_layers(P))}", file=out)
    return 0


def cmd_stratify(args, out):
    _, t = _table(args)
    order = check_order(t, parse_order(args.order))
    v = stratify(t, order, proper=args.proper, qh=args.qh)
    print(f"order {order_str(order) or '(empty)'}", file=out)
    print(f"standardly stratified: {v.standardly_stratified}", file=out)
    if v.properly_stratified is not None:
        print(f"properly stratified: {v.properly_stratified}", file=out)
    if v.quasi_hereditary is not None:
        print(f"quasi-hereditary: {v.quasi_hereditary}", file=out)
    print(f"standard dims: {_dims_str(v.standard_dims)}", file=out)
    for step in v.steps:
        ms = " ".join(f"{mu}:{'-' if m is None else m}" for mu, m in step.multiplicities.items())
        print(f"  remove {step.vertex}: tr(P_{step.vertex}, P_mu) = P_{step.vertex}^m with m = {ms}", file=out)
    return 0


def cmd_all_orders(args, out):
    _, t = _table(args)
    r = all_orders_scan(t, properly=args.properly)
    for v in r.verdicts:
        extra = "" if v.properly_stratified is None else f" properly={v.properly_stratified}"
        print(f"{order_str(v.order) or '(empty)'}: standardly={v.standardly_stratified}{extra}", file=out)
    print(f"ss_all_orders = {r.ss_all_orders}", file=out)
    if args.properly:
        print(f"properly_all_orders = {r.properly_all_orders}", file=out)
    return 0


def cmd_check_theorem1(args, out):
    _, t = _table(args)
    c = theorem01_check(t, raise_on_violation=False)
    names = ("(1) stratified for all orders", "(2) directed and J projective",
             "(3) all traces projective", "(4) pd of standards <= 1")
    for name, value in zip(names, c.values):
        print(f"{name}: {value}", file=out)
    for k, w in c.witnesses.items():
        print(f"  {k} witness: {json.dumps(w, ensure_ascii=False)}", file=out)
    if not c.agree:
        raise EquivalenceViolation(f"the four conditions disagree: {c.values}", c)
    print("all four agree", file=out)
    return 0


def cmd_orders_algorithm(args, out):
    _, t = _table(args)
    r = orders_algorithm(t)
    for s in r.steps:
        rel = " ".join(f"{a}<'{b}" for a, b in s.relation) or "none"
        print(f"after [{order_str(s.chain)}]: O = {{{','.join(s.O)}}}  relations {rel}  maximal {{{','.join(s.maximal)}}}",
              file=out)
    print(f"L~ ({len(r.tilde_L)}): " + "; ".join(order_str(o) or "(empty)" for o in r.tilde_L), file=out)
    print(f"L ({len(r.L)}):", file=out)
    for o in r.L:
        print(f"  {' > '.join(o) or '(empty)'}", file=out)
    for a in r.alarms:
        print(f"ALARM: {a}", file=out)
    if r.alarms:
        raise EquivalenceViolation("ill-defined relation in the order search", r.alarms)
    return 0


def cmd_graded(args, out):
    _, t = _table(args)
    g = associated_graded(t)
    print(f"graded dims: {tuple(g.dims())}", file=out)
    for i in range(g.top_degree + 1):
        print(f"  degree {i}: " + ", ".join(g.table.basis[k].label for k in g.component(i)), file=out)
    tv = tensor_algebra_check(g)
    print(f"tensor algebra check: left={tv.left} right={tv.right}", file=out)
    bq = bimodule_quiver(g)
    for a in bq.arrows:
        print(f"  {a.source} -> {a.target}: dim {a.dim} left_free={a.left_free} right_free={a.right_free}", file=out)
    print(f"left regular: {bq.left_regular}; regular: {bq.regular}", file=out)
    eq = graded_equivalence_check(t, raise_on_violation=False)
    print(f"graded equivalence check: {'ok' if eq.ok else 'FAILED'}", file=out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(bq.to_dot())
    if not eq.ok:
        raise EquivalenceViolation("graded and ungraded verdicts disagree", eq)
    return 0


def _print_closure(v, out):
    d = closure_dict(v)
    print(f"order {d['order']} [{d['mode']} over {d['field']}]: closed = {d['closed']}", file=out)
    if d.get("stats"):
        print("  " + _dims_str(d["stats"]), file=out)
    ce = d.get("counterexample")
    if ce:
        print(f"  counterexample: Δ_{ce['vertex']} -> P with multiplicities {_dims_str(ce['multiplicities'])}", file=out)
        print(f"  cokernel dims {_dims_str(ce['cokernel_dims'])}; filtration fails at {ce['failed_at']}", file=out)


def cmd_cokernel_closure(args, out):
    _, t = _table(args)
    if args.order is None:
        orders = orders_algorithm(t).L
        print(f"checking the {len(orders)} order(s) from the order search", file=out)
    else:
        orders = (check_order(t, parse_order(args.order)),)
    caps = parse_caps(args.caps) if args.caps else None
    bounds = SearchBounds(prime=None if args.samples else args.prime, caps=caps,
                          samples=args.samples, seed=args.seed, budget=args.budget)
    for o in orders:
        if is_quasi_hereditary(t, o):
            _print_closure(qh_closure_criterion(t, o), out)
        v = bounded_mono_search(t, o, bounds)
        _print_closure(v, out)
        if v.closed == NO_COUNTEREXAMPLE and bounds.prime:
            print("  (no counterexample over this prime field within the bounds; not a proof)", file=out)
    return 0


def cmd_report(args, out):
    desc, t = _table(args)
    rep = build_report(desc, t, prime=args.prime)
    text = rep.to_json()
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"ss_all_orders={rep.ss_all_orders} properly_all_orders={rep.properly_all_orders} "
              f"L={len(rep.order_search['L'])} written to {args.json}", file=out)
    else:
        out.write(text)
    if not rep.four_conditions["agree"]:
        raise EquivalenceViolation("the four conditions disagree", rep.four_conditions)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stratalg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("algebra", help="description file or fixture name")
        sp.add_argument("--field-prime", type=int, default=None, metavar="P",
                        help="rebuild the algebra over GF(P) instead of its declared field")
        sp.set_defaults(func=func)
        return sp

    add("basis", cmd_basis, "basis paths and block dimensions")
    sp = add("projectives", cmd_projectives, "indecomposable projectives and their Loewy layers")
    sp.add_argument("--right", action="store_true", help="right projectives e_v A")
    sp = add("stratify", cmd_stratify, "verdicts for one linear order")
    sp.add_argument("--order", required=True, nargs="?", const="", help="comma-separated, maximal first")
    sp.add_argument("--proper", action="store_true")
    sp.add_argument("--qh", action="store_true")
    sp = add("all-orders", cmd_all_orders, "scan every linear order")
    sp.add_argument("--properly", action="store_true")
    add("check-theorem1", cmd_check_theorem1, "four independent routes to 'stratified for all orders'")
    add("orders-algorithm", cmd_orders_algorithm, "candidate orders L and the search trace")
    sp = add("graded", cmd_graded, "associated graded algebra and tensor-algebra test")
    sp.add_argument("--dot", metavar="FILE", help="write the bimodule quiver in DOT format")
    sp = add("cokernel-closure", cmd_cokernel_closure, "search for cokernels of monomorphisms outside F(Δ)")
    sp.add_argument("--order", default=None, help="default: every order found by the order search")
    sp.add_argument("--prime", type=int, default=2)
    sp.add_argument("--caps", default=None, help="per-vertex multiplicity caps, e.g. x=1,y=2")
    sp.add_argument("--samples", type=int, default=None, help="random homs per target over Q instead")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=200000)
    sp = add("report", cmd_report, "full JSON analysis")
    sp.add_argument("--json", metavar="FILE", help="write the report here instead of stdout")
    sp.add_argument("--prime", type=int, default=2)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except StratAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # e.g. an invalid prime passed on the command line
        print(f"error: {exc}", file=sys.stderr)
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
