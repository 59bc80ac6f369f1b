"""Machine-readable analysis reports (JSON, versioned, byte-stable)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

from .algebra import AlgebraTable, directedness
from .closure import NO_COUNTEREXAMPLE, ClosureVerdict, SearchBounds, bounded_mono_search, qh_closure_criterion
from .errors import BudgetExceeded, NotDirected, StratAlgError
from .graded import associated_graded, bimodule_quiver, graded_equivalence_check, tensor_algebra_check
from .io import AlgebraDescription, field_to_json
from .modules import loewy_layers, projective_module
from .orders import OrderSearchResult, TheoremOneCheck, all_orders_scan, orders_algorithm, theorem01_check
from .stratification import is_quasi_hereditary, opposite_table, standard_modules

SCHEMA_VERSION = 1


def order_str(order) -> str:
    return ",".join(order)


def algebra_summary(t: AlgebraTable, name: str | None = None) -> dict:
    op = opposite_table(t)
    return {
        "name": name,
        "field": field_to_json(t.field),
        "vertices": list(t.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in t.arrows],
        "dim": t.dim,
        "nilpotency_bound": t.nilpotency_bound,
        "basis": [{"label": b.label, "from": b.source, "to": b.target} for b in t.basis],
        "blocks": [{"from": l, "to": m, "dim": t.block_dim(m, l)}
                   for l in t.vertices for m in t.vertices if t.block_dim(m, l)],
        "projective_dims": {v: t.projective_dim(v) for v in t.vertices},
        "right_projective_dims": {v: op.projective_dim(v) for v in t.vertices},
        "loewy_layers": {v: loewy_layers(projective_module(t, v)) for v in t.vertices},
    }


def directedness_dict(t: AlgebraTable) -> dict:
    d = directedness(t)
    out = {"directed": d.directed, "edges": [list(e) for e in d.edges]}
    if d.directed:
        out["order"] = list(d.linear_order())
    else:
        out["cycle"] = list(d.cycle)
    return out


def four_conditions_dict(c: TheoremOneCheck) -> dict:
    return {"cond1_bruteforce": c.cond1_bruteforce,
            "cond2_directed_and_J_projective": c.cond2_directed_and_J_projective,
            "cond3_all_traces_projective": c.cond3_all_traces_projective,
            "cond4_pd_bound": c.cond4_pd_bound,
            "agree": c.agree,
            "witnesses": c.witnesses}


def order_search_dict(r: OrderSearchResult) -> dict:
    return {"L": [order_str(o) for o in r.L],
            "tilde_L": [order_str(o) for o in r.tilde_L],
            "steps": [{"chain": order_str(s.chain), "O": list(s.O),
                       "below": [list(p) for p in s.relation], "maximal": list(s.maximal)} for s in r.steps],
            "alarms": list(r.alarms)}


def closure_dict(v: ClosureVerdict) -> dict:
    out = {"order": order_str(v.order), "mode": v.mode, "field": v.field,
           "closed": v.closed if v.closed is not NO_COUNTEREXAMPLE else NO_COUNTEREXAMPLE,
           "stats": dict(v.stats)}
    ce = v.counterexample
    if ce is not None:
        out["counterexample"] = {
            "vertex": ce.vertex,
            "multiplicities": ce.multiplicities,
            "coefficients": [[str(x) for x in row] for row in ce.coefficients],
            "cokernel_dims": ce.cokernel_dims(),
            "failed_at": ce.membership.failed_at,
        }
    return out


def graded_dict(t: AlgebraTable) -> dict | None:
    try:
        g = associated_graded(t)
    except NotDirected:
        return None
    tv = tensor_algebra_check(g)
    bq = bimodule_quiver(g)
    eq = graded_equivalence_check(t, raise_on_violation=False)
    return {"dims": list(g.dims()),
            "basis": [{"label": b.label, "degree": d} for b, d in zip(g.table.basis, g.degrees)],
            "tensor": {"left": tv.left, "right": tv.right},
            "bimodule_quiver": {"local_dims": bq.local_dims,
                                "arrows": [asdict(a) for a in bq.arrows],
                                "left_regular": bq.left_regular, "regular": bq.regular},
            "graded_equivalence_ok": eq.ok}


@dataclass(frozen=True)
class AnalysisReport:
    schema_version: int
    algebra: dict
    directedness: dict
    orders: list
    ss_all_orders: bool
    properly_all_orders: bool
    order_search: dict
    four_conditions: dict
    graded: dict | None
    closure: list

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(**{f.name: d[f.name] for f in fields(cls)})

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def build_report(desc: AlgebraDescription, t: AlgebraTable | None = None, prime: int = 2) -> AnalysisReport:
    t = t or desc.build()
    scan = all_orders_scan(t, properly=True)
    orders = []
    for v in scan.verdicts:
        entry = {"order": order_str(v.order), "standardly_stratified": v.standardly_stratified,
                 "properly_stratified": v.properly_stratified,
                 "quasi_hereditary": is_quasi_hereditary(t, v.order),
                 "standard_dims": standard_modules(t, v.order).dims()}
        orders.append(entry)
    search = orders_algorithm(t)
    closure = []
    for o in search.L:
        try:
            closure.append(closure_dict(bounded_mono_search(t, o, SearchBounds(prime=prime))))
        except BudgetExceeded as exc:
            closure.append({"order": order_str(o), "mode": "bounded-search", "error": str(exc)})
        if is_quasi_hereditary(t, o):
            closure.append(closure_dict(qh_closure_criterion(t, o)))
    return AnalysisReport(SCHEMA_VERSION, algebra_summary(t, desc.name), directedness_dict(t), orders,
                          scan.ss_all_orders, scan.properly_all_orders, order_search_dict(search),
                          four_conditions_dict(theorem01_check(t, raise_on_violation=False)), graded_dict(t), closure)


__all__ = ["AnalysisReport", "SCHEMA_VERSION", "build_report", "StratAlgError"]
