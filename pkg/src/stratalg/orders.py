"""Analyses over all linear orders, and the search for candidate orders 𝓛."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import permutations

from .algebra import AlgebraTable, directedness, quotient_by_idempotent
from .errors import BudgetExceeded, EquivalenceViolation
from .modules import (is_projective, off_diagonal_module, pd_at_most, projective, quotient, trace,
                      trace_subspace)
from .stratification import (Order, is_properly_stratified, is_standardly_stratified, standard_modules,
                             trace_decomposition)

MAX_SCAN_VERTICES = 8


def _check_budget(t: AlgebraTable, max_vertices: int):
    if len(t.vertices) > max_vertices:
        raise BudgetExceeded(f"{len(t.vertices)}! orders exceed the scan budget of {max_vertices} vertices",
                             frontier={"vertices": len(t.vertices)})


def scan_orders(t: AlgebraTable) -> list[Order]:
    """All linear orders, lexicographic on vertex names."""
    return list(permutations(sorted(t.vertices)))


@dataclass(frozen=True)
class OrderVerdict:
    order: Order
    standardly_stratified: bool
    properly_stratified: bool | None = None


@dataclass(frozen=True)
class AllOrdersReport:
    verdicts: tuple[OrderVerdict, ...]
    ss_all_orders: bool
    properly_all_orders: bool | None

    def ss_orders(self) -> list[Order]:
        return [v.order for v in self.verdicts if v.standardly_stratified]


def all_orders_scan(t: AlgebraTable, properly: bool = False,
                    max_vertices: int = MAX_SCAN_VERTICES) -> AllOrdersReport:
    _check_budget(t, max_vertices)
    verdicts = []
    for order in scan_orders(t):
        ss = is_standardly_stratified(t, order)
        ps = (ss and is_properly_stratified(t, order)) if properly else None
        verdicts.append(OrderVerdict(order, ss, ps))
    return AllOrdersReport(tuple(verdicts), all(v.standardly_stratified for v in verdicts),
                           all(v.properly_stratified for v in verdicts) if properly else None)


@dataclass(frozen=True)
class TheoremOneCheck:
    """The four conditions, each computed by its own route.

    cond1: standardly stratified for every linear order (brute force);
    cond2: directed and J projective as a left module;
    cond3: every trace tr_{P_λ}(P_μ) projective;
    cond4: pd Δ_λ <= 1 for every λ and every linear order.
    """

    cond1_bruteforce: bool
    cond2_directed_and_J_projective: bool
    cond3_all_traces_projective: bool
    cond4_pd_bound: bool
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def values(self) -> tuple[bool, bool, bool, bool]:
        return (self.cond1_bruteforce, self.cond2_directed_and_J_projective,
                self.cond3_all_traces_projective, self.cond4_pd_bound)

    @property
    def agree(self) -> bool:
        return len(set(self.values)) == 1


def _cond2(t: AlgebraTable) -> tuple[bool, object]:
    d = directedness(t)
    if not d.directed:
        return False, {"cycle": list(d.cycle)}
    J, _ = off_diagonal_module(t)
    if is_projective(J):
        return True, None
    return False, {"J_dims": J.dim_vector()}


def _cond3(t: AlgebraTable) -> tuple[bool, object]:
    for lam in t.vertices:
        for mu in t.vertices:
            if not is_projective(trace(projective(t, mu).module, lam)):
                return False, {"trace_of": lam, "in": mu}
    return True, None


def _cond4(t: AlgebraTable) -> tuple[bool, object]:
    # Δ_λ only depends on the set of vertices above λ, so test each (λ, set) once.
    seen = {}
    for order in scan_orders(t):
        for i, lam in enumerate(order):
            key = (lam, frozenset(order[:i]))
            if key not in seen:
                P = projective(t, lam).module
                delta = quotient(P, trace_subspace(P, order[:i]))[0] if i else P
                seen[key] = pd_at_most(delta, 1)
            if not seen[key]:
                return False, {"order": list(order), "vertex": lam}
    return True, None


def theorem01_check(t: AlgebraTable, raise_on_violation: bool = True,
                    max_vertices: int = MAX_SCAN_VERTICES) -> TheoremOneCheck:
    _check_budget(t, max_vertices)
    scan = all_orders_scan(t, max_vertices=max_vertices)
    c1 = scan.ss_all_orders
    w1 = None if c1 else {"order": list(next(o for o in scan.verdicts if not o.standardly_stratified).order)}
    c2, w2 = _cond2(t)
    c3, w3 = _cond3(t)
    c4, w4 = _cond4(t)
    witnesses = {k: w for k, w in (("cond1", w1), ("cond2", w2), ("cond3", w3), ("cond4", w4)) if w is not None}
    res = TheoremOneCheck(c1, c2, c3, c4, witnesses)
    if raise_on_violation and not res.agree:
        raise EquivalenceViolation(f"the four equivalent conditions disagree: {res.values}", res)
    return res


@dataclass(frozen=True)
class OrderStep:
    """Diagnostics at one node of the search: ``chain`` is the prefix chosen so far."""

    chain: Order
    O: tuple[str, ...]
    relation: tuple[tuple[str, str], ...]
    maximal: tuple[str, ...]


@dataclass(frozen=True)
class OrderSearchResult:
    tilde_L: tuple[Order, ...]
    L: tuple[Order, ...]
    steps: tuple[OrderStep, ...]
    alarms: tuple[str, ...] = ()


def candidate_set(t: AlgebraTable) -> tuple[str, ...]:
    """O_1: vertices λ with tr_{P_λ}(P_μ) ≅ P_λ^m for every μ."""
    return tuple(lam for lam in t.vertices
                 if all(m is not None for m in trace_decomposition(t, lam).values()))


def prime_relation(t: AlgebraTable, O: tuple[str, ...]) -> tuple[tuple[str, str], ...]:
    """Strict pairs (λ, μ) with λ ≤′ μ, i.e. tr_{P_μ}(P_λ) ≠ 0, for λ ≠ μ in O."""
    out = []
    for lam in O:
        P = projective(t, lam).module
        for mu in O:
            if lam != mu and trace_subspace(P, mu).dim:
                out.append((lam, mu))
    return tuple(out)


def _relation_alarms(O, rel, chain) -> list[str]:
    pairs = set(rel)
    alarms = []
    where = ",".join(chain) or "(start)"
    for a, b in pairs:
        if (b, a) in pairs:
            alarms.append(f"after {where}: ≤′ not antisymmetric on {a},{b}")
    for a, b in pairs:
        for c, d in pairs:
            if b == c and a != d and (a, d) not in pairs:
                alarms.append(f"after {where}: ≤′ not transitive on {a}≤′{b}≤′{d}")
    return sorted(set(alarms))


def orders_algorithm(t: AlgebraTable, strict: bool = False) -> OrderSearchResult:
    """Depth-first search over every ≤′-maximal choice.

    Every terminated chain goes into 𝓛̃; the chains using all vertices form 𝓛.
    With ``strict`` an ill-behaved ≤′ raises instead of being reported.
    """
    n = len(t.vertices)
    tilde, steps, alarms = [], [], []

    def visit(cur: AlgebraTable, chain: Order):
        O = candidate_set(cur)
        rel = prime_relation(cur, O)
        alarms.extend(_relation_alarms(O, rel, chain))
        maximal = tuple(l for l in O if not any(a == l for a, _ in rel))
        steps.append(OrderStep(chain, O, rel, maximal))
        if not maximal:
            tilde.append(chain)
            return
        for lam in maximal:
            visit(quotient_by_idempotent(cur, lam)[0], chain + (lam,))

    visit(t, ())
    if strict and alarms:
        raise EquivalenceViolation("the relation ≤′ is not a partial order", alarms)
    tilde_sorted = tuple(sorted(set(tilde)))
    return OrderSearchResult(tilde_sorted, tuple(c for c in tilde_sorted if len(c) == n),
                             tuple(steps), tuple(alarms))


@dataclass(frozen=True)
class LPropertiesReport:
    all_L_standardly_stratified: bool
    closed_orders_in_L: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_L_properties(t: AlgebraTable, res: OrderSearchResult, closed_orders=(),
                        raise_on_violation: bool = True) -> LPropertiesReport:
    """Every order in 𝓛 is SS, and every SS order certified closed lies in 𝓛."""
    failures = []
    for order in res.L:
        if not is_standardly_stratified(t, order):
            failures.append(f"{','.join(order)} is in 𝓛 but not standardly stratified")
    n_ss = len(failures)
    for order in closed_orders:
        order = tuple(order)
        if is_standardly_stratified(t, order) and order not in res.L:
            failures.append(f"{','.join(order)} is closed under cokernels but missing from 𝓛")
    report = LPropertiesReport(n_ss == 0, len(failures) == n_ss, tuple(failures))
    if raise_on_violation and failures:
        raise EquivalenceViolation("; ".join(failures), report)
    return report


def same_standard_dims(t: AlgebraTable, orders) -> bool:
    dims = {tuple(sorted(standard_modules(t, o).dims().items())) for o in orders}
    return len(dims) <= 1
