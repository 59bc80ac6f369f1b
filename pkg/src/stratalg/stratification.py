"""Standard modules and stratification verdicts for one linear order.

Orders are tuples of vertices listed from maximal to minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraTable, opposite, quotient_by_idempotent
from .errors import PreconditionViolated
from .linalg import Matrix, Subspace
from .modules import (ProjectiveData, Rep, end_dim, projective, projective_power_multiplicity,
                      quotient, restrict_to_quotient, submodule, trace_subspace)

Order = tuple[str, ...]


def check_order(t: AlgebraTable, order) -> Order:
    order = tuple(order)
    if sorted(order) != sorted(t.vertices) or len(set(order)) != len(order):
        raise PreconditionViolated(f"{','.join(order) or '(empty)'} is not a linear order on {','.join(t.vertices)}")
    return order


@dataclass(frozen=True)
class StandardModule:
    vertex: str
    module: Rep
    projection: Matrix
    kernel: Subspace
    projective: ProjectiveData

    @property
    def dim(self) -> int:
        return self.module.dim


@dataclass(frozen=True)
class StandardFamily:
    order: Order
    standards: dict

    def __getitem__(self, v: str) -> StandardModule:
        return self.standards[v]

    def dims(self) -> dict[str, int]:
        return {v: self.standards[v].dim for v in self.standards}

    def dims_along_order(self) -> tuple[int, ...]:
        return tuple(self.standards[v].dim for v in self.order)


def standard_modules(t: AlgebraTable, order) -> StandardFamily:
    """Δ_λ = P_λ / Σ_{μ ≻ λ} tr_{P_μ}(P_λ) for each λ."""
    order = check_order(t, order)
    memo_key = ("standards", order)
    if memo_key in t.cache:
        return t.cache[memo_key]
    out = {}
    for i, lam in enumerate(order):
        pd = projective(t, lam)
        K = trace_subspace(pd.module, order[:i]) if i else Subspace.zero(t.field, pd.module.dim)
        delta, proj = quotient(pd.module, K)
        out[lam] = StandardModule(lam, delta, proj, K, pd)
    fam = StandardFamily(order, {v: out[v] for v in t.vertices})
    t.cache[memo_key] = fam
    return fam


@dataclass(frozen=True)
class TraceStep:
    """One reduction step: ``multiplicities[μ]`` is m with tr_{P_λ}(P_μ) ≅ P_λ^m, or None."""

    vertex: str
    multiplicities: dict

    @property
    def ok(self) -> bool:
        return all(m is not None for m in self.multiplicities.values())


@dataclass(frozen=True)
class StratificationVerdict:
    order: Order
    standardly_stratified: bool
    steps: tuple[TraceStep, ...]
    standard_dims: dict
    properly_stratified: bool | None = None
    quasi_hereditary: bool | None = None


def trace_decomposition(t: AlgebraTable, lam: str) -> dict:
    """μ -> m when tr_{P_λ}(P_μ) ≅ P_λ^m, else None."""
    memo_key = ("trace_decomposition", lam)
    if memo_key in t.cache:
        return t.cache[memo_key]
    out = {}
    for mu in t.vertices:
        P = projective(t, mu).module
        T = submodule(P, trace_subspace(P, lam))[0]
        out[mu] = projective_power_multiplicity(T, lam)
    t.cache[memo_key] = out
    return out


def _ss_steps(t: AlgebraTable, order: Order) -> tuple[bool, tuple[TraceStep, ...]]:
    steps = []
    cur = t
    for lam in order:
        step = TraceStep(lam, trace_decomposition(cur, lam))
        steps.append(step)
        if not step.ok:
            return False, tuple(steps)
        cur = quotient_by_idempotent(cur, lam)[0]
    return True, tuple(steps)


def is_standardly_stratified(t: AlgebraTable, order) -> bool:
    order = check_order(t, order)
    return _ss_steps(t, order)[0]


def is_properly_stratified(t: AlgebraTable, order) -> bool:
    return is_standardly_stratified(t, order) and is_standardly_stratified(opposite_table(t), order)


def opposite_table(t: AlgebraTable) -> AlgebraTable:
    if "opposite" not in t.cache:
        t.cache["opposite"] = opposite(t)
    return t.cache["opposite"]


def is_quasi_hereditary(t: AlgebraTable, order) -> bool:
    if not is_standardly_stratified(t, order):
        return False
    fam = standard_modules(t, order)
    return all(end_dim(s.module) == 1 for s in fam.standards.values())


def stratify(t: AlgebraTable, order, proper: bool = False, qh: bool = False) -> StratificationVerdict:
    order = check_order(t, order)
    ss, steps = _ss_steps(t, order)
    dims = standard_modules(t, order).dims()
    return StratificationVerdict(order, ss, steps, dims,
                                 is_properly_stratified(t, order) if proper else None,
                                 is_quasi_hereditary(t, order) if qh else None)


@dataclass(frozen=True)
class FiltrationResult:
    member: bool
    multiplicities: dict
    failed_at: str | None = None

    @property
    def length(self) -> int:
        return sum(self.multiplicities.values())


def greedy_filtration(t: AlgebraTable, order, M: Rep) -> FiltrationResult:
    """Peel off tr_{P_λ}(M) for λ from the top of the order, requiring ≅ P_λ^k each time.

    Sound for any order; complete (decides membership in F(Δ)) when the
    algebra is standardly stratified for ``order``.
    """
    order = check_order(t, order)
    if M.algebra is not t:
        raise PreconditionViolated("module is over a different algebra")
    mults = {}
    cur_alg, cur = t, M
    for lam in order:
        U = trace_subspace(cur, lam)
        T = submodule(cur, U)[0]
        k = projective_power_multiplicity(T, lam)
        if k is None:
            return FiltrationResult(False, mults, lam)
        mults[lam] = k
        Q = quotient(cur, U)[0]
        cur_alg = quotient_by_idempotent(cur_alg, lam)[0]
        cur = restrict_to_quotient(Q, cur_alg)
    return FiltrationResult(True, {v: mults[v] for v in t.vertices})


def filtration_membership(t: AlgebraTable, order, M: Rep, fam: StandardFamily | None = None) -> FiltrationResult:
    if not is_standardly_stratified(t, order):
        raise PreconditionViolated(f"not standardly stratified for {','.join(order)}")
    return greedy_filtration(t, order, M)
