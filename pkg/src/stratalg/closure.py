"""Is F(Δ) closed under cokernels of monomorphisms?

Three tools: the exact test for quasi-hereditary algebras, a bounded
search over monomorphisms Δ_λ -> P into projectives, and containment of
standard families between two orders.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraTable, directedness, find_cycle, ordinary_quiver, rebuild
from .errors import BudgetExceeded, EquivalenceViolation, NotDirected, PreconditionViolated
from .linalg import GF, Field, Matrix, Subspace, rank
from .modules import Rep, direct_sum, hom_space, projective_module, quotient
from .stratification import (FiltrationResult, check_order, greedy_filtration, is_quasi_hereditary,
                             is_standardly_stratified, standard_modules)

EXACT_QH = "exact-qh"
BOUNDED = "bounded-search"
NO_COUNTEREXAMPLE = "no-counterexample-up-to-bound"
DEFAULT_BUDGET = 200000


@dataclass(frozen=True)
class Counterexample:
    vertex: str
    multiplicities: dict
    coefficients: tuple
    hom: Matrix
    cokernel: Rep
    membership: FiltrationResult

    def cokernel_dims(self) -> dict:
        return self.cokernel.dim_vector()


@dataclass(frozen=True)
class ClosureVerdict:
    """``closed`` is True/False, or NO_COUNTEREXAMPLE for an exhausted bounded search."""

    mode: str
    order: tuple
    closed: object
    counterexample: Counterexample | None = None
    field: str = "Q"
    stats: dict = dc_field(default_factory=dict)


def qh_closure_criterion(t: AlgebraTable, order) -> ClosureVerdict:
    """Exact answer for quasi-hereditary algebras: acyclic ordinary quiver and simple standards."""
    order = check_order(t, order)
    if not is_quasi_hereditary(t, order):
        raise PreconditionViolated(f"not quasi-hereditary for {','.join(order)}")
    quiver_edges = ordinary_quiver(t)
    acyclic = find_cycle(t.vertices, quiver_edges.keys()) is None
    simple = all(d == 1 for d in standard_modules(t, order).dims().values())
    return ClosureVerdict(EXACT_QH, order, acyclic and simple, None, str(t.field),
                          {"ordinary_quiver_acyclic": acyclic, "standards_simple": simple})


@dataclass(frozen=True)
class SearchBounds:
    """``prime`` selects exhaustive search over F_p; ``samples`` random homs per target over Q."""

    prime: int | None = 2
    caps: dict | None = None
    budget: int = DEFAULT_BUDGET
    samples: int | None = None
    seed: int = 0


def _rref_matrices(F: Field, k: int, h: int):
    """All full-rank k x h matrices in reduced row echelon form over a finite field."""
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(h), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, h) if c not in pivots]
        for values in itertools.product(F.elements(), repeat=len(free)):
            rows = [[0] * h for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            yield tuple(tuple(r) for r in rows)


def _count_rref(p: int, k: int, h: int) -> int:
    # Gaussian binomial coefficient [h choose k]_p
    num = den = 1
    for i in range(k):
        num *= p ** (h - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _targets(t: AlgebraTable, caps: dict):
    """Multiplicity vectors ordered by total dimension, then lexicographically."""
    ranges = [range(caps[v] + 1) for v in t.vertices]
    vecs = [k for k in itertools.product(*ranges) if any(k)]
    return sorted(vecs, key=lambda k: (sum(n * t.projective_dim(v) for n, v in zip(k, t.vertices)), k))


def _assemble(F: Field, delta: Rep, blocks, homs, P_parts, incl, total_dim):
    """Global matrix of Δ -> ⊕ copies, copy c using coefficient row ``blocks[c]`` over ``homs[c]``."""
    rows = [[F.zero] * delta.dim for _ in range(total_dim)]
    for inc, coeffs, H in zip(incl, blocks, homs):
        for c, h in zip(coeffs, H):
            if not c:
                continue
            img = inc @ h.scaled(c)
            for i in range(total_dim):
                r = img.rows[i]
                for j in range(delta.dim):
                    if r[j]:
                        rows[i][j] = F.norm(rows[i][j] + r[j])
    return Matrix.from_rows(F, rows, delta.dim)


def _search_field_table(t: AlgebraTable, bounds: SearchBounds) -> AlgebraTable:
    if bounds.prime is None:
        if t.field.is_finite:
            raise PreconditionViolated("sampling mode runs over Q")
        return t
    if t.field.characteristic == bounds.prime:
        return t
    if t.field.is_finite:
        raise PreconditionViolated(f"table is over {t.field}, search asked for GF({bounds.prime})")
    return rebuild(t, GF(bounds.prime))


def default_caps(t: AlgebraTable, order, lam: str) -> dict:
    delta = standard_modules(t, order)[lam].module
    return {mu: len(hom_space(delta, projective_module(t, mu))) for mu in t.vertices}


def bounded_mono_search(t: AlgebraTable, order, bounds: SearchBounds = SearchBounds()) -> ClosureVerdict:
    """Search monomorphisms Δ_λ -> ⊕ P_μ^{k_μ} whose cokernel leaves F(Δ).

    Over F_p every coefficient choice is enumerated up to the action of
    GL_k on each block P_μ^k, which does not change the cokernel: each block
    of coefficients is a full-rank matrix in reduced echelon form.  Zero or
    dependent components would split off a summand P_μ, which lies in F(Δ),
    so those cases are covered by smaller targets.
    """
    order = check_order(t, order)
    tp = _search_field_table(t, bounds)
    if not is_standardly_stratified(tp, order):
        raise PreconditionViolated(f"not standardly stratified for {','.join(order)}")
    F = tp.field
    fam = standard_modules(tp, order)
    rng = random.Random(bounds.seed)
    stats = {"targets": 0, "homs": 0, "monomorphisms": 0}
    spent = 0
    for lam in order:
        delta = fam[lam].module
        if delta.dim == 0:
            continue
        H = {mu: hom_space(delta, projective_module(tp, mu)) for mu in tp.vertices}
        caps = {mu: len(H[mu]) for mu in tp.vertices}
        if bounds.caps:
            caps.update({mu: min(c, caps[mu]) if bounds.prime else c for mu, c in bounds.caps.items()
                         if mu in caps})
        for kvec in _targets(tp, caps):
            mult = dict(zip(tp.vertices, kvec))
            if bounds.prime is not None and any(k > len(H[mu]) for mu, k in mult.items()):
                continue
            stats["targets"] += 1
            copies = [mu for mu in tp.vertices for _ in range(mult[mu])]
            P, incl = direct_sum([projective_module(tp, mu) for mu in copies], tp)
            homs = [H[mu] for mu in copies]
            if bounds.prime is not None:
                size = 1
                for mu in tp.vertices:
                    size *= _count_rref(F.characteristic, mult[mu], len(H[mu]))
                if spent + size > bounds.budget:
                    raise BudgetExceeded(f"hom enumeration budget {bounds.budget} exhausted",
                                         frontier={"vertex": lam, "multiplicities": mult, "spent": spent})
                spent += size
                per_vertex = [list(_rref_matrices(F, mult[mu], len(H[mu]))) for mu in tp.vertices]
                choices = (tuple(row for block in combo for row in block)
                           for combo in itertools.product(*per_vertex))
            else:
                n = bounds.samples or 20
                choices = (tuple(tuple(F(rng.randint(-3, 3)) for _ in h) for h in homs) for _ in range(n))
            for blocks in choices:
                stats["homs"] += 1
                f = _assemble(F, delta, blocks, homs, None, incl, P.dim)
                if rank(f) != delta.dim:
                    continue
                stats["monomorphisms"] += 1
                image = Subspace.span(F, P.dim, f.columns())
                coker = quotient(P, image)[0]
                res = greedy_filtration(tp, order, coker)
                if not res.member:
                    ce = Counterexample(lam, mult, blocks, f, coker, res)
                    _reverify(tp, order, delta, P, ce)
                    return ClosureVerdict(BOUNDED, order, False, ce, str(F), stats)
    return ClosureVerdict(BOUNDED, order, NO_COUNTEREXAMPLE, None, str(F), stats)


def _reverify(t: AlgebraTable, order, delta: Rep, P: Rep, ce: Counterexample):
    """Recheck a counterexample from scratch before reporting it."""
    f = ce.hom
    ok = rank(f) == delta.dim
    # module map: f intertwines every arrow action
    for a in t.arrows:
        if P.global_arrow(a.name) @ f != f @ delta.global_arrow(a.name):
            ok = False
    ok = ok and ce.cokernel.dim == P.dim - delta.dim
    ok = ok and not greedy_filtration(t, order, ce.cokernel).member
    if not ok:
        raise EquivalenceViolation("counterexample failed re-verification", ce)


def containment_check(t: AlgebraTable, ord_closed, ord_other) -> bool:
    """Is F(Δ for ord_other) inside F(Δ for ord_closed)?  Tested on the standard modules of ord_other."""
    ord_closed, ord_other = check_order(t, ord_closed), check_order(t, ord_other)
    for o in (ord_closed, ord_other):
        if not is_standardly_stratified(t, o):
            raise PreconditionViolated(f"not standardly stratified for {','.join(o)}")
    other = standard_modules(t, ord_other)
    return all(greedy_filtration(t, ord_closed, s.module).member for s in other.standards.values())


@dataclass(frozen=True)
class DirectedSpotcheck:
    order: tuple
    verdicts: tuple[ClosureVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.closed is not False for v in self.verdicts)


def directed_order_closure_spotcheck(t: AlgebraTable, primes=(2,), raise_on_violation: bool = True) -> DirectedSpotcheck:
    """For a directed category, its order must give a cokernel-closed F(Δ); search for a violation."""
    d = directedness(t)
    if not d.directed:
        raise NotDirected(f"category is not directed (cycle {'→'.join(d.cycle)})")
    order = d.linear_order()
    if not is_standardly_stratified(t, order):
        raise PreconditionViolated(f"not standardly stratified for the directed order {','.join(order)}")
    verdicts = tuple(bounded_mono_search(t, order, SearchBounds(prime=p)) for p in primes)
    rep = DirectedSpotcheck(order, verdicts)
    if raise_on_violation and not rep.ok:
        raise EquivalenceViolation("a directed order produced a cokernel outside F(Δ)", rep)
    return rep
