"""The J-adic associated graded algebra and the tensor-algebra criterion.

For a directed algebra, J is spanned by the paths with distinct endpoints,
and J^i/J^{i+1} is spanned by the classes of paths with exactly i
arrows that are not loops.  Those paths, chosen shortlex-first, are the
lifts; the graded algebra reuses the arrows, so every lift is again the
product of the arrows along its word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraTable, Path, directedness, free_over_local, opposite,
                      product_space)
from .errors import EquivalenceViolation, NotDirected
from .linalg import Matrix, Subspace, solve
from .modules import Rep, is_projective, rep_from_global
from .orders import theorem01_check, all_orders_scan


def _non_loop_count(t: AlgebraTable, word) -> int:
    idx = t.arrow_index
    return sum(1 for n in word if t.arrows[idx[n]].source != t.arrows[idx[n]].target)


def _all_paths(t: AlgebraTable, max_len: int) -> list[Path]:
    layer = [Path((), v, v) for v in t.vertices]
    out = list(layer)
    for _ in range(max_len):
        layer = [Path((a.name,) + p.word, p.source, a.target) for p in layer for a in t.arrows if a.source == p.target]
        out.extend(layer)
    vindex = t.vertex_index
    return sorted(out, key=lambda p: (p.length, p.word, vindex[p.source]))


def j_powers(t: AlgebraTable) -> list[Subspace]:
    """[J^0 = A, J, J^2, ..., 0]."""
    F, n = t.field, t.dim
    J = Subspace.span(F, n, [t.unit(k) for k, b in enumerate(t.basis) if b.source != b.target])
    powers = [Subspace.full(F, n), J]
    while powers[-1].dim:
        powers.append(product_space(t, powers[-1], J))
    return powers


@dataclass(frozen=True)
class GradedAlgebra:
    """Ǎ with ``table`` its ungraded multiplication table.

    ``degrees[k]`` is the degree of table basis element k; ``lifts[k]`` is
    its representative in the source algebra.
    """

    source: AlgebraTable
    table: AlgebraTable
    degrees: tuple[int, ...]
    lifts: tuple[tuple, ...]

    @property
    def top_degree(self) -> int:
        return max(self.degrees, default=0)

    def component(self, i: int) -> tuple[int, ...]:
        return tuple(k for k, d in enumerate(self.degrees) if d == i)

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self.component(i)) for i in range(self.top_degree + 1))


def _graded_structure(t: AlgebraTable, powers, lifts_by_deg):
    """Structure constants of Ǎ given lifts per degree."""
    F = t.field
    top = len(lifts_by_deg) - 1
    order = [(d, j) for d in range(top + 1) for j in range(len(lifts_by_deg[d]))]
    pos = {key: k for k, key in enumerate(order)}
    solvers = []
    for d in range(top + 1):
        cols = [v for _, v in lifts_by_deg[d]] + list(powers[d + 1].basis if d + 1 < len(powers) else [])
        solvers.append(Matrix.from_columns(F, cols, t.dim) if cols else None)

    def coords(d, w):
        if d > top or not any(w):
            return ()
        x = solve(solvers[d], w)
        if x is None:
            raise ValueError("element outside the expected filtration layer")
        return tuple((pos[(d, j)], x[j]) for j in range(len(lifts_by_deg[d])) if x[j])

    products = []
    for (d1, j1) in order:
        p1, v1 = lifts_by_deg[d1][j1]
        row = []
        for (d2, j2) in order:
            p2, v2 = lifts_by_deg[d2][j2]
            if p2.target != p1.source:
                row.append(())
            else:
                row.append(coords(d1 + d2, t.multiply(v1, v2)))
        products.append(tuple(row))
    return order, tuple(products), coords


def associated_graded(t: AlgebraTable, perturb: bool = False) -> GradedAlgebra:
    """Ǎ = ⊕ J^i/J^{i+1}.  With ``perturb`` every lift of degree i is moved by an element of J^{i+1}.

    The perturbed variant exists to test that the induced multiplication
    does not depend on the lifts.
    """
    d = directedness(t)
    if not d.directed:
        raise NotDirected(f"category is not directed (cycle {'→'.join(d.cycle)})")
    F = t.field
    powers = j_powers(t)
    top = len(powers) - 2  # J^{top} != 0 = J^{top+1}
    candidates = _all_paths(t, max(t.nilpotency_bound - 1, 0))
    lifts_by_deg = []
    for deg in range(top + 1):
        nxt = powers[deg + 1]
        chosen = []
        span = nxt
        for p in candidates:
            if _non_loop_count(t, p.word) != deg:
                continue
            v = t.word_element(p.word, p.source)
            if not span.contains(v):
                chosen.append((p, v))
                span = span + Subspace.span(F, t.dim, [v])
        if span.dim != powers[deg].dim:
            raise ValueError(f"degree {deg} lifts do not span J^{deg}/J^{deg + 1}")
        lifts_by_deg.append(chosen)
    if perturb:
        lifts_by_deg = [[(p, _perturbed(t, powers, deg, p, v)) for p, v in layer]
                        for deg, layer in enumerate(lifts_by_deg)]

    order, products, coords = _graded_structure(t, powers, lifts_by_deg)
    basis = tuple(lifts_by_deg[dg][j][0] for dg, j in order)
    degrees = tuple(dg for dg, _ in order)
    arrow_elements = []
    for a in t.arrows:
        deg = 0 if a.source == a.target else 1
        el = [F.zero] * len(order)
        for k, c in coords(deg, t.arrow_element(a.name)):
            el[k] = c
        arrow_elements.append(tuple(el))
    table = AlgebraTable(F, t.vertices, t.arrows, basis, products, tuple(arrow_elements),
                         top + 1 if t.dim else 0)
    lifts = tuple(lifts_by_deg[dg][j][1] for dg, j in order)
    return GradedAlgebra(t, table, degrees, lifts)


def _perturbed(t: AlgebraTable, powers, deg, p: Path, v):
    if deg + 1 >= len(powers):
        return v
    block = set(t.block(p.target, p.source))
    for z in powers[deg + 1].basis:
        if any(z) and all(k in block for k, x in enumerate(z) if x):
            return tuple(t.field.norm(a + b) for a, b in zip(v, z))
    return v


def lift_independence_check(t: AlgebraTable) -> bool:
    """Two lift choices give identical graded structure constants."""
    a = associated_graded(t)
    b = associated_graded(t, perturb=True)
    return a.table.products == b.table.products and a.table.arrow_elements == b.table.arrow_elements


def _local_radical(g: GradedAlgebra, v: str) -> list[int]:
    tab = g.table
    return [k for k in tab.block(v, v) if not tab.basis[k].is_trivial]


def tensor_dim(g: GradedAlgebra, i: int, j: int) -> int:
    """dim Ǎ_i ⊗_{Ǎ_0} Ǎ_j, computed as a quotient of the vector-space tensor product."""
    tab, F = g.table, g.table.field
    X, Y = g.component(i), g.component(j)
    pairs = [(p, q) for p in X for q in Y if tab.basis[p].source == tab.basis[q].target]
    index = {pq: n for n, pq in enumerate(pairs)}
    if not pairs:
        return 0
    rows = []
    for p, q in pairs:
        v = tab.basis[p].source
        for a in _local_radical(g, v):
            row = [F.zero] * len(pairs)
            for k, c in tab.products[p][a]:
                row[index[(k, q)]] += c
            for k, c in tab.products[a][q]:
                row[index[(p, k)]] -= c
            rows.append([F.norm(x) for x in row])
    return len(pairs) - Subspace.span(F, len(pairs), rows).dim


def _blocks_free(g: GradedAlgebra, side: str) -> bool:
    tab = g.table
    deg1 = set(g.component(1))
    for m in tab.vertices:
        for l in tab.vertices:
            ks = [k for k in tab.block(m, l) if k in deg1]
            if not ks:
                continue
            base = m if side == "left" else l
            if not free_over_local(tab, base, [tab.unit(k) for k in ks], side):
                return False
    return True


def left_tensor_check(g: GradedAlgebra) -> bool:
    """Ǎ_1 left projective over Ǎ_0 and Ǎ ≅ Ǎ_0[Ǎ_1]."""
    if not _blocks_free(g, "left"):
        return False
    dims = g.dims()
    for i in range(1, g.top_degree + 1):
        nxt = dims[i + 1] if i + 1 < len(dims) else 0
        if tensor_dim(g, 1, i) != nxt:
            return False
    return True


@dataclass(frozen=True)
class TensorVerdict:
    left: bool
    right: bool


def tensor_algebra_check(g: GradedAlgebra) -> TensorVerdict:
    """Left version on Ǎ, right version on the graded algebra of the opposite."""
    right = left_tensor_check(associated_graded(opposite(g.source)))
    return TensorVerdict(left_tensor_check(g), right)


@dataclass(frozen=True)
class GradedEquivalenceReport:
    ss_all_orders: tuple[bool, bool]
    properly_all_orders: tuple[bool, bool]
    tensor: TensorVerdict

    @property
    def ok(self) -> bool:
        a, b = self.ss_all_orders
        c, d = self.properly_all_orders
        return a == b and c == d and self.tensor.left == b and (self.tensor.left and self.tensor.right) == d


def graded_equivalence_check(t: AlgebraTable, raise_on_violation: bool = True) -> GradedEquivalenceReport:
    g = associated_graded(t)
    theorem01_check(t)
    theorem01_check(g.table)
    sa = all_orders_scan(t, properly=True)
    sg = all_orders_scan(g.table, properly=True)
    rep = GradedEquivalenceReport((sa.ss_all_orders, sg.ss_all_orders),
                                  (sa.properly_all_orders, sg.properly_all_orders),
                                  tensor_algebra_check(g))
    if raise_on_violation and not rep.ok:
        raise EquivalenceViolation("graded and ungraded verdicts disagree", rep)
    return rep


@dataclass(frozen=True)
class BimoduleArrow:
    source: str
    target: str
    dim: int
    left_free: bool
    right_free: bool


@dataclass(frozen=True)
class BimoduleQuiver:
    vertices: tuple[str, ...]
    local_dims: dict
    arrows: tuple[BimoduleArrow, ...]

    @property
    def left_regular(self) -> bool:
        return all(a.left_free for a in self.arrows)

    @property
    def regular(self) -> bool:
        return all(a.left_free and a.right_free for a in self.arrows)

    def to_dot(self, name: str = "bimodules") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}" [label="{v} ({self.local_dims[v]})"];')
        for a in self.arrows:
            style = "" if a.left_free and a.right_free else (", style=dashed" if a.left_free else ", style=dotted")
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.dim}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bimodule_quiver(g: GradedAlgebra) -> BimoduleQuiver:
    tab = g.table
    deg0, deg1 = set(g.component(0)), set(g.component(1))
    local_dims = {v: sum(1 for k in tab.block(v, v) if k in deg0) for v in tab.vertices}
    arrows = []
    for v in tab.vertices:
        for w in tab.vertices:
            if v == w:
                continue
            ks = [k for k in tab.block(w, v) if k in deg1]
            if not ks:
                continue
            vecs = [tab.unit(k) for k in ks]
            arrows.append(BimoduleArrow(v, w, len(ks), free_over_local(tab, w, vecs, "left"),
                                        free_over_local(tab, v, vecs, "right")))
    return BimoduleQuiver(tab.vertices, local_dims, tuple(arrows))


def graded_module(g: GradedAlgebra, M: Rep) -> Rep:
    """M̌ = ⊕ J^iM/J^{i+1}M as a module over Ǎ."""
    t, tab, F = g.source, g.table, M.field
    off = [k for k, b in enumerate(t.basis) if b.source != b.target]
    layers = [Subspace.full(F, M.dim)]
    while layers[-1].dim:
        layers.append(Subspace.span(F, M.dim, [M.basis_actions[k].apply(u) for k in off for u in layers[-1].basis]))
    lifts = []  # (vertex, degree, vector)
    for i in range(len(layers) - 1):
        span = layers[i + 1]
        for row, p in zip(layers[i].basis, layers[i].pivots):
            if not span.contains(row):
                lifts.append((M.vertex_of(p), i, row))
                span = span + Subspace.span(F, M.dim, [row])
    vindex = t.vertex_index
    lifts.sort(key=lambda x: (vindex[x[0]], x[1]))
    dims = [sum(1 for v, _, _ in lifts if v == w) for w in tab.vertices]
    n = len(lifts)
    by_deg = {}
    for k, (_, i, vec) in enumerate(lifts):
        by_deg.setdefault(i, []).append(k)
    solvers = {}
    for i, ks in by_deg.items():
        cols = [lifts[k][2] for k in ks] + list(layers[i + 1].basis)
        solvers[i] = (ks, Matrix.from_columns(F, cols, M.dim))
    glob = {}
    for a in t.arrows:
        shift = 0 if a.source == a.target else 1
        cols = []
        for _, i, vec in lifts:
            w = M.global_arrow(a.name).apply(vec)
            col = [F.zero] * n
            if any(w) and (i + shift) in solvers:
                ks, mat = solvers[i + shift]
                x = solve(mat, w)
                for j, k in enumerate(ks):
                    col[k] = x[j]
            cols.append(col)
        glob[a.name] = Matrix.from_columns(F, cols, n)
    return rep_from_global(tab, dims, glob)


def graded_projectivity_check(g: GradedAlgebra, M: Rep) -> tuple[bool, bool]:
    """(M projective over A, M̌ projective over Ǎ); the two should agree."""
    Mg = graded_module(g, M)
    Mg.validate()
    return is_projective(M), is_projective(Mg)
