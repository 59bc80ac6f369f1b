"""Finite-dimensional left modules as quiver representations.

A :class:`Rep` stores one vector space per vertex and one matrix per arrow.
Global coordinates concatenate the vertex spaces in vertex order, so every
submodule is a graded subspace and its reduced row echelon basis splits
along the vertex blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from .algebra import AlgebraTable, QuotientMap
from .errors import PreconditionViolated
from .linalg import (Field, Matrix, Subspace, block_diagonal, determinant, is_invertible, kernel,
                     kernel_of_rows)

ISO_ENUMERATION_BUDGET = 20000


@dataclass(frozen=True)
class Rep:
    algebra: AlgebraTable
    dims: tuple[int, ...]
    arrow_maps: tuple[Matrix, ...]
    labels: tuple[str, ...] | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        t = self.algebra
        if len(self.dims) != len(t.vertices) or len(self.arrow_maps) != len(t.arrows):
            raise ValueError("dimension vector or arrow maps do not match the algebra")
        for a, m in zip(t.arrows, self.arrow_maps):
            if m.shape != (self.dim_at(a.target), self.dim_at(a.source)):
                raise ValueError(f"arrow {a.name} has matrix of shape {m.shape}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.vertex_index[v]]

    def dim_vector(self) -> dict[str, int]:
        return dict(zip(self.algebra.vertices, self.dims))

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, acc = {}, 0
        for v, d in zip(self.algebra.vertices, self.dims):
            out[v] = acc
            acc += d
        return out

    def block_range(self, v: str) -> range:
        o = self.offsets[v]
        return range(o, o + self.dim_at(v))

    def vertex_of(self, coord: int) -> str:
        for v in self.algebra.vertices:
            if coord in self.block_range(v):
                return v
        raise IndexError(coord)

    def arrow_map(self, name: str) -> Matrix:
        return self.arrow_maps[self.algebra.arrow_index[name]]

    @cached_property
    def _global_arrows(self) -> dict[str, Matrix]:
        F, n = self.field, self.dim
        out = {}
        for a, m in zip(self.algebra.arrows, self.arrow_maps):
            rows = [[F.zero] * n for _ in range(n)]
            rs, cs = self.block_range(a.target), self.block_range(a.source)
            for i, r in enumerate(rs):
                for j, c in enumerate(cs):
                    rows[r][c] = m.rows[i][j]
            out[a.name] = Matrix.from_rows(F, rows, n)
        return out

    def global_arrow(self, name: str) -> Matrix:
        return self._global_arrows[name]

    def idempotent_matrix(self, v: str) -> Matrix:
        F, n = self.field, self.dim
        block = set(self.block_range(v))
        return Matrix.from_rows(F, [[F.one if (i == j and i in block) else F.zero for j in range(n)]
                                    for i in range(n)], n)

    @cached_property
    def basis_actions(self) -> tuple[Matrix, ...]:
        """Matrix of each algebra basis element acting on the module."""
        out = []
        for b in self.algebra.basis:
            if b.is_trivial:
                out.append(self.idempotent_matrix(b.source))
                continue
            m = self.global_arrow(b.word[-1])
            for name in reversed(b.word[:-1]):
                m = self.global_arrow(name) @ m
            out.append(m)
        return tuple(out)

    def act(self, element: Sequence, v: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for k, c in enumerate(element):
            if c:
                w = self.basis_actions[k].apply(v)
                for i, x in enumerate(w):
                    out[i] += c * x
        return tuple(F.norm(x) for x in out)

    def validate(self) -> None:
        """Raise ValueError unless the arrow matrices define a module over the algebra."""
        t, F = self.algebra, self.field
        acts = self.basis_actions
        n = self.dim

        def combo(sparse):
            m = Matrix.zeros(F, n, n)
            for k, c in sparse:
                m = m + acts[k].scaled(c)
            return m

        for a, el in zip(t.arrows, t.arrow_elements):
            if self.global_arrow(a.name) != combo([(k, c) for k, c in enumerate(el) if c]):
                raise ValueError(f"arrow {a.name} does not act as its algebra element")
        for i in range(t.dim):
            for j in range(t.dim):
                if acts[i] @ acts[j] != combo(t.products[i][j]):
                    raise ValueError(f"action is not multiplicative on {t.basis[i].label}*{t.basis[j].label}")

    def is_zero(self) -> bool:
        return self.dim == 0


def zero_module(t: AlgebraTable) -> Rep:
    return Rep(t, tuple(0 for _ in t.vertices),
               tuple(Matrix.zeros(t.field, 0, 0) for _ in t.arrows))


def rep_from_global(t: AlgebraTable, dims: Sequence[int], global_arrows: dict[str, Matrix],
                    labels=None) -> Rep:
    tmp_offsets, acc = {}, 0
    for v, d in zip(t.vertices, dims):
        tmp_offsets[v] = acc
        acc += d
    dv = dict(zip(t.vertices, dims))
    maps = []
    for a in t.arrows:
        g = global_arrows[a.name]
        rs = range(tmp_offsets[a.target], tmp_offsets[a.target] + dv[a.target])
        cs = range(tmp_offsets[a.source], tmp_offsets[a.source] + dv[a.source])
        maps.append(g.submatrix(list(rs), list(cs)))
    return Rep(t, tuple(dims), tuple(maps), labels)


@dataclass(frozen=True)
class ProjectiveData:
    """P_λ = A e_λ together with the algebra basis indices of its coordinates."""

    module: Rep
    vertex: str
    basis_indices: tuple[int, ...]


def projective(t: AlgebraTable, v: str) -> ProjectiveData:
    """Indecomposable projective A e_v; coordinates are basis paths starting at v."""
    memo_key = ("projective", v)
    if memo_key not in t.cache:
        t.cache[memo_key] = _build_projective(t, v)
    return t.cache[memo_key]


def _build_projective(t: AlgebraTable, v: str) -> ProjectiveData:
    idx = []
    for m in t.vertices:
        idx.extend(t.block(m, v))
    pos = {k: i for i, k in enumerate(idx)}
    F, n = t.field, len(idx)
    glob = {}
    for a in t.arrows:
        el = t.arrow_element(a.name)
        cols = []
        for k in idx:
            prod = t.multiply(el, t.unit(k))
            col = [F.zero] * n
            for kk, c in enumerate(prod):
                if c:
                    col[pos[kk]] = c
            cols.append(col)
        glob[a.name] = Matrix.from_columns(F, cols, n)
    dims = [t.block_dim(m, v) for m in t.vertices]
    rep = rep_from_global(t, dims, glob, tuple(t.basis[k].label for k in idx))
    return ProjectiveData(rep, v, tuple(idx))


def projective_module(t: AlgebraTable, v: str) -> Rep:
    return projective(t, v).module


def simple_module(t: AlgebraTable, v: str) -> Rep:
    dims = tuple(1 if w == v else 0 for w in t.vertices)
    maps = tuple(Matrix.zeros(t.field, dims[t.vertex_index[a.target]], dims[t.vertex_index[a.source]])
                 for a in t.arrows)
    return Rep(t, dims, maps, (f"S_{v}",))


def direct_sum(modules: Sequence[Rep], algebra: AlgebraTable | None = None) -> tuple[Rep, list[Matrix]]:
    """Direct sum with its inclusion matrices (global coordinates)."""
    if not modules:
        if algebra is None:
            raise ValueError("an empty direct sum needs the algebra")
        return zero_module(algebra), []
    t = modules[0].algebra
    F = t.field
    dims = tuple(sum(M.dims[i] for M in modules) for i in range(len(t.vertices)))
    maps = []
    for ai, a in enumerate(t.arrows):
        maps.append(block_diagonal(F, [M.arrow_maps[ai] for M in modules]))
    S = Rep(t, dims, tuple(maps))
    incl = []
    for s, M in enumerate(modules):
        cols = []
        for v in t.vertices:
            before = sum(N.dim_at(v) for N in modules[:s])
            for i in range(M.dim_at(v)):
                col = [F.zero] * S.dim
                col[S.offsets[v] + before + i] = F.one
                cols.append(col)
        incl.append(Matrix.from_columns(F, cols, S.dim) if cols else Matrix.zeros(F, S.dim, 0))
    return S, incl


def direct_sum_power(M: Rep, k: int) -> Rep:
    return direct_sum([M] * k, M.algebra)[0]


def regular_module(t: AlgebraTable) -> Rep:
    return direct_sum([projective_module(t, v) for v in t.vertices], t)[0]


# ---- submodules and quotients -------------------------------------------------

def generated_submodule(M: Rep, vectors: Sequence[Sequence]) -> Subspace:
    """A·span(vectors) as a subspace of M."""
    gens = [M.basis_actions[k].apply(v) for v in vectors for k in range(M.algebra.dim)]
    return Subspace.span(M.field, M.dim, gens)


def is_submodule(M: Rep, U: Subspace) -> bool:
    return all(U.contains(M.global_arrow(a.name).apply(u)) for a in M.algebra.arrows for u in U.basis) and \
        all(U.contains(M.idempotent_matrix(v).apply(u)) for v in M.algebra.vertices for u in U.basis)


def submodule(M: Rep, U: Subspace) -> tuple[Rep, Matrix]:
    """The submodule U as a Rep, with its inclusion matrix (M.dim x U.dim).

    Vertex blocks are contiguous, so the RREF rows of a graded subspace are
    already grouped by vertex and a vector's coordinates are its pivot entries.
    """
    F, t = M.field, M.algebra
    rows = U.basis
    n = len(rows)
    dims = [sum(1 for p in U.pivots if M.vertex_of(p) == v) for v in t.vertices]
    glob = {}
    for a in t.arrows:
        g = M.global_arrow(a.name)
        cols = []
        for r in rows:
            w = g.apply(r)
            cols.append(tuple(w[p] for p in U.pivots))
        glob[a.name] = Matrix.from_columns(F, cols, n) if n else Matrix.zeros(F, 0, 0)
    incl = Matrix.from_columns(F, rows, M.dim) if n else Matrix.zeros(F, M.dim, 0)
    return rep_from_global(t, dims, glob), incl


def quotient(M: Rep, U: Subspace) -> tuple[Rep, Matrix]:
    """M/U as a Rep (coordinates = non-pivot coordinates of U), with the projection matrix."""
    F, t = M.field, M.algebra
    free = U.free_coordinates()
    n = len(free)

    def proj(v):
        r = U.reduce(v)
        return tuple(r[c] for c in free)

    dims = [sum(1 for c in free if M.vertex_of(c) == v) for v in t.vertices]
    glob = {}
    for a in t.arrows:
        g = M.global_arrow(a.name)
        cols = []
        for c in free:
            e = [F.zero] * M.dim
            e[c] = F.one
            cols.append(proj(g.apply(e)))
        glob[a.name] = Matrix.from_columns(F, cols, n) if n else Matrix.zeros(F, 0, 0)
    projection = Matrix.from_columns(F, [proj([F.one if i == j else F.zero for i in range(M.dim)])
                                         for j in range(M.dim)], n) if M.dim else Matrix.zeros(F, n, 0)
    return rep_from_global(t, dims, glob), projection


def block_subspace(M: Rep, v: str) -> Subspace:
    F = M.field
    vecs = []
    for c in M.block_range(v):
        e = [F.zero] * M.dim
        e[c] = F.one
        vecs.append(e)
    return Subspace.span(F, M.dim, vecs)


def trace_subspace(M: Rep, vertices) -> Subspace:
    """Trace of ⊕_{v in vertices} P_v in M, i.e. the submodule generated by ⊕ e_v M."""
    if isinstance(vertices, str):
        vertices = [vertices]
    vecs = [b for v in vertices for b in block_subspace(M, v).basis]
    return generated_submodule(M, vecs)


def trace(M: Rep, vertices) -> Rep:
    return submodule(M, trace_subspace(M, vertices))[0]


def radical_subspace(M: Rep) -> Subspace:
    vecs = []
    for a in M.algebra.arrows:
        g = M.global_arrow(a.name)
        vecs.extend(g.columns())
    return Subspace.span(M.field, M.dim, vecs)


def top_multiplicities(M: Rep) -> dict[str, int]:
    rad = radical_subspace(M)
    out = {v: M.dim_at(v) for v in M.algebra.vertices}
    for p in rad.pivots:
        out[M.vertex_of(p)] -= 1
    return out


@dataclass(frozen=True)
class Cover:
    """Projective cover ⊕ P_v^{k_v} -> M; ``generators[v]`` are the chosen top lifts."""

    projective: Rep
    map: Matrix
    generators: dict


def projective_cover(M: Rep) -> Cover:
    t, F = M.algebra, M.field
    rad = radical_subspace(M)
    free = set(rad.free_coordinates())
    gens = {v: [c for c in M.block_range(v) if c in free] for v in t.vertices}
    summands = []
    for v in t.vertices:
        pd = projective(t, v)
        for c in gens[v]:
            m = [F.zero] * M.dim
            m[c] = F.one
            summands.append((pd, tuple(m)))
    if not summands:
        return Cover(zero_module(t), Matrix.zeros(F, M.dim, 0), gens)
    P, incl = direct_sum([pd.module for pd, _ in summands])
    images = [None] * P.dim
    for (pd, m), inc in zip(summands, incl):
        for j, k in enumerate(pd.basis_indices):
            col = inc.column(j)
            target = col.index(F.one)
            images[target] = M.basis_actions[k].apply(m)
    return Cover(P, Matrix.from_columns(F, images, M.dim), gens)


def is_projective(M: Rep) -> bool:
    return projective_cover(M).projective.dim == M.dim


def projective_power_multiplicity(M: Rep, v: str) -> int | None:
    """k with M ≅ P_v^k, else None (cover-dimension test)."""
    tops = top_multiplicities(M)
    if any(k for w, k in tops.items() if w != v):
        return None
    k = tops[v]
    if M.dim != k * M.algebra.projective_dim(v):
        return None
    return k


def syzygy(M: Rep) -> Rep:
    cov = projective_cover(M)
    if cov.projective.dim == 0:
        return zero_module(M.algebra)
    return submodule(cov.projective, kernel(cov.map))[0]


def pd_at_most(M: Rep, n: int) -> bool:
    cur = M
    for _ in range(n + 1):
        if is_projective(cur):
            return True
        cur = syzygy(cur)
    return False


def projective_dimension(M: Rep, cap: int) -> int | None:
    """pd M if it is at most ``cap``, else None; the zero module gets -1."""
    if M.dim == 0:
        return -1
    cur = M
    for i in range(cap + 1):
        if is_projective(cur):
            return i
        cur = syzygy(cur)
    return None


# ---- homomorphisms -------------------------------------------------------------

def hom_space(M: Rep, N: Rep) -> list[Matrix]:
    """Basis of Hom_A(M, N) as global N.dim x M.dim matrices."""
    t, F = M.algebra, M.field
    var = {}
    for v in t.vertices:
        for i in range(N.dim_at(v)):
            for j in range(M.dim_at(v)):
                var[(v, i, j)] = len(var)
    nv = len(var)
    rows = []
    for a in t.arrows:
        Ma, Na = M.arrow_map(a.name), N.arrow_map(a.name)
        s, tg = a.source, a.target
        # (N_a f_s - f_t M_a)[i][j] = 0
        for i in range(N.dim_at(tg)):
            for j in range(M.dim_at(s)):
                row = [F.zero] * nv
                for k in range(N.dim_at(s)):
                    c = Na.rows[i][k]
                    if c:
                        row[var[(s, k, j)]] += c
                for k in range(M.dim_at(tg)):
                    c = Ma.rows[k][j]
                    if c:
                        row[var[(tg, i, k)]] -= c
                rows.append([F.norm(x) for x in row])
    ker = kernel_of_rows(F, rows, nv)
    out = []
    for vec in ker.basis:
        g = [[F.zero] * M.dim for _ in range(N.dim)]
        for (v, i, j), idx in var.items():
            g[N.offsets[v] + i][M.offsets[v] + j] = vec[idx]
        out.append(Matrix.from_rows(F, g, M.dim))
    return out


def hom_dim(M: Rep, N: Rep) -> int:
    return len(hom_space(M, N))


def end_dim(M: Rep) -> int:
    return hom_dim(M, M)


def _combine_matrices(F: Field, coeffs, mats: Sequence[Matrix]) -> Matrix:
    out = None
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        term = m.scaled(c)
        out = term if out is None else out + term
    return out if out is not None else Matrix.zeros(F, mats[0].nrows, mats[0].ncols)


def is_isomorphic(M: Rep, N: Rep, budget: int = ISO_ENUMERATION_BUDGET) -> bool | None:
    """True / False, or None when the search would exceed ``budget`` evaluations.

    An isomorphism exists iff some element of Hom(M, N) is invertible.  The
    determinant of a generic combination is a polynomial of degree <= dim M
    in each coordinate, so over Q it is nonzero somewhere on the grid
    {0..dim M}^r exactly when it is not identically zero; over F_p the whole
    space F_p^r is enumerated.
    """
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    H = hom_space(M, N)
    if not H:
        return False
    F = M.field
    for h in H:
        if is_invertible(h):
            return True
    r = len(H)
    values = range(F.characteristic) if F.is_finite else range(M.dim + 1)
    if len(values) ** r > budget:
        # a few deterministic sums before giving up
        for s in range(1, r + 1):
            if is_invertible(_combine_matrices(F, [1] * s + [0] * (r - s), H)):
                return True
        return None
    for coeffs in itertools.product(values, repeat=r):
        if any(coeffs) and determinant(_combine_matrices(F, [F(c) for c in coeffs], H)):
            return True
    return False


# ---- change of algebra ---------------------------------------------------------

def restrict_to_quotient(M: Rep, qt: AlgebraTable) -> Rep:
    """View a module annihilated by the removed idempotents as a module over ``qt``."""
    t = M.algebra
    kept = set(qt.vertices)
    for v in t.vertices:
        if v not in kept and M.dim_at(v):
            raise PreconditionViolated(f"module is not annihilated by e_{v}")
    dims = tuple(M.dim_at(v) for v in qt.vertices)
    maps = tuple(M.arrow_map(a.name) for a in qt.arrows)
    return Rep(qt, dims, maps, M.labels)


def inflate(M: Rep, t: AlgebraTable) -> Rep:
    """A module over a quotient by vertices, viewed as a module over ``t``."""
    F = t.field
    dims = tuple(M.dim_at(v) if v in M.algebra.vertex_index else 0 for v in t.vertices)
    dv = dict(zip(t.vertices, dims))
    maps = []
    for a in t.arrows:
        if a.name in M.algebra.arrow_index:
            maps.append(M.arrow_map(a.name))
        else:
            maps.append(Matrix.zeros(F, dv[a.target], dv[a.source]))
    return Rep(t, dims, tuple(maps), M.labels)


def radical_of_algebra_module(t: AlgebraTable) -> Rep:
    """rad A as a left module (submodule of the regular module)."""
    R = regular_module(t)
    return submodule(R, radical_subspace(R))[0]


def off_diagonal_module(t: AlgebraTable) -> tuple[Rep, Rep]:
    """(J, A/J) for J spanned by the basis paths with distinct endpoints.

    For a directed algebra J is a two-sided ideal; A/J is then the direct
    sum of the local algebras e_λ A e_λ.
    """
    F = t.field
    parts = [projective(t, v) for v in t.vertices]
    R, incl = direct_sum([p.module for p in parts], t)
    vecs = []
    for pd, inc in zip(parts, incl):
        for j, k in enumerate(pd.basis_indices):
            b = t.basis[k]
            if b.source != b.target:
                vecs.append(inc.column(j))
    U = Subspace.span(F, R.dim, vecs)
    if not is_submodule(R, U):
        raise PreconditionViolated("off-diagonal paths do not span a left ideal")
    return submodule(R, U)[0], quotient(R, U)[0]


def apply_quotient_map(qm: QuotientMap, v: Sequence) -> tuple:
    return qm.apply(v)


def radical_series(M: Rep) -> list[Subspace]:
    """[M, rad M, rad^2 M, ..., 0]."""
    series = [Subspace.full(M.field, M.dim)]
    while series[-1].dim:
        nxt = [M.global_arrow(a.name).apply(u) for a in M.algebra.arrows for u in series[-1].basis]
        series.append(Subspace.span(M.field, M.dim, nxt))
    return series


def loewy_layers(M: Rep) -> list[dict[str, int]]:
    """Dimension vectors of rad^i M / rad^{i+1} M, nonzero entries only."""
    series = radical_series(M)
    layers = []
    for upper, lower in zip(series, series[1:]):
        counts: dict[str, int] = {}
        for p in upper.pivots:
            counts[M.vertex_of(p)] = counts.get(M.vertex_of(p), 0) + 1
        for p in lower.pivots:
            counts[M.vertex_of(p)] -= 1
        layers.append({v: counts[v] for v in M.algebra.vertices if counts.get(v)})
    return layers
