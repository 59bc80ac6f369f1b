"""Finite-dimensional basic algebras kQ/I as multiplication tables.

A presentation (quiver plus relations) is turned into an
:class:`AlgebraTable`: a basis of paths, structure constants, and the
arrow elements.  Paths are written with right-to-left composition, so the
word ``("γ", "β")`` means "first β, then γ".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .errors import CapExceeded, InadmissibleRelation, ParseError
from .linalg import Field, Matrix, QQ, Subspace, unit_vector, zero_vector

DEFAULT_LENGTH_CAP = 32
DEFAULT_MAX_PATHS = 20000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ParseError("duplicate arrow name")
        clash = set(names) & set(self.vertices)
        if clash:
            raise ParseError(f"names used for both a vertex and an arrow: {sorted(clash)}")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ParseError(f"arrow {a.name} has an undeclared endpoint")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise ParseError(f"unknown arrow {name!r}")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def has_oriented_cycle(self) -> bool:
        edges = {(a.source, a.target) for a in self.arrows}
        return find_cycle(self.vertices, edges) is not None


@dataclass(frozen=True)
class Path:
    """A path in a quiver; ``word`` lists arrow names right to left."""

    word: tuple[str, ...]
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_trivial(self) -> bool:
        return not self.word

    @property
    def label(self) -> str:
        if not self.word:
            return f"e_{self.source}"
        sep = "" if all(len(n) == 1 for n in self.word) else "·"
        return sep.join(self.word)

    def after(self, other: "Path") -> "Path":
        """Composite ``self ∘ other`` (other first); requires other.target == self.source."""
        if other.target != self.source:
            raise ValueError(f"{self.label} cannot follow {other.label}")
        return Path(self.word + other.word, other.source, self.target)

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.word)), self.target, self.source)


def path_from_word(quiver: Quiver, word: Sequence[str], vertex: str | None = None) -> Path:
    """Build a path from a right-to-left arrow word, checking composability."""
    word = tuple(word)
    if not word:
        if vertex is None:
            raise ParseError("a trivial path needs a vertex")
        return Path((), vertex, vertex)
    arrows = [quiver.arrow(n) for n in word]
    for later, earlier in zip(arrows, arrows[1:]):
        if earlier.target != later.source:
            raise ParseError(f"arrows {later.name} and {earlier.name} do not compose")
    return Path(word, arrows[-1].source, arrows[0].target)


@dataclass(frozen=True)
class Relation:
    """A formal linear combination of parallel paths, ``terms`` = ((coefficient, word), ...)."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((Fraction(c), tuple(w)) for c, w in self.terms))

    def opposite(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(w))) for c, w in self.terms))


def find_cycle(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> tuple[str, ...] | None:
    """First oriented cycle found by depth-first search in vertex order, closed (first == last)."""
    succ: dict[str, list[str]] = {v: [] for v in vertices}
    order = {v: i for i, v in enumerate(vertices)}
    for s, t in set(edges):
        succ[s].append(t)
    for s in succ:
        succ[s].sort(key=order.__getitem__)
    state = {v: 0 for v in vertices}
    for root in vertices:
        if state[root]:
            continue
        stack = [(root, iter(succ[root]))]
        trail = [root]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                trail.pop()
            elif state[nxt] == 1:
                return tuple(trail[trail.index(nxt):]) + (nxt,)
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                trail.append(nxt)
    return None


def topological_order(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> tuple[str, ...]:
    """Reverse DFS postorder; assumes the graph is acyclic."""
    succ: dict[str, list[str]] = {v: [] for v in vertices}
    order = {v: i for i, v in enumerate(vertices)}
    for s, t in set(edges):
        succ[s].append(t)
    for s in succ:
        succ[s].sort(key=order.__getitem__)
    seen: set[str] = set()
    post: list[str] = []

    def visit(v):
        seen.add(v)
        for w in succ[v]:
            if w not in seen:
                visit(w)
        post.append(v)

    for v in vertices:
        if v not in seen:
            visit(v)
    return tuple(reversed(post))


class _SparseEchelon:
    """Echelon basis of sparse vectors keyed by sortable labels; pivot = largest label."""

    def __init__(self, F: Field):
        self.F = F
        self.rows: dict = {}

    def reduce(self, v: dict) -> dict:
        F, rows = self.F, self.rows
        v = dict(v)
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            k = max(hits)
            c = v[k]
            for kk, x in rows[k].items():
                y = F.norm(v.get(kk, 0) - c * x)
                if y:
                    v[kk] = y
                else:
                    v.pop(kk, None)

    def insert(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        k = max(r)
        inv = self.F.inv(r[k])
        self.rows[k] = {kk: self.F.norm(x * inv) for kk, x in r.items()}
        return True


@dataclass(frozen=True)
class AlgebraTable:
    """A finite-dimensional algebra with a basis of paths and structure constants.

    ``products[i][j]`` is the sparse expansion ``((k, c), ...)`` of
    ``basis[i] * basis[j]``.  Every vertex has its trivial path in the basis,
    every other basis element lies in the radical, and each basis element
    equals the product of the arrow elements along its word.
    """

    field: Field
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    basis: tuple[Path, ...]
    products: tuple[tuple[tuple[tuple[int, object], ...], ...], ...]
    arrow_elements: tuple[tuple, ...]
    nilpotency_bound: int
    presentation: tuple | None = dc_field(default=None, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def idempotent_index(self) -> dict[str, int]:
        out = {}
        for k, b in enumerate(self.basis):
            if b.is_trivial:
                out[b.source] = k
        return out

    @cached_property
    def blocks(self) -> dict[tuple[str, str], tuple[int, ...]]:
        """(target, source) -> basis indices spanning e_target A e_source."""
        out: dict[tuple[str, str], list[int]] = {(m, l): [] for m in self.vertices for l in self.vertices}
        for k, b in enumerate(self.basis):
            out[(b.target, b.source)].append(k)
        return {key: tuple(v) for key, v in out.items()}

    def block(self, target: str, source: str) -> tuple[int, ...]:
        return self.blocks[(target, source)]

    def block_dim(self, target: str, source: str) -> int:
        return len(self.blocks[(target, source)])

    def projective_dim(self, v: str) -> int:
        return sum(self.block_dim(m, v) for m in self.vertices)

    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def unit(self, k: int) -> tuple:
        return unit_vector(self.field, self.dim, k)

    def idempotent(self, v: str) -> tuple:
        return self.unit(self.idempotent_index[v])

    def one(self) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for k in self.idempotent_index.values():
            out[k] = F.one
        return tuple(out)

    def multiply(self, a: Sequence, b: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        nz_b = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.products[i]
            for j, y in nz_b:
                for k, c in row[j]:
                    out[k] += x * y * c
        return tuple(F.norm(v) for v in out)

    def basis_product(self, i: int, j: int) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for k, c in self.products[i][j]:
            out[k] = c
        return tuple(out)

    def arrow_element(self, name: str) -> tuple:
        return self.arrow_elements[self.arrow_index[name]]

    def word_element(self, word: Sequence[str], vertex: str | None = None) -> tuple:
        if not word:
            return self.idempotent(vertex)
        out = self.arrow_element(word[-1])
        for name in reversed(word[:-1]):
            out = self.multiply(self.arrow_element(name), out)
        return out

    def label(self, v: Sequence) -> str:
        terms = []
        for k, c in enumerate(v):
            if c:
                lab = self.basis[k].label
                terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"

    @cached_property
    def cache(self) -> dict:
        """Memo for derived objects (quotients, projectives); not part of equality."""
        return {}

    @cached_property
    def radical_indices(self) -> tuple[int, ...]:
        idem = set(self.idempotent_index.values())
        return tuple(k for k in range(self.dim) if k not in idem)


def _enumerate_paths(quiver: Quiver, upto: int, max_paths: int) -> list[list[Path]]:
    by_len = [[Path((), v, v) for v in quiver.vertices]]
    total = len(by_len[0])
    for _ in range(upto):
        nxt = [Path((a.name,) + p.word, p.source, a.target)
               for p in by_len[-1] for a in quiver.arrows if a.source == p.target]
        total += len(nxt)
        if total > max_paths:
            raise CapExceeded(f"path enumeration exceeded {max_paths} paths")
        by_len.append(nxt)
    return by_len


def _validated_relations(quiver: Quiver, relations: Sequence[Relation], F: Field) -> list[tuple[dict, int, int, str, str]]:
    """Relations as (sparse dict Path -> coefficient, minlen, maxlen, source, target)."""
    out = []
    for n, rel in enumerate(relations):
        combined: dict[Path, object] = {}
        ends = set()
        for coeff, word in rel.terms:
            if not word:
                raise InadmissibleRelation("trivial paths are not allowed in relations", f"relations[{n}]")
            p = path_from_word(quiver, word)
            ends.add((p.source, p.target))
            c = F.norm(combined.get(p, 0) + F(coeff))
            if c:
                combined[p] = c
            else:
                combined.pop(p, None)
        if len(ends) > 1:
            raise InadmissibleRelation("relation terms are not parallel", f"relations[{n}]")
        if not combined:
            continue
        lens = [p.length for p in combined]
        src, tgt = next(iter(ends))
        out.append((combined, min(lens), max(lens), src, tgt))
    return out


def _path_key(vindex: dict[str, int]):
    def key(p: Path):
        return (p.length, p.word, vindex[p.source])
    return key


def _sandwiches(rels, by_len, total_len_ok, max_total: int):
    """Yield p*r*q (as Path->coeff dicts) for relations r and paths p, q with a length filter."""
    from_v: dict[str, list[list[Path]]] = {}
    to_v: dict[str, list[list[Path]]] = {}
    for L, ps in enumerate(by_len):
        for p in ps:
            from_v.setdefault(p.source, [[] for _ in by_len])[L].append(p)
            to_v.setdefault(p.target, [[] for _ in by_len])[L].append(p)
    for rel, lo, hi, src, tgt in rels:
        for a in range(max_total + 1):
            for b in range(max_total + 1 - a):
                if not total_len_ok(a, b, lo, hi):
                    continue
                if a >= len(by_len) or b >= len(by_len):
                    continue
                for p in from_v.get(tgt, [[]] * len(by_len))[a]:
                    for q in to_v.get(src, [[]] * len(by_len))[b]:
                        yield {Path(p.word + t.word + q.word, q.source, p.target): c for t, c in rel.items()}


def build_table(quiver: Quiver, relations: Sequence[Relation] = (), field: Field = QQ,
                length_cap: int = DEFAULT_LENGTH_CAP, max_paths: int = DEFAULT_MAX_PATHS) -> AlgebraTable:
    """Rewrite the presentation kQ/(relations) to a basis with structure constants.

    The ideal is certified to contain every path of some length N by
    exhibiting each such path as an exact combination of sandwiches
    p·r·q whose terms all have length <= L, for the least L that works.
    """
    if length_cap < 2:
        raise ValueError("length_cap must be at least 2")
    F = field
    rels = _validated_relations(quiver, relations, F)
    vindex = {v: i for i, v in enumerate(quiver.vertices)}
    key = _path_key(vindex)

    N = None
    ideal = _SparseEchelon(F)
    by_len = _enumerate_paths(quiver, 0, max_paths)
    for L in range(1, length_cap + 1):
        by_len = _enumerate_paths(quiver, L, max_paths)
        for prod in _sandwiches(rels, by_len, lambda a, b, lo, hi, L=L: a + b + hi == L, L):
            ideal.insert({key(p): c for p, c in prod.items()})
        for m in range(1, L + 1):
            if all(not ideal.reduce({key(p): 1}) for p in by_len[m]):
                N = m
                break
        if N is not None:
            break
    if N is None:
        raise CapExceeded(f"no power of the arrow ideal lies in the relation ideal up to length {length_cap}")

    short = by_len[:N]
    truncated = _SparseEchelon(F)
    for prod in _sandwiches(rels, short, lambda a, b, lo, hi: a + b + lo < N, N):
        truncated.insert({key(p): c for p, c in prod.items() if p.length < N})
    all_paths = sorted((p for ps in short for p in ps), key=key)
    basis = tuple(p for p in all_paths if key(p) not in truncated.rows)
    index = {key(p): k for k, p in enumerate(basis)}

    def normal_form(p: Path) -> tuple[tuple[int, object], ...]:
        if p.length >= N:
            return ()
        red = truncated.reduce({key(p): F.one})
        return tuple(sorted((index[k], c) for k, c in red.items()))

    products = tuple(
        tuple(normal_form(Path(bi.word + bj.word, bj.source, bi.target)) if bj.target == bi.source else ()
              for bj in basis)
        for bi in basis)
    n = len(basis)

    def dense(sparse) -> tuple:
        out = [F.zero] * n
        for k, c in sparse:
            out[k] = c
        return tuple(out)

    arrow_elements = tuple(dense(normal_form(Path((a.name,), a.source, a.target))) for a in quiver.arrows)
    return AlgebraTable(F, quiver.vertices, quiver.arrows, basis, products, arrow_elements, N,
                        presentation=(quiver, tuple(relations)))


def rebuild(t: AlgebraTable, field: Field) -> AlgebraTable:
    """The same presentation rewritten over another field."""
    if t.presentation is None:
        raise ValueError("table has no presentation to rebuild from")
    quiver, relations = t.presentation
    return build_table(quiver, relations, field)


def multiply(t: AlgebraTable, a: Sequence, b: Sequence) -> tuple:
    return t.multiply(a, b)


def opposite(t: AlgebraTable) -> AlgebraTable:
    """Same basis labels with reversed paths; structure constants transposed."""
    n = t.dim
    products = tuple(tuple(t.products[j][i] for j in range(n)) for i in range(n))
    pres = None
    if t.presentation is not None:
        q, rels = t.presentation
        pres = (q.opposite(), tuple(r.opposite() for r in rels))
    return AlgebraTable(t.field, t.vertices, tuple(Arrow(a.name, a.target, a.source) for a in t.arrows),
                        tuple(b.reversed() for b in t.basis), products, t.arrow_elements,
                        t.nilpotency_bound, presentation=pres)


def _subspace_by_largest_pivot(F: Field, n: int, vectors: Iterable[Sequence]) -> Subspace:
    """Span with coordinates reversed, so RREF pivots sit at the largest basis indices."""
    return Subspace.span(F, n, [tuple(reversed(v)) for v in vectors])


@dataclass(frozen=True)
class QuotientMap:
    """Coordinates of A -> A/I: ``kept`` basis indices survive, ``matrix`` projects."""

    kept: tuple[int, ...]
    matrix: Matrix

    def apply(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)


def two_sided_ideal_of_vertices(t: AlgebraTable, removed: Iterable[str]) -> list[tuple]:
    removed = set(removed)
    gens = []
    for i, bi in enumerate(t.basis):
        if bi.source not in removed:
            continue
        for j, bj in enumerate(t.basis):
            if bj.target == bi.source:
                gens.append(t.basis_product(i, j))
    return gens


def quotient_by_vertices(t: AlgebraTable, removed: Iterable[str]) -> tuple[AlgebraTable, QuotientMap]:
    """A / A e A for e the sum of the idempotents at ``removed``."""
    removed = frozenset(removed)
    memo_key = ("quotient", removed)
    if memo_key in t.cache:
        return t.cache[memo_key]
    F, n = t.field, t.dim
    ideal = _subspace_by_largest_pivot(F, n, two_sided_ideal_of_vertices(t, removed))
    pivots = {n - 1 - p for p in ideal.pivots}
    kept = tuple(k for k in range(n) if k not in pivots)

    def project(v: Sequence) -> tuple:
        red = tuple(reversed(ideal.reduce(tuple(reversed(v)))))
        return tuple(red[k] for k in kept)

    proj_cols = [project(t.unit(k)) for k in range(n)]
    matrix = Matrix.from_columns(F, proj_cols, len(kept)) if n else Matrix(F, 0, 0, ())

    def sparse(v):
        return tuple((i, c) for i, c in enumerate(v) if c)

    products = tuple(tuple(sparse(project(t.basis_product(i, j))) for j in kept) for i in kept)
    arrows = tuple(a for a in t.arrows if a.source not in removed and a.target not in removed)
    arrow_elements = tuple(project(t.arrow_element(a.name)) for a in arrows)
    qt = AlgebraTable(F, tuple(v for v in t.vertices if v not in removed), arrows,
                      tuple(t.basis[k] for k in kept), products, arrow_elements, t.nilpotency_bound)
    result = (qt, QuotientMap(kept, matrix))
    t.cache[memo_key] = result
    return result


def quotient_by_idempotent(t: AlgebraTable, vertex: str) -> tuple[AlgebraTable, QuotientMap]:
    if vertex not in t.vertex_index:
        raise ValueError(f"unknown vertex {vertex!r}")
    return quotient_by_vertices(t, [vertex])


@dataclass(frozen=True)
class DirectednessVerdict:
    """``order`` ascends (λ before μ whenever e_μAe_λ ≠ 0); ``cycle`` is closed."""

    directed: bool
    edges: tuple[tuple[str, str], ...]
    order: tuple[str, ...] | None = None
    cycle: tuple[str, ...] | None = None

    def linear_order(self) -> tuple[str, ...]:
        """The witness order written maximal-first, as used for standard modules."""
        if not self.directed:
            raise ValueError("no directed order for a non-directed category")
        return tuple(reversed(self.order))


def hom_edges(t: AlgebraTable) -> tuple[tuple[str, str], ...]:
    """Edges λ -> μ for λ ≠ μ with e_μ A e_λ ≠ 0, in vertex order."""
    return tuple((l, m) for l in t.vertices for m in t.vertices if l != m and t.block_dim(m, l))


def directedness(t: AlgebraTable) -> DirectednessVerdict:
    edges = hom_edges(t)
    cycle = find_cycle(t.vertices, edges)
    if cycle is not None:
        return DirectednessVerdict(False, edges, cycle=cycle)
    return DirectednessVerdict(True, edges, order=topological_order(t.vertices, edges))


def is_local_direct_sum(t: AlgebraTable) -> bool:
    return not hom_edges(t)


def radical(t: AlgebraTable) -> Subspace:
    return Subspace.span(t.field, t.dim, [t.unit(k) for k in t.radical_indices])


def product_space(t: AlgebraTable, u: Subspace, v: Subspace) -> Subspace:
    return Subspace.span(t.field, t.dim, [t.multiply(a, b) for a in u.basis for b in v.basis])


def radical_powers(t: AlgebraTable) -> list[Subspace]:
    """[A, rad, rad^2, ..., 0] ending at the first zero power."""
    powers = [Subspace.full(t.field, t.dim), radical(t)]
    while powers[-1].dim:
        powers.append(product_space(t, powers[-1], powers[1]))
    return powers


def loewy_length(t: AlgebraTable) -> int:
    return len(radical_powers(t)) - 1


def off_diagonal_indices(t: AlgebraTable) -> tuple[int, ...]:
    return tuple(k for k, b in enumerate(t.basis) if b.source != b.target)


def ordinary_quiver(t: AlgebraTable) -> dict[tuple[str, str], int]:
    """(source, target) -> dim e_target (rad/rad^2) e_source, nonzero entries only."""
    rad = set(t.radical_indices)
    out = {}
    for m in t.vertices:
        for l in t.vertices:
            top = [k for k in t.block(m, l) if k in rad]
            if not top:
                continue
            sq = [t.basis_product(i, j)
                  for i in t.radical_indices if t.basis[i].target == m
                  for j in t.radical_indices if t.basis[j].source == l and t.basis[j].target == t.basis[i].source]
            d = len(top) - Subspace.span(t.field, t.dim, sq).dim
            if d:
                out[(l, m)] = d
    return out


def check_associativity(t: AlgebraTable) -> list[tuple[int, int, int]]:
    """Basis triples where (b_i b_j) b_k != b_i (b_j b_k); empty when associative."""
    bad = []
    for i in range(t.dim):
        for j in range(t.dim):
            ij = t.basis_product(i, j)
            for k in range(t.dim):
                if t.multiply(ij, t.unit(k)) != t.multiply(t.unit(i), t.basis_product(j, k)):
                    bad.append((i, j, k))
    return bad


def _block_product_profile(t: AlgebraTable, sigma: dict[str, str]) -> tuple:
    """Isomorphism invariants of the bigraded radical, with vertices renamed by sigma."""
    rad = set(t.radical_indices)
    prof = []
    powers = radical_powers(t)
    for m in t.vertices:
        for l in t.vertices:
            blk = t.block(m, l)
            dims = []
            for P in powers:
                vecs = [b for b in P.basis]
                sub = Subspace.span(t.field, t.dim, [tuple(x if k in blk else 0 for k, x in enumerate(v)) for v in vecs])
                dims.append(sub.dim)
            prof.append(((sigma[m], sigma[l]), "powers", tuple(dims)))
            for mid in t.vertices:
                prods = [t.basis_product(i, j)
                         for i in t.block(m, mid) if i in rad
                         for j in t.block(mid, l) if j in rad]
                prof.append(((sigma[m], sigma[mid], sigma[l]), "triple",
                             Subspace.span(t.field, t.dim, prods).dim))
    return tuple(sorted(prof, key=repr))


def is_isomorphic_algebra(a: AlgebraTable, b: AlgebraTable) -> bool | None:
    """Three-valued algebra isomorphism test: True, False, or None (undecided).

    A complete set of primitive orthogonal idempotents is unique up to
    conjugation and relabelling, so an isomorphism can be assumed to map
    e_λ to f_σ(λ) for a bijection σ; block dimensions of radical powers
    and of products of radical blocks are then invariants.  "False" is a
    certificate: no σ matches the invariants.  "True" needs identical
    tables after some relabelling.
    """
    if a.dim != b.dim or len(a.vertices) != len(b.vertices) or a.field != b.field:
        return False
    target = _block_product_profile(b, {v: v for v in b.vertices})
    matched = False
    for perm in permutations(b.vertices):
        sigma = dict(zip(a.vertices, perm))
        if any(a.block_dim(m, l) != b.block_dim(sigma[m], sigma[l]) for m in a.vertices for l in a.vertices):
            continue
        if _block_product_profile(a, sigma) == target:
            matched = True
            if sigma == {v: v for v in a.vertices} and a.products == b.products and a.basis == b.basis:
                return True
    return None if matched else False


def free_over_local(t: AlgebraTable, vertex: str, vectors: Sequence[Sequence], side: str = "left") -> bool:
    """Is span(vectors) free over the local algebra L = e_v A e_v?

    ``side="left"`` lets L act by left multiplication, ``"right"`` by right
    multiplication.  The span must be stable under that action.  Because L
    is local with residue field the ground field, freeness is equivalent to
    dim X = dim L * dim(X / rad(L) X).
    """
    X = Subspace.span(t.field, t.dim, vectors)
    if X.dim == 0:
        return True
    local = t.block(vertex, vertex)
    rad_local = [k for k in local if not t.basis[k].is_trivial]
    if side == "left":
        moved = [t.multiply(t.unit(k), x) for k in rad_local for x in X.basis]
    elif side == "right":
        moved = [t.multiply(x, t.unit(k)) for k in rad_local for x in X.basis]
    else:
        raise ValueError(side)
    radX = Subspace.span(t.field, t.dim, moved)
    if not X.contains_subspace(radX):
        raise ValueError("span is not stable under the local algebra")
    return X.dim == len(local) * (X.dim - radX.dim)
