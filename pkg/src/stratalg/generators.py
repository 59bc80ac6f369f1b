"""Seeded random admissible presentations, for differential testing."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import AlgebraTable, Arrow, Quiver, Relation, build_table
from .errors import CapExceeded
from .linalg import QQ, Field

VERTEX_NAMES = "abcd"


def _paths_of_length(quiver: Quiver, n: int) -> list[tuple[str, ...]]:
    paths = [((), v, v) for v in quiver.vertices]
    for _ in range(n):
        paths = [((a.name,) + w, s, a.target) for w, s, t in paths for a in quiver.arrows if a.source == t]
    return [w for w, _, _ in paths]


def random_presentation(rng: random.Random, max_vertices: int = 4, max_arrows: int = 5,
                        loewy_bound: int | None = None) -> tuple[Quiver, tuple[Relation, ...]]:
    """A random quiver with relations whose ideal contains every path of length ``loewy_bound``.

    Relations mix zero relations, commutativity-type relations between
    parallel paths of length two, and the monomials of length
    ``loewy_bound`` that make the presentation admissible and finite.
    """
    n = rng.randint(1, max_vertices)
    vertices = tuple(VERTEX_NAMES[:n])
    arrows = []
    for i in range(rng.randint(0, max_arrows)):
        s, t = rng.choice(vertices), rng.choice(vertices)
        arrows.append(Arrow(f"a{i}", s, t))
    quiver = Quiver(vertices, tuple(arrows))
    bound = loewy_bound or rng.choice((2, 3, 3, 4))
    rels = []
    two = _paths_of_length(quiver, 2)
    by_ends: dict[tuple[str, str], list[tuple[str, ...]]] = {}
    for w in two:
        first, last = quiver.arrow(w[-1]), quiver.arrow(w[0])
        by_ends.setdefault((first.source, last.target), []).append(w)
    for ends, ws in sorted(by_ends.items()):
        for w in ws:
            r = rng.random()
            if r < 0.3:
                rels.append(Relation(((Fraction(1), w),)))
        if len(ws) >= 2 and rng.random() < 0.4:
            u, v = rng.sample(ws, 2)
            c = Fraction(rng.choice((1, -1, 2)))
            rels.append(Relation(((Fraction(1), u), (-c, v))))
    if bound > 2:
        rels.extend(Relation(((Fraction(1), w),)) for w in _paths_of_length(quiver, bound))
    else:
        rels.extend(Relation(((Fraction(1), w),)) for w in two)
    return quiver, tuple(rels)


def random_algebras(seed: int, count: int, max_dim: int = 12, max_vertices: int = 4,
                    field: Field = QQ, max_attempts: int | None = None) -> list[AlgebraTable]:
    """``count`` random algebras with dim <= max_dim (oversized draws are rejected)."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    limit = max_attempts or 50 * count
    while len(out) < count:
        attempts += 1
        if attempts > limit:
            raise RuntimeError(f"only {len(out)} algebras within dim {max_dim} after {limit} draws")
        q, rels = random_presentation(rng, max_vertices=max_vertices)
        try:
            t = build_table(q, rels, field, max_paths=4000)
        except CapExceeded:
            continue
        if t.dim <= max_dim:
            out.append(t)
    return out
