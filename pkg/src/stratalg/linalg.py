"""Exact linear algebra over the rationals and prime fields.

Vectors are plain tuples of field elements and matrices are row-major
tuples of such vectors.  Rational scalars are :class:`fractions.Fraction`
values, prime-field scalars are ints in ``range(p)``.  Nothing in this
module ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.characteristic}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"-3/2"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, p - 2, p) % p
        return int(x) % p

    def norm(self, a):
        return a % self.characteristic if self.characteristic else a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, p - 2, p) if p else 1 / Fraction(a)

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def elements(self) -> range:
        if not self.characteristic:
            raise ValueError("Q is infinite")
        return range(self.characteristic)

    def to_str(self, a) -> str:
        return str(a)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def zero_vector(F: Field, n: int) -> tuple:
    return (F.zero,) * n


def unit_vector(F: Field, n: int, i: int) -> tuple:
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def is_zero(v: Iterable) -> bool:
    return not any(v)


def add(F: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(F.norm(a + b) for a, b in zip(u, v))


def sub(F: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(F.norm(a - b) for a, b in zip(u, v))


def scale(F: Field, c, v: Sequence) -> tuple:
    return tuple(F.norm(c * a) for a in v)


def combine(F: Field, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> tuple:
    """Return sum(c * v) over paired coefficients and vectors of length n."""
    out = [F.zero] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(F.norm(a) for a in out)


def _rref_rows(F: Field, rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = F.inv(work[r][c])
        prow = [F.norm(x * inv) for x in work[r]]
        work[r] = prow
        for i in range(nrows):
            f = work[i][c]
            if i != r and f:
                row = work[i]
                for j in range(c, ncols):
                    b = prow[j]
                    if b:
                        row[j] = F.norm(row[j] - f * b)
        pivots.append(c)
        r += 1
    return work[:r], pivots


@dataclass(frozen=True)
class Matrix:
    """A dense matrix over ``field`` with ``nrows x ncols`` entries."""

    field: Field
    nrows: int
    ncols: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, F: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(F(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        return cls(F, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, F: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(F, nrows, ncols, tuple((F.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, n, n, tuple(unit_vector(F, n, i) for i in range(n)))

    @classmethod
    def from_columns(cls, F: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls(F, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else
                      tuple(() for _ in range(self.ncols)))

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        return tuple(F.norm(sum((a * b for a, b in zip(r, v) if a and b), F.zero)) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        out = []
        for r in self.rows:
            acc = [F.zero] * other.ncols
            for a, orow in zip(r, other.rows):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(F.norm(x) for x in acc))
        return Matrix(F, self.nrows, other.ncols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(add(F, a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(sub(F, a, b) for a, b in zip(self.rows, other.rows)))

    def scaled(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(scale(F, c, r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def to_lists(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]


def block_diagonal(F: Field, blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = []
    c0 = 0
    for b in blocks:
        for r in b.rows:
            rows.append((F.zero,) * c0 + r + (F.zero,) * (nc - c0 - b.ncols))
        c0 += b.ncols
    return Matrix(F, nr, nc, tuple(rows))


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``m`` (zero rows kept at the bottom) and its rank."""
    rows, pivots = _rref_rows(m.field, m.rows, m.ncols)
    rank = len(pivots)
    padded = [tuple(r) for r in rows] + [zero_vector(m.field, m.ncols)] * (m.nrows - rank)
    return Matrix(m.field, m.nrows, m.ncols, tuple(padded)), rank


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.field, m.rows, m.ncols)[1])


def rank_of_vectors(F: Field, vectors: Sequence[Sequence], n: int) -> int:
    return len(_rref_rows(F, vectors, n)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient`` stored by its reduced row-echelon basis.

    Because the basis is canonical, two subspaces are equal exactly when
    their dataclass fields are equal.
    """

    field: Field
    ambient: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, F: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows, pivots = _rref_rows(F, vectors, ambient)
        return cls(F, ambient, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def zero(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, (), ())

    @classmethod
    def full(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, tuple(unit_vector(F, ambient, i) for i in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient dimension mismatch: {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        F = self.field
        out = list(v)
        for p, b in zip(self.pivots, self.basis):
            c = out[p]
            if c:
                for j, x in enumerate(b):
                    if x:
                        out[j] = F.norm(out[j] - c * x)
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        return is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in ``self.basis``; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def free_coordinates(self) -> tuple[int, ...]:
        pivots = set(self.pivots)
        return tuple(i for i in range(self.ambient) if i not in pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.basis:
            return self
        if not self.basis:
            return other
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection by the Zassenhaus block construction."""
        self._check(other)
        F, n = self.field, self.ambient
        if not self.basis or not other.basis:
            return Subspace.zero(F, n)
        zeros = zero_vector(F, n)
        block = [b + b for b in self.basis] + [b + zeros for b in other.basis]
        rows, _ = _rref_rows(F, block, 2 * n)
        inter = [tuple(r[n:]) for r in rows if is_zero(r[:n])]
        return Subspace.span(F, n, inter)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(self.field, m.nrows, [m.apply(b) for b in self.basis])


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def contains(u: Subspace, w: Sequence) -> bool:
    return u.contains(w)


def kernel(m: Matrix) -> Subspace:
    """Null space of ``m`` as a subspace of ``field^ncols``."""
    F, n = m.field, m.ncols
    rows, pivots = _rref_rows(F, m.rows, n)
    pivset = set(pivots)
    vectors = []
    for free in range(n):
        if free in pivset:
            continue
        v = [F.zero] * n
        v[free] = F.one
        for r, p in zip(rows, pivots):
            if r[free]:
                v[p] = F.norm(-r[free])
        vectors.append(v)
    return Subspace.span(F, n, vectors)


def kernel_of_rows(F: Field, rows: Sequence[Sequence], n: int) -> Subspace:
    return kernel(Matrix(F, len(rows), n, tuple(tuple(r) for r in rows)))


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.columns())


def solve(a: Matrix, b: Sequence) -> tuple | None:
    """Some x with ``a @ x == b``, or None when the system is inconsistent."""
    F, n = a.field, a.ncols
    if len(b) != a.nrows:
        raise ValueError("right-hand side length does not match row count")
    aug = [r + (F(x),) for r, x in zip(a.rows, b)]
    rows, pivots = _rref_rows(F, aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [F.zero] * n
    for r, p in zip(rows, pivots):
        x[p] = r[n]
    return tuple(x)


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def determinant(m: Matrix):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    F = m.field
    work = [list(r) for r in m.rows]
    n = m.nrows
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = F.norm(-det)
        det = F.norm(det * work[c][c])
        inv = F.inv(work[c][c])
        for i in range(c + 1, n):
            f = F.norm(work[i][c] * inv)
            if f:
                work[i] = [F.norm(x - f * y) for x, y in zip(work[i], work[c])]
    return det
