"""Exact linear algebra over the prime field F_p.

Everything here is immutable.  A :class:`Subspace` always stores the reduced
row-echelon basis of its row space, so two equal subspaces have identical
``basis`` tuples and can be used as dictionary keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DimensionMismatch, RamfiltError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class FpMatrix:
    p: int
    cols: int
    rows: tuple[Vector, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        for r in rows:
            if len(r) != self.cols:
                raise DimensionMismatch(f"row of length {len(r)} in a matrix with {self.cols} columns")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows, p, cols=None) -> FpMatrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer the column count of an empty matrix")
            cols = len(rows[0])
        return cls(p, cols, tuple(rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, self.nrows, tuple(zip(*self.rows)) if self.rows else ())

    def apply(self, v) -> Vector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match matrix columns")
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)


def _rref_rows(rows, p, cols):
    """Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                factor = m[i][c]
                m[i] = [(x - factor * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(x % p for x in row) for row in m[:r]), tuple(pivots)


def rref(m: FpMatrix) -> FpMatrix:
    """Canonical reduced row-echelon form (pivots equal to 1, zero rows dropped)."""
    rows, _ = _rref_rows(m.rows, m.p, m.cols)
    return FpMatrix(m.p, m.cols, rows)


def rank(m: FpMatrix) -> int:
    return len(_rref_rows(m.rows, m.p, m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    p: int
    ambient_dim: int
    basis: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {self.ambient_dim}"
                )
        rows, pivots = _rref_rows(self.basis, self.p, self.ambient_dim)
        object.__setattr__(self, "basis", rows)
        object.__setattr__(self, "pivots", pivots)

    @classmethod
    def zero(cls, ambient_dim, p) -> Subspace:
        return cls(p, ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim, p) -> Subspace:
        return cls(p, ambient_dim, tuple(unit_vector(i, ambient_dim) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def _check(self, other: Subspace):
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def reduce(self, v) -> Vector:
        """Canonical representative of ``v`` modulo this subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        p = self.p
        w = [x % p for x in v]
        for row, c in zip(self.basis, self.pivots):
            a = w[c]
            if a:
                w = [(x - a * y) % p for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __lt__(self, other: Subspace) -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.p, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def annihilator(self) -> Subspace:
        """Vectors w with <v, w> = 0 for every v in the subspace (standard pairing)."""
        p, d = self.p, self.ambient_dim
        free = [j for j in range(d) if j not in self.pivots]
        out = []
        for j in free:
            w = [0] * d
            w[j] = 1
            for row, c in zip(self.basis, self.pivots):
                w[c] = (-row[j]) % p
            out.append(tuple(w))
        return Subspace(p, d, tuple(out))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def unit_vector(i, d) -> Vector:
    return tuple(1 if j == i else 0 for j in range(d))


def span(vectors, ambient_dim, p) -> Subspace:
    return Subspace(p, ambient_dim, tuple(tuple(v) for v in vectors))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    return a <= b


def _combinations(basis, p, leading_one):
    """All nonzero combinations of ``basis`` (first nonzero coefficient 1 if ``leading_one``)."""
    k = len(basis)
    d = len(basis[0]) if basis else 0
    for coeffs in itertools.product(range(p), repeat=k):
        nz = next((c for c in coeffs if c), 0)
        if not nz or (leading_one and nz != 1):
            continue
        v = [0] * d
        for c, row in zip(coeffs, basis):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, row)]
        yield tuple(v)


def enumerate_lines(a: Subspace) -> list[Vector]:
    """One normalized representative (first nonzero entry 1) per line of ``a``, sorted."""
    return sorted(_combinations(a.basis, a.p, leading_one=True))


def enumerate_vectors(a: Subspace) -> list[Vector]:
    """Every vector of ``a`` including zero."""
    return [tuple([0] * a.ambient_dim)] + sorted(_combinations(a.basis, a.p, leading_one=False))


def enumerate_hyperplanes_above(n: Subspace) -> list[Subspace]:
    """All codimension-one subspaces of the ambient space that contain ``n``.

    They are the kernels of the lines of the annihilator of ``n``, so the work
    is proportional to the number of hyperplanes rather than the ambient size.
    """
    if n.dim == n.ambient_dim:
        raise RamfiltError("no hyperplane contains the whole ambient space")
    ann = n.annihilator()
    hyps = [Subspace(n.p, n.ambient_dim, (w,)).annihilator() for w in enumerate_lines(ann)]
    return sorted(hyps, key=lambda h: h.basis)


def enumerate_subspaces(ambient_dim, p, dim=None):
    """Yield every subspace of F_p^ambient_dim (optionally only those of dimension ``dim``).

    Walks reduced echelon shapes directly: pivot set, then the free entries to
    the right of each pivot.
    """
    dims = range(ambient_dim + 1) if dim is None else [dim]
    for k in dims:
        for pivots in itertools.combinations(range(ambient_dim), k):
            slots = [
                (i, j)
                for i, c in enumerate(pivots)
                for j in range(c + 1, ambient_dim)
                if j not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * ambient_dim for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), val in zip(slots, values):
                    rows[i][j] = val
                yield Subspace(p, ambient_dim, tuple(tuple(r) for r in rows))


def solve(m: FpMatrix, b) -> Vector | None:
    """One solution x of ``m @ x = b`` or None if the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionMismatch("right-hand side length does not match matrix rows")
    p, n = m.p, m.cols
    aug = [tuple(r) + (bi % p,) for r, bi in zip(m.rows, b)]
    rows, pivots = _rref_rows(aug, p, n + 1)
    if n in pivots:
        return None
    x = [0] * n
    for row, c in zip(rows, pivots):
        x[c] = row[n]
    return tuple(x)
