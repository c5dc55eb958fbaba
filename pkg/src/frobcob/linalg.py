"""Linear maps between tensor powers of a fixed space V over Q(i).

A map carries its dimension d and tensor arities (m in, n out), so it is
a d^n x d^m matrix.  Basis vectors of V^(x)k are indexed mixed-radix in
base d with the *leftmost* tensor factor most significant; every other
module relies on this single convention, including kron (the left
operand occupies the more significant digits).

Matrices are stored sparsely (explicit zeros are dropped at
construction) but the semantics are dense: equality compares every
entry, and entry() returns 0 for absent positions.  Inversion uses the
Bareiss one-step-division recurrence so intermediate entries stay the
size of minors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .scalar import ONE, ZERO, Scalar, as_scalar


class ShapeError(ValueError):
    """Raised when two maps cannot be combined; names both shapes."""


class SingularMatrixError(ArithmeticError):
    """Raised by invert(); carries the elimination stage whose pivots all vanish."""

    def __init__(self, stage: int):
        self.stage = stage
        super().__init__(f"matrix is singular: every pivot vanishes at elimination stage {stage}")


def tuple_to_index(t: Iterable[int], d: int) -> int:
    """Mixed-radix index of a factor tuple, leftmost factor most significant."""
    i = 0
    for x in t:
        i = i * d + x
    return i


def index_to_tuple(i: int, d: int, k: int) -> tuple[int, ...]:
    out = [0] * k
    for pos in range(k - 1, -1, -1):
        i, out[pos] = divmod(i, d)
    return tuple(out)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..k-1}; images[j] is where position j is sent."""

    images: tuple[int, ...]

    def __post_init__(self):
        k = len(self.images)
        if sorted(self.images) != list(range(k)):
            raise ValueError(f"not a permutation of 0..{k - 1}: {self.images}")

    def __call__(self, j: int) -> int:
        return self.images[j]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(j) = p(q(j)): apply q first, matching matrix products.
        if len(self) != len(other):
            raise ValueError("permutation size mismatch")
        return Permutation(tuple(self.images[other.images[j]] for j in range(len(self))))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for j, t in enumerate(self.images):
            inv[t] = j
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))


class LinearMap:
    """A linear map V^(x)arity_in -> V^(x)arity_out with exact entries."""

    __slots__ = ("dim", "arity_out", "arity_in", "_entries")

    def __init__(self, dim: int, arity_out: int, arity_in: int,
                 entries: Mapping[tuple[int, int], object] | Iterable = ()):
        if dim < 1:
            raise ValueError(f"dimension must be at least 1, got {dim}")
        if arity_out < 0 or arity_in < 0:
            raise ValueError("tensor arities must be nonnegative")
        self.dim = dim
        self.arity_out = arity_out
        self.arity_in = arity_in
        rows, cols = dim ** arity_out, dim ** arity_in
        store: dict[tuple[int, int], Scalar] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside a {rows}x{cols} matrix")
            s = as_scalar(v)
            if s:
                store[(r, c)] = s
        self._entries = store

    @property
    def rows(self) -> int:
        return self.dim ** self.arity_out

    @property
    def cols(self) -> int:
        return self.dim ** self.arity_in

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, r: int, c: int) -> Scalar:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r},{c}) outside a {self.rows}x{self.cols} matrix")
        return self._entries.get((r, c), ZERO)

    def items(self):
        """Iterate over the nonzero entries as ((row, col), value)."""
        return self._entries.items()

    def nnz(self) -> int:
        return len(self._entries)

    def to_rows(self) -> list[list[Scalar]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def to_text(self) -> str:
        """Dense text form: rows joined by ';', entries by ','."""
        return ";".join(
            ",".join(str(self.entry(r, c)) for c in range(self.cols))
            for r in range(self.rows)
        )

    @classmethod
    def identity(cls, dim: int, arity: int) -> "LinearMap":
        n = dim ** arity
        return cls(dim, arity, arity, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, dim: int, arity_out: int, arity_in: int) -> "LinearMap":
        return cls(dim, arity_out, arity_in)

    @classmethod
    def scalar_map(cls, dim: int, value) -> "LinearMap":
        """The 1x1 map on V^(x)0 given by multiplication with value."""
        return cls(dim, 0, 0, {(0, 0): as_scalar(value)})

    @classmethod
    def from_rows(cls, dim: int, arity_out: int, arity_in: int, rows) -> "LinearMap":
        rows = list(rows)
        if len(rows) != dim ** arity_out:
            raise ShapeError(f"expected {dim ** arity_out} rows, got {len(rows)}")
        entries = {}
        for r, row in enumerate(rows):
            row = list(row)
            if len(row) != dim ** arity_in:
                raise ShapeError(f"row {r}: expected {dim ** arity_in} entries, got {len(row)}")
            for c, v in enumerate(row):
                entries[(r, c)] = as_scalar(v)
        return cls(dim, arity_out, arity_in, entries)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: d={self.dim} vs d={other.dim}")
        if self.arity_in != other.arity_out:
            raise ShapeError(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}:"
                f" inner sizes {self.cols} and {other.rows} differ")
        by_col: dict[int, list[tuple[int, Scalar]]] = {}
        for (r, c), v in self._entries.items():
            by_col.setdefault(c, []).append((r, v))
        acc: dict[tuple[int, int], Scalar] = {}
        for (k, j), w in other._entries.items():
            for r, v in by_col.get(k, ()):
                key = (r, j)
                prev = acc.get(key)
                acc[key] = v * w if prev is None else prev + v * w
        return LinearMap(self.dim, self.arity_out, other.arity_in, acc)

    def kron(self, other: "LinearMap") -> "LinearMap":
        """Tensor product; self occupies the more significant digits."""
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: d={self.dim} vs d={other.dim}")
        orows, ocols = other.rows, other.cols
        entries = {}
        for (r1, c1), v1 in self._entries.items():
            for (r2, c2), v2 in other._entries.items():
                entries[(r1 * orows + r2, c1 * ocols + c2)] = v1 * v2
        return LinearMap(self.dim, self.arity_out + other.arity_out,
                         self.arity_in + other.arity_in, entries)

    def scale(self, value) -> "LinearMap":
        s = as_scalar(value)
        return LinearMap(self.dim, self.arity_out, self.arity_in,
                         {k: s * v for k, v in self._entries.items()})

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.dim, self.arity_out, self.arity_in) != (other.dim, other.arity_out, other.arity_in):
            raise ShapeError(f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols} maps")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            prev = acc.get(k)
            acc[k] = v if prev is None else prev + v
        return LinearMap(self.dim, self.arity_out, self.arity_in, acc)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.dim == other.dim
                and self.arity_out == other.arity_out
                and self.arity_in == other.arity_in
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.dim, self.arity_out, self.arity_in,
                     frozenset(self._entries.items())))

    def __repr__(self):
        return (f"<LinearMap {self.rows}x{self.cols} d={self.dim}"
                f" arity {self.arity_in}->{self.arity_out}, {self.nnz()} nonzero>")


def matmul(f: LinearMap, g: LinearMap) -> LinearMap:
    """Composite f after g."""
    return f @ g


def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    return f.kron(g)


def kron_all(maps: Iterable[LinearMap], dim: int) -> LinearMap:
    """Tensor a sequence left to right; empty input gives the 1x1 identity."""
    acc = None
    for m in maps:
        acc = m if acc is None else acc.kron(m)
    return acc if acc is not None else LinearMap.scalar_map(dim, 1)


def invert(f: LinearMap) -> LinearMap:
    """Exact inverse of a square map via fraction-free style elimination."""
    if f.arity_in != f.arity_out:
        raise ShapeError(f"only square maps invert: {f.rows}x{f.cols}")
    n = f.rows
    a = f.to_rows()
    b = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    prev = ONE
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise SingularMatrixError(k)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            b[k], b[piv] = b[piv], b[k]
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]) / prev
            for j in range(n):
                b[i][j] = (pk * b[i][j] - aik * b[k][j]) / prev
            a[i][k] = ZERO
        prev = pk

    entries = {}
    for c in range(n):
        x: list[Scalar] = [ZERO] * n
        for i in range(n - 1, -1, -1):
            s = b[i][c]
            for j in range(i + 1, n):
                if a[i][j] and x[j]:
                    s = s - a[i][j] * x[j]
            x[i] = s / a[i][i]
        for r in range(n):
            if x[r]:
                entries[(r, c)] = x[r]
    return LinearMap(f.dim, f.arity_in, f.arity_out, entries)


@lru_cache(maxsize=None)
def _permute_cached(images: tuple[int, ...], d: int) -> LinearMap:
    k = len(images)
    entries = {}
    for src in range(d ** k):
        s = index_to_tuple(src, d, k)
        t = [0] * k
        for j in range(k):
            t[images[j]] = s[j]
        entries[(tuple_to_index(t, d), src)] = ONE
    return LinearMap(d, k, k, entries)


def permute_factors(p: Permutation, d: int) -> LinearMap:
    """The d^k x d^k matrix routing tensor factor j to position p(j).

    Sends e_{i_1} x ... x e_{i_k} to the basis vector whose factor at
    position p(j) is i_j; composition of permutations maps to the
    product of the corresponding matrices.
    """
    return _permute_cached(p.images, d)
