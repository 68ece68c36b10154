"""Dense matrices over GF(2).

Entries live in a ``uint8`` numpy array holding 0/1. Vectors acting on the
right are column vectors, so column ``k`` of a matrix is the image of the
``k``-th basis vector. Columns can also be exchanged as integer bitmasks
(bit ``r`` of column ``k`` is entry ``(r, k)``), which is the packed form the
group engine uses.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class Gf2Matrix:
    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.uint8) & 1
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Gf2Matrix:
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> Gf2Matrix:
        """Build a matrix from bitmask columns."""
        a = np.zeros((rows, len(columns)), dtype=np.uint8)
        for k, col in enumerate(columns):
            if col >> rows:
                raise ValueError(f"column {k} has bits beyond row {rows - 1}")
            for r in range(rows):
                a[r, k] = (col >> r) & 1
        return cls(a)

    @classmethod
    def block_diag(cls, *blocks: Gf2Matrix) -> Gf2Matrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        a = np.zeros((rows, cols), dtype=np.uint8)
        r = c = 0
        for b in blocks:
            a[r:r + b.rows, c:c + b.cols] = b.array
            r += b.rows
            c += b.cols
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def T(self) -> Gf2Matrix:
        return Gf2Matrix(self._a.T)

    def columns(self) -> tuple[int, ...]:
        """Columns as bitmasks."""
        return tuple(
            sum(1 << int(r) for r in np.flatnonzero(self._a[:, k])) for k in range(self.cols)
        )

    def apply(self, vec: int) -> int:
        """Image of a bitmask vector."""
        out = 0
        for k, col in enumerate(self.columns()):
            if (vec >> k) & 1:
                out ^= col
        return out

    def __add__(self, other: Gf2Matrix) -> Gf2Matrix:
        return Gf2Matrix(self._a ^ other._a)

    __sub__ = __add__

    def __matmul__(self, other: Gf2Matrix) -> Gf2Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # float64 BLAS; dot products of 0/1 vectors are exact below 2**53
        prod = self._a.astype(np.float64) @ other._a.astype(np.float64)
        return Gf2Matrix(prod.astype(np.int64) & 1)

    def __pow__(self, k: int) -> Gf2Matrix:
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Gf2Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self._a.tolist()})"

    def is_identity(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self._a, np.eye(self.rows, dtype=np.uint8)))

    def rank(self) -> int:
        return _row_reduce(self._a.copy())[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def kernel_dim(self) -> int:
        return self.cols - self.rank()

    def inverse(self) -> Gf2Matrix:
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = np.concatenate([self._a, np.eye(n, dtype=np.uint8)], axis=1)
        reduced, rank = _row_reduce(aug, ncols=n)
        if rank < n:
            raise ValueError("matrix is singular over GF(2)")
        return Gf2Matrix(reduced[:, n:])


def _row_reduce(a: np.ndarray, ncols: int | None = None) -> tuple[np.ndarray, int]:
    """Reduced row echelon form in place over the first ``ncols`` columns."""
    rows = a.shape[0]
    ncols = a.shape[1] if ncols is None else ncols
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        pivots = np.flatnonzero(a[r:, c])
        if pivots.size == 0:
            continue
        piv = r + pivots[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        hit = np.flatnonzero(a[:, c])
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
    return a, r


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(u: int, v: int) -> int:
    """Standard GF(2) inner product of two bitmask vectors."""
    return (u & v).bit_count() & 1


def bits_to_mask(bits: Iterable[int]) -> int:
    """Pack a 0/1 sequence (first entry = lowest bit)."""
    out = 0
    for k, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        out |= b << k
    return out


def mask_to_bits(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> k) & 1 for k in range(n))
