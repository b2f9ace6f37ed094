"""Exact square matrices, truncated jets and block lower-triangular matrices.

Entries may be any exact ring elements supporting ``+ - *`` (field elements
of an :class:`~pvp.fields.OperatorSpec`, sparse polynomials, cyclotomic
numbers).  ``det`` and ``inv`` additionally need exact division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from pvp.fields import OperatorSpec, apply_delta, apply_sigma


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


@dataclass(frozen=True)
class SqMatrix:
    rows: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, m: int, one) -> SqMatrix:
        zero = one - one
        return cls(tuple(tuple(one if i == j else zero for j in range(m)) for i in range(m)))

    @classmethod
    def zeros(cls, m: int, zero) -> SqMatrix:
        return cls(tuple(tuple(zero for _ in range(m)) for _ in range(m)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def zero(self):
        e = self.rows[0][0]
        return e - e

    @property
    def one(self):
        return self.zero + 1

    def map(self, fn: Callable) -> SqMatrix:
        return SqMatrix(tuple(tuple(fn(e) for e in r) for r in self.rows))

    def _check(self, other: SqMatrix):
        if not isinstance(other, SqMatrix):
            raise TypeError(f"expected SqMatrix, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: SqMatrix) -> SqMatrix:
        self._check(other)
        return SqMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def __sub__(self, other: SqMatrix) -> SqMatrix:
        return self + (-other)

    def __neg__(self) -> SqMatrix:
        return self.map(lambda e: -e)

    def scale(self, c) -> SqMatrix:
        return self.map(lambda e: c * e)

    def __mul__(self, other):
        if not isinstance(other, SqMatrix):
            return self.scale(other)
        self._check(other)
        m = self.dim
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = self.zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return SqMatrix(tuple(out))

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self.rows for e in r)

    def det(self):
        """Fraction-free Bareiss elimination."""
        m = self.dim
        a = [list(r) for r in self.rows]
        sign = 1
        prev = self.one
        for k in range(m - 1):
            if a[k][k] == 0:
                for i in range(k + 1, m):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return self.zero
            for i in range(k + 1, m):
                for j in range(k + 1, m):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        d = a[m - 1][m - 1]
        return d if sign > 0 else -d

    def inv(self) -> SqMatrix:
        """Gauss-Jordan inverse over a field."""
        m = self.dim
        one, zero = self.one, self.zero
        a = [list(r) + [one if i == j else zero for j in range(m)] for i, r in enumerate(self.rows)]
        for k in range(m):
            piv = next((i for i in range(k, m) if a[i][k] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            p = a[k][k]
            a[k] = [e / p for e in a[k]]
            for i in range(m):
                if i != k and a[i][k] != 0:
                    f = a[i][k]
                    a[i] = [e - f * ek for e, ek in zip(a[i], a[k])]
        return SqMatrix(tuple(tuple(r[m:]) for r in a))

    def to_json(self, fmt: Callable) -> list[list[str]]:
        return [[fmt(e) for e in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], parse: Callable) -> SqMatrix:
        if not isinstance(data, (list, tuple)) or not data:
            raise DimensionError("matrix must be a non-empty array of arrays")
        return cls(tuple(tuple(parse(e) for e in r) for r in data))


def mat_add(a: SqMatrix, b: SqMatrix) -> SqMatrix:
    return a + b


def mat_mul(a: SqMatrix, b: SqMatrix) -> SqMatrix:
    return a * b


def mat_det(a: SqMatrix):
    return a.det()


def mat_inv(a: SqMatrix) -> SqMatrix:
    return a.inv()


def mat_sigma(spec: OperatorSpec, a: SqMatrix) -> SqMatrix:
    return a.map(lambda e: apply_sigma(spec, e))


def mat_delta(spec: OperatorSpec, a: SqMatrix, times: int = 1) -> SqMatrix:
    for _ in range(times):
        a = a.map(lambda e: apply_delta(spec, e))
    return a


def derivatives(spec: OperatorSpec, a: SqMatrix, n: int) -> list[SqMatrix]:
    """[A, A', ..., A^(n)]."""
    out = [a]
    for _ in range(n):
        out.append(mat_delta(spec, out[-1]))
    return out


@dataclass(frozen=True)
class Jet:
    """A truncated tuple (B, B', ..., B^(n)) under the Leibniz product."""

    terms: tuple[SqMatrix, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise DimensionError("a jet needs at least one term")
        if any(t.dim != terms[0].dim for t in terms):
            raise DimensionError("all jet terms must share a dimension")
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def dim(self) -> int:
        return self.terms[0].dim

    @classmethod
    def unit(cls, order: int, m: int, one) -> Jet:
        eye = SqMatrix.identity(m, one)
        zero = SqMatrix.zeros(m, one - one)
        return cls((eye,) + (zero,) * order)

    @classmethod
    def constant(cls, b: SqMatrix, order: int) -> Jet:
        return cls((b,) + (SqMatrix.zeros(b.dim, b.zero),) * order)

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise DimensionError(f"cannot truncate order {self.order} jet to order {order}")
        return Jet(self.terms[: order + 1])

    def __mul__(self, other: Jet) -> Jet:
        return jet_mul(self, other)

    def inverse(self) -> Jet:
        return jet_inv(self)

    def to_json(self, fmt: Callable) -> dict:
        return {"order": self.order, "matrices": [t.to_json(fmt) for t in self.terms]}

    @classmethod
    def from_json(cls, data, parse: Callable) -> Jet:
        if isinstance(data, dict):
            mats = data.get("matrices")
            order = data.get("order")
        else:
            mats, order = data, None
        if not isinstance(mats, list) or not mats:
            raise DimensionError("a jet is a non-empty array of matrices")
        jet = cls(tuple(SqMatrix.from_json(t, parse) for t in mats))
        if order is not None and order != jet.order:
            raise DimensionError(f"jet declares order {order} but carries {len(mats)} matrices")
        return jet


def _check_jets(b: Jet, c: Jet):
    if b.order != c.order:
        raise DimensionError(f"jet order mismatch: {b.order} vs {c.order}")
    if b.dim != c.dim:
        raise DimensionError(f"jet dimension mismatch: {b.dim} vs {c.dim}")


def jet_mul(b: Jet, c: Jet) -> Jet:
    _check_jets(b, c)
    out = []
    for k in range(b.order + 1):
        acc = b.terms[0] * c.terms[k]
        for i in range(1, k + 1):
            acc = acc + (b.terms[i] * c.terms[k - i]).scale(binomial(k, i))
        out.append(acc)
    return Jet(tuple(out))


def jet_inv(b: Jet) -> Jet:
    """Solve the triangular Leibniz recursion for the two-sided inverse."""
    b0_inv = b.terms[0].inv()
    out = [b0_inv]
    for k in range(1, b.order + 1):
        acc = b.terms[k] * out[0]
        for i in range(1, k):
            acc = acc + (b.terms[i] * out[k - i]).scale(binomial(k, i))
        out.append(-(b0_inv * acc))
    return Jet(tuple(out))


@dataclass(frozen=True)
class BlockMatrix:
    """(n+1) x (n+1) grid of m x m blocks."""

    blocks: tuple[tuple[SqMatrix, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(r) for r in self.blocks)
        size = len(blocks)
        if not size or any(len(r) != size for r in blocks):
            raise DimensionError("block grid must be square")
        m = blocks[0][0].dim
        if any(b.dim != m for r in blocks for b in r):
            raise DimensionError("all blocks must share a dimension")
        object.__setattr__(self, "blocks", blocks)

    @property
    def order(self) -> int:
        return len(self.blocks) - 1

    @property
    def block_dim(self) -> int:
        return self.blocks[0][0].dim

    def block(self, r: int, c: int) -> SqMatrix:
        return self.blocks[r][c]

    def replace(self, r: int, c: int, new: SqMatrix) -> BlockMatrix:
        rows = [list(row) for row in self.blocks]
        rows[r][c] = new
        return BlockMatrix(tuple(tuple(row) for row in rows))

    def truncate(self, order: int) -> BlockMatrix:
        k = order + 1
        return type(self)(tuple(row[:k] for row in self.blocks[:k]))

    def is_lower_triangular(self) -> bool:
        size = self.order + 1
        return all(self.blocks[r][c].is_zero() for r in range(size) for c in range(r + 1, size))

    def has_constant_diagonal(self) -> bool:
        d = self.blocks[0][0]
        return all(self.blocks[i][i] == d for i in range(self.order + 1))

    def __mul__(self, other: BlockMatrix) -> BlockMatrix:
        if self.order != other.order or self.block_dim != other.block_dim:
            raise DimensionError("block shape mismatch")
        size = self.order + 1
        out = []
        for r in range(size):
            row = []
            for c in range(size):
                acc = None
                for s in range(size):
                    a, b = self.blocks[r][s], other.blocks[s][c]
                    if a.is_zero() or b.is_zero():
                        continue
                    prod = a * b
                    acc = prod if acc is None else acc + prod
                row.append(acc if acc is not None else SqMatrix.zeros(self.block_dim, self.blocks[r][c].zero))
            out.append(tuple(row))
        return BlockMatrix(tuple(out))

    def __eq__(self, other):
        return isinstance(other, BlockMatrix) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def flatten(self) -> SqMatrix:
        m = self.block_dim
        rows = []
        for brow in self.blocks:
            for i in range(m):
                rows.append(tuple(e for b in brow for e in b.rows[i]))
        return SqMatrix(tuple(rows))

    def to_json(self, fmt: Callable) -> dict:
        return {
            "order": self.order,
            "m": self.block_dim,
            "blocks": [[b.to_json(fmt) for b in row] for row in self.blocks],
        }


class BlockLowerTriangular(BlockMatrix):
    """Block lower-triangular with all diagonal blocks equal."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_lower_triangular():
            raise DimensionError("blocks above the diagonal must vanish")
        if not self.has_constant_diagonal():
            raise DimensionError("diagonal blocks must be equal")

    @classmethod
    def from_sequence(cls, seq: Sequence[SqMatrix]) -> BlockLowerTriangular:
        """Block (r, c) = binom(r, c) * seq[r - c]; zero above the diagonal."""
        n = len(seq) - 1
        zero = SqMatrix.zeros(seq[0].dim, seq[0].zero)
        return cls(tuple(
            tuple(seq[r - c].scale(binomial(r, c)) if c <= r else zero for c in range(n + 1))
            for r in range(n + 1)
        ))


def jet_to_block(b: Jet) -> BlockLowerTriangular:
    """The block matrix of i_n(B): block (r, c) = binom(r, c) B^(r - c)."""
    return BlockLowerTriangular.from_sequence(b.terms)


def block_to_jet(blocks: BlockMatrix) -> Jet:
    """Inverse of :func:`jet_to_block`: column 0 carries B^(r) unscaled."""
    return Jet(tuple(row[0] for row in blocks.blocks))
