"""Prolongation of sigma(X) = A X into pure difference systems.

Adjoining X', ..., X^(n) and using that sigma commutes with delta gives

    sigma(X^(j)) = sum_i binom(j, i) A^(i) X^(j - i),

a difference system whose matrix is block lower-triangular with block
(j, i) = binom(j, i) A^(j - i).  The block matrix with blocks
binom(j, i) X^(j - i) is a fundamental solution of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from pvp.fields import SHIFT, OperatorSpec, apply_delta, apply_sigma
from pvp.matrices import (
    BlockLowerTriangular,
    BlockMatrix,
    SingularMatrixError,
    SqMatrix,
    binomial,
    derivatives,
)
from pvp.polys import derivation, jet_ring, lift, substitute, var_index, var_matrix

DEFAULT_MAX_ORDER = 4


@dataclass(frozen=True)
class ProlongedSystem:
    spec: OperatorSpec
    base: SqMatrix
    order: int
    matrix: BlockLowerTriangular

    @property
    def m(self) -> int:
        return self.base.dim

    def truncate(self, order: int) -> ProlongedSystem:
        return ProlongedSystem(self.spec, self.base, order, self.matrix.truncate(order))

    def det(self):
        return self.matrix.flatten().det()


def prolong_system(spec: OperatorSpec, a: SqMatrix, n: int) -> ProlongedSystem:
    if n < 0:
        raise ValueError("prolongation order must be non-negative")
    if a.det() == 0:
        raise SingularMatrixError("system matrix A must be invertible")
    blocks = BlockLowerTriangular.from_sequence(derivatives(spec, a, n))
    return ProlongedSystem(spec, a, n, blocks)


@dataclass(frozen=True)
class FormalSolutionVars:
    """Indeterminates X^(0..n) with the sigma and delta rewriting rules."""

    spec: OperatorSpec
    order: int
    m: int

    @property
    def ring(self):
        return jet_ring(self.spec, self.order, self.m, "X")

    def X(self, j: int) -> SqMatrix:
        return var_matrix(self.ring, j, self.m)

    def sigma_images(self, a: SqMatrix) -> list:
        """Images of every generator under sigma(X^(j)) = sum binom(j,i) A^(i) X^(j-i)."""
        ring = self.ring
        ders = [lift(ring, d) for d in derivatives(self.spec, a, self.order)]
        images = [None] * len(ring.gens)
        for j in range(self.order + 1):
            acc = None
            for i in range(j + 1):
                term = (ders[i] * self.X(j - i)).scale(binomial(j, i))
                acc = term if acc is None else acc + term
            for r in range(self.m):
                for c in range(self.m):
                    images[var_index(j, r, c, self.m)] = acc[r, c]
        return images

    def sigma(self, p, a: SqMatrix, images=None):
        images = images if images is not None else self.sigma_images(a)
        return substitute(p, images, lambda c: apply_sigma(self.spec, c))

    def delta(self, p):
        ring = self.ring
        nxt = []
        for i in range(len(ring.gens)):
            j = i // (self.m * self.m)
            nxt.append(ring.gens[i + self.m * self.m] if j < self.order else None)
        return derivation(p, lambda c: apply_delta(self.spec, c), nxt)


def formal_solution_block(n: int, m: int, spec: OperatorSpec = SHIFT) -> BlockLowerTriangular:
    """Block (j, i) = binom(j, i) X^(j - i) over formal indeterminates."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    fv = FormalSolutionVars(spec, n, m)
    return BlockLowerTriangular.from_sequence([fv.X(j) for j in range(n + 1)])


def verify_fundamental(
    spec: OperatorSpec, a: SqMatrix, n: int, system: BlockMatrix | None = None
) -> bool:
    """Check sigma(Xn) == An * Xn symbolically.

    ``system`` overrides the prolonged matrix An (used for mutation tests).
    """
    if system is None:
        system = prolong_system(spec, a, n).matrix
    if system.order != n or system.block_dim != a.dim:
        return False
    fv = FormalSolutionVars(spec, n, a.dim)
    ring = fv.ring
    xs = formal_solution_block(n, a.dim, spec)
    images = fv.sigma_images(a)
    lhs = BlockMatrix(tuple(
        tuple(b.map(lambda p: fv.sigma(p, a, images)) for b in row) for row in xs.blocks
    ))
    lifted = BlockMatrix(tuple(tuple(lift(ring, b) for b in row) for row in system.blocks))
    return lhs == lifted * xs


def eq2_from_leibniz(spec: OperatorSpec, a: SqMatrix, j: int) -> bool:
    """Derive sigma(X^(j)) as delta^j(A X) and compare with the binomial form."""
    if j < 0:
        raise ValueError("order must be non-negative")
    fv = FormalSolutionVars(spec, j, a.dim)
    ring = fv.ring
    derived = lift(ring, a) * fv.X(0)
    for _ in range(j):
        derived = derived.map(fv.delta)
    ders = [a]
    for _ in range(j):
        ders.append(ders[-1].map(lambda e: apply_delta(spec, e)))
    closed = None
    for i in range(j + 1):
        term = (lift(ring, ders[i]) * fv.X(j - i)).scale(binomial(j, i))
        closed = term if closed is None else closed + term
    return derived == closed
