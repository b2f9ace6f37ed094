"""Polynomial rings in jet variables over a base field, and ring maps on them.

Variables ``{P}{j}_{a}{b}`` stand for entry (a, b) of the j-th derivative of an
m x m matrix of indeterminates; they are enumerated by (j, a, b)
lexicographically and ordered by degree-reverse-lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache

from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyRing

from pvp.fields import OperatorSpec
from pvp.matrices import SqMatrix


def var_name(prefix: str, j: int, a: int, b: int) -> str:
    return f"{prefix}{j}_{a + 1}{b + 1}"


@lru_cache(maxsize=None)
def jet_ring(spec: OperatorSpec, order: int, m: int, prefix: str = "Y") -> PolyRing:
    if m > 9:
        raise ValueError("jet variable names support m <= 9")
    names = [var_name(prefix, j, a, b) for j in range(order + 1) for a in range(m) for b in range(m)]
    return PolyRing(names, spec.domain, grevlex)


def var_index(order_j: int, a: int, b: int, m: int) -> int:
    return order_j * m * m + a * m + b


def var_matrix(ring: PolyRing, j: int, m: int) -> SqMatrix:
    """The m x m matrix of generators for the j-th derivative."""
    gens = ring.gens
    return SqMatrix(tuple(tuple(gens[var_index(j, a, b, m)] for b in range(m)) for a in range(m)))


def lift(ring: PolyRing, mat: SqMatrix) -> SqMatrix:
    """Embed a matrix over k as constant polynomials."""
    return mat.map(ring.ground_new)


def substitute(p, images, coeff_map=None):
    """Ring map sending generator i to ``images[i]`` and c to ``coeff_map(c)``."""
    ring = p.ring
    out = ring.zero
    powers: dict[tuple[int, int], object] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    for mono, c in p.terms():
        if coeff_map is not None:
            c = coeff_map(c)
            if not c:
                continue
        term = ring.ground_new(c)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
                if not term:
                    break
        out = out + term
    return out


def derivation(p, coeff_d, var_d):
    """Apply the derivation that is ``coeff_d`` on k and ``var_d[i]`` on generator i."""
    ring = p.ring
    out = ring.zero
    for mono, c in p.terms():
        dc = coeff_d(c)
        if dc:
            out = out + ring.from_dict({mono: dc})
        for i, e in enumerate(mono):
            if not e:
                continue
            if var_d[i] is None:
                raise ValueError(f"derivative of {ring.symbols[i]} leaves the truncated ring")
            lowered = list(mono)
            lowered[i] -= 1
            out = out + ring.from_dict({tuple(lowered): c * e}) * var_d[i]
    return out


def total_degree(p) -> int:
    return max((sum(mono) for mono in p.monoms()), default=-1) if p else -1
