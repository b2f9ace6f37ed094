"""Ideals in the jet variables Y^(j) and the substitution action of jets.

A jet B = (B, B', ..., B^(n)) acts on k[Y^(0), ..., Y^(n)] by

    Y^(j)  ->  sum_i binom(j, i) Y^(i) B^(j - i),

the truncation of Y -> Y B compatible with differentiation.  An ideal is
preserved by B when every generator maps back into the ideal; membership is
decided by a reduced Groebner basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from pvp import expr
from pvp.fields import OperatorSpec, is_constant
from pvp.groebner import DEFAULT_BUDGET, groebner, normal_form
from pvp.matrices import DimensionError, Jet, binomial
from pvp.polys import jet_ring, substitute, total_degree, var_index, var_matrix


class IdealGens:
    """Generators of an ideal of k[Y^(0..n)] with a lazily cached basis."""

    def __init__(self, spec: OperatorSpec, order: int, m: int, gens: Sequence = ()):
        self.spec = spec
        self.order = order
        self.m = m
        self.ring = jet_ring(spec, order, m, "Y")
        self.gens = tuple(self.ring(g) if not hasattr(g, "ring") else g for g in gens)
        for g in self.gens:
            if g.ring is not self.ring:
                raise DimensionError("generator lives in a different jet ring")
        self._basis: tuple | None = None

    @classmethod
    def parse(cls, spec: OperatorSpec, order: int, m: int, texts: Sequence[str]) -> IdealGens:
        ring = jet_ring(spec, order, m, "Y")
        return cls(spec, order, m, [parse_jet_polynomial(ring, spec, t) for t in texts])

    def basis(self, budget: int = DEFAULT_BUDGET) -> tuple:
        if self._basis is None:
            self._basis = tuple(groebner(self.gens, budget=budget))
        return self._basis

    def __repr__(self):
        return f"IdealGens(order={self.order}, m={self.m}, gens={[str(g) for g in self.gens]})"


def parse_jet_polynomial(ring, spec: OperatorSpec, text: str):
    symbols = {str(s): g for s, g in zip(ring.symbols, ring.gens)}
    symbols.update({name: ring.ground_new(v) for name, v in spec.symbols.items()})

    def divide(a, b, pos):
        if not b.is_ground:
            raise expr.ExpressionError("can only divide by elements of the base field", pos)
        c = b.LC if b else 0
        if not c:
            raise expr.ExpressionError("division by zero", pos)
        return a.quo_ground(c)

    return expr.parse(text, symbols, ring.one, divide)


def format_jet_polynomial(spec: OperatorSpec, p) -> str:
    from pvp.fields import format_ratfunc

    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    out = []
    for mono, c in p.terms():
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
        coef = format_ratfunc(spec, c)
        if factors and coef in ("1", "-1"):
            body = "*".join(factors)
            out.append(f"-{body}" if coef == "-1" else body)
        elif factors:
            out.append(f"({coef})*" + "*".join(factors))
        else:
            out.append(f"({coef})")
    text = out[0]
    for piece in out[1:]:
        text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return text


def groebner_basis(ideal: IdealGens, budget: int = DEFAULT_BUDGET) -> IdealGens:
    out = IdealGens(ideal.spec, ideal.order, ideal.m, ideal.basis(budget))
    out._basis = out.gens
    return out


def ideal_member(p, ideal: IdealGens, budget: int = DEFAULT_BUDGET) -> bool:
    if p.ring is not ideal.ring:
        raise DimensionError("polynomial and ideal live in different jet rings")
    return not normal_form(p, ideal.basis(budget))


def _check_jet(spec: OperatorSpec, order: int, m: int, b: Jet):
    if b.order != order:
        raise DimensionError(f"jet order {b.order} does not match ring order {order}")
    if b.dim != m:
        raise DimensionError(f"jet dimension {b.dim} does not match m = {m}")
    for t in b.terms:
        for row in t.rows:
            for e in row:
                if not is_constant(spec, e):
                    raise ValueError("jet entries must lie in the constant field")


def gB_images(ring, order: int, m: int, b: Jet) -> list:
    ys = [var_matrix(ring, j, m) for j in range(order + 1)]
    bs = [t.map(ring.ground_new) for t in b.terms]
    images = [None] * len(ring.gens)
    for j in range(order + 1):
        acc = None
        for i in range(j + 1):
            term = (ys[i] * bs[j - i]).scale(binomial(j, i))
            acc = term if acc is None else acc + term
        for a in range(m):
            for c in range(m):
                images[var_index(j, a, c, m)] = acc[a, c]
    return images


def substitute_gB(p, b: Jet, spec: OperatorSpec | None = None):
    """Apply g_B: Y^(j) -> sum_i binom(j, i) Y^(i) B^(j-i) to ``p``."""
    ring = p.ring
    m = b.dim
    order = len(ring.gens) // (m * m) - 1
    if (order + 1) * m * m != len(ring.gens):
        raise DimensionError("jet dimension does not match the polynomial ring")
    if spec is not None:
        _check_jet(spec, order, m, b)
    elif b.order != order:
        raise DimensionError(f"jet order {b.order} does not match ring order {order}")
    return substitute(p, gB_images(ring, order, m, b))


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    failing_generator: int | None = None

    def __bool__(self):
        return self.invariant


def invariance_check(ideal: IdealGens, b: Jet, budget: int = DEFAULT_BUDGET) -> InvarianceResult:
    """Does g_B map every generator of ``ideal`` back into ``ideal``?"""
    _check_jet(ideal.spec, ideal.order, ideal.m, b)
    if not ideal.gens:
        return InvarianceResult(True)
    basis = ideal.basis(budget)
    images = gB_images(ideal.ring, ideal.order, ideal.m, b)
    for idx, g in enumerate(ideal.gens):
        if normal_form(substitute(g, images), basis):
            return InvarianceResult(False, idx)
    return InvarianceResult(True)


@dataclass(frozen=True)
class StabilizationReport:
    status: str  # "stabilized" or "inconclusive"
    level: int | None
    first_difference: int | None
    accepted: tuple[tuple[int, ...], ...]
    bound: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "level": self.level,
            "first_difference": self.first_difference,
            "accepted": [list(a) for a in self.accepted],
            "bound": self.bound,
        }


def stabilization_scan(
    tower: Sequence[IdealGens], jets: Sequence[Jet], budget: int = DEFAULT_BUDGET
) -> StabilizationReport:
    """Heuristic search for the order beyond which invariance stops changing.

    Level n accepts the test jets (truncated to order n) preserving I_n.
    Reports the least n whose accepted set is contained in the accepted set of
    every later level.  Only the supplied jets are examined, so this is
    evidence for a bound, never a proof; when the least such n is the last
    level of a tower with more than one level the scan is inconclusive.
    """
    if not tower:
        raise ValueError("empty ideal tower")
    bound = len(tower) - 1
    for n, ideal in enumerate(tower):
        if ideal.order != n:
            raise DimensionError(f"tower level {n} has order {ideal.order}")
    accepted = []
    for ideal in tower:
        ok = tuple(
            i for i, jet in enumerate(jets) if invariance_check(ideal, jet.truncate(ideal.order), budget)
        )
        accepted.append(ok)
    level = next(
        n for n in range(bound + 1) if all(set(accepted[n]) <= set(accepted[k]) for k in range(n + 1, bound + 1))
    )
    first_difference = next((n for n in range(1, bound + 1) if accepted[n] != accepted[n - 1]), None)
    status = "stabilized" if level < bound or bound == 0 else "inconclusive"
    return StabilizationReport(status, level if status == "stabilized" else None, first_difference,
                               tuple(accepted), bound)


def _ground_qq(coeffs):
    out = []
    for c in coeffs:
        if c.denom != 1 or not c.numer.is_ground:
            return None
        out.append(QQ.convert(c.numer.LC))
    return out


def dense_membership(p, gens: Sequence, degree: int) -> bool:
    """Linear-algebra membership oracle, independent of Groebner bases.

    Decides whether ``p`` is a k-linear combination of ``mono * g`` with
    ``deg(mono * g) <= degree``.  A True answer is a certificate; a False
    answer is exact for homogeneous ideals and homogeneous ``p`` of degree
    ``degree``, and in general only up to the degree bound.
    """
    ring = p.ring
    nvars = len(ring.gens)
    gens = [g for g in gens if g]
    columns = []
    for g in gens:
        room = degree - total_degree(g)
        for d in range(room + 1):
            for combo in combinations_with_replacement(range(nvars), d):
                mono = [0] * nvars
                for v in combo:
                    mono[v] += 1
                columns.append(g.mul_monom(tuple(mono)))
    if not p:
        return True
    if not columns:
        return False
    monos = sorted({mo for col in columns + [p] for mo in col.monoms()})
    index = {mo: i for i, mo in enumerate(monos)}
    coeff_list = [c for col in columns + [p] for c in col.coeffs()]
    qq = _ground_qq(coeff_list)
    domain = QQ if qq is not None else ring.domain
    conv = (lambda c: QQ.convert(c.numer.LC)) if qq is not None else (lambda c: c)

    def matrix(cols):
        rows = [[domain.zero] * len(cols) for _ in monos]
        for j, col in enumerate(cols):
            for mo, c in col.terms():
                rows[index[mo]][j] = conv(c)
        return DomainMatrix(rows, (len(monos), len(cols)), domain)

    base = matrix(columns).rank()
    return matrix(columns + [p]).rank() == base
