"""Concrete difference-differential base fields.

Two operator pairs are shipped:

* ``shift``: k = Q(x), sigma(x) = x + 1, delta = d/dx, constants Q.
* ``q_dilation``: k = Q(q)(x), sigma(x) = q*x, delta = x*d/dx, constants Q(q),
  with q a formal transcendental fixed by sigma and killed by delta.

Both pairs commute and their constant fields are relatively algebraically
closed in k, so the base-field hypothesis holds by construction.

Elements are sympy ``FracElement`` values of the operator's field.  The field is
stored as Q(x) or Q(x, q) (the same field as Q(q)(x)); sympy keeps every
element gcd-reduced with a normalized denominator, so ``==`` is canonical.
:func:`monic_parts` gives the monic-denominator view over the constants.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import cached_property

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.fields import field as make_field

RatFunc = FracElement


class Kind(enum.Enum):
    SHIFT = "shift"
    Q_DILATION = "q_dilation"


@dataclass(frozen=True)
class OperatorSpec:
    """A concrete sigma-delta field together with its operators."""

    kind: Kind
    field: FracField = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def x(self) -> RatFunc:
        return self.field.gens[0]

    @property
    def q(self) -> RatFunc:
        if self.kind is not Kind.Q_DILATION:
            raise AttributeError("the shift field has no parameter q")
        return self.field.gens[1]

    @property
    def symbols(self) -> dict[str, RatFunc]:
        """Names accepted by the expression parser."""
        names = {"x": self.x}
        if self.kind is Kind.Q_DILATION:
            names["q"] = self.q
        return names

    @property
    def constant_field(self) -> str:
        return "QQ" if self.kind is Kind.SHIFT else "QQ(q)"

    @cached_property
    def domain(self):
        """The field as a sympy domain, for polynomial rings over k."""
        return self.field.to_domain()

    def __call__(self, value) -> RatFunc:
        return self.field(value)


SHIFT = OperatorSpec(Kind.SHIFT, make_field("x", QQ)[0])
Q_DILATION = OperatorSpec(Kind.Q_DILATION, make_field("x,q", QQ)[0])

SPECS = {s.name: s for s in (SHIFT, Q_DILATION)}


def get_spec(name: str | OperatorSpec) -> OperatorSpec:
    if isinstance(name, OperatorSpec):
        return name
    try:
        return SPECS[name]
    except KeyError:
        raise ValueError(f"unknown operator spec {name!r}; expected one of {sorted(SPECS)}") from None


def _compose_x(spec: OperatorSpec, f: RatFunc, image) -> RatFunc:
    # image is a polynomial automorphism of k[x] (or k[x, q]), so the
    # substituted numerator and denominator stay coprime with the same
    # content and sign: no re-cancellation needed.
    ring = spec.field.ring
    xr = ring.gens[0]
    num = f.numer.compose(xr, image)
    den = f.denom.compose(xr, image)
    return f.new(num, den)


def apply_sigma(spec: OperatorSpec, f: RatFunc) -> RatFunc:
    """x -> x + 1 (shift) or x -> q*x (q-dilation)."""
    ring = spec.field.ring
    if spec.kind is Kind.SHIFT:
        return _compose_x(spec, f, ring.gens[0] + 1)
    return _compose_x(spec, f, ring.gens[0] * ring.gens[1])


def apply_sigma_inv(spec: OperatorSpec, f: RatFunc) -> RatFunc:
    ring = spec.field.ring
    if spec.kind is Kind.SHIFT:
        return _compose_x(spec, f, ring.gens[0] - 1)
    # x -> x/q is not polynomial; clear q-powers and let the field cancel
    K = spec.field
    num, den = f.numer, f.denom
    shift = max(num.degree(0), den.degree(0))

    def undilate(p):
        terms = {(i, j + shift - i): c for (i, j), c in p.terms()}
        return ring.from_dict(terms)

    return K.new(undilate(num)) / K.new(undilate(den))


def sigma_power(spec: OperatorSpec, f: RatFunc, k: int) -> RatFunc:
    """sigma^k(f) for any integer k."""
    step = apply_sigma if k >= 0 else apply_sigma_inv
    for _ in range(abs(k)):
        f = step(spec, f)
    return f


def apply_delta(spec: OperatorSpec, f: RatFunc) -> RatFunc:
    """d/dx (shift) or x*d/dx (q-dilation)."""
    d = f.diff(spec.x)
    if spec.kind is Kind.Q_DILATION:
        d = spec.x * d
    return d


def delta_power(spec: OperatorSpec, f: RatFunc, k: int) -> RatFunc:
    for _ in range(k):
        f = apply_delta(spec, f)
    return f


def is_constant(spec: OperatorSpec, f: RatFunc) -> bool:
    return apply_sigma(spec, f) == f


def monic_parts(spec: OperatorSpec, f: RatFunc):
    """Numerator and monic denominator as polynomials in x over the constants.

    Returns sympy ``PolyElement`` values of ``C[x]`` with C = QQ or QQ(q).
    """
    if spec.kind is Kind.SHIFT:
        from sympy.polys.rings import ring as make_ring

        R, _ = make_ring("x", QQ)
        num = R.from_dict({(i,): c for (i,), c in f.numer.terms()})
        den = R.from_dict({(i,): c for (i,), c in f.denom.terms()})
    else:
        R = _q_coefficient_ring()
        num = _split_x(R, f.numer)
        den = _split_x(R, f.denom)
    lc = den.LC
    return num.quo_ground(lc), den.quo_ground(lc)


def _q_coefficient_ring():
    from sympy.polys.rings import ring as make_ring
    from sympy import Symbol

    Cq = QQ.frac_field(Symbol("q"))
    R, _ = make_ring("x", Cq)
    return R


def _split_x(R, p):
    Cq = R.domain
    qsym = Cq.gens[0] if hasattr(Cq, "gens") else None
    out: dict = {}
    for (i, j), c in p.terms():
        term = Cq.convert(c) * Cq.convert(qsym) ** j if j else Cq.convert(c)
        out[(i,)] = out.get((i,), Cq.zero) + term
    return R.from_dict(out)


def random_poly(spec: OperatorSpec, rng: random.Random, degree: int, coeff: int = 3) -> RatFunc:
    """Random polynomial of x-degree at most ``degree`` (q-degree <= 1)."""
    x = spec.x
    out = spec(0)
    for i in range(degree + 1):
        c = spec(rng.randint(-coeff, coeff))
        if spec.kind is Kind.Q_DILATION and rng.random() < 0.5:
            c = c + rng.randint(-coeff, coeff) * spec.q
        out = out + c * x**i
    return out


def random_ratfunc(
    spec: OperatorSpec,
    rng: random.Random,
    num_degree: int = 4,
    den_degree: int = 4,
    coeff: int = 3,
) -> RatFunc:
    num = random_poly(spec, rng, num_degree, coeff)
    while True:
        den = random_poly(spec, rng, den_degree, coeff)
        if den != 0:
            return num / den


def parse_ratfunc(spec: OperatorSpec, text: str) -> RatFunc:
    """Parse an expression in ``x`` (and ``q``) into a reduced element of k."""
    from pvp import expr

    return expr.parse(text, spec.symbols, spec.field.one)


def format_ratfunc(spec: OperatorSpec, f: RatFunc) -> str:
    """Canonical text form; ``parse_ratfunc`` inverts it exactly."""
    from pvp import expr

    names = list(spec.symbols)
    num = expr.format_terms(f.numer.terms(), names)
    if f.denom == 1:
        return num
    den = expr.format_terms(f.denom.terms(), names)
    if len(f.numer.terms()) > 1:
        num = f"({num})"
    if len(f.denom.terms()) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"
