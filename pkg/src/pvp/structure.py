"""Twisted sigma-power products and finite monomial models of the
idempotent decomposition S = S_0 + ... + S_{l-1}.

The model ring is C[y_1..y_m]/(y_i^r_i - 1) over C = Q(zeta_N),
N = lcm(r_i), with sigma(y_i) = zeta_N^(N/r_i) y_i, sigma = id on C and
delta = 0.  It splits as a product of copies of C indexed by its primitive
idempotents, which sigma permutes.  Everything below is checked by
exhaustive enumeration rather than by appeal to the closed forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from pvp.cyclotomic import CycNum, multiplicative_order
from pvp.fields import OperatorSpec, sigma_power
from pvp.matrices import SingularMatrixError, SqMatrix

DEFAULT_MAX_GROUP_ORDER = 8


def sigma_power_product(spec: OperatorSpec, a: SqMatrix, l: int) -> SqMatrix:
    """A_l = sigma^(l-1)(A) ... sigma(A) A."""
    if l < 1:
        raise ValueError("l must be at least 1")
    if a.det() == 0:
        raise SingularMatrixError("A must be invertible")
    out = a
    shifted = a
    for _ in range(1, l):
        shifted = shifted.map(lambda e: sigma_power(spec, e, 1))
        out = shifted * out
    return out


def cocycle_check(spec: OperatorSpec, a: SqMatrix, i: int, j: int) -> bool:
    """A_(i+j) == sigma^j(A_i) A_j."""
    if i < 1 or j < 1:
        raise ValueError("both powers must be at least 1")
    lhs = sigma_power_product(spec, a, i + j)
    rhs = sigma_power_product(spec, a, i).map(lambda e: sigma_power(spec, e, j)) * sigma_power_product(spec, a, j)
    return lhs == rhs


class ModelElement:
    """Element of a :class:`MonomialModel`: a map exponent tuple -> CycNum."""

    __slots__ = ("model", "terms")

    def __init__(self, model: MonomialModel, terms: dict):
        self.model = model
        self.terms = {e: c for e, c in terms.items() if c}

    def __add__(self, other: ModelElement) -> ModelElement:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return ModelElement(self.model, out)

    def __neg__(self):
        return ModelElement(self.model, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return ModelElement(self.model, {e: c * other for e, c in self.terms.items()})
        r = self.model.r
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple((a + b) % ri for a, b, ri in zip(e1, e2, r))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return ModelElement(self.model, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModelElement) and self.model.r == other.model.r and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(
                (f"y{i + 1}" if self.model.m > 1 else "y") + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e) if k
            )
            coef = str(self.terms[e])
            if mono:
                parts.append(f"({coef})*{mono}")
            else:
                parts.append(f"({coef})")
        return " + ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class MonomialModel:
    r: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(v) for v in self.r)
        if not r or any(v < 1 for v in r):
            raise ValueError("exponents r_i must be positive integers")
        object.__setattr__(self, "r", r)

    @property
    def m(self) -> int:
        return len(self.r)

    @cached_property
    def N(self) -> int:
        return math.lcm(*self.r)

    @property
    def dim(self) -> int:
        return math.prod(self.r)

    def basis(self):
        return list(itertools.product(*(range(v) for v in self.r)))

    def scalar(self, c) -> ModelElement:
        c = c if isinstance(c, CycNum) else CycNum.scalar(self.N, c)
        return ModelElement(self, {(0,) * self.m: c})

    @property
    def one(self) -> ModelElement:
        return self.scalar(1)

    @property
    def zero(self) -> ModelElement:
        return ModelElement(self, {})

    def y(self, i: int) -> ModelElement:
        e = [0] * self.m
        e[i] = 1 % self.r[i]
        return ModelElement(self, {tuple(e): CycNum.scalar(self.N, 1)})

    def monomial(self, e) -> ModelElement:
        return ModelElement(self, {tuple(e): CycNum.scalar(self.N, 1)})

    def sigma_root(self, i: int) -> CycNum:
        """The constant c with sigma(y_i) = c * y_i."""
        return CycNum.zeta(self.N, self.N // self.r[i])

    def scale_action(self, scalars, u: ModelElement) -> ModelElement:
        """The C-algebra map y_i -> scalars[i] * y_i applied to ``u``."""
        out = {}
        for e, c in u.terms.items():
            f = c
            for s, k in zip(scalars, e):
                f = f * s**k
            out[e] = f
        return ModelElement(self, out)

    def sigma(self, u: ModelElement, times: int = 1) -> ModelElement:
        roots = [self.sigma_root(i) ** (times % self.N) for i in range(self.m)]
        return self.scale_action(roots, u)

    def delta(self, u: ModelElement) -> ModelElement:
        return self.zero


def primitive_idempotents(model: MonomialModel) -> list[ModelElement]:
    """Products of the per-variable idempotents (1/r) sum_k zeta_r^(-jk) y^k.

    Ordered by the index tuple (j_1, ..., j_m) lexicographically.
    """
    per_var = []
    for i, ri in enumerate(model.r):
        w = model.sigma_root(i)  # primitive r_i-th root of unity
        ys = [model.monomial(tuple(k if t == i else 0 for t in range(model.m))) for k in range(ri)]
        idems = []
        for j in range(ri):
            e = model.zero
            for k in range(ri):
                e = e + ys[k] * (w ** ((-j * k) % ri) * Fraction(1, ri))
            idems.append(e)
        per_var.append(idems)
    out = []
    for combo in itertools.product(*per_var):
        e = model.one
        for part in combo:
            e = e * part
        out.append(e)
    return out


def idempotent_axioms(idems: list[ModelElement], one: ModelElement) -> bool:
    total = one * 0
    for i, e in enumerate(idems):
        if e * e != e:
            return False
        for f in idems[i + 1:]:
            if e * f:
                return False
        total = total + e
    return total == one


def _index(items: list, value) -> int:
    for i, v in enumerate(items):
        if v == value:
            return i
    raise ValueError("element not found among the primitive idempotents")


@dataclass
class DecompositionReport:
    r: tuple[int, ...]
    N: int
    l: int
    orbits: list[list[int]]
    idempotents: list[str]
    idempotent_axioms: bool
    sigma_cycles_orbits: bool
    sigma_l_fixes: list[bool]
    sigma_l_minus_1_fixes_none: bool
    components_are_fields: list[bool]
    l_by_root_order: int
    automorphism_group_order: int | None = None

    @property
    def single_orbit(self) -> bool:
        return len(self.orbits) == 1

    @property
    def consistent(self) -> bool:
        return (
            self.idempotent_axioms
            and self.sigma_cycles_orbits
            and all(self.sigma_l_fixes)
            and self.sigma_l_minus_1_fixes_none
            and all(self.components_are_fields)
            and self.l == self.l_by_root_order
            and sum(len(o) for o in self.orbits) == len(self.idempotents)
        )

    def to_json(self) -> dict:
        return {
            "r": list(self.r),
            "N": self.N,
            "l": self.l,
            "orbit_count": len(self.orbits),
            "orbits": self.orbits,
            "idempotents": self.idempotents,
            "idempotent_axioms": self.idempotent_axioms,
            "sigma_cycles_orbits": self.sigma_cycles_orbits,
            "sigma_l_fixes": self.sigma_l_fixes,
            "sigma_l_minus_1_fixes_none": self.sigma_l_minus_1_fixes_none,
            "components_are_fields": self.components_are_fields,
            "l_by_root_order": self.l_by_root_order,
            "automorphism_group_order": self.automorphism_group_order,
            "consistent": self.consistent,
        }


def sigma_orbits(model: MonomialModel) -> DecompositionReport:
    idems = primitive_idempotents(model)
    images = [_index(idems, model.sigma(e)) for e in idems]
    orbits: list[list[int]] = []
    seen: set[int] = set()
    for start in range(len(idems)):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        nxt = images[start]
        while nxt != start:
            orbit.append(nxt)
            seen.add(nxt)
            nxt = images[nxt]
        orbits.append(orbit)
    lengths = {len(o) for o in orbits}
    l = max(lengths)
    cycles = len(lengths) == 1 and all(
        images[o[k]] == o[(k + 1) % len(o)] for o in orbits for k in range(len(o))
    )
    sigma_l = [model.sigma(e, l) == e for e in idems]
    none_earlier = all(
        all(model.sigma(e, k) != e for e in idems) for k in range(1, l)
    )
    fields_ok = [_component_is_field(model, e, len(idems)) for e in idems]
    root_order = math.lcm(*(multiplicative_order(model.sigma_root(i)) for i in range(model.m)))
    return DecompositionReport(
        r=model.r,
        N=model.N,
        l=l,
        orbits=orbits,
        idempotents=[str(e) for e in idems],
        idempotent_axioms=idempotent_axioms(idems, model.one),
        sigma_cycles_orbits=cycles,
        sigma_l_fixes=sigma_l,
        sigma_l_minus_1_fixes_none=none_earlier,
        components_are_fields=fields_ok,
        l_by_root_order=root_order,
    )


def _component_is_field(model: MonomialModel, e: ModelElement, count: int) -> bool:
    # count == dim forces every component e*R to be one-dimensional, i.e. a
    # copy of C; the spanning set e*y^b must then be free of zero divisors.
    if count != model.dim:
        return False
    span = [e * model.monomial(b) for b in model.basis()]
    if not all(span):
        return False
    return all(u * v for u, v in itertools.combinations_with_replacement(span, 2))


@dataclass
class AutomorphismGroup:
    """Automorphisms y_i -> zeta_N^(k_i) y_i, listed by exponent tuples k."""

    model: MonomialModel
    elements: list[tuple[int, ...]]
    table: list[list[int]]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def scalars(self, idx: int) -> list[CycNum]:
        return [CycNum.zeta(self.model.N, k) for k in self.elements[idx]]

    def apply(self, idx: int, u: ModelElement) -> ModelElement:
        return self.model.scale_action(self.scalars(idx), u)

    def element_order(self, idx: int) -> int:
        k, cur = 1, idx
        while cur != self.identity:
            cur = self.table[idx][cur]
            k += 1
        return k

    @property
    def cyclic_generator(self) -> int | None:
        return next((i for i in range(self.order) if self.element_order(i) == self.order), None)

    @property
    def is_cyclic(self) -> bool:
        return self.cyclic_generator is not None

    def to_json(self) -> dict:
        gen = self.cyclic_generator
        return {
            "order": self.order,
            "elements": [list(k) for k in self.elements],
            "table": self.table,
            "cyclic": gen is not None,
            "generator": list(self.elements[gen]) if gen is not None else None,
        }


def enumerate_automorphisms(
    model: MonomialModel, max_order: int = DEFAULT_MAX_GROUP_ORDER
) -> AutomorphismGroup:
    """All C-algebra automorphisms y_i -> c_i y_i commuting with sigma and delta.

    Candidates c_i run over every N-th root of unity; each is kept only if
    the relations y_i^r_i = 1 are respected and it commutes with sigma and
    delta on the generators, all checked in the model ring.
    """
    if model.dim > max_order:
        raise ValueError(f"group order bound {max_order} exceeded by model of dimension {model.dim}")
    gens = [model.y(i) for i in range(model.m)]
    one = CycNum.scalar(model.N, 1)
    elements = []
    for ks in itertools.product(range(model.N), repeat=model.m):
        scal = [CycNum.zeta(model.N, k) for k in ks]
        if any(s ** ri != one for s, ri in zip(scal, model.r)):
            continue
        ok = all(
            model.scale_action(scal, model.sigma(g)) == model.sigma(model.scale_action(scal, g))
            and model.scale_action(scal, model.delta(g)) == model.delta(model.scale_action(scal, g))
            for g in gens
        )
        if ok:
            elements.append(ks)
    actions = [[CycNum.zeta(model.N, k) for k in ks] for ks in elements]
    signatures = [tuple(model.scale_action(sc, g) for g in gens) for sc in actions]
    table = []
    for a in actions:
        row = []
        for b in actions:
            composed = tuple(model.scale_action(a, model.scale_action(b, g)) for g in gens)
            row.append(signatures.index(composed))
        table.append(row)
    identity = signatures.index(tuple(gens))
    return AutomorphismGroup(model, elements, table, identity)


@dataclass
class ExactSequenceReport:
    exact: bool
    l: int
    group_order: int
    kernel_order: int
    component_group_order: int
    delta: list[int]
    checks: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "l": self.l,
            "group_order": self.group_order,
            "kernel_order": self.kernel_order,
            "component_group_order": self.component_group_order,
            "delta": self.delta,
            "checks": self.checks,
        }


def exact_sequence_check(
    model: MonomialModel, max_order: int = DEFAULT_MAX_GROUP_ORDER
) -> ExactSequenceReport:
    """Validate 0 -> Aut(S_0) -> H -> Z/l -> 0 on the model by enumeration.

    Delta(g) is the shift g induces on the sigma-orbit e_0, sigma(e_0), ...
    """
    decomposition = sigma_orbits(model)
    if not decomposition.single_orbit:
        raise ValueError("exact sequence check needs a single sigma-orbit of idempotents")
    idems = primitive_idempotents(model)
    group = enumerate_automorphisms(model, max_order)
    l = decomposition.l
    e0 = idems[0]
    orbit = [model.sigma(e0, k) for k in range(l)]

    delta = []
    for g in range(group.order):
        delta.append(_index(orbit, group.apply(g, e0)))

    morphism = all(
        delta[group.table[a][b]] == (delta[a] + delta[b]) % l
        for a in range(group.order) for b in range(group.order)
    )
    surjective = set(delta) == set(range(l))
    kernel = [g for g in range(group.order) if delta[g] == 0]
    kernel_fixes_components = all(
        group.apply(g, e) == e for g in kernel for e in idems
    )
    non_kernel_moves = all(
        any(group.apply(g, e) != e for e in idems) for g in range(group.order) if delta[g] != 0
    )

    # automorphisms of the component e_0 R as a sigma^l-algebra: permutations of
    # its primitive idempotents commuting with sigma^l
    inside = [e for e in idems if e * e0 == e]
    sig_l = [_index(inside, model.sigma(e, l)) for e in inside]
    component_auts = [
        perm for perm in itertools.permutations(range(len(inside)))
        if all(perm[sig_l[i]] == sig_l[perm[i]] for i in range(len(inside)))
    ]
    restricted = [tuple(_index(inside, group.apply(g, e)) for e in inside) for g in kernel]
    restriction_injective = len(set(restricted)) == len(restricted)
    restriction_onto = set(restricted) == set(component_auts)
    counts = group.order == len(kernel) * l

    checks = {
        "delta_is_morphism": morphism,
        "delta_surjective": surjective,
        "kernel_fixes_every_component": kernel_fixes_components,
        "non_kernel_moves_a_component": non_kernel_moves,
        "restriction_injective": restriction_injective,
        "restriction_onto_component_group": restriction_onto,
        "order_identity": counts,
    }
    return ExactSequenceReport(
        exact=all(checks.values()),
        l=l,
        group_order=group.order,
        kernel_order=len(kernel),
        component_group_order=len(component_auts),
        delta=delta,
        checks=checks,
    )
