import itertools
import random

import pytest

from pvp.fields import SHIFT, Q_DILATION
from pvp.groebner import BudgetExceeded, Stats, groebner, is_groebner, normal_form
from pvp.ideals import IdealGens, dense_membership, groebner_basis, ideal_member, parse_jet_polynomial
from pvp.polys import total_degree
from pvp.selftest import _random_homogeneous, _small_ring


def ideal(texts, order=0, m=2, spec=SHIFT):
    return IdealGens.parse(spec, order, m, texts)


def poly(I, text):
    return parse_jet_polynomial(I.ring, I.spec, text)


def test_monomial_generators_are_a_basis():
    I = ideal(["Y0_12", "Y0_21"])
    assert set(groebner_basis(I).gens) == set(I.gens)


def test_elimination():
    I = ideal(["Y0_11 - 1", "Y0_11*Y0_22 - 1"])
    assert poly(I, "Y0_22 - 1") in I.basis()
    assert is_groebner(list(I.basis()))


def test_empty_ideal():
    assert groebner_basis(ideal([])).gens == ()


def test_unit_ideal():
    I = ideal(["Y0_11", "Y0_11 - 1"])
    assert I.basis() == (I.ring.one,)


def test_rational_function_coefficients():
    # x is a coefficient: Y11 = 1/x, then Y22 = x / Y11 = x^2
    I = ideal(["x*Y0_11 - 1", "Y0_11*Y0_22 - x"])
    assert set(I.basis()) == {poly(I, "Y0_11 - 1/x"), poly(I, "Y0_22 - x^2")}


def test_q_coefficients():
    I = ideal(["q*Y0_11 - x", "Y0_11^2 - Y0_12"], spec=Q_DILATION)
    assert ideal_member(poly(I, "q^2*Y0_12 - x^2"), I)


def test_basis_is_idempotent_and_reduced():
    I = ideal(["Y0_11^2 - Y0_12*Y0_21", "Y0_11*Y0_12 - Y0_22", "Y0_12^2 - Y0_11"])
    basis = I.basis()
    again = groebner(list(basis))
    assert tuple(again) == basis
    for i, g in enumerate(basis):
        assert g.LC == 1
        others = basis[:i] + basis[i + 1:]
        assert normal_form(g, others) == g


def test_basis_independent_of_generator_order():
    texts = ["Y0_11^2 - Y0_12", "Y0_11*Y0_12 - Y0_21", "Y0_21^2 - Y0_22 + 1"]
    bases = {tuple(ideal(list(p)).basis()) for p in itertools.permutations(texts)}
    assert len(bases) == 1


@pytest.mark.parametrize(
    "text, member",
    [("Y0_12*Y0_22", True), ("Y0_11", False)],
)
def test_membership_examples(text, member):
    I = ideal(["Y0_12", "Y0_21"])
    assert ideal_member(poly(I, text), I) is member


def test_principal_determinant_ideal():
    I = ideal(["Y0_11*Y0_22 - Y0_12*Y0_21 - 1"])
    assert ideal_member(I.gens[0], I)
    assert not ideal_member(poly(I, "Y0_11*Y0_22 - 1"), I)


def test_budget_exceeded():
    I = ideal(["Y0_11^2 - Y0_12*Y0_21", "Y0_11*Y0_12 - Y0_22", "Y0_12^2 - Y0_11"])
    with pytest.raises(BudgetExceeded):
        groebner(list(I.gens), budget=1)
    stats = Stats(budget=10_000)
    groebner(list(I.gens), stats=stats)
    assert stats.reductions > 1


def _random_affine(ring, rng, degree):
    p = ring.zero
    n = len(ring.gens)
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            if rng.random() < 0.4:
                term = ring.one * rng.randint(-2, 2)
                for v in combo:
                    term = term * ring.gens[v]
                p = p + term
    return p


def test_dense_oracle_homogeneous():
    rng = random.Random(7)
    for _ in range(40):
        ring = _small_ring(rng.randint(1, 3))
        gens = [_random_homogeneous(ring, rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        basis = groebner(gens)
        for d in range(1, 4):
            g = rng.choice(gens)
            members = [_random_homogeneous(ring, rng, d)]
            if total_degree(g) <= d:
                members.append(g * _random_homogeneous(ring, rng, d - total_degree(g), allow_zero=True))
            for p in members:
                assert (not normal_form(p, basis)) == dense_membership(p, gens, d)


def test_dense_oracle_affine():
    rng = random.Random(11)
    for _ in range(40):
        ring = _small_ring(rng.randint(1, 3))
        gens = [g for g in (_random_affine(ring, rng, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))) if g]
        if not gens:
            continue
        basis = groebner(gens)
        bound = max(total_degree(g) for g in gens) + 4
        for _ in range(3):
            p = _random_affine(ring, rng, 3)
            assert (not normal_form(p, basis)) == dense_membership(p, gens, bound)
