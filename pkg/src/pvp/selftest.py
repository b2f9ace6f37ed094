"""The invariant suite behind ``pvp selftest``.

Each check draws from its own RNG seeded by ``(seed, name)`` so reports do
not depend on execution order or on the worker pool.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from pvp.config import Settings
from pvp.fields import (
    Q_DILATION,
    SHIFT,
    apply_delta,
    apply_sigma,
    apply_sigma_inv,
    format_ratfunc,
    parse_ratfunc,
    random_poly,
    random_ratfunc,
)
from pvp.groebner import BudgetExceeded, groebner, is_groebner
from pvp.ideals import IdealGens, dense_membership, ideal_member, invariance_check, substitute_gB
from pvp.matrices import Jet, SqMatrix, jet_inv, jet_mul, jet_to_block
from pvp.polys import total_degree
from pvp.prolongation import eq2_from_leibniz, prolong_system, verify_fundamental
from pvp.structure import (
    MonomialModel,
    cocycle_check,
    exact_sequence_check,
    sigma_orbits,
    sigma_power_product,
)

SPECS = (SHIFT, Q_DILATION)


def random_matrix(spec, rng, m, degree=2, den_degree=0):
    """Random invertible m x m matrix with entries of degree <= ``degree``."""
    while True:
        if den_degree:
            rows = tuple(tuple(random_ratfunc(spec, rng, degree, den_degree) for _ in range(m)) for _ in range(m))
        else:
            rows = tuple(tuple(random_poly(spec, rng, degree) for _ in range(m)) for _ in range(m))
        a = SqMatrix(rows)
        if a.det() != 0:
            return a


def random_constant_matrix(spec, rng, m, lo=-3, hi=3):
    return SqMatrix(tuple(tuple(spec(rng.randint(lo, hi)) for _ in range(m)) for _ in range(m)))


def random_jet(spec, rng, m, order, invertible=True):
    while True:
        b0 = random_constant_matrix(spec, rng, m)
        if not invertible or b0.det() != 0:
            break
    return Jet((b0,) + tuple(random_constant_matrix(spec, rng, m) for _ in range(order)))


def random_jet_polynomial(ring, rng, terms=3, degree=2):
    p = ring.zero
    n = len(ring.gens)
    for _ in range(terms):
        mono = ring.one * rng.randint(-3, 3)
        for _ in range(rng.randint(0, degree)):
            mono = mono * ring.gens[rng.randrange(n)]
        p = p + mono
    return p


def check_commutation(rng, s):
    for spec in SPECS:
        for _ in range(50):
            f = random_ratfunc(spec, rng, 4, 4)
            if apply_delta(spec, apply_sigma(spec, f)) != apply_sigma(spec, apply_delta(spec, f)):
                return False, f"{spec.name}: sigma delta != delta sigma on {format_ratfunc(spec, f)}"
    return True, "50 samples per spec"


def check_sigma_inverse(rng, s):
    for spec in SPECS:
        for _ in range(50):
            f = random_ratfunc(spec, rng, 3, 3)
            if apply_sigma_inv(spec, apply_sigma(spec, f)) != f or apply_sigma(spec, apply_sigma_inv(spec, f)) != f:
                return False, f"{spec.name}: inverse fails on {format_ratfunc(spec, f)}"
    return True, "50 samples per spec"


def check_leibniz_rule(rng, s):
    for spec in SPECS:
        for _ in range(30):
            f, g = random_ratfunc(spec, rng, 3, 3), random_ratfunc(spec, rng, 3, 3)
            if apply_delta(spec, f * g) != apply_delta(spec, f) * g + f * apply_delta(spec, g):
                return False, f"{spec.name}: Leibniz rule fails"
    return True, "30 pairs per spec"


def check_parse_roundtrip(rng, s):
    for spec in SPECS:
        for _ in range(30):
            f = random_ratfunc(spec, rng, 3, 3)
            if parse_ratfunc(spec, format_ratfunc(spec, f)) != f:
                return False, f"{spec.name}: round trip fails on {format_ratfunc(spec, f)}"
    return True, "30 samples per spec"


def check_jet_group(rng, s):
    for spec in SPECS:
        for _ in range(10):
            m, n = rng.randint(1, 2), rng.randint(0, 3)
            b, c, d = (random_jet(spec, rng, m, n) for _ in range(3))
            unit = Jet.unit(n, m, spec.field.one)
            if jet_mul(jet_mul(b, c), d) != jet_mul(b, jet_mul(c, d)):
                return False, "associativity"
            if jet_mul(unit, b) != b or jet_mul(b, unit) != b:
                return False, "identity"
            if jet_mul(b, jet_inv(b)) != unit or jet_mul(jet_inv(b), b) != unit:
                return False, "inverse"
    return True, "10 triples per spec"


def check_block_homomorphism(rng, s):
    for spec in SPECS:
        for _ in range(10):
            m, n = rng.randint(1, 2), rng.randint(0, 3)
            b, c = random_jet(spec, rng, m, n), random_jet(spec, rng, m, n)
            if jet_to_block(jet_mul(b, c)) != jet_to_block(b) * jet_to_block(c):
                return False, "i_n is not multiplicative"
    return True, "10 pairs per spec"


def check_fundamental(rng, s):
    count = 0
    for spec in SPECS:
        for _ in range(3):
            m = rng.randint(1, 2)
            a = random_matrix(spec, rng, m)
            for n in range(min(s.order, 3) + 1):
                count += 1
                if not verify_fundamental(spec, a, n):
                    return False, f"{spec.name}: fundamental identity fails at n={n}"
            mutant = prolong_system(spec, a, 1).matrix
            mutant = mutant.replace(1, 0, mutant.block(1, 0) + SqMatrix.identity(m, spec.field.one))
            if verify_fundamental(spec, a, 1, mutant):
                return False, "mutant accepted"
    return True, f"{count} (A, n) pairs"


def check_eq2(rng, s):
    for spec in SPECS:
        for _ in range(3):
            a = random_matrix(spec, rng, rng.randint(1, 2))
            for j in range(s.order + 1):
                if not eq2_from_leibniz(spec, a, j):
                    return False, f"{spec.name}: j={j}"
    return True, f"j <= {s.order}"


def check_tower(rng, s):
    for spec in SPECS:
        a = random_matrix(spec, rng, 2)
        top = prolong_system(spec, a, 3)
        for k in range(4):
            if top.matrix.truncate(k) != prolong_system(spec, a, k).matrix:
                return False, f"{spec.name}: level {k}"
            if top.truncate(k).det() != a.det() ** (k + 1):
                return False, f"{spec.name}: determinant at level {k}"
    return True, "levels 0..3"


def check_functoriality(rng, s):
    for spec in SPECS:
        for _ in range(10):
            m, n = rng.randint(1, 2), rng.randint(0, 1)
            ring = IdealGens(spec, n, m).ring
            p = random_jet_polynomial(ring, rng)
            b, c = random_jet(spec, rng, m, n), random_jet(spec, rng, m, n)
            if substitute_gB(p, jet_mul(b, c)) != substitute_gB(substitute_gB(p, c), b):
                return False, "g_(BC) != g_B g_C"
    return True, "10 triples per spec"


def check_diagonal_ideal(rng, s):
    ideal = IdealGens.parse(SHIFT, 0, 2, ["Y0_12", "Y0_21"])
    one = SHIFT.field.one
    for bits in range(16):
        entries = [(bits >> k) & 1 for k in range(4)]
        b = SqMatrix(((one * entries[0], one * entries[1]), (one * entries[2], one * entries[3])))
        diagonal = entries[1] == 0 and entries[2] == 0
        if bool(invariance_check(ideal, Jet((b,)), s.budget)) != diagonal:
            return False, f"pattern {entries}"
    return True, "16 patterns"


def check_groebner_elimination(rng, s):
    ideal = IdealGens.parse(SHIFT, 0, 2, ["Y0_11 - 1", "Y0_11*Y0_22 - 1"])
    target = IdealGens.parse(SHIFT, 0, 2, ["Y0_22 - 1"]).gens[0]
    basis = ideal.basis(s.budget)
    return target in basis and is_groebner(list(basis)), "basis contains Y0_22 - 1"


def check_groebner_vs_dense(rng, s):
    cases = 0
    for _ in range(12):
        nv = rng.randint(1, 3)
        ideal_ring = _small_ring(nv)
        gens = [_random_homogeneous(ideal_ring, rng, rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
        basis = groebner(gens, budget=s.budget)
        for _ in range(3):
            d = rng.randint(1, 3)
            if rng.random() < 0.5 and gens:
                g = rng.choice(gens)
                if total_degree(g) <= d:
                    p = g * _random_homogeneous(ideal_ring, rng, d - total_degree(g), allow_zero=True)
                else:
                    p = _random_homogeneous(ideal_ring, rng, d)
            else:
                p = _random_homogeneous(ideal_ring, rng, d)
            member = not (p.rem(basis) if basis and p else p)
            if member != dense_membership(p, gens, max(d, 0)):
                return False, f"disagreement on {p} in {gens}"
            cases += 1
    return True, f"{cases} homogeneous instances"


def _small_ring(nv):
    from sympy.polys.orderings import grevlex
    from sympy.polys.rings import PolyRing

    return PolyRing([f"t{i}" for i in range(nv)], SHIFT.domain, grevlex)


def _random_homogeneous(ring, rng, degree, allow_zero=False):
    import itertools

    monos = [c for c in itertools.combinations_with_replacement(range(len(ring.gens)), degree)]
    while True:
        p = ring.zero
        for combo in monos:
            c = rng.randint(-2, 2)
            if c:
                term = ring.one * c
                for v in combo:
                    term = term * ring.gens[v]
                p = p + term
        if p or allow_zero:
            return p


def check_cocycle(rng, s):
    for spec in SPECS:
        for _ in range(2):
            a = random_matrix(spec, rng, rng.randint(1, 2), degree=1)
            for i in range(1, 4):
                for j in range(1, 5 - i):
                    if not cocycle_check(spec, a, i, j):
                        return False, f"{spec.name}: a={i}, b={j}"
    return True, "a + b <= 4"


def check_components(rng, s):
    for r in (1, 2, 3, 4, 6):
        report = sigma_orbits(MonomialModel((r,)))
        if not (report.consistent and report.single_orbit and report.l == r):
            return False, f"r={r}"
    return True, "r in 1, 2, 3, 4, 6"


def check_exact_sequence(rng, s):
    for r in (1, 2, 3, 4, 6):
        report = exact_sequence_check(MonomialModel((r,)), s.max_group_order)
        if not (report.exact and report.group_order == report.kernel_order * r):
            return False, f"r={r}"
    return True, "r in 1, 2, 3, 4, 6"


CHECKS: dict[str, Callable] = {
    "base_field.commutation": check_commutation,
    "base_field.sigma_inverse": check_sigma_inverse,
    "base_field.leibniz_rule": check_leibniz_rule,
    "base_field.parse_roundtrip": check_parse_roundtrip,
    "matrices_jets.group_axioms": check_jet_group,
    "matrices_jets.block_homomorphism": check_block_homomorphism,
    "prolongation.fundamental_solution": check_fundamental,
    "prolongation.eq2_oracle": check_eq2,
    "prolongation.tower_and_determinant": check_tower,
    "ideals.functoriality": check_functoriality,
    "ideals.diagonal_invariance": check_diagonal_ideal,
    "ideals.groebner_elimination": check_groebner_elimination,
    "ideals.groebner_vs_dense_oracle": check_groebner_vs_dense,
    "structure.cocycle": check_cocycle,
    "structure.components": check_components,
    "structure.exact_sequence": check_exact_sequence,
}


def run_check(name: str, settings: Settings) -> dict:
    rng = random.Random(f"{settings.seed}:{name}")
    try:
        passed, detail = CHECKS[name](rng, settings)
        status = "pass" if passed else "fail"
    except BudgetExceeded as exc:
        status, detail = "budget_exceeded", str(exc)
    return {"name": name, "status": status, "passed": status == "pass", "detail": detail}


def _run_one(args):
    return run_check(*args)


def selftest(settings: Settings) -> dict:
    names = list(CHECKS)
    if settings.jobs > 1:
        with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
            results = list(pool.map(_run_one, [(n, settings) for n in names]))
    else:
        results = [run_check(n, settings) for n in names]
    statuses = {r["status"] for r in results}
    if "fail" in statuses:
        status = "fail"
    elif "budget_exceeded" in statuses:
        status = "budget_exceeded"
    else:
        status = "pass"
    return {
        "status": status,
        "passed": sum(r["passed"] for r in results),
        "total": len(results),
        "checks": results,
    }
