"""Buchberger's algorithm with an explicit reduction budget.

Polynomials are sympy ``PolyElement`` values over a field domain; the ring's
monomial order (degrevlex for jet rings) is used throughout.  Every
S-polynomial reduction costs one unit of budget; running out raises
:class:`BudgetExceeded` instead of returning a partial basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_BUDGET = 10_000


class BudgetExceeded(RuntimeError):
    """The computation needed more S-polynomial reductions than allowed."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"Groebner budget of {budget} S-polynomial reductions exceeded")


@dataclass
class Stats:
    reductions: int = 0
    pairs_skipped: int = 0
    budget: int = DEFAULT_BUDGET

    def charge(self):
        self.reductions += 1
        if self.reductions > self.budget:
            raise BudgetExceeded(self.budget)


def _divides(ring, a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def spoly(f, g):
    ring = f.ring
    lcm = ring.monomial_lcm(f.LM, g.LM)
    s1 = f.mul_monom(ring.monomial_div(lcm, f.LM)).quo_ground(f.LC)
    s2 = g.mul_monom(ring.monomial_div(lcm, g.LM)).quo_ground(g.LC)
    return s1 - s2


def normal_form(p, basis):
    """Full remainder of ``p`` modulo ``basis`` (zero ideal if empty)."""
    if not basis or not p:
        return p
    return p.rem(list(basis))


def _reduce_basis(ring, basis):
    basis = sorted((g.monic() for g in basis if g), key=lambda g: ring.order(g.LM))
    minimal: list = []
    for g in basis:
        if not any(_divides(ring, h.LM, g.LM) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced.append(normal_form(g, others).monic() if others else g)
    reduced.sort(key=lambda g: ring.order(g.LM), reverse=True)
    return reduced


def groebner(gens, budget: int = DEFAULT_BUDGET, stats: Stats | None = None) -> list:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    stats = stats if stats is not None else Stats(budget=budget)
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    if any(g.is_ground for g in gens):
        return [ring.one]
    basis: list = []
    pairs: set[tuple[int, int]] = set()

    def add(h):
        basis.append(h.monic())
        k = len(basis) - 1
        pairs.update((i, k) for i in range(k))

    for g in gens:
        add(g)
    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs, key=lambda p: (ring.order(ring.monomial_lcm(basis[p[0]].LM, basis[p[1]].LM)), p))
        pairs.discard((i, j))
        done.add((i, j))
        fi, fj = basis[i], basis[j]
        lcm = ring.monomial_lcm(fi.LM, fj.LM)
        if ring.monomial_mul(fi.LM, fj.LM) == lcm:
            stats.pairs_skipped += 1
            continue
        if _chain_criterion(ring, basis, i, j, lcm, pairs):
            stats.pairs_skipped += 1
            continue
        stats.charge()
        h = normal_form(spoly(fi, fj), basis)
        if h:
            if h.is_ground:
                return [ring.one]
            add(h)
    return _reduce_basis(ring, basis)


def _chain_criterion(ring, basis, i, j, lcm, pending) -> bool:
    for k, g in enumerate(basis):
        if k in (i, j) or not _divides(ring, g.LM, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def is_groebner(basis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(spoly(basis[i], basis[j]), basis):
                return False
    return True
