"""Exact arithmetic in the cyclotomic field Q(zeta_N)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import Poly, Symbol, cyclotomic_poly

_Z = Symbol("z")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, _Z), _Z).all_coeffs()))


class CycNum:
    """Element of Q(zeta_N) as a polynomial in zeta reduced modulo Phi_N."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        self.coeffs = _reduce(n, [Fraction(c) for c in coeffs])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycNum:
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def scalar(cls, n: int, c) -> CycNum:
        return cls(n, [c])

    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        return CycNum(self.n, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.n, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return CycNum(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = CycNum(self.n, [1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum(self.n, [other])
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"CycNum({self.n}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        from pvp.expr import format_terms

        terms = [((i,), c) for i, c in reversed(list(enumerate(self.coeffs)))]
        return format_terms(terms, ["z"])


def _reduce(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(n)
    deg = len(phi) - 1
    # Phi_n is monic: eliminate top coefficients
    for top in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[top]
        if c:
            shift = top - deg
            for i, p in enumerate(phi):
                coeffs[shift + i] -= c * p
    coeffs = coeffs[:deg] if len(coeffs) > deg else coeffs
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def multiplicative_order(a: CycNum, bound: int = 10_000) -> int:
    """Least k >= 1 with a^k = 1, by direct powering."""
    one = CycNum(a.n, [1])
    p = a
    for k in range(1, bound + 1):
        if p == one:
            return k
        p = p * a
    raise ValueError("element has no finite order within the bound")
