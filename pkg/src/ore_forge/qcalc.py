"""q-integers, q-factorials, q-binomials, and the q-Leibniz expansions."""

from __future__ import annotations

from .coeff import ONE, ZERO, CoeffRat, coeff, coeff_pow
from .errors import OreForgeError


class QBinomTable:
    """Memoized q-factorials and q-binomials for one base."""

    def __init__(self, base):
        self.base = coeff(base)
        self._fact: list[CoeffRat] = [ONE]
        self.cache: dict[tuple[int, int], CoeffRat] = {}

    def q_int(self, m: int) -> CoeffRat:
        return q_int(m, self.base)

    def factorial(self, m: int) -> CoeffRat:
        if m < 0:
            raise ValueError("factorial of a negative integer")
        while len(self._fact) <= m:
            k = len(self._fact)
            self._fact.append(self._fact[-1] * q_int(k, self.base))
        return self._fact[m]

    def binomial(self, n: int, i: int) -> CoeffRat:
        if n < 0 or i < 0:
            raise ValueError("q-binomial arguments must be nonnegative")
        if i > n:
            raise OreForgeError(f"q-binomial needs i <= n, got ({n}, {i})")
        key = (n, i)
        v = self.cache.get(key)
        if v is None:
            den = self.factorial(i) * self.factorial(n - i)
            if den.is_zero():
                raise OreForgeError(f"q-binomial ({n}, {i}) undefined: a q-factorial vanishes at base {self.base}")
            v = self.factorial(n) / den
            self.cache[key] = v
        return v


def q_int(m: int, base) -> CoeffRat:
    """(m)_base = (base^m - 1)/(base - 1)."""
    if m < 0:
        raise ValueError("q-integers are defined for m >= 0")
    base = coeff(base)
    if m == 0:
        return ZERO
    if m == 1:
        return ONE
    if base.is_one():
        raise OreForgeError("q_int with base 1 is outside the non-root-of-unity regime")
    return (coeff_pow(base, m) - ONE) / (base - ONE)


def q_factorial(m: int, base) -> CoeffRat:
    return QBinomTable(base).factorial(m)


_TABLES: dict[CoeffRat, QBinomTable] = {}


def table(base) -> QBinomTable:
    base = coeff(base)
    t = _TABLES.get(base)
    if t is None:
        t = _TABLES[base] = QBinomTable(base)
    return t


def q_binomial(n: int, i: int, base) -> CoeffRat:
    return table(base).binomial(n, i)


def verify_q_leibniz(pres, e, f, n: int) -> bool:
    """Both q-Leibniz expansions for the top derivation, with base lambda_top^-1.

    Checks ``delta^n(ef) = sum binom(n,i) sigma^(n-i) delta^i(e) delta^(n-i)(f)``
    and ``X^n e = sum binom(n,i) sigma^(n-i) delta^i(e) X^(n-i)``.  Each side is
    computed separately by the rewriting engine.
    """
    from .ore import Element

    N = pres.N
    ring = pres.ring
    for a in (e, f):
        if a.max_var() >= N:
            raise OreForgeError(f"q-Leibniz inputs must avoid the top generator {pres.names[-1]}")
    j0 = N - 1
    lam = pres.qj[j0]
    tbl = table(lam.inverse())

    def delta_pow(terms, k):
        for _ in range(k):
            terms = ring.delta_terms(j0, terms)
        return terms

    ef = ring.mul_terms(e.terms, f.terms)
    lhs = Element(ring, delta_pow(ef, n))
    rhs = ring.zero()
    de = [delta_pow(e.terms, i) for i in range(n + 1)]
    for i in range(n + 1):
        left = Element(ring, ring.sigma_terms(j0, de[i], n - i))
        rhs = rhs + left * Element(ring, delta_pow(f.terms, n - i)) * tbl.binomial(n, i)
    if lhs != rhs:
        return False

    X = ring.gen(N)
    lhs2 = X ** n * e
    rhs2 = ring.zero()
    for i in range(n + 1):
        left = Element(ring, ring.sigma_terms(j0, de[i], n - i))
        rhs2 = rhs2 + left * X ** (n - i) * tbl.binomial(n, i)
    return lhs2 == rhs2
