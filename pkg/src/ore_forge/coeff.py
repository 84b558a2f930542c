"""Exact arithmetic in the rational function field Q(q).

Rationals are :class:`fractions.Fraction`.  A :class:`QPolynomial` is a
univariate polynomial in ``q`` with rational coefficients and a
:class:`CoeffRat` is a reduced quotient of two of them.  The public view of a
``CoeffRat`` has a monic denominator; internally numerator and denominator are
kept as coprime integer polynomials with a positive leading denominator
coefficient, which is an equally canonical form and keeps the hot arithmetic on
machine-size ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Iterable, Union

from .errors import OreForgeError

BigRational = Fraction

_F0 = Fraction(0)


# -- integer polynomial helpers on tuples of ints (low degree first) ----------

def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        s = a[0]
        return tuple(s * x for x in b)
    if len(b) == 1:
        s = b[0]
        return tuple(x * s for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a: tuple) -> int:
    g = 0
    for x in a:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _valuation(a: tuple) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return len(a)


def _is_monomial(a: tuple) -> bool:
    return len(a) > 0 and all(not x for x in a[:-1])


def _prem(a: tuple, b: tuple) -> tuple:
    """Pseudo-remainder of a by b (deg a >= deg b)."""
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        rem = [x * lb for x in rem]
        for i, y in enumerate(b):
            rem[k - db + i] -= c * y
    return _trim(rem[:db])


def _primitive(a: tuple) -> tuple:
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return a if c == 1 else tuple(x // c for x in a)


def _zgcd(a: tuple, b: tuple) -> tuple:
    """gcd in Z[q], normalized with positive leading coefficient."""
    if not a:
        return _primitive(b) if b else ()
    if not b:
        return _primitive(a)
    c = gcd(_content(a), _content(b))
    if len(a) == 1 or len(b) == 1:
        return (c,)
    if _is_monomial(a) or _is_monomial(b):
        k = min(_valuation(a), _valuation(b))
        return (0,) * k + (c,)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else ())
    g = _primitive(a)
    return g if c == 1 else tuple(x * c for x in g)


def _pexact_div(a: tuple, b: tuple) -> tuple:
    """Exact quotient in Z[q]; b must divide a."""
    if len(b) == 1:
        s = b[0]
        return a if s == 1 else tuple(x // s for x in a)
    if _is_monomial(b):
        k = len(b) - 1
        s = b[-1]
        return tuple(x // s for x in a[k:])
    rem = list(a)
    lb = b[-1]
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        f, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quo[k - db] = f
        for i, y in enumerate(b):
            rem[k - db + i] -= f * y
    if any(rem[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(quo)


def _reduce(n: tuple, d: tuple) -> tuple[tuple, tuple]:
    """Cancel common factors and make lc(d) positive."""
    if len(d) == 1:
        g = gcd(_content(n), d[0])
        if d[0] < 0:
            g = -g
        if g != 1:
            n = tuple(x // g for x in n)
            d = (d[0] // g,)
        return n, d
    g = _zgcd(n, d)
    if g != (1,):
        n = _pexact_div(n, g)
        d = _pexact_div(d, g)
    if d[-1] < 0:
        n, d = _pneg(n), _pneg(d)
    return n, d


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_poly(a: tuple) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        neg = c < 0
        c = -c if neg else c
        if k == 0:
            body = _fmt_rat(Fraction(c))
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if c == 1 else f"{_fmt_rat(Fraction(c))}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def _to_int_poly(coeffs) -> tuple[tuple, int]:
    """Scale rational coefficients to integers: returns (ints, common denominator)."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return tuple(int(c * den) for c in coeffs), den


class QPolynomial:
    """Polynomial in q with rational coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _F0

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        return QPolynomial(_padd(self.coeffs, other.coeffs))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return QPolynomial(_padd(self.coeffs, _pneg(other.coeffs)))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        return QPolynomial(_pmul(self.coeffs, other.coeffs))

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(_pneg(self.coeffs))

    def __divmod__(self, other: "QPolynomial"):
        b = other.coeffs
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(b) - 1
        quo = [_F0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            f = rem[k] / b[-1]
            if f:
                quo[k - db] = f
                for i, y in enumerate(b):
                    rem[k - db + i] -= f * y
        return QPolynomial(quo), QPolynomial(rem[:db])

    def gcd(self, other: "QPolynomial") -> "QPolynomial":
        """Monic gcd (zero if both are zero)."""
        a, _ = _to_int_poly(self.coeffs)
        b, _ = _to_int_poly(other.coeffs)
        g = _zgcd(a, b)
        if not g:
            return QPolynomial()
        return QPolynomial(Fraction(x, g[-1]) for x in g)

    def __str__(self):
        ints, den = _to_int_poly(self.coeffs)
        return _fmt_poly(self.coeffs) if den != 1 else _fmt_poly(ints)

    def __repr__(self):
        return f"QPolynomial({self})"


Scalar = Union["CoeffRat", int, Fraction]


class CoeffRat:
    """An element of Q(q) in canonical form.

    Construct with ``CoeffRat(num, den)`` from ints, Fractions, QPolynomials or
    other CoeffRats.  Instances are immutable and hashable; equal values
    compare equal structurally.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, num: Scalar | QPolynomial = 0, den: Scalar | QPolynomial = 1):
        v = _as_ratfunc(num) / _as_ratfunc(den)
        self._n, self._d, self._hash = v._n, v._d, None

    @classmethod
    def _canon(cls, n: tuple, d: tuple) -> "CoeffRat":
        c = object.__new__(cls)
        c._n, c._d, c._hash = n, d, None
        return c

    @classmethod
    def _make(cls, n: tuple, d: tuple) -> "CoeffRat":
        if not d:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not n:
            return ZERO
        n, d = _reduce(n, d)
        return cls._canon(n, d)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, r: int | Fraction) -> "CoeffRat":
        if isinstance(r, int):
            return cls._canon((r,), (1,)) if r else ZERO
        r = Fraction(r)
        if not r:
            return ZERO
        return cls._canon((r.numerator,), (r.denominator,))

    @classmethod
    def q_power(cls, k: int) -> "CoeffRat":
        if k >= 0:
            return cls._canon((0,) * k + (1,), (1,))
        return cls._canon((1,), (0,) * (-k) + (1,))

    # -- accessors --------------------------------------------------------

    @property
    def numerator(self) -> QPolynomial:
        """Numerator of the monic-denominator form."""
        lc = self._d[-1]
        return QPolynomial(Fraction(x, lc) for x in self._n)

    @property
    def denominator(self) -> QPolynomial:
        """Monic denominator."""
        lc = self._d[-1]
        return QPolynomial(Fraction(x, lc) for x in self._d)

    def is_zero(self) -> bool:
        return not self._n

    def is_one(self) -> bool:
        return self._n == (1,) and self._d == (1,)

    def is_constant(self) -> bool:
        return len(self._n) <= 1 and len(self._d) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._n[0], self._d[0]) if self._n else _F0

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    def laurent_monomial(self) -> tuple[Fraction, int] | None:
        """Return ``(c, k)`` if the value equals ``c*q^k``, else None."""
        if not self._n or not _is_monomial(self._n) or not _is_monomial(self._d):
            return None
        return Fraction(self._n[-1], self._d[-1]), (len(self._n) - 1) - (len(self._d) - 1)

    def looks_negative(self) -> bool:
        return bool(self._n) and self._n[-1] < 0

    def __bool__(self):
        return bool(self._n)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CoeffRat):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == CoeffRat.from_rational(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __neg__(self) -> "CoeffRat":
        if not self._n:
            return self
        return CoeffRat._canon(_pneg(self._n), self._d)

    def __add__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o._n:
            return self
        if not self._n:
            return o
        if self._d == o._d:
            n = _padd(self._n, o._n)
            if self._d == (1,):
                return CoeffRat._canon(n, self._d) if n else ZERO
            return CoeffRat._make(n, self._d)
        n = _padd(_pmul(self._n, o._d), _pmul(o._n, self._d))
        return CoeffRat._make(n, _pmul(self._d, o._d))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self._n or not o._n:
            return ZERO
        if o._d == (1,) and o._n == (1,):
            return self
        if self._d == (1,) and o._d == (1,):
            return CoeffRat._canon(_pmul(self._n, o._n), (1,))
        # cross-cancel so the product is already reduced
        g1 = _zgcd(self._n, o._d)
        g2 = _zgcd(o._n, self._d)
        n = _pmul(_pexact_div(self._n, g1), _pexact_div(o._n, g2))
        d = _pmul(_pexact_div(self._d, g2), _pexact_div(o._d, g1))
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return CoeffRat._canon(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "CoeffRat":
        if not self._n:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        n, d = self._d, self._n
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return CoeffRat._canon(n, d)

    def __truediv__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "CoeffRat":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "CoeffRat":
        return coeff_pow(self, k)

    def __str__(self):
        num, den = self.numerator, self.denominator
        if den.degree == 0:
            return str(num)
        text = str(num)
        if sum(1 for x in num.coeffs if x) > 1:
            text = f"({text})"
        dtext = str(den)
        if not _is_monomial(den.coeffs):
            dtext = f"({dtext})"
        return f"{text}/{dtext}"

    def __repr__(self):
        return f"CoeffRat({self})"


def _coerce(x) -> CoeffRat | None:
    if isinstance(x, CoeffRat):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffRat.from_rational(x)
    return None


def _as_ratfunc(x) -> CoeffRat:
    if isinstance(x, QPolynomial):
        ints, den = _to_int_poly(x.coeffs)
        return CoeffRat._make(ints, (den,)) if ints else ZERO
    c = _coerce(x)
    if c is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return c


ZERO = CoeffRat._canon((), (1,))
ONE = CoeffRat._canon((1,), (1,))
Q = CoeffRat._canon((0, 1), (1,))


def coeff(x: Scalar) -> CoeffRat:
    """Coerce an int, Fraction or CoeffRat to CoeffRat."""
    return _as_ratfunc(x)


def coeff_arith(a: CoeffRat, b: CoeffRat, op: str) -> CoeffRat:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; division by zero raises."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def coeff_pow(a: CoeffRat, n: int) -> CoeffRat:
    a = coeff(a)
    if n < 0:
        if a.is_zero():
            raise ZeroDivisionError("zero raised to a negative power")
        a, n = a.inverse(), -n
    if n == 0:
        return ONE
    lm = a.laurent_monomial()
    if lm is not None:
        c, k = lm
        return CoeffRat.q_power(k * n) * CoeffRat.from_rational(c ** n)
    result = ONE
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def is_root_of_unity(a: CoeffRat) -> bool:
    """True iff ``a`` is a root of unity in Q(q), i.e. ``a`` is 1 or -1."""
    a = coeff(a)
    if a.is_zero():
        raise OreForgeError("zero is not a unit, root-of-unity test undefined")
    return a.is_constant() and a.constant_value() in (1, -1)


def product(values: Iterable[CoeffRat]) -> CoeffRat:
    return reduce(lambda x, y: x * y, values, ONE)


def parse_coeff(text: str) -> CoeffRat:
    """Parse a coefficient expression such as ``"-(q - q^-1)"``."""
    from .grammar import parse_expression

    return coeff(parse_expression(text))
