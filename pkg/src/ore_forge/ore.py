"""PBW arithmetic for iterated Ore extensions with diagonal automorphisms.

An :class:`OreRing` is the rewriting engine for one presentation.  Elements
are dictionaries from exponent vectors ``(e1, ..., eN)``, read as the ordered
monomial ``x1^e1 ... xN^eN``, to :class:`~ore_forge.coeff.CoeffRat`.  The
only rewriting rule is ``xj a = sigma_j(a) xj + delta_j(a)`` for ``a`` in the
subalgebra generated by ``x1 .. x(j-1)``; ``sigma_j`` scales ``xi`` by
``lambda[j][i]`` and ``delta_j`` is extended from its values on generators by
the twisted Leibniz rule ``delta(uv) = sigma(u) delta(v) + delta(u) v``.

Generator indices in the public API are 1-based, matching the usual
``x1 < x2 < ... < xN`` tower order.  Exponent tuples are plain 0-based tuples.
"""

from __future__ import annotations

import os
import random
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .coeff import ONE, ZERO, CoeffRat, coeff, coeff_pow
from .errors import OreForgeError, PresentationError, ResourceLimitError

if TYPE_CHECKING:
    from .presentation import CGLPresentation, TorusElement

Monomial = tuple

DEFAULT_BOUND = 32


def default_bound() -> int:
    """Iteration bound for nilpotence searches; ``ORE_FORGE_BOUND`` overrides it."""
    value = os.environ.get("ORE_FORGE_BOUND")
    if value:
        try:
            bound = int(value)
        except ValueError:
            raise OreForgeError(f"ORE_FORGE_BOUND must be an integer, got {value!r}") from None
        if bound <= 0:
            raise OreForgeError("ORE_FORGE_BOUND must be positive")
        return bound
    return DEFAULT_BOUND


def _acc(out: dict, key, c: CoeffRat) -> None:
    old = out.get(key)
    if old is None:
        out[key] = c
    else:
        s = old + c
        if s:
            out[key] = s
        else:
            del out[key]


def _coerce_scalar(x) -> CoeffRat | None:
    if isinstance(x, CoeffRat):
        return x
    if isinstance(x, int) or type(x).__name__ == "Fraction":
        return coeff(x)
    return None


def _format_terms(items: Iterable[tuple[tuple, CoeffRat]], names: Sequence[str]) -> str:
    parts = []
    for mono, c in sorted(items, key=lambda t: t[0], reverse=True):
        word = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e)
        neg = c.looks_negative()
        cc = -c if neg else c
        if not word:
            body = str(cc)
        elif cc.is_one():
            body = word
        else:
            text = str(cc)
            if cc.is_polynomial() and sum(1 for x in cc.numerator.coeffs if x) > 1:
                text = f"({text})"
            body = f"{text}*{word}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


class OreRing:
    """Rewriting engine for one presentation, with memoized monomial products.

    ``max_terms`` optionally caps the number of terms in any product; exceeding
    it raises :class:`ResourceLimitError`.
    """

    def __init__(self, pres: "CGLPresentation", max_terms: int | None = None):
        self.pres = pres
        self.N = n = pres.N
        self.names = tuple(pres.names)
        self.max_terms = max_terms
        self._lam = [list(row) for row in pres.lam]
        self._delta: dict[tuple[int, int], dict] = {}
        for (j, i), terms in pres.delta.items():
            for mono in terms:
                if len(mono) != n or any(mono[k] for k in range(j - 1, n)):
                    raise PresentationError(
                        f"delta_{j}(x{i}) must only involve generators below {self.names[j - 1]}"
                    )
            if terms:
                self._delta[(j - 1, i - 1)] = dict(terms)
        self.unit = (0,) * n
        self._gen_cache: dict = {}
        self._mul_cache: dict = {}
        self._dmono_cache: dict = {}
        self._sigma_cache: dict = {}

    # -- element constructors ------------------------------------------------

    def element(self, terms: Mapping[tuple, CoeffRat]) -> "Element":
        return Element(self, {m: c for m, c in terms.items() if c})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit: ONE})

    def scalar(self, c) -> "Element":
        c = coeff(c)
        return Element(self, {self.unit: c} if c else {})

    def gen(self, i: int) -> "Element":
        """The generator x_i (1-based)."""
        if not 1 <= i <= self.N:
            raise IndexError(f"generator index {i} out of range 1..{self.N}")
        m = [0] * self.N
        m[i - 1] = 1
        return Element(self, {tuple(m): ONE})

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(1, self.N + 1)]

    def monomial(self, exps: Sequence[int], c=ONE) -> "Element":
        if len(exps) != self.N or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {tuple(exps)}")
        c = coeff(c)
        return Element(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Element":
        from .grammar import parse_expression

        index = {name: i + 1 for i, name in enumerate(self.names)}
        value = parse_expression(text, self.names, lambda name: self.gen(index[name]))
        return value if isinstance(value, Element) else self.scalar(value)

    # -- diagonal data -------------------------------------------------------

    def lam(self, j: int, i: int) -> CoeffRat:
        """lambda_{ji}, 1-based."""
        return self._lam[j - 1][i - 1]

    def sigma_scalar(self, j0: int, mono: tuple) -> CoeffRat:
        """Eigenvalue of sigma_{j0+1} on a monomial of the lower subalgebra."""
        key = (j0, mono)
        s = self._sigma_cache.get(key)
        if s is None:
            s = ONE
            row = self._lam[j0]
            for i in range(j0):
                e = mono[i]
                if e:
                    s = s * coeff_pow(row[i], e)
            self._sigma_cache[key] = s
        return s

    def has_delta(self, j: int) -> bool:
        return any(k[0] == j - 1 for k in self._delta)

    # -- core rewriting --------------------------------------------------------

    def _gen_mul(self, j0: int, m: tuple) -> dict:
        """x_{j0+1} * monomial, as a normal-form term dict."""
        key = (j0, m)
        out = self._gen_cache.get(key)
        if out is not None:
            return out
        bumped = list(m)
        bumped[j0] += 1
        bumped = tuple(bumped)
        if not any(m[:j0]):
            out = {bumped: ONE}
        else:
            out = {bumped: self.sigma_scalar(j0, m)}
            lower = m[:j0] + (0,) * (self.N - j0)
            tail = m[j0:]
            for u, c in self._delta_mono(j0, lower).items():
                out[u[:j0] + tail] = c
        self._gen_cache[key] = out
        return out

    def _delta_mono(self, j0: int, a: tuple) -> dict:
        """delta_{j0+1} of a monomial in x1..x_{j0}."""
        key = (j0, a)
        out = self._dmono_cache.get(key)
        if out is not None:
            return out
        i0 = next(k for k, e in enumerate(a) if e)
        rest = list(a)
        rest[i0] -= 1
        rest = tuple(rest)
        dx = self._delta.get((j0, i0))
        out = {}
        if rest == self.unit:
            if dx:
                out = dict(dx)
        else:
            # delta(x_i a') = lambda_{ji} x_i delta(a') + delta(x_i) a'
            d_rest = self._delta_mono(j0, rest)
            if d_rest:
                lam = self._lam[j0][i0]
                for u, c in d_rest.items():
                    lc = lam * c
                    for m, c2 in self._gen_mul(i0, u).items():
                        _acc(out, m, lc if c2.is_one() else lc * c2)
            if dx:
                for u, c in dx.items():
                    for m, c2 in self._mono_mul(u, rest).items():
                        _acc(out, m, c if c2.is_one() else c * c2)
        self._dmono_cache[key] = out
        return out

    def _mono_mul(self, m1: tuple, m2: tuple) -> dict:
        hi = -1
        for k in range(self.N - 1, -1, -1):
            if m1[k]:
                hi = k
                break
        if hi < 0:
            return {m2: ONE}
        lo = self.N
        for k in range(self.N):
            if m2[k]:
                lo = k
                break
        if hi <= lo:
            return {tuple(x + y for x, y in zip(m1, m2)): ONE}
        key = (m1, m2)
        out = self._mul_cache.get(key)
        if out is not None:
            return out
        head = list(m1)
        head[hi] -= 1
        head = tuple(head)
        out = {}
        for m, c in self._gen_mul(hi, m2).items():
            for mm, cc in self._mono_mul(head, m).items():
                _acc(out, mm, cc if c.is_one() else (c if cc.is_one() else c * cc))
        self._mul_cache[key] = out
        return out

    def mul_terms(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c12 = c1 * c2
                for m, c in self._mono_mul(m1, m2).items():
                    _acc(out, m, c12 if c.is_one() else c12 * c)
            if self.max_terms is not None and len(out) > self.max_terms:
                raise ResourceLimitError(f"product exceeded {self.max_terms} terms")
        return out

    def delta_terms(self, j0: int, a: Mapping) -> dict:
        out: dict = {}
        for m, c in a.items():
            if any(m[j0:]):
                raise OreForgeError(
                    f"delta_{j0 + 1} applies only to elements of the subalgebra below {self.names[j0]}"
                )
            if m == self.unit:
                continue
            for u, cu in self._delta_mono(j0, m).items():
                _acc(out, u, c * cu)
        return out

    def sigma_terms(self, j0: int, a: Mapping, power: int = 1) -> dict:
        out = {}
        for m, c in a.items():
            if any(m[j0:]):
                raise OreForgeError(
                    f"sigma_{j0 + 1} applies only to elements of the subalgebra below {self.names[j0]}"
                )
            s = self.sigma_scalar(j0, m)
            out[m] = c * (s if power == 1 else coeff_pow(s, power))
        return out

    # -- weights -------------------------------------------------------------

    def monomial_weight(self, mono: tuple) -> tuple[int, ...]:
        w = [0] * self.pres.d
        for e, wi in zip(mono, self.pres.weights):
            if e:
                for t, x in enumerate(wi):
                    w[t] += e * x
        return tuple(w)


class Element:
    """A PBW-normal-form element of an :class:`OreRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: OreRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> "Element | None":
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring.N != self.ring.N:
                raise OreForgeError("elements belong to different rings")
            return other
        c = _coerce_scalar(other)
        if c is None:
            return None
        return self.ring.scalar(c)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            _acc(out, m, c)
        return Element(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._lift(other)
            return Element(self.ring, self.ring.mul_terms(self.terms, other.terms))
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        if not c:
            return Element(self.ring, {})
        return Element(self.ring, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self * c

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self * c.inverse()

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the polynomial ring")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.terms == ({self.ring.unit: c} if c else {})

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def as_scalar(self) -> CoeffRat | None:
        if not self.terms:
            return ZERO
        if set(self.terms) == {self.ring.unit}:
            return self.terms[self.ring.unit]
        return None

    def max_var(self) -> int:
        """Largest 1-based generator index occurring, 0 for scalars."""
        top = 0
        for m in self.terms:
            for k in range(len(m) - 1, top - 1, -1):
                if m[k]:
                    top = k + 1
                    break
        return top

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero element has no degree")
        return max(sum(m) for m in self.terms)

    def weights(self) -> set[tuple[int, ...]]:
        return {self.ring.monomial_weight(m) for m in self.terms}

    def eigen_weight(self) -> tuple[int, ...] | None:
        """The H-weight if this is a nonzero H-eigenvector, else None."""
        ws = self.weights()
        return next(iter(ws)) if len(ws) == 1 else None

    def coefficient(self, mono: Sequence[int]) -> CoeffRat:
        return self.terms.get(tuple(mono), ZERO)

    def __str__(self):
        return _format_terms(self.terms.items(), self.ring.names)

    def __repr__(self):
        return f"Element({self})"


# -- Laurent localization at one generator -----------------------------------


class LaurentRing:
    """The localization of a ring at the powers of one generator X = x_j.

    Terms are exponent vectors in which coordinate ``j`` may be negative; a
    vector is read as ``a X^l c`` with ``a`` in the subalgebra below ``X`` and
    ``c`` a monomial in the generators above ``X``.  Generators above ``X`` are
    allowed only when their derivations vanish identically, so that they
    skew-commute diagonally with everything.
    """

    def __init__(self, ring: OreRing, j: int, bound: int | None = None):
        if not 1 <= j <= ring.N:
            raise IndexError(f"inverted index {j} out of range")
        self.ring = ring
        self.j = j
        self.x = j - 1
        self.N = ring.N
        self.names = ring.names
        self.bound = default_bound() if bound is None else bound
        self.upper_diagonal = not any(k[0] > self.x for k in ring._delta)
        self._xtimes_cache: dict = {}
        self._xinv_cache: dict = {}

    # -- constructors ----------------------------------------------------------

    def element(self, terms: Mapping) -> "LaurentElement":
        out = {m: c for m, c in terms.items() if c}
        for m in out:
            self._check_term(m)
        return LaurentElement(self, out)

    def _check_term(self, m: tuple) -> None:
        if len(m) != self.N:
            raise ValueError(f"bad exponent vector {m}")
        for k, e in enumerate(m):
            if e < 0 and k != self.x:
                raise ValueError(f"only {self.names[self.x]} may carry a negative exponent")
        if not self.upper_diagonal and any(m[self.x + 1:]):
            raise OreForgeError(
                f"generators above {self.names[self.x]} have nonzero derivations; "
                "they cannot appear in this localization"
            )

    def from_element(self, a: Element) -> "LaurentElement":
        return self.element(a.terms)

    def one(self) -> "LaurentElement":
        return LaurentElement(self, {self.ring.unit: ONE})

    def scalar(self, c) -> "LaurentElement":
        c = coeff(c)
        return LaurentElement(self, {self.ring.unit: c} if c else {})

    def gen(self, i: int) -> "LaurentElement":
        return self.from_element(self.ring.gen(i))

    def X(self, power: int = 1) -> "LaurentElement":
        m = [0] * self.N
        m[self.x] = power
        return LaurentElement(self, {tuple(m): ONE})

    def parse(self, text: str) -> "LaurentElement":
        from .grammar import parse_expression

        index = {name: i + 1 for i, name in enumerate(self.names)}
        value = parse_expression(text, self.names, lambda name: self.gen(index[name]))
        return value if isinstance(value, LaurentElement) else self.scalar(value)

    # -- multiplication ------------------------------------------------------

    def _split(self, m: tuple):
        x = self.x
        return m[:x] + (0,) * (self.N - x), m[x], m[x + 1:]

    def _xinv(self, b: tuple) -> dict:
        """X^-1 * b for a lower monomial b, as {(lower_mono, l): coeff}."""
        out = self._xinv_cache.get(b)
        if out is not None:
            return out
        ring, x = self.ring, self.x
        out = {}
        cur = {b: ONE}
        t = 0
        while cur:
            if t > self.bound:
                raise ResourceLimitError(
                    f"expansion of {self.names[x]}^-1 did not terminate within {self.bound} steps"
                )
            s_inv = ring.sigma_terms(x, cur, -1)
            sign = ONE if t % 2 == 0 else -ONE
            for m, c in s_inv.items():
                _acc(out, (m, -(t + 1)), c if t % 2 == 0 else -c)
            cur = ring.delta_terms(x, s_inv)
            t += 1
        self._xinv_cache[b] = out
        return out

    def _xtimes(self, m: int, a: tuple) -> dict:
        """X^m * a for a lower monomial a, as {(lower_mono, l): coeff}."""
        if m == 0:
            return {(a, 0): ONE}
        key = (m, a)
        out = self._xtimes_cache.get(key)
        if out is not None:
            return out
        ring, x = self.ring, self.x
        out = {}
        if m > 0:
            xm = [0] * self.N
            xm[x] = m
            for mono, c in ring._mono_mul(tuple(xm), a).items():
                low = mono[:x] + (0,) * (self.N - x)
                _acc(out, (low, mono[x]), c)
        else:
            for (b, l), cb in self._xtimes(m + 1, a).items():
                for (b2, l2), c2 in self._xinv(b).items():
                    _acc(out, (b2, l2 + l), cb * c2)
        self._xtimes_cache[key] = out
        return out

    def _upper_scalar(self, up1: tuple, a2: tuple, m2: int, up2: tuple) -> CoeffRat:
        lam = self.ring._lam
        x = self.x
        s = ONE
        for dk, ck in enumerate(up1):
            if not ck:
                continue
            k = x + 1 + dk
            row = lam[k]
            for i in range(x):
                if a2[i]:
                    s = s * coeff_pow(row[i], ck * a2[i])
            if m2:
                s = s * coeff_pow(row[x], ck * m2)
            for dk2 in range(dk):
                if up2[dk2]:
                    s = s * coeff_pow(row[x + 1 + dk2], ck * up2[dk2])
        return s

    def mul_terms(self, u: Mapping, v: Mapping) -> dict:
        ring, x = self.ring, self.x
        out: dict = {}
        for e1, c1 in u.items():
            a1, m1, up1 = self._split(e1)
            for e2, c2 in v.items():
                a2, m2, up2 = self._split(e2)
                c = c1 * c2
                if any(up1):
                    c = c * self._upper_scalar(up1, a2, m2, up2)
                up = tuple(p + r for p, r in zip(up1, up2))
                for (b, l), cb in self._xtimes(m1, a2).items():
                    cc = c * cb
                    for mono, cp in ring._mono_mul(a1, b).items():
                        _acc(out, mono[:x] + (l + m2,) + up, cc if cp.is_one() else cc * cp)
        if ring.max_terms is not None and len(out) > ring.max_terms:
            raise ResourceLimitError(f"product exceeded {ring.max_terms} terms")
        return out


class LaurentElement:
    """An element of a :class:`LaurentRing`, kept in left form sum a_l X^l c."""

    __slots__ = ("lring", "terms")

    def __init__(self, lring: LaurentRing, terms: dict):
        self.lring = lring
        self.terms = terms

    def _lift(self, other) -> "LaurentElement | None":
        if isinstance(other, LaurentElement):
            if other.lring.x != self.lring.x:
                raise OreForgeError("Laurent elements invert different generators")
            return other
        if isinstance(other, Element):
            return self.lring.from_element(other)
        c = _coerce_scalar(other)
        if c is None:
            return None
        return self.lring.scalar(c)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            _acc(out, m, c)
        return LaurentElement(self.lring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement(self.lring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            if not c:
                return LaurentElement(self.lring, {})
            return LaurentElement(self.lring, {m: v * c for m, v in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return LaurentElement(self.lring, self.lring.mul_terms(self.terms, o.terms))

    def __rmul__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            return self * c
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self * c.inverse()

    def __pow__(self, k: int):
        if k < 0:
            x = self.lring.x
            if len(self.terms) == 1:
                (m, c), = self.terms.items()
                if all(e == 0 for i, e in enumerate(m) if i != x):
                    return self.lring.X(m[x] * k) * c.inverse() ** (-k)
            raise ValueError("only monomials in the inverted generator have inverses here")
        result = self.lring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentElement):
            return self.terms == other.terms
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def as_scalar(self) -> CoeffRat | None:
        unit = self.lring.ring.unit
        if not self.terms:
            return ZERO
        if set(self.terms) == {unit}:
            return self.terms[unit]
        return None

    def min_power(self) -> int:
        """Smallest exponent of the inverted generator (0 for zero)."""
        return min((m[self.lring.x] for m in self.terms), default=0)

    def in_polynomial_ring(self) -> bool:
        return all(e >= 0 for m in self.terms for e in m)

    def to_element(self) -> Element:
        if not self.in_polynomial_ring():
            raise ValueError(f"{self} has negative exponents")
        return Element(self.lring.ring, dict(self.terms))

    def __str__(self):
        return _format_terms(self.terms.items(), self.lring.names)

    def __repr__(self):
        return f"LaurentElement({self})"


# -- public operations ---------------------------------------------------------


def _gen_index(pres: "CGLPresentation", g) -> int:
    if isinstance(g, int):
        if not 1 <= g <= pres.N:
            raise IndexError(f"generator index {g} out of range 1..{pres.N}")
        return g
    try:
        return pres.names.index(g) + 1
    except ValueError:
        raise OreForgeError(f"unknown generator {g!r}") from None


def normal_form(pres: "CGLPresentation", raw: Iterable[tuple[object, Sequence]]) -> Element:
    """Normal form of ``sum c * word`` where a word lists generators (1-based indices or names)."""
    ring = pres.ring
    total = ring.zero()
    for c, word in raw:
        term = ring.scalar(coeff(c))
        for g in word:
            term = term * ring.gen(_gen_index(pres, g))
        total = total + term
    return total


def _check_below(a: Element, j: int, what: str) -> None:
    if a.max_var() >= j:
        raise OreForgeError(f"{what}_{j} is only defined on the subalgebra generated by x1..x{j - 1}")


def apply_sigma(pres: "CGLPresentation", j: int, a: Element, power: int = 1) -> Element:
    _check_below(a, j, "sigma")
    return Element(a.ring, a.ring.sigma_terms(j - 1, a.terms, power))


def apply_delta(pres: "CGLPresentation", j: int, a: Element) -> Element:
    _check_below(a, j, "delta")
    return Element(a.ring, a.ring.delta_terms(j - 1, a.terms))


def torus_scalar(pres: "CGLPresentation", h: "TorusElement", mono: Sequence[int]) -> CoeffRat:
    s = ONE
    for e, w in zip(mono, pres.weights):
        if e:
            s = s * coeff_pow(h.chi(w), e)
    return s


def apply_torus(pres: "CGLPresentation", h: "TorusElement", a: Element | LaurentElement):
    """Act by the torus element h; Laurent elements are scaled the same way."""
    out = {m: c * torus_scalar(pres, h, m) for m, c in a.terms.items()}
    return type(a)(a.ring if isinstance(a, Element) else a.lring, out)


def delta_nilpotence_order(pres: "CGLPresentation", j: int, a: Element, bound: int | None = None) -> int:
    """Maximal s with delta_j^s(a) != 0 (searching at most ``bound`` steps)."""
    if a.is_zero():
        raise OreForgeError("nilpotence order of zero is undefined")
    _check_below(a, j, "delta")
    bound = default_bound() if bound is None else bound
    ring = a.ring
    cur = a.terms
    s = 0
    while True:
        nxt = ring.delta_terms(j - 1, cur)
        if not nxt:
            return s
        s += 1
        if s > bound:
            raise ResourceLimitError(f"delta_{j} not nilpotent on {a} within {bound} steps")
        cur = nxt


def laurent_mul(pres: "CGLPresentation", u: LaurentElement, v: LaurentElement) -> LaurentElement:
    if u.lring.x != v.lring.x:
        raise OreForgeError("mismatched inverted indices")
    return u * v


def weighted_degree(pres: "CGLPresentation", a: Element, degrees: Sequence[int]) -> int:
    if a.is_zero():
        raise OreForgeError("zero element has no weighted degree")
    return max(sum(e * d for e, d in zip(m, degrees)) for m in a.terms)


# -- random elements for property runs ---------------------------------------


_COEFF_POOL = None


def _coeff_pool() -> list[CoeffRat]:
    global _COEFF_POOL
    if _COEFF_POOL is None:
        from .coeff import Q

        _COEFF_POOL = [coeff(1), coeff(-1), coeff(2), coeff(-3), Q, -Q, Q + 1, Q.inverse(), coeff(1) - Q * Q]
    return _COEFF_POOL


def random_monomial(ring: OreRing, rng: random.Random, max_degree: int, below: int | None = None) -> tuple:
    top = ring.N if below is None else below - 1
    deg = rng.randint(0, max_degree)
    m = [0] * ring.N
    if top > 0:
        for _ in range(deg):
            m[rng.randrange(top)] += 1
    return tuple(m)


def random_element(
    ring: OreRing,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 3,
    below: int | None = None,
    nonzero: bool = False,
) -> Element:
    """Random element of total degree <= max_degree, optionally in x1..x(below-1)."""
    pool = _coeff_pool()
    while True:
        terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            _acc(terms, random_monomial(ring, rng, max_degree, below), rng.choice(pool))
        if terms or not nonzero:
            return Element(ring, terms)


def random_eigenvector(
    ring: OreRing,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 3,
    below: int | None = None,
) -> Element:
    """Random nonzero H-eigenvector: a combination of monomials sharing one weight."""
    pool = _coeff_pool()
    top = ring.N if below is None else below - 1
    seed = random_monomial(ring, rng, max_degree, below)
    w = ring.monomial_weight(seed)
    same = [m for m in _monomials_up_to(top, ring.N, max_degree) if ring.monomial_weight(m) == w]
    terms = {seed: rng.choice(pool)}
    for _ in range(max_terms - 1):
        _acc(terms, rng.choice(same), rng.choice(pool))
    if not terms:
        terms = {seed: ONE}
    return Element(ring, terms)


def _monomials_up_to(top: int, n: int, max_degree: int) -> list[tuple]:
    out = []

    def rec(prefix: list, remaining: int):
        if len(prefix) == top:
            out.append(tuple(prefix) + (0,) * (n - top))
            return
        for e in range(remaining + 1):
            prefix.append(e)
            rec(prefix, remaining - e)
            prefix.pop()

    rec([], max_degree)
    return out


def monomials_up_to(n: int, max_degree: int, top: int | None = None) -> list[tuple]:
    """All exponent vectors of length n with total degree <= max_degree in the first ``top`` slots."""
    return _monomials_up_to(n if top is None else top, n, max_degree)
