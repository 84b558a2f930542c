"""Normal H-eigenvectors, inner-derivation elements, and the check that delta(c) = c e forces delta(c) = 0.

Two independent routes certify normality.  :func:`verify_normal` solves
``x g = p x`` as a linear system over all monomials of bounded weighted
degree.  :func:`construct_normal` instead divides ``x g`` by ``x`` using
leading monomials, which is valid because ``gr R`` is a quantum affine space
(a domain) for the filtration degrees found by :mod:`ore_forge.grfilt`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum

from .cauchon import eigenvalue_at, theta_value
from .coeff import ONE, ZERO, CoeffRat, coeff_pow
from .errors import OreForgeError, ResourceLimitError, VerificationError
from .grfilt import find_filtration_degrees
from .linalg import solve
from .ore import Element, _acc, default_bound, delta_nilpotence_order, monomials_up_to, random_element
from .presentation import CGLPresentation, TorusElement, subalgebra


@dataclass
class NormalCertificate:
    """x * x_i = left[i] * x and x_i * x = x * right[i] for every generator."""

    element: Element
    conjugation: dict
    right: dict
    eigen_weight: tuple | None
    data: dict = field(default_factory=dict)

    def rho(self, a: Element) -> Element:
        """The automorphism r -> x r x^-1, applied by substituting conjugates of generators."""
        ring = a.ring
        total = ring.zero()
        for m, c in a.terms.items():
            term = ring.scalar(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * self.conjugation[i + 1]
            total = total + term
        return total

    def to_dict(self) -> dict:
        names = self.element.ring.names
        out = {
            "element": str(self.element),
            "conjugation": {names[i - 1]: str(p) for i, p in sorted(self.conjugation.items())},
            "eigen_weight": list(self.eigen_weight) if self.eigen_weight is not None else None,
        }
        out.update({k: v for k, v in self.data.items()})
        return out


@dataclass
class FractionElement:
    """den^-1 * num with a certified normal denominator."""

    den: Element
    num: Element
    cert: NormalCertificate

    def __eq__(self, other):
        if not isinstance(other, FractionElement):
            return NotImplemented
        # a1^-1 n1 = a2^-1 n2  iff  rho_1(a2) n1 = a1 n2
        if self.num.is_zero() or other.num.is_zero():
            return self.num.is_zero() and other.num.is_zero()
        return self.cert.rho(other.den) * self.num == self.den * other.num

    __hash__ = None

    def __str__(self):
        if self.num.is_zero():
            return "0"
        if self.den.as_scalar() is not None:
            return str(self.num / self.den.as_scalar())
        return f"({self.den})^-1 * ({self.num})"

    def to_dict(self) -> dict:
        return {"den": str(self.den), "num": str(self.num)}


# -- normality by linear solve -----------------------------------------------


def _wdeg(m, degrees) -> int:
    return sum(e * d for e, d in zip(m, degrees))


def _candidates(pres: CGLPresentation, degrees, max_deg: int) -> list[tuple]:
    low = min(degrees)
    return [m for m in monomials_up_to(pres.N, max_deg // low) if _wdeg(m, degrees) <= max_deg]


def _solve_side(x: Element, target: Element, cands: list[tuple], left: bool) -> Element | None:
    ring = x.ring
    cols = []
    for m in cands:
        mono = ring.monomial(m)
        cols.append((mono * x if left else x * mono).terms)
    sol = solve(cols, target.terms)
    if sol is None:
        return None
    return ring.element({m: c for m, c in zip(cands, sol) if c})


def verify_normal(pres: CGLPresentation, x: Element, degree_bound: int = 12,
                  degrees=None) -> NormalCertificate | None:
    """Certificate of normality of x, or None when some generator has no conjugate."""
    if x.is_zero():
        raise OreForgeError("zero is not a normal element in this sense")
    degrees = tuple(degrees) if degrees is not None else find_filtration_degrees(pres).degrees
    ring = pres.ring
    if x.ring is not ring:
        x = ring.element(x.terms)
    dx = max(_wdeg(m, degrees) for m in x.terms)
    left, right = {}, {}
    failed = []
    for i in range(1, pres.N + 1):
        g = ring.gen(i)
        # gr R is a domain, so deg p = deg(x g) - deg x
        budget = max(_wdeg(m, degrees) for m in (x * g).terms) - dx
        if budget > degree_bound:
            raise ResourceLimitError(f"conjugate of {pres.names[i - 1]} would need degree {budget}")
        cands = _candidates(pres, degrees, budget)
        p = _solve_side(x, x * g, cands, left=True)
        p2 = _solve_side(x, g * x, cands, left=False)
        if p is None:
            failed.append((pres.names[i - 1], "x*g not in R*x"))
        if p2 is None:
            failed.append((pres.names[i - 1], "g*x not in x*R"))
        left[i], right[i] = p, p2
    if failed:
        return None
    return NormalCertificate(x, left, right, x.eigen_weight(), {"route": "linear solve"})


def normal_failures(pres: CGLPresentation, x: Element, degree_bound: int = 12, degrees=None) -> list[tuple]:
    """Generators for which a conjugate does not exist, with the failing side."""
    degrees = tuple(degrees) if degrees is not None else find_filtration_degrees(pres).degrees
    ring = pres.ring
    dx = max(_wdeg(m, degrees) for m in x.terms)
    out = []
    for i in range(1, pres.N + 1):
        g = ring.gen(i)
        budget = max(_wdeg(m, degrees) for m in (x * g).terms) - dx
        cands = _candidates(pres, degrees, budget)
        if _solve_side(x, x * g, cands, left=True) is None:
            out.append((pres.names[i - 1], "x*g not in R*x"))
        if _solve_side(x, g * x, cands, left=False) is None:
            out.append((pres.names[i - 1], "g*x not in x*R"))
    return out


# -- normality by leading-term division --------------------------------------


def _order_key(m, degrees):
    return (_wdeg(m, degrees), m)


def divide(target: Element, x: Element, degrees, left: bool = True, max_steps: int = 10000) -> Element | None:
    """p with p*x = target (or x*p = target when left is False), by leading-term division."""
    ring = x.ring
    lead_x = max(x.terms, key=lambda m: _order_key(m, degrees))
    rem = dict(target.terms)
    quotient: dict = {}
    for _ in range(max_steps):
        if not rem:
            return ring.element(quotient)
        lead = max(rem, key=lambda m: _order_key(m, degrees))
        shift = tuple(a - b for a, b in zip(lead, lead_x))
        if any(e < 0 for e in shift):
            return None
        mono = ring.monomial(shift)
        prod = mono * x if left else x * mono
        c = rem[lead] / prod.terms[lead]
        _acc(quotient, shift, c)
        for m, v in prod.terms.items():
            _acc(rem, m, -(c * v))
    raise ResourceLimitError("division did not terminate")


def construct_normal(pres: CGLPresentation, a: Element, bound: int | None = None,
                     cert: NormalCertificate | None = None) -> NormalCertificate:
    """x = theta(a) X^s for a normal H-eigenvector a of the subalgebra below the top generator X."""
    if a.is_zero():
        raise OreForgeError("a must be nonzero")
    N = pres.N
    if a.max_var() >= N:
        raise OreForgeError(f"a must avoid the top generator {pres.names[-1]}")
    w = a.eigen_weight()
    if w is None:
        raise OreForgeError(f"{a} is not an H-eigenvector")
    if cert is None and N > 1:
        sub = subalgebra(pres, N - 1)
        if verify_normal(sub, sub.ring.element({m[:N - 1]: c for m, c in a.terms.items()})) is None:
            raise OreForgeError(f"{a} is not normal in the subalgebra below {pres.names[-1]}")
    bound = default_bound() if bound is None else bound
    s = delta_nilpotence_order(pres, N, a, bound)
    value, _ = theta_value(pres, N, a, bound)
    x_l = value * value.lring.X(s)
    if not x_l.in_polynomial_ring():
        raise VerificationError(f"theta(a) X^{s} is not in R")
    x = x_l.to_element()
    eta = eigenvalue_at(pres, N, a)
    X = pres.ring.gen(N)
    if x * X != X * x * eta.inverse():
        raise VerificationError(f"x X = eta^-1 X x fails for x = {x}")
    degrees = find_filtration_degrees(pres).degrees
    left, right = {}, {}
    for i in range(1, N + 1):
        g = pres.ring.gen(i)
        p = divide(x * g, x, degrees, left=True)
        p2 = divide(g * x, x, degrees, left=False)
        if p is None or p2 is None:
            raise VerificationError(f"x = {x} is not normal: {pres.names[i - 1]} has no conjugate")
        left[i], right[i] = p, p2
    weight = x.eigen_weight()
    expected = tuple(u + s * v for u, v in zip(w, pres.weights[N - 1]))
    if weight != expected:
        raise VerificationError(f"weight of x is {weight}, expected {expected}")
    cert = NormalCertificate(x, left, right, weight, {"route": "division", "s": s, "eta": str(eta)})
    cert.data["torus_conjugation"] = torus_match(pres, cert)
    return cert


def torus_match(pres: CGLPresentation, cert: NormalCertificate, radius: int = 2):
    """Exponents k with conjugation by x equal to the action of h_1^k1 ... h_N^kN, if any in range.

    Records data relevant to whether normal elements act through the torus;
    None means no match in the searched box (not a proof that none exists).
    """
    scalars = []
    for i, p in sorted(cert.conjugation.items()):
        gen = pres.ring.gen(i)
        if set(p.terms) != set(gen.terms):
            return None
        scalars.append(p.terms[next(iter(gen.terms))])
    N = pres.N
    for ks in itertools.product(range(-radius, radius + 1), repeat=N):
        h = TorusElement.identity(pres.d)
        for hj, k in zip(pres.h, ks):
            if k:
                h = h * hj ** k
        if all(h.chi(pres.weights[i]) == scalars[i] for i in range(N)):
            return list(ks)
    return None


# -- inner derivations -------------------------------------------------------


def _pad(ring, e: Element) -> Element:
    """Re-read an element of a prefix subalgebra in a larger ring."""
    extra = (0,) * (ring.N - e.ring.N)
    return ring.element({m + extra: c for m, c in e.terms.items()})


def _top_data(pres: CGLPresentation):
    N = pres.N
    if N < 2:
        raise OreForgeError("need at least two generators")
    return N, subalgebra(pres, N - 1), pres.qj[N - 1]


def _certify_den(sub: CGLPresentation, a: Element) -> NormalCertificate:
    cert = verify_normal(sub, sub.ring.element({m[:sub.N]: c for m, c in a.terms.items()}))
    if cert is None:
        raise OreForgeError(f"denominator {a} is not normal in the subalgebra")
    return cert


def inner_d_from_normal(pres: CGLPresentation, a: Element, bound: int | None = None) -> FractionElement:
    """d = eta^-1 (lam^s - 1)^-1 a^-1 delta(a), checking delta(a) a = eta lam^s a delta(a)."""
    N, sub, lam = _top_data(pres)
    if a.max_var() >= N:
        raise OreForgeError(f"a must avoid the top generator {pres.names[-1]}")
    cert = _certify_den(sub, a)
    s = delta_nilpotence_order(pres, N, a, bound)
    if s == 0:
        raise OreForgeError(f"derivation vanishes on a = {a}")
    eta = eigenvalue_at(pres, N, a)
    ring = pres.ring
    da = Element(ring, ring.delta_terms(N - 1, a.terms))
    ls = coeff_pow(lam, s)
    if da * a != a * da * (eta * ls):
        raise VerificationError(f"delta(a) a = eta lam^s a delta(a) fails for a = {a}")
    num = da * ((ls - ONE).inverse() * eta.inverse())
    sring = sub.ring
    return FractionElement(cert.element, sring.element({m[:N - 1]: c for m, c in num.terms.items()}), cert)


def inner_d_from_monic(pres: CGLPresentation, leading: Element, nxt: Element, n: int) -> FractionElement:
    """d = (lam - 1)(1 - lam^n)^-1 a^-1 c for f = a X^n + c X^(n-1) + lower terms."""
    N, sub, lam = _top_data(pres)
    if n < 1:
        raise OreForgeError("n must be positive")
    if leading.is_zero():
        raise OreForgeError("leading coefficient must be nonzero")
    for e in (leading, nxt):
        if e.max_var() >= N:
            raise OreForgeError(f"coefficients must avoid the top generator {pres.names[-1]}")
    ln = coeff_pow(lam, n)
    if ln.is_one():
        raise OreForgeError(f"lambda^{n} = 1")
    cert = _certify_den(sub, leading)
    factor = (lam - ONE) / (ONE - ln)
    sring = sub.ring
    return FractionElement(cert.element, sring.element({m[:N - 1]: c for m, c in nxt.terms.items()}) * factor, cert)


def monic_data(pres: CGLPresentation, f: Element) -> tuple[Element, Element, int]:
    """(a, c, n) with f = a X^n + c X^(n-1) + ..., coefficients taken on the left."""
    N = pres.N
    if f.is_zero():
        raise OreForgeError("zero has no leading coefficient")
    n = max(m[N - 1] for m in f.terms)
    ring = pres.ring

    def coeff_at(k):
        terms = {m[:N - 1] + (0,): c for m, c in f.terms.items() if m[N - 1] == k}
        return ring.element(terms)

    return coeff_at(n), coeff_at(n - 1) if n >= 1 else ring.zero(), n


def verify_inner(pres: CGLPresentation, d: FractionElement) -> bool:
    """delta(r) = d r - sigma(r) d on every generator r below the top, after clearing den."""
    N = pres.N
    if d.cert is None:
        raise OreForgeError("denominator is not certified normal")
    ring = pres.ring
    a = _pad(ring, d.den)
    num = _pad(ring, d.num)
    for i in range(1, N):
        r = ring.gen(i)
        dr = pres.delta_of(N, i)
        lam = pres.lam[N - 1][i - 1]
        rho_sigma = _pad(ring, d.cert.conjugation[i]) * lam
        if a * dr != num * r - rho_sigma * num:
            return False
    return True


# -- delta(c) = c e forces delta(c) = 0 ------------------------------------


class Verdict(str, Enum):
    CONSISTENT = "consistent"
    NOT_SATISFIED = "hypothesis-not-satisfied"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


def _nil_order(pres, j, a, bound):
    return 0 if a.is_zero() else delta_nilpotence_order(pres, j, a, bound)


def ric_check(pres: CGLPresentation, j: int, c: Element, e: Element, side: str = "left",
              bound: int | None = None) -> Verdict:
    """If delta_j(c) = c e (left) or e c (right) then delta_j(c) must vanish."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    for v in (c, e):
        if v.max_var() >= j:
            raise OreForgeError(f"inputs must lie in the subalgebra below {pres.names[j - 1]}")
        _nil_order(pres, j, v, bound)
    ring = pres.ring
    dc = Element(ring, ring.delta_terms(j - 1, c.terms))
    rhs = c * e if side == "left" else e * c
    if dc != rhs:
        return Verdict.NOT_SATISFIED
    return Verdict.CONSISTENT if dc.is_zero() else Verdict.COUNTEREXAMPLE


def ric_trials(pres: CGLPresentation, trials: int = 500, seed: int = 0, bound: int | None = None) -> dict:
    """Randomized ric_check runs; half of them try to build e by dividing delta(c) by c."""
    rng = random.Random(seed)
    ring = pres.ring
    counts = {v.value: 0 for v in Verdict}
    witnesses = []
    degrees = find_filtration_degrees(pres).degrees if pres.N > 1 else (1,)
    for t in range(trials):
        j = rng.randint(2, pres.N) if pres.N > 1 else 1
        side = rng.choice(("left", "right"))
        c = random_element(ring, rng, 3, 3, below=j)
        mode = t % 4
        if mode == 0:
            e = random_element(ring, rng, 2, 2, below=j)
        elif mode == 1:
            e = ring.zero()
        else:
            dc = Element(ring, ring.delta_terms(j - 1, c.terms))
            e = None
            if not c.is_zero():
                # e with c e = delta(c) (left) or e c = delta(c) (right), when it exists
                e = divide(dc, c, degrees, left=(side == "right"))
            if e is None:
                e = random_element(ring, rng, 2, 2, below=j)
        verdict = ric_check(pres, j, c, e, side, bound)
        counts[verdict.value] += 1
        if verdict is Verdict.COUNTEREXAMPLE:
            witnesses.append({"j": j, "c": str(c), "e": str(e), "side": side})
    return {"counts": counts, "counterexamples": witnesses}
