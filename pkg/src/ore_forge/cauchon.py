"""The Cauchon map and the deleting-derivations procedure.

For the tower ``R = A[X; sigma, delta]`` with ``X = x_j`` and ``lam = q_j``,
``theta(a) = sum_l (1 - lam)^-l / (l)!_lam * delta^l sigma^-l (a) X^-l`` lands in
the localization at powers of ``X``.  Deleting the derivation at level ``j``
replaces the generators below ``X`` by their images under ``theta``, which
satisfy the old relations among themselves and merely skew-commute with ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeff import ONE, coeff_pow
from .errors import OreForgeError, VerificationError
from .ore import _acc, Element, LaurentElement, LaurentRing, default_bound, delta_nilpotence_order
from .presentation import CGLPresentation, verify_sigma_delta_relation
from .qcalc import table
from .report import Report


@dataclass
class ThetaImage:
    input: Element
    value: LaurentElement
    s_min: int
    s: int

    def to_dict(self) -> dict:
        return {"input": str(self.input), "value": str(self.value), "s_min": self.s_min}


@dataclass
class DeletionStep:
    before: CGLPresentation
    after: CGLPresentation
    level: int
    images: dict = field(default_factory=dict)
    checks: Report = field(default_factory=lambda: Report("deletion"))

    @property
    def trivial(self) -> bool:
        return self.before == self.after

    def to_dict(self) -> dict:
        out = self.after.to_dict()
        out["level"] = self.level
        out["images"] = {self.before.names[i - 1]: str(img.value) for i, img in sorted(self.images.items())}
        out["checks"] = self.checks.to_dict()
        return out


def _laurent(pres: CGLPresentation, j: int, bound: int | None) -> LaurentRing:
    return LaurentRing(pres.ring, j, bound)


def theta_value(pres: CGLPresentation, j: int, a: Element, bound: int | None = None,
                lring: LaurentRing | None = None) -> tuple[LaurentElement, int]:
    """The finite sum defining theta_j(a) and the nilpotence order of a."""
    if a.max_var() >= j:
        raise OreForgeError(f"theta_{j} is defined on the subalgebra below {pres.names[j - 1]}")
    ring = pres.ring
    lring = lring or _laurent(pres, j, bound)
    if a.is_zero():
        return lring.element({}), 0
    s = delta_nilpotence_order(pres, j, a, bound)
    lam = pres.qj[j - 1]
    tbl = table(lam)
    j0 = j - 1
    out: dict = {}
    base = ONE - lam
    for l in range(s + 1):
        c = coeff_pow(base, -l) / tbl.factorial(l)
        terms = ring.sigma_terms(j0, a.terms, -l)
        for _ in range(l):
            terms = ring.delta_terms(j0, terms)
        for m, v in terms.items():
            mm = list(m)
            mm[j0] = -l
            _acc(out, tuple(mm), c * v)
    return lring.element(out), s


def minimal_clearing_power(value: LaurentElement, limit: int) -> int:
    """Least t with value * X^t in the polynomial ring."""
    lring = value.lring
    for t in range(limit + 1):
        if (value * lring.X(t)).in_polynomial_ring():
            return t
    raise VerificationError(f"no power X^t with t <= {limit} clears the denominators of {value}")


def cauchon_theta(pres: CGLPresentation, j: int, a: Element, bound: int | None = None) -> ThetaImage:
    if a.is_zero():
        raise OreForgeError("theta of zero is not considered; pass a nonzero element")
    value, s = theta_value(pres, j, a, bound)
    s_min = minimal_clearing_power(value, s)
    if s_min != s:
        raise VerificationError(f"theta({a}) clears at X^{s_min} but the nilpotence order is {s}")
    return ThetaImage(a, value, s_min, s)


def verify_theta_homomorphism(pres: CGLPresentation, j: int, a: Element, b: Element,
                              bound: int | None = None) -> bool:
    lring = _laurent(pres, j, bound)
    ta, _ = theta_value(pres, j, a, bound, lring)
    tb, _ = theta_value(pres, j, b, bound, lring)
    tab, _ = theta_value(pres, j, a * b, bound, lring)
    return ta * tb == tab


def eigenvalue_at(pres: CGLPresentation, j: int, a: Element):
    """chi_a(h_j) for an H-eigenvector a."""
    w = a.eigen_weight()
    if w is None:
        raise OreForgeError(f"{a} is not an H-eigenvector")
    return pres.h[j - 1].chi(w)


def verify_alpha_commutation(pres: CGLPresentation, j: int, a: Element, bound: int | None = None) -> bool:
    """X theta(a) = eta theta(a) X with eta = chi_a(h_j)."""
    if a.is_zero():
        return True
    eta = eigenvalue_at(pres, j, a)
    lring = _laurent(pres, j, bound)
    t, _ = theta_value(pres, j, a, bound, lring)
    X = lring.X()
    return X * t == t * X * eta


def _evaluate(a: Element, images: dict, lring: LaurentRing) -> LaurentElement:
    """Substitute images[i] for x_i in a."""
    total = lring.element({})
    for m, c in a.terms.items():
        term = lring.scalar(c)
        for i, e in enumerate(m):
            for _ in range(e):
                term = term * images[i + 1]
        total = total + term
    return total


def delete_top_derivation(pres: CGLPresentation, j: int, bound: int | None = None) -> DeletionStep:
    """Erase delta_j after checking that theta(x_1), ..., theta(x_(j-1)) satisfy the same relations."""
    if not 1 <= j <= pres.N:
        raise IndexError(f"deletion level {j} out of range")
    upper = sorted(k for k in pres.delta if k[0] > j)
    if upper:
        k, i = upper[0]
        raise OreForgeError(
            f"cannot delete at level {j}: delta_{k}(x{i}) is nonzero above it; delete from the top down"
        )
    bound = default_bound() if bound is None else bound
    after_delta = {k: v for k, v in pres.delta.items() if k[0] != j}
    after = pres.with_(delta=after_delta)
    rep = Report(f"deletion at level {j} in {pres.name}")
    step = DeletionStep(pres, after, j, {}, rep)
    if not pres.has_delta(j):
        rep.add("derivation already zero", True)
        return step
    if not verify_sigma_delta_relation(pres):
        raise VerificationError(f"sigma_{j} delta_{j} = q_{j} delta_{j} sigma_{j} fails; q_{j} cannot serve as lambda")

    ring = pres.ring
    lring = _laurent(pres, j, bound)
    images: dict[int, LaurentElement] = {}
    for i in range(1, j):
        value, s = theta_value(pres, j, ring.gen(i), bound, lring)
        s_min = minimal_clearing_power(value, s)
        step.images[i] = ThetaImage(ring.gen(i), value, s_min, s)
        images[i] = value

    def fail(name, detail):
        rep.add(name, False, detail)
        raise VerificationError(f"{name}: {detail}")

    for k in range(2, j):
        for i in range(1, k):
            lhs = images[k] * images[i]
            rhs = images[i] * images[k] * pres.lam[k - 1][i - 1]
            rhs = rhs + _evaluate(pres.delta_of(k, i), images, lring)
            if lhs != rhs:
                fail(f"relation between theta({pres.names[k - 1]}) and theta({pres.names[i - 1]})",
                     f"{lhs} != {rhs}")
    rep.add("images satisfy the relations below the deleted level", True)

    X = lring.X()
    for i in range(1, j):
        lam = pres.lam[j - 1][i - 1]
        if X * images[i] != images[i] * X * lam:
            fail(f"{pres.names[j - 1]} skew-commutes with theta({pres.names[i - 1]})",
                 f"expected factor {lam}")
    rep.add("deleted variable skew-commutes with every image", True)

    for k in range(j + 1, pres.N + 1):
        xk = lring.gen(k)
        for i in range(1, j):
            lam = pres.lam[k - 1][i - 1]
            if xk * images[i] != images[i] * xk * lam:
                fail(f"{pres.names[k - 1]} skew-commutes with theta({pres.names[i - 1]})",
                     f"expected factor {lam}")
    if j < pres.N:
        rep.add("upper generators skew-commute with the images by their weights", True)
    return step


def deletion_sequence(pres: CGLPresentation, bound: int | None = None) -> list[DeletionStep]:
    """Delete derivations at levels N, N-1, ..., 2, each inside the current presentation."""
    steps = []
    current = pres
    for j in range(pres.N, 1, -1):
        step = delete_top_derivation(current, j, bound)
        steps.append(step)
        current = step.after
    if current.delta:
        raise VerificationError("derivations remain after the deletion sequence")
    return steps
