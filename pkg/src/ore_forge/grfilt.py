"""Filtration degrees making gr R a quantum affine space, and GK-dimension bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import OreForgeError, ResourceLimitError, VerificationError
from .ore import Element, monomials_up_to
from .presentation import CGLPresentation
from .report import Report


@dataclass(frozen=True)
class FiltrationDegrees:
    degrees: tuple

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, k):
        return self.degrees[k]


def _constraints(pres: CGLPresentation):
    """(j, i, monomial) for every term of every delta_j(x_i)."""
    return [(j, i, m) for (j, i), terms in sorted(pres.delta.items()) for m in terms]


def violations(pres: CGLPresentation, degrees: Sequence[int]) -> list[tuple]:
    """Constraints deg(m) < d_i + d_j that fail, with their slack (deg - bound)."""
    if len(degrees) != pres.N or any(d <= 0 for d in degrees):
        raise OreForgeError(f"need {pres.N} positive degrees, got {tuple(degrees)}")
    bad = []
    for j, i, m in _constraints(pres):
        lhs = sum(e * d for e, d in zip(m, degrees))
        rhs = degrees[i - 1] + degrees[j - 1]
        if lhs >= rhs:
            bad.append((j, i, m, lhs - rhs))
    return bad


def is_valid_degrees(pres: CGLPresentation, degrees: Sequence[int]) -> bool:
    return not violations(pres, degrees)


def _compositions(total: int, parts: int):
    """Positive integer vectors of the given length and sum, in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def find_filtration_degrees(pres: CGLPresentation, max_total: int | None = None) -> FiltrationDegrees:
    """Lexicographically least degree vector of minimal sum with deg delta_j(x_i) < d_i + d_j."""
    n = pres.N
    if max_total is None:
        max_total = 4 * n
    best = None
    for total in range(n, max_total + 1):
        for vec in _compositions(total, n):
            bad = violations(pres, vec)
            if not bad:
                return FiltrationDegrees(vec)
            worst = max(b[3] for b in bad)
            if best is None or worst < best[0]:
                best = (worst, vec, bad[0])
    if best is None:
        raise ResourceLimitError(f"no degree vector has sum <= {max_total} (need at least {n})")
    _, vec, (j, i, m, slack) = best
    word = "*".join(f"{pres.names[k]}^{e}" if e > 1 else pres.names[k] for k, e in enumerate(m) if e) or "1"
    raise ResourceLimitError(
        f"no valid degrees with sum <= {max_total}; closest candidate {vec} still has "
        f"deg({word}) >= d{i} + d{j} in delta_{j}(x{i}) (excess {slack})"
    )


def associated_graded(pres: CGLPresentation, degrees: Sequence[int]) -> CGLPresentation:
    """The quantum affine space with the same lambda matrix, torus, and the given degrees."""
    degrees = tuple(degrees)
    bad = violations(pres, degrees)
    if bad:
        j, i, m, _ = bad[0]
        raise OreForgeError(f"degrees {degrees} violate the constraint for delta_{j}(x{i})")
    name = pres.name if pres.is_quantum_affine() else f"gr {pres.name}"
    return pres.with_(name=name, delta={}, filtration=degrees)


def principal_symbol(a: Element, degrees: Sequence[int]) -> dict:
    """Terms of a in its top weighted degree."""
    if a.is_zero():
        return {}
    top = max(sum(e * d for e, d in zip(m, degrees)) for m in a.terms)
    return {m: c for m, c in a.terms.items() if sum(e * d for e, d in zip(m, degrees)) == top}


def symbol_product_agrees(pres: CGLPresentation, degrees: Sequence[int], a: Element, b: Element,
                          graded: CGLPresentation | None = None) -> bool:
    """Top part of a*b equals the quantum-affine product of the top parts."""
    graded = graded or associated_graded(pres, degrees)
    gr = graded.ring
    lhs = principal_symbol(a * b, degrees)
    rhs = gr.mul_terms(principal_symbol(a, degrees), principal_symbol(b, degrees))
    return lhs == rhs


def filtration_counts(degrees: Sequence[int], n_max: int) -> list[int]:
    """Number of PBW monomials of weighted degree <= n for n = 0..n_max, by enumeration."""
    counts = [0] * (n_max + 1)
    mins = min(degrees)
    for m in monomials_up_to(len(degrees), n_max // mins):
        w = sum(e * d for e, d in zip(m, degrees))
        if w <= n_max:
            counts[w] += 1
    for k in range(1, n_max + 1):
        counts[k] += counts[k - 1]
    return counts


def hilbert_series_counts(degrees: Sequence[int], n_max: int) -> list[int]:
    """Coefficients of 1/((1-t) prod (1-t^d_i)) up to t^n_max."""
    series = [1] + [0] * n_max
    for d in list(degrees) + [1]:
        for k in range(d, n_max + 1):
            series[k] += series[k - d]
    return series


def gk_growth_report(pres: CGLPresentation, n_max: int = 8, degrees: Sequence[int] | None = None) -> Report:
    """Sanity check that the filtration pieces grow like a polynomial of degree N."""
    rep = Report(f"growth of {pres.name}")
    degrees = tuple(degrees) if degrees is not None else find_filtration_degrees(pres).degrees
    n = pres.N
    counts = filtration_counts(degrees, n_max)
    series = hilbert_series_counts(degrees, n_max)
    rep.add("monomial counts match the Hilbert series", counts == series, f"counts {counts}")
    top = max(degrees)
    sandwiched = all(comb(k // top + n, n) <= counts[k] <= comb(k + n, n) for k in range(n_max + 1))
    rep.add("counts lie between two degree-N polynomials", sandwiched,
            f"binom(n/{top} + {n}, {n}) <= dim R_n <= binom(n + {n}, {n})")
    rep.data["degrees"] = list(degrees)
    rep.data["counts"] = counts
    return rep


def gk_dimension(pres: CGLPresentation, n_max: int = 8) -> int:
    rep = gk_growth_report(pres, n_max)
    if not rep.ok:
        raise VerificationError(str(rep))
    return pres.N
