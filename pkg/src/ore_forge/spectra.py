"""Finite posets, H-primes of quantum affine spaces, and chain-condition checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable

from .coeff import ONE
from .errors import OreForgeError, ParseError
from .presentation import CGLPresentation
from .report import Report


class FinitePoset:
    """A finite poset stored by its cover relation (the Hasse diagram)."""

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple]):
        self.elements = list(dict.fromkeys(elements))
        index = set(self.elements)
        up: dict = {e: set() for e in self.elements}
        for a, b in relations:
            if a not in index or b not in index:
                raise OreForgeError(f"relation {a} < {b} mentions an unknown element")
            if a == b:
                raise OreForgeError(f"relation {a} < {a} is not strict")
            up[a].add(b)
        self._order = self._topological(up)
        # strict upper sets by transitive closure
        above: dict = {}
        for e in reversed(self._order):
            s = set()
            for b in up[e]:
                s.add(b)
                s |= above[b]
            above[e] = s
        self._above = above
        self.covers = {
            (a, b) for a in self.elements for b in up[a] if not any(b in above[c] for c in up[a] if c != b)
        }
        self._up = {e: sorted((b for a, b in self.covers if a == e), key=self._order.index) for e in self.elements}

    @staticmethod
    def _topological(up: dict) -> list:
        indeg = {e: 0 for e in up}
        for a in up:
            for b in up[a]:
                indeg[b] += 1
        ready = [e for e in up if indeg[e] == 0]
        order = []
        while ready:
            e = ready.pop(0)
            order.append(e)
            for b in sorted(up[e], key=list(up).index):
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        if len(order) != len(up):
            raise OreForgeError("the relation has a cycle")
        return order

    def less(self, a, b) -> bool:
        return b in self._above[a]

    def leq(self, a, b) -> bool:
        return a == b or self.less(a, b)

    def upper_covers(self, a) -> list:
        return list(self._up[a])

    def comparable_pairs(self) -> list[tuple]:
        return [(a, b) for a in self._order for b in self._order if self.less(a, b)]

    def chain_lengths(self, a):
        """For every b > a: (shortest, longest) saturated chain from a to b, with witness chains."""
        short = {a: [a]}
        long = {a: [a]}
        for e in self._order:
            if e not in short:
                continue
            for b in self._up[e]:
                if b not in short or len(short[e]) + 1 < len(short[b]):
                    short[b] = short[e] + [b]
                if b not in long or len(long[e]) + 1 > len(long[b]):
                    long[b] = long[e] + [b]
        return short, long

    def longest_chain(self, a, b) -> int:
        if a == b:
            return 0
        _, long = self.chain_lengths(a)
        if b not in long:
            raise OreForgeError(f"{b} is not above {a}")
        return len(long[b]) - 1

    def to_text(self, label=str) -> str:
        lines = [f"{label(a)} < {label(b)}" for a in self._order for b in self._up[a]]
        isolated = [e for e in self._order if not self._up[e] and not any(b == e for _, b in self.covers)]
        lines += [label(e) for e in isolated]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FinitePoset":
        elements, rels = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "<" in line:
                parts = [p.strip() for p in line.split("<")]
                if len(parts) != 2 or not all(parts):
                    raise ParseError(f"line {lineno}: expected 'a < b'", None, None)
                a, b = parts
                elements += [a, b]
                rels.append((a, b))
            else:
                elements.append(line)
        return cls(elements, rels)

    def __len__(self):
        return len(self.elements)


@dataclass
class CatenaryResult:
    ok: bool
    pair: tuple | None = None
    short_chain: list | None = None
    long_chain: list | None = None

    def __bool__(self):
        return self.ok


def catenary_check(poset: FinitePoset) -> CatenaryResult:
    """All saturated chains between any two comparable elements have the same length."""
    for a in poset._order:
        short, long = poset.chain_lengths(a)
        for b in poset._order:
            if b != a and b in short and len(short[b]) != len(long[b]):
                return CatenaryResult(False, (a, b), short[b], long[b])
    return CatenaryResult(True)


def non_catenary_example() -> FinitePoset:
    return FinitePoset(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def boolean_lattice(n: int) -> FinitePoset:
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    return FinitePoset(subsets, [(s, s | {i}) for s in subsets for i in range(1, n + 1) if i not in s])


# -- H-primes of quantum affine spaces ---------------------------------------


@dataclass(frozen=True)
class HPrime:
    vanishing_set: frozenset

    def __str__(self):
        return "{" + ",".join(str(i) for i in sorted(self.vanishing_set)) + "}"


def _check_quantum_affine(qaff: CGLPresentation) -> None:
    if qaff.delta:
        (j, i), _ = next(iter(sorted(qaff.delta.items())))
        raise OreForgeError(f"not a quantum affine space: delta_{j}(x{i}) is nonzero")
    n = qaff.N
    for row in qaff.lam:
        for c in row:
            lm = c.laurent_monomial()
            if lm is None or lm[0] not in (1, -1):
                raise OreForgeError(f"unsupported torus: lambda entry {c} is not of the form +-q^k")
    standard = tuple(tuple(1 if t == i else 0 for t in range(n)) for i in range(n))
    if qaff.d != n or qaff.weights != standard:
        raise OreForgeError("unsupported torus: H-primes are modeled for the natural rank-N torus only")


def natural_torus(pres: CGLPresentation) -> CGLPresentation:
    """The same quantum affine space with the torus (K^x)^N scaling each generator.

    h_j is chosen as (lambda_j1, ..., lambda_j(j-1), q, 1, ..., 1) so that it acts
    as sigma_j below x_j and by q on x_j.
    """
    if pres.delta:
        raise OreForgeError("natural torus is only attached to quantum affine spaces")
    n = pres.N
    from .coeff import Q

    weights = tuple(tuple(1 if t == i else 0 for t in range(n)) for i in range(n))
    h = tuple(tuple(pres.lam[j][t] if t < j else (Q if t == j else ONE) for t in range(n)) for j in range(n))
    return pres.with_(weights=weights, h=h, d=n)


def hprime_poset(qaff: CGLPresentation) -> FinitePoset:
    _check_quantum_affine(qaff)
    n = qaff.N
    primes = [HPrime(frozenset(c)) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    rels = [(p, HPrime(p.vanishing_set | {i})) for p in primes for i in range(1, n + 1) if i not in p.vanishing_set]
    return FinitePoset(primes, rels)


def _as_hprime(W) -> HPrime:
    return W if isinstance(W, HPrime) else HPrime(frozenset(W))


def gk_and_height(qaff: CGLPresentation, W, poset: FinitePoset | None = None) -> tuple[int, int]:
    W = _as_hprime(W)
    poset = poset or hprime_poset(qaff)
    if W not in poset._above:
        raise OreForgeError(f"{W} is not an H-prime of {qaff.name}")
    quotient = quotient_presentation(qaff, W.vanishing_set)
    gk = quotient.N if quotient is not None else 0
    return gk, poset.longest_chain(HPrime(frozenset()), W)


def quotient_presentation(qaff: CGLPresentation, W: Iterable[int]) -> CGLPresentation | None:
    """The quantum affine space on the generators outside W (None if W is everything)."""
    W = set(W)
    keep = [k for k in range(qaff.N) if k + 1 not in W]
    if not keep:
        return None
    return CGLPresentation(
        f"{qaff.name}/<{','.join(qaff.names[k - 1] for k in sorted(W))}>",
        tuple(qaff.names[k] for k in keep),
        tuple(tuple(qaff.lam[a][b] for b in keep) for a in keep),
        {},
        tuple(qaff.weights[k] for k in keep),
        tuple(qaff.h[k] for k in keep),
        qaff.d,
    )


def tauvel_check(qaff: CGLPresentation) -> Report:
    """height(W) + GK(R/W) = GK(R) for every H-prime, and the relative form for W below W'."""
    rep = Report(f"Tauvel height formula on {qaff.name}")
    poset = hprime_poset(qaff)
    n = qaff.N
    gk = {}
    bad = []
    bottom = HPrime(frozenset())
    _, long_from_bottom = poset.chain_lengths(bottom)
    for W in poset._order:
        g, _ = gk_and_height(qaff, W, poset)
        h = len(long_from_bottom[W]) - 1
        gk[W] = g
        if g + h != n:
            bad.append(str(W))
    rep.add("height + GK = N for every H-prime", not bad,
            f"{len(poset) - len(bad)}/{len(poset)} pass", bad or None)
    rel_bad = []
    pairs = 0
    for W in poset._order:
        _, long = poset.chain_lengths(W)
        for W2 in poset._order:
            if W2 == W or poset.less(W, W2):
                pairs += 1
                h = len(long[W2]) - 1
                if h + gk[W2] != gk[W]:
                    rel_bad.append((str(W), str(W2)))
    rep.add("height(W'/W) + GK(R/W') = GK(R/W) for W below W'", not rel_bad,
            f"{pairs - len(rel_bad)}/{pairs} pass", rel_bad or None)
    rep.data["primes"] = len(poset)
    rep.data["pairs"] = pairs
    return rep


def normal_separation_check(qaff: CGLPresentation) -> Report:
    """Every proper inclusion W < W' has a normal element of R/W inside W'/W (the image of some x_j)."""
    from .normal import verify_normal

    rep = Report(f"normal separation on {qaff.name}")
    poset = hprime_poset(qaff)
    cache: dict = {}
    failures = []
    count = 0
    for W, W2 in poset.comparable_pairs():
        count += 1
        j = min(W2.vanishing_set - W.vanishing_set)
        key = (W.vanishing_set, j)
        if key not in cache:
            quotient = quotient_presentation(qaff, W.vanishing_set)
            pos = quotient.names.index(qaff.names[j - 1]) + 1
            cert = verify_normal(quotient, quotient.ring.gen(pos), degrees=(1,) * quotient.N)
            cache[key] = cert is not None
        if not cache[key]:
            failures.append((str(W), str(W2), qaff.names[j - 1]))
    rep.add("a generator image is normal for every comparable pair", not failures,
            f"{count - len(failures)}/{count} pairs", failures or None)
    rep.data["pairs"] = count
    return rep
