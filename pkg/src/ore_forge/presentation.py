"""CGL presentations: data model, file format, and axiom verification."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Any, Mapping, Sequence

from .coeff import ONE, CoeffRat, coeff, coeff_pow, is_root_of_unity, parse_coeff
from .errors import OreForgeError, ParseError, PresentationError, ResourceLimitError
from .report import Report

Weight = tuple  # tuple[int, ...] of length d


@dataclass(frozen=True)
class TorusElement:
    """A point of the torus (K^x)^d, acting on an eigenvector of weight w by prod h_t^w_t."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(coeff(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)

    @property
    def d(self) -> int:
        return len(self.coords)

    def is_valid(self) -> bool:
        return all(not c.is_zero() for c in self.coords)

    def chi(self, weight: Sequence[int]) -> CoeffRat:
        if len(weight) != len(self.coords):
            raise PresentationError(f"weight {tuple(weight)} has the wrong length for a rank-{self.d} torus")
        s = ONE
        for c, w in zip(self.coords, weight):
            if w:
                s = s * coeff_pow(c, w)
        return s

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return TorusElement(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def __pow__(self, k: int) -> "TorusElement":
        return TorusElement(tuple(coeff_pow(c, k) for c in self.coords))

    @classmethod
    def identity(cls, d: int) -> "TorusElement":
        return cls((ONE,) * d)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _add_weights(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class CGLPresentation:
    """Finite data of an iterated Ore tower with a torus action.

    ``delta`` maps 1-based pairs ``(j, i)``, ``i < j``, to dictionaries of
    nonzero PBW terms giving ``delta_j(x_i)``.
    """

    name: str
    names: tuple
    lam: tuple
    delta: Mapping
    weights: tuple
    h: tuple
    d: int
    filtration: tuple | None = None

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != n:
            raise PresentationError("generator names must be distinct")
        for nm in self.names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_") or not all(c.isalnum() or c == "_" for c in nm):
                raise PresentationError(f"invalid generator name {nm!r}")
            if nm == "q":
                raise PresentationError("'q' is reserved for the quantum parameter")
        if len(self.lam) != n or any(len(row) != n for row in self.lam):
            raise PresentationError(f"lambda must be a {n}x{n} matrix")
        object.__setattr__(self, "lam", tuple(tuple(coeff(c) for c in row) for row in self.lam))
        if len(self.weights) != n or any(len(w) != self.d for w in self.weights):
            raise PresentationError(f"need {n} weights of length d={self.d}")
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))
        hs = tuple(h if isinstance(h, TorusElement) else TorusElement(tuple(h)) for h in self.h)
        if len(hs) != n or any(h.d != self.d for h in hs):
            raise PresentationError(f"need {n} torus elements with {self.d} coordinates")
        object.__setattr__(self, "h", hs)
        clean = {}
        for (j, i), terms in self.delta.items():
            if not (1 <= i < j <= n):
                raise PresentationError(f"delta entry (j={j}, i={i}) needs 1 <= i < j <= {n}")
            terms = {tuple(m): coeff(c) for m, c in terms.items() if coeff(c)}
            for m in terms:
                if len(m) != n or any(e < 0 for e in m):
                    raise PresentationError(f"delta entry (j={j}, i={i}) has a bad monomial {m}")
            if terms:
                clean[(j, i)] = terms
        object.__setattr__(self, "delta", clean)
        if self.filtration is not None:
            object.__setattr__(self, "filtration", tuple(int(x) for x in self.filtration))

    @property
    def N(self) -> int:
        return len(self.names)

    @cached_property
    def qj(self) -> tuple:
        return tuple(self.h[j].chi(self.weights[j]) for j in range(self.N))

    @cached_property
    def ring(self):
        from .ore import OreRing

        return OreRing(self)

    def lam_at(self, j: int, i: int) -> CoeffRat:
        return self.lam[j - 1][i - 1]

    def delta_of(self, j: int, i: int):
        """delta_j(x_i) as an Element."""
        return self.ring.element(self.delta.get((j, i), {}))

    def has_delta(self, j: int | None = None) -> bool:
        if j is None:
            return bool(self.delta)
        return any(k[0] == j for k in self.delta)

    def is_quantum_affine(self) -> bool:
        return not self.delta

    def key(self):
        return (self.names, self.lam, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.delta.items())),
                self.weights, self.h, self.d)

    def __eq__(self, other):
        if not isinstance(other, CGLPresentation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def with_(self, **changes) -> "CGLPresentation":
        return replace(self, **changes)

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        from .ore import _format_terms

        out: dict[str, Any] = {
            "name": self.name,
            "N": self.N,
            "d": self.d,
            "generators": list(self.names),
            "lambda": [[str(c) for c in row] for row in self.lam],
            "delta": [
                {"j": j, "i": i, "value": _format_terms(terms.items(), self.names)}
                for (j, i), terms in sorted(self.delta.items())
            ],
            "weights": [list(w) for w in self.weights],
            "h": [[str(c) for c in h.coords] for h in self.h],
        }
        if self.filtration is not None:
            out["filtration"] = list(self.filtration)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def __str__(self):
        return self.dumps()


def _parse_coeff_field(value, where: str) -> CoeffRat:
    if isinstance(value, int):
        return coeff(value)
    if not isinstance(value, str):
        raise PresentationError(f"{where}: expected a coefficient expression, got {value!r}")
    try:
        return parse_coeff(value)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def build_presentation(
    name: str,
    names: Sequence[str],
    lam: Sequence[Sequence],
    delta: Mapping[tuple[int, int], str | Mapping],
    weights: Sequence[Sequence[int]],
    h: Sequence[Sequence],
    d: int | None = None,
    filtration: Sequence[int] | None = None,
) -> CGLPresentation:
    """Build a presentation, parsing string coefficients and delta expressions.

    Delta expressions may write words in any order; each level is normal-formed
    in the tower built from the levels below it.
    """
    names = tuple(names)
    n = len(names)
    if d is None:
        d = len(weights[0]) if weights else 0
    lam_c = [[_parse_coeff_field(c, f"lambda[{r + 1}][{s + 1}]") if not isinstance(c, CoeffRat) else c
              for s, c in enumerate(row)] for r, row in enumerate(lam)]
    h_c = [[_parse_coeff_field(c, f"h[{r + 1}]") if not isinstance(c, CoeffRat) else c for c in row]
           for r, row in enumerate(h)]
    parsed: dict = {}
    for j in range(1, n + 1):
        entries = {k: v for k, v in delta.items() if k[0] == j}
        if not entries:
            continue
        lower = {k: v for k, v in parsed.items() if _support_ok(k, v, n)}
        partial = CGLPresentation(name, names, lam_c, lower, weights, h_c, d)
        ring = partial.ring
        for (jj, i), value in entries.items():
            if isinstance(value, Mapping):
                parsed[(jj, i)] = value
                continue
            try:
                parsed[(jj, i)] = ring.parse(value).terms
            except ParseError as exc:
                raise ParseError(f"delta (j={jj}, i={i}): {exc}") from None
    for k, v in delta.items():
        if k not in parsed and not (1 <= k[0] <= n):
            raise PresentationError(f"delta entry {k} has an out-of-range index")
    return CGLPresentation(name, names, lam_c, parsed, weights, h_c, d, filtration)


def _support_ok(key, terms, n) -> bool:
    j = key[0]
    return all(not any(m[j - 1:]) for m in terms)


def presentation_from_dict(doc: Mapping) -> CGLPresentation:
    try:
        names = doc["generators"]
        n = int(doc.get("N", len(names)))
        if n != len(names):
            raise PresentationError(f"N={n} but {len(names)} generators listed")
        delta = {}
        for entry in doc.get("delta", []):
            key = (int(entry["j"]), int(entry["i"]))
            if key in delta:
                raise PresentationError(f"duplicate delta entry {key}")
            delta[key] = str(entry["value"])
        return build_presentation(
            doc.get("name", "unnamed"),
            names,
            doc["lambda"],
            delta,
            doc["weights"],
            doc["h"],
            int(doc["d"]),
            doc.get("filtration"),
        )
    except KeyError as exc:
        raise PresentationError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, AttributeError) as exc:
        raise PresentationError(f"malformed presentation: {exc}") from None


def loads(text: str) -> CGLPresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, None) from None
    if not isinstance(doc, dict):
        raise PresentationError("a presentation file must hold one JSON object")
    return presentation_from_dict(doc)


def load(path) -> CGLPresentation:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(pres: CGLPresentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(pres.dumps() + "\n")


# -- verification --------------------------------------------------------------


def delta_support_violations(pres: CGLPresentation) -> list[tuple[int, int]]:
    return [k for k, terms in sorted(pres.delta.items()) if not _support_ok(k, terms, pres.N)]


def validate_structure(pres: CGLPresentation) -> Report:
    """Check the torus and lambda conditions and the shape of every delta value."""
    rep = Report(f"structure of {pres.name}")
    n = pres.N
    bad = [(i + 1, i + 1) for i in range(n) if not pres.lam[i][i].is_one()]
    bad += [(j + 1, i + 1) for j in range(n) for i in range(j) if not (pres.lam[j][i] * pres.lam[i][j]).is_one()]
    rep.add("lambda is multiplicatively skew-symmetric", not bad,
            f"fails at {bad[0]}" if bad else "", bad or None)

    zero_h = [(j + 1, t + 1) for j, h in enumerate(pres.h) for t, c in enumerate(h.coords) if c.is_zero()]
    rep.add("torus elements have nonzero coordinates", not zero_h,
            f"h[{zero_h[0][0]}] coordinate {zero_h[0][1]} is zero" if zero_h else "", zero_h or None)
    if zero_h:
        return rep

    mismatch = []
    for j in range(n):
        for i in range(j):
            got = pres.h[j].chi(pres.weights[i])
            if got != pres.lam[j][i]:
                mismatch.append({"j": j + 1, "i": i + 1, "chi": str(got), "lambda": str(pres.lam[j][i])})
    rep.add("h_j acts as sigma_j on lower generators", not mismatch,
            (f"chi_x{mismatch[0]['i']}(h_{mismatch[0]['j']}) = {mismatch[0]['chi']} "
             f"but lambda = {mismatch[0]['lambda']}") if mismatch else "", mismatch or None)

    roots = [(j + 1, str(qj)) for j, qj in enumerate(pres.qj) if qj.is_zero() or is_root_of_unity(qj)]
    rep.add("q_j is not a root of unity", not roots,
            f"q_{roots[0][0]} = {roots[0][1]} is a root of unity" if roots else "", roots or None)

    support = delta_support_violations(pres)
    rep.add("delta_j(x_i) involves only x_1..x_(j-1)", not support,
            f"delta_{support[0][0]}(x{support[0][1]}) leaves the subalgebra" if support else "",
            support or None)

    weight_bad = []
    for (j, i), terms in sorted(pres.delta.items()):
        target = _add_weights(pres.weights[i - 1], pres.weights[j - 1])
        for m in terms:
            w = [0] * pres.d
            for e, wi in zip(m, pres.weights):
                for t, x in enumerate(wi):
                    w[t] += e * x
            if tuple(w) != target:
                weight_bad.append({"j": j, "i": i, "monomial": list(m), "weight": w, "expected": list(target)})
                break
    rep.add("delta_j(x_i) has weight w_i + w_j", not weight_bad,
            (f"delta_{weight_bad[0]['j']}(x{weight_bad[0]['i']}) has a term of weight "
             f"{tuple(weight_bad[0]['weight'])}, expected {tuple(weight_bad[0]['expected'])}")
            if weight_bad else "", weight_bad or None)
    return rep


def verify_local_nilpotence(pres: CGLPresentation, bound: int | None = None) -> Report:
    """Find s(j, i) with delta_j^(s+1)(x_i) = 0 for every i < j."""
    from .ore import default_bound

    bound = default_bound() if bound is None else bound
    rep = Report(f"local nilpotence of {pres.name}")
    ring = pres.ring
    orders = {}
    for j in range(2, pres.N + 1):
        for i in range(1, j):
            cur = ring.gen(i).terms
            s = 0
            ok = True
            while True:
                nxt = ring.delta_terms(j - 1, cur)
                if not nxt:
                    break
                s += 1
                if s > bound:
                    ok = False
                    break
                cur = nxt
            if ok:
                orders[f"{j},{i}"] = s
            else:
                rep.add(f"delta_{j} nilpotent on x{i}", False,
                        f"delta_{j}^n({pres.names[i - 1]}) is still nonzero at n = {bound + 1}", {"j": j, "i": i})
    if not rep.checks:
        rep.add("every delta_j is nilpotent on the generators", True, f"max order {max(orders.values(), default=0)}")
    rep.data["orders"] = orders
    return rep


def verify_sigma_delta_relation(pres: CGLPresentation) -> bool:
    """sigma_j delta_j(x_i) = q_j delta_j sigma_j(x_i) for all i < j."""
    ring = pres.ring
    for (j, i) in pres.delta:
        d = ring.element(pres.delta[(j, i)])
        lhs = ring.element(ring.sigma_terms(j - 1, d.terms))
        sx = pres.lam[j - 1][i - 1]
        rhs = d * (pres.qj[j - 1] * sx)
        if lhs != rhs:
            return False
    return True


# An independent word-rewriting reducer used to cross-check the engine.


class WordRewriter:
    """Rewrites words (tuples of 0-based generator indices) to PBW terms.

    It knows only the defining relations ``x_j x_i -> lambda_ji x_i x_j +
    delta_j(x_i)`` and applies them to one inversion at a time, choosing the
    leftmost or rightmost inversion.  It shares no code with the engine.
    """

    def __init__(self, pres: CGLPresentation, strategy: str = "leftmost", max_steps: int = 200000):
        self.pres = pres
        self.strategy = strategy
        self.max_steps = max_steps
        self.rules = {}
        for (j, i), terms in pres.delta.items():
            words = []
            for m, c in terms.items():
                w = []
                for k, e in enumerate(m):
                    w.extend([k] * e)
                words.append((tuple(w), c))
            self.rules[(j - 1, i - 1)] = words

    def reduce(self, items: Mapping[tuple, CoeffRat]) -> dict:
        lam = self.pres.lam
        n = self.pres.N
        pending = dict(items)
        done: dict = {}
        steps = 0
        while pending:
            word, c = pending.popitem()
            if not c:
                continue
            inv = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
            if not inv:
                m = [0] * n
                for k in word:
                    m[k] += 1
                m = tuple(m)
                s = done.get(m, 0) + c if m in done else c
                if s:
                    done[m] = s
                else:
                    done.pop(m, None)
                continue
            steps += 1
            if steps > self.max_steps:
                raise ResourceLimitError("word rewriting exceeded its step budget")
            p = inv[0] if self.strategy == "leftmost" else inv[-1]
            j, i = word[p], word[p + 1]
            head, tail = word[:p], word[p + 2:]
            new = [(head + (i, j) + tail, c * lam[j][i])]
            for w, dc in self.rules.get((j, i), ()):
                new.append((head + w + tail, c * dc))
            for w, v in new:
                if w in pending:
                    s = pending[w] + v
                    if s:
                        pending[w] = s
                    else:
                        del pending[w]
                else:
                    pending[w] = v
        return done


def verify_confluence(pres: CGLPresentation, degree_bound: int = 4, samples: int = 20, seed: int = 0) -> Report:
    """Cubic overlaps under both reduction orders, then random words under two strategies and the engine."""
    rep = Report(f"confluence of {pres.name}")
    left = WordRewriter(pres, "leftmost")
    right = WordRewriter(pres, "rightmost")
    n = pres.N
    bad = []
    for i, j, k in combinations(range(n), 3):
        word = (k, j, i)
        # reduce x_k x_j first, or x_j x_i first
        a = left.reduce({word: ONE})
        b = right.reduce({word: ONE})
        if a != b:
            bad.append({"triple": (k + 1, j + 1, i + 1), "left": a, "right": b})
    from .ore import _format_terms

    if bad:
        w = bad[0]
        rep.add("cubic overlaps resolve", False,
                f"x{w['triple'][0]} x{w['triple'][1]} x{w['triple'][2]}: "
                f"{_format_terms(w['left'].items(), pres.names)} vs {_format_terms(w['right'].items(), pres.names)}",
                [{"triple": b["triple"]} for b in bad])
    else:
        rep.add("cubic overlaps resolve", True, f"{len(list(combinations(range(n), 3)))} triples")

    rng = random.Random(seed)
    ring = pres.ring
    mismatch = None
    for _ in range(samples):
        length = rng.randint(1, degree_bound)
        word = tuple(rng.randrange(n) for _ in range(length))
        a = left.reduce({word: ONE})
        b = right.reduce({word: ONE})
        e = ring.one()
        for g in word:
            e = e * ring.gen(g + 1)
        if not (a == b == e.terms):
            mismatch = word
            break
    rep.add("random words reduce independently of strategy", mismatch is None,
            "" if mismatch is None else "word " + " ".join(pres.names[g] for g in mismatch),
            None if mismatch is None else [pres.names[g] for g in mismatch])
    return rep


def subalgebra(pres: CGLPresentation, j: int) -> CGLPresentation:
    """The tower on x_1..x_j with all data restricted."""
    if not 1 <= j <= pres.N:
        raise IndexError(f"subalgebra index {j} out of range 1..{pres.N}")
    delta = {k: {m[:j]: c for m, c in terms.items()} for k, terms in pres.delta.items() if k[0] <= j}
    filt = pres.filtration[:j] if pres.filtration is not None else None
    return CGLPresentation(
        f"{pres.name}[1..{j}]",
        pres.names[:j],
        tuple(row[:j] for row in pres.lam[:j]),
        delta,
        pres.weights[:j],
        pres.h[:j],
        pres.d,
        filt,
    )


def check_all(pres: CGLPresentation, bound: int | None = None, degree_bound: int = 4, seed: int = 0) -> Report:
    """Every CGL check in order; engine-level checks are skipped when the structure is unusable."""
    rep = Report(f"CGL check of {pres.name}")
    structure = validate_structure(pres)
    rep.extend(structure)
    if delta_support_violations(pres):
        return rep
    nil = verify_local_nilpotence(pres, bound)
    rep.extend(nil)
    sd = verify_sigma_delta_relation(pres)
    rep.add("sigma_j delta_j = q_j delta_j sigma_j", sd)
    if structure.ok and nil.ok and not sd:
        rep.add("sigma-delta relation agrees with the structure checks", False,
                "structure and nilpotence pass but the relation fails")
    try:
        rep.extend(verify_confluence(pres, degree_bound, seed=seed))
    except ResourceLimitError as exc:
        rep.add("confluence", False, str(exc))
    return rep
