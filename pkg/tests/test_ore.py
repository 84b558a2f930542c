import random

import pytest
from hypothesis import given, strategies as st

from ore_forge.coeff import ONE, Q, coeff, coeff_pow
from ore_forge.errors import OreForgeError, ParseError, ResourceLimitError
from ore_forge.examples import builtin_examples, qaffine, qmat2, quantum_plane, quantum_weyl
from ore_forge.ore import (LaurentRing, OreRing, apply_delta, apply_sigma, apply_torus, delta_nilpotence_order,
                           laurent_mul, normal_form, random_element, weighted_degree)
from ore_forge.presentation import TorusElement, WordRewriter

SHIPPED = builtin_examples(4)


def test_normal_form_examples():
    P, W, M = quantum_plane(), quantum_weyl(), qmat2()
    assert normal_form(P, [(1, [2, 1])]) == P.ring.parse("q*x1*x2")
    assert normal_form(W, [(1, ["x2", "x1"])]) == W.ring.parse("q*x1*x2 + 1")
    nf = normal_form(M, [(1, ["x22", "x11"])])
    assert nf == M.ring.parse("x11*x22 - (q - q^-1)*x12*x21")
    assert str(nf) == "x11*x22 - (q^2 - 1)/q*x12*x21"


def test_normal_form_is_idempotent():
    W = quantum_weyl()
    a = normal_form(W, [(2, [2, 2, 1]), (Q, [1, 2, 1])])
    again = normal_form(W, [(c, [i + 1 for i, e in enumerate(m) for _ in range(e)]) for m, c in a.terms.items()])
    assert again == a


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_engine_agrees_with_word_rewriting(pres):
    rng = random.Random(3)
    rewriter = WordRewriter(pres)
    for _ in range(30):
        word = [rng.randint(1, pres.N) for _ in range(rng.randint(0, 5))]
        assert normal_form(pres, [(1, word)]).terms == rewriter.reduce({tuple(g - 1 for g in word): ONE})


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_associativity(pres):
    rng = random.Random(11)
    R = pres.ring
    for _ in range(25):
        a, b, c = (random_element(R, rng, 4, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_sigma_derivation_law(pres):
    rng = random.Random(5)
    R = pres.ring
    for j in range(2, pres.N + 1):
        for _ in range(10):
            a = random_element(R, rng, 3, 2, below=j)
            b = random_element(R, rng, 3, 2, below=j)
            lhs = apply_delta(pres, j, a * b)
            rhs = apply_sigma(pres, j, a) * apply_delta(pres, j, b) + apply_delta(pres, j, a) * b
            assert lhs == rhs


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_torus_intertwines_delta(pres):
    rng = random.Random(9)
    R = pres.ring
    hs = list(pres.h) + [pres.h[0] ** 2 * pres.h[-1] ** -1]
    for j in range(2, pres.N + 1):
        for h in hs:
            chi = h.chi(pres.weights[j - 1])
            for _ in range(5):
                a = random_element(R, rng, 3, 3, below=j)
                lhs = apply_torus(pres, h, apply_delta(pres, j, a))
                rhs = apply_delta(pres, j, apply_torus(pres, h, a)) * chi
                assert lhs == rhs


def test_sigma_examples():
    W, M = quantum_weyl(), qmat2()
    assert apply_sigma(W, 2, W.ring.gen(1)) == W.ring.gen(1) * Q
    assert apply_sigma(W, 2, W.ring.one()) == W.ring.one()
    assert apply_sigma(M, 4, M.ring.parse("x12*x21"), -1) == M.ring.parse("q^2*x12*x21")
    with pytest.raises(OreForgeError):
        apply_sigma(W, 2, W.ring.gen(2))


def test_delta_examples():
    W, M = quantum_weyl(), qmat2()
    assert apply_delta(W, 2, W.ring.parse("x1^2")) == W.ring.parse("(q+1)*x1")
    assert apply_delta(W, 2, W.ring.one()).is_zero()
    assert apply_delta(M, 4, M.ring.gen(2)).is_zero()
    with pytest.raises(OreForgeError):
        apply_delta(M, 3, M.ring.gen(3))


def test_torus_examples():
    M, W = qmat2(), quantum_weyl()
    x22 = M.ring.gen(4)
    assert apply_torus(M, M.h[3], x22) == x22 * coeff_pow(Q, -2)
    assert apply_torus(M, TorusElement.identity(4), x22 * 3) == x22 * 3
    # h2 . delta(x1) = lam * delta(h2 . x1) in quantum Weyl
    x1 = W.ring.gen(1)
    h = W.h[1]
    lhs = apply_torus(W, h, apply_delta(W, 2, x1))
    rhs = apply_delta(W, 2, apply_torus(W, h, x1)) * W.qj[1]
    assert lhs == rhs


def test_nilpotence_orders():
    W, M, P = quantum_weyl(), qmat2(), quantum_plane()
    assert delta_nilpotence_order(W, 2, W.ring.gen(1)) == 1
    assert delta_nilpotence_order(P, 2, P.ring.gen(1)) == 0
    assert delta_nilpotence_order(M, 4, M.ring.parse("x11^2")) == 2
    with pytest.raises(OreForgeError):
        delta_nilpotence_order(W, 2, W.ring.zero())


def test_nilpotence_bound_is_a_resource_error(data_dir):
    from ore_forge.presentation import load

    pres = load(f"{data_dir}/non_nilpotent.json")
    with pytest.raises(ResourceLimitError):
        delta_nilpotence_order(pres, 2, pres.ring.gen(1), bound=10)


def test_laurent_examples():
    W, P = quantum_weyl(), quantum_plane()
    L = LaurentRing(W.ring, 2)
    assert L.X(-1) * L.X(1) == L.one()
    assert L.X(-1) * L.gen(1) == L.parse("q^-1*x1*x2^-1 - q^-1*x2^-2")
    LP = LaurentRing(P.ring, 2)
    u = LP.gen(1) * LP.X(-1)
    assert laurent_mul(P, u, u) == LP.parse("q^-1*x1^2*x2^-2")
    with pytest.raises(OreForgeError):
        laurent_mul(W, L.X(-1), LaurentRing(W.ring, 1).X(-1))


def test_laurent_inverse_is_two_sided():
    M = qmat2()
    L = LaurentRing(M.ring, 4)
    for i in range(1, 4):
        g = L.gen(i)
        assert L.X(-1) * (L.X(1) * g) == g
        assert (g * L.X(-1)) * L.X(1) == g


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_laurent_agrees_with_polynomial_product(pres):
    rng = random.Random(2)
    L = LaurentRing(pres.ring, pres.N)
    for _ in range(20):
        a = random_element(pres.ring, rng, 3, 3)
        b = random_element(pres.ring, rng, 3, 3)
        assert (L.from_element(a) * L.from_element(b)).terms == (a * b).terms


@pytest.mark.parametrize("pres", SHIPPED, ids=lambda p: p.name)
def test_laurent_associativity(pres):
    rng = random.Random(4)
    L = LaurentRing(pres.ring, pres.N)
    for _ in range(15):
        els = []
        for _ in range(3):
            a = L.from_element(random_element(pres.ring, rng, 2, 2))
            els.append(a * L.X(-rng.randint(0, 2)))
        u, v, w = els
        assert (u * v) * w == u * (v * w)


def test_laurent_rejects_upper_variables_with_derivation():
    M = qmat2()
    L = LaurentRing(M.ring, 2)
    with pytest.raises(OreForgeError):
        L.gen(4)
    L3 = LaurentRing(qaffine(3).ring, 2)
    # x3 x2 = q x2 x3, so x3 x2^-1 = q^-1 x2^-1 x3
    assert L3.gen(3) * L3.X(-1) == L3.X(-1) * L3.gen(3) * Q.inverse()


def test_weighted_degree():
    P, M = quantum_plane(), qmat2()
    assert weighted_degree(P, P.ring.parse("x1*x2"), (1, 1)) == 2
    assert weighted_degree(M, M.delta_of(4, 1), (2, 1, 1, 2)) == 2
    assert weighted_degree(P, P.ring.one(), (1, 1)) == 0
    with pytest.raises(OreForgeError):
        weighted_degree(P, P.ring.zero(), (1, 1))


def test_term_limit():
    ring = OreRing(qmat2(), max_terms=3)
    a = ring.parse("x11 + x12 + x21 + x22")
    with pytest.raises(ResourceLimitError):
        a * a


def test_element_parser_errors():
    M = qmat2()
    with pytest.raises(ParseError):
        M.ring.parse("x11 * x99")
    with pytest.raises(ParseError):
        M.ring.parse("x11 / x12")
    with pytest.raises(ParseError):
        M.ring.parse("x11^-1")


@given(st.lists(st.integers(min_value=1, max_value=4), max_size=6))
def test_printed_elements_parse_back(word):
    M = qmat2()
    a = normal_form(M, [(Q + 2, word), (-1, list(reversed(word)))])
    assert M.ring.parse(str(a)) == a
