import random

import pytest

from ore_forge.coeff import ONE, Q, ZERO, coeff
from ore_forge.errors import OreForgeError
from ore_forge.examples import builtin_examples, qaffine, qmat2, quantum_plane, quantum_weyl
from ore_forge.linalg import nullspace
from ore_forge.normal import (FractionElement, Verdict, construct_normal, divide, inner_d_from_monic,
                              inner_d_from_normal, monic_data, normal_failures, ric_check, ric_trials,
                              verify_inner, verify_normal)
from ore_forge.presentation import subalgebra


def test_construct_normal_weyl():
    W = quantum_weyl()
    R = W.ring
    cert = construct_normal(W, R.gen(1))
    x = cert.element
    assert x == R.parse("x1*x2 + 1/(q-1)")
    assert cert.conjugation[2] == R.gen(2) * Q.inverse()
    assert cert.conjugation[1] == R.gen(1) * Q
    assert x * R.gen(2) == R.gen(2) * x * Q.inverse()
    assert x * R.gen(1) == R.gen(1) * x * Q
    assert cert.eigen_weight == (0,)


def test_construct_normal_without_derivation():
    P = quantum_plane()
    assert construct_normal(P, P.ring.gen(1)).element == P.ring.gen(1)
    M = qmat2()
    cert = construct_normal(M, M.ring.gen(2))
    assert cert.element == M.ring.gen(2) and cert.data["s"] == 0


def test_construct_normal_qmat2_gives_determinant():
    M = qmat2()
    cert = construct_normal(M, M.ring.gen(1))
    assert cert.element == M.ring.parse("x11*x22 - q*x12*x21")
    assert all(cert.conjugation[i] == M.ring.gen(i) for i in range(1, 5))


def test_construct_normal_rejects_non_normal_input():
    M = qmat2()
    with pytest.raises(OreForgeError):
        construct_normal(M, M.ring.parse("x11 + x12"))


@pytest.mark.parametrize("pres, a", [(quantum_weyl(), "x1"), (qmat2(), "x11"), (qmat2(), "x21"),
                                     (qmat2(), "x12*x21")])
def test_two_routes_agree(pres, a):
    cert = construct_normal(pres, pres.ring.parse(a))
    other = verify_normal(pres, cert.element)
    assert other is not None
    assert other.conjugation == cert.conjugation
    assert other.right == cert.right


def test_verify_normal_examples():
    W = quantum_weyl()
    one = verify_normal(W, W.ring.one())
    assert one.conjugation == {1: W.ring.gen(1), 2: W.ring.gen(2)}
    assert verify_normal(W, W.ring.gen(1)) is None
    assert [g for g, _ in normal_failures(W, W.ring.gen(1))] == ["x2", "x2"]


def test_x11_is_normal_in_the_lower_tower():
    # R3 of quantum 2x2 matrices is a quantum affine space, so its generators are normal
    sub = subalgebra(qmat2(), 3)
    cert = verify_normal(sub, sub.ring.gen(1))
    assert cert is not None
    assert cert.conjugation[2] == sub.ring.gen(2) * Q


def test_division_route():
    W = quantum_weyl()
    x = construct_normal(W, W.ring.gen(1)).element
    g = W.ring.gen(2)
    assert divide(x * g, x, (1, 1)) == g * Q.inverse()
    assert divide(W.ring.gen(1), x, (1, 1)) is None


def test_weight_additivity():
    M = qmat2()
    cert = construct_normal(M, M.ring.gen(1))
    assert cert.eigen_weight == tuple(u + v for u, v in zip(M.weights[0], M.weights[3]))


def test_inner_d_weyl():
    W = quantum_weyl()
    R = W.ring
    d1 = inner_d_from_normal(W, R.gen(1))
    sub = subalgebra(W, 1).ring
    assert d1.den == sub.gen(1)
    assert d1.num == sub.one() * (ONE - Q).inverse()
    a, c, n = monic_data(W, construct_normal(W, R.gen(1)).element)
    assert (a, n) == (R.gen(1), 1) and c == R.one() * (Q - 1).inverse()
    d2 = inner_d_from_monic(W, a, c, n)
    assert d1 == d2
    assert verify_inner(W, d1) and verify_inner(W, d2)


def test_inner_d_wrong_scalar_fails():
    W = quantum_weyl()
    d = inner_d_from_normal(W, W.ring.gen(1))
    wrong = FractionElement(d.den, d.den.ring.one(), d.cert)
    assert not verify_inner(W, wrong)
    assert wrong != d


def test_inner_zero():
    P = quantum_plane()
    sub = subalgebra(P, 1)
    cert = verify_normal(sub, sub.ring.one())
    assert verify_inner(P, FractionElement(sub.ring.one(), sub.ring.zero(), cert))
    d = inner_d_from_monic(P, P.ring.one(), P.ring.zero(), 1)
    assert d.num.is_zero()


def test_inner_d_qmat2_both_routes():
    M = qmat2()
    d1 = inner_d_from_normal(M, M.ring.gen(1))
    a, c, n = monic_data(M, construct_normal(M, M.ring.gen(1)).element)
    assert c == M.ring.parse("-q*x12*x21")
    d2 = inner_d_from_monic(M, a, c, n)
    assert str(d1.num) == "q*x12*x21"
    assert d1 == d2 and verify_inner(M, d1)


def test_inner_d_error_paths():
    M = qmat2()
    with pytest.raises(OreForgeError, match="vanishes"):
        inner_d_from_normal(M, M.ring.parse("x12*x21"))
    with pytest.raises(OreForgeError):
        inner_d_from_normal(M, M.ring.parse("x11 + x12"))
    with pytest.raises(OreForgeError):
        inner_d_from_monic(M, M.ring.gen(1), M.ring.zero(), 0)


def test_companion_identity_weyl():
    W = quantum_weyl()
    R = W.ring
    a, da = R.gen(1), R.one()
    eta, lam = Q, W.qj[1]
    assert da * a == a * da * (eta * lam)


def test_ric_examples():
    W = quantum_weyl()
    R = W.ring
    assert ric_check(W, 2, R.zero(), R.zero()) is Verdict.CONSISTENT
    for e in ("0", "1", "x1", "q^-1", "x1^2 + 1"):
        for side in ("left", "right"):
            assert ric_check(W, 2, R.gen(1), R.parse(e), side) is Verdict.NOT_SATISFIED


@pytest.mark.parametrize("pres", [quantum_weyl(), qmat2(), qaffine(3)], ids=lambda p: p.name)
def test_ric_never_finds_counterexamples(pres):
    out = ric_trials(pres, 200, seed=3)
    assert out["counts"]["COUNTEREXAMPLE"] == 0
    assert out["counts"]["consistent"] > 0


def test_principal_ideal_contracts_to_zero():
    # x R = R x, so the two-sided ideal generated by x is spanned by x * monomials
    W = quantum_weyl()
    R = W.ring
    x = construct_normal(W, R.gen(1)).element
    monos = [R.monomial((i, j)) for i in range(7) for j in range(7) if i + j <= 6]
    cols = [(x * m).terms for m in monos]
    powers = [R.monomial((k, 0)) for k in range(7)]
    cols += [p.terms for p in powers]
    for v in nullspace(cols):
        assert all(c.is_zero() for c in v[len(monos):])


def test_leading_coefficient_normal_modulo_z():
    # P = zR in quantum Weyl: x1, the X-coefficient of z, is normal modulo P
    W = quantum_weyl()
    R = W.ring
    z = construct_normal(W, R.gen(1)).element
    x1, x2 = R.gen(1), R.gen(2)
    assert divide(x1 * x2 - x2 * x1, z, (1, 1), left=False) is not None
    assert (x1 * x1 - x1 * x1).is_zero()


def test_leading_coefficient_degenerate_plane():
    # with delta = 0 the ideal X R contains X, whose leading coefficient 1 is trivially normal
    P = quantum_plane()
    X = P.ring.gen(2)
    a, c, n = monic_data(P, X)
    assert a == P.ring.one() and c.is_zero() and n == 1
    assert verify_normal(P, X) is not None


def test_torus_match_is_recorded():
    W = quantum_weyl()
    cert = construct_normal(W, W.ring.gen(1))
    ks = cert.data["torus_conjugation"]
    assert ks is not None
    h = W.h[0] ** ks[0] * W.h[1] ** ks[1]
    assert h.chi(W.weights[0]) == Q and h.chi(W.weights[1]) == Q.inverse()
