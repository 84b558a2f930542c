import random
from itertools import combinations

import pytest

from ore_forge.coeff import ONE, Q, ZERO, coeff, coeff_pow
from ore_forge.errors import OreForgeError
from ore_forge.examples import builtin_examples, qmat2, quantum_weyl
from ore_forge.ore import random_element
from ore_forge.qcalc import QBinomTable, q_binomial, q_int, verify_q_leibniz


def subset_count_binomial(n, i):
    # coefficient of q^k counts i-subsets of {0..n-1} whose sum exceeds the minimum by k
    counts = {}
    base = i * (i - 1) // 2
    for sub in combinations(range(n), i):
        k = sum(sub) - base
        counts[k] = counts.get(k, 0) + 1
    total = ZERO
    for k, c in counts.items():
        total = total + coeff(c) * coeff_pow(Q, k)
    return total


def test_q_int_examples():
    assert q_int(0, Q) == ZERO
    assert q_int(1, Q) == ONE
    assert q_int(2, Q) == Q + 1
    qi = Q.inverse()
    assert q_int(3, qi) == qi * qi + qi + 1


def test_q_int_base_one():
    assert q_int(1, ONE) == ONE
    with pytest.raises(OreForgeError):
        q_int(2, ONE)


def test_binomial_examples():
    for n in range(6):
        assert q_binomial(n, 0, Q) == ONE
    assert q_binomial(2, 1, Q) == Q + 1
    assert q_binomial(4, 2, Q) == (Q * Q + 1) * (Q * Q + Q + 1)
    with pytest.raises(OreForgeError):
        q_binomial(2, 3, Q)


@pytest.mark.parametrize("n", range(9))
def test_binomial_matches_subset_counts(n):
    for i in range(n + 1):
        assert q_binomial(n, i, Q) == subset_count_binomial(n, i)


@pytest.mark.parametrize("base", [Q, Q.inverse(), Q * Q, coeff(3)])
def test_pascal_identity(base):
    for n in range(2, 9):
        for i in range(1, n):
            rhs = q_binomial(n - 1, i - 1, base) + coeff_pow(base, i) * q_binomial(n - 1, i, base)
            assert q_binomial(n, i, base) == rhs


def test_binomials_are_polynomials_and_symmetric():
    for n in range(9):
        for i in range(n + 1):
            b = q_binomial(n, i, Q)
            assert b.is_polynomial()
            assert b == q_binomial(n, n - i, Q)


def test_table_caches():
    t = QBinomTable(Q)
    v = t.binomial(5, 2)
    assert t.cache[(5, 2)] is v


def test_leibniz_examples():
    W = quantum_weyl()
    x = W.ring.gen(1)
    assert verify_q_leibniz(W, x, x, 1)
    assert verify_q_leibniz(W, x, x, 0)
    M = qmat2()
    assert verify_q_leibniz(M, M.ring.gen(1), M.ring.gen(2), 2)


def test_leibniz_rejects_top_variable():
    W = quantum_weyl()
    with pytest.raises(OreForgeError):
        verify_q_leibniz(W, W.ring.gen(2), W.ring.gen(1), 1)


@pytest.mark.parametrize("pres", [p for p in builtin_examples(4) if p.N > 1], ids=lambda p: p.name)
def test_leibniz_on_random_pairs(pres):
    rng = random.Random(7)
    R = pres.ring
    for _ in range(40):
        e = random_element(R, rng, 3, 3, below=pres.N)
        f = random_element(R, rng, 3, 3, below=pres.N)
        assert verify_q_leibniz(pres, e, f, rng.randint(0, 4))


def test_leibniz_is_sensitive_to_the_base(monkeypatch):
    # with the base lam instead of lam^-1 the expansion breaks on x1^2
    import ore_forge.qcalc as qc

    W = quantum_weyl()
    x = W.ring.gen(1)
    real = qc.table
    monkeypatch.setattr(qc, "table", lambda base: real(coeff(base).inverse()))
    assert not verify_q_leibniz(W, x * x, x, 2)
