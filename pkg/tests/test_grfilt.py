import random

import pytest

from ore_forge.errors import OreForgeError, ResourceLimitError
from ore_forge.examples import builtin_examples, polynomial_ring, qaffine, qmat2, quantum_plane, quantum_weyl
from ore_forge.grfilt import (associated_graded, filtration_counts, find_filtration_degrees, gk_dimension,
                              gk_growth_report, is_valid_degrees, symbol_product_agrees, _compositions)
from ore_forge.ore import random_element


def brute_force_degrees(pres, max_total):
    best = None
    for total in range(pres.N, max_total + 1):
        for vec in _compositions(total, pres.N):
            ok = all(sum(e * d for e, d in zip(m, vec)) < vec[i - 1] + vec[j - 1]
                     for (j, i), terms in pres.delta.items() for m in terms)
            if ok and (best is None or (sum(vec), vec) < (sum(best), best)):
                best = vec
    return best


def test_degree_examples():
    assert find_filtration_degrees(quantum_plane()).degrees == (1, 1)
    assert find_filtration_degrees(quantum_weyl()).degrees == (1, 1)
    M = qmat2()
    deg = find_filtration_degrees(M).degrees
    assert sum(deg) == 5 and is_valid_degrees(M, deg)
    assert not is_valid_degrees(M, (1, 1, 1, 1))
    assert is_valid_degrees(M, (2, 1, 1, 2))
    assert deg == brute_force_degrees(M, 8)


def test_search_budget():
    with pytest.raises(ResourceLimitError, match="delta_4"):
        find_filtration_degrees(qmat2(), 4)


def test_associated_graded():
    M = qmat2()
    gr = associated_graded(M, (2, 1, 1, 2))
    assert gr.delta == {} and gr.lam == M.lam and gr.filtration == (2, 1, 1, 2)
    A = qaffine(3)
    assert associated_graded(A, (1, 1, 1)) == A
    assert associated_graded(quantum_weyl(), (1, 1)).lam == quantum_plane().lam
    with pytest.raises(OreForgeError):
        associated_graded(M, (1, 1, 1, 1))


@pytest.mark.parametrize("pres", builtin_examples(4), ids=lambda p: p.name)
def test_symbols_multiply(pres):
    rng = random.Random(10)
    deg = find_filtration_degrees(pres).degrees
    gr = associated_graded(pres, deg)
    for _ in range(30):
        a = random_element(pres.ring, rng, 4, 3, nonzero=True)
        b = random_element(pres.ring, rng, 4, 3, nonzero=True)
        assert symbol_product_agrees(pres, deg, a, b, gr)


def test_symbols_fail_for_bad_degrees():
    M = qmat2()
    x11, x22 = M.ring.gen(1), M.ring.gen(4)
    assert not symbol_product_agrees(M, (1, 1, 1, 1), x22, x11, associated_graded(M, (2, 1, 1, 2)))


@pytest.mark.parametrize("pres, n", [(qmat2(), 4), (polynomial_ring(), 1), (qaffine(6), 6), (quantum_weyl(), 2)])
def test_gk_dimension(pres, n):
    assert gk_dimension(pres) == n
    assert gk_growth_report(pres).ok


def test_counts_match_graded_counts():
    M = qmat2()
    deg = find_filtration_degrees(M).degrees
    assert filtration_counts(deg, 8) == filtration_counts(associated_graded(M, deg).filtration, 8)
    assert filtration_counts((1, 1), 3) == [1, 3, 6, 10]
