import pytest

from ore_forge.cauchon import deletion_sequence
from ore_forge.coeff import Q
from ore_forge.errors import OreForgeError
from ore_forge.examples import qaffine, qmat2, quantum_weyl
from ore_forge.presentation import build_presentation, validate_structure
from ore_forge.spectra import (FinitePoset, HPrime, boolean_lattice, catenary_check, gk_and_height,
                               hprime_poset, natural_torus, non_catenary_example, normal_separation_check,
                               tauvel_check)


def test_poset_sizes():
    assert len(hprime_poset(qaffine(1))) == 2
    p3 = hprime_poset(qaffine(3))
    assert len(p3) == 8 and len(p3.covers) == 12
    endpoint = natural_torus(deletion_sequence(qmat2())[-1].after)
    assert len(hprime_poset(endpoint)) == 16


def test_gk_and_height():
    A = qaffine(4)
    assert gk_and_height(A, set()) == (4, 0)
    assert gk_and_height(A, {2, 3}) == (2, 2)
    assert gk_and_height(A, {1, 2, 3, 4}) == (0, 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_tauvel(n):
    rep = tauvel_check(qaffine(n))
    assert rep.ok
    assert rep.data["primes"] == 2 ** n and rep.data["pairs"] == 3 ** n


def test_tauvel_on_deletion_endpoints():
    for pres in (qmat2(), quantum_weyl()):
        endpoint = natural_torus(deletion_sequence(pres)[-1].after)
        assert validate_structure(endpoint).ok
        assert tauvel_check(endpoint).ok


@pytest.mark.parametrize("n", range(1, 7))
def test_catenary_boolean(n):
    assert catenary_check(boolean_lattice(n))
    assert catenary_check(hprime_poset(qaffine(n)))


def test_catenary_counterexample():
    res = catenary_check(non_catenary_example())
    assert not res
    assert res.pair == ("0", "1")
    assert {tuple(res.short_chain), tuple(res.long_chain)} == {("0", "c", "1"), ("0", "a", "b", "1")}


def test_chain_is_catenary():
    assert catenary_check(FinitePoset("abcd", [("a", "b"), ("b", "c"), ("c", "d")]))


def test_poset_text_round_trip(data_dir):
    with open(f"{data_dir}/non_catenary.txt") as fh:
        p = FinitePoset.from_text(fh.read())
    assert p.covers == non_catenary_example().covers
    assert FinitePoset.from_text(p.to_text()).covers == p.covers


def test_transitive_relations_are_reduced():
    p = FinitePoset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert p.covers == {("a", "b"), ("b", "c")}
    assert p.less("a", "c")


def test_cycle_rejected():
    with pytest.raises(OreForgeError):
        FinitePoset("ab", [("a", "b"), ("b", "a")])


@pytest.mark.parametrize("n", range(1, 6))
def test_normal_separation(n):
    rep = normal_separation_check(qaffine(n))
    assert rep.ok
    assert rep.data["pairs"] == 3 ** n - 2 ** n


def test_rejections():
    with pytest.raises(OreForgeError, match="not a quantum affine"):
        hprime_poset(qmat2())
    with pytest.raises(OreForgeError, match="unsupported torus"):
        hprime_poset(deletion_sequence(quantum_weyl())[-1].after)
    lam = [["1", "(q+1)^-1"], ["q+1", "1"]]
    odd = build_presentation("odd", ["x1", "x2"], lam, {}, [[1, 0], [0, 1]], [["q", "1"], ["q+1", "q"]])
    with pytest.raises(OreForgeError, match="unsupported torus"):
        hprime_poset(odd)


def test_hprime_label():
    assert str(HPrime(frozenset({3, 1}))) == "{1,3}"
