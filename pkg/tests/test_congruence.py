import itertools

import pytest

import oracles
from conrep import (
    all_principal,
    brute_force_congruences,
    chain,
    congruence_lattice,
    direct_product,
    is_principal,
    prime_interval_congruences,
    principal_congruence,
)
from conrep.congruence import Congruence, is_congruence, join_congruences
from conrep.errors import TooLarge
from conrep.kit import enumerate_lattices
from conrep.order import is_distributive


def vectors(congs):
    return {c.blocks for c in congs}


class TestPrincipal:
    def test_reflexive_pair_is_identity(self, m3):
        assert principal_congruence(m3, 2, 2).is_identity()

    def test_m3_is_simple(self, m3):
        theta = principal_congruence(m3, m3.index["p"], m3.index["q"])
        assert theta.is_total()
        # the oracle finds only the two trivial congruences among all 52 partitions
        assert len(oracles.congruences(m3)) == 2

    def test_c4_middle_edge(self, c4):
        theta = principal_congruence(c4, c4.index["a"], c4.index["b"])
        assert theta.labeled_classes() == [["0"], ["a", "b"], ["1"]]
        assert theta.blocks in oracles.congruences(c4)

    def test_canonical_form(self, example_D):
        a = principal_congruence(example_D, 1, 4)
        b = principal_congruence(example_D, 4, 1)
        assert a.blocks == b.blocks
        assert all(a.blocks[x] <= x for x in range(example_D.n))


class TestPrimeIntervals:
    def test_square(self, square):
        assert len(prime_interval_congruences(square)) == 2

    def test_m3(self, m3):
        assert len(prime_interval_congruences(m3)) == 1

    def test_c3(self):
        assert len(prime_interval_congruences(chain(3))) == 2

    def test_perspectivity_shortcut_is_sound(self, example_D):
        fast = prime_interval_congruences(example_D)
        slow = prime_interval_congruences(example_D, use_perspectivity=False)
        assert {t for _, t in fast} == {t for _, t in slow}


class TestConLattice:
    def test_c2(self):
        assert len(congruence_lattice(chain(2))) == 2

    def test_c4_is_boolean_on_edges(self, c4):
        cl = congruence_lattice(c4)
        assert len(cl) == 8 == len(oracles.congruences(c4))

    def test_m3(self, m3):
        assert len(congruence_lattice(m3)) == 2

    def test_contains_identity_and_total(self, example_D):
        cl = congruence_lattice(example_D)
        assert any(m.is_identity() for m in cl.members)
        assert any(m.is_total() for m in cl.members)

    def test_join_closed(self, example_D):
        cl = congruence_lattice(example_D)
        members = set(cl.members)
        for x, y in itertools.combinations(cl.members, 2):
            assert join_congruences(example_D, x, y) in members

    def test_chain_congruences_form_boolean_lattice(self):
        for edges in range(1, 6):
            assert len(congruence_lattice(chain(edges + 1))) == 2 ** edges


class TestOracleEquivalence:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_all_small_lattices(self, n):
        for L in enumerate_lattices(n):
            assert set(congruence_lattice(L).members) == brute_force_congruences(L)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_brute_force_matches_pairwise_oracle(self, n):
        for L in enumerate_lattices(n):
            assert vectors(brute_force_congruences(L)) == oracles.congruences(L)

    def test_brute_force_examples(self, m3, square):
        assert len(brute_force_congruences(chain(2))) == 2
        assert len(brute_force_congruences(m3)) == 2
        assert len(brute_force_congruences(square)) == 4

    def test_brute_force_guard(self):
        with pytest.raises(TooLarge):
            brute_force_congruences(chain(11))


@pytest.fixture(scope="module")
def hosts():
    return [L for n in range(2, 9) for L in enumerate_lattices(n)][::7]


class TestProperties:
    def test_minimality(self, hosts):
        for L in hosts:
            congs = congruence_lattice(L).members
            for a in range(L.n):
                for b in range(a + 1, L.n):
                    theta = principal_congruence(L, a, b)
                    for other in congs:
                        if other.collapses(a, b):
                            assert theta.refines(other)

    def test_monotone(self, hosts):
        for L in hosts:
            leq = L.leq
            for a, b in itertools.product(range(L.n), repeat=2):
                if not leq[a, b]:
                    continue
                outer = principal_congruence(L, a, b)
                for a2 in range(L.n):
                    for b2 in range(L.n):
                        if leq[a, a2] and leq[a2, b2] and leq[b2, b]:
                            assert principal_congruence(L, a2, b2).refines(outer)

    def test_interval_form(self, hosts):
        for L in hosts:
            for a, b in itertools.combinations(range(L.n), 2):
                assert principal_congruence(L, a, b) == principal_congruence(
                    L, int(L.meet[a, b]), int(L.join[a, b]))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_con_lattice_is_distributive(self, n):
        for L in enumerate_lattices(n):
            assert is_distributive(congruence_lattice(L).lattice)

    def test_recomputation_is_identical(self, example_D):
        a = congruence_lattice(example_D)
        b = congruence_lattice(example_D)
        assert [m.blocks for m in a.members] == [m.blocks for m in b.members]

    def test_substitution_check(self, c4):
        assert is_congruence(c4, [0, 0, 2, 2])
        assert not is_congruence(c4, [0, 1, 0, 3])


class TestPrincipality:
    def test_identity_witness(self, m3):
        cl = congruence_lattice(m3)
        ident = next(m for m in cl.members if m.is_identity())
        assert is_principal(m3, ident, cl) == (0, 0)

    def test_c4_two_end_edges(self, c4):
        theta = Congruence(c4, [0, 0, 2, 2])
        assert is_principal(c4, theta) is None
        pairs = [(a, b) for a in range(4) for b in range(a, 4)]
        assert all(principal_congruence(c4, a, b) != theta for a, b in pairs)

    def test_m3_total(self, m3):
        cl = congruence_lattice(m3)
        total = next(m for m in cl.members if m.is_total())
        a, b = is_principal(m3, total, cl)
        assert principal_congruence(m3, a, b).is_total()
        assert principal_congruence(m3, m3.zero, m3.one).is_total()

    def test_c3(self):
        assert all_principal(chain(3))

    def test_c4_counterexample(self, c4):
        verdict = all_principal(c4)
        assert not verdict
        assert verdict.counterexample.labeled_classes() == [["0", "a"], ["b", "1"]]

    def test_square(self, square):
        verdict = all_principal(square)
        assert verdict and len(verdict.witnesses) == 4

    def test_product_of_chains_is_all_principal(self):
        # each congruence of a product of two chains is a product of principal ones
        assert all_principal(direct_product(chain(3), chain(3)))

    def test_product_with_c4_is_not(self):
        assert not all_principal(direct_product(chain(4), chain(2)))
