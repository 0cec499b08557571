import itertools

import numpy as np
import pytest

import oracles
from conrep import chain, congruence_lattice, direct_product, validate_lattice
from conrep.errors import MissingWitness, NoEmbedding, TooLarge
from conrep.kit import colored_grid, enumerate_lattices
from conrep.order import Embedding
from conrep.pipeline import assemble
from conrep.verify import (
    ALL_CHECKS,
    certify,
    check_con_isomorphic,
    check_embedding_planarity,
    check_witnesses,
    color_soundness,
    is_planar_dimension2,
    is_semimodular,
)


def naive_semimodular(L):
    cov = L.cover_matrix
    for a, b in itertools.product(range(L.n), repeat=2):
        if cov[L.meet[a, b], a] and not cov[b, L.join[a, b]]:
            return False
    return True


def naive_dimension2(L):
    exts = [p for p in itertools.permutations(range(L.n))
            if all(p.index(a) < p.index(b) for a, b in L.covers)]
    for p, q in itertools.combinations_with_replacement(exts, 2):
        pp, qq = {v: i for i, v in enumerate(p)}, {v: i for i, v in enumerate(q)}
        inter = np.array([[pp[a] <= pp[b] and qq[a] <= qq[b] for b in range(L.n)] for a in range(L.n)])
        if np.array_equal(inter, L.leq):
            return True
    return False


class TestSemimodular:
    def test_examples(self, square, m3, n5, c4, b3):
        assert is_semimodular(square) and is_semimodular(m3) and is_semimodular(c4)
        assert is_semimodular(b3)
        assert not is_semimodular(n5)

    def test_n5_witness(self, n5):
        verdict = is_semimodular(n5)
        a, b = verdict.witness
        assert {a, b} <= set(n5.labels)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_agrees_with_naive(self, n):
        for L in enumerate_lattices(n):
            assert bool(is_semimodular(L)) == naive_semimodular(L)


class TestPlanarity:
    def test_grid(self):
        assert check_embedding_planarity(direct_product(chain(3), chain(4)))

    def test_b3_has_no_dimension2_realizer(self, b3):
        assert not is_planar_dimension2(b3)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_dimension_search_agrees_with_permutations(self, n):
        for L in enumerate_lattices(n):
            assert bool(is_planar_dimension2(L)) == naive_dimension2(L)

    def test_realizer_is_planar(self):
        for L in enumerate_lattices(7):
            d2 = is_planar_dimension2(L)
            if d2:
                assert check_embedding_planarity(L, d2.data)

    def test_crossing_detected(self, square):
        # both extensions equal: every element sits on x = 0 and edges overlap
        bad = Embedding((0, 1, 2, 3), (0, 1, 2, 3))
        assert not check_embedding_planarity(square, bad)

    def test_needs_embedding(self):
        L = validate_lattice(list("0ab1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
        with pytest.raises(NoEmbedding):
            check_embedding_planarity(L.with_embedding(None))

    def test_guard(self):
        with pytest.raises(TooLarge):
            is_planar_dimension2(chain(13))


class TestConIsomorphism:
    def test_chain(self, c4):
        D = direct_product(direct_product(chain(2), chain(2)), chain(2))
        assert check_con_isomorphic(c4, D)

    def test_size_mismatch(self, c4):
        verdict = check_con_isomorphic(c4, chain(3))
        assert not verdict and verdict.witness == (8, 3)

    def test_same_size_wrong_shape(self, square):
        # Con of the square is B2, never a 4-chain
        assert not check_con_isomorphic(square, chain(4))

    def test_mapping_covers_d(self, example_D):
        rep = assemble(example_D, "planar")
        verdict = check_con_isomorphic(rep.L.lattice, example_D, rep.L.colors)
        assert verdict and sorted(verdict.data.values()) == list(range(example_D.n))


class TestColors:
    def test_sound_grid(self):
        g = colored_grid(["x"], ["y"])
        assert color_soundness(g.lattice, g.colors)

    def test_unsound_coloring(self):
        g = colored_grid(["x"], ["x"])
        verdict = color_soundness(g.lattice, g.colors)
        assert not verdict and len(verdict.witness) == 2


class TestWitnesses:
    def test_missing(self, square):
        D = direct_product(chain(2), chain(2))
        verdict = check_con_isomorphic(square, D)
        with pytest.raises(MissingWitness):
            check_witnesses(square, {}, verdict.data)

    def test_wrong_pair(self, c4):
        D = direct_product(direct_product(chain(2), chain(2)), chain(2))
        mapping = check_con_isomorphic(c4, D).data
        wit = {x: ("0", "0") for x in mapping}
        assert not check_witnesses(c4, wit, mapping)


class TestCertify:
    def test_constructed_lattice_passes(self, example_D):
        rep = assemble(example_D, "principal")
        cert = certify(rep.L.lattice, example_D, colors=rep.L.colors, witnesses=rep.witnesses)
        assert cert.ok and set(cert.checks) == set(ALL_CHECKS)

    def test_non_principal_host(self, c4):
        D = direct_product(direct_product(chain(2), chain(2)), chain(2))
        cert = certify(c4, D, checks=("principal", "con-iso"))
        assert cert.checks["con-iso"] and not cert.checks["principal"]

    def test_no_target(self, square):
        cert = certify(square, None, checks=("con-iso",))
        assert not cert.ok

    def test_pair_search_matches_oracle_on_small_lattices(self):
        for n in range(1, 7):
            for L in enumerate_lattices(n):
                cert = certify(L, checks=("principal",))
                congs = oracles.congruences(L)
                principal = set()
                for a in range(L.n):
                    for b in range(a, L.n):
                        # smallest oracle congruence collapsing a and b
                        cands = [c for c in congs if c[a] == c[b]]
                        principal.add(min(cands, key=lambda c: len(set(c)) * -1))
                assert bool(cert.checks["principal"]) == (principal == congs)

    def test_as_dict_is_stable(self, example_D):
        rep = assemble(example_D, "planar")
        a = certify(rep.L.lattice, example_D, colors=rep.L.colors, checks=("semimodular", "con-iso"))
        b = certify(rep.L.lattice, example_D, colors=rep.L.colors, checks=("semimodular", "con-iso"))
        assert a.as_dict() == b.as_dict() and "timings" not in a.as_dict()


def test_con_lattice_size_of_constructed_outputs(example_D):
    for mode in ("planar", "principal"):
        rep = assemble(example_D, mode)
        assert len(congruence_lattice(rep.L.lattice)) == example_D.n
