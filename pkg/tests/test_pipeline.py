import json

import pytest

from conrep import (
    all_principal,
    chain,
    congruence_lattice,
    direct_product,
    downset_lattice,
    lattice_isomorphic,
    make_poset,
    principal_congruence,
)
from conrep.errors import ColorMissingOnAxis, LatticeError
from conrep.io import serialize
from conrep.kit import compute_color_set
from conrep.pipeline import (
    Workspace,
    add_tail,
    assemble,
    build_N,
    build_R,
    build_S,
    covering_pairs,
    identification_cells,
    insert_identifications,
    replay,
)
from conrep.corpus import enumerate_posets
from conrep.verify import check_con_isomorphic, check_embedding_planarity, is_planar_dimension2, is_semimodular


class TestBuildN:
    def test_single_pair_is_the_gadget(self):
        N, count = build_N(make_poset("uv", [("u", "v")]))
        assert count == 1 and N.n == 8
        assert set(N.chain_colors(N.boundary("N1"))) >= {"u"}

    def test_example_uses_three_gadgets(self, example_poset):
        N, count = build_N(example_poset)
        assert count == 3 == len(covering_pairs(example_poset))
        assert is_semimodular(N.lattice) and check_embedding_planarity(N.lattice)
        n1 = set(N.chain_colors(N.boundary("N1")))
        assert {"a", "b", "d"} <= n1

    def test_disjoint_pairs(self):
        P = make_poset("abcd", [("a", "b"), ("c", "d")])
        N, count = build_N(P)
        assert count == 2
        assert N.color_set() == set("abcd")
        # each pair contributes its own two join-irreducible congruences
        cl = congruence_lattice(N.lattice)
        assert len(cl.join_irreducible) == 4

    def test_needs_a_pair(self):
        with pytest.raises(LatticeError):
            build_N(make_poset("ab", []))


class TestBuildS:
    def test_single_edge_is_m3(self, m3):
        S = build_S(["p"])
        assert lattice_isomorphic(S.lattice, m3)

    def test_two_edges(self):
        S = build_S(["p", "q"])
        assert S.n == 11
        assert is_semimodular(S.lattice) and check_embedding_planarity(S.lattice)
        cl = congruence_lattice(S.lattice)
        # two join-irreducible congruences, incomparable
        assert len(cl.join_irreducible) == 2 and len(cl) == 4

    def test_boundaries_carry_n2_colors(self):
        S = build_S(["p", "q", "p"])
        assert S.boundary_colors("S1") == ["p", "q", "p"]
        assert S.boundary_colors("S2") == ["p", "q", "p"]


class TestBuildR:
    def test_grid(self):
        R = build_R(["a", "b"], ["b", "a", "a"])
        assert R.n == 12
        assert R.boundary_colors("R2") == ["a", "b"]
        assert R.boundary_colors("R1") == ["b", "a", "a"]
        assert R.boundary_colors("R1p") == ["b", "a", "a"]

    def test_cells(self):
        assert identification_cells(["a", "b"], ["b", "a", "a"], "a") == [(0, 1), (0, 2)]
        with pytest.raises(ColorMissingOnAxis):
            identification_cells(["a"], ["b"], "b")

    def test_identifications_merge_colors(self):
        ws = Workspace()
        build_R(["a", "b"], ["a", "b"], ws)
        L = insert_identifications(ws, "R", ["a", "b"], ["a", "b"], ["a", "b"], "L")
        assert is_semimodular(L.lattice) and check_embedding_planarity(L.lattice)
        assert len(congruence_lattice(L.lattice)) == 4

    def test_tail(self):
        ws = Workspace()
        build_R(["a"], ["a"], ws)
        insert_identifications(ws, "R", ["a"], ["a"], ["a"], "L")
        out = add_tail(ws, "L", ["x", "y"], "T")
        assert out.n == 5 + 2
        assert len(congruence_lattice(out.lattice)) == 2 * 2 * 2


def small_targets():
    yield "C2", chain(2)
    yield "B2", direct_product(chain(2), chain(2))
    yield "C3", chain(3)


class TestAssemble:
    @pytest.mark.parametrize("mode", ["planar", "principal"])
    @pytest.mark.parametrize("name,D", list(small_targets()))
    def test_small(self, mode, name, D):
        rep = assemble(D, mode)
        L = rep.L.lattice
        assert is_semimodular(L)
        assert check_embedding_planarity(L)
        assert check_con_isomorphic(L, D, rep.L.colors)
        if mode == "principal":
            assert all_principal(L)

    @pytest.mark.parametrize("mode", ["planar", "principal"])
    def test_one_element_target(self, mode):
        rep = assemble(chain(1), mode)
        assert rep.L.n == 1
        assert check_embedding_planarity(rep.L.lattice)

    def test_rejects_non_distributive(self, m3):
        with pytest.raises(LatticeError):
            assemble(m3)

    def test_unknown_mode(self, example_D):
        with pytest.raises(ValueError):
            assemble(example_D, "fancy")

    def test_example_planar_sizes(self, example_D):
        rep = assemble(example_D, "planar")
        assert rep.gadget_count == 3
        assert rep.sizes["C"] == 5
        assert check_con_isomorphic(rep.L.lattice, example_D, rep.L.colors)

    def test_example_principal(self, example_D):
        rep = assemble(example_D, "principal")
        expected = sum(len(compute_color_set(example_D, x)) for x in range(example_D.n)) + 1
        assert rep.sizes["C"] == expected == 14
        L = rep.L.lattice
        cl = congruence_lattice(L)
        for x, (a, b) in rep.witnesses.items():
            theta = principal_congruence(L, L.index[a], L.index[b])
            assert theta in set(cl.members)
        thetas = {principal_congruence(L, L.index[a], L.index[b]) for a, b in rep.witnesses.values()}
        assert len(thetas) == len(cl) == example_D.n

    def test_report_json(self, example_D):
        rep = assemble(example_D, "planar")
        body = json.loads(rep.to_json())
        assert body["mode"] == "planar" and body["gadgets"] == 3
        assert body["sizes"]["L"] == rep.L.n


class TestReplay:
    @pytest.mark.parametrize("mode", ["planar", "principal"])
    def test_reproduces_output(self, example_D, mode):
        rep = assemble(example_D, mode)
        ws = replay(rep.steps)
        assert serialize(ws["L"]) == serialize(rep.L)

    def test_steps_are_json(self, example_D):
        rep = assemble(example_D, "principal")
        assert json.loads(json.dumps(rep.steps)) == rep.steps


class TestPlanarityOracle:
    def test_small_outputs_agree_with_dimension_search(self):
        checked = 0
        for size in range(1, 4):
            for P in enumerate_posets(size):
                rep = assemble(downset_lattice(P), "planar")
                L = rep.L.lattice
                if L.n <= 12:
                    assert bool(is_planar_dimension2(L)) == bool(check_embedding_planarity(L))
                    checked += 1
        assert checked > 0

    def test_search_rejects_non_planar(self):
        b3 = direct_product(direct_product(chain(2), chain(2)), chain(2))
        assert not is_planar_dimension2(b3)
