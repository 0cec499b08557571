import pytest

import oracles
from conrep import downset_lattice
from conrep.corpus import enumerate_posets, mode_checks, run_case, run_corpus
from conrep.errors import TooLarge

POSET_COUNTS = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16, 5: 63}


class TestEnumeratePosets:
    @pytest.mark.parametrize("size", range(0, 6))
    def test_counts(self, size):
        assert len(enumerate_posets(size)) == POSET_COUNTS[size]

    @pytest.mark.parametrize("size", range(1, 5))
    def test_pairwise_non_isomorphic(self, size):
        posets = enumerate_posets(size)
        for i, P in enumerate(posets):
            for Q in posets[i + 1:]:
                assert not oracles.isomorphic(P.leq, Q.leq)

    def test_labels(self):
        assert all(P.elements == tuple("abc") for P in enumerate_posets(3))

    def test_guard(self):
        with pytest.raises(TooLarge):
            enumerate_posets(8)


class TestRunCorpus:
    def test_max_one(self):
        summary = run_corpus(1, "planar")
        assert len(summary.cases) == 1 and summary.ok

    def test_max_three_has_eight_cases(self):
        summary = run_corpus(3, "principal")
        assert len(summary.cases) == 1 + 2 + 5
        assert summary.ok, summary.table()

    def test_planar_up_to_four(self):
        summary = run_corpus(4, "planar")
        assert len(summary.cases) == 24
        assert summary.ok, summary.table()

    def test_table_lists_every_case(self):
        summary = run_corpus(2, "planar")
        rows = summary.table().splitlines()
        assert len(rows) == 1 + len(summary.cases)
        assert all(r.endswith("pass") for r in rows[1:])

    def test_guard(self):
        with pytest.raises(TooLarge):
            run_corpus(6)

    def test_case_records_sizes(self):
        P = enumerate_posets(2)[0]
        res = run_case(P, "principal", "x")
        assert res.ok and res.sizes["D"] == downset_lattice(P).n
        assert set(res.checks) == set(mode_checks("principal"))
