from __future__ import annotations

import pytest

import rsumlab as rl
from conftest import o_add, oracle_subgroups, set_of


class TestEnumeration:
    def test_prime_index_z6(self):
        # oracle: brute force over closed subsets finds {0}, {0,3}, {0,2,4}, Z6;
        # index p(G)=2 selects order 3
        subs = rl.prime_index_subgroups(rl.parse_group("Z6"))
        assert [set_of(h.members) for h in subs] == [{(0,), (2,), (4,)}]

    def test_prime_index_z2xz2(self):
        subs = rl.prime_index_subgroups(rl.parse_group("Z2xZ2"))
        assert [set_of(h.members) for h in subs] == [
            {(0, 0), (0, 1)},
            {(0, 0), (1, 0)},
            {(0, 0), (1, 1)},
        ]

    def test_prime_index_z7(self):
        subs = rl.prime_index_subgroups(rl.parse_group("Z7"))
        assert [set_of(h.members) for h in subs] == [{(0,)}]

    def test_prime_order_z9(self):
        subs = rl.prime_order_subgroups(rl.parse_group("Z9"))
        assert [set_of(h.members) for h in subs] == [{(0,), (3,), (6,)}]

    def test_prime_order_z3xz3(self):
        subs = rl.prime_order_subgroups(rl.parse_group("Z3xZ3"))
        assert len(subs) == 4  # (9-1)/(3-1)
        assert all(h.order == 3 for h in subs)

    def test_prime_order_z2_whole_group(self):
        subs = rl.prime_order_subgroups(rl.parse_group("Z2"))
        assert [set_of(h.members) for h in subs] == [{(0,), (1,)}]

    @pytest.mark.parametrize("factors", [[6], [2, 4], [3, 3], [2, 2, 2], [12]])
    def test_all_subgroups_match_bruteforce(self, factors):
        g = rl.make_group(factors)
        got = {frozenset(set_of(h.members)) for h in rl.all_subgroups(g)}
        assert got == oracle_subgroups(factors)

    def test_enumeration_ceiling(self):
        with pytest.raises(rl.GroupError):
            rl.all_subgroups(rl.parse_group("Z128"))
        rl.all_subgroups(rl.parse_group("Z128"), max_order=128)

    def test_sorted_by_bitmap(self):
        for g in (rl.parse_group("Z12"), rl.parse_group("Z2xZ4")):
            subs = rl.all_subgroups(g)
            bits = [h.members.bits for h in subs]
            assert bits == sorted(bits)

    def test_closure_and_nonempty_up_to_64(self):
        # every Subgroup from either enumeration op passes an explicit closure
        # check, and prime-index enumeration is never empty
        for g in rl.abelian_groups_up_to(64, min_order=2):
            pidx = rl.prime_index_subgroups(g)
            assert pidx, g
            for h in pidx + rl.prime_order_subgroups(g):
                assert rl.is_subgroup_set(h.members), (g, set_of(h.members))
                assert h.order * (g.order // h.order) == g.order
                assert set_of(h.members.negate()) == set_of(h.members)


class TestSubgroupType:
    def test_from_set_rejects_non_closed(self):
        g = rl.parse_group("Z6")
        with pytest.raises(rl.GroupError):
            rl.Subgroup.from_set(rl.parse_set(g, "{0,1}"))
        with pytest.raises(rl.GroupError):
            rl.Subgroup.from_set(rl.parse_set(g, "{3}"))  # no identity

    def test_from_set_accepts_subgroup(self):
        g = rl.parse_group("Z6")
        h = rl.Subgroup.from_set(rl.parse_set(g, "{0,3}"))
        assert h.order == 2
        assert h.index_in_group() == 3


class TestQuotient:
    def test_z6_mod_03(self):
        g = rl.parse_group("Z6")
        h = rl.Subgroup.from_set(rl.parse_set(g, "{0,3}"))
        q = rl.quotient(g, h)
        assert q.group.order == 3
        assert q.project((4,)) == q.project((1,))  # 4 = 1 + 3
        assert q.project((3,)) == q.group.identity()

    def test_z7_mod_trivial_is_identity_on_indices(self):
        g = rl.parse_group("Z7")
        q = rl.quotient(g, rl.Subgroup.trivial(g))
        assert q.group.factors == (7,)
        for i in range(7):
            assert q.project_index(i) == i

    def test_z2xz2_mod_diagonal(self):
        g = rl.parse_group("Z2xZ2")
        h = rl.Subgroup.from_set(rl.parse_set(g, "{(0,0),(1,1)}"))
        q = rl.quotient(g, h)
        assert q.group.order == 2
        assert q.project((1, 0)) == q.project((0, 1))
        assert q.project((1, 0)) != q.project((0, 0))

    def test_trivial_quotient_rejected(self):
        g = rl.parse_group("Z6")
        with pytest.raises(rl.GroupError):
            rl.quotient(g, rl.Subgroup.whole(g))

    @pytest.mark.parametrize(
        "factors", [g.factors for g in rl.abelian_groups_up_to(16)]
    )
    def test_projection_is_hom_with_kernel_h(self, factors):
        # coset-table oracle: pi constant on cosets of H, distinct across them,
        # additive on all pairs (exhaustive for |G| <= 16)
        g = rl.make_group(factors)
        for h in rl.all_subgroups(g):
            if h.order == g.order:
                continue
            q = rl.quotient(g, h)
            assert q.group.order * h.order == g.order
            els = list(g.elements())
            for a in els:
                for b in els:
                    assert q.project(g.add(a, b)) == q.group.add(q.project(a), q.project(b))
            kernel = {e for e in els if q.project(e) == q.group.identity()}
            assert kernel == set_of(h.members)

    def test_coset_reps_are_minimal_indices(self):
        g = rl.parse_group("Z6")
        h = rl.Subgroup.from_set(rl.parse_set(g, "{0,3}"))
        q = rl.quotient(g, h)
        reps = {q.coset_rep(qe) for qe in q.group.elements()}
        assert reps == {(0,), (1,), (2,)}
