import math

import pytest

from cpcshuffle.model import (
    ConstraintViolation,
    NodeSet,
    ParameterError,
    SystemParams,
    enum_partitions,
    enum_subsets,
    full_set,
    validate_config,
)


class TestNodeSet:
    def test_ordering_is_lexicographic(self):
        assert NodeSet.of(1, 2) < NodeSet.of(1, 3) < NodeSet.of(2, 3)

    def test_set_algebra(self):
        a, b = NodeSet.of(1, 2, 5), NodeSet.of(2, 3)
        assert (a | b).members == (1, 2, 3, 5)
        assert (a & b).members == (2,)
        assert (a - b).members == (1, 5)
        assert 5 in a and 4 not in a
        assert NodeSet.of(2).issubset(b)

    def test_rejects_bad_members(self):
        with pytest.raises(ParameterError):
            NodeSet((2, 1))
        with pytest.raises(ParameterError):
            NodeSet((0, 1))


class TestEnumSubsets:
    def test_small_exhaustive(self):
        out = enum_subsets(NodeSet.of(1, 2, 3), 2)
        assert [s.members for s in out] == [(1, 2), (1, 3), (2, 3)]

    def test_six_choose_three(self):
        assert len(enum_subsets(full_set(6), 3)) == 20

    def test_empty_set_convention(self):
        assert enum_subsets(full_set(4), 0) == [NodeSet(())]

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            enum_subsets(full_set(3), 4)
        with pytest.raises(ParameterError):
            enum_subsets(full_set(3), -1)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_counts_match_binomial(self, n):
        ground = full_set(n)
        for k in range(n + 1):
            assert len(enum_subsets(ground, k)) == math.comb(n, k)

    def test_deterministic(self):
        a = enum_subsets(full_set(7), 3)
        b = enum_subsets(full_set(7), 3)
        assert a == b


class TestEnumPartitions:
    def test_six_three(self):
        parts = enum_partitions(6, 3)
        assert len(parts) == 20
        assert parts[0].tx.members == (1, 2, 3)
        assert parts[0].rx.members == (4, 5, 6)
        assert parts[0].index == 1

    def test_two_one(self):
        parts = enum_partitions(2, 1)
        assert [(p.tx.members, p.rx.members) for p in parts] == [((1,), (2,)), ((2,), (1,))]

    def test_eight_four(self):
        parts = enum_partitions(8, 4)
        assert len(parts) == math.comb(8, 4) == 70
        assert all(len(p.tx) == len(p.rx) == 4 for p in parts)

    def test_rx_is_complement(self):
        for p in enum_partitions(5, 2):
            assert (p.tx | p.rx).members == tuple(range(1, 6))
            assert p.tx.isdisjoint(p.rx)

    @pytest.mark.parametrize("K,K_t", [(5, 2), (6, 3), (7, 4)])
    def test_completeness(self, K, K_t):
        # every node transmits in C(K-1, K_t-1) partitions and receives in
        # C(K-1, K_r-1) of them
        parts = enum_partitions(K, K_t)
        K_r = K - K_t
        for k in range(1, K + 1):
            assert sum(k in p.tx for p in parts) == math.comb(K - 1, K_t - 1)
            assert sum(k in p.rx for p in parts) == math.comb(K - 1, K_r - 1)

    def test_bad_group_size(self):
        with pytest.raises(ParameterError):
            enum_partitions(4, 0)
        with pytest.raises(ParameterError):
            enum_partitions(4, 4)


class TestSystemParams:
    def test_eta_values(self):
        p = SystemParams(K=6, N=20, Q=6, r=3, B=48)
        assert p.require_symmetric() == (1, 1)

    def test_rejects_bad_load(self):
        with pytest.raises(ParameterError):
            SystemParams(K=4, N=4, Q=4, r=5, B=8)
        with pytest.raises(ParameterError):
            SystemParams(K=4, N=4, Q=4, r=0, B=8)

    def test_node_cap(self):
        with pytest.raises(ParameterError):
            SystemParams(K=65, N=65, Q=65, r=1, B=8)


class TestValidateConfig:
    def test_worked_example(self):
        p = SystemParams(K=6, N=20, Q=6, r=3, B=48)
        cfg = validate_config(p, K_r=3, t=2)
        assert cfg.s == 2 and cfg.K_t == 3

    def test_multicast_group_too_big(self):
        p = SystemParams(K=6, N=20, Q=6, r=3, B=48)
        with pytest.raises(ConstraintViolation) as exc:
            validate_config(p, K_r=2, t=1)
        assert exc.value.constraint == "s <= K_r"

    def test_wide_receiver_group(self):
        p = SystemParams(K=8, N=56, Q=8, r=5, B=80)
        cfg = validate_config(p, K_r=6, t=1)
        assert cfg.s == 5

    def test_cooperation_exceeds_transmitters(self):
        p = SystemParams(K=6, N=20, Q=6, r=3, B=48)
        with pytest.raises(ConstraintViolation) as exc:
            validate_config(p, K_r=5, t=2)
        assert exc.value.constraint == "t <= K - K_r"

    def test_nonpositive_t(self):
        p = SystemParams(K=6, N=20, Q=6, r=3, B=48)
        with pytest.raises(ConstraintViolation):
            validate_config(p, K_r=3, t=0)
        with pytest.raises(ConstraintViolation):
            validate_config(p, K_r=3, t=4)
