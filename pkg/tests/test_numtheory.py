"""Exact-arithmetic tests for digit sums, partitions, and sign transforms."""

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as stn

from dopwave import numtheory as nt

# Known prefixes of the mod-p sequences for p = 2, 3, 4.
PTM_P2_16 = [0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0]
PTM_P3_18 = [0, 1, 2, 1, 2, 0, 2, 0, 1, 1, 2, 0, 2, 0, 1, 0, 1, 2]
PTM_P4_20 = [0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2, 1, 2, 3, 0]

PART_P2_M3 = (
    (0, 3, 5, 6, 9, 10, 12, 15),
    (1, 2, 4, 7, 8, 11, 13, 14),
)
PART_P3_M2 = (
    (0, 5, 7, 11, 13, 15, 19, 21, 26),
    (1, 3, 8, 9, 14, 16, 20, 22, 24),
    (2, 4, 6, 10, 12, 17, 18, 23, 25),
)
PART_P4_M2 = (
    (0, 7, 10, 13, 19, 22, 25, 28, 34, 37, 40, 47, 49, 52, 59, 62),
    (1, 4, 11, 14, 16, 23, 26, 29, 35, 38, 41, 44, 50, 53, 56, 63),
    (2, 5, 8, 15, 17, 20, 27, 30, 32, 39, 42, 45, 51, 54, 57, 60),
    (3, 6, 9, 12, 18, 21, 24, 31, 33, 36, 43, 46, 48, 55, 58, 61),
)

ESP_DEG2 = ((0, 4, 5), (1, 2, 6))
ESP_DEG3 = ((0, 4, 7, 11), (1, 2, 9, 10))
ESP_DEG5 = ((0, 5, 6, 16, 17, 22), (1, 2, 10, 12, 20, 21))


def brute_force_balanced_splits(universe, degree):
    """Oracle: all balanced 2-block equal-power-sum splits, 0-block first."""
    elems = sorted(universe)
    half = len(elems) // 2
    anchor = elems[0]
    out = []
    for combo in itertools.combinations(elems, half):
        if anchor not in combo:
            continue
        rest = tuple(e for e in elems if e not in combo)
        if all(
            sum(e ** m for e in combo) == sum(e ** m for e in rest)
            for m in range(1, degree + 1)
        ):
            out.append((combo, rest))
    return out


class TestDigitSum:
    def test_known_values(self):
        assert nt.digit_sum_mod(3, 2) == 0
        assert nt.digit_sum_mod(5, 3) == 0
        assert nt.digit_sum_mod(7, 10) == 7

    def test_identity_below_base(self):
        for p in range(2, 12):
            for n in range(p):
                assert nt.digit_sum_mod(n, p) == n

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            nt.digit_sum_mod(5, 1)
        with pytest.raises(ValueError):
            nt.digit_sum_mod(-1, 2)

    @given(stn.integers(2, 6), stn.integers(0, 10**6), stn.integers(0, 5))
    def test_base_recurrence(self, p, n, r):
        # Appending digit r: symbol advances by r mod p.
        r = r % p
        assert nt.digit_sum_mod(p * n + r, p) == (nt.digit_sum_mod(n, p) + r) % p


class TestPtmSequence:
    def test_known_prefixes(self):
        assert nt.ptm_sequence(2, 16) == PTM_P2_16
        assert nt.ptm_sequence(3, 18) == PTM_P3_18
        assert nt.ptm_sequence(4, 20) == PTM_P4_20

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            nt.ptm_sequence(2, 0)


class TestPtmPartition:
    def test_known_blocks(self):
        assert nt.ptm_partition(2, 3).blocks == PART_P2_M3
        assert nt.ptm_partition(3, 2).blocks == PART_P3_M2
        assert nt.ptm_partition(4, 2).blocks == PART_P4_M2

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_structure_and_power_sums(self, p, degree):
        size = p ** (degree + 1)
        if size > 1024:
            pytest.skip("outside the swept range")
        part = nt.ptm_partition(p, degree)
        seen = sorted(n for block in part.blocks for n in block)
        assert seen == list(range(size))  # disjoint and exhaustive
        assert all(len(block) == p ** degree for block in part.blocks)
        for m in range(1, degree + 1):
            sums = {nt.power_sum(block, m) for block in part.blocks}
            assert len(sums) == 1

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_blocks_tile_full_range_sums(self, p, degree):
        size = p ** (degree + 1)
        if size > 1024:
            pytest.skip("outside the swept range")
        for m in range(1, degree + 1):
            assert nt.prouhet_sum(p, degree, m) * p == nt.power_sum(range(size), m)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            nt.ptm_partition(2, 40)

    def test_json_dict(self):
        data = nt.ptm_partition(2, 3).to_json_dict()
        assert data["p"] == 2 and data["M"] == 3
        assert data["blocks"][0] == list(PART_P2_M3[0])
        assert data["prouhetSums"][1] == 60
        json.dumps(data)  # serializable


class TestPowerSums:
    def test_block_sum(self):
        assert nt.power_sum(PART_P2_M3[0], 1) == 60  # 0+3+5+6+9+10+12+15

    def test_empty_sum(self):
        assert nt.power_sum((), 3) == 0

    def test_degree_two_pair(self):
        assert nt.power_sum((0, 4, 5), 2) == 41
        assert nt.power_sum((1, 2, 6), 2) == 41

    def test_zero_power_counts_elements(self):
        assert nt.power_sum((0, 1, 2), 0) == 3

    def test_prouhet_values(self):
        assert nt.prouhet_sum(2, 3, 1) == 60
        assert nt.prouhet_sum(3, 2, 0) == 9
        s0, s1 = PART_P2_M3
        assert nt.prouhet_sum(2, 3, 2) == nt.power_sum(s0, 2) == nt.power_sum(s1, 2)

    def test_prouhet_warns_beyond_degree(self):
        with pytest.warns(UserWarning):
            nt.prouhet_sum(2, 3, 4)


class TestEspCheck:
    @pytest.mark.parametrize(
        "blocks,degree",
        [(ESP_DEG2, 2), (ESP_DEG3, 3), (ESP_DEG5, 5)],
    )
    def test_known_partitions(self, blocks, degree):
        result = nt.esp_check(blocks, degree)
        assert result.is_esp
        assert result.prouhet_sums[0] == len(blocks[0])

    def test_degree_two_pair_fails_at_three(self):
        assert not nt.esp_check(ESP_DEG2, 3).is_esp

    def test_multiset_blocks(self):
        # Repeats count: doubling every element doubles every power sum.
        doubled = tuple(b + b for b in ESP_DEG2)
        assert nt.esp_check(doubled, 2).is_esp

    def test_needs_two_blocks(self):
        with pytest.raises(ValueError):
            nt.esp_check([ESP_DEG2[0]], 2)

    def test_partition_rejects_negative_slots(self):
        with pytest.raises(ValueError):
            nt.EspPartition.from_blocks(((-1, 2), (0, 1)), 1)


class TestEspSearch:
    def test_recovers_known_degree2_partition(self):
        found = nt.esp_search({0, 1, 2, 4, 5, 6}, 2, 2)
        assert ESP_DEG2 in [p.blocks for p in found]

    def test_tiny_universe_has_no_solution(self):
        assert nt.esp_search({0, 1}, 2, 1) == []

    def test_matches_brute_force_on_octave(self):
        oracle = brute_force_balanced_splits(range(8), 2)
        found = nt.esp_search(range(8), 2, 2)
        assert sorted(p.blocks for p in found) == sorted(oracle)
        assert ((0, 3, 5, 6), (1, 2, 4, 7)) in [p.blocks for p in found]

    def test_all_results_pass_check(self):
        for part in nt.esp_search(range(8), 2, 2):
            assert nt.esp_check(part.blocks, 2).is_esp
            assert part.prouhet_sums == nt.esp_check(part.blocks, 2).prouhet_sums

    def test_three_blocks(self):
        found = nt.esp_search(range(9), 3, 1)
        assert found, "9 slots split 3 ways with equal sums must exist"
        for part in found:
            assert nt.esp_check(part.blocks, 1).is_esp
            assert 0 in part.blocks[0]  # symmetry break pins the minimum

    def test_max_solutions_truncates_deterministically(self):
        full = nt.esp_search(range(8), 2, 1)
        first_two = nt.esp_search(range(8), 2, 1, max_solutions=2)
        assert [p.blocks for p in first_two] == [p.blocks for p in full[:2]]

    def test_search_bound_enforced(self):
        with pytest.raises(ValueError):
            nt.esp_search(range(32), 2, 2)
        # Override is accepted (kept tiny so the run stays instant).
        assert nt.esp_search(range(4), 2, 1, max_universe=50)

    def test_rejects_indivisible_universe(self):
        with pytest.raises(ValueError):
            nt.esp_search(range(7), 2, 1)

    @settings(max_examples=25, deadline=None)
    @given(stn.sets(stn.integers(0, 11), min_size=4, max_size=6))
    def test_search_output_always_verifies(self, universe):
        if len(universe) % 2:
            universe = set(list(universe)[:-1])
        if len(universe) < 4:
            return
        for part in nt.esp_search(universe, 2, 1):
            assert nt.esp_check(part.blocks, 1).is_esp


class TestWeightTable:
    def test_two_symbol_rows(self):
        table = nt.weight_table(2)
        assert table.rows.tolist() == [[1, 1], [1, -1]]

    def test_three_symbol_rows(self):
        table = nt.weight_table(3)
        assert table.rows.tolist() == [
            [1, 1, 1],
            [1, 1, -1],
            [1, -1, 1],
            [1, -1, -1],
        ]

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 6])
    def test_row_zero_is_all_ones(self, p):
        assert (nt.weight_table(p).rows[0] == 1).all()

    def test_weight_depends_only_on_symbol(self):
        table = nt.weight_table(3)
        for n in range(27):
            v = nt.digit_sum_mod(n, 3)
            assert table.weight(1, n) == int(table.rows[1, v])

    def test_classical_sign_sequence(self):
        # Row 1 at p=2, evaluated along n, is the +/-1 Thue-Morse sequence.
        table = nt.weight_table(2)
        signs = [table.weight(1, n) for n in range(16)]
        assert signs == [1 if s == 0 else -1 for s in PTM_P2_16]

    def test_bounds(self):
        with pytest.raises(ValueError):
            nt.weight_table(1)
        with pytest.raises(ValueError):
            nt.weight_table(21)


class TestTransforms:
    def test_two_symbol_forward(self):
        a0, a1 = 1.5 + 2j, -0.25 + 1j
        out = nt.forward_transform([a0, a1])
        assert np.allclose(out, [a0 + a1, a0 - a1], rtol=0, atol=1e-15)

    def test_three_symbol_forward(self):
        a0, a1, a2 = 2.0 - 1j, 0.5j, -3.0
        out = nt.forward_transform([a0, a1, a2])
        expected = [a0 + a1 + a2, a0 + a1 - a2, a0 - a1 + a2, a0 - a1 - a2]
        assert np.allclose(out, expected, rtol=0, atol=1e-15)

    def test_all_ones(self):
        assert np.allclose(nt.forward_transform([1, 1]), [2, 0])

    def test_two_symbol_inverse(self):
        assert np.allclose(nt.inverse_transform([2, 0]), [1, 1])

    def test_three_symbol_inverse_formula(self):
        b = np.array([1.0 + 1j, 2.0, -1.0j, 0.5])
        out = nt.inverse_transform(b)
        assert np.isclose(out[0], b.sum() / 4)

    @settings(max_examples=60, deadline=None)
    @given(
        stn.integers(2, 6),
        stn.integers(0, 2**32 - 1),
    )
    def test_round_trip(self, p, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        table = nt.weight_table(p)
        back = nt.inverse_transform(nt.forward_transform(a, table), table)
        assert np.max(np.abs(back - a)) <= 1e-12 * max(1.0, np.max(np.abs(a)))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            nt.forward_transform([1, 2, 3], nt.weight_table(2))
        with pytest.raises(ValueError):
            nt.inverse_transform([1, 2, 3])


class TestSidelobeSplit:
    @staticmethod
    def brute_force_sides(values, degree):
        """Oracle: plain-Python evaluation of both sides of the identity."""
        p = len(values)
        rows = nt.weight_table(p).rows
        b = [
            sum(int(rows[i, v]) * values[v] for v in range(p))
            for i in range(1 << (p - 1))
        ]
        size = p ** (degree + 1)
        lhs = []
        rhs = []
        for m in range(1, degree + 1):
            total = 0j
            for n in range(size):
                v = nt.digit_sum_mod(n, p)
                s_n = sum(
                    int(rows[i, v]) * b[i] for i in range(1, 1 << (p - 1))
                )
                total += n ** m * s_n
            lhs.append(total)
            n_m = (1 << (p - 1)) * nt.prouhet_sum(p, degree, m) - sum(
                n ** m for n in range(size)
            )
            rhs.append(n_m * b[0])
        return lhs, rhs

    @pytest.mark.parametrize("p", [2, 3, 4])
    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_random_inputs_satisfy_identity(self, p, degree):
        rng = np.random.default_rng(7 * p + degree)
        for _ in range(5):
            a = rng.standard_normal(p) + 1j * rng.standard_normal(p)
            report = nt.sidelobe_split_check(a, degree)
            assert report.residuals.max() <= 1e-9

    def test_three_symbol_example(self):
        report = nt.sidelobe_split_check([1.0, 1.0j, -1.0], 2)
        assert report.residuals.max() <= 1e-9
        lhs, rhs = self.brute_force_sides([1.0, 1.0j, -1.0], 2)
        for left, right in zip(lhs, rhs):
            assert abs(left - right) <= 1e-9 * max(1.0, abs(right))

    def test_equal_entries(self):
        # With identical inputs the identity holds whatever the symbol count;
        # for p=2 both sides are exactly zero.
        for p in (2, 3, 4):
            report = nt.sidelobe_split_check([0.7 - 0.2j] * p, 2)
            assert report.residuals.max() <= 1e-12
        two = nt.sidelobe_split_check([1.0, 1.0], 3)
        assert all(n == 0 for n in two.n_coefficients)

    def test_coefficient_values(self):
        # N_m = 2^(p-1) P_m - sum n^m; check a hand-computed case (p=2, M=1):
        # P_1 = 3, range sum = 6, so N_1 = 2*3 - 6 = 0.
        report = nt.sidelobe_split_check([1.0, -1.0], 1)
        assert report.n_coefficients == (0,)
