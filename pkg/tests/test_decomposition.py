import math

import numpy as np
import pytest

from lebx.decomposition import (
    NodeOffset,
    check_lemma15,
    check_lemma16,
    check_reduction_step,
    check_theorem1,
    delta_vector,
    offsets_of,
    partition_sums,
    region_table,
    term_factor,
)
from lebx.errors import DomainError, HypothesisError, PartitionError
from lebx.simplex import fundamental_poly, lebesgue_function
from lebx.verification import _admissible_offsets, _draw_alpha


def random_sorted_point(rng):
    return np.sort(rng.dirichlet((1.0, 1.0, 1.0)))[::-1]


class TestOffsetsOf:
    def test_reference_configuration(self):
        # n = 8 with all fractional parts strictly inside (0, 1)
        o = offsets_of((4.5 / 8, 2.3 / 8, 1.2 / 8), 8)
        assert o.r == (4, 2, 1)
        assert o.alpha == pytest.approx((0.5, 0.3, 0.2), abs=1e-12)

    def test_negative_alpha1_branch(self):
        # floor assignment pushes the slack into alpha_1 < 0
        o = offsets_of((4.8 / 8, 2.5 / 8, 0.7 / 8), 8)
        assert o.r == (5, 2, 0)
        assert o.alpha == pytest.approx((-0.2, 0.5, 0.7), abs=1e-12)

    def test_vertex(self):
        o = offsets_of((1.0, 0.0, 0.0), 4)
        assert o.r == (3, 0, 0)
        assert o.alpha == pytest.approx((1.0, 0.0, 0.0), abs=0.0)

    def test_degenerate_node_line_corner(self):
        # lam_1 = 0 with both remaining coordinates on node lines
        o = offsets_of((0.0, 0.5, 0.5), 8)
        assert sum(o.r) == 7
        assert o.barycentric() == pytest.approx((0.0, 0.5, 0.5), abs=1e-15)

    def test_wrong_dimension(self):
        with pytest.raises(DomainError):
            offsets_of((0.5, 0.5), 4)

    def test_roundtrip_random(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(2, 20))
            lam = rng.dirichlet((1.0, 1.0, 1.0))
            o = offsets_of(lam, n)
            assert o.barycentric() == pytest.approx(tuple(lam), abs=1e-12)
            assert -1.0 <= o.alpha[0] <= 1.0
            assert 0.0 <= o.alpha[1] <= 1.0 and 0.0 <= o.alpha[2] <= 1.0


class TestNodeOffsetInvariants:
    def test_bad_row_sum(self):
        with pytest.raises(DomainError):
            NodeOffset((2, 2, 2), (0.5, 0.3, 0.2), 6)

    def test_bad_alpha_range(self):
        with pytest.raises(DomainError):
            NodeOffset((3, 1, 1), (1.5, -0.3, -0.2), 6)

    def test_bad_alpha_sum(self):
        with pytest.raises(DomainError):
            NodeOffset((3, 1, 1), (0.1, 0.1, 0.1), 6)

    def test_shift_needs_r1(self):
        o = NodeOffset((0, 3, 2), (0.5, 0.25, 0.25), 6)
        with pytest.raises(DomainError):
            o.shifted()


class TestTermFactor:
    def test_index_zero(self):
        assert term_factor(0, 2, 0.5) == pytest.approx(1.0, rel=1e-14)

    def test_integer_case(self):
        assert term_factor(1, 2, 0.0) == pytest.approx(2.0, rel=1e-13)

    def test_denominator_pole_vanishes(self):
        assert term_factor(3, 2, 0.0) == 0.0

    def test_matches_basis_magnitude(self):
        # product over coordinates equals |l_i| from the simplex module
        rng = np.random.default_rng(22)
        n = 9
        for _ in range(50):
            lam = random_sorted_point(rng)
            o = offsets_of(lam, n)
            i = tuple(int(v) for v in rng.multinomial(n, (1 / 3, 1 / 3, 1 / 3)))
            prod = 1.0
            for i_s, r_s, a_s in zip(i, o.r, o.alpha):
                prod *= term_factor(i_s, r_s, a_s)
            direct = abs(fundamental_poly(i, o.barycentric()))
            assert prod == pytest.approx(direct, rel=1e-11, abs=1e-250)


class TestPartitionSums:
    def test_node_point_total_is_one(self):
        o = offsets_of((0.5, 0.25, 0.25), 4)
        assert partition_sums(o).total() == pytest.approx(1.0, abs=1e-12)

    def test_master_identity_random(self):
        rng = np.random.default_rng(23)
        for _ in range(150):
            n = int(rng.integers(5, 16))
            o = offsets_of(random_sorted_point(rng), n)
            total = partition_sums(o).total()
            direct = lebesgue_function(o.barycentric(), n)
            assert total == pytest.approx(direct, rel=1e-9)

    def test_s2_accumulation(self):
        rng = np.random.default_rng(24)
        o = offsets_of(random_sorted_point(rng), 9)
        ps = partition_sums(o)
        assert ps.s2 == ps.s2_parts[0] + ps.s2_parts[1] + ps.s2_parts[2]
        assert all(v >= 0.0 for v in ps.as_tuple())

    def test_corner_offset_collapses_to_edge_row(self):
        # r = (n-1, 0, 0): S1 + S2 + S5 is the i3 = 0 row of the full sum
        n = 8
        alpha = (0.35, 0.45, 0.2)
        o = NodeOffset((n - 1, 0, 0), alpha, n)
        ps = partition_sums(o)
        lam = o.barycentric()
        row = math.fsum(
            abs(fundamental_poly((n - i2, i2, 0), lam)) for i2 in range(n + 1)
        )
        assert ps.s1 + ps.s2 + ps.s5 == pytest.approx(row, rel=1e-11)

    def test_tiling_violation_raises(self):
        # r_3 > r_1 + 1 breaks the region cover and must be reported
        o = NodeOffset((1, 0, 4), (0.5, 0.25, 0.25), 6)
        with pytest.raises(PartitionError):
            partition_sums(o)

    def test_tiling_violation_raises_beyond_validation_limit(self):
        # large degrees skip the structural check but keep the domain gate
        o = NodeOffset((3, 0, 36), (0.5, 0.25, 0.25), 40)
        with pytest.raises(PartitionError):
            partition_sums(o)

    def test_large_degree_identity_unvalidated(self):
        o = offsets_of((0.52, 0.31, 0.17), 40)
        total = partition_sums(o).total()
        assert total == pytest.approx(lebesgue_function(o.barycentric(), 40), rel=1e-9)

    def test_region_table_is_data(self):
        table = region_table(8, 4, 2, 1)
        assert set(table) == {"s1", "s2_1", "s2_2", "s2_3", "s3", "s4", "s5", "s6"}


class TestDeltaVector:
    def _random_step_admissible(self, rng, n):
        alpha = _draw_alpha(rng)
        cands = _admissible_offsets(n, alpha, step_hyps=True)
        while not cands:
            alpha = _draw_alpha(rng)
            cands = _admissible_offsets(n, alpha, step_hyps=True)
        r = cands[int(rng.integers(len(cands)))]
        return NodeOffset(r, alpha, n)

    def test_definitional_consistency(self):
        rng = np.random.default_rng(25)
        for _ in range(20):
            n = int(rng.integers(6, 13))
            o = self._random_step_admissible(rng, n)
            dv = delta_vector(o)
            p = partition_sums(o).as_tuple()
            q = partition_sums(o.shifted()).as_tuple()
            assert dv.delta == tuple(pv - qv for pv, qv in zip(p, q))

    def test_total_is_lebesgue_difference(self):
        rng = np.random.default_rng(26)
        for _ in range(25):
            n = int(rng.integers(6, 13))
            o = self._random_step_admissible(rng, n)
            diff = lebesgue_function(o.barycentric(), n) - lebesgue_function(
                o.shifted().barycentric(), n
            )
            assert delta_vector(o).total() == pytest.approx(diff, rel=1e-9, abs=1e-9)

    def test_empty_regions_give_zero(self):
        # r_2 = 0 empties S4 on both sides of the shift
        o = NodeOffset((5, 0, 2), (0.5, 0.25, 0.25), 8)
        assert delta_vector(o).delta[3] == 0.0

    def test_requires_r1(self):
        o = NodeOffset((0, 3, 2), (0.5, 0.25, 0.25), 6)
        with pytest.raises(DomainError):
            delta_vector(o)

    def test_delta_lower_bounds(self):
        # spot checks of the one-step difference bounds:
        #   delta_1 >= -2^(r2+r3+2) + 2^(r3+1),  delta_3, delta_4 >= -2^(r2-1)/r1
        rng = np.random.default_rng(27)
        for _ in range(120):
            n = int(rng.integers(6, 14))
            o = self._random_step_admissible(rng, n)
            r1, r2, r3 = o.r
            d = delta_vector(o).delta
            tol = 1e-9
            assert d[0] >= -(2.0 ** (r2 + r3 + 2)) + 2.0 ** (r3 + 1) - tol
            assert d[2] >= -(2.0 ** (r2 - 1)) / r1 - tol
            assert d[3] >= -(2.0 ** (r2 - 1)) / r1 - tol

    def test_reference_point_delta1_bound(self):
        o = NodeOffset((4, 2, 1), (0.5, 0.3, 0.2), 8)
        d1 = delta_vector(o).delta[0]
        assert d1 >= -(2.0 ** (2 + 1 + 2)) + 2.0 ** (1 + 1)


class TestReductionCheckers:
    def test_step_holds_on_draws(self):
        rng = np.random.default_rng(28)
        for _ in range(60):
            n = int(rng.integers(6, 17))
            alpha = _draw_alpha(rng)
            cands = _admissible_offsets(n, alpha, step_hyps=True)
            if not cands:
                continue
            o = NodeOffset(cands[int(rng.integers(len(cands)))], alpha, n)
            c = check_reduction_step(o)
            assert c.holds, (o, c)

    def test_step_case_split_r2_zero(self):
        o = NodeOffset((6, 0, 1), (0.5, 0.25, 0.25), 8)
        c = check_reduction_step(o)
        expected_rhs = (
            lebesgue_function(o.barycentric(), 8)
            + 2.0 ** 3
            + 2.0 ** 0 / 6
            - 1.0
            + 2.0 ** 2 * math.log(8)
        )
        assert c.rhs == pytest.approx(expected_rhs, rel=1e-12)
        assert c.holds

    def test_step_hypothesis_violation(self):
        # r_1 = r_3 + 1 < r_3 + 2 can never satisfy the step hypotheses
        o = NodeOffset((3, 2, 2), (0.5, 0.25, 0.25), 8)
        with pytest.raises(HypothesisError):
            check_reduction_step(o)

    def test_step_requires_shiftable(self):
        o = NodeOffset((0, 3, 2), (0.5, 0.25, 0.25), 6)
        with pytest.raises(HypothesisError):
            check_reduction_step(o)

    def test_chain_reproduces_aggregate(self):
        # applying the one-step reduction r_3 times stays within the
        # aggregate slack (accumulated tolerance 1e-7)
        rng = np.random.default_rng(29)
        done = 0
        while done < 15:
            n = int(rng.integers(8, 15))
            alpha = _draw_alpha(rng)
            cands = [
                (r1, r2, r3)
                for (r1, r2, r3) in _admissible_offsets(n, alpha, step_hyps=False)
                if r3 >= 1
            ]
            if not cands:
                continue
            r1, r2, r3 = cands[int(rng.integers(len(cands)))]
            o = NodeOffset((r1, r2, r3), alpha, n)
            slack_sum = 0.0
            ok_chain = True
            for k in range(r3):
                ok_chain = ok_chain and check_reduction_step(
                    NodeOffset((r1 + r3 - k, r2, k), alpha, n)
                ).holds
                slack_sum += (
                    2.0 ** (r2 + k + 2)
                    + 2.0 ** r2 / (r1 + r3 - k)
                    - 1.0
                    + (2.0 ** k if r2 >= 1 else 2.0 ** (k + 1) * math.log(n))
                )
            assert ok_chain
            lhs = lebesgue_function(o.barycentric(), n)
            top = lebesgue_function(NodeOffset((r1 + r3, r2, 0), alpha, n).barycentric(), n)
            assert lhs <= top + slack_sum + 1e-7
            agg = check_lemma15(o)
            assert agg.holds
            # the aggregate slack dominates the accumulated stepwise slack
            assert top + slack_sum <= agg.rhs + 1e-7
            done += 1

    def test_lemma16_and_theorem1_hold(self):
        rng = np.random.default_rng(30)
        for _ in range(40):
            n = int(rng.integers(6, 15))
            alpha = _draw_alpha(rng)
            cands = _admissible_offsets(n, alpha, step_hyps=False)
            if not cands:
                continue
            o = NodeOffset(cands[int(rng.integers(len(cands)))], alpha, n)
            assert check_theorem1(o).holds
            flat = [c for c in cands if c[2] == 0]
            if flat:
                o0 = NodeOffset(flat[int(rng.integers(len(flat)))], alpha, n)
                assert check_lemma16(o0).holds

    def test_theorem1_trivial_corner(self):
        n = 10
        o = NodeOffset((n - 1, 0, 0), (0.4, 0.35, 0.25), n)
        c = check_theorem1(o)
        assert c.holds
        assert c.rhs - c.lhs == pytest.approx(
            2.0 ** (2 * n / 3) * (10 + 2 * math.log(n)), rel=1e-12
        )

    def test_lemma16_requires_flat_r3(self):
        o = NodeOffset((5, 1, 1), (0.5, 0.25, 0.25), 8)
        with pytest.raises(HypothesisError):
            check_lemma16(o)
