"""Ranking engine, checked cell-by-cell against a brute-force oracle."""
import pytest
from hypothesis import given, settings, strategies as st

from usabdss.aggregation import UnifiedDecisionMatrix
from usabdss.linguistic import S9, delta
from usabdss.topsis import (
    ideal_solutions,
    rank_matrix,
    separations_and_closeness,
    weighted_values,
)

WC = {"C1": 0.567, "C2": 0.114, "C3": 0.292, "C4": 0.027}
CRITERIA = ("C1", "C2", "C3", "C4")


def matrix_of(rows, alternatives=None, criteria=CRITERIA, wc=None):
    alternatives = alternatives or tuple(f"A{i+1}" for i in range(len(rows)))
    m = UnifiedDecisionMatrix("test", tuple(alternatives), tuple(criteria))
    for alt, row in zip(alternatives, rows):
        for crit, beta in zip(criteria, row):
            if beta is not None:
                m.set_cell(alt, crit, delta(beta, S9))
    return m


# the case study's role-1 and global collective matrices (beta values)
ROLE1 = [
    [3.45, 3.312857, 4.341837, 0.0],
    [3.85, 3.8475, 4.923469, 4.0],
    [2.528571, 2.312857, 3.655612, 0.0],
]
GLOBAL = [
    [3.552980, 3.666268, 4.530576, 0.0],
    [4.301198, 4.407215, 4.637982, 2.8],
    [3.654983, 3.242649, 4.448212, 0.0],
]


def exact_wc():
    # the exact normalized weights of the case judgments
    from usabdss.fahp import build_pairwise_matrix, derive_weights

    judgments = {
        (0, 1): "Very strongly important",
        (0, 2): "Equally important",
        (0, 3): "Weak importance",
        (1, 2): "Equally important",
        (1, 3): "Just important",
        (2, 3): "Weak importance",
    }
    w = derive_weights(build_pairwise_matrix(4, judgments))
    return dict(zip(CRITERIA, w.normalized))


class TestWeightedValues:
    def test_known_cell(self):
        wv = weighted_values(matrix_of([[3.85, 0, 0, 0]]), WC)
        assert wv.values[0, 0] == pytest.approx(2.183, abs=0.001)

    def test_uniform_weights(self):
        wv = weighted_values(
            matrix_of([[4.0, 4.0, 4.0, 4.0]]), {c: 0.25 for c in CRITERIA}
        )
        assert wv.values[0].tolist() == [1.0, 1.0, 1.0, 1.0]

    def test_absent_cell_scores_zero(self):
        wv = weighted_values(matrix_of([[None, 4.0, None, None]]), WC)
        assert wv.values[0, 0] == 0.0
        assert wv.values[0, 1] == pytest.approx(4 * 0.114)


class TestIdealSolutions:
    def test_role1_ideals(self):
        wv = weighted_values(matrix_of(ROLE1), exact_wc())
        ideals = ideal_solutions(wv)
        assert ideals.positive == pytest.approx(
            [2.183, 0.439, 1.438, 0.108], abs=0.005
        )
        assert ideals.negative == pytest.approx(
            [1.434, 0.264, 1.067, 0.000], abs=0.005
        )

    def test_global_ideals(self):
        wv = weighted_values(matrix_of(GLOBAL), exact_wc())
        ideals = ideal_solutions(wv)
        assert ideals.positive == pytest.approx(
            [2.439, 0.503, 1.354, 0.076], abs=0.005
        )

    def test_single_alternative_degenerate(self):
        wv = weighted_values(matrix_of([[4, 4, 4, 4]]), WC)
        ideals = ideal_solutions(wv)
        assert (ideals.positive == ideals.negative).all()


class TestCloseness:
    def test_global_table(self):
        result = rank_matrix(matrix_of(GLOBAL), exact_wc())
        assert result.rc == pytest.approx([0.108, 1.000, 0.126], abs=0.01)
        assert result.d_plus == pytest.approx([0.440, 0.0, 0.401], abs=0.005)
        assert result.d_minus == pytest.approx([0.053, 0.454, 0.058], abs=0.005)

    def test_alternative_at_positive_ideal(self):
        result = rank_matrix(matrix_of([[8, 8, 8, 8], [1, 1, 1, 1]]), WC)
        assert result.rc[0] == 1.0
        assert result.rc[1] == 0.0

    def test_equidistant_alternative(self):
        wc = {"C1": 1.0, "C2": 0.0, "C3": 0.0, "C4": 0.0}
        result = rank_matrix(matrix_of([[0, 0, 0, 0], [4, 0, 0, 0], [8, 0, 0, 0]]), wc)
        assert result.rc[1] == pytest.approx(0.5)

    def test_identical_alternatives_all_rc_one(self):
        result = rank_matrix(matrix_of([[4, 4, 4, 4], [4, 4, 4, 4]]), WC)
        assert result.rc.tolist() == [1.0, 1.0]
        # tie broken by declaration order
        assert result.ranking == ("A1", "A2")

    def test_ranking_sorted_by_rc_descending(self):
        result = rank_matrix(matrix_of(GLOBAL), exact_wc())
        rc = {a: result.rc_of(a) for a in result.alternatives}
        ordered = [rc[a] for a in result.ranking]
        assert ordered == sorted(ordered, reverse=True)


betas = st.floats(min_value=0, max_value=8, allow_nan=False)


class TestBruteForceOracle:
    @settings(max_examples=300)
    @given(st.lists(st.tuples(betas, betas, betas, betas), min_size=3, max_size=3))
    def test_random_3x4_matches_direct_formula(self, rows):
        wc = exact_wc()
        result = rank_matrix(matrix_of(rows), wc)
        weights = [wc[c] for c in CRITERIA]
        v = [[b * w for b, w in zip(row, weights)] for row in rows]
        a_plus = [max(col) for col in zip(*v)]
        a_minus = [min(col) for col in zip(*v)]
        for i, row in enumerate(v):
            d_plus = sum((x - p) ** 2 for x, p in zip(row, a_plus)) ** 0.5
            d_minus = sum((x - m) ** 2 for x, m in zip(row, a_minus)) ** 0.5
            assert result.d_plus[i] == pytest.approx(d_plus, abs=1e-12)
            assert result.d_minus[i] == pytest.approx(d_minus, abs=1e-12)
            expected = 1.0 if d_plus + d_minus == 0 else d_minus / (d_plus + d_minus)
            assert result.rc[i] == pytest.approx(expected, abs=1e-12)
            assert 0.0 <= result.rc[i] <= 1.0

    @settings(max_examples=200)
    @given(
        st.lists(st.tuples(betas, betas, betas, betas), min_size=2, max_size=2),
    )
    def test_two_alternatives_rc_sums_to_one(self, rows):
        # with n = 2 each alternative is the other's ideal, so the two
        # distances mirror and RC1 + RC2 = 1; rows closer than the test
        # tolerance count as identical (squared differences underflow)
        if max(abs(a - b) for a, b in zip(rows[0], rows[1])) < 1e-9:
            return
        result = rank_matrix(matrix_of(rows), exact_wc())
        assert result.rc[0] + result.rc[1] == pytest.approx(1.0, abs=1e-9)

    @settings(max_examples=100)
    @given(
        st.lists(st.tuples(betas, betas, betas, betas), min_size=3, max_size=3),
        st.floats(min_value=0.1, max_value=5.0),
    )
    def test_scaling_weighted_values_keeps_order(self, rows, c):
        wc = exact_wc()
        base = rank_matrix(matrix_of(rows), wc)
        scaled_wc = {k: v * c for k, v in wc.items()}
        wv = weighted_values(matrix_of(rows), scaled_wc)
        scaled = separations_and_closeness(wv, ideal_solutions(wv))
        assert base.ranking == scaled.ranking

    @settings(max_examples=100)
    @given(st.lists(st.tuples(betas, betas, betas, betas), min_size=3, max_size=3))
    def test_dominated_alternative_preserves_relative_order(self, rows):
        wc = exact_wc()
        base = rank_matrix(matrix_of(rows), wc)
        dominated = tuple(min(r[j] for r in rows) for j in range(4))
        extended = rows + [dominated]
        bigger = rank_matrix(matrix_of(extended), wc)
        base_order = [a for a in base.ranking]
        bigger_order = [a for a in bigger.ranking if a != "A4"]
        base_rc = {a: base.rc_of(a) for a in base.alternatives}
        bigger_rc = {a: bigger.rc_of(a) for a in bigger.alternatives[:3]}
        # the dominated row can shift RC values but must not invert a
        # strictly ordered pair
        for x in range(3):
            for y in range(3):
                ax, ay = f"A{x+1}", f"A{y+1}"
                if base_rc[ax] > base_rc[ay] + 1e-9:
                    assert bigger_rc[ax] >= bigger_rc[ay] - 1e-9, (
                        base_order,
                        bigger_order,
                    )
