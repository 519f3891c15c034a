"""Unification to S9 and the role/global aggregation rules."""
import pytest
from hypothesis import given, strategies as st

from usabdss.aggregation import (
    UnifiedDecisionMatrix,
    aggregate_global,
    aggregate_role,
    role_user_weights,
    ucd_vector,
    unify_matrix,
)
from usabdss.errors import DomainError
from usabdss.linguistic import S3, S5, S9, TwoTuple, delta, delta_inverse
from usabdss.scoring import IndividualDecisionMatrix
from usabdss.sus_scale import UnbalancedSusValue

CRITERIA = ("C1", "C2", "C3", "C4")
KINDS = {"C1": "SUS", "C2": "NPS", "C3": "UT", "C4": "ACC"}


def _id_matrix(cells):
    m = IndividualDecisionMatrix("U", "R", ("A1",), CRITERIA)
    m.cells.update(cells)
    return m


def _unified(scope, cells, alternatives=("A1",)):
    m = UnifiedDecisionMatrix(scope, alternatives, CRITERIA)
    for k, v in cells.items():
        m.cells[k] = v
    return m


class TestUnifyMatrix:
    def test_first_user_row(self):
        # adjective cells push through their term components, UT doubles,
        # ACC quadruples
        m = _id_matrix(
            {
                ("A1", "C1"): UnbalancedSusValue("OK", 0.4, 2),
                ("A1", "C2"): UnbalancedSusValue("Poor", -0.33, 3),
                ("A1", "C3"): delta(55 / 28, S5),
                ("A1", "C4"): TwoTuple(0, 0.0, S3),
            }
        )
        u = unify_matrix(m, KINDS)
        c1 = u.cell("A1", "C1")
        assert (c1.index, c1.term_set) == (5, S9)
        assert c1.alpha == pytest.approx(-0.2, abs=1e-9)
        c2 = u.cell("A1", "C2")
        assert (c2.index, c2.alpha) == (3, pytest.approx(-0.33))
        c3 = u.cell("A1", "C3")
        assert (c3.index, c3.alpha) == (4, pytest.approx(-0.0714, abs=0.0001))
        assert u.cell("A1", "C4") == TwoTuple(0, 0.0, S9)

    def test_absence_preserved(self):
        u = unify_matrix(_id_matrix({}), KINDS)
        assert u.cell("A1", "C1") is None

    def test_top_acc_label(self):
        m = _id_matrix({("A1", "C4"): TwoTuple(2, 0.0, S3)})
        u = unify_matrix(m, KINDS)
        assert u.cell("A1", "C4") == TwoTuple(8, 0.0, S9)


class TestRoleUserWeights:
    def test_case_role_one(self):
        wu = {f"U{k}": (1.0 if k <= 4 else 0.9) for k in range(1, 16)}
        w = role_user_weights(wu, ["U4", "U6", "U12"])
        assert w["U4"] == pytest.approx(0.357, abs=0.001)
        assert w["U6"] == pytest.approx(0.321, abs=0.001)
        assert w["U12"] == pytest.approx(0.321, abs=0.001)
        assert w["U1"] == 0.0

    def test_singleton(self):
        w = role_user_weights({"U1": 0.9, "U2": 0.9}, ["U1"])
        assert w == {"U1": 1.0, "U2": 0.0}

    def test_symmetric_pair(self):
        w = role_user_weights({"U1": 0.9, "U2": 0.9}, ["U1", "U2"])
        assert w["U1"] == pytest.approx(0.5)
        assert w["U2"] == pytest.approx(0.5)

    def test_empty_role_rejected(self):
        with pytest.raises(DomainError):
            role_user_weights({"U1": 1.0}, [])


class TestAggregateRole:
    def test_case_cell(self):
        matrices = [
            _unified("user:U4/role:R1", {("A1", "C1"): TwoTuple(5, -0.2, S9)}),
            _unified("user:U6/role:R1", {("A1", "C1"): TwoTuple(2, 0.4, S9)}),
            _unified("user:U12/role:R1", {("A1", "C1"): TwoTuple(3, 0.0, S9)}),
        ]
        weights = {"U4": 1 / 2.8, "U6": 0.9 / 2.8, "U12": 0.9 / 2.8}
        out = aggregate_role("R1", matrices, weights, ["U4", "U6", "U12"])
        cell = out.cell("A1", "C1")
        assert cell.index == 3
        assert cell.alpha == pytest.approx(0.45)

    def test_partial_answers_renormalize(self):
        # only the first user answered; the cell is their value
        matrices = [
            _unified("user:U4/role:R1", {("A1", "C4"): TwoTuple(4, 0.0, S9)}),
            _unified("user:U6/role:R1", {}),
        ]
        weights = {"U4": 0.55, "U6": 0.45}
        out = aggregate_role("R1", matrices, weights, ["U4", "U6"])
        assert out.cell("A1", "C4") == TwoTuple(4, 0.0, S9)

    def test_absent_for_all_stays_absent(self):
        matrices = [_unified("u", {}), _unified("v", {})]
        out = aggregate_role("R1", matrices, {"U1": 0.5, "U2": 0.5}, ["U1", "U2"])
        assert out.cell("A1", "C4") is None

    def test_idempotent_on_identical(self):
        cell = TwoTuple(6, -0.21, S9)
        matrices = [
            _unified("a", {("A1", "C2"): cell}),
            _unified("b", {("A1", "C2"): cell}),
        ]
        out = aggregate_role("R", matrices, {"U1": 0.3, "U2": 0.7}, ["U1", "U2"])
        merged = out.cell("A1", "C2")
        assert merged.index == cell.index
        assert merged.alpha == pytest.approx(cell.alpha, abs=1e-9)


class TestAggregateGlobal:
    def test_case_cell(self):
        roles = {
            "R1": _unified("role:R1", {("A1", "C1"): delta(3.45, S9)}),
            "R2": _unified("role:R2", {("A1", "C1"): delta(3.22, S9)}),
            "R3": _unified("role:R3", {("A1", "C1"): delta(4.02, S9)}),
        }
        out = aggregate_global(roles, {"R1": 0.4, "R2": 0.3, "R3": 0.3})
        cell = out.cell("A1", "C1")
        assert cell.index == 4
        assert cell.alpha == pytest.approx(-0.448, abs=0.001)

    def test_expert_only_acc_drops_missing_roles(self):
        roles = {
            "R1": _unified("role:R1", {("A1", "C4"): delta(4.0, S9)}),
            "R2": _unified("role:R2", {("A1", "C4"): delta(4.0, S9)}),
            "R3": _unified("role:R3", {("A1", "C4"): delta(0.0, S9)}),
        }
        out = aggregate_global(roles, {"R1": 0.4, "R2": 0.3, "R3": 0.3})
        # all three roles have the cell: plain weighted mean
        assert delta_inverse(out.cell("A1", "C4")) == pytest.approx(2.8)
        del roles["R3"].cells[("A1", "C4")]
        out = aggregate_global(roles, {"R1": 0.4, "R2": 0.3, "R3": 0.3})
        # R3 renormalizes away: (0.4*4 + 0.3*4) / 0.7 = 4
        assert delta_inverse(out.cell("A1", "C4")) == pytest.approx(4.0)

    def test_single_role_identity(self):
        cell = TwoTuple(5, 0.07, S9)
        roles = {"R1": _unified("role:R1", {("A1", "C3"): cell})}
        out = aggregate_global(roles, {"R1": 1.0})
        merged = out.cell("A1", "C3")
        assert merged.index == cell.index
        assert merged.alpha == pytest.approx(cell.alpha, abs=1e-9)


class TestUcdVector:
    WC = {"C1": 0.567, "C2": 0.114, "C3": 0.292, "C4": 0.027}

    def test_case_row(self):
        m = _unified(
            "role:R1",
            {
                ("A1", "C1"): delta(3.45, S9),
                ("A1", "C2"): delta(3.31, S9),
                ("A1", "C3"): delta(4.34, S9),
                ("A1", "C4"): delta(0.0, S9),
            },
        )
        vec = ucd_vector(m, self.WC)
        v = vec.value_of("A1")
        assert v.index == 4
        assert v.alpha == pytest.approx(-0.4, abs=0.01)

    def test_constant_row(self):
        m = _unified(
            "role:R1", {("A1", c): TwoTuple(4, 0.0, S9) for c in CRITERIA}
        )
        v = ucd_vector(m, self.WC).value_of("A1")
        assert v.index == 4
        assert v.alpha == pytest.approx(0.0, abs=1e-9)

    def test_absent_counts_as_worst(self):
        m = _unified(
            "role:R1",
            {("A1", c): TwoTuple(4, 0.0, S9) for c in ("C1", "C2", "C3")},
        )
        v = ucd_vector(m, self.WC).value_of("A1")
        assert delta_inverse(v) == pytest.approx(4 * (1 - self.WC["C4"]))

    def test_weights_must_normalize(self):
        m = _unified("x", {})
        with pytest.raises(DomainError):
            ucd_vector(m, {"C1": 0.6, "C2": 0.6, "C3": 0.0, "C4": 0.0})


class TestAggregationProperties:
    @given(
        st.lists(
            st.floats(min_value=0, max_value=8, allow_nan=False), min_size=2, max_size=6
        ),
        st.data(),
    )
    def test_scale_invariance_and_bounds(self, betas, data):
        weights = data.draw(
            st.lists(
                st.floats(min_value=0.05, max_value=5),
                min_size=len(betas),
                max_size=len(betas),
            )
        )
        users = [f"U{i}" for i in range(len(betas))]
        matrices = [
            _unified(f"user:{u}", {("A1", "C1"): delta(b, S9)})
            for u, b in zip(users, betas)
        ]
        w1 = dict(zip(users, weights))
        w2 = {u: w * 3.7 for u, w in w1.items()}
        a1 = aggregate_role("R", matrices, w1, users).cell("A1", "C1")
        a2 = aggregate_role("R", matrices, w2, users).cell("A1", "C1")
        assert delta_inverse(a1) == pytest.approx(delta_inverse(a2), abs=1e-9)
        assert min(betas) - 1e-9 <= delta_inverse(a1) <= max(betas) + 1e-9

    @given(
        st.floats(min_value=0, max_value=7.9),
        st.floats(min_value=0.001, max_value=0.1),
    )
    def test_monotone_in_cells(self, beta, bump):
        users = ["U1", "U2"]
        weights = {"U1": 0.6, "U2": 0.4}
        low = [
            _unified("a", {("A1", "C1"): delta(beta, S9)}),
            _unified("b", {("A1", "C1"): delta(4.0, S9)}),
        ]
        high = [
            _unified("a", {("A1", "C1"): delta(min(8.0, beta + bump), S9)}),
            _unified("b", {("A1", "C1"): delta(4.0, S9)}),
        ]
        a_low = aggregate_role("R", low, weights, users).cell("A1", "C1")
        a_high = aggregate_role("R", high, weights, users).cell("A1", "C1")
        assert delta_inverse(a_low) <= delta_inverse(a_high) + 1e-12
