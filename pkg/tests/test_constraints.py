"""Tests for the Hermitian constraint engine and condition R verdicts."""

import itertools

import numpy as np
import pytest
from scipy import linalg as sla

from loccdisc.bell import BellSet, bell_state, enumerate_sets, equivalence_classes
from loccdisc.bounds import ens2_effect_template
from loccdisc.constraints import (
    ConstraintSystem,
    RowLabel,
    VerdictKind,
    analyze_side,
    condition_r_verdict,
    hermitian_basis,
    mixedness_constraints,
    op_constraints,
    op_subsumption,
    psd_epsilon_range,
    solution_space,
)
from loccdisc.linalg import Side, StateVector


def _random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (a + a.conj().T)


class TestHermitianBasis:
    """Test the real orthonormal basis of Hermitian matrices."""

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_orthonormal_and_hermitian(self, d):
        hb = hermitian_basis(d)
        assert len(hb.elements) == d * d
        gram = np.array([[np.trace(a @ b).real for b in hb.elements] for a in hb.elements])
        np.testing.assert_allclose(gram, np.eye(d * d), atol=1e-12)
        for e in hb.elements:
            np.testing.assert_allclose(e, e.conj().T)

    def test_round_trip(self, rng):
        hb = hermitian_basis(4)
        x = _random_hermitian(rng, 4)
        np.testing.assert_allclose(hb.reconstruct(hb.coordinates(x)), x, atol=1e-12)

    def test_conjugate_coordinates(self, rng):
        hb = hermitian_basis(4)
        x = _random_hermitian(rng, 4)
        np.testing.assert_allclose(
            hb.reconstruct(hb.conjugate_coordinates(hb.coordinates(x))), x.conj(), atol=1e-12
        )

    def test_identity_coordinates(self):
        hb = hermitian_basis(4)
        np.testing.assert_allclose(hb.reconstruct(hb.identity_coordinates()), np.eye(4) / 2)

    def test_labels(self):
        assert hermitian_basis(2).labels() == ["E00", "E11", "S01", "A01"]


class TestOpConstraints:
    """Test orthogonality-preservation rows."""

    def test_ens2_alice_nullspace(self, ens2_states):
        space = solution_space(op_constraints(ens2_states, Side.A))
        assert space.dimension == 5
        for x in space.basis:
            for r, c in [(0, 1), (1, 2), (2, 3), (0, 3)]:
                assert abs(x[r, c]) < 1e-9
            assert abs(x[0, 2].imag) < 1e-9
            assert abs(x[1, 3].imag) < 1e-9
            assert abs((x[0, 0] - x[1, 1] + x[2, 2] - x[3, 3]).real) < 1e-9

    @pytest.mark.parametrize("side", [Side.A, Side.B])
    def test_ens2_op_dimension_both_sides(self, ens2_states, side):
        assert solution_space(op_constraints(ens2_states, side)).dimension == 5

    def test_ens2_template_solves(self, ens2_states, rng):
        cs = op_constraints(ens2_states, Side.A)
        space = solution_space(cs)
        for _ in range(10):
            x = ens2_effect_template(*rng.normal(size=5))
            assert np.abs(cs.evaluate(x)).max() < 1e-10
            assert space.contains(x)

    def test_identity_always_solves(self, rng):
        for _ in range(5):
            s = BellSet.of(4, [(int(n), int(m)) for n, m in
                               rng.permutation(list(itertools.product(range(4), repeat=2)))[:4]])
            for side in Side:
                cs = op_constraints(s.states(), side)
                assert np.abs(cs.evaluate(np.eye(4))).max() < 1e-10

    def test_row_labels(self, ens2_states):
        cs = op_constraints(ens2_states, Side.B)
        assert len(cs) == 12
        assert cs.labels[0] == RowLabel("op", (0, 1), "re", Side.B)
        assert str(cs.labels[1]) == "op[0,1].im@B"

    def test_non_orthogonal_rejected(self):
        plus = StateVector.normalized(bell_state(2, (0, 0)).amplitudes + bell_state(2, (0, 1)).amplitudes)
        with pytest.raises(ValueError, match="not pairwise orthogonal"):
            op_constraints([bell_state(2, (0, 0)), plus], Side.A)


class TestMixednessConstraints:
    """Test the maximally-mixed residual rows."""

    def test_identity_solves(self, ens2_states):
        for side in Side:
            cs = mixedness_constraints(ens2_states, side)
            assert len(cs) == 16
            assert np.abs(cs.evaluate(np.eye(4))).max() < 1e-10

    def test_requires_d_states(self):
        states = BellSet.of(4, [(0, 0), (1, 1), (2, 2)]).states()
        with pytest.raises(NotImplementedError):
            mixedness_constraints(states, Side.A)

    def test_non_mes_rejected(self):
        product = [StateVector.normalized(np.eye(4)[i]) for i in (0, 3)]
        with pytest.raises(ValueError, match="not MES"):
            mixedness_constraints(product, Side.A)


class TestSolutionSpace:
    """Test SVD nullspaces."""

    def test_empty_system_is_everything(self):
        space = solution_space(ConstraintSystem.empty(4))
        assert space.dimension == 16

    def test_traceless_complement_leaves_identity(self):
        hb = hermitian_basis(3)
        rows = sla.null_space(hb.identity_coordinates()[None, :]).T
        labels = [RowLabel("op", (0, i), "re", Side.A) for i in range(rows.shape[0])]
        space = solution_space(ConstraintSystem(d=3, rows=rows, labels=labels))
        assert space.is_trivial()
        x = space.basis[0]
        np.testing.assert_allclose(x / x[0, 0], np.eye(3), atol=1e-10)
        assert space.traceless_element() is None

    def test_basis_orthonormal(self, ens2_states):
        space = solution_space(op_constraints(ens2_states, Side.A))
        gram = np.array([[np.trace(a @ b).real for b in space.basis] for a in space.basis])
        np.testing.assert_allclose(gram, np.eye(space.dimension), atol=1e-10)

    def test_stacking_dimension_mismatch(self):
        with pytest.raises(ValueError):
            ConstraintSystem.empty(3) + ConstraintSystem.empty(4)


class TestConditionR:
    """Test verdicts on known sets."""

    def test_ens2_fails(self, ens2_set):
        verdict = condition_r_verdict(ens2_set)
        assert verdict.kind is VerdictKind.FAILS_R
        assert verdict.alice_dims.op_only == 5
        assert verdict.alice_dims.op_plus_r == 1
        assert verdict.bob_dims.op_only == 5
        assert verdict.bob_dims.op_plus_r == 1
        assert verdict.witness is None

    def test_standard_family_passes(self):
        verdict = condition_r_verdict(BellSet.of(4, [(0, 0), (0, 1), (0, 2), (0, 3)]))
        assert verdict.kind is VerdictKind.PASSES_R
        x = verdict.witness
        assert abs(np.trace(x)) < 1e-9
        np.testing.assert_allclose(x, x.conj().T, atol=1e-12)
        lo, hi = psd_epsilon_range(x)
        assert lo < 0 < hi

    def test_five_states_trivially_indistinguishable(self, rng):
        indices = list(itertools.product(range(4), repeat=2))
        for _ in range(100):
            chosen = rng.choice(len(indices), size=5, replace=False)
            s = BellSet.of(4, [indices[i] for i in chosen])
            verdict = condition_r_verdict(s)
            assert verdict.kind is VerdictKind.TRIVIALLY_INDISTINGUISHABLE
            assert verdict.alice_dims is None

    def test_fewer_states_out_of_scope(self):
        with pytest.raises(NotImplementedError, match="out of scope"):
            condition_r_verdict(BellSet.of(4, [(0, 0), (1, 1), (2, 2)]))

    def test_all_three_sets_pass_at_d3(self):
        for s in enumerate_sets(3, 3):
            assert condition_r_verdict(s).kind is VerdictKind.PASSES_R

    def test_joint_space_contains_identity(self, ens2_set):
        for side in Side:
            analysis = analyze_side(ens2_set.states(), side)
            assert analysis.joint_space.contains(np.eye(4))
            assert analysis.op_space.contains(np.eye(4))

    @pytest.mark.parametrize("side", [Side.A, Side.B])
    def test_ens2_joint_basis_is_identity(self, ens2_set, side):
        analysis = analyze_side(ens2_set.states(), side)
        assert analysis.joint_space.dimension == 1
        x = analysis.joint_space.basis[0]
        np.testing.assert_allclose(x / x[0, 0], np.eye(4), atol=1e-10)

    @pytest.mark.parametrize("side", [Side.A, Side.B])
    def test_basis_residuals_small(self, ens2_states, side):
        op = op_constraints(ens2_states, side)
        joint = op + mixedness_constraints(ens2_states, side)
        for cs in (op, joint):
            for x in solution_space(cs).basis:
                assert np.abs(cs.evaluate(x)).max() < 1e-9 * np.linalg.norm(x)

    def test_verdict_constant_on_classes(self):
        for cls in equivalence_classes(4, 4):
            expected = condition_r_verdict(cls.representative).kind
            for member in cls.members[1:]:
                assert condition_r_verdict(member).kind is expected

    def test_op_subsumption_returns_bool(self, ens2_states):
        assert isinstance(op_subsumption(ens2_states, Side.A), bool)

    def test_to_dict(self, ens2_set):
        payload = condition_r_verdict(ens2_set).to_dict()
        assert payload["verdict"] == "FailsR"
        assert payload["alice"] == {"op_only": 5, "op_plus_r": 1}
        assert payload["witness_side"] is None


class TestPsdEpsilonRange:
    """Test the PSD interval of I + eps X."""

    def test_pauli_z(self):
        assert psd_epsilon_range(np.diag([1.0, -1.0])) == pytest.approx((-1.0, 1.0))

    def test_identity_part_ignored(self):
        assert psd_epsilon_range(np.diag([3.0, 1.0])) == pytest.approx((-1.0, 1.0))

    def test_multiple_of_identity(self):
        lo, hi = psd_epsilon_range(np.eye(3))
        assert lo == -np.inf and hi == np.inf


if __name__ == "__main__":
    pytest.main([__file__])
