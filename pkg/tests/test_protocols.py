"""Tests for the measurement catalog, protocol verification and full classification."""

import numpy as np
import pytest

from loccdisc.bell import BellSet, canonical_form
from loccdisc.constraints import VerdictKind, condition_r_verdict
from loccdisc.linalg import StateVector, random_unitary
from loccdisc.protocols import (
    ClassReport,
    OneWayProtocol,
    Provenance,
    bob_residuals,
    catalog_bases,
    catalog_protocol,
    classify_all,
    find_protocol,
    listed_sets,
    matches_set0_fourier,
    matches_set0_standard,
    reports_frame,
    summarize,
    verify_protocol,
)
from loccdisc.protocols.classify import CSV_COLUMNS

from conftest import FAILING_SETS


@pytest.fixture(scope="module")
def reports():
    """Full d=4, k=4 classification, computed once."""
    return classify_all(4, 4, threads=1)


def _basis(rows):
    return tuple(StateVector.normalized(r) for r in rows)


class TestCatalog:
    """Test the catalogued measurement bases."""

    def test_eight_orthonormal_bases(self):
        bases = catalog_bases()
        assert [p.provenance for p in bases] == [
            Provenance.SET0_STANDARD, Provenance.SET0_FOURIER, Provenance.SET1, Provenance.SET2,
            Provenance.SET3, Provenance.SET4, Provenance.SET5, Provenance.SET6,
        ]
        for p in bases:
            vectors = np.array([u.amplitudes for u in p.alice_basis])
            np.testing.assert_allclose(vectors.conj() @ vectors.T, np.eye(4), atol=1e-12)
            assert p.translation.pair == (0, 0)

    def test_selected_vectors(self):
        set4 = catalog_protocol(Provenance.SET4).alice_basis
        np.testing.assert_allclose(set4[2].amplitudes, np.array([1j, 1, 1j, 1]) / 2)
        np.testing.assert_allclose(set4[3].amplitudes, np.array([-1j, 1, -1j, 1]) / 2)
        set5 = catalog_protocol(Provenance.SET5).alice_basis
        np.testing.assert_allclose(set5[0].amplitudes, np.array([-1, 0, 1, 0]) / np.sqrt(2))

    def test_only_d4(self):
        with pytest.raises(ValueError, match="d=4"):
            catalog_bases(3)

    def test_listed_counts(self):
        counts = {p: len(listed_sets(p)) for p in Provenance}
        assert counts[Provenance.SET1] == 14
        assert counts[Provenance.SET2] == 8
        assert counts[Provenance.SET3] == 8
        assert counts[Provenance.SET4] == 10
        assert counts[Provenance.SET5] == 5
        assert counts[Provenance.SET6] == 1
        assert counts[Provenance.SET0_STANDARD] == 0

    def test_non_orthonormal_rejected(self):
        rows = np.eye(4)
        rows[3] = np.array([1, 1, 0, 0]) / np.sqrt(2)
        with pytest.raises(ValueError, match="not orthonormal"):
            OneWayProtocol(d=4, alice_basis=_basis(rows), provenance=Provenance.CUSTOM)

    def test_set0_patterns(self, set0_standard_set, set0_fourier_set):
        assert matches_set0_standard(set0_standard_set)
        assert not matches_set0_fourier(set0_standard_set)
        assert matches_set0_fourier(set0_fourier_set)


class TestBobResiduals:
    """Test Bob's conditional states after Alice's outcome."""

    def test_standard_basis(self, set0_standard_set):
        residuals = bob_residuals(set0_standard_set.states(), catalog_protocol(Provenance.SET0_STANDARD).alice_basis)
        for k, row in enumerate(residuals):
            for idx, r in zip(set0_standard_set, row):
                assert r.probability == pytest.approx(0.25)
                assert abs(r.state.amplitudes[(k + idx.m) % 4]) == pytest.approx(1.0)

    def test_probabilities_sum_to_one(self, rng, ens2_states):
        u = random_unitary(4, rng)
        basis = _basis(u.T)
        residuals = bob_residuals(ens2_states, basis)
        for i in range(len(ens2_states)):
            assert sum(row[i].probability for row in residuals) == pytest.approx(1.0, abs=1e-12)
            # maximally entangled inputs give every outcome probability 1/d
            for row in residuals:
                assert row[i].probability == pytest.approx(0.25, abs=1e-12)

    def test_unreachable_outcome(self):
        states = [StateVector.normalized(np.eye(4)[i]) for i in (0, 3)]
        protocol = OneWayProtocol(d=2, alice_basis=_basis(np.eye(2)), provenance=Provenance.CUSTOM)
        residuals = bob_residuals(states, protocol.alice_basis)
        assert not residuals[0][1].reachable
        assert residuals[0][0].reachable
        assert verify_protocol(states, protocol)

    def test_dimension_mismatch(self, ens2_states):
        protocol = OneWayProtocol(d=2, alice_basis=_basis(np.eye(2)), provenance=Provenance.CUSTOM)
        with pytest.raises(ValueError, match="dimension mismatch"):
            bob_residuals(ens2_states, protocol.alice_basis)


class TestVerification:
    """Test protocol verification and search."""

    def test_set0_standard(self, set0_standard_set):
        assert verify_protocol(set0_standard_set.states(), catalog_protocol(Provenance.SET0_STANDARD))

    def test_set0_fourier(self, set0_fourier_set):
        assert verify_protocol(set0_fourier_set.states(), catalog_protocol(Provenance.SET0_FOURIER))

    def test_set1_example(self):
        s = BellSet.of(4, [(0, 0), (0, 1), (1, 3), (2, 1)])
        assert verify_protocol(s.states(), catalog_protocol(Provenance.SET1))
        found = find_protocol(s)
        assert found.provenance is Provenance.SET1
        assert found.translation.pair == (0, 0)

    def test_set6_example(self):
        s = BellSet.of(4, [(0, 0), (0, 2), (2, 0), (2, 2)])
        assert verify_protocol(s.states(), catalog_protocol(Provenance.SET6))
        assert find_protocol(s) is not None

    @pytest.mark.parametrize("provenance", [Provenance.SET4, Provenance.SET6])
    def test_listed_sets_verified_by_own_basis(self, provenance):
        protocol = catalog_protocol(provenance)
        for s in listed_sets(provenance):
            assert verify_protocol(s.states(), protocol), s

    def test_ens2_has_no_protocol(self, ens2_set):
        assert find_protocol(ens2_set) is None

    def test_transport(self):
        s = BellSet.of(4, [(0, 0), (0, 1), (1, 3), (2, 1)])
        base = catalog_protocol(Provenance.SET1)
        for dn, dm in [(1, 0), (0, 3), (2, 2), (3, 1)]:
            moved = base.transported(dn, dm)
            assert moved.translation.pair == (dn, dm)
            assert verify_protocol(s.translate(dn, dm).states(), moved)
            assert moved.to_dict() == {"provenance": "Set1", "translation": [dn, dm]}

    def test_listed_sets_pass_and_have_protocols(self):
        for provenance in Provenance:
            for s in listed_sets(provenance):
                assert condition_r_verdict(s).kind is VerdictKind.PASSES_R
                assert find_protocol(s) is not None


class TestClassifyAll:
    """Test the full d=4, k=4 classification."""

    def test_counts(self, reports):
        counts = summarize(reports)
        assert counts == {
            "classes": 122,
            "fails_r": 39,
            "passes_r": 83,
            "trivially_indistinguishable": 0,
            "with_protocol": 83,
        }

    def test_failing_classes_match_reference_sets(self, reports):
        failing = {r.representative for r in reports if r.verdict.kind is VerdictKind.FAILS_R}
        expected = {canonical_form(s) for s in FAILING_SETS}
        assert len(expected) == 39
        assert failing == expected

    def test_protocols_only_for_passing(self, reports):
        for r in reports:
            if r.verdict.kind is VerdictKind.FAILS_R:
                assert r.protocol is None
            else:
                assert r.protocol is not None

    def test_protocols_verify_every_member(self, reports):
        for r in reports[::7]:
            if r.protocol is None:
                continue
            for dn, dm in [(0, 0), (1, 2), (3, 3)]:
                member = r.representative.translate(dn, dm)
                assert verify_protocol(member.states(), r.protocol.transported(dn, dm))

    def test_set0_classes_found_by_set0(self, reports):
        for r in reports:
            rep = r.representative
            if matches_set0_standard(rep):
                assert verify_protocol(rep.states(), catalog_protocol(Provenance.SET0_STANDARD))
            if matches_set0_fourier(rep):
                assert verify_protocol(rep.states(), catalog_protocol(Provenance.SET0_FOURIER))

    def test_member_counts(self, reports):
        assert sum(r.member_count for r in reports) == 1820

    def test_sorted_by_representative(self, reports):
        reps = [r.representative for r in reports]
        assert reps == sorted(reps)

    def test_deterministic_across_thread_counts(self, reports):
        threaded = classify_all(4, 4, threads=4)
        assert [r.to_row() for r in threaded] == [r.to_row() for r in reports]

    def test_frame(self, reports):
        df = reports_frame(reports)
        assert list(df.columns) == CSV_COLUMNS
        assert len(df) == 122
        assert (df["verdict"] == "FailsR").sum() == 39

    def test_report_rejects_protocol_on_failing(self, ens2_set):
        verdict = condition_r_verdict(ens2_set)
        with pytest.raises(ValueError, match="protocol found"):
            ClassReport(representative=ens2_set, verdict=verdict,
                        protocol=catalog_protocol(Provenance.SET1))


if __name__ == "__main__":
    pytest.main([__file__])
