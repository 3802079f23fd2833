import numpy as np
import pytest

from eigenid.config import settings
from eigenid.core import build, minor, random_symmetric
from eigenid.eigensolve import eigenvalues, jacobi_eigendecomposition
from eigenid.exceptions import (
    ConfigError,
    DegenerateEigenvalue,
    DimensionMismatch,
    IndexOutOfRange,
    InternalInconsistency,
    SignRecoveryFailure,
)
from eigenid.identity import (
    FactorPairing,
    IdentityConfig,
    IdentityEngine,
    all_magnitudes,
    component_magnitude,
    component_magnitude_baseline,
    eigenvector,
    log_domain_product,
    pair_factors,
    prepare_batches,
    recover_signs,
    vector_magnitudes,
)


class TestConfig:
    def test_defaults_are_valid(self):
        cfg = IdentityConfig()
        assert cfg.workers >= 1
        assert cfg.batch_size == 64
        assert cfg.evaluation == "paired-batched"

    def test_create_rejects_bad_values(self):
        with pytest.raises(ConfigError):
            IdentityConfig.create(batch_size=0)
        with pytest.raises(ConfigError):
            IdentityConfig.create(workers=0)

    def test_create_ignores_none(self):
        assert IdentityConfig.create(batch_size=None, workers=2).workers == 2


class TestBaseline:
    def test_hand_case(self, hand_matrix):
        result = component_magnitude_baseline(hand_matrix, 0, 0)
        assert result.value == pytest.approx(0.5, abs=1e-12)
        assert result.method == "baseline"

    def test_diagonal(self, diag123):
        assert component_magnitude_baseline(diag123, 1, 1).value == pytest.approx(1.0, abs=1e-14)
        assert component_magnitude_baseline(diag123, 1, 0).value == pytest.approx(0.0, abs=1e-14)

    def test_matches_oracle(self, oracle_squared):
        A = random_symmetric(13, 8)
        expected = oracle_squared(A)
        for i in range(8):
            for j in range(8):
                assert component_magnitude_baseline(A, i, j).value == pytest.approx(expected[j, i], abs=1e-9)

    def test_degenerate(self, identity5):
        with pytest.raises(DegenerateEigenvalue):
            component_magnitude_baseline(identity5, 0, 0)

    def test_index_bounds(self, hand_matrix):
        with pytest.raises(IndexOutOfRange):
            component_magnitude_baseline(hand_matrix, 0, 5)


class TestBatches:
    def _pairing(self, m):
        rng = np.random.default_rng(m)
        return FactorPairing.from_factors(rng.standard_normal(m), rng.standard_normal(m) + 10.0)

    def test_ceiling_split(self):
        plan = prepare_batches(self._pairing(5), 2)
        assert plan.n_batch == 3
        assert [len(num) for num, _ in plan.batches] == [2, 2, 1]

    def test_single_batch(self):
        pairing = self._pairing(5)
        plan = prepare_batches(pairing, 10)
        assert plan.n_batch == 1
        num, den = pairing.paired()
        np.testing.assert_array_equal(plan.batches[0][0], num)
        np.testing.assert_array_equal(plan.batches[0][1], den)

    def test_every_pair_once(self):
        pairing = self._pairing(128)
        plan = prepare_batches(pairing, 64)
        num = np.concatenate([b[0] for b in plan.batches])
        den = np.concatenate([b[1] for b in plan.batches])
        np.testing.assert_array_equal(np.sort(num), np.sort(pairing.numerator))
        np.testing.assert_array_equal(np.sort(den), np.sort(pairing.denominator))

    def test_sorted_pairing(self):
        num, den = self._pairing(20).paired()
        assert np.all(np.diff(num) >= 0.0)
        assert np.all(np.diff(den) >= 0.0)

    def test_bad_batch_size(self):
        with pytest.raises(ConfigError):
            prepare_batches(self._pairing(3), 0)

    def test_length_mismatch(self):
        with pytest.raises(InternalInconsistency):
            FactorPairing.from_factors([1.0, 2.0], [1.0])


class TestLogDomain:
    def test_single_pair(self):
        pairing = FactorPairing.from_factors([-1.0], [-2.0])
        assert log_domain_product(pairing).value == pytest.approx(0.5, abs=1e-15)

    def test_standard_basis(self, diag123):
        spectrum = eigenvalues(diag123)
        pairing = pair_factors(spectrum, eigenvalues(minor(diag123, 0)), 0, 0)
        assert log_domain_product(pairing).value == pytest.approx(1.0, abs=1e-14)

    def test_zero_denominator(self):
        with pytest.raises(DegenerateEigenvalue):
            log_domain_product(FactorPairing.from_factors([1.0], [0.0]))

    def test_negative_product_is_inconsistent(self):
        with pytest.raises(InternalInconsistency):
            log_domain_product(FactorPairing.from_factors([1.0], [-2.0]))

    def test_agrees_with_batched(self, serial_cfg):
        A = random_symmetric(21, 40)
        log_cfg = IdentityConfig(workers=1, evaluation="log-domain")
        for i in range(0, 40, 3):
            for j in range(0, 40, 5):
                batched = component_magnitude(A, i, j, serial_cfg).value
                logged = component_magnitude(A, i, j, log_cfg).value
                assert logged == pytest.approx(batched, rel=1e-10, abs=1e-15)


class TestComponentMagnitude:
    def test_hand_case(self, hand_matrix):
        cfg = IdentityConfig(workers=1, batch_size=1)
        assert component_magnitude(hand_matrix, 0, 0, cfg).value == pytest.approx(0.5, abs=1e-12)

    def test_batch_size_invariance(self, oracle_squared):
        A = random_symmetric(9, 50)
        values = [component_magnitude(A, 25, 7, IdentityConfig(workers=1, batch_size=b)).value for b in (1, 8, 64)]
        for v in values[1:]:
            assert v == pytest.approx(values[0], rel=1e-13)
        assert values[0] == pytest.approx(oracle_squared(A)[7, 25], abs=1e-9)

    def test_bit_identical_across_workers(self):
        A = random_symmetric(14, 60)
        values = {w: component_magnitude(A, 30, 3, IdentityConfig(workers=w, batch_size=8)).value for w in (1, 2, 8)}
        assert values[1] == values[2] == values[8]

    def test_cached_spectra_skip_solves(self, hand_matrix, serial_cfg):
        with IdentityEngine(serial_cfg) as engine:
            spectrum_a = eigenvalues(hand_matrix)
            spectrum_m = eigenvalues(minor(hand_matrix, 1))
            result = engine.component_magnitude(hand_matrix, 1, 1, spectrum_a, spectrum_m)
            assert engine.solve_count == 0
            assert result.value == pytest.approx(0.5, abs=1e-12)

    def test_two_solves(self, parallel_cfg):
        A = random_symmetric(2, 12)
        with IdentityEngine(parallel_cfg) as engine:
            engine.component_magnitude(A, 3, 4)
            assert engine.solve_count == 2

    def test_degenerate_every_variant(self, identity5):
        for cfg in (IdentityConfig(workers=1), IdentityConfig(workers=2, batch_size=1),
                    IdentityConfig(workers=1, evaluation="log-domain")):
            with pytest.raises(DegenerateEigenvalue):
                component_magnitude(identity5, 2, 0, cfg)

    def test_degenerate_error_carries_gap(self, identity5):
        with pytest.raises(DegenerateEigenvalue) as info:
            component_magnitude(identity5, 0, 0, IdentityConfig(workers=1))
        assert info.value.i == 0
        assert info.value.gap == 0.0

    def test_result_clamped_to_unit_interval(self):
        A = random_symmetric(40, 20)
        result = component_magnitude(A, 0, 0, IdentityConfig(workers=1))
        assert 0.0 <= result.value <= 1.0
        assert result.condition > 0.0

    def test_raw_within_tolerance_of_unit_interval(self, serial_cfg, oracle_squared):
        A = random_symmetric(41, 18)
        expected = oracle_squared(A)
        for i in range(18):
            for result in vector_magnitudes(A, i, serial_cfg):
                assert -1e-9 <= result.raw <= 1.0 + 1e-9
                assert result.value == pytest.approx(expected[result.j, i], abs=1e-9)

    @pytest.mark.parametrize("scale", [1e-170, 1e170])
    @pytest.mark.parametrize("evaluation", ["paired-batched", "log-domain"])
    def test_scale_invariant(self, scale, evaluation):
        cfg = IdentityConfig(workers=1, batch_size=2, evaluation=evaluation)
        expected = component_magnitude(random_symmetric(5, 6), 2, 1, cfg).value
        scaled = component_magnitude(random_symmetric(5, 6, scale=scale), 2, 1, cfg).value
        assert scaled == pytest.approx(expected, abs=1e-10)


class TestVectorMagnitudes:
    def test_standard_basis(self):
        values = [r.value for r in vector_magnitudes(build(np.diag([5.0, 6.0, 7.0])), 2, IdentityConfig(workers=1))]
        np.testing.assert_allclose(values, [0.0, 0.0, 1.0], atol=1e-14)

    def test_hand_case(self, hand_matrix, serial_cfg):
        values = [r.value for r in vector_magnitudes(hand_matrix, 1, serial_cfg)]
        np.testing.assert_allclose(values, [0.5, 0.5], atol=1e-12)

    def test_matches_oracle_column(self, parallel_cfg, oracle_squared):
        A = random_symmetric(2, 30)
        values = np.array([r.value for r in vector_magnitudes(A, 0, parallel_cfg)])
        np.testing.assert_allclose(values, oracle_squared(A)[:, 0], atol=1e-9)
        assert values.sum() == pytest.approx(1.0, abs=1e-10)

    def test_solve_count(self, parallel_cfg):
        A = random_symmetric(6, 10)
        with IdentityEngine(parallel_cfg) as engine:
            engine.vector_magnitudes(A, 4)
            assert engine.solve_count == 11


class TestAllMagnitudes:
    def test_diagonal(self, diag123, serial_cfg):
        np.testing.assert_allclose(all_magnitudes(diag123, serial_cfg), np.eye(3), atol=1e-14)

    def test_hand_case(self, hand_matrix, serial_cfg):
        np.testing.assert_allclose(all_magnitudes(hand_matrix, serial_cfg), np.full((2, 2), 0.5), atol=1e-12)

    def test_matches_oracle(self, parallel_cfg, oracle_squared):
        A = random_symmetric(4, 25)
        np.testing.assert_allclose(all_magnitudes(A, parallel_cfg), oracle_squared(A), atol=1e-9)

    def test_solve_count(self, serial_cfg):
        A = random_symmetric(6, 9)
        with IdentityEngine(serial_cfg) as engine:
            engine.all_magnitudes(A)
            assert engine.solve_count == 10

    def test_degenerate(self, identity5, serial_cfg):
        with pytest.raises(DegenerateEigenvalue):
            all_magnitudes(identity5, serial_cfg)


class TestSignRecovery:
    def test_hand_case(self, hand_matrix):
        v = recover_signs(hand_matrix, 0, [0.5, 0.5], 1.0)
        s = 1.0 / np.sqrt(2.0)
        np.testing.assert_allclose(v, [s, -s], atol=1e-12)

    def test_standard_basis(self):
        v = recover_signs(build(np.diag([1.0, 2.0])), 1, [0.0, 1.0], 2.0)
        np.testing.assert_allclose(v, [0.0, 1.0], atol=1e-15)

    def test_matches_oracle_up_to_sign(self, serial_cfg):
        A = random_symmetric(8, 15)
        oracle = jacobi_eigendecomposition(A)
        for i in range(15):
            v = eigenvector(A, i, serial_cfg)
            w = oracle.vectors[:, i]
            w = w if w[np.flatnonzero(np.abs(w) > 1e-10)[0]] > 0 else -w
            assert np.max(np.abs(v - w)) <= 1e-6

    def test_first_significant_component_positive(self, serial_cfg):
        v = eigenvector(random_symmetric(19, 10), 3, serial_cfg)
        assert v[np.flatnonzero(np.abs(v) > 1e-10)[0]] > 0.0
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-9)

    def test_wrong_magnitudes_rejected(self, hand_matrix):
        with pytest.raises(SignRecoveryFailure):
            recover_signs(hand_matrix, 0, [1.0, 0.0], 1.0)

    def test_magnitude_count_checked(self, hand_matrix):
        with pytest.raises(DimensionMismatch):
            recover_signs(hand_matrix, 0, [1.0], 1.0)

    def test_degenerate(self, identity5):
        with pytest.raises(DegenerateEigenvalue):
            recover_signs(identity5, 0, [1.0, 0.0, 0.0, 0.0, 0.0], 1.0)

    def test_one_by_one(self):
        np.testing.assert_array_equal(recover_signs(build([[7.0]]), 0, [1.0], 7.0), [1.0])

    def test_one_by_one_index_checked(self):
        with pytest.raises(IndexOutOfRange):
            recover_signs(build([[7.0]]), 1, [1.0], 7.0)

    def test_degeneracy_tolerance_from_settings(self, monkeypatch):
        A = build(np.diag([1.0, 1.0 + 1e-6, 3.0]))
        monkeypatch.setattr(settings, "EIGENID_DEGENERACY_TOL", 1e-3)
        with pytest.raises(DegenerateEigenvalue):
            recover_signs(A, 0, [1.0, 0.0, 0.0], 1.0)
        monkeypatch.setattr(settings, "EIGENID_DEGENERACY_TOL", 1e-12)
        np.testing.assert_allclose(recover_signs(A, 0, [1.0, 0.0, 0.0], 1.0), [1.0, 0.0, 0.0], atol=1e-15)
