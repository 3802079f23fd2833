"""Matrix construction, minors, generation and file formats."""
import numpy as np
import pytest
from pydantic import ValidationError

from eigenid.core import (
    FileSource,
    RandomSource,
    build,
    generate,
    load,
    minor,
    parse_dense_csv,
    parse_matrix_market,
    random_symmetric,
    store,
)
from eigenid.exceptions import (
    AsymmetricInput,
    DimensionMismatch,
    IndexOutOfRange,
    MatrixFileNotFound,
    MatrixTooSmall,
    NonFiniteEntry,
    ParseError,
)


class TestBuild:
    def test_symmetric_input_accepted(self, hand_matrix):
        assert hand_matrix.n == 2
        np.testing.assert_array_equal(hand_matrix.entries, [[2.0, 1.0], [1.0, 2.0]])

    def test_strict_rejects_asymmetry(self):
        with pytest.raises(AsymmetricInput) as info:
            build([[0.0, 1.0], [0.0, 0.0]])
        assert info.value.max_deviation == 1.0

    def test_symmetrize_averages(self):
        A = build([[0.0, 1.0], [0.0, 0.0]], policy="symmetrize")
        np.testing.assert_array_equal(A.entries, [[0.0, 0.5], [0.5, 0.0]])

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteEntry):
            build([[1.0, np.nan], [np.nan, 1.0]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            build([[1.0, 2.0, 3.0], [2.0, 1.0, 0.0]])

    def test_input_is_copied_and_entries_frozen(self):
        source = np.array([[1.0, 2.0], [2.0, 1.0]])
        A = build(source)
        source[0, 0] = 99.0
        assert A.entries[0, 0] == 1.0
        with pytest.raises(ValueError):
            A.entries[0, 0] = 5.0

    def test_one_by_one_is_valid(self):
        assert build([[3.0]]).n == 1

    @pytest.mark.parametrize("scale", [1e-170, 1e170])
    def test_frobenius_norm_survives_extreme_scales(self, scale):
        base = random_symmetric(5, 6)
        scaled = random_symmetric(5, 6, scale=scale)
        assert scaled.frobenius_norm / scale == pytest.approx(base.frobenius_norm, rel=1e-12)

    def test_unit_scale_is_exact(self):
        A = random_symmetric(5, 6, scale=1e-170)
        unit, exponent = A.to_unit_scale()
        assert 0.5 <= np.max(np.abs(unit)) < 1.0
        np.testing.assert_array_equal(np.ldexp(unit, exponent), A.entries)

    def test_zero_matrix_norm(self):
        assert build(np.zeros((3, 3))).frobenius_norm == 0.0


class TestMinor:
    def test_two_by_two(self, hand_matrix):
        np.testing.assert_array_equal(minor(hand_matrix, 0).entries, [[2.0]])

    def test_identity_minor(self):
        np.testing.assert_array_equal(minor(build(np.eye(3)), 1).entries, np.eye(2))

    def test_matches_index_remap(self):
        A = random_symmetric(42, 6)
        M = minor(A, 3)
        assert M.n == 5
        remap = [0, 1, 2, 4, 5]
        for r in range(5):
            for c in range(5):
                assert M.entries[r, c] == A.entries[remap[r], remap[c]]

    def test_index_out_of_range(self, hand_matrix):
        with pytest.raises(IndexOutOfRange):
            minor(hand_matrix, 2)
        with pytest.raises(IndexOutOfRange):
            minor(hand_matrix, -1)

    def test_one_by_one_has_no_minor(self):
        with pytest.raises(MatrixTooSmall):
            minor(build([[1.0]]), 0)

    def test_minor_of_minor(self):
        n = 6
        A = random_symmetric(43, n)
        for j in range(n):
            kept = [r for r in range(n) if r != j]
            for k in range(n - 1):
                twice = kept[:k] + kept[k + 1:]
                M = minor(minor(A, j), k)
                assert M.n == n - 2
                np.testing.assert_array_equal(M.entries, A.entries[np.ix_(twice, twice)])


class TestGenerate:
    def test_seeded_random_is_deterministic(self):
        source = RandomSource(seed=7, distribution="gaussian", n=4)
        assert generate(source) == generate(source)

    def test_different_seeds_differ(self):
        assert random_symmetric(1, 4) != random_symmetric(2, 4)

    def test_uniform_entries_bounded(self):
        A = random_symmetric(3, 10, "uniform")
        assert np.all(np.abs(A.entries) <= 1.0)

    def test_source_validation(self):
        with pytest.raises(ValidationError):
            RandomSource(seed=-1, n=3)
        with pytest.raises(ValidationError):
            RandomSource(seed=0, n=0)

    def test_file_source(self, tmp_path):
        path = tmp_path / "a.csv"
        path.write_text("2,1\n1,2\n")
        A = generate(FileSource(path=path, format="dense-csv"))
        np.testing.assert_array_equal(A.entries, [[2.0, 1.0], [1.0, 2.0]])


class TestFileFormats:
    def test_dense_csv_parse(self):
        np.testing.assert_array_equal(parse_dense_csv("2,1\n1,2").entries, [[2.0, 1.0], [1.0, 2.0]])

    def test_dense_csv_ragged_rows(self):
        with pytest.raises(DimensionMismatch):
            parse_dense_csv("1,2\n3\n")

    def test_dense_csv_bad_number(self):
        with pytest.raises(ParseError):
            parse_dense_csv("1,x\nx,1\n")

    def test_matrix_market_lower_triangle(self):
        text = (
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "% a comment\n"
            "2 2 3\n"
            "1 1 2.0\n"
            "2 1 1.0\n"
            "2 2 2.0\n"
        )
        np.testing.assert_array_equal(parse_matrix_market(text).entries, [[2.0, 1.0], [1.0, 2.0]])

    def test_matrix_market_wrong_header(self):
        with pytest.raises(ParseError):
            parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n")

    def test_matrix_market_entry_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1.0\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(MatrixFileNotFound):
            load(tmp_path / "nope.csv", "dense-csv")

    def test_dense_csv_store_load_exact(self, tmp_path):
        A = random_symmetric(11, 9)
        store(A, tmp_path / "a.csv", "dense-csv")
        assert load(tmp_path / "a.csv", "dense-csv") == A

    def test_matrix_market_store_load(self, tmp_path):
        A = random_symmetric(12, 9)
        store(A, tmp_path / "a.mtx", "matrix-market-symmetric")
        B = load(tmp_path / "a.mtx", "matrix-market-symmetric")
        np.testing.assert_allclose(B.entries, A.entries, rtol=1e-15, atol=0.0)
