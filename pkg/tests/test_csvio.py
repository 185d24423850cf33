import numpy as np
import pytest

from cqho.algebra import DeformationFunction, deform_ladder, ladder_operators
from cqho.csvio import dump_matrix, format_value, write_csv, write_state
from cqho.states import build_nlcs


class TestFormatting:
    def test_ten_significant_digits(self):
        assert format_value(np.pi) == "3.141592654"
        assert format_value(1.0) == "1"
        assert format_value(3) == "3"
        assert format_value(1.5e-13) == "1.5e-13"

    def test_atomic_write_cleans_up_on_failure(self, tmp_path):
        target = tmp_path / "out.csv"

        def exploding_rows():
            yield (1.0, 2.0)
            raise RuntimeError("boom")

        with pytest.raises(RuntimeError):
            write_csv(target, ("a", "b"), exploding_rows())
        assert not target.exists()
        assert list(tmp_path.iterdir()) == []


class TestMatrixDump:
    def test_single_band_operator_round_trip(self, tmp_path):
        a, _, _ = ladder_operators(5)
        A, _ = deform_ladder(a, DeformationFunction(1.0, 1.0))
        path = dump_matrix(A, tmp_path / "op.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "# matrix dim=5"
        assert lines[1] == "i,j,re,im"
        entries = [line.split(",") for line in lines[2:]]
        assert len(entries) == 4  # one superdiagonal band
        rebuilt = np.zeros((5, 5), dtype=complex)
        for i, j, re, im in entries:
            rebuilt[int(i), int(j)] = float(re) + 1j * float(im)
        # ten significant digits in the file format
        assert np.abs(rebuilt - A).max() < 1e-9


class TestStateDump:
    def test_coefficient_rows(self, tmp_path):
        state = build_nlcs(DeformationFunction(0.0, 1.0), 0.6 + 0.4j)
        path = write_state(state, tmp_path / "state.csv")
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# state dim=")
        assert lines[1] == "n,re_c,im_c"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == state.dim
        got = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
        assert np.abs(got - state.coefficients).max() < 1e-9
