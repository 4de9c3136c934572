import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ehmin.models.errors import StateFileError
from ehmin.models.schemas import TraceRecord
from ehmin.services import fermion_service, io_service, state_service
from tests.helpers import fermion_payload, state_payload


class TestStateFiles:
    def test_load(self, write_json, bell):
        path = write_json("bell.json", state_payload(bell))
        s = io_service.load_state(path)
        assert s.dims == (2, 2)
        assert_allclose(s.amplitudes, bell.amplitudes)

    def test_write_then_load(self, tmp_path):
        s = state_service.random_state([2, 3], seed=4)
        path = tmp_path / "state.json"
        io_service.write_state(s, path)
        assert_allclose(io_service.load_state(path).amplitudes, s.amplitudes)

    def test_dump_is_deterministic(self):
        s = state_service.random_state([2, 2, 2], seed=7)
        assert io_service.dump_state(s) == io_service.dump_state(
            state_service.random_state([2, 2, 2], seed=7)
        )
        assert json.loads(io_service.dump_state(s))["dims"] == [2, 2, 2]

    def test_missing_file(self, tmp_path):
        with pytest.raises(StateFileError):
            io_service.load_state(tmp_path / "missing.json")

    def test_trailing_commas_are_repaired(self, tmp_path):
        path = tmp_path / "sloppy.json"
        path.write_text('{"dims": [2], "amplitudes": [[1, 0], [0, 0],],}')
        s = io_service.load_state(path)
        assert_allclose(s.amplitudes, [1, 0])

    def test_wrong_schema(self, write_json):
        path = write_json("bad.json", {"dims": [2, 2]})
        with pytest.raises(StateFileError):
            io_service.load_state(path)

    def test_small_dimension(self, write_json):
        path = write_json("bad.json", {"dims": [1], "amplitudes": [[1, 0]]})
        with pytest.raises(StateFileError):
            io_service.load_state(path)

    def test_unnormalized_amplitudes(self, write_json):
        path = write_json("bad.json", {"dims": [2], "amplitudes": [[1, 0], [1, 0]]})
        with pytest.raises(StateFileError):
            io_service.load_state(path)

    def test_wrong_amplitude_count(self, write_json):
        path = write_json("bad.json", {"dims": [2, 2], "amplitudes": [[1, 0]]})
        with pytest.raises(StateFileError):
            io_service.load_state(path)


class TestFermionFiles:
    def test_load(self, write_json):
        f = fermion_service.random_fermion_state(4, 2, seed=3)
        path = write_json("f.json", fermion_payload(f))
        loaded = io_service.load_fermion(path)
        assert (loaded.p, loaded.n) == (4, 2)
        assert_allclose(loaded.amplitudes, f.amplitudes)

    def test_write(self, tmp_path):
        f = fermion_service.random_fermion_state(5, 3, seed=1)
        path = tmp_path / "f.json"
        io_service.write_fermion(f, path)
        assert json.loads(path.read_text())["p"] == 5

    def test_bad_order(self, write_json):
        path = write_json("f.json", {"p": 2, "n": 3, "amplitudes": [[1, 0]]})
        with pytest.raises(StateFileError):
            io_service.load_fermion(path)


class TestTrace:
    def test_json_lines(self, tmp_path):
        records = [
            TraceRecord(epoch=e, island=i, best=1.0 / (e + 1), mean=2.0)
            for e in range(3)
            for i in range(2)
        ]
        path = tmp_path / "trace.jsonl"
        io_service.write_trace(records, path)

        lines = path.read_text().splitlines()
        assert len(lines) == 6
        assert json.loads(lines[0]) == {
            "epoch": 0,
            "island": 0,
            "best": 1.0,
            "mean": 2.0,
        }
        frame = io_service.read_trace(path)
        assert list(frame.columns) == ["epoch", "island", "best", "mean"]
        assert np.allclose(frame["best"], [1.0, 1.0, 0.5, 0.5, 1 / 3, 1 / 3])


def test_unwritable_state_path(tmp_path):
    s = state_service.basis_state([2])
    with pytest.raises(StateFileError):
        io_service.write_state(s, tmp_path / "missing" / "s.json")
