import io
import math
import struct

import pytest

from trajlab import (BadMagic, ParseError, SubtaskKind, TruncatedFile,
                     UnsupportedVersion, fuzz, read_binary, read_text,
                     read_text_file, record_size, write_binary,
                     write_binary_file, write_text, write_text_file)
from trajlab.io_binary import read_binary_file


def _sample(seed=0, kind=SubtaskKind.Pick):
    return fuzz(seed, kind)


def test_record_size_dof7_is_100_bytes():
    assert record_size(7) == 100


def test_binary_roundtrip_bit_exact(tmp_path):
    traj = _sample(11)
    path = tmp_path / "a.trjl"
    write_binary_file(traj, path)
    again = read_binary_file(path)
    assert again.header == traj.header
    assert again.records == traj.records
    # and writing again yields identical bytes
    path2 = tmp_path / "b.trjl"
    write_binary_file(again, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_binary_bad_magic():
    with pytest.raises(BadMagic):
        read_binary(io.BytesIO(b"NOPE" + b"\x00" * 20))
    with pytest.raises(BadMagic):
        read_binary(io.BytesIO(b"TR"))


def test_binary_unsupported_version():
    buf = io.BytesIO()
    write_binary(_sample(1), buf)
    data = bytearray(buf.getvalue())
    struct.pack_into("<H", data, 4, 9)  # bump version field
    with pytest.raises(UnsupportedVersion):
        read_binary(io.BytesIO(bytes(data)))


def test_binary_truncation_detected():
    buf = io.BytesIO()
    write_binary(_sample(2), buf)
    data = buf.getvalue()
    for cut in (10, len(data) - 1, len(data) - 50):
        with pytest.raises(TruncatedFile):
            read_binary(io.BytesIO(data[:cut]))


def test_text_roundtrip(tmp_path):
    traj = _sample(3, SubtaskKind.Place)
    lines = write_text(traj)
    again = read_text(lines)
    assert again.header == traj.header
    assert again.records == traj.records


def test_text_binary_text_preserves_values(tmp_path):
    traj = _sample(4, SubtaskKind.Open)
    tpath = tmp_path / "a.txt"
    write_text_file(traj, tpath)
    mid = read_text_file(tpath)
    bpath = tmp_path / "a.trjl"
    write_binary_file(mid, bpath)
    back = read_binary_file(bpath)
    assert back.records == traj.records


def test_text_nan_fields_survive():
    traj = _sample(5)  # Pick: dist_obj_goal and art_q are NaN
    again = read_text(write_text(traj))
    assert math.isnan(again.records[0].dist_obj_goal)
    assert math.isnan(again.records[0].art_q)


def test_text_missing_field_names_field_and_line():
    traj = _sample(6)
    lines = write_text(traj)
    import json
    rec = json.loads(lines[2])
    del rec["q_tor"]
    lines[2] = json.dumps(rec)
    with pytest.raises(ParseError) as exc:
        read_text(lines)
    assert "q_tor" in str(exc.value)
    assert exc.value.line_no == 3


def test_text_invalid_json_reports_line():
    with pytest.raises(ParseError) as exc:
        read_text(['{"header": {"episode_id": "e", "subtask_kind": "Pick"}}',
                   "{broken"])
    assert exc.value.line_no == 2


def test_text_empty_stream():
    with pytest.raises(ParseError):
        read_text([])


def test_text_first_line_must_be_header():
    with pytest.raises(ParseError) as exc:
        read_text(['{"t": 0}'])
    assert "header" in str(exc.value)
