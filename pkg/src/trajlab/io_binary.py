"""TRJL1 binary container: fixed-size little-endian records behind a JSON header.

Layout: magic "TRJL" | u16 version=1 | u16 flags=0 | u32 header_len |
header JSON (UTF-8) | u64 n_records | n_records fixed-size records.
Record: u32 t | f32 q_arm[dof] | f32 qd_arm[dof] | f32 q_tor, v_base_x,
v_base_y, omega_base, dist_ee_rest, dist_obj_goal, force_ee_target,
cum_robot_force, art_q | u8 grasped | u8 pad[3].
"""
from __future__ import annotations

import json
import struct

from .errors import BadMagic, HeaderParseError, TruncatedFile, UnsupportedVersion
from .model import TimestepRecord, Trajectory, TrajectoryHeader, check_valid

MAGIC = b"TRJL"
VERSION = 1
_PREFIX = struct.Struct("<4sHHI")
_NREC = struct.Struct("<Q")


def _record_struct(arm_dof: int) -> struct.Struct:
    return struct.Struct(f"<I{2 * arm_dof + 9}fB3x")


def record_size(arm_dof: int) -> int:
    return _record_struct(arm_dof).size


def write_binary(traj: Trajectory, sink) -> int:
    """Serialize a validated trajectory. Returns the byte count written."""
    check_valid(traj)
    hdr_json = json.dumps(traj.header.to_dict(), sort_keys=True,
                          separators=(",", ":")).encode("utf-8")
    rs = _record_struct(traj.header.arm_dof)
    out = bytearray()
    out += _PREFIX.pack(MAGIC, VERSION, 0, len(hdr_json))
    out += hdr_json
    out += _NREC.pack(len(traj.records))
    for rec in traj.records:
        out += rs.pack(rec.t, *rec.q_arm, *rec.qd_arm, rec.q_tor,
                       rec.v_base_x, rec.v_base_y, rec.omega_base,
                       rec.dist_ee_rest, rec.dist_obj_goal,
                       rec.force_ee_target, rec.cum_robot_force,
                       rec.art_q, 1 if rec.grasped else 0)
    sink.write(bytes(out))
    return len(out)


def read_binary(source) -> Trajectory:
    """Parse a TRJL1 byte stream. Inverse of write_binary, bit-exact."""
    data = source.read()
    if len(data) < _PREFIX.size:
        if data[:4] == MAGIC:
            raise TruncatedFile("stream shorter than container prefix")
        raise BadMagic("stream shorter than container prefix")
    magic, version, _flags, header_len = _PREFIX.unpack_from(data, 0)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"container version {version}")
    off = _PREFIX.size
    if len(data) < off + header_len + _NREC.size:
        raise TruncatedFile("stream ends inside header region")
    try:
        hdr_dict = json.loads(data[off:off + header_len].decode("utf-8"))
        header = TrajectoryHeader.from_dict(hdr_dict)
    except (ValueError, KeyError, UnicodeDecodeError) as e:
        raise HeaderParseError(str(e)) from e
    off += header_len
    (n_records,) = _NREC.unpack_from(data, off)
    off += _NREC.size
    rs = _record_struct(header.arm_dof)
    if len(data) < off + n_records * rs.size:
        raise TruncatedFile(
            f"record region needs {n_records * rs.size} bytes, "
            f"have {len(data) - off}")
    dof = header.arm_dof
    records = []
    for _ in range(n_records):
        vals = rs.unpack_from(data, off)
        off += rs.size
        records.append(TimestepRecord(
            t=vals[0],
            q_arm=vals[1:1 + dof],
            qd_arm=vals[1 + dof:1 + 2 * dof],
            q_tor=vals[1 + 2 * dof],
            v_base_x=vals[2 + 2 * dof],
            v_base_y=vals[3 + 2 * dof],
            omega_base=vals[4 + 2 * dof],
            dist_ee_rest=vals[5 + 2 * dof],
            dist_obj_goal=vals[6 + 2 * dof],
            force_ee_target=vals[7 + 2 * dof],
            cum_robot_force=vals[8 + 2 * dof],
            art_q=vals[9 + 2 * dof],
            grasped=bool(vals[10 + 2 * dof]),
        ))
    return Trajectory(header=header, records=records)


def write_binary_file(traj: Trajectory, path) -> int:
    with open(path, "wb") as f:
        return write_binary(traj, f)


def read_binary_file(path) -> Trajectory:
    with open(path, "rb") as f:
        return read_binary(f)
