"""Line-delimited text interchange for trajectories.

Line 1 is {"header": {...}}; each subsequent line is one record as a flat
JSON object. Numeric fields are printed at full float64 repr precision;
since every stored value is binary32-representable, text -> binary -> text
round trips bit-exactly.
"""
from __future__ import annotations

import json
import math

from .errors import ParseError
from .model import RECORD_FIELDS, TimestepRecord, Trajectory, TrajectoryHeader, check_valid

_REQUIRED = [f for f in RECORD_FIELDS]


def write_text(traj: Trajectory) -> list:
    """Serialize to interchange lines (no trailing newlines)."""
    check_valid(traj)
    lines = [json.dumps({"header": traj.header.to_dict()}, sort_keys=True)]
    for rec in traj.records:
        lines.append(json.dumps(rec.to_dict(), sort_keys=True))
    return lines


def read_text(source) -> Trajectory:
    """Parse interchange lines. `source` is any iterable of lines."""
    header = None
    records = []
    line_no = 0
    for raw in source:
        line_no += 1
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except ValueError as e:
            raise ParseError(f"invalid JSON: {e}", line_no) from e
        if header is None:
            if "header" not in obj:
                raise ParseError('first line must be {"header": {...}}', line_no)
            try:
                header = TrajectoryHeader.from_dict(obj["header"])
            except (KeyError, ValueError) as e:
                raise ParseError(f"bad header: {e}", line_no) from e
            continue
        missing = [f for f in _REQUIRED if f not in obj]
        if missing:
            raise ParseError(f"record missing field(s) {missing}", line_no)
        try:
            records.append(TimestepRecord(
                t=int(obj["t"]),
                q_arm=tuple(float(v) for v in obj["q_arm"]),
                qd_arm=tuple(float(v) for v in obj["qd_arm"]),
                q_tor=float(obj["q_tor"]),
                v_base_x=float(obj["v_base_x"]),
                v_base_y=float(obj["v_base_y"]),
                omega_base=float(obj["omega_base"]),
                dist_ee_rest=float(obj["dist_ee_rest"]),
                dist_obj_goal=float(obj["dist_obj_goal"]),
                force_ee_target=float(obj["force_ee_target"]),
                cum_robot_force=float(obj["cum_robot_force"]),
                art_q=float(obj["art_q"]),
                grasped=bool(obj["grasped"]),
            ))
        except (TypeError, ValueError) as e:
            raise ParseError(f"bad record value: {e}", line_no) from e
    if header is None:
        raise ParseError("empty stream, no header line", line_no or 1)
    return Trajectory(header=header, records=records)


def write_text_file(traj: Trajectory, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for line in write_text(traj):
            f.write(line + "\n")


def read_text_file(path) -> Trajectory:
    with open(path, "r", encoding="utf-8") as f:
        return read_text(f)
