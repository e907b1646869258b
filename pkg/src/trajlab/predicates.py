"""Per-timestep indicator functions and subtask success/failure predicates.

All comparisons on the success side are inclusive; failure is a strict
crossing of the subtask's cumulative-force limit. Velocity bounds use
absolute values: a robot reversing slowly is static.
"""
from __future__ import annotations

import math

from .errors import MissingArticulation, RequiredFieldNaN
from .model import SubtaskKind, TimestepRecord, TrajectoryHeader
from .thresholds import Thresholds


def j_max(q, r) -> float:
    """Largest absolute joint deviation between a position vector and rest."""
    if len(q) != len(r):
        raise ValueError(f"joint vector length mismatch: {len(q)} vs {len(r)}")
    return max((abs(a - b) for a, b in zip(q, r)), default=0.0)


def is_static(rec: TimestepRecord, th: Thresholds) -> bool:
    return (max(abs(v) for v in rec.qd_arm) <= th.static_qd_arm
            and abs(rec.v_base_x) <= th.static_v_base
            and abs(rec.v_base_y) <= th.static_v_base
            and abs(rec.omega_base) <= th.static_omega)


def _require(value: float, name: str) -> float:
    if math.isnan(value):
        raise RequiredFieldNaN(f"field {name} is NaN but required by this subtask")
    return value


def _art_bounds(hdr: TrajectoryHeader):
    if not hdr.has_articulation:
        raise MissingArticulation(
            f"{hdr.subtask_kind.value} predicate needs an articulation")
    return hdr.art_qmin, hdr.art_qmax


def is_open(a_q: float, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    qmin, qmax = _art_bounds(hdr)
    frac = th.open_frac(hdr.articulation_kind)
    return _require(a_q, "art_q") >= frac * (qmax - qmin) + qmin


def is_closed(a_q: float, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    qmin, qmax = _art_bounds(hdr)
    return _require(a_q, "art_q") <= th.close_frac * (qmax - qmin) + qmin


def slightly_opened(a_q: float, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    qmin, qmax = _art_bounds(hdr)
    return _require(a_q, "art_q") >= th.slightly_open_frac * (qmax - qmin) + qmin


def slightly_closed(a_q: float, a_q0: float, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    qmin, qmax = _art_bounds(hdr)
    return _require(a_q, "art_q") < a_q0 - th.slightly_close_frac * (qmax - qmin)


def _at_rest(rec: TimestepRecord, hdr: TrajectoryHeader, th: Thresholds,
             j_arm_limit: float, check_torso: bool) -> bool:
    if rec.dist_ee_rest > th.rest_radius:
        return False
    if j_max(rec.q_arm, hdr.rest_arm) > j_arm_limit:
        return False
    if check_torso and abs(rec.q_tor - hdr.rest_tor) > th.j_tor_max:
        return False
    return is_static(rec, th)


def success_step(rec: TimestepRecord, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    """Per-step subtask success condition."""
    kind = hdr.subtask_kind
    limit = th.collision_limit(kind)
    if rec.cum_robot_force > limit:
        return False
    if kind == SubtaskKind.Pick:
        return (rec.grasped
                and _at_rest(rec, hdr, th, th.j_arm_pick, check_torso=False))
    if kind == SubtaskKind.Place:
        return (not rec.grasped
                and _require(rec.dist_obj_goal, "dist_obj_goal") <= th.goal_radius
                and _at_rest(rec, hdr, th, th.j_arm_other, check_torso=True))
    if kind == SubtaskKind.Open:
        return (is_open(rec.art_q, hdr, th)
                and _at_rest(rec, hdr, th, th.j_arm_other, check_torso=True))
    if kind == SubtaskKind.Close:
        return (is_closed(rec.art_q, hdr, th)
                and _at_rest(rec, hdr, th, th.j_arm_other, check_torso=True))
    raise ValueError(f"unknown subtask kind {kind}")


def failure_step(rec: TimestepRecord, hdr: TrajectoryHeader, th: Thresholds) -> bool:
    """Cumulative collision force strictly above the subtask limit."""
    return rec.cum_robot_force > th.collision_limit(hdr.subtask_kind)
