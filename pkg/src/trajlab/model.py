"""Canonical data model for episode logs.

A trajectory is a header (what was attempted, against which target, under
which limits) plus an ordered list of per-control-step records of derived
physical scalars. Distances and force magnitudes are precomputed by the
exporter, so this layer is frame- and simulator-agnostic.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import InvariantViolation
from .thresholds import Thresholds


class Task(str, Enum):
    TidyHouse = "TidyHouse"
    PrepareGroceries = "PrepareGroceries"
    SetTable = "SetTable"
    Custom = "Custom"


class SubtaskKind(str, Enum):
    Pick = "Pick"
    Place = "Place"
    Open = "Open"
    Close = "Close"


class Split(str, Enum):
    Train = "Train"
    Val = "Val"
    Other = "Other"


class ArticulationKind(str, Enum):
    NONE = "None"
    Fridge = "Fridge"
    Drawer = "Drawer"


def f32(x: float) -> float:
    """Round a float to the nearest binary32 value (kept as Python float)."""
    return struct.unpack("<f", struct.pack("<f", x))[0]


@dataclass
class TrajectoryHeader:
    episode_id: str
    task: Task = Task.Custom
    subtask_kind: SubtaskKind = SubtaskKind.Pick
    split: Split = Split.Other
    policy_tag: str = ""
    target_id: str = ""
    articulation_kind: ArticulationKind = ArticulationKind.NONE
    art_qmin: float = float("nan")
    art_qmax: float = float("nan")
    arm_dof: int = 7
    rest_arm: tuple = ()
    rest_tor: float = 0.0
    control_freq: float = 20.0
    thresholds_override: Optional[Thresholds] = None
    format_version: int = 1

    def __post_init__(self):
        self.task = Task(self.task)
        self.subtask_kind = SubtaskKind(self.subtask_kind)
        self.split = Split(self.split)
        self.articulation_kind = ArticulationKind(self.articulation_kind)
        if not self.rest_arm:
            self.rest_arm = tuple(0.0 for _ in range(self.arm_dof))
        self.rest_arm = tuple(float(v) for v in self.rest_arm)

    def __eq__(self, other) -> bool:
        # dict form omits the NaN articulation bounds of non-articulated
        # headers, giving NaN-tolerant equality
        if not isinstance(other, TrajectoryHeader):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    @property
    def has_articulation(self) -> bool:
        return self.articulation_kind != ArticulationKind.NONE

    def thresholds(self, base: Optional[Thresholds] = None) -> Thresholds:
        if self.thresholds_override is not None:
            return self.thresholds_override
        return base if base is not None else Thresholds()

    def to_dict(self) -> dict:
        d = {
            "format_version": self.format_version,
            "episode_id": self.episode_id,
            "task": self.task.value,
            "subtask_kind": self.subtask_kind.value,
            "split": self.split.value,
            "policy_tag": self.policy_tag,
            "target_id": self.target_id,
            "articulation_kind": self.articulation_kind.value,
            "arm_dof": self.arm_dof,
            "rest_arm": list(self.rest_arm),
            "rest_tor": self.rest_tor,
            "control_freq": self.control_freq,
        }
        if self.has_articulation:
            d["art_qmin"] = self.art_qmin
            d["art_qmax"] = self.art_qmax
        if self.thresholds_override is not None:
            d["thresholds_override"] = self.thresholds_override.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TrajectoryHeader":
        override = d.get("thresholds_override")
        return cls(
            episode_id=d["episode_id"],
            task=d.get("task", "Custom"),
            subtask_kind=d["subtask_kind"],
            split=d.get("split", "Other"),
            policy_tag=d.get("policy_tag", ""),
            target_id=d.get("target_id", ""),
            articulation_kind=d.get("articulation_kind", "None"),
            art_qmin=d.get("art_qmin", float("nan")),
            art_qmax=d.get("art_qmax", float("nan")),
            arm_dof=d.get("arm_dof", 7),
            rest_arm=tuple(d.get("rest_arm", ())),
            rest_tor=d.get("rest_tor", 0.0),
            control_freq=d.get("control_freq", 20.0),
            thresholds_override=Thresholds.from_dict(override) if override else None,
            format_version=d.get("format_version", 1),
        )


RECORD_FIELDS = (
    "t", "q_arm", "qd_arm", "q_tor", "v_base_x", "v_base_y", "omega_base",
    "dist_ee_rest", "dist_obj_goal", "force_ee_target", "cum_robot_force",
    "art_q", "grasped",
)


@dataclass(slots=True)
class TimestepRecord:
    t: int
    q_arm: tuple
    qd_arm: tuple
    q_tor: float
    v_base_x: float
    v_base_y: float
    omega_base: float
    dist_ee_rest: float
    dist_obj_goal: float      # NaN when subtask has no goal
    force_ee_target: float    # NaN for Place
    cum_robot_force: float
    art_q: float              # NaN when articulation_kind is None
    grasped: bool

    def quantized(self) -> "TimestepRecord":
        """Copy with every float field rounded to binary32 precision."""
        return TimestepRecord(
            t=self.t,
            q_arm=tuple(f32(v) for v in self.q_arm),
            qd_arm=tuple(f32(v) for v in self.qd_arm),
            q_tor=f32(self.q_tor),
            v_base_x=f32(self.v_base_x),
            v_base_y=f32(self.v_base_y),
            omega_base=f32(self.omega_base),
            dist_ee_rest=f32(self.dist_ee_rest),
            dist_obj_goal=f32(self.dist_obj_goal),
            force_ee_target=f32(self.force_ee_target),
            cum_robot_force=f32(self.cum_robot_force),
            art_q=f32(self.art_q),
            grasped=bool(self.grasped),
        )

    def __eq__(self, other) -> bool:
        # NaN-aware: NaN fields (absent channels) compare equal to NaN, so
        # round-tripped records are equal to their source.
        if not isinstance(other, TimestepRecord):
            return NotImplemented

        def same(a, b):
            if isinstance(a, tuple):
                return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
            if isinstance(a, float) and isinstance(b, float):
                return a == b or (math.isnan(a) and math.isnan(b))
            return a == b

        return all(same(getattr(self, f), getattr(other, f))
                   for f in RECORD_FIELDS)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "q_arm": list(self.q_arm),
            "qd_arm": list(self.qd_arm),
            "q_tor": self.q_tor,
            "v_base_x": self.v_base_x,
            "v_base_y": self.v_base_y,
            "omega_base": self.omega_base,
            "dist_ee_rest": self.dist_ee_rest,
            "dist_obj_goal": self.dist_obj_goal,
            "force_ee_target": self.force_ee_target,
            "cum_robot_force": self.cum_robot_force,
            "art_q": self.art_q,
            "grasped": self.grasped,
        }


@dataclass
class Trajectory:
    header: TrajectoryHeader
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)


@dataclass(frozen=True)
class Finding:
    severity: str   # "error" | "warning"
    message: str

    @property
    def is_error(self) -> bool:
        return self.severity == "error"


def validate(traj: Trajectory) -> list:
    """Structural validation. Returns findings; empty iff all hard invariants hold.

    Monotonicity of cum_robot_force is a hard error; art_q outside
    [art_qmin, art_qmax] is only a warning.
    """
    findings = []
    hdr = traj.header

    def err(msg):
        findings.append(Finding("error", msg))

    def warn(msg):
        findings.append(Finding("warning", msg))

    if hdr.arm_dof < 1:
        err(f"arm_dof must be >= 1, got {hdr.arm_dof}")
    if len(hdr.rest_arm) != hdr.arm_dof:
        err(f"rest_arm length {len(hdr.rest_arm)} != arm_dof {hdr.arm_dof}")
    if hdr.has_articulation:
        if not hdr.art_qmin < hdr.art_qmax:
            err(f"articulation bounds invalid: qmin={hdr.art_qmin} qmax={hdr.art_qmax}")
    elif hdr.subtask_kind in (SubtaskKind.Open, SubtaskKind.Close):
        err(f"{hdr.subtask_kind.value} trajectory requires an articulation")

    if len(traj.records) < 2:
        err(f"trajectory needs at least 2 records, got {len(traj.records)}")

    prev_cum = None
    for i, rec in enumerate(traj.records):
        if rec.t != i:
            err(f"record {i} has step index t={rec.t}, expected {i}")
        if len(rec.q_arm) != hdr.arm_dof or len(rec.qd_arm) != hdr.arm_dof:
            err(f"record {i} arm vectors do not match arm_dof {hdr.arm_dof}")
        if rec.cum_robot_force < 0 or math.isnan(rec.cum_robot_force):
            err(f"cumulative force invalid at t={i}: {rec.cum_robot_force}")
        elif prev_cum is not None and rec.cum_robot_force < prev_cum:
            err(f"cumulative force decreased at t={i}")
        prev_cum = rec.cum_robot_force
        if rec.dist_ee_rest < 0 or math.isnan(rec.dist_ee_rest):
            err(f"dist_ee_rest invalid at t={i}: {rec.dist_ee_rest}")
        if not math.isnan(rec.dist_obj_goal) and rec.dist_obj_goal < 0:
            err(f"dist_obj_goal negative at t={i}: {rec.dist_obj_goal}")
        if not math.isnan(rec.force_ee_target) and rec.force_ee_target < 0:
            err(f"force_ee_target negative at t={i}: {rec.force_ee_target}")
        if hdr.has_articulation and not math.isnan(rec.art_q):
            if not (hdr.art_qmin <= rec.art_q <= hdr.art_qmax):
                warn(f"art_q out of [qmin, qmax] at t={i}: {rec.art_q}")

    return findings


def check_valid(traj: Trajectory) -> None:
    """Raise InvariantViolation if any hard error is present."""
    errors = [f for f in validate(traj) if f.is_error]
    if errors:
        raise InvariantViolation("; ".join(f.message for f in errors[:5]))
