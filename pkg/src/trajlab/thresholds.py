"""Threshold table parameterizing all per-timestep predicates.

Thresholds are data, not constants: a trajectory header may carry an
override, and the CLI accepts a JSON file via --thresholds.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Thresholds:
    rest_radius: float = 0.05        # m, end-effector within rest position
    goal_radius: float = 0.15        # m, object within goal
    j_arm_pick: float = 0.6          # max arm joint deviation, Pick
    j_arm_other: float = 0.2         # max arm joint deviation, Place/Open/Close
    j_tor_max: float = 0.01          # torso joint deviation
    static_qd_arm: float = 0.2       # joint units/s
    static_v_base: float = 0.05      # m/s
    static_omega: float = 0.05       # rad/s
    coll_pick: float = 5000.0        # N, cumulative force limit
    coll_place: float = 7500.0
    coll_artic: float = 10000.0
    open_frac_fridge: float = 0.75
    open_frac_drawer: float = 0.9
    close_frac: float = 0.01
    slightly_open_frac: float = 0.1
    slightly_close_frac: float = 0.05
    contact_eps: float = 1e-6        # N, "nonzero" pairwise force

    def __post_init__(self):
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if not v > 0:
                raise ValueError(f"threshold {f.name} must be positive, got {v}")
        for name in ("open_frac_fridge", "open_frac_drawer", "close_frac",
                     "slightly_open_frac", "slightly_close_frac"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise ValueError(f"threshold {name} must be in (0,1), got {v}")

    def collision_limit(self, subtask_kind) -> float:
        from .model import SubtaskKind
        return {
            SubtaskKind.Pick: self.coll_pick,
            SubtaskKind.Place: self.coll_place,
            SubtaskKind.Open: self.coll_artic,
            SubtaskKind.Close: self.coll_artic,
        }[SubtaskKind(subtask_kind)]

    def open_frac(self, articulation_kind) -> float:
        from .model import ArticulationKind
        kind = ArticulationKind(articulation_kind)
        if kind == ArticulationKind.Fridge:
            return self.open_frac_fridge
        if kind == ArticulationKind.Drawer:
            return self.open_frac_drawer
        raise ValueError(f"no open fraction for articulation kind {kind}")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Thresholds":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown threshold fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json_file(cls, path) -> "Thresholds":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


DEFAULT_THRESHOLDS = Thresholds()
