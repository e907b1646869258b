"""Synthetic trajectory generation.

`realize` turns a prescribed event script into a physically consistent
signal trace whose extracted event list equals the script. `fuzz` draws a
random feasible script and realizes it. Signals are piecewise-constant
holds with single-step transitions at event times: the simplest
construction whose edges are unambiguous. Rest posture (the full success
conjunction) is entered exactly at Success events and broken by any later
scripted event, so a trajectory whose final label is a persistent-success
mode still satisfies the success predicate at its last record.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InfeasibleScript
from .events import EventKind
from .model import (ArticulationKind, SubtaskKind, Task, TimestepRecord,
                    Trajectory, TrajectoryHeader)
from .thresholds import Thresholds

NAN = float("nan")
E = EventKind


@dataclass
class NoiseModel:
    """Clipped-Gaussian initial-state perturbations."""
    arm_std: float = 0.1
    arm_clip: float = 0.2
    base_std: float = 0.1
    base_clip: float = 0.2
    rot_std: float = 0.25
    rot_clip: float = 0.5
    seed: int = 0


def sample_noise(model: NoiseModel, arm_dof: int = 7, rng: Optional[random.Random] = None):
    """Draw one (arm perturbation vector, base xy, base rotation) triple."""
    rng = rng or random.Random(model.seed)

    def clipped(std, lim):
        return max(-lim, min(lim, rng.gauss(0.0, std)))

    arm = tuple(clipped(model.arm_std, model.arm_clip) for _ in range(arm_dof))
    base = (clipped(model.base_std, model.base_clip),
            clipped(model.base_std, model.base_clip))
    rot = clipped(model.rot_std, model.rot_clip)
    return arm, base, rot


@dataclass
class ScriptStep:
    kind: EventKind
    gap: int = 2  # steps since the previous event (>= 1)


@dataclass
class EventScript:
    subtask_kind: SubtaskKind
    steps: list = field(default_factory=list)
    tail: int = 3                      # hold steps after the last event
    initial_grasped: bool = False
    initial_contact: bool = False      # force_ee_target > 0 at t=0
    initial_dist_obj_goal: float = 0.5
    initial_art_level: str = "low"     # Open: low|slight|open; Close: high|slight|closed
    articulation_kind: ArticulationKind = ArticulationKind.Fridge
    episode_id: str = "synth-0"
    arm_dof: int = 7

    @classmethod
    def from_dict(cls, d: dict) -> "EventScript":
        return cls(
            subtask_kind=SubtaskKind(d["subtask"]),
            steps=[ScriptStep(EventKind(s["kind"]), int(s.get("gap", 2)))
                   for s in d.get("events", [])],
            tail=int(d.get("tail", 3)),
            initial_grasped=bool(d.get("initial_grasped", False)),
            initial_contact=bool(d.get("initial_contact", False)),
            initial_dist_obj_goal=float(d.get("initial_dist_obj_goal", 0.5)),
            initial_art_level=d.get("initial_art_level", "low"),
            articulation_kind=ArticulationKind(d.get("articulation_kind", "Fridge")),
            episode_id=d.get("episode_id", "synth-0"),
            arm_dof=int(d.get("arm_dof", 7)),
        )


_ART_BOUNDS = {ArticulationKind.Fridge: (0.0, 1.6),
               ArticulationKind.Drawer: (0.0, 0.5)}


class _Realizer:
    """Stepwise signal constructor for one script."""

    def __init__(self, script: EventScript, seed: int, th: Thresholds):
        self.s = script
        self.th = th
        self.rng = random.Random(seed)
        kind = script.subtask_kind
        self.kind = kind
        self.has_art = kind in (SubtaskKind.Open, SubtaskKind.Close)
        self.has_goal = kind == SubtaskKind.Place
        self.has_force = kind != SubtaskKind.Place
        self.limit = th.collision_limit(kind)

        if self.has_art:
            self.qmin, self.qmax = _ART_BOUNDS[script.articulation_kind]
            rng_span = self.qmax - self.qmin
            ofrac = th.open_frac(script.articulation_kind)
            self.open_thresh = ofrac * rng_span + self.qmin
            self.closed_thresh = th.close_frac * rng_span + self.qmin
            self.slight_open_thresh = th.slightly_open_frac * rng_span + self.qmin
            if kind == SubtaskKind.Open:
                levels = {"low": self.qmin,
                          "slight": (self.slight_open_thresh + self.open_thresh) / 2,
                          "open": (self.open_thresh + self.qmax) / 2}
                if script.initial_art_level not in levels:
                    raise InfeasibleScript(
                        f"initial art level {script.initial_art_level!r} "
                        f"invalid for {kind.value}")
                self.levels = levels
                self.art = levels[script.initial_art_level]
                self.art_level = script.initial_art_level
            else:
                # The slightly-closed indicator is anchored at the episode's
                # initial articulation value a_q0, so level geometry is
                # script-dependent: high = fully open, slight = partially
                # open, closed = shut at t=0.
                starts = {"high": self.qmax,
                          "slight": self.qmin + 0.3 * rng_span,
                          "closed": self.qmin}
                if script.initial_art_level not in starts:
                    raise InfeasibleScript(
                        f"initial art level {script.initial_art_level!r} "
                        f"invalid for {kind.value}")
                self.a_q0 = starts[script.initial_art_level]
                self.sc_thresh = self.a_q0 - th.slightly_close_frac * rng_span
                self.band_valid = self.sc_thresh > self.closed_thresh
                self.art = self.a_q0
                # art_level for Close: "open" (indicator off), "slight"
                # (indicator on, not closed), "closed"
                self.art_level = ("closed" if script.initial_art_level == "closed"
                                  else "open")
        else:
            self.art = NAN

        self.grasped = script.initial_grasped
        self.force = 1.2 if (self.has_force and script.initial_contact) else 0.0
        if kind == SubtaskKind.Pick and self.grasped and not script.initial_contact:
            raise InfeasibleScript("Pick cannot start grasped without contact force")
        self.dist = script.initial_dist_obj_goal if self.has_goal else NAN
        self.at_rest = False
        self.cum = 0.0
        self.cols = {name: [] for name in (
            "q_arm", "qd_arm", "q_tor", "v_base_x", "v_base_y", "omega_base",
            "dist_ee_rest", "dist_obj_goal", "force_ee_target",
            "cum_robot_force", "art_q", "grasped")}

    # -- signal emission -------------------------------------------------

    def _emit(self):
        c = self.cols
        rng = self.rng
        if self.at_rest:
            c["q_arm"].append((0.0,) * self.s.arm_dof)
            c["qd_arm"].append((0.0,) * self.s.arm_dof)
            c["q_tor"].append(0.0)
            c["v_base_x"].append(0.0)
            c["v_base_y"].append(0.0)
            c["omega_base"].append(0.0)
            c["dist_ee_rest"].append(0.0)
        else:
            c["q_arm"].append(tuple(rng.uniform(-0.3, 0.3) for _ in range(self.s.arm_dof)))
            c["qd_arm"].append(tuple(rng.uniform(-0.4, 0.4) for _ in range(self.s.arm_dof)))
            c["q_tor"].append(rng.uniform(-0.05, 0.05))
            c["v_base_x"].append(rng.uniform(-0.2, 0.2))
            c["v_base_y"].append(rng.uniform(-0.2, 0.2))
            c["omega_base"].append(rng.uniform(-0.3, 0.3))
            # rest-distance above the radius keeps the success predicate off
            c["dist_ee_rest"].append(rng.uniform(0.2, 1.0))
        c["dist_obj_goal"].append(self.dist)
        c["force_ee_target"].append(self.force if self.has_force else NAN)
        c["cum_robot_force"].append(self.cum)
        c["art_q"].append(self.art)
        c["grasped"].append(self.grasped)

    def _advance_cum(self):
        # drift upward but never cross the limit on its own
        headroom = self.limit * 0.9 - self.cum
        if headroom > 0:
            self.cum += self.rng.uniform(0.0, headroom * 0.05)

    def _hold(self, steps: int):
        for _ in range(steps):
            self._advance_cum()
            self._emit()

    # -- event application ----------------------------------------------

    def _apply(self, kind: EventKind):
        from .events import EVENT_ORDER
        k, s = self.kind, self.s
        if kind not in EVENT_ORDER[k]:
            raise InfeasibleScript(f"event {kind.value} not in {k.value} alphabet")
        if kind == E.ExcessiveCollisions:
            if self.cum > self.limit:
                raise InfeasibleScript("collision limit already exceeded")
            self.cum = self.limit * 1.05
            return
        if kind == E.Success:
            ok = {
                SubtaskKind.Pick: lambda: self.grasped,
                SubtaskKind.Place: lambda: (not self.grasped
                                            and self.dist <= self.th.goal_radius),
                SubtaskKind.Open: lambda: self.art_level == "open",
                SubtaskKind.Close: lambda: self.art_level == "closed",
            }[k]()
            if not ok or self.at_rest:
                raise InfeasibleScript(f"Success not reachable from current state ({k.value})")
            self.at_rest = True
            return
        # every other event interrupts a held rest posture
        self.at_rest = False
        if kind == E.Contact:
            if not self.has_force:
                raise InfeasibleScript(f"Contact undefined for {k.value}")
            if self.force > 0:
                raise InfeasibleScript("Contact while already in contact")
            self.force = 1.2
        elif kind == E.Grasped:
            if self.grasped:
                raise InfeasibleScript("Grasped while already grasped")
            if k == SubtaskKind.Pick and self.force == 0:
                raise InfeasibleScript("Pick grasp requires contact force")
            self.grasped = True
        elif kind == E.Dropped:
            if not self.grasped:
                raise InfeasibleScript("Dropped while not grasped")
            self.grasped = False
            self.force = 0.0
        elif kind == E.ObjAtGoal:
            if self.dist <= self.th.goal_radius:
                raise InfeasibleScript("ObjAtGoal while already at goal")
            self.dist = self.rng.uniform(0.02, 0.12)
        elif kind == E.ObjLeftGoal:
            if self.dist > self.th.goal_radius:
                raise InfeasibleScript("ObjLeftGoal while not at goal")
            self.dist = self.rng.uniform(0.3, 0.8)
        elif kind == E.ReleasedAtGoal:
            if not self.grasped or self.dist > self.th.goal_radius:
                raise InfeasibleScript("ReleasedAtGoal needs grasp at goal")
            self.grasped = False
        elif kind == E.ReleasedOutsideGoal:
            if not self.grasped or self.dist <= self.th.goal_radius:
                raise InfeasibleScript("ReleasedOutsideGoal needs grasp outside goal")
            self.grasped = False
        elif kind == E.SlightlyOpened:
            if k != SubtaskKind.Open or self.art_level != "low":
                raise InfeasibleScript("SlightlyOpened from non-low articulation")
            self.art_level = "slight"
            self.art = self.levels["slight"]
        elif kind == E.Opened:
            if k != SubtaskKind.Open or self.art_level != "slight":
                raise InfeasibleScript("Opened requires slightly-open articulation")
            self.art_level = "open"
            self.art = self.levels["open"]
        elif kind == E.Closed and k == SubtaskKind.Open:
            if self.art_level != "open":
                raise InfeasibleScript("Closed (Open subtask) requires open articulation")
            self.art_level = "low"
            self.art = self.levels["low"]
        elif kind == E.SlightlyClosed:
            if self.art_level != "open":
                raise InfeasibleScript("SlightlyClosed needs a not-yet-closing articulation")
            if not self.band_valid:
                raise InfeasibleScript("slightly-closed band is empty for this start state")
            self.art_level = "slight"
            self.art = (self.sc_thresh + self.closed_thresh) / 2
        elif kind == E.Closed and k == SubtaskKind.Close:
            # jumping straight to closed would co-fire SlightlyClosed
            if self.art_level != "slight":
                raise InfeasibleScript("Closed requires slightly-closed articulation")
            self.art_level = "closed"
            self.art = self.qmin
        elif kind == E.Open and k == SubtaskKind.Close:
            if self.art_level != "closed":
                raise InfeasibleScript("Open (Close subtask) requires closed articulation")
            self.art_level = "open"
            self.art = self.a_q0 if self.a_q0 > self.closed_thresh else self.qmax
        else:
            raise InfeasibleScript(f"event {kind.value} not in {k.value} alphabet")

    def run(self) -> Trajectory:
        self._emit()  # t = 0
        for step in self.s.steps:
            if step.gap < 1:
                raise InfeasibleScript("event gap must be >= 1")
            self._hold(step.gap - 1)
            self._advance_cum()
            self._apply(step.kind)
            self._emit()
        self._hold(max(self.s.tail, 1 if not self.s.steps else 0))
        if len(self.cols["q_tor"]) < 2:
            self._hold(1)
        return self._build()

    def _build(self) -> Trajectory:
        c = self.cols
        n = len(c["q_tor"])
        f32col = lambda name: np.asarray(c[name], dtype=np.float32).astype(float).tolist()
        q_arm = np.asarray(c["q_arm"], dtype=np.float32).astype(float).tolist()
        qd_arm = np.asarray(c["qd_arm"], dtype=np.float32).astype(float).tolist()
        scal = {name: f32col(name) for name in (
            "q_tor", "v_base_x", "v_base_y", "omega_base", "dist_ee_rest",
            "dist_obj_goal", "force_ee_target", "cum_robot_force", "art_q")}
        records = [TimestepRecord(
            t=i, q_arm=tuple(q_arm[i]), qd_arm=tuple(qd_arm[i]),
            q_tor=scal["q_tor"][i], v_base_x=scal["v_base_x"][i],
            v_base_y=scal["v_base_y"][i], omega_base=scal["omega_base"][i],
            dist_ee_rest=scal["dist_ee_rest"][i],
            dist_obj_goal=scal["dist_obj_goal"][i],
            force_ee_target=scal["force_ee_target"][i],
            cum_robot_force=scal["cum_robot_force"][i],
            art_q=scal["art_q"][i], grasped=c["grasped"][i],
        ) for i in range(n)]
        hdr = TrajectoryHeader(
            episode_id=self.s.episode_id,
            task=Task.Custom,
            subtask_kind=self.kind,
            target_id="synthetic",
            articulation_kind=(self.s.articulation_kind if self.has_art
                               else ArticulationKind.NONE),
            art_qmin=self.qmin if self.has_art else NAN,
            art_qmax=self.qmax if self.has_art else NAN,
            arm_dof=self.s.arm_dof,
        )
        return Trajectory(header=hdr, records=records)


def realize(script: EventScript, seed: int = 0,
            th: Optional[Thresholds] = None) -> Trajectory:
    """Realize a script as a trajectory whose event list equals the script."""
    return _Realizer(script, seed, th or Thresholds()).run()


# -- random feasible scripts ---------------------------------------------


@dataclass
class FuzzConfig:
    max_events: int = 8
    max_gap: int = 4
    max_tail: int = 5
    edge_density: float = 1.0   # scales the expected event count; 0 -> no events
    success_prob: float = 0.5


def random_script(seed: int, subtask_kind: SubtaskKind,
                  config: Optional[FuzzConfig] = None) -> EventScript:
    """Draw a random feasible event script for a subtask."""
    cfg = config or FuzzConfig()
    rng = random.Random(seed)
    kind = SubtaskKind(subtask_kind)
    gap = lambda: rng.randint(1, cfg.max_gap)

    script = EventScript(subtask_kind=kind, steps=[],
                         tail=rng.randint(1, cfg.max_tail),
                         episode_id=f"fuzz-{kind.value.lower()}-{seed:08d}")
    if kind in (SubtaskKind.Open, SubtaskKind.Close):
        script.articulation_kind = rng.choice(
            [ArticulationKind.Fridge, ArticulationKind.Drawer])

    # mutable generator state mirroring realizer feasibility
    if kind == SubtaskKind.Pick:
        script.initial_contact = rng.random() < 0.25
        script.initial_grasped = script.initial_contact and rng.random() < 0.4
    elif kind == SubtaskKind.Place:
        script.initial_grasped = rng.random() < 0.8
        script.initial_dist_obj_goal = (rng.uniform(0.3, 0.9)
                                        if rng.random() < 0.7
                                        else rng.uniform(0.02, 0.12))
    elif kind == SubtaskKind.Open:
        script.initial_art_level = rng.choices(
            ["low", "slight", "open"], weights=[0.85, 0.1, 0.05])[0]
    else:
        script.initial_art_level = rng.choices(
            ["high", "slight", "closed"], weights=[0.85, 0.1, 0.05])[0]

    state = {
        "grasped": script.initial_grasped,
        "contact": script.initial_contact,
        "in_goal": script.initial_dist_obj_goal <= 0.15,
        "level": script.initial_art_level,
    }
    if kind == SubtaskKind.Close:
        state["level"] = "closed" if script.initial_art_level == "closed" else "open"
        # a fully-shut start leaves no room for a slightly-closed band
        state["band"] = script.initial_art_level != "closed"

    def feasible_moves():
        if kind == SubtaskKind.Pick:
            moves = []
            if not state["contact"]:
                moves.append(E.Contact)
            if not state["grasped"] and state["contact"]:
                moves.append(E.Grasped)
            if state["grasped"]:
                moves.append(E.Dropped)
            return moves
        if kind == SubtaskKind.Place:
            moves = []
            if not state["grasped"]:
                moves.append(E.Grasped)
            else:
                moves.append(E.ReleasedAtGoal if state["in_goal"]
                             else E.ReleasedOutsideGoal)
            moves.append(E.ObjLeftGoal if state["in_goal"] else E.ObjAtGoal)
            return moves
        if kind == SubtaskKind.Open:
            return {"low": [E.Contact, E.SlightlyOpened],
                    "slight": [E.Contact, E.Opened],
                    "open": [E.Contact, E.Closed]}[state["level"]]
        moves = {"open": ([E.Contact, E.SlightlyClosed] if state["band"]
                          else [E.Contact]),
                 "slight": [E.Contact, E.Closed],
                 "closed": [E.Contact, E.Open]}[state["level"]]
        return moves

    def apply_move(kd):
        if kd == E.Contact:
            state["contact"] = True
        elif kd == E.Grasped:
            state["grasped"] = True
        elif kd == E.Dropped:
            state["grasped"] = False
            state["contact"] = False
        elif kd in (E.ReleasedAtGoal, E.ReleasedOutsideGoal):
            state["grasped"] = False
        elif kd == E.ObjAtGoal:
            state["in_goal"] = True
        elif kd == E.ObjLeftGoal:
            state["in_goal"] = False
        elif kd == E.SlightlyOpened:
            state["level"] = "slight"
        elif kd == E.Opened:
            state["level"] = "open"
        elif kd == E.Closed:
            state["level"] = "low" if kind == SubtaskKind.Open else "closed"
        elif kd == E.SlightlyClosed:
            state["level"] = "slight"
        elif kd == E.Open:
            state["level"] = "open"

    # Contact can only recur after force drops; only Dropped clears it,
    # so limit articulated subtasks to one Contact.
    contact_used = state["contact"]

    n_target = round(rng.randint(0, cfg.max_events) * cfg.edge_density)
    for _ in range(n_target):
        moves = feasible_moves()
        if kind in (SubtaskKind.Open, SubtaskKind.Close) and contact_used:
            moves = [m for m in moves if m != E.Contact]
        if not moves:
            break
        mv = rng.choice(moves)
        if mv == E.Contact:
            contact_used = True
        script.steps.append(ScriptStep(mv, gap()))
        apply_move(mv)

    def success_feasible():
        if kind == SubtaskKind.Pick:
            return state["grasped"]
        if kind == SubtaskKind.Place:
            return not state["grasped"] and state["in_goal"]
        if kind == SubtaskKind.Open:
            return state["level"] == "open"
        return state["level"] == "closed"

    want_success = cfg.edge_density > 0 and rng.random() < cfg.success_prob
    if want_success and success_feasible():
        script.steps.append(ScriptStep(E.Success, gap()))
        suffix = rng.choices(
            ["none", "break", "excessive", "winding"],
            weights=[0.55, 0.2, 0.15, 0.1 if kind == SubtaskKind.Place else 0.0],
        )[0]
        if suffix == "break":
            brk = {SubtaskKind.Pick: [ScriptStep(E.Dropped, gap())],
                   SubtaskKind.Place: [ScriptStep(E.ObjLeftGoal, gap())],
                   SubtaskKind.Open: [ScriptStep(E.Closed, gap())],
                   SubtaskKind.Close: [ScriptStep(E.Open, gap())]}[kind]
            script.steps.extend(brk)
        elif suffix == "excessive":
            script.steps.append(ScriptStep(E.ExcessiveCollisions, gap()))
        elif suffix == "winding":
            script.steps.extend([ScriptStep(E.ObjLeftGoal, gap()),
                                 ScriptStep(E.ObjAtGoal, gap()),
                                 ScriptStep(E.Success, gap())])
    elif cfg.edge_density > 0 and rng.random() < 0.15:
        script.steps.append(ScriptStep(E.ExcessiveCollisions, gap()))

    return script


def fuzz(seed: int, subtask_kind: SubtaskKind,
         config: Optional[FuzzConfig] = None,
         th: Optional[Thresholds] = None) -> Trajectory:
    """Seeded random trajectory: feasible script drawn at `seed`, realized."""
    script = random_script(seed, subtask_kind, config)
    return realize(script, seed=seed ^ 0x5EED, th=th)


# -- defining scripts for every mode --------------------------------------

def _s(kind, steps, **kw):
    return EventScript(subtask_kind=kind,
                       steps=[ScriptStep(k, 2) for k in steps], **kw)


def defining_scripts() -> dict:
    """Map mode_id -> the script realizing that mode's canonical episode."""
    P, L, O, C = SubtaskKind.Pick, SubtaskKind.Place, SubtaskKind.Open, SubtaskKind.Close
    return {
        "pick.s1_straightforward": _s(P, [E.Contact, E.Grasped, E.Success]),
        "pick.s2_winding": _s(P, [E.Contact, E.Grasped, E.Dropped,
                                  E.Contact, E.Grasped, E.Success]),
        "pick.s3_success_then_drop": _s(P, [E.Contact, E.Grasped, E.Success, E.Dropped]),
        "pick.s4_success_then_excessive_collisions":
            _s(P, [E.Contact, E.Grasped, E.Success, E.ExcessiveCollisions]),
        "pick.f5_excessive_collisions": _s(P, [E.ExcessiveCollisions]),
        "pick.f6_mobility": _s(P, []),
        "pick.f7_cant_grasp": _s(P, [E.Contact]),
        "pick.f8_drop": _s(P, [E.Contact, E.Grasped, E.Dropped]),
        "pick.f9_too_slow": _s(P, [E.Contact, E.Grasped]),

        "place.s1_place_in_goal":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.Success], initial_grasped=True),
        "place.s2_drop_to_goal":
            _s(L, [E.ReleasedOutsideGoal, E.ObjAtGoal, E.Success], initial_grasped=True),
        "place.s3_dubious":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.Success, E.ObjLeftGoal],
               initial_grasped=True),
        "place.s4_winding":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.Success, E.ObjLeftGoal,
                   E.ObjAtGoal, E.Success], initial_grasped=True),
        "place.s5_success_then_excessive_collisions":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.Success, E.ExcessiveCollisions],
               initial_grasped=True),
        "place.f6_excessive_collisions":
            _s(L, [E.ExcessiveCollisions], initial_grasped=True),
        "place.f7_didnt_grasp": _s(L, [], initial_grasped=True),
        "place.f8_didnt_reach_goal":
            _s(L, [E.ReleasedOutsideGoal], initial_grasped=True),
        "place.f9_place_in_goal":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.ObjLeftGoal], initial_grasped=True),
        "place.f10_drop_to_goal":
            _s(L, [E.ReleasedOutsideGoal, E.ObjAtGoal, E.ObjLeftGoal],
               initial_grasped=True),
        "place.f11_wont_let_go":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal, E.Grasped], initial_grasped=True),
        "place.f12_too_slow":
            _s(L, [E.ObjAtGoal, E.ReleasedAtGoal], initial_grasped=True),

        "open.s1_open": _s(O, [E.Contact, E.SlightlyOpened, E.Opened, E.Success]),
        "open.s2_dubious":
            _s(O, [E.Contact, E.SlightlyOpened, E.Opened, E.Success, E.Closed]),
        "open.s3_success_then_excessive_collisions":
            _s(O, [E.Contact, E.SlightlyOpened, E.Opened, E.Success,
                   E.ExcessiveCollisions]),
        "open.f4_excessive_collisions": _s(O, [E.ExcessiveCollisions]),
        "open.f5_cant_reach": _s(O, []),
        "open.f6_closed_after_open":
            _s(O, [E.Contact, E.SlightlyOpened, E.Opened, E.Closed]),
        "open.f7_slightly_opened": _s(O, [E.Contact, E.SlightlyOpened]),
        "open.f8_too_slow": _s(O, [E.Contact, E.SlightlyOpened, E.Opened]),
        "open.f9_cant_open": _s(O, [E.Contact]),

        "close.s1_close": _s(C, [E.Contact, E.SlightlyClosed, E.Closed, E.Success],
                             initial_art_level="high"),
        "close.s2_dubious":
            _s(C, [E.Contact, E.SlightlyClosed, E.Closed, E.Success, E.Open],
               initial_art_level="high"),
        "close.s3_success_then_excessive_collisions":
            _s(C, [E.Contact, E.SlightlyClosed, E.Closed, E.Success,
                   E.ExcessiveCollisions], initial_art_level="high"),
        "close.f4_excessive_collisions":
            _s(C, [E.ExcessiveCollisions], initial_art_level="high"),
        "close.f5_cant_reach": _s(C, [], initial_art_level="high"),
        "close.f6_opened_after_closed":
            _s(C, [E.Contact, E.SlightlyClosed, E.Closed, E.Open],
               initial_art_level="high"),
        "close.f7_slightly_closed":
            _s(C, [E.Contact, E.SlightlyClosed], initial_art_level="high"),
        "close.f8_too_slow":
            _s(C, [E.Contact, E.SlightlyClosed, E.Closed], initial_art_level="high"),
        "close.f9_cant_close": _s(C, [E.Contact], initial_art_level="high"),
    }
