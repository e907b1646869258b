"""Classify an event list into exactly one success/failure mode.

Each subtask has an ordered rule list evaluated first-match-wins: the
success rules when Success is in the event list, the failure rules
otherwise. The final failure rule of each subtask is a catch-all, so
classification is total. A handful of textually overlapping conditions
are disambiguated by the evaluation order; see the module constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import ModeCoverageError, UnknownMode
from .events import EventKind, EventList
from .model import SubtaskKind

# Flag for downstream metadata: Open/Close "success then excessive
# collisions" is implemented as requiring the excessive-collision event,
# the only reading under which the mode is reachable.
SPEC_DEVIATIONS = ("open_close_s3_membership",)


def last_index(events: EventList, kind: EventKind) -> int:
    """0-based position of the last occurrence of `kind`, or -1 if absent."""
    kinds = events.kinds() if isinstance(events, EventList) else list(events)
    for i in range(len(kinds) - 1, -1, -1):
        if kinds[i] == kind:
            return i
    return -1


@dataclass(frozen=True)
class ModeLabel:
    subtask_kind: SubtaskKind
    mode_id: str
    is_success: bool
    success_once: bool
    success_at_end: bool


class _Ctx:
    """Precomputed view of one event list for the rule predicates."""

    def __init__(self, events: EventList):
        self.kinds = events.kinds()
        self.size = len(self.kinds)
        self.d0 = events.initial_dist_obj_goal
        self._last = {}

    def last(self, kind: EventKind) -> int:
        if kind not in self._last:
            idx = -1
            for i, k in enumerate(self.kinds):
                if k == kind:
                    idx = i
            self._last[kind] = idx
        return self._last[kind]

    def has(self, kind: EventKind) -> bool:
        return self.last(kind) >= 0


E = EventKind
GOAL_RADIUS = 0.15  # mirrors Thresholds.goal_radius for the d0 disjuncts


def _pick_rules():
    def no_exc(c):
        return not c.has(E.ExcessiveCollisions)

    return {
        "success": [
            ("pick.s1_straightforward",
             lambda c: c.kinds == [E.Contact, E.Grasped, E.Success]),
            ("pick.s2_winding",
             lambda c: no_exc(c) and c.last(E.Dropped) <= c.last(E.Grasped)),
            ("pick.s3_success_then_drop",
             lambda c: no_exc(c) and c.last(E.Dropped) > c.last(E.Grasped)),
            ("pick.s4_success_then_excessive_collisions",
             lambda c: c.has(E.ExcessiveCollisions)),
        ],
        "failure": [
            ("pick.f5_excessive_collisions", lambda c: c.has(E.ExcessiveCollisions)),
            ("pick.f6_mobility", lambda c: c.size == 0),
            ("pick.f7_cant_grasp",
             lambda c: c.has(E.Contact) and not c.has(E.Grasped) and not c.has(E.Dropped)),
            ("pick.f8_drop",
             lambda c: c.has(E.Dropped) and c.last(E.Dropped) > c.last(E.Grasped)),
            ("pick.f9_too_slow", lambda c: True),
        ],
    }


def _place_rules():
    def no_exc(c):
        return not c.has(E.ExcessiveCollisions)

    def placed_latest(c):
        return ((c.size <= 2 and c.d0 <= GOAL_RADIUS)
                or (c.last(E.ReleasedAtGoal) > c.last(E.ReleasedOutsideGoal)
                    and c.last(E.ReleasedAtGoal) > c.last(E.Grasped)))

    def dropped_latest(c):
        return ((c.size <= 2 and c.d0 > GOAL_RADIUS)
                or (c.last(E.ReleasedOutsideGoal) > c.last(E.ReleasedAtGoal)
                    and c.last(E.ReleasedOutsideGoal) > c.last(E.Grasped)))

    return {
        "success": [
            ("place.s1_place_in_goal",
             lambda c: (c.size <= 4
                        and (c.has(E.ReleasedAtGoal) or c.d0 <= GOAL_RADIUS)
                        and c.last(E.ObjLeftGoal) <= c.last(E.ObjAtGoal)
                        and no_exc(c))),
            ("place.s2_drop_to_goal",
             lambda c: (c.size <= 4
                        and (c.has(E.ReleasedOutsideGoal) or c.d0 > GOAL_RADIUS)
                        and c.last(E.ObjLeftGoal) <= c.last(E.ObjAtGoal)
                        and no_exc(c))),
            ("place.s3_dubious",
             lambda c: c.last(E.ObjAtGoal) < c.last(E.ObjLeftGoal) and no_exc(c)),
            ("place.s4_winding",
             lambda c: (c.size > 4
                        and c.last(E.ObjAtGoal) >= c.last(E.ObjLeftGoal)
                        and no_exc(c))),
            ("place.s5_success_then_excessive_collisions",
             lambda c: c.has(E.ExcessiveCollisions)),
        ],
        "failure": [
            ("place.f6_excessive_collisions", lambda c: c.has(E.ExcessiveCollisions)),
            ("place.f7_didnt_grasp", lambda c: c.size == 0),
            ("place.f8_didnt_reach_goal",
             lambda c: c.size > 0 and not c.has(E.ObjAtGoal)),
            ("place.f9_place_in_goal",
             lambda c: (c.has(E.ObjAtGoal) and placed_latest(c)
                        and c.last(E.ObjLeftGoal) > c.last(E.ObjAtGoal))),
            ("place.f10_drop_to_goal",
             lambda c: (c.has(E.ObjAtGoal) and dropped_latest(c)
                        and c.last(E.ObjLeftGoal) > c.last(E.ObjAtGoal))),
            ("place.f11_wont_let_go",
             lambda c: (c.has(E.ObjAtGoal)
                        and c.last(E.Grasped) > c.last(E.ReleasedAtGoal)
                        and c.last(E.Grasped) > c.last(E.ReleasedOutsideGoal))),
            ("place.f12_too_slow", lambda c: True),
        ],
    }


def _open_rules():
    def no_exc(c):
        return not c.has(E.ExcessiveCollisions)

    return {
        "success": [
            ("open.s1_open",
             lambda c: no_exc(c) and c.last(E.Opened) >= c.last(E.Closed)),
            ("open.s2_dubious",
             lambda c: no_exc(c) and c.last(E.Opened) < c.last(E.Closed)),
            ("open.s3_success_then_excessive_collisions",
             lambda c: c.has(E.ExcessiveCollisions)),
        ],
        "failure": [
            ("open.f4_excessive_collisions", lambda c: c.has(E.ExcessiveCollisions)),
            ("open.f5_cant_reach", lambda c: not c.has(E.Contact)),
            ("open.f6_closed_after_open",
             lambda c: (c.has(E.Closed)
                        and c.last(E.Closed) > c.last(E.Opened)
                        and c.last(E.Closed) > c.last(E.SlightlyOpened))),
            ("open.f7_slightly_opened",
             lambda c: (c.last(E.SlightlyOpened) > c.last(E.Opened)
                        and c.last(E.SlightlyOpened) > c.last(E.Closed))),
            ("open.f8_too_slow", lambda c: c.has(E.Opened)),
            ("open.f9_cant_open", lambda c: True),
        ],
    }


def _close_rules():
    def no_exc(c):
        return not c.has(E.ExcessiveCollisions)

    return {
        "success": [
            ("close.s1_close",
             lambda c: no_exc(c) and c.last(E.Closed) >= c.last(E.Open)),
            ("close.s2_dubious",
             lambda c: no_exc(c) and c.last(E.Closed) < c.last(E.Open)),
            ("close.s3_success_then_excessive_collisions",
             lambda c: c.has(E.ExcessiveCollisions)),
        ],
        "failure": [
            ("close.f4_excessive_collisions", lambda c: c.has(E.ExcessiveCollisions)),
            ("close.f5_cant_reach", lambda c: not c.has(E.Contact)),
            ("close.f6_opened_after_closed",
             lambda c: (c.has(E.Closed)
                        and c.last(E.Open) > c.last(E.Closed)
                        and c.last(E.Open) > c.last(E.SlightlyClosed))),
            ("close.f7_slightly_closed",
             lambda c: (c.last(E.SlightlyClosed) > c.last(E.Closed)
                        and c.last(E.SlightlyClosed) > c.last(E.Open))),
            ("close.f8_too_slow", lambda c: c.has(E.Closed)),
            ("close.f9_cant_close", lambda c: True),
        ],
    }


MODE_RULES = {
    SubtaskKind.Pick: _pick_rules(),
    SubtaskKind.Place: _place_rules(),
    SubtaskKind.Open: _open_rules(),
    SubtaskKind.Close: _close_rules(),
}

MODE_IDS = {
    kind: [m for branch in ("success", "failure") for m, _ in rules[branch]]
    for kind, rules in MODE_RULES.items()
}

SUCCESS_MODE_IDS = {
    kind: {m for m, _ in rules["success"]} for kind, rules in MODE_RULES.items()
}

# Modes whose defining event structure leaves the success predicate
# holding at the final record.
SUCCESS_AT_END_MODES = {
    SubtaskKind.Pick: {"pick.s1_straightforward", "pick.s2_winding"},
    SubtaskKind.Place: {"place.s1_place_in_goal", "place.s2_drop_to_goal",
                        "place.s4_winding"},
    SubtaskKind.Open: {"open.s1_open"},
    SubtaskKind.Close: {"close.s1_close"},
}


def classify(events: EventList, rules: Optional[dict] = None) -> ModeLabel:
    """Assign exactly one mode to an event list."""
    kind = events.subtask_kind
    table = (rules or MODE_RULES)[kind]
    ctx = _Ctx(events)
    success_once = EventKind.Success in ctx.kinds
    branch = table["success"] if success_once else table["failure"]
    for mode_id, pred in branch:
        if pred(ctx):
            return ModeLabel(
                subtask_kind=kind,
                mode_id=mode_id,
                is_success=success_once,
                success_once=success_once,
                success_at_end=mode_id in SUCCESS_AT_END_MODES[kind],
            )
    raise ModeCoverageError(
        f"no {'success' if success_once else 'failure'} mode matched "
        f"{[k.value for k in ctx.kinds]}")


@dataclass(frozen=True)
class GroupingScheme:
    name: str
    mapping: dict  # mode_id -> group label

    def group(self, mode_id: str) -> str:
        try:
            return self.mapping[mode_id]
        except KeyError:
            raise UnknownMode(f"scheme {self.name!r} does not cover {mode_id!r}")


PICK_COARSE = GroupingScheme(
    name="pick-coarse",
    mapping={
        "pick.s1_straightforward": "S-Once",
        "pick.s2_winding": "S-Once",
        "pick.s3_success_then_drop": "S-Once",
        "pick.s4_success_then_excessive_collisions": "S-Once",
        "pick.f5_excessive_collisions": "F-Col",
        "pick.f6_mobility": "F-Other",
        "pick.f7_cant_grasp": "F-Grasp",
        "pick.f8_drop": "F-Other",
        "pick.f9_too_slow": "F-Other",
    },
)

BUILTIN_SCHEMES = {PICK_COARSE.name: PICK_COARSE}


def group(label: ModeLabel, scheme: GroupingScheme) -> str:
    return scheme.group(label.mode_id)
