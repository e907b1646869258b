"""Edge-triggered event extraction.

Scans a trajectory in time order (t = 1..n) and appends every event whose
edge condition holds, evaluating the subtask's event alphabet in its
declared order so same-step events have a stable position in the list.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import RequiredFieldNaN, TooShort
from .model import SubtaskKind, Trajectory
from .predicates import is_closed, is_open, slightly_opened, success_step
from .thresholds import Thresholds


class EventKind(str, Enum):
    Contact = "Contact"
    Grasped = "Grasped"
    Dropped = "Dropped"
    ObjAtGoal = "ObjAtGoal"
    ReleasedAtGoal = "ReleasedAtGoal"
    ReleasedOutsideGoal = "ReleasedOutsideGoal"
    ObjLeftGoal = "ObjLeftGoal"
    Opened = "Opened"
    SlightlyOpened = "SlightlyOpened"
    Closed = "Closed"
    SlightlyClosed = "SlightlyClosed"
    Open = "Open"  # Close subtask: articulation re-opens (falling edge of closed)
    Success = "Success"
    ExcessiveCollisions = "ExcessiveCollisions"


# Per-subtask alphabets, in within-step evaluation order.
EVENT_ORDER = {
    SubtaskKind.Pick: (
        EventKind.Contact, EventKind.Grasped, EventKind.Dropped,
        EventKind.Success, EventKind.ExcessiveCollisions),
    SubtaskKind.Place: (
        EventKind.Grasped, EventKind.ObjAtGoal, EventKind.ReleasedAtGoal,
        EventKind.ReleasedOutsideGoal, EventKind.ObjLeftGoal,
        EventKind.Success, EventKind.ExcessiveCollisions),
    SubtaskKind.Open: (
        EventKind.Contact, EventKind.Opened, EventKind.SlightlyOpened,
        EventKind.Closed, EventKind.Success, EventKind.ExcessiveCollisions),
    SubtaskKind.Close: (
        EventKind.Contact, EventKind.Closed, EventKind.SlightlyClosed,
        EventKind.Open, EventKind.Success, EventKind.ExcessiveCollisions),
}


@dataclass(frozen=True)
class Event:
    kind: EventKind
    t: int

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "t": self.t}


@dataclass
class EventList:
    subtask_kind: SubtaskKind
    events: list = field(default_factory=list)
    initial_dist_obj_goal: Optional[float] = None  # Place only

    def kinds(self) -> list:
        return [e.kind for e in self.events]

    def __len__(self):
        return len(self.events)

    def to_dict(self) -> dict:
        d = {"events": [e.to_dict() for e in self.events]}
        if self.initial_dist_obj_goal is not None:
            d["initial_dist_obj_goal"] = self.initial_dist_obj_goal
        return d


def _contact_flags(records, th, kind_name):
    flags = []
    for rec in records:
        f = rec.force_ee_target
        if math.isnan(f):
            raise RequiredFieldNaN(
                f"force_ee_target is NaN but required for {kind_name} events")
        flags.append(f > th.contact_eps)
    return flags


def extract_events(traj: Trajectory, th: Thresholds) -> EventList:
    """Build the chronologically ordered event list for a trajectory."""
    records = traj.records
    if len(records) < 2:
        raise TooShort("need at least 2 records to detect edges")
    hdr = traj.header
    kind = hdr.subtask_kind
    th = hdr.thresholds(th)
    limit = th.collision_limit(kind)
    n = len(records)

    success = [success_step(rec, hdr, th) for rec in records]
    grasped = [rec.grasped for rec in records]
    cum = [rec.cum_robot_force for rec in records]

    out = EventList(subtask_kind=kind)
    ev = out.events

    if kind == SubtaskKind.Pick:
        contact = _contact_flags(records, th, "Pick")
        for t in range(1, n):
            if not contact[t - 1] and contact[t]:
                ev.append(Event(EventKind.Contact, t))
            if not grasped[t - 1] and grasped[t]:
                ev.append(Event(EventKind.Grasped, t))
            if grasped[t - 1] and not grasped[t]:
                ev.append(Event(EventKind.Dropped, t))
            if not success[t - 1] and success[t]:
                ev.append(Event(EventKind.Success, t))
            if cum[t - 1] <= limit < cum[t]:
                ev.append(Event(EventKind.ExcessiveCollisions, t))
        return out

    if kind == SubtaskKind.Place:
        dist = []
        for rec in records:
            if math.isnan(rec.dist_obj_goal):
                raise RequiredFieldNaN("dist_obj_goal is NaN but required for Place")
            dist.append(rec.dist_obj_goal)
        out.initial_dist_obj_goal = dist[0]
        r = th.goal_radius
        for t in range(1, n):
            if not grasped[t - 1] and grasped[t]:
                ev.append(Event(EventKind.Grasped, t))
            if dist[t - 1] > r >= dist[t]:
                ev.append(Event(EventKind.ObjAtGoal, t))
            if grasped[t - 1] and not grasped[t]:
                if dist[t] <= r:
                    ev.append(Event(EventKind.ReleasedAtGoal, t))
                else:
                    ev.append(Event(EventKind.ReleasedOutsideGoal, t))
            if dist[t - 1] <= r < dist[t]:
                ev.append(Event(EventKind.ObjLeftGoal, t))
            if not success[t - 1] and success[t]:
                ev.append(Event(EventKind.Success, t))
            if cum[t - 1] <= limit < cum[t]:
                ev.append(Event(EventKind.ExcessiveCollisions, t))
        return out

    if kind == SubtaskKind.Open:
        contact = _contact_flags(records, th, "Open")
        opened = [is_open(rec.art_q, hdr, th) for rec in records]
        slight = [slightly_opened(rec.art_q, hdr, th) for rec in records]
        for t in range(1, n):
            if not contact[t - 1] and contact[t]:
                ev.append(Event(EventKind.Contact, t))
            if not opened[t - 1] and opened[t]:
                ev.append(Event(EventKind.Opened, t))
            if not slight[t - 1] and slight[t]:
                ev.append(Event(EventKind.SlightlyOpened, t))
            if opened[t - 1] and not opened[t]:
                ev.append(Event(EventKind.Closed, t))
            if not success[t - 1] and success[t]:
                ev.append(Event(EventKind.Success, t))
            if cum[t - 1] <= limit < cum[t]:
                ev.append(Event(EventKind.ExcessiveCollisions, t))
        return out

    if kind == SubtaskKind.Close:
        contact = _contact_flags(records, th, "Close")
        closed = [is_closed(rec.art_q, hdr, th) for rec in records]
        a_q0 = records[0].art_q
        sc_thresh = a_q0 - th.slightly_close_frac * (hdr.art_qmax - hdr.art_qmin)
        slight = [rec.art_q < sc_thresh for rec in records]
        for t in range(1, n):
            if not contact[t - 1] and contact[t]:
                ev.append(Event(EventKind.Contact, t))
            if not closed[t - 1] and closed[t]:
                ev.append(Event(EventKind.Closed, t))
            if not slight[t - 1] and slight[t]:
                ev.append(Event(EventKind.SlightlyClosed, t))
            if closed[t - 1] and not closed[t]:
                ev.append(Event(EventKind.Open, t))
            if not success[t - 1] and success[t]:
                ev.append(Event(EventKind.Success, t))
            if cum[t - 1] <= limit < cum[t]:
                ev.append(Event(EventKind.ExcessiveCollisions, t))
        return out

    raise ValueError(f"unknown subtask kind {kind}")
