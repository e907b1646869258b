"""Statistics over label sets and long-horizon chaining analysis.

Percentages are computed from exact counts and rounded half-away-from-zero
at render time, so row identities (SoR + FR = 100, SoR = sum of success
columns) hold up to rounding slack only. This module emits table/JSON data
only; figure rendering lives in `report`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional

from .errors import BothZero, EmptyInput, MissingRate
from .model import SubtaskKind
from .modes import MODE_IDS, SUCCESS_MODE_IDS, GroupingScheme

GROUP_KEYS = ("task", "target_id", "policy_tag", "split", "subtask")


def round_half_away(x: float, decimals: int = 2) -> float:
    """Round with ties away from zero (bankers' rounding would skew tables)."""
    q = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass
class StatsRow:
    key: dict                    # group-by column -> value
    count: int
    sor: float                   # exact fractions in [0, 1] until rendering
    saer: float
    fr: float
    modes: dict                  # column -> exact fraction

    def rendered(self, decimals: int = 2) -> dict:
        r = lambda v: round_half_away(100.0 * v, decimals)
        return {
            "key": dict(self.key),
            "count": self.count,
            "sor": r(self.sor),
            "saer": r(self.saer),
            "fr": r(self.fr),
            "modes": {m: r(v) for m, v in self.modes.items()},
        }


@dataclass
class StatsTable:
    group_by: tuple
    mode_columns: list           # ordered column ids (mode_ids or group labels)
    rows: list                   # StatsRow
    decimals: int = 2

    def to_dict(self) -> dict:
        return {
            "group_by": list(self.group_by),
            "mode_columns": list(self.mode_columns),
            "rows": [row.rendered(self.decimals) for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def _header_cells(self):
        return ([*self.group_by, "count", "SoR", "SaeR"]
                + [c for c in self.mode_columns if c in self._success_cols()]
                + ["FR"]
                + [c for c in self.mode_columns if c not in self._success_cols()])

    def _success_cols(self):
        success = set()
        for kind in SubtaskKind:
            success |= SUCCESS_MODE_IDS[kind]
        success |= {"S-Once"}  # coarse success group label
        return success

    def _row_cells(self, row: StatsRow):
        r = row.rendered(self.decimals)
        fmt = lambda v: f"{v:.{self.decimals}f}"
        succ = self._success_cols()
        return ([str(row.key.get(k, "")) for k in self.group_by]
                + [str(row.count), fmt(r["sor"]), fmt(r["saer"])]
                + [fmt(r["modes"].get(c, 0.0))
                   for c in self.mode_columns if c in succ]
                + [fmt(r["fr"])]
                + [fmt(r["modes"].get(c, 0.0))
                   for c in self.mode_columns if c not in succ])

    def to_markdown(self) -> str:
        header = self._header_cells()
        lines = ["| " + " | ".join(header) + " |",
                 "| " + " | ".join("---" for _ in header) + " |"]
        for row in self.rows:
            lines.append("| " + " | ".join(self._row_cells(row)) + " |")
        return "\n".join(lines)

    def to_csv(self) -> str:
        lines = [",".join(self._header_cells())]
        for row in self.rows:
            lines.append(",".join(self._row_cells(row)))
        return "\n".join(lines)


def _canonical_mode_order(mode_ids_present, grouping: Optional[GroupingScheme]):
    if grouping is not None:
        seen = []
        for kind in SubtaskKind:
            for m in MODE_IDS[kind]:
                g = grouping.mapping.get(m)
                if g is not None and g not in seen:
                    seen.append(g)
        return seen
    order = []
    for kind in SubtaskKind:
        order.extend(m for m in MODE_IDS[kind] if m in mode_ids_present)
    return order


def mode_table(labels, group_by=("subtask",),
               grouping: Optional[GroupingScheme] = None,
               decimals: int = 2) -> StatsTable:
    """Aggregate label records into an SoR/SaeR/FR + per-mode table."""
    labels = list(labels)
    if not labels:
        raise EmptyInput("no label records to aggregate")
    for k in group_by:
        if k not in GROUP_KEYS:
            raise ValueError(f"unknown group-by key {k!r}; choose from {GROUP_KEYS}")

    groups = {}
    for rec in labels:
        key = tuple(getattr(rec, k) for k in group_by)
        groups.setdefault(key, []).append(rec)

    present = {rec.mode_id for rec in labels}
    columns = _canonical_mode_order(present, grouping)

    rows = []
    for key in sorted(groups):
        recs = groups[key]
        n = len(recs)
        counts = {}
        sor = saer = 0
        for rec in recs:
            col = grouping.group(rec.mode_id) if grouping else rec.mode_id
            counts[col] = counts.get(col, 0) + 1
            sor += rec.success_once
            saer += rec.success_at_end
        rows.append(StatsRow(
            key=dict(zip(group_by, key)),
            count=n,
            sor=sor / n,
            saer=saer / n,
            fr=(n - sor) / n,
            modes={c: counts.get(c, 0) / n for c in columns},
        ))
    return StatsTable(group_by=tuple(group_by), mode_columns=columns,
                      rows=rows, decimals=decimals)


# -- behavior ratios -------------------------------------------------------


@dataclass(frozen=True)
class RatioReport:
    mode_a: str
    mode_b: str
    count_a: int
    count_b: int
    text: str                    # e.g. "3.17 : 1"

    def to_dict(self) -> dict:
        return {"mode_a": self.mode_a, "mode_b": self.mode_b,
                "count_a": self.count_a, "count_b": self.count_b,
                "ratio": self.text}


def _fmt_ratio(v: float) -> str:
    s = f"{round_half_away(v, 2):.2f}".rstrip("0").rstrip(".")
    return s or "0"


def ratio_report(labels, mode_a: str, mode_b: str) -> RatioReport:
    """Normalized a:b ratio with the larger side scaled, e.g. "3.17 : 1"."""
    a = sum(1 for rec in labels if rec.mode_id == mode_a)
    b = sum(1 for rec in labels if rec.mode_id == mode_b)
    if a == 0 and b == 0:
        raise BothZero(f"no labels in either mode {mode_a!r} or {mode_b!r}")
    if b == 0:
        text = "1 : 0"
    elif a >= b:
        text = f"{_fmt_ratio(a / b)} : 1"
    else:
        text = f"1 : {_fmt_ratio(b / a)}"
    return RatioReport(mode_a=mode_a, mode_b=mode_b,
                       count_a=a, count_b=b, text=text)


# -- chaining --------------------------------------------------------------


@dataclass(frozen=True)
class ChainSlot:
    name: str
    subtask: Optional[str] = None   # SubtaskKind value; None for Teleport/Nav
    auto_success: bool = False


@dataclass
class ChainPlan:
    name: str
    slots: list

    def __post_init__(self):
        for slot in self.slots:
            if slot.auto_success and slot.subtask is not None:
                raise ValueError(f"auto-success slot {slot.name} binds a subtask")

    def __len__(self):
        return len(self.slots)

    def to_dict(self) -> dict:
        return {"name": self.name,
                "slots": [{"name": s.name, "subtask": s.subtask,
                           "auto_success": s.auto_success}
                          for s in self.slots]}

    @classmethod
    def from_dict(cls, d: dict) -> "ChainPlan":
        return cls(name=d["name"],
                   slots=[ChainSlot(name=s["name"],
                                    subtask=s.get("subtask"),
                                    auto_success=bool(s.get("auto_success", False)))
                          for s in d["slots"]])


def _nav() -> ChainSlot:
    return ChainSlot(name="Nav", auto_success=True)


def _repeat(block, times):
    slots = []
    for i in range(times):
        for slot in block:
            slots.append(ChainSlot(name=f"{slot.name}{i + 1}",
                                   subtask=slot.subtask,
                                   auto_success=slot.auto_success))
    return slots


BUILTIN_PLANS = {
    "tidyhouse": ChainPlan("tidyhouse", _repeat(
        [_nav(), ChainSlot("Pick", "Pick"), _nav(), ChainSlot("Place", "Place")], 5)),
    "preparegroceries": ChainPlan("preparegroceries", _repeat(
        [_nav(), ChainSlot("Pick", "Pick"), _nav(), ChainSlot("Place", "Place")], 3)),
    "settable": ChainPlan("settable", _repeat(
        [_nav(), ChainSlot("Open", "Open"), _nav(), ChainSlot("Pick", "Pick"),
         _nav(), ChainSlot("Place", "Place"), _nav(), ChainSlot("Close", "Close")], 2)),
}


@dataclass
class ChainEpisode:
    episode_id: str
    slot_success: list           # booleans aligned to a plan

    @classmethod
    def from_dict(cls, d: dict) -> "ChainEpisode":
        return cls(episode_id=d["episode_id"],
                   slot_success=[bool(v) for v in d["slot_success"]])

    def to_dict(self) -> dict:
        return {"episode_id": self.episode_id,
                "slot_success": list(self.slot_success)}


def progressive_completion(episodes, plan: ChainPlan) -> list:
    """Per-slot % of episodes whose every slot so far succeeded."""
    episodes = list(episodes)
    if not episodes:
        raise EmptyInput("no chain episodes")
    for ep in episodes:
        if len(ep.slot_success) != len(plan):
            raise ValueError(
                f"episode {ep.episode_id} has {len(ep.slot_success)} slots, "
                f"plan {plan.name} has {len(plan)}")
    n = len(episodes)
    out = []
    alive = [True] * n
    for k, slot in enumerate(plan.slots):
        if not slot.auto_success:
            for i, ep in enumerate(episodes):
                if alive[i] and not ep.slot_success[k]:
                    alive[i] = False
        out.append(100.0 * sum(alive) / n)
    return out


def independence_upper_bound(subtask_sor: dict, plan: ChainPlan) -> list:
    """Cumulative product of per-subtask SoRs; auto slots contribute 1."""
    out = []
    acc = 1.0
    for slot in plan.slots:
        if not slot.auto_success:
            if slot.subtask not in subtask_sor:
                raise MissingRate(f"no SoR for subtask {slot.subtask!r} "
                                  f"(slot {slot.name})")
            acc *= subtask_sor[slot.subtask]
        out.append(100.0 * acc)
    return out
