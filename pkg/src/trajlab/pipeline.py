"""Batch labeling and rule-based dataset filtering.

Labeling is embarrassingly parallel per file; output order is sorted by
episode_id regardless of worker count, so results are a pure function of
(inputs, thresholds). Filtering selects episodes deterministically: pools
sorted by episode_id, filled by a weighted round-robin.
"""
from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import EmptyAllowList, TrajlabError
from .events import extract_events
from .io_binary import MAGIC, read_binary_file
from .io_text import read_text_file
from .model import SubtaskKind, Trajectory
from .modes import classify
from .thresholds import Thresholds


@dataclass
class LabelRecord:
    """One labeled episode, as emitted by `trajlab label`."""
    episode_id: str
    subtask: str
    mode_id: str
    success_once: bool
    success_at_end: bool
    events: list = field(default_factory=list)  # [{"kind":…, "t":…}, …]
    target_id: str = ""
    task: str = "Custom"
    split: str = "Other"
    policy_tag: str = ""
    source: str = ""

    def to_dict(self) -> dict:
        return {
            "episode_id": self.episode_id,
            "subtask": self.subtask,
            "mode_id": self.mode_id,
            "success_once": self.success_once,
            "success_at_end": self.success_at_end,
            "events": self.events,
            "target_id": self.target_id,
            "task": self.task,
            "split": self.split,
            "policy_tag": self.policy_tag,
            "source": self.source,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "LabelRecord":
        return cls(
            episode_id=d["episode_id"],
            subtask=d["subtask"],
            mode_id=d["mode_id"],
            success_once=bool(d["success_once"]),
            success_at_end=bool(d["success_at_end"]),
            events=list(d.get("events", [])),
            target_id=d.get("target_id", ""),
            task=d.get("task", "Custom"),
            split=d.get("split", "Other"),
            policy_tag=d.get("policy_tag", ""),
            source=d.get("source", ""),
        )


def label_trajectory(traj: Trajectory, th: Optional[Thresholds] = None,
                     source: str = "") -> LabelRecord:
    """Extract events, classify, and package one trajectory's label."""
    th = th or Thresholds()
    events = extract_events(traj, th)
    label = classify(events)
    hdr = traj.header
    return LabelRecord(
        episode_id=hdr.episode_id,
        subtask=hdr.subtask_kind.value,
        mode_id=label.mode_id,
        success_once=label.success_once,
        success_at_end=label.success_at_end,
        events=[e.to_dict() for e in events.events],
        target_id=hdr.target_id,
        task=hdr.task.value,
        split=hdr.split.value,
        policy_tag=hdr.policy_tag,
        source=source,
    )


def read_trajectory_file(path) -> Trajectory:
    """Load either container format, sniffing by magic bytes."""
    with open(path, "rb") as f:
        head = f.read(4)
    if head == MAGIC:
        return read_binary_file(path)
    return read_text_file(path)


def label_file(path, th: Optional[Thresholds] = None) -> LabelRecord:
    return label_trajectory(read_trajectory_file(path), th, source=str(path))


def _label_worker(args):
    path, th = args
    try:
        return ("ok", label_file(path, th).to_dict())
    except (TrajlabError, OSError, ValueError) as e:
        return ("err", {"source": str(path), "error": f"{type(e).__name__}: {e}"})


@dataclass
class BatchResult:
    labels: list                 # LabelRecord, sorted by episode_id
    errors: list                 # [{"source":…, "error":…}, …]
    mode_counts: dict            # mode_id -> count

    @property
    def ok(self) -> bool:
        return not self.errors


def label_batch(paths, th: Optional[Thresholds] = None,
                workers: int = 1) -> BatchResult:
    """Label many files; deterministic output regardless of worker count."""
    th = th or Thresholds()
    jobs = [(str(p), th) for p in sorted(str(p) for p in paths)]
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(min(workers, os.cpu_count() or 1)) as pool:
            results = pool.map(_label_worker, jobs, chunksize=32)
    else:
        results = [_label_worker(j) for j in jobs]

    labels, errors = [], []
    for status, payload in results:
        if status == "ok":
            labels.append(LabelRecord.from_dict(payload))
        else:
            errors.append(payload)
    labels.sort(key=lambda r: r.episode_id)
    errors.sort(key=lambda e: e["source"])
    counts = {}
    for rec in labels:
        counts[rec.mode_id] = counts.get(rec.mode_id, 0) + 1
    return BatchResult(labels=labels, errors=errors, mode_counts=counts)


def write_labels_jsonl(labels, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for rec in labels:
            f.write(rec.to_json() + "\n")


def read_labels_jsonl(source) -> list:
    """Parse label records from a path or an iterable of JSONL lines."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as f:
            return [LabelRecord.from_dict(json.loads(line))
                    for line in f if line.strip()]
    return [LabelRecord.from_dict(json.loads(line))
            for line in source if line.strip()]


# -- filtering -------------------------------------------------------------


@dataclass(frozen=True)
class AllowRule:
    subtask: str                # SubtaskKind value
    modes: frozenset            # allowed mode_ids
    weight: float = 1.0


@dataclass
class FilterSpec:
    allow: list                          # AllowRule
    quota_per_target: int = 1000
    quota_key: str = "target_id"         # "target_id" | "target_id_task"
    selection: str = "FirstByEpisodeId"

    def __post_init__(self):
        if not self.allow:
            raise EmptyAllowList("filter spec has no allow rules")
        if self.quota_per_target < 1:
            raise ValueError(f"quota must be >= 1, got {self.quota_per_target}")
        if self.quota_key not in ("target_id", "target_id_task"):
            raise ValueError(f"unknown quota_key {self.quota_key!r}")
        if self.selection != "FirstByEpisodeId":
            raise ValueError(f"unknown selection {self.selection!r}")
        by_subtask = {}
        for rule in self.allow:
            SubtaskKind(rule.subtask)  # raises on bad value
            if rule.weight <= 0:
                raise ValueError("allow-rule weight must be positive")
            by_subtask.setdefault(rule.subtask, 0.0)
            by_subtask[rule.subtask] += rule.weight
        for subtask, total in by_subtask.items():
            if abs(total - 1.0) > 1e-9:
                raise ValueError(
                    f"weights for {subtask} sum to {total}, expected 1")

    @classmethod
    def from_dict(cls, d: dict) -> "FilterSpec":
        allow = [AllowRule(subtask=a["subtask"],
                           modes=frozenset(a["modes"]),
                           weight=float(a.get("weight", 1.0)))
                 for a in d.get("allow", [])]
        return cls(allow=allow,
                   quota_per_target=int(d.get("quota_per_target", 1000)),
                   quota_key=d.get("quota_key", "target_id"),
                   selection=d.get("selection", "FirstByEpisodeId"))

    @classmethod
    def from_json_file(cls, path) -> "FilterSpec":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_dict(json.load(f))

    def to_dict(self) -> dict:
        return {
            "allow": [{"subtask": a.subtask, "modes": sorted(a.modes),
                       "weight": a.weight} for a in self.allow],
            "quota_per_target": self.quota_per_target,
            "quota_key": self.quota_key,
            "selection": self.selection,
        }


@dataclass(frozen=True)
class ManifestEntry:
    episode_id: str
    source: str
    mode_id: str
    target_id: str
    task: str
    split: str
    policy_tag: str

    def to_dict(self) -> dict:
        return {"episode_id": self.episode_id, "source": self.source,
                "mode_id": self.mode_id, "target_id": self.target_id,
                "task": self.task, "split": self.split,
                "policy_tag": self.policy_tag}


@dataclass
class DatasetManifest:
    entries: list                # ManifestEntry sorted by episode_id
    counts: dict                 # "target|mode" -> count
    shortfalls: list             # [{"quota_key":…, "subtask":…, …}, …]
    spec: Optional[FilterSpec] = None

    def to_dict(self) -> dict:
        d = {"entries": [e.to_dict() for e in self.entries],
             "counts": self.counts,
             "shortfalls": self.shortfalls}
        if self.spec is not None:
            d["spec"] = self.spec.to_dict()
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _quota_key(rec: LabelRecord, spec: FilterSpec) -> str:
    if spec.quota_key == "target_id_task":
        return f"{rec.target_id}|{rec.task}"
    return rec.target_id


def filter_labels(labels, spec: FilterSpec) -> DatasetManifest:
    """Select up to quota episodes per key, weighted across allow rules.

    Pools are sorted by episode_id; the fill repeatedly draws from the
    rule whose taken/weight ratio is lowest (ties broken by rule order),
    so a 0.5/0.5 weighting alternates between its two pools.
    """
    rules_by_subtask = {}
    for i, rule in enumerate(spec.allow):
        rules_by_subtask.setdefault(rule.subtask, []).append((i, rule))

    # bucket labels by (quota key, subtask); assign each label to the
    # first allow rule whose mode set contains it
    pools = {}  # (key, subtask) -> {rule_index: [LabelRecord]}
    for rec in sorted(labels, key=lambda r: r.episode_id):
        rules = rules_by_subtask.get(rec.subtask)
        if not rules:
            continue
        for i, rule in rules:
            if rec.mode_id in rule.modes:
                bucket = pools.setdefault((_quota_key(rec, spec), rec.subtask), {})
                bucket.setdefault(i, []).append(rec)
                break

    entries = []
    shortfalls = []
    for (key, subtask) in sorted(pools):
        bucket = pools[(key, subtask)]
        rules = rules_by_subtask[subtask]
        taken = {i: 0 for i, _ in rules}
        cursors = {i: 0 for i, _ in rules}
        selected = []
        while len(selected) < spec.quota_per_target:
            candidates = [(taken[i] / rule.weight, pos, i, rule)
                          for pos, (i, rule) in enumerate(rules)
                          if cursors[i] < len(bucket.get(i, []))]
            if not candidates:
                break
            _, _, i, _ = min(candidates)
            selected.append(bucket[i][cursors[i]])
            cursors[i] += 1
            taken[i] += 1
        if len(selected) < spec.quota_per_target:
            shortfalls.append({
                "quota_key": key,
                "subtask": subtask,
                "requested": spec.quota_per_target,
                "selected": len(selected),
                "shortfall": spec.quota_per_target - len(selected),
            })
        entries.extend(selected)

    entries.sort(key=lambda r: r.episode_id)
    manifest_entries = [ManifestEntry(
        episode_id=r.episode_id, source=r.source, mode_id=r.mode_id,
        target_id=r.target_id, task=r.task, split=r.split,
        policy_tag=r.policy_tag) for r in entries]
    counts = {}
    for e in manifest_entries:
        k = f"{e.target_id}|{e.mode_id}"
        counts[k] = counts.get(k, 0) + 1
    return DatasetManifest(entries=manifest_entries, counts=counts,
                           shortfalls=shortfalls, spec=spec)
