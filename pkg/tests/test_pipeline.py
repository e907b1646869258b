import json

import pytest

from trajlab import (AllowRule, EmptyAllowList, FilterSpec, LabelRecord,
                     SubtaskKind, Thresholds, defining_scripts, filter_labels,
                     fuzz, label_batch, label_file, label_trajectory, realize,
                     read_labels_jsonl, write_binary_file, write_labels_jsonl,
                     write_text_file)

TH = Thresholds()


def _label(i, mode_id="pick.s1_straightforward", subtask="Pick",
           target="obj-A", **kw):
    base = dict(episode_id=f"ep-{i:05d}", subtask=subtask, mode_id=mode_id,
                success_once=mode_id.split(".")[1].startswith("s"),
                success_at_end=False, events=[], target_id=target,
                task="Custom", split="Train", policy_tag="RL", source=f"/x/{i}")
    base.update(kw)
    return LabelRecord(**base)


def test_label_trajectory_fields():
    traj = realize(defining_scripts()["pick.s1_straightforward"], seed=1)
    rec = label_trajectory(traj, TH, source="here")
    assert rec.mode_id == "pick.s1_straightforward"
    assert rec.subtask == "Pick"
    assert rec.success_once and rec.success_at_end
    assert rec.source == "here"
    assert [e["kind"] for e in rec.events] == ["Contact", "Grasped", "Success"]
    # JSON round trip
    assert LabelRecord.from_dict(json.loads(rec.to_json())) == rec


def test_label_file_both_formats(tmp_path):
    traj = fuzz(5, SubtaskKind.Open)
    b = tmp_path / "a.trjl"
    t = tmp_path / "a.jsonl"
    write_binary_file(traj, b)
    write_text_file(traj, t)
    assert label_file(b).mode_id == label_file(t).mode_id


def test_label_batch_sorted_and_deterministic(tmp_path):
    paths = []
    for seed in (5, 1, 9, 3):
        traj = fuzz(seed, SubtaskKind.Pick)
        p = tmp_path / f"{traj.header.episode_id}.trjl"
        write_binary_file(traj, p)
        paths.append(p)
    r1 = label_batch(paths, TH, workers=1)
    r2 = label_batch(list(reversed(paths)), TH, workers=2)
    assert [x.episode_id for x in r1.labels] == sorted(
        x.episode_id for x in r1.labels)
    assert [x.to_json() for x in r1.labels] == [x.to_json() for x in r2.labels]
    assert r1.ok and sum(r1.mode_counts.values()) == 4


def test_label_batch_collects_errors(tmp_path):
    good = fuzz(2, SubtaskKind.Place)
    p1 = tmp_path / "good.trjl"
    write_binary_file(good, p1)
    p2 = tmp_path / "bad.trjl"
    p2.write_bytes(p1.read_bytes()[:30])
    result = label_batch([p1, p2], TH)
    assert len(result.labels) == 1
    assert len(result.errors) == 1
    assert "bad.trjl" in result.errors[0]["source"]
    assert not result.ok


def test_labels_jsonl_roundtrip(tmp_path):
    labels = [_label(i) for i in range(5)]
    path = tmp_path / "labels.jsonl"
    write_labels_jsonl(labels, path)
    assert read_labels_jsonl(path) == labels


def test_filter_spec_validation():
    with pytest.raises(EmptyAllowList):
        FilterSpec(allow=[])
    with pytest.raises(ValueError):
        FilterSpec(allow=[AllowRule("Pick", frozenset({"m"}), 0.4)])
    with pytest.raises(ValueError):
        FilterSpec(allow=[AllowRule("Pick", frozenset({"m"}), 1.0)],
                   quota_per_target=0)
    spec = FilterSpec.from_dict({
        "allow": [{"subtask": "Pick", "modes": ["pick.s1_straightforward"],
                   "weight": 1.0}],
        "quota_per_target": 10})
    assert spec.quota_per_target == 10


def test_filter_quota_and_allowlist():
    labels = ([_label(i) for i in range(1200)]
              + [_label(2000 + i, mode_id="pick.f8_drop") for i in range(800)])
    spec = FilterSpec(
        allow=[AllowRule("Pick", frozenset({"pick.s1_straightforward"}), 1.0)],
        quota_per_target=1000)
    manifest = filter_labels(labels, spec)
    assert len(manifest.entries) == 1000
    assert all(e.mode_id == "pick.s1_straightforward" for e in manifest.entries)
    # first 1000 by episode_id
    assert [e.episode_id for e in manifest.entries] == \
        [f"ep-{i:05d}" for i in range(1000)]
    assert manifest.shortfalls == []


def test_filter_50_50_mixing():
    labels = ([_label(i, "place.s1_place_in_goal", "Place") for i in range(400)]
              + [_label(1000 + i, "place.s2_drop_to_goal", "Place")
                 for i in range(400)])
    spec = FilterSpec(
        allow=[AllowRule("Place", frozenset({"place.s1_place_in_goal"}), 0.5),
               AllowRule("Place", frozenset({"place.s2_drop_to_goal"}), 0.5)],
        quota_per_target=500)
    manifest = filter_labels(labels, spec)
    assert len(manifest.entries) == 500
    by_mode = {}
    for e in manifest.entries:
        by_mode[e.mode_id] = by_mode.get(e.mode_id, 0) + 1
    assert by_mode == {"place.s1_place_in_goal": 250,
                       "place.s2_drop_to_goal": 250}


def test_filter_shortfall_reported():
    labels = [_label(i) for i in range(300)]
    spec = FilterSpec(
        allow=[AllowRule("Pick", frozenset({"pick.s1_straightforward"}), 1.0)],
        quota_per_target=1000)
    manifest = filter_labels(labels, spec)
    assert len(manifest.entries) == 300
    assert manifest.shortfalls[0]["shortfall"] == 700


def test_filter_idempotent():
    labels = ([_label(i, "place.s1_place_in_goal", "Place") for i in range(130)]
              + [_label(500 + i, "place.s2_drop_to_goal", "Place")
                 for i in range(70)])
    spec = FilterSpec(
        allow=[AllowRule("Place", frozenset({"place.s1_place_in_goal"}), 0.5),
               AllowRule("Place", frozenset({"place.s2_drop_to_goal"}), 0.5)],
        quota_per_target=150)
    m1 = filter_labels(labels, spec)
    selected_ids = {e.episode_id for e in m1.entries}
    again = [rec for rec in labels if rec.episode_id in selected_ids]
    m2 = filter_labels(again, spec)
    assert m1.to_dict()["entries"] == m2.to_dict()["entries"]
    assert m1.counts == m2.counts


def test_filter_respects_quota_key_per_target():
    labels = ([_label(i, target="A") for i in range(30)]
              + [_label(100 + i, target="B") for i in range(5)])
    spec = FilterSpec(
        allow=[AllowRule("Pick", frozenset({"pick.s1_straightforward"}), 1.0)],
        quota_per_target=10)
    manifest = filter_labels(labels, spec)
    per_target = {}
    for e in manifest.entries:
        per_target[e.target_id] = per_target.get(e.target_id, 0) + 1
    assert per_target == {"A": 10, "B": 5}
    assert len(manifest.shortfalls) == 1  # only B falls short


def test_filter_spec_json_roundtrip(tmp_path):
    spec = FilterSpec(
        allow=[AllowRule("Pick", frozenset({"pick.s1_straightforward"}), 1.0)],
        quota_per_target=7)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()))
    again = FilterSpec.from_json_file(path)
    assert again.to_dict() == spec.to_dict()
