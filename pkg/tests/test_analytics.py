import random

import pytest

from trajlab import (BUILTIN_PLANS, BothZero, ChainEpisode, ChainPlan,
                     ChainSlot, EmptyInput, LabelRecord, MissingRate,
                     PICK_COARSE, SubtaskKind, SUCCESS_AT_END_MODES,
                     SUCCESS_MODE_IDS, MODE_IDS, independence_upper_bound,
                     mode_table, progressive_completion, ratio_report,
                     round_half_away)


def _labels_from_counts(counts, subtask="Pick"):
    out = []
    i = 0
    success = SUCCESS_MODE_IDS[SubtaskKind(subtask)]
    at_end = SUCCESS_AT_END_MODES[SubtaskKind(subtask)]
    for mode_id, n in counts.items():
        for _ in range(n):
            out.append(LabelRecord(
                episode_id=f"e{i:06d}", subtask=subtask, mode_id=mode_id,
                success_once=mode_id in success,
                success_at_end=mode_id in at_end))
            i += 1
    return out


def test_round_half_away():
    assert round_half_away(2.675, 2) == 2.68   # bankers would give 2.67
    assert round_half_away(0.005, 2) == 0.01
    assert round_half_away(1.0, 2) == 1.0
    assert round_half_away(70.635, 2) == 70.64


def test_mode_table_empty_input():
    with pytest.raises(EmptyInput):
        mode_table([])


def test_mode_table_unknown_group_key():
    with pytest.raises(ValueError):
        mode_table(_labels_from_counts({"pick.f6_mobility": 1}),
                   group_by=("bogus",))


def test_mode_table_all_success():
    labels = _labels_from_counts({"pick.s1_straightforward": 7})
    table = mode_table(labels)
    row = table.to_dict()["rows"][0]
    assert row["sor"] == 100.0
    assert row["saer"] == 100.0
    assert row["fr"] == 0.0
    assert row["modes"]["pick.s1_straightforward"] == 100.0


def test_mode_table_row_identities_fuzzed():
    rng = random.Random(0)
    modes = MODE_IDS[SubtaskKind.Pick]
    for _ in range(50):
        counts = {m: rng.randint(0, 40) for m in modes}
        if sum(counts.values()) == 0:
            counts[modes[0]] = 1
        table = mode_table(_labels_from_counts(counts))
        row = table.to_dict()["rows"][0]
        succ = SUCCESS_MODE_IDS[SubtaskKind.Pick]
        sor_sum = sum(v for m, v in row["modes"].items() if m in succ)
        fr_sum = sum(v for m, v in row["modes"].items() if m not in succ)
        assert abs(row["sor"] + row["fr"] - 100.0) <= 0.011
        assert abs(row["sor"] - sor_sum) <= 0.05
        assert abs(row["fr"] - fr_sum) <= 0.05
        assert row["saer"] <= row["sor"] + 1e-9


def test_mode_table_permutation_invariant():
    labels = _labels_from_counts({"pick.s1_straightforward": 10,
                                  "pick.f8_drop": 5})
    rng = random.Random(1)
    shuffled = labels[:]
    rng.shuffle(shuffled)
    assert mode_table(labels).to_dict() == mode_table(shuffled).to_dict()


def test_mode_table_grouping_scheme_columns():
    labels = _labels_from_counts({
        "pick.s1_straightforward": 4, "pick.f5_excessive_collisions": 3,
        "pick.f7_cant_grasp": 2, "pick.f8_drop": 1})
    table = mode_table(labels, grouping=PICK_COARSE)
    row = table.to_dict()["rows"][0]
    assert row["modes"] == {"S-Once": 40.0, "F-Col": 30.0,
                            "F-Grasp": 20.0, "F-Other": 10.0}


def test_mode_table_group_by_splits_rows():
    labels = (_labels_from_counts({"pick.s1_straightforward": 3})
              + _labels_from_counts({"place.f7_didnt_grasp": 2},
                                    subtask="Place"))
    table = mode_table(labels, group_by=("subtask",))
    rows = table.to_dict()["rows"]
    assert [r["key"]["subtask"] for r in rows] == ["Pick", "Place"]
    assert [r["count"] for r in rows] == [3, 2]


def test_markdown_and_csv_render():
    labels = _labels_from_counts({"pick.s1_straightforward": 1,
                                  "pick.f6_mobility": 1})
    table = mode_table(labels)
    md = table.to_markdown()
    assert md.splitlines()[0].startswith("| subtask | count | SoR | SaeR |")
    assert "50.00" in md
    csv = table.to_csv()
    assert csv.splitlines()[0].startswith("subtask,count,SoR,SaeR")
    # success columns come before FR, failure columns after
    header = csv.splitlines()[0].split(",")
    assert header.index("pick.s1_straightforward") < header.index("FR")
    assert header.index("FR") < header.index("pick.f6_mobility")


def test_ratio_report():
    labels = _labels_from_counts({"place.s1_place_in_goal": 317,
                                  "place.s2_drop_to_goal": 100},
                                 subtask="Place")
    rep = ratio_report(labels, "place.s1_place_in_goal", "place.s2_drop_to_goal")
    assert rep.text == "3.17 : 1"
    mirror = ratio_report(labels, "place.s2_drop_to_goal",
                          "place.s1_place_in_goal")
    assert mirror.text == "1 : 3.17"
    assert (rep.count_a, rep.count_b) == (mirror.count_b, mirror.count_a)


def test_ratio_equal_counts():
    labels = _labels_from_counts({"place.s1_place_in_goal": 5,
                                  "place.s2_drop_to_goal": 5}, subtask="Place")
    rep = ratio_report(labels, "place.s1_place_in_goal", "place.s2_drop_to_goal")
    assert rep.text == "1 : 1"


def test_ratio_both_zero():
    labels = _labels_from_counts({"place.f7_didnt_grasp": 3}, subtask="Place")
    with pytest.raises(BothZero):
        ratio_report(labels, "place.s1_place_in_goal", "place.s2_drop_to_goal")


def test_builtin_plans_shapes():
    assert len(BUILTIN_PLANS["tidyhouse"]) == 20
    assert len(BUILTIN_PLANS["preparegroceries"]) == 12
    assert len(BUILTIN_PLANS["settable"]) == 16
    for plan in BUILTIN_PLANS.values():
        for slot in plan.slots:
            assert slot.auto_success == (slot.subtask is None)
    names = [s.name for s in BUILTIN_PLANS["settable"].slots]
    assert names[:8] == ["Nav1", "Open1", "Nav1", "Pick1",
                         "Nav1", "Place1", "Nav1", "Close1"]


def test_chain_plan_rejects_auto_slot_with_subtask():
    with pytest.raises(ValueError):
        ChainPlan("x", [ChainSlot("bad", subtask="Pick", auto_success=True)])


def _plan4():
    return ChainPlan("p", [
        ChainSlot("Nav", auto_success=True), ChainSlot("Pick", "Pick"),
        ChainSlot("Nav", auto_success=True), ChainSlot("Place", "Place")])


def test_progressive_completion_counting():
    plan = _plan4()
    eps = []
    for i in range(10):
        pick_ok = i < 8
        place_ok = i < 5          # place success only among pick successes
        eps.append(ChainEpisode(f"e{i}", [True, pick_ok, True, place_ok]))
    out = progressive_completion(eps, plan)
    assert out == [100.0, 80.0, 80.0, 50.0]


def test_progressive_completion_all_success_and_monotone():
    plan = _plan4()
    eps = [ChainEpisode(f"e{i}", [True] * 4) for i in range(3)]
    assert progressive_completion(eps, plan) == [100.0] * 4
    rng = random.Random(3)
    eps = [ChainEpisode(f"e{i}", [rng.random() < 0.7 for _ in range(4)])
           for i in range(200)]
    out = progressive_completion(eps, plan)
    assert all(a >= b for a, b in zip(out, out[1:]))
    assert out[0] <= 100.0


def test_progressive_completion_auto_slots_ignore_episode_value():
    plan = _plan4()
    eps = [ChainEpisode("e0", [False, True, False, True])]
    assert progressive_completion(eps, plan) == [100.0] * 4


def test_progressive_completion_misaligned_raises():
    with pytest.raises(ValueError):
        progressive_completion([ChainEpisode("e0", [True])], _plan4())
    with pytest.raises(EmptyInput):
        progressive_completion([], _plan4())


def test_independence_upper_bound():
    out = independence_upper_bound({"Pick": 0.8, "Place": 0.5}, _plan4())
    assert out == [100.0, 80.0, 80.0, 40.0]
    assert independence_upper_bound(
        {"Pick": 1.0, "Place": 1.0}, _plan4()) == [100.0] * 4
    with pytest.raises(MissingRate):
        independence_upper_bound({"Pick": 0.8}, _plan4())


def test_chain_plan_dict_roundtrip():
    plan = BUILTIN_PLANS["settable"]
    again = ChainPlan.from_dict(plan.to_dict())
    assert again.to_dict() == plan.to_dict()
