import pytest

from trajlab import (EventKind, RequiredFieldNaN, SubtaskKind, Thresholds,
                     TooShort, Trajectory, defining_scripts, extract_events,
                     realize)
from trajlab.synth import EventScript, ScriptStep

TH = Thresholds()
E = EventKind


def _events(traj):
    return [e.kind for e in extract_events(traj, TH).events]


def test_every_defining_script_extracts_exactly_its_events():
    for mode_id, script in defining_scripts().items():
        traj = realize(script, seed=7)
        assert _events(traj) == [s.kind for s in script.steps], mode_id


def test_event_times_match_script_gaps():
    script = EventScript(subtask_kind=SubtaskKind.Pick,
                         steps=[ScriptStep(E.Contact, 3),
                                ScriptStep(E.Grasped, 2),
                                ScriptStep(E.Success, 4)])
    traj = realize(script, seed=1)
    evs = extract_events(traj, TH).events
    assert [e.t for e in evs] == [3, 5, 9]


def test_too_short_raises():
    traj = realize(defining_scripts()["pick.f6_mobility"], seed=0)
    with pytest.raises(TooShort):
        extract_events(Trajectory(header=traj.header,
                                  records=traj.records[:1]), TH)


def test_place_requires_goal_distance():
    traj = realize(defining_scripts()["place.f7_didnt_grasp"], seed=0)
    for r in traj.records:
        r.dist_obj_goal = float("nan")
    with pytest.raises(RequiredFieldNaN):
        extract_events(traj, TH)


def test_pick_requires_force_channel():
    traj = realize(defining_scripts()["pick.f6_mobility"], seed=0)
    for r in traj.records:
        r.force_ee_target = float("nan")
    with pytest.raises(RequiredFieldNaN):
        extract_events(traj, TH)


def test_excessive_collisions_edge_is_strict_crossing():
    traj = realize(defining_scripts()["pick.f6_mobility"], seed=0)
    # sitting exactly at the limit is not a crossing
    for r in traj.records:
        r.cum_robot_force = 5000.0
    assert _events(traj) == []
    # strictly above on the last step is
    traj.records[-1].cum_robot_force = 5000.5
    assert _events(traj) == [E.ExcessiveCollisions]


def test_excessive_collisions_fires_once_per_crossing():
    traj = realize(defining_scripts()["pick.f5_excessive_collisions"], seed=0)
    kinds = _events(traj)
    assert kinds.count(E.ExcessiveCollisions) == 1


def test_initial_dist_recorded_for_place():
    script = defining_scripts()["place.s2_drop_to_goal"]
    traj = realize(script, seed=5)
    out = extract_events(traj, TH)
    assert out.initial_dist_obj_goal == traj.records[0].dist_obj_goal
    assert out.initial_dist_obj_goal > 0.15


def test_place_release_splits_on_goal_radius():
    s_in = defining_scripts()["place.s1_place_in_goal"]
    s_out = defining_scripts()["place.f8_didnt_reach_goal"]
    assert E.ReleasedAtGoal in _events(realize(s_in, seed=2))
    assert E.ReleasedOutsideGoal in _events(realize(s_out, seed=2))


def test_close_reopen_event_is_falling_closed_edge():
    traj = realize(defining_scripts()["close.f6_opened_after_closed"], seed=3)
    kinds = _events(traj)
    assert kinds[-1] == E.Open
    assert kinds.index(E.Closed) < kinds.index(E.Open)


def test_header_threshold_override_changes_events():
    script = defining_scripts()["pick.f7_cant_grasp"]
    traj = realize(script, seed=4)
    assert _events(traj) == [E.Contact]
    # an override with a tiny collision limit turns drift into a crossing
    override = Thresholds(coll_pick=1e-9)
    traj.header.thresholds_override = override
    assert E.ExcessiveCollisions in _events(traj)
