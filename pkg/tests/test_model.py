import math

import pytest

from trajlab import (ArticulationKind, InvariantViolation, SubtaskKind,
                     Thresholds, TimestepRecord, Trajectory, TrajectoryHeader,
                     check_valid, f32, validate)


def _rec(t, **kw):
    base = dict(
        t=t, q_arm=(0.0,) * 7, qd_arm=(0.0,) * 7, q_tor=0.0,
        v_base_x=0.0, v_base_y=0.0, omega_base=0.0,
        dist_ee_rest=0.5, dist_obj_goal=float("nan"),
        force_ee_target=0.0, cum_robot_force=float(t),
        art_q=float("nan"), grasped=False,
    )
    base.update(kw)
    return TimestepRecord(**base)


def _traj(n=3, **hdr_kw):
    hdr = TrajectoryHeader(episode_id="ep-1", **hdr_kw)
    return Trajectory(header=hdr, records=[_rec(t) for t in range(n)])


def test_f32_quantization():
    assert f32(0.1) != 0.1
    assert f32(f32(0.1)) == f32(0.1)
    assert f32(0.5) == 0.5
    assert math.isnan(f32(float("nan")))


def test_header_roundtrip_through_dict():
    hdr = TrajectoryHeader(
        episode_id="e", task="TidyHouse", subtask_kind="Open", split="Train",
        policy_tag="RL-Per", target_id="fridge",
        articulation_kind="Fridge", art_qmin=0.0, art_qmax=1.6)
    back = TrajectoryHeader.from_dict(hdr.to_dict())
    assert back == hdr
    assert back.has_articulation


def test_header_thresholds_override_resolution():
    override = Thresholds(coll_pick=123.0)
    hdr = TrajectoryHeader(episode_id="e", thresholds_override=override)
    assert hdr.thresholds(Thresholds()) is override
    assert TrajectoryHeader(episode_id="e").thresholds().coll_pick == 5000.0


def test_record_quantized_rounds_every_float():
    rec = _rec(0, q_tor=0.1, q_arm=(0.1,) * 7)
    q = rec.quantized()
    assert q.q_tor == f32(0.1)
    assert all(v == f32(0.1) for v in q.q_arm)


def test_validate_clean_trajectory():
    assert validate(_traj()) == []
    check_valid(_traj())


def test_validate_flags_cumulative_force_decrease():
    traj = _traj(3)
    traj.records[2].cum_robot_force = 0.5
    msgs = [f.message for f in validate(traj) if f.is_error]
    assert any("decreased at t=2" in m for m in msgs)
    with pytest.raises(InvariantViolation):
        check_valid(traj)


def test_validate_flags_noncontiguous_steps():
    traj = _traj(3)
    traj.records[1].t = 5
    assert any("t=5" in f.message for f in validate(traj) if f.is_error)


def test_validate_flags_arm_dof_mismatch():
    traj = _traj(2)
    traj.records[0].q_arm = (0.0,) * 6
    assert any("arm vectors" in f.message for f in validate(traj) if f.is_error)


def test_validate_requires_articulation_for_open():
    traj = _traj(2, subtask_kind="Open")
    assert any("requires an articulation" in f.message
               for f in validate(traj) if f.is_error)


def test_validate_art_q_out_of_bounds_is_warning_only():
    traj = _traj(2, subtask_kind="Close", articulation_kind="Drawer",
                 art_qmin=0.0, art_qmax=0.5)
    for r in traj.records:
        r.art_q = 0.9
    findings = validate(traj)
    assert any(f.severity == "warning" for f in findings)
    assert not any(f.is_error for f in findings)
    check_valid(traj)


def test_validate_too_few_records():
    traj = _traj(1)
    assert any("at least 2" in f.message for f in validate(traj))


def test_thresholds_validation():
    with pytest.raises(ValueError):
        Thresholds(rest_radius=-1.0)
    with pytest.raises(ValueError):
        Thresholds(open_frac_fridge=1.5)
    with pytest.raises(ValueError):
        Thresholds.from_dict({"no_such_field": 1.0})
    th = Thresholds.from_dict({"coll_pick": 10.0})
    assert th.coll_pick == 10.0


def test_thresholds_lookups():
    th = Thresholds()
    assert th.collision_limit(SubtaskKind.Pick) == 5000.0
    assert th.collision_limit("Place") == 7500.0
    assert th.collision_limit("Open") == th.collision_limit("Close") == 10000.0
    assert th.open_frac(ArticulationKind.Fridge) == 0.75
    assert th.open_frac("Drawer") == 0.9
    with pytest.raises(ValueError):
        th.open_frac("None")
