"""Task store: round-trips, overwrite semantics, atomicity."""

from __future__ import annotations

import random

import pytest

from hrimux.robot import GRIPPER_CLOSED, GRIPPER_OPEN, Pose, Trajectory, Waypoint
from hrimux.store import (
    FileTaskStore,
    MacroBinding,
    MemoryTaskStore,
    NotFoundError,
    StoreError,
)


def random_trajectory(seed, n=15, arm="right"):
    rng = random.Random(seed)
    wps = []
    t = 0.0
    for i in range(n):
        if i:
            t += rng.uniform(0.01, 2.0)
        wps.append(
            Waypoint(
                t,
                Pose(
                    (rng.uniform(0, 1), rng.uniform(-0.5, 0.5), rng.uniform(0, 0.5)),
                    rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]),
                ),
            )
        )
    return Trajectory(arm, tuple(wps))


@pytest.fixture(params=["file", "memory"])
def store(request, tmp_path):
    if request.param == "file":
        return FileTaskStore(tmp_path / "store")
    return MemoryTaskStore()


def test_task_roundtrip_bit_exact(store):
    traj = random_trajectory(1)
    store.save_task("t1", traj)
    assert store.load_task("t1").trajectory == traj


def test_load_missing_task(store):
    with pytest.raises(NotFoundError):
        store.load_task("nope")


def test_delete_then_load_not_found(store):
    store.save_task("t1", random_trajectory(2))
    store.delete_task("t1")
    with pytest.raises(NotFoundError):
        store.load_task("t1")


def test_save_twice_second_wins(store):
    first = random_trajectory(3)
    second = random_trajectory(4)
    store.save_task("t1", first)
    store.save_task("t1", second)
    assert store.load_task("t1").trajectory == second


def test_list_tasks_lexicographic(store):
    for name in ("zeta", "alpha", "mid"):
        store.save_task(name, random_trajectory(5))
    assert store.list_tasks() == ["alpha", "mid", "zeta"]


def test_sequence_roundtrip(store):
    store.save_sequence("s1", ["action_1", "action_2"])
    seq = store.load_sequence("s1")
    assert seq.tasks == ("action_1", "action_2")


def test_macro_roundtrip(store):
    binding = MacroBinding().bind(1, "move_a_b").bind(2, "move_b_a")
    store.save_macro("m1", binding)
    loaded = store.load_macro("m1")
    assert loaded.get(1) == "move_a_b"
    assert loaded.get(2) == "move_b_a"
    assert loaded.get(3) is None


def test_macro_slot4_not_bindable():
    with pytest.raises(ValueError):
        MacroBinding().bind(4, "move_a_b")


def test_empty_trajectory_roundtrip(store):
    store.save_task("empty", Trajectory("left", ()))
    assert store.load_task("empty").trajectory.empty


def test_invalid_names_rejected(store):
    with pytest.raises(StoreError):
        store.save_task("../evil", random_trajectory(6))
    with pytest.raises(StoreError):
        store.save_task("", random_trajectory(6))


def test_interrupted_write_preserves_previous_version(tmp_path):
    store = FileTaskStore(tmp_path / "store")
    original = random_trajectory(7)
    store.save_task("t1", original)
    # a crash between temp-file write and rename leaves a stray .tmp behind
    victim = tmp_path / "store" / "tasks" / "t1.task.tmp"
    victim.write_text("hrimux-task v1\ngarbage that never got renamed")
    assert store.load_task("t1").trajectory == original
    assert store.list_tasks() == ["t1"]
    # the next complete save replaces the entity atomically
    replacement = random_trajectory(8)
    store.save_task("t1", replacement)
    assert store.load_task("t1").trajectory == replacement


def test_corrupt_file_reports_store_error(tmp_path):
    store = FileTaskStore(tmp_path / "store")
    path = tmp_path / "store" / "tasks" / "bad.task"
    path.write_text("not a task file\n")
    with pytest.raises(StoreError):
        store.load_task("bad")


def test_file_store_full_float_precision(tmp_path):
    store = FileTaskStore(tmp_path / "store")
    traj = Trajectory(
        "right",
        (
            Waypoint(0.0, Pose((0.1 + 0.2, 1 / 3, 2 ** -20))),
            Waypoint(0.123456789123456789, Pose((-0.0, 1e-300, 0.5))),
        ),
    )
    store.save_task("precise", traj)
    loaded = store.load_task("precise").trajectory
    assert loaded == traj  # exact, not approximate


def test_deleting_task_keeps_sequences_lazily_invalid(store):
    store.save_task("a", random_trajectory(9))
    store.save_sequence("seq", ["a", "b"])
    store.delete_task("a")
    # the sequence definition survives; validity is checked at run time
    assert store.load_sequence("seq").tasks == ("a", "b")
