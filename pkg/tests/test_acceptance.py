"""Acceptance suite: one test per release criterion, each printing a
PASS line with its measured numbers so a run reads as a checklist.

Run with `pytest tests/test_acceptance.py -s` to see the checklist.
"""

from __future__ import annotations

import math
import random
import statistics as st
import time

import numpy as np
import pytest

from hrimux.analytics import (
    boxplot_stats,
    classify,
    completion_summary,
    confusion_matrix,
    cronbach_alpha,
    task_durations_by_modality,
    TrialRecord,
)
from hrimux.bus import ProtocolError, decode_message, encode_message
from hrimux.fsm import (
    ACTION_STATES,
    Event,
    MACRO_SLOT_SUBMENU,
    MENU_STATES,
    OutcomeKind,
    Signal,
    StateKind,
    build_interface_fsm,
)
from hrimux.gestures import GestureLabel, StochasticRecognizerModel, stochastic_recognize
from hrimux.harness import (
    GESTURE,
    ScenarioConfig,
    StudyConfig,
    TOUCHSCREEN,
    plan_signal_sequence,
    recall_sweep,
    run_study,
)
from hrimux.robot import (
    GRIPPER_CLOSED,
    GRIPPER_OPEN,
    MOVE_A_B,
    Pose,
    RobotSim,
    Trajectory,
    Waypoint,
    load_fixture_tasks,
)
from hrimux.robot.port import SimRobotPort
from hrimux.store import FileTaskStore, MacroBinding, MemoryTaskStore

from test_analytics import alpha_oracle, naive_box
from wire_samples import MALFORMED_LINES, random_message

MASTER_SEEDS = (1, 2, 3, 4, 5)


def _accept(name: str, detail: str = "") -> None:
    print(f"\n[ACCEPT] {name}: PASS {detail}")


def fresh_machine(with_tasks: bool = True):
    store = MemoryTaskStore()
    sim = RobotSim()
    if with_tasks:
        load_fixture_tasks(sim, store, move_duration=2.0, wave_duration=1.0, handover_duration=1.0)
    return build_interface_fsm(store, robot=SimRobotPort(sim)), sim, store


def jump(machine, state_id, slot=None):
    if state_id == MACRO_SLOT_SUBMENU:
        machine.dispatch_event(Event(target=state_id, slot=slot or 1))
    else:
        machine.dispatch_event(Event(target=state_id))


def test_fsm_structural_suite():
    started = time.time()
    machine, _, _ = fresh_machine()
    # construction enforces the four-handler budget on every state
    for state in machine.states.values():
        assert state.transition_count <= 4
    # unbound-slot dispatch is a strict no-op
    before = machine.snapshot()
    out = machine.dispatch_signal(Signal(4))
    assert out.kind is OutcomeKind.IGNORED and machine.snapshot() == before

    rng = random.Random(20_24)
    for step in range(10_000):
        machine.dispatch_signal(Signal(rng.randint(1, 4)))
        machine.validate()
    elapsed = time.time() - started
    assert elapsed < 10.0
    _accept("fsm-structural", f"(10,000-signal fuzz in {elapsed:.2f}s)")


def test_signals_events_equivalence():
    started = time.time()
    checked = 0
    menus = [(m, None) for m in MENU_STATES if m != MACRO_SLOT_SUBMENU]
    menus += [(MACRO_SLOT_SUBMENU, slot) for slot in (1, 2, 3)]
    for state_id, slot in menus:
        probe, _, _ = fresh_machine()
        jump(probe, state_id, slot)
        n_options = len(probe.snapshot().options)
        for target in range(n_options):
            by_signals, _, _ = fresh_machine()
            jump(by_signals, state_id, slot)
            for sig in plan_signal_sequence(by_signals.snapshot(), target):
                by_signals.dispatch_signal(sig)

            by_event, _, _ = fresh_machine()
            jump(by_event, state_id, slot)
            by_event.dispatch_event(Event(target=state_id, option=target, slot=slot))

            assert by_signals.current == by_event.current, (state_id, target)
            assert by_signals.pending == by_event.pending, (state_id, target)
            assert by_signals.context["sequence"] == by_event.context["sequence"]
            assert by_signals.context["macro"] == by_event.context["macro"]
            assert by_signals.context["delete_armed"] == by_event.context["delete_armed"]
            checked += 1
    elapsed = time.time() - started
    assert elapsed < 5.0
    _accept("signals-events-equivalence", f"({checked} menu options, {elapsed:.2f}s)")


def test_menu_slot4_inertness():
    machine, _, _ = fresh_machine()
    for state_id in MENU_STATES:
        jump(machine, state_id)
        for selector in range(len(machine.snapshot().options)):
            machine.active.selector = selector
            before = machine.snapshot()
            out = machine.dispatch_signal(Signal(4))
            assert out.kind is OutcomeKind.IGNORED
            assert machine.snapshot() == before
        assert machine.states[state_id].handlers.get(4) is None
    _accept("menu-slot4-inert", f"({len(MENU_STATES)} menu states)")


def test_recognizer_statistics():
    model = StochasticRecognizerModel()
    assert model.detect_prob[GestureLabel.G1] == 0.40
    rng = random.Random(61)
    n = 10_000
    detected = sum(
        stochastic_recognize(GestureLabel.G1, model, rng) is not None for _ in range(n)
    )
    recall = detected / n
    assert 0.38 <= recall <= 0.42

    # synthetic assessment layout: 11 volunteers x 5 reps x 4 gestures = 220 trials
    trials = []
    for _ in range(11):
        for _ in range(5):
            for label in GestureLabel:
                det = stochastic_recognize(label, model, rng)
                trials.append(TrialRecord(label, det.label if det else None))
    assert len(trials) == 220
    cm = confusion_matrix(trials)
    assert cm.total == 220
    for label in GestureLabel:
        assert cm.row_sum(label) == 55
    assert cm.accuracy == cm.trace / cm.total  # exact, by construction
    _accept("recognizer-statistics", f"(G1 recall {recall:.3f}, 220-trial accuracy {cm.accuracy:.3f})")


def test_analytics_oracles():
    rng = np.random.default_rng(77)
    for _ in range(50):
        n = int(rng.integers(3, 40))
        k = int(rng.integers(2, 15))
        matrix = rng.normal(size=(n, k)) + rng.normal(size=(n, 1))
        assert cronbach_alpha(matrix) == pytest.approx(alpha_oracle(matrix.tolist()), abs=1e-9)
    assert cronbach_alpha([[1, 1], [2, 2], [3, 3]]) == pytest.approx(1.0)

    box_rng = random.Random(78)
    for _ in range(100):
        data = [box_rng.gauss(100, 30) for _ in range(box_rng.randint(1, 80))]
        if box_rng.random() < 0.5:
            data.extend(box_rng.gauss(600, 50) for _ in range(box_rng.randint(1, 4)))
        box = boxplot_stats(data)
        q1, med, q3, wlo, whi, outliers = naive_box(data)
        assert (box.q1, box.median, box.q3) == pytest.approx((q1, med, q3))
        assert (box.whisker_low, box.whisker_high) == pytest.approx((wlo, whi))
        assert box.outliers == pytest.approx(tuple(outliers))

    eps = 1e-12
    assert classify(0.8) == "neutral" and classify(0.8 + eps) == "positive"
    assert classify(-0.8) == "neutral" and classify(-0.8 - eps) == "negative"
    _accept("analytics-oracles", "(alpha 1e-9 x50, boxplot x100, band at +-0.8)")


def test_simulator_properties():
    started = time.time()
    store = MemoryTaskStore()
    sim = RobotSim()
    load_fixture_tasks(sim, store, move_duration=4.0)
    trajectory = store.load_task(MOVE_A_B).trajectory

    def run(pauses):
        s = RobotSim()
        s.play(trajectory)
        poses, steps = [], 0
        while s.busy:
            if steps in pauses:
                s.pause()
                for _ in range(pauses[steps]):
                    s.step(0.05)
                s.resume()
            s.step(0.05)
            poses.append(s.world.arms["right"])
            steps += 1
        return poses

    baseline = run({})
    pause_rng = random.Random(50)
    for _ in range(20):
        pattern = {
            pause_rng.randrange(1, len(baseline)): pause_rng.randint(1, 60)
            for _ in range(pause_rng.randint(1, 4))
        }
        assert run(pattern) == baseline

    # record -> playback round-trip exactness at waypoint times
    rec = RobotSim()
    rec.start_recording("right")
    rec_rng = random.Random(51)
    poses = []
    for i in range(10):
        pose = Pose(
            (rec_rng.uniform(0.1, 0.9), rec_rng.uniform(-0.4, 0.4), rec_rng.uniform(0.0, 0.45)),
            GRIPPER_OPEN if i % 3 else GRIPPER_CLOSED,
        )
        poses.append(pose)
        rec.feed_guidance(pose, 3.0 + i * 0.5)
    recorded = rec.stop_recording()
    player = RobotSim()
    player.play(recorded)
    replayed = [player.world.arms["right"]]
    for a, b in zip(recorded.waypoints, recorded.waypoints[1:]):
        player.step(b.t - a.t)
        replayed.append(player.world.arms["right"])
    assert replayed == poses

    # attachment exclusivity across randomized guidance runs
    excl_rng = random.Random(52)
    checks = 0
    for _ in range(1000):
        s = RobotSim()
        s.start_recording(excl_rng.choice(["left", "right"]))
        t = 0.0
        for _ in range(12):
            t += excl_rng.uniform(0.05, 0.4)
            s.feed_guidance(
                Pose(
                    (excl_rng.uniform(0.2, 0.8), excl_rng.uniform(-0.45, 0.45), excl_rng.uniform(0.0, 0.45)),
                    excl_rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]),
                ),
                t,
            )
            attached = s.world.attached
            assert attached in (None, "left", "right")
            if attached is not None:
                assert s.world.arms[attached].gripper == GRIPPER_CLOSED
                assert s.world.cube == s.world.arms[attached].position
            checks += 1
    elapsed = time.time() - started
    assert elapsed < 30.0
    _accept("simulator-properties", f"(pause x20, roundtrip, {checks} exclusivity checks, {elapsed:.1f}s)")


def test_study_level_reproduction():
    started = time.time()
    completions = []
    for seed in MASTER_SEEDS:
        logs = run_study(StudyConfig(), seed)
        summary = completion_summary(logs)
        durations = task_durations_by_modality(logs)

        # (a) fewer gesture-modality completions than touchscreen
        gesture_done = summary.completed_all[GESTURE]
        touch_done = summary.completed_all[TOUCHSCREEN]
        assert gesture_done < touch_done, f"seed {seed}: {gesture_done} !< {touch_done}"
        completions.append((gesture_done, touch_done))

        # (b) per-task medians: gesture >= touchscreen for tasks 2-4
        for task in (1, 2, 3):
            g = durations[GESTURE][task]
            t = durations[TOUCHSCREEN][task]
            assert g, f"seed {seed}: no gesture data for task {task + 1}"
            assert st.median(g) >= st.median(t), f"seed {seed} task {task + 1}"

        # (c) recall sweep 0.4 -> 1.0 monotonically shrinks the duration gap
        touch_medians = [st.median(durations[TOUCHSCREEN][k]) for k in range(3)]
        gaps = {}
        for p, swept in recall_sweep(StudyConfig(), seed).items():
            swept_durations = task_durations_by_modality(swept)
            gaps[p] = sum(
                st.median(swept_durations[GESTURE][k]) - touch_medians[k] for k in range(3)
            )
        assert gaps[0.4] > gaps[0.7] > gaps[1.0], f"seed {seed}: {gaps}"
    elapsed = time.time() - started
    assert elapsed < 120.0
    _accept(
        "study-qualitative-reproduction",
        f"(completions g<t per seed: {completions}, sweep monotone, {elapsed:.1f}s)",
    )


def test_protocol_roundtrip_and_malformed_corpus():
    rng = random.Random(90)
    count = 0
    for channel in ("imu", "touch", "signal", "event", "gui", "robot", "guidance", "session"):
        for _ in range(40):
            msg = random_message(channel, rng)
            line = encode_message(msg)
            assert decode_message(line) == msg
            assert encode_message(decode_message(line)) == line
            count += 1
    assert len(MALFORMED_LINES) == 20
    for bad in MALFORMED_LINES:
        with pytest.raises(ProtocolError):
            decode_message(bad)
        # decoder state is not a thing: a good message still decodes after any failure
        good = random_message("imu", rng)
        assert decode_message(encode_message(good)) == good
    _accept("protocol-roundtrip", f"({count} messages, {len(MALFORMED_LINES)} malformed rejected)")


def test_store_roundtrip_and_crash_safety(tmp_path):
    store = FileTaskStore(tmp_path / "store")
    rng = random.Random(91)
    wps = []
    t = 0.0
    for i in range(30):
        if i:
            t += rng.uniform(0.001, 3.0)
        wps.append(
            Waypoint(
                t,
                Pose(
                    (rng.uniform(0, 1), rng.uniform(-0.5, 0.5), rng.uniform(0, 0.5)),
                    rng.choice([GRIPPER_OPEN, GRIPPER_CLOSED]),
                ),
            )
        )
    trajectory = Trajectory("left", tuple(wps))
    store.save_task("precise", trajectory)
    assert store.load_task("precise").trajectory == trajectory  # bit-exact

    store.save_sequence("seq", ["a", "b", "c"])
    assert store.load_sequence("seq").tasks == ("a", "b", "c")
    binding = MacroBinding().bind(1, "precise").bind(3, "other")
    store.save_macro("m", binding)
    assert store.load_macro("m") == binding

    # interrupted write: stray temp file, previous version intact
    (tmp_path / "store" / "tasks" / "precise.task.tmp").write_text("hrimux-task v1\ntruncated")
    assert store.load_task("precise").trajectory == trajectory
    _accept("store-roundtrip", "(tasks/sequences/macros bit-exact, crash-safe)")
