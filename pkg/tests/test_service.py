"""HTTP service, websocket bridge, live stack, CLI."""

from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from hrimux.bus import BusMessage, ImuMessage, SessionNote, TouchMessage, decode_message, encode_message
from hrimux.config import AppConfig
from hrimux.harness.live import default_templates
from hrimux.service import create_app


@pytest.fixture
def client(tmp_path):
    config = AppConfig(bus_port=-1, store_root=str(tmp_path / "store"), move_duration_s=1.0)
    app = create_app(config)
    with TestClient(app) as c:
        yield c


def line(channel, seq, payload):
    return encode_message(BusMessage(channel, seq, 0.0, payload)).decode().rstrip("\n")


def test_health(client):
    data = client.get("/health").json()
    assert data["status"] == "ok"


def test_console_served_when_built(client):
    import importlib.resources

    if not importlib.resources.files("hrimux").joinpath("console/index.html").is_file():
        pytest.skip("console bundle not built")
    page = client.get("/console/")
    assert page.status_code == 200
    assert "console-root" in page.text


def test_simulate_deterministic(client):
    req = {"sessions": 2, "seed": 4, "modality": "gesture"}
    a = client.post("/simulate", json=req).json()
    b = client.post("/simulate", json=req).json()
    assert a == b
    assert len(a["sessions"]) == 2
    assert all(s["modality"] == "gesture" for s in a["sessions"])


def test_simulate_both_modalities(client):
    data = client.post("/simulate", json={"sessions": 1, "seed": 1}).json()
    assert {s["modality"] for s in data["sessions"]} == {"gesture", "touchscreen"}


def test_simulate_rejects_bad_modality(client):
    assert client.post("/simulate", json={"modality": "telepathy"}).status_code == 422


def test_analyze_dataset(client):
    sessions = client.post("/simulate", json={"sessions": 3, "seed": 2}).json()["sessions"]
    data = client.post("/analyze", json={"sessions": sessions}).json()
    assert set(data["modalities"]) == {"gesture", "touchscreen"}
    touch = data["modalities"]["touchscreen"]
    assert touch["sessions"] == 3
    assert len(touch["per_task"]) == 4
    assert "timing summary" in data["report"]


def test_analyze_confusion_endpoint(client):
    trials = [["G1", "G1"], ["G1", None], ["G2", "G2"], ["G2", "G1"]]
    data = client.post("/analyze/confusion", json={"trials": trials}).json()
    assert data["accuracy"] == 0.5
    assert data["recall"]["G1"] == 0.5
    assert data["precision"]["G1"] == 0.5


def test_analyze_ueq_endpoint(client):
    data = client.post("/analyze/ueq", json={"scores": [[0.0] * 26] * 4}).json()
    assert data["n_respondents"] == 4
    assert all(s["classification"] == "neutral" for s in data["scales"])


def test_analyze_ueq_rejects_bad_shape(client):
    assert client.post("/analyze/ueq", json={"scores": [[0.0] * 5]}).status_code == 422


def test_replay_endpoint_touch_walkthrough(client):
    lines = [
        line("touch", 1, TouchMessage(t=0.1, option=1)),  # main -> playback menu
        line("touch", 2, TouchMessage(t=0.2, option=2)),  # third task entry -> playback action
        line("session", 3, SessionNote.make("playback-finished", t=5.0)),
        line("touch", 4, TouchMessage(t=6.0, option=4)),  # back -> main
    ]
    data = client.post("/replay", json={"lines": lines}).json()
    assert data["applied"] == 4
    assert data["states"] == ["playback_menu", "playback_action", "playback_menu", "main_menu"]
    assert data["final_state"] == "main_menu"
    # replay is deterministic
    again = client.post("/replay", json={"lines": lines}).json()
    assert again == data


def test_replay_reports_bad_lines(client):
    data = client.post("/replay", json={"lines": ["garbage"]}).json()
    assert data["applied"] == 0
    assert data["errors"]


def test_state_endpoint(client):
    data = client.get("/state").json()
    assert data["gui"]["state"] == "main_menu"
    assert len(data["gui"]["options"]) == 4
    assert data["world"]["attached"] is None
    assert data["tasks"] == ["action_1", "action_2", "move_a_b"]


def test_input_touch_endpoint(client):
    data = client.post("/input/touch", json={"option": 1}).json()
    assert data["outcome"] == "state-changed"
    assert client.get("/state").json()["gui"]["state"] == "playback_menu"
    data = client.post("/input/touch", json={"option": 99}).json()
    assert data["outcome"] == "rejected"


def test_input_touch_validation(client):
    assert client.post("/input/touch", json={}).status_code == 422
    assert client.post("/input/touch", json={"option": 1, "button": "stop"}).status_code == 422


def test_websocket_press_broadcasts_gui(client):
    with client.websocket_connect("/ws") as ws:
        ws.send_text(line("session", 1, SessionNote.make("subscribe", channels=["gui"])))
        ws.send_text(line("touch", 2, TouchMessage(t=0.0, option=3)))  # macro menu
        frame = decode_message(ws.receive_text())
        assert frame.channel == "gui"
        assert frame.payload.state == "macro_menu"


def test_websocket_malformed_frame_gets_error(client):
    with client.websocket_connect("/ws") as ws:
        ws.send_text("not a line")
        frame = decode_message(ws.receive_text())
        assert frame.channel == "session"
        assert frame.payload.kind == "error"


def test_websocket_imu_replay_selects_in_main_menu(client):
    templates, _ = default_templates()
    matrix = templates[list(templates)[0]].matrix()  # G1 template
    with client.websocket_connect("/ws") as ws:
        for i in range(matrix.shape[0]):
            payload = ImuMessage(t=i * 0.1, accel=tuple(matrix[i, :3]), gyro=tuple(matrix[i, 3:]))
            ws.send_text(line("imu", i + 1, payload))
        deadline = time.time() + 5.0
        while time.time() < deadline:
            state = client.get("/state").json()["gui"]["state"]
            if state != "main_menu":
                break
            time.sleep(0.02)
        # G1 -> slot 1 -> select current (record) in the main menu
        assert client.get("/state").json()["gui"]["state"] == "record_menu"


def test_session_log_written_and_replayable(tmp_path):
    config = AppConfig(
        bus_port=-1,
        store_root=str(tmp_path / "store"),
        log_path=str(tmp_path / "session.log"),
    )
    app = create_app(config)
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_text(line("touch", 1, TouchMessage(t=0.0, option=0)))  # record menu
            ws.send_text(line("touch", 2, TouchMessage(t=0.1, option=4)))  # back
            ws.send_text(line("touch", 3, TouchMessage(t=0.2, option=2)))  # sequence menu
            deadline = time.time() + 5.0
            while time.time() < deadline:
                if client.get("/state").json()["gui"]["state"] == "sequence_menu":
                    break
                time.sleep(0.02)
        log_lines = (tmp_path / "session.log").read_text().splitlines()
        assert log_lines
        data = client.post("/replay", json={"lines": log_lines}).json()
        assert data["states"][-3:] == ["record_menu", "main_menu", "sequence_menu"]


# -- CLI ------------------------------------------------------------------------------


def test_cli_simulate_and_analyze(tmp_path, capsys):
    from hrimux.cli import main

    dataset = tmp_path / "ds.jsonl"
    rc = main(
        [
            "simulate", "--sessions", "2", "--seed", "5", "--modality", "touchscreen",
            "--store", str(tmp_path / "s1"), "--out", str(dataset),
        ]
    )
    assert rc == 0
    lines = dataset.read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["modality"] == "touchscreen"

    rc = main(["analyze", "--data", str(dataset), "--store", str(tmp_path / "s2")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "timing summary" in out


def test_cli_analyze_trials(tmp_path, capsys):
    from hrimux.cli import main

    trials = tmp_path / "trials.tsv"
    trials.write_text("G1 G1\nG1 -\nG2 G2\n")
    rc = main(["analyze", "--trials", str(trials), "--store", str(tmp_path / "s")])
    assert rc == 0
    assert "acc=" in capsys.readouterr().out


def test_cli_replay(tmp_path, capsys):
    from hrimux.cli import main

    log = tmp_path / "log.jsonl"
    log.write_text(
        line("touch", 1, TouchMessage(t=0.0, option=1))
        + "\n"
        + line("touch", 2, TouchMessage(t=0.1, option=4))
        + "\n"
    )
    rc = main(["replay", str(log), "--trace", "--store", str(tmp_path / "s")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "final state: main_menu" in out
    assert "playback_menu -> main_menu" in out
