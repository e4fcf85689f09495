"""FastAPI service wrapping the core package.

Endpoints mirror the CLI verbs: /simulate runs seeded studies, /analyze
summarizes datasets, /analyze/confusion and /analyze/ueq expose the
evaluation statistics, /replay re-runs logged input traffic. A live
interaction stack (bus, FSM core, simulator, recognizer) starts with the
app; /ws bridges websocket clients onto the bus using the same
line-protocol text frames, and /state serves one-shot GUI+world reads.
The operator console's static assets are mounted under /console when
built.
"""

from __future__ import annotations

import asyncio
import importlib.resources
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import RedirectResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..analytics import (
    AnalyticsError,
    TrialRecord,
    boxplot_stats,
    completion_summary,
    confusion_matrix,
    render_confusion,
    render_timing,
    render_ueq,
    task_durations_by_modality,
    ueq_scale_report,
)
from ..bus.protocol import BusMessage, ProtocolError, SessionNote, decode_message, encode_message
from ..config import AppConfig
from ..gestures.recognizer import GestureLabel
from ..harness.live import LiveStack
from ..harness.replay import replay_lines
from ..harness.session import ScenarioConfig, SessionLog
from ..harness.study import StudyConfig, run_study
from ..harness.user import MODALITIES
from . import models

logger = logging.getLogger(__name__)


def _to_model(log: SessionLog) -> models.SessionLogModel:
    return models.SessionLogModel(
        modality=log.modality,
        seed=log.seed,
        task_durations=log.task_durations,
        completed=log.completed,
        inputs_per_task=log.inputs_per_task,
        total_s=log.total_s,
    )


def _from_model(model: models.SessionLogModel) -> SessionLog:
    return SessionLog(
        modality=model.modality,
        seed=model.seed,
        task_durations=list(model.task_durations),
        completed=list(model.completed),
        inputs_per_task=list(model.inputs_per_task),
        total_s=model.total_s,
    )


def create_app(config: AppConfig | None = None) -> FastAPI:
    config = config or AppConfig()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        stack = LiveStack(config)
        await stack.start()
        app.state.stack = stack
        try:
            yield
        finally:
            await stack.stop()

    app = FastAPI(title="hrimux", version=__version__, lifespan=lifespan)

    @app.get("/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    # -- batch operations ------------------------------------------------------

    @app.post("/simulate", response_model=models.SimulateResponse)
    def simulate(req: models.SimulateRequest) -> models.SimulateResponse:
        if req.modality == "both":
            modalities: tuple[str, ...] = MODALITIES
        elif req.modality in MODALITIES:
            modalities = (req.modality,)
        else:
            raise HTTPException(422, f"modality must be one of {MODALITIES + ('both',)}")
        study = StudyConfig(
            sessions_per_modality=req.sessions,
            modalities=modalities,
            scenario=ScenarioConfig(soft_limit_s=req.soft_limit_s, move_duration_s=req.move_duration_s),
            uniform_recall=req.recall,
        )
        logs = run_study(study, req.seed)
        return models.SimulateResponse(sessions=[_to_model(log) for log in logs])

    @app.post("/analyze", response_model=models.AnalyzeResponse)
    def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
        logs = [_from_model(m) for m in req.sessions]
        if not logs:
            raise HTTPException(422, "no sessions supplied")
        summary = completion_summary(logs)
        durations = task_durations_by_modality(logs)
        modalities = {}
        for modality in summary.sessions:
            per_task = []
            for samples in durations[modality]:
                if not samples:
                    per_task.append(None)
                    continue
                box = boxplot_stats(samples)
                per_task.append(
                    models.BoxStatsModel(
                        n=box.n, median=box.median, q1=box.q1, q3=box.q3,
                        whisker_low=box.whisker_low, whisker_high=box.whisker_high,
                        outliers=list(box.outliers),
                    )
                )
            modalities[modality] = models.ModalityTimingModel(
                sessions=summary.sessions[modality],
                completed_all=summary.completed_all[modality],
                per_task=per_task,
            )
        return models.AnalyzeResponse(modalities=modalities, report=render_timing(logs))

    @app.post("/analyze/confusion", response_model=models.ConfusionResponse)
    def analyze_confusion(req: models.ConfusionRequest) -> models.ConfusionResponse:
        try:
            trials = [
                TrialRecord(GestureLabel(t), None if p is None else GestureLabel(p))
                for t, p in req.trials
            ]
        except ValueError as exc:
            raise HTTPException(422, f"bad gesture label: {exc}")
        if not trials:
            raise HTTPException(422, "no trials supplied")
        cm = confusion_matrix(trials)
        return models.ConfusionResponse(
            counts=[list(row) for row in cm.counts],
            accuracy=cm.accuracy,
            recall={l.value: cm.recall(l) for l in GestureLabel},
            precision={l.value: cm.precision(l) for l in GestureLabel},
            report=render_confusion(cm),
        )

    @app.post("/analyze/ueq", response_model=models.UeqResponse)
    def analyze_ueq(req: models.UeqRequest) -> models.UeqResponse:
        try:
            report = ueq_scale_report(req.scores)
        except AnalyticsError as exc:
            raise HTTPException(422, str(exc))
        return models.UeqResponse(
            n_respondents=report.n_respondents,
            scales=[
                models.UeqScaleModel(
                    scale=s.scale, mean=s.mean, ci_half_width=s.ci_half_width,
                    classification=s.classification, alpha=s.alpha,
                )
                for s in report.scales
            ],
            pragmatic=report.pragmatic,
            hedonic=report.hedonic,
            report=render_ueq(report),
        )

    @app.post("/replay", response_model=models.ReplayResponse)
    def replay(req: models.ReplayRequest) -> models.ReplayResponse:
        result = replay_lines(req.lines)
        return models.ReplayResponse(
            states=list(result.states),
            applied=result.applied,
            skipped=result.skipped,
            final_state=result.final_state,
            errors=list(result.errors),
        )

    # -- live stack ---------------------------------------------------------------

    def stack(app_: FastAPI) -> LiveStack:
        return app_.state.stack

    @app.get("/state", response_model=models.StateResponse)
    def state() -> models.StateResponse:
        live = stack(app)
        snap = live.machine.snapshot()
        world = live.sim.world
        cfg = live.sim.config
        return models.StateResponse(
            gui=models.GuiModel(
                state=snap.state, kind=snap.kind, title=snap.title,
                options=list(snap.options), option_ids=list(snap.option_ids),
                selector=snap.selector, context=snap.context,
            ),
            world=models.WorldModel(
                arms={
                    arm: models.ArmModel(pos=list(pose.position), grip=pose.gripper)
                    for arm, pose in world.arms.items()
                },
                cube=list(world.cube),
                attached=world.attached,
                position_a=list(cfg.position_a),
                position_b=list(cfg.position_b),
            ),
            tasks=live.store.list_tasks(),
        )

    @app.post("/input/touch", response_model=models.DispatchResponse)
    def input_touch(req: models.TouchRequest) -> models.DispatchResponse:
        live = stack(app)
        if (req.option is None) == (req.button is None):
            raise HTTPException(422, "exactly one of option/button required")
        from ..fsm.interface import dispatch_touch

        outcome = dispatch_touch(live.machine, option=req.option, button=req.button)
        if outcome.mutated:
            live.publish_gui()
        return models.DispatchResponse(outcome=outcome.kind.value, state=outcome.state, error=outcome.error)

    @app.websocket("/ws")
    async def websocket_bridge(ws: WebSocket) -> None:
        """Each text frame is one protocol line; semantics match the TCP bus."""
        await ws.accept()
        live = stack(app)
        sub = live.hub.subscribe([], name="ws")

        async def pump() -> None:
            while True:
                msg = await sub.get()
                if msg is None:
                    break
                await ws.send_text(encode_message(msg).decode().rstrip("\n"))

        def error_line(detail: str) -> str:
            reply = BusMessage(
                channel="session", seq=0, t=0.0, payload=SessionNote.make("error", detail=detail)
            )
            return encode_message(reply).decode().rstrip("\n")

        pump_task = asyncio.create_task(pump())
        try:
            while True:
                frame = await ws.receive_text()
                try:
                    msg = decode_message(frame)
                except ProtocolError as exc:
                    await ws.send_text(error_line(str(exc)))
                    continue
                control = (
                    msg.channel == "session"
                    and isinstance(msg.payload, SessionNote)
                    and msg.payload.kind in ("subscribe", "unsubscribe")
                )
                if control:
                    channels = msg.payload.get("channels", [])
                    if msg.payload.kind == "subscribe":
                        sub.channels.update(channels)
                    else:
                        sub.channels.difference_update(channels)
                else:
                    live.hub.publish(msg)
        except WebSocketDisconnect:
            pass
        finally:
            live.hub.unsubscribe(sub)
            sub.dead = True
            sub.queue.put_nowait(None)
            pump_task.cancel()

    console_dir = importlib.resources.files("hrimux").joinpath("console")
    try:
        console_path = str(console_dir)
        if console_dir.joinpath("index.html").is_file():
            app.mount("/console", StaticFiles(directory=console_path, html=True), name="console")

            @app.get("/", include_in_schema=False)
            def index() -> RedirectResponse:
                return RedirectResponse("/console/")

    except (FileNotFoundError, NotADirectoryError):
        pass

    return app
