"""hrimux command line.

The CLI is a thin client of the HTTP service: ``serve`` runs the service
(uvicorn) with the live stack; ``simulate``, ``analyze`` and ``replay``
send one request to it. With ``--url`` they target a running server;
without it they mount the app in-process and make the same request, so
batch use needs no daemon. All business logic lives behind the service.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

from .config import load_config


def _request(args, method: str, path: str, payload: dict) -> dict:
    if args.url:
        response = httpx.request(method, args.url.rstrip("/") + path, json=payload, timeout=600.0)
        response.raise_for_status()
        return response.json()

    async def local() -> dict:
        from .service.app import create_app

        config = load_config(args.config, store_root=str(Path(args.store).resolve()) if args.store else None,
                             bus_port=-1, preload_fixtures=True)
        app = create_app(config)
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://hrimux") as client:
            async with _lifespan(app):
                response = await client.request(method, path, json=payload, timeout=600.0)
                response.raise_for_status()
                return response.json()

    return asyncio.run(local())


class _lifespan:
    """Drive a FastAPI app's startup/shutdown outside a server."""

    def __init__(self, app):
        self.app = app
        self._cm = None

    async def __aenter__(self):
        self._cm = self.app.router.lifespan_context(self.app)
        await self._cm.__aenter__()
        return self.app

    async def __aexit__(self, *exc):
        await self._cm.__aexit__(*exc)


def _write_out(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------------


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    config = load_config(
        args.config,
        http_host=args.host,
        http_port=args.port,
        bus_port=args.bus_port,
        store_root=args.store,
        log_path=args.log,
    )
    app = create_app(config)
    print(f"http on {config.http_host}:{config.http_port}, bus on {config.bus_host}:{config.bus_port}")
    uvicorn.run(app, host=config.http_host, port=config.http_port, log_level="warning")
    return 0


def cmd_simulate(args) -> int:
    payload = {
        "sessions": args.sessions,
        "seed": args.seed,
        "modality": args.modality,
        "recall": args.recall,
    }
    data = _request(args, "POST", "/simulate", payload)
    lines = [json.dumps(s, separators=(",", ":")) for s in data["sessions"]]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(lines)} sessions to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    if args.trials:
        from .analytics import load_trials

        trials = [(t.true.value, t.predicted.value if t.predicted else None) for t in load_trials(args.trials)]
        data = _request(args, "POST", "/analyze/confusion", {"trials": trials})
        _write_out(args, data["report"])
        return 0
    if args.ueq:
        from .analytics import load_questionnaire

        data = _request(args, "POST", "/analyze/ueq", {"scores": load_questionnaire(args.ueq)})
        _write_out(args, data["report"])
        return 0
    if not args.data:
        print("analyze: provide --data, --trials or --ueq", file=sys.stderr)
        return 2
    sessions = [json.loads(line) for line in Path(args.data).read_text().splitlines() if line.strip()]
    data = _request(args, "POST", "/analyze", {"sessions": sessions})
    _write_out(args, data["report"])
    return 0


def cmd_replay(args) -> int:
    lines = Path(args.log).read_text().splitlines()
    data = _request(args, "POST", "/replay", {"lines": [ln for ln in lines if ln.strip()]})
    print(f"applied {data['applied']} inputs ({data['skipped']} skipped), final state: {data['final_state']}")
    if args.trace:
        print(" -> ".join(data["states"]))
    if data["errors"]:
        print(f"{len(data['errors'])} error(s):", file=sys.stderr)
        for err in data["errors"][:10]:
            print(f"  {err}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hrimux", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--url", help="target a running hrimux server instead of in-process")
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--store", help="task store root directory")
        p.add_argument("--out", help="write the result here instead of stdout")

    p_serve = sub.add_parser("serve", help="run the live stack (HTTP service + bus)")
    p_serve.add_argument("--config", help="JSON config file")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--bus-port", type=int, default=None, dest="bus_port")
    p_serve.add_argument("--store", default=None)
    p_serve.add_argument("--log", default=None, help="session log file (all bus traffic)")
    p_serve.set_defaults(func=cmd_serve)

    p_sim = sub.add_parser("simulate", help="run a scripted-user study")
    common(p_sim)
    p_sim.add_argument("--sessions", type=int, default=25, help="sessions per modality")
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--modality", choices=["gesture", "touchscreen", "both"], default="both")
    p_sim.add_argument("--recall", type=float, default=None, help="uniform recognizer recall override")
    p_sim.set_defaults(func=cmd_simulate)

    p_an = sub.add_parser("analyze", help="summarize datasets, gesture trials, questionnaires")
    common(p_an)
    p_an.add_argument("--data", help="session dataset (JSONL from simulate)")
    p_an.add_argument("--trials", help="gesture trial file (true\\tpredicted lines)")
    p_an.add_argument("--ueq", help="questionnaire file (one respondent per line)")
    p_an.set_defaults(func=cmd_analyze)

    p_rep = sub.add_parser("replay", help="re-run a logged session's inputs")
    common(p_rep)
    p_rep.add_argument("log", help="session log file (wire lines)")
    p_rep.add_argument("--trace", action="store_true", help="print the full state trace")
    p_rep.set_defaults(func=cmd_replay)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
