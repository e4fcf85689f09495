"""TCP endpoint of the interaction bus.

Clients hold one persistent connection and exchange newline-delimited
protocol messages. A client publishes by writing lines; it receives the
channels it asked for with a session/subscribe control message:

    {"channel":"session","seq":0,"t":0,"payload":{"kind":"subscribe",
     "data":{"channels":["gui","robot"]}}}

Control messages are consumed by the server; everything else is fanned
out through the hub to all matching sessions in publication order. A
malformed line gets a session/error reply and the connection stays up;
a session that stops reading is disconnected once its buffer limit fills.
"""

from __future__ import annotations

import asyncio
import logging

from .hub import BusHub, Subscription
from .protocol import (
    BusMessage,
    MAX_LINE_BYTES,
    ProtocolError,
    SeqTracker,
    SessionNote,
    decode_message,
    encode_message,
)

logger = logging.getLogger(__name__)


class BusServer:
    def __init__(self, hub: BusHub, host: str = "127.0.0.1", port: int = 7780):
        self.hub = hub
        self.host = host
        self.port = port
        self._server: asyncio.AbstractServer | None = None
        self._sessions: set[asyncio.Task] = set()
        self._err_seq = 0

    async def start(self) -> None:
        # port busy surfaces as OSError to the caller
        self._server = await asyncio.start_server(
            self._handle_client, self.host, self.port, limit=MAX_LINE_BYTES
        )
        logger.info("bus listening on %s:%d", self.host, self.port)

    async def stop(self) -> None:
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
            self._server = None
        for task in list(self._sessions):
            task.cancel()
        if self._sessions:
            await asyncio.gather(*self._sessions, return_exceptions=True)
        self._sessions.clear()

    @property
    def address(self) -> tuple[str, int]:
        assert self._server is not None and self._server.sockets
        sock = self._server.sockets[0].getsockname()
        return sock[0], sock[1]

    # -- per-session handling ----------------------------------------------------

    async def _handle_client(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        task = asyncio.current_task()
        self._sessions.add(task)
        sub = self.hub.subscribe([], name=f"tcp-{writer.get_extra_info('peername')}")
        pump = asyncio.create_task(self._pump(sub, writer))
        tracker = SeqTracker()
        try:
            while True:
                try:
                    line = await reader.readline()
                except (asyncio.LimitOverrunError, ValueError):
                    await self._reply_error(writer, "line too long")
                    break
                if not line:
                    break
                if not line.strip():
                    continue
                try:
                    msg = decode_message(line)
                except ProtocolError as exc:
                    await self._reply_error(writer, str(exc))
                    continue
                if not tracker.check(msg):
                    logger.warning("non-monotonic seq from %s on %s", sub.name, msg.channel)
                if self._is_control(msg):
                    self._apply_control(sub, msg.payload)
                else:
                    self.hub.publish(msg)
        except (ConnectionResetError, BrokenPipeError):
            pass
        finally:
            self.hub.unsubscribe(sub)
            sub.dead = True
            sub.queue.put_nowait(None)
            await _cancel(pump)
            writer.close()
            try:
                await writer.wait_closed()
            except (ConnectionResetError, BrokenPipeError):
                pass
            self._sessions.discard(task)

    @staticmethod
    def _is_control(msg: BusMessage) -> bool:
        return msg.channel == "session" and isinstance(msg.payload, SessionNote) and msg.payload.kind in (
            "subscribe",
            "unsubscribe",
        )

    def _apply_control(self, sub: Subscription, note: SessionNote) -> None:
        channels = note.get("channels", [])
        if note.kind == "subscribe":
            sub.channels.update(channels)
        else:
            sub.channels.difference_update(channels)

    async def _pump(self, sub: Subscription, writer: asyncio.StreamWriter) -> None:
        try:
            while True:
                msg = await sub.get()
                if msg is None:
                    break
                writer.write(encode_message(msg))
                await writer.drain()
        except (ConnectionResetError, BrokenPipeError, asyncio.CancelledError):
            pass

    async def _reply_error(self, writer: asyncio.StreamWriter, detail: str) -> None:
        self._err_seq += 1
        reply = BusMessage(
            channel="session",
            seq=self._err_seq,
            t=0.0,
            payload=SessionNote.make("error", detail=detail),
        )
        try:
            writer.write(encode_message(reply))
            await writer.drain()
        except (ConnectionResetError, BrokenPipeError):
            pass


async def _cancel(task: asyncio.Task) -> None:
    task.cancel()
    try:
        await task
    except asyncio.CancelledError:
        pass
