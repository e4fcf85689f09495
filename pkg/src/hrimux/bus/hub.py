"""In-process pub/sub hub: per-channel ordered fan-out over asyncio queues.

All hub calls happen on one event loop, which is what serializes delivery:
publish() appends to every matching subscriber queue in subscription
order, so two subscribers of a channel always observe the same message
order. A subscriber that stops draining fills its queue (default limit
10,000) and is disconnected rather than silently skipped.
"""

from __future__ import annotations

import asyncio
import itertools
import logging
from dataclasses import dataclass, field

from .protocol import BusMessage, CHANNELS

logger = logging.getLogger(__name__)

DEFAULT_BUFFER_LIMIT = 10_000

_ids = itertools.count(1)


@dataclass
class Subscription:
    channels: set[str]
    queue: asyncio.Queue = field(default_factory=asyncio.Queue)
    name: str = ""
    dead: bool = False

    def matches(self, channel: str) -> bool:
        return "*" in self.channels or channel in self.channels

    async def get(self) -> BusMessage | None:
        """Next message; None once the hub dropped this subscriber."""
        if self.dead and self.queue.empty():
            return None
        return await self.queue.get()


class BusHub:
    def __init__(self, buffer_limit: int = DEFAULT_BUFFER_LIMIT):
        self.buffer_limit = buffer_limit
        self._subs: list[Subscription] = []

    def subscribe(self, channels, name: str = "") -> Subscription:
        chans = {channels} if isinstance(channels, str) else set(channels)
        unknown = chans - set(CHANNELS) - {"*"}
        if unknown:
            raise ValueError(f"unknown channel(s): {sorted(unknown)}")
        sub = Subscription(
            channels=chans,
            queue=asyncio.Queue(maxsize=self.buffer_limit),
            name=name or f"sub-{next(_ids)}",
        )
        self._subs.append(sub)
        return sub

    def unsubscribe(self, sub: Subscription) -> None:
        if sub in self._subs:
            self._subs.remove(sub)

    def publish(self, msg: BusMessage) -> None:
        for sub in list(self._subs):
            if sub.dead or not sub.matches(msg.channel):
                continue
            try:
                sub.queue.put_nowait(msg)
            except asyncio.QueueFull:
                # deterministic failure beats silent drops
                logger.warning("subscriber %s over buffer limit; disconnecting", sub.name)
                sub.dead = True
                self._subs.remove(sub)
                try:
                    sub.queue.put_nowait(None)
                except asyncio.QueueFull:
                    pass

    def close_all(self) -> None:
        for sub in list(self._subs):
            sub.dead = True
            try:
                sub.queue.put_nowait(None)
            except asyncio.QueueFull:
                pass
        self._subs.clear()
