from .hub import BusHub, DEFAULT_BUFFER_LIMIT, Subscription
from .protocol import (
    BusMessage,
    CHANNELS,
    GuidanceMessage,
    ImuMessage,
    MAX_LINE_BYTES,
    ProtocolError,
    RobotStateMessage,
    SeqTracker,
    SessionNote,
    TouchMessage,
    decode_message,
    encode_message,
)
from .server import BusServer

__all__ = [
    "BusHub",
    "BusMessage",
    "BusServer",
    "CHANNELS",
    "DEFAULT_BUFFER_LIMIT",
    "GuidanceMessage",
    "ImuMessage",
    "MAX_LINE_BYTES",
    "ProtocolError",
    "RobotStateMessage",
    "SeqTracker",
    "SessionNote",
    "Subscription",
    "TouchMessage",
    "decode_message",
    "encode_message",
]
