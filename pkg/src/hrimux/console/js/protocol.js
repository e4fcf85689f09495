/**
 * Bus wire protocol, browser side. One message per line / websocket text
 * frame; schemas mirror protocol.md. Encoding keeps the server's fixed
 * key order so lines stay canonical end to end.
 */
const CHANNELS = [
    "imu",
    "touch",
    "signal",
    "event",
    "gui",
    "robot",
    "guidance",
    "session",
];
export function decodeLine(line) {
    let obj;
    try {
        obj = JSON.parse(line);
    }
    catch {
        throw new Error(`malformed line: ${line.slice(0, 80)}`);
    }
    if (typeof obj !== "object" || obj === null) {
        throw new Error("message must be an object");
    }
    const record = obj;
    const channel = record.channel;
    if (!CHANNELS.includes(channel)) {
        throw new Error(`unknown channel ${String(record.channel)}`);
    }
    if (typeof record.seq !== "number" || typeof record.t !== "number") {
        throw new Error("missing seq/t");
    }
    if (typeof record.payload !== "object" || record.payload === null) {
        throw new Error("missing payload");
    }
    return { channel, seq: record.seq, t: record.t, payload: record.payload };
}
/** Fixed key order per channel keeps encodings canonical. */
export function encodeLine(channel, seq, t, payload) {
    return JSON.stringify({ channel, seq, t, payload });
}
export function touchLine(seq, t, option, button) {
    if ((option === null) === (button === null)) {
        throw new Error("exactly one of option/button");
    }
    return encodeLine("touch", seq, t, { t, option, button });
}
export function guidanceLine(seq, t, arm, pos, grip) {
    return encodeLine("guidance", seq, t, { t, arm, pos, grip });
}
export function subscribeLine(seq, channels) {
    return encodeLine("session", seq, 0.0, { t: 0.0, kind: "subscribe", data: { channels } });
}
export function isGui(msg) {
    return msg.channel === "gui";
}
export function isRobot(msg) {
    return msg.channel === "robot";
}
export function isSession(msg) {
    return msg.channel === "session";
}
