/**
 * Bus wire protocol, browser side. One message per line / websocket text
 * frame; schemas mirror protocol.md. Encoding keeps the server's fixed
 * key order so lines stay canonical end to end.
 */

export type Channel =
  | "imu"
  | "touch"
  | "signal"
  | "event"
  | "gui"
  | "robot"
  | "guidance"
  | "session";

export interface GuiSnapshot {
  state: string;
  kind: "menu" | "action";
  title: string;
  options: string[];
  option_ids: string[];
  selector: number;
  context: string;
}

export interface ArmPose {
  pos: [number, number, number];
  grip: "open" | "closed";
}

export interface RobotState {
  t: number;
  arms: Record<string, ArmPose>;
  cube: [number, number, number];
  attached: string | null;
}

export interface TouchPayload {
  t: number;
  option: number | null;
  button: string | null;
}

export interface GuidancePayload {
  t: number;
  arm: "left" | "right";
  pos: [number, number, number];
  grip: "open" | "closed";
}

export interface SessionPayload {
  t: number;
  kind: string;
  data: Record<string, unknown>;
}

export interface BusLine {
  channel: Channel;
  seq: number;
  t: number;
  payload: unknown;
}

const CHANNELS: Channel[] = [
  "imu",
  "touch",
  "signal",
  "event",
  "gui",
  "robot",
  "guidance",
  "session",
];

export function decodeLine(line: string): BusLine {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    throw new Error(`malformed line: ${line.slice(0, 80)}`);
  }
  if (typeof obj !== "object" || obj === null) {
    throw new Error("message must be an object");
  }
  const record = obj as Record<string, unknown>;
  const channel = record.channel as Channel;
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
export function encodeLine(channel: Channel, seq: number, t: number, payload: object): string {
  return JSON.stringify({ channel, seq, t, payload });
}

export function touchLine(seq: number, t: number, option: number | null, button: string | null): string {
  if ((option === null) === (button === null)) {
    throw new Error("exactly one of option/button");
  }
  return encodeLine("touch", seq, t, { t, option, button });
}

export function guidanceLine(
  seq: number,
  t: number,
  arm: "left" | "right",
  pos: [number, number, number],
  grip: "open" | "closed",
): string {
  return encodeLine("guidance", seq, t, { t, arm, pos, grip });
}

export function subscribeLine(seq: number, channels: string[]): string {
  return encodeLine("session", seq, 0.0, { t: 0.0, kind: "subscribe", data: { channels } });
}

export function isGui(msg: BusLine): msg is BusLine & { payload: GuiSnapshot } {
  return msg.channel === "gui";
}

export function isRobot(msg: BusLine): msg is BusLine & { payload: RobotState } {
  return msg.channel === "robot";
}

export function isSession(msg: BusLine): msg is BusLine & { payload: SessionPayload } {
  return msg.channel === "session";
}
