/**
 * Bus connection over a websocket: subscribe once on open, hand every
 * decoded line to the listener, and queue at most 10 outbound messages
 * while disconnected (older presses are dropped with a visible warning
 * rather than silently replayed minutes later).
 */

import { BusLine, decodeLine, subscribeLine } from "./protocol.js";

export const OFFLINE_QUEUE_LIMIT = 10;

export interface SocketLike {
  readonly readyState: number;
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

const OPEN = 1;

export class BusConnection {
  private socket: SocketLike | null = null;
  private queue: string[] = [];
  private seq = 0;
  private reconnectAttempts = 0;
  private closed = false;
  dropped = 0;

  onLine: ((msg: BusLine) => void) | null = null;
  onStatus: ((connected: boolean) => void) | null = null;
  onDrop: ((count: number) => void) | null = null;

  constructor(
    private url: string,
    private channels: string[],
    private factory: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {}

  connect(): void {
    this.closed = false;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.reconnectAttempts = 0;
      socket.send(subscribeLine(this.nextSeq(), this.channels));
      for (const line of this.queue.splice(0)) {
        socket.send(line);
      }
      this.onStatus?.(true);
    };
    socket.onclose = () => {
      this.onStatus?.(false);
      if (!this.closed) {
        this.scheduleReconnect();
      }
    };
    socket.onmessage = (ev) => {
      try {
        this.onLine?.(decodeLine(String(ev.data)));
      } catch {
        // a malformed frame is a connection fault, not a crash
        this.onStatus?.(false);
      }
    };
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }

  get connected(): boolean {
    return this.socket !== null && this.socket.readyState === OPEN;
  }

  nextSeq(): number {
    return ++this.seq;
  }

  /** Send one line now, or queue it (bounded) while disconnected. */
  send(line: string): void {
    if (this.connected && this.socket) {
      this.socket.send(line);
      return;
    }
    this.queue.push(line);
    if (this.queue.length > OFFLINE_QUEUE_LIMIT) {
      this.queue.shift();
      this.dropped += 1;
      this.onDrop?.(this.dropped);
    }
  }

  private scheduleReconnect(): void {
    const delay = Math.min(500 * 2 ** this.reconnectAttempts, 15_000);
    this.reconnectAttempts += 1;
    setTimeout(() => {
      if (!this.closed) {
        this.connect();
      }
    }, delay);
  }
}
