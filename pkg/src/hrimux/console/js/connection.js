/**
 * Bus connection over a websocket: subscribe once on open, hand every
 * decoded line to the listener, and queue at most 10 outbound messages
 * while disconnected (older presses are dropped with a visible warning
 * rather than silently replayed minutes later).
 */
import { decodeLine, subscribeLine } from "./protocol.js";
export const OFFLINE_QUEUE_LIMIT = 10;
const OPEN = 1;
export class BusConnection {
    constructor(url, channels, factory = (u) => new WebSocket(u)) {
        this.url = url;
        this.channels = channels;
        this.factory = factory;
        this.socket = null;
        this.queue = [];
        this.seq = 0;
        this.reconnectAttempts = 0;
        this.closed = false;
        this.dropped = 0;
        this.onLine = null;
        this.onStatus = null;
        this.onDrop = null;
    }
    connect() {
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
            }
            catch {
                // a malformed frame is a connection fault, not a crash
                this.onStatus?.(false);
            }
        };
    }
    close() {
        this.closed = true;
        this.socket?.close();
    }
    get connected() {
        return this.socket !== null && this.socket.readyState === OPEN;
    }
    nextSeq() {
        return ++this.seq;
    }
    /** Send one line now, or queue it (bounded) while disconnected. */
    send(line) {
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
    scheduleReconnect() {
        const delay = Math.min(500 * 2 ** this.reconnectAttempts, 15000);
        this.reconnectAttempts += 1;
        setTimeout(() => {
            if (!this.closed) {
                this.connect();
            }
        }, delay);
    }
}
