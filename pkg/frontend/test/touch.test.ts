/**
 * Console contract, input half: every simulated press emits exactly one
 * schema-correct touch message; disconnected presses queue up to 10 and
 * then drop with a visible warning.
 */

import { describe, expect, it } from "vitest";

import { BusConnection, OFFLINE_QUEUE_LIMIT, SocketLike } from "../src/connection.js";
import { decodeLine, touchLine, TouchPayload } from "../src/protocol.js";
import { MenuView } from "../src/view.js";

class FakeSocket implements SocketLike {
  sent: string[] = [];
  readyState = 0;
  onopen: ((ev?: unknown) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.readyState = 3;
    this.onclose?.();
  }

  open(): void {
    this.readyState = 1;
    this.onopen?.();
  }
}

function setup(snapshot = menuSnapshot()) {
  const socket = new FakeSocket();
  const connection = new BusConnection("ws://test", ["gui"], () => socket);
  connection.connect();
  socket.open();
  socket.sent.length = 0; // drop the subscribe line

  const root = document.createElement("div");
  document.body.appendChild(root);
  const view = new MenuView(root, {
    onOption: (index) => connection.send(touchLine(connection.nextSeq(), 1.0, index, null)),
    onButton: (name) => connection.send(touchLine(connection.nextSeq(), 1.0, null, name)),
  });
  view.render(snapshot);
  return { socket, connection, view, root };
}

function menuSnapshot() {
  return {
    state: "main_menu",
    kind: "menu" as const,
    title: "main",
    options: ["record", "playback", "sequential playback", "macro mode"],
    option_ids: ["opt:record", "opt:playback", "opt:sequence", "opt:macro"],
    selector: 0,
    context: "",
  };
}

function actionSnapshot() {
  return {
    state: "playback_action",
    kind: "action" as const,
    title: "playback",
    options: [],
    option_ids: [],
    selector: 0,
    context: "playing move_a_b",
  };
}

describe("touch emission", () => {
  it("one press emits exactly one schema-correct message", () => {
    const { socket, root } = setup();
    (root.querySelectorAll(".option")[1] as HTMLElement).click();
    expect(socket.sent).toHaveLength(1);
    const msg = decodeLine(socket.sent[0]);
    expect(msg.channel).toBe("touch");
    const payload = msg.payload as TouchPayload;
    expect(payload.option).toBe(1);
    expect(payload.button).toBeNull();
    expect(typeof payload.t).toBe("number");
  });

  it("every option press maps to its own index", () => {
    const { socket, root } = setup();
    const options = root.querySelectorAll(".option");
    options.forEach((el) => (el as HTMLElement).click());
    expect(socket.sent).toHaveLength(options.length);
    const indices = socket.sent.map((line) => (decodeLine(line).payload as TouchPayload).option);
    expect(indices).toEqual([0, 1, 2, 3]);
  });

  it("action buttons emit named-button messages", () => {
    const { socket, root, view } = setup();
    view.render(actionSnapshot());
    (root.querySelector('[data-button="pause"]') as HTMLElement).click();
    expect(socket.sent).toHaveLength(1);
    const payload = decodeLine(socket.sent[0]).payload as TouchPayload;
    expect(payload.button).toBe("pause");
    expect(payload.option).toBeNull();
  });

  it("touch lines refuse both-or-neither of option/button", () => {
    expect(() => touchLine(1, 0, 1, "stop")).toThrow();
    expect(() => touchLine(1, 0, null, null)).toThrow();
  });

  it("disconnected presses queue up to 10 then drop with a warning", () => {
    const { socket, connection, root, view } = setup();
    let warned = 0;
    connection.onDrop = (count) => {
      warned = count;
      view.warnDropped(count);
    };
    socket.close(); // go offline; reconnect is scheduled but not yet open
    const option = root.querySelector(".option") as HTMLElement;
    for (let i = 0; i < OFFLINE_QUEUE_LIMIT + 3; i += 1) {
      option.click();
    }
    expect(socket.sent).toHaveLength(0);
    expect(warned).toBe(3);
    expect(root.querySelector("#conn-status")!.textContent).toContain("dropped");
  });

  it("queued presses flush on reconnect, oldest dropped first", () => {
    const { socket, connection, root } = setup();
    socket.close();
    const option = root.querySelectorAll(".option")[2] as HTMLElement;
    for (let i = 0; i < 4; i += 1) {
      option.click();
    }
    // simulate the reconnect succeeding on the same fake socket
    socket.sent.length = 0;
    socket.open();
    // subscribe line + the 4 queued presses
    expect(socket.sent).toHaveLength(5);
    expect(decodeLine(socket.sent[0]).channel).toBe("session");
    expect(connection.dropped).toBe(0);
  });
});
