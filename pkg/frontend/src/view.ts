/**
 * Menu and status rendering. The console holds no interaction logic: it
 * paints the latest received snapshot (vertical option list, red
 * selector) plus per-action-state button overlays, and forwards presses
 * as raw option indices / named buttons. Replaying the gui channel into
 * a fresh view reproduces the identical DOM.
 */

import { GuiSnapshot } from "./protocol.js";

export interface ViewCallbacks {
  onOption: (index: number) => void;
  onButton: (name: string) => void;
}

const ACTION_BUTTONS: Record<string, string[]> = {
  record_action: ["finish"],
  playback_action: ["pause", "resume", "stop"],
  macro_action: ["fire_1", "fire_2", "fire_3", "exit"],
};

export class MenuView {
  private title: HTMLElement;
  private context: HTMLElement;
  private list: HTMLUListElement;
  private buttons: HTMLElement;
  private status: HTMLElement;
  snapshot: GuiSnapshot | null = null;

  constructor(private root: HTMLElement, private callbacks: ViewCallbacks) {
    root.innerHTML = `
      <div class="menu-head">
        <span id="menu-title" class="menu-title"></span>
        <span id="menu-context" class="menu-context"></span>
        <span id="conn-status" class="conn-status" data-state="connecting">connecting</span>
      </div>
      <ul id="menu-options" class="menu-options"></ul>
      <div id="action-buttons" class="action-buttons"></div>
    `;
    this.title = root.querySelector("#menu-title")!;
    this.context = root.querySelector("#menu-context")!;
    this.list = root.querySelector("#menu-options")!;
    this.buttons = root.querySelector("#action-buttons")!;
    this.status = root.querySelector("#conn-status")!;
  }

  render(snapshot: GuiSnapshot): void {
    this.snapshot = snapshot;
    this.title.textContent = snapshot.title;
    this.context.textContent = snapshot.context;
    this.list.replaceChildren();
    snapshot.options.forEach((label, index) => {
      const item = document.createElement("li");
      item.className = "option" + (index === snapshot.selector ? " selected" : "");
      item.dataset.index = String(index);
      item.dataset.optionId = snapshot.option_ids[index] ?? "";
      item.textContent = label;
      item.addEventListener("click", () => this.callbacks.onOption(index));
      this.list.appendChild(item);
    });
    this.buttons.replaceChildren();
    for (const name of ACTION_BUTTONS[snapshot.state] ?? []) {
      const button = document.createElement("button");
      button.className = "action-button";
      button.dataset.button = name;
      button.textContent = name.replace("_", " ");
      button.addEventListener("click", () => this.callbacks.onButton(name));
      this.buttons.appendChild(button);
    }
  }

  setConnected(connected: boolean): void {
    this.status.dataset.state = connected ? "online" : "offline";
    this.status.textContent = connected ? "online" : "offline";
  }

  warnDropped(count: number): void {
    this.status.dataset.state = "offline";
    this.status.textContent = `offline – ${count} press(es) dropped`;
  }

  optionLabels(): string[] {
    return Array.from(this.list.querySelectorAll(".option")).map((el) => el.textContent ?? "");
  }

  selectedIndex(): number {
    const el = this.list.querySelector(".option.selected") as HTMLElement | null;
    return el ? Number(el.dataset.index) : -1;
  }
}
