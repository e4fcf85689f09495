/** Console entry point: wire the bus connection to the views. */
import { BusConnection } from "./connection.js";
import { guidanceLine, isGui, isRobot, touchLine } from "./protocol.js";
import { MenuView } from "./view.js";
import { WorldView } from "./world.js";
import { KtDragController } from "./ktdrag.js";
function wsUrl() {
    const proto = location.protocol === "https:" ? "wss" : "ws";
    return `${proto}://${location.host}/ws`;
}
export function boot(root) {
    const menuRoot = root.querySelector("#menu");
    const canvas = root.querySelector("#world");
    const gripButton = root.querySelector("#grip-toggle");
    let gui = null;
    let world = null;
    const connection = new BusConnection(wsUrl(), ["gui", "robot", "session"]);
    const menu = new MenuView(menuRoot, {
        onOption: (index) => connection.send(touchLine(connection.nextSeq(), now(), index, null)),
        onButton: (name) => connection.send(touchLine(connection.nextSeq(), now(), null, name)),
    });
    const worldView = new WorldView(canvas);
    const drag = new KtDragController(canvas.width, canvas.height, () => gui?.state === "record_action", (point) => connection.send(guidanceLine(connection.nextSeq(), point.t, "right", point.pos, point.grip)));
    const start = performance.now();
    const now = () => (performance.now() - start) / 1000;
    connection.onLine = (msg) => {
        if (isGui(msg)) {
            gui = msg.payload;
            menu.render(gui);
        }
        else if (isRobot(msg)) {
            world = msg.payload;
            worldView.render(world);
        }
    };
    connection.onStatus = (connected) => menu.setConnected(connected);
    connection.onDrop = (count) => menu.warnDropped(count);
    connection.connect();
    let pointer = [0, 0];
    const local = (ev) => {
        const rect = canvas.getBoundingClientRect();
        return [
            ((ev.clientX - rect.left) / rect.width) * canvas.width,
            ((ev.clientY - rect.top) / rect.height) * canvas.height,
        ];
    };
    canvas.addEventListener("pointerdown", (ev) => {
        pointer = local(ev);
        drag.pointerDown(pointer[0], pointer[1], now());
    });
    canvas.addEventListener("pointermove", (ev) => {
        pointer = local(ev);
        drag.pointerMove(pointer[0], pointer[1], now());
    });
    canvas.addEventListener("pointerup", (ev) => {
        pointer = local(ev);
        drag.pointerUp(pointer[0], pointer[1], now());
    });
    gripButton.addEventListener("click", () => {
        drag.toggleGrip(pointer[0], pointer[1], now());
        gripButton.textContent = drag.grip === "closed" ? "release (open gripper)" : "grab (close gripper)";
    });
    worldView.render(null);
}
if (typeof document !== "undefined" && document.getElementById("console-root")) {
    boot(document.getElementById("console-root"));
}
