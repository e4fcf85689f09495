/** Drag-to-guidance mapping: gating, rate limit, clamping, grip toggles. */

import { describe, expect, it } from "vitest";

import { GuidancePoint, KtDragController, MAX_RATE_HZ } from "../src/ktdrag.js";
import { clampToBounds, DEFAULT_BOUNDS, pixelToTable, tableToPixel } from "../src/world.js";

function controller(active: () => boolean) {
  const emitted: GuidancePoint[] = [];
  const ctl = new KtDragController(480, 480, active, (p) => emitted.push(p));
  return { ctl, emitted };
}

describe("pixel/table mapping", () => {
  it("round-trips positions inside the table", () => {
    const pos: [number, number, number] = [0.4, 0.3, 0.02];
    const [px, py] = tableToPixel(pos, 480, 480);
    const back = pixelToTable(px, py, 480, 480, 0.02);
    expect(back[0]).toBeCloseTo(pos[0], 10);
    expect(back[1]).toBeCloseTo(pos[1], 10);
  });

  it("clamps out-of-bounds targets to the workspace box", () => {
    expect(clampToBounds([2, -3, 9])).toEqual([
      DEFAULT_BOUNDS.xMax,
      DEFAULT_BOUNDS.yMin,
      DEFAULT_BOUNDS.zMax,
    ]);
  });
});

describe("kt drag", () => {
  it("emits nothing unless recording is active", () => {
    const { ctl, emitted } = controller(() => false);
    ctl.pointerDown(100, 100, 0.0);
    ctl.pointerMove(120, 100, 0.1);
    ctl.pointerUp(140, 100, 0.2);
    expect(emitted).toHaveLength(0);
  });

  it("rate-limits move events to 30 Hz", () => {
    const { ctl, emitted } = controller(() => true);
    ctl.pointerDown(0, 0, 0.0);
    for (let i = 1; i <= 200; i += 1) {
      ctl.pointerMove(i, 0, i * 0.005); // 200 Hz pointer stream for 1 s
    }
    const duration = 1.0;
    expect(emitted.length).toBeLessThanOrEqual(Math.ceil(duration * MAX_RATE_HZ) + 2);
    for (let i = 1; i < emitted.length; i += 1) {
      expect(emitted[i].t).toBeGreaterThan(emitted[i - 1].t);
    }
  });

  it("clamps drags that leave the canvas", () => {
    const { ctl, emitted } = controller(() => true);
    ctl.pointerDown(-500, 900, 0.0);
    const [x, y] = [emitted[0].pos[0], emitted[0].pos[1]];
    expect(x).toBeGreaterThanOrEqual(DEFAULT_BOUNDS.xMin);
    expect(x).toBeLessThanOrEqual(DEFAULT_BOUNDS.xMax);
    expect(y).toBeGreaterThanOrEqual(DEFAULT_BOUNDS.yMin);
    expect(y).toBeLessThanOrEqual(DEFAULT_BOUNDS.yMax);
  });

  it("grip toggles emit in place and flip state", () => {
    const { ctl, emitted } = controller(() => true);
    ctl.pointerDown(240, 240, 0.0);
    ctl.toggleGrip(240, 240, 0.1);
    ctl.toggleGrip(240, 240, 0.2);
    expect(emitted.map((p) => p.grip)).toEqual(["open", "closed", "open"]);
  });
});
