/**
 * Drag-based kinesthetic teaching. While the record action state is
 * active, pointer positions over the tabletop map to guidance poses on
 * the drag plane, rate-limited to 30 Hz and clamped to the workspace.
 * A grip toggle flips the gripper and emits one guidance point in place,
 * so a drag can pick the cube up and set it down.
 */

import { clampToBounds, DEFAULT_BOUNDS, pixelToTable, TableBounds } from "./world.js";

export const MAX_RATE_HZ = 30;
export const DRAG_PLANE_Z = 0.02; // cube grab height

export interface GuidancePoint {
  t: number;
  pos: [number, number, number];
  grip: "open" | "closed";
}

export class KtDragController {
  private lastEmit = -Infinity;
  private dragging = false;
  grip: "open" | "closed" = "open";

  constructor(
    private width: number,
    private height: number,
    private isActive: () => boolean,
    private emit: (point: GuidancePoint) => void,
    private bounds: TableBounds = DEFAULT_BOUNDS,
  ) {}

  pointerDown(px: number, py: number, t: number): void {
    this.dragging = true;
    this.emitPoint(px, py, t, true);
  }

  pointerMove(px: number, py: number, t: number): void {
    if (!this.dragging) {
      return;
    }
    this.emitPoint(px, py, t, false);
  }

  pointerUp(px: number, py: number, t: number): void {
    if (this.dragging) {
      this.emitPoint(px, py, t, true);
    }
    this.dragging = false;
  }

  /** Flip the gripper and emit the toggle at the current pointer spot. */
  toggleGrip(px: number, py: number, t: number): void {
    this.grip = this.grip === "open" ? "closed" : "open";
    this.emitPoint(px, py, t, true);
  }

  private emitPoint(px: number, py: number, t: number, force: boolean): void {
    if (!this.isActive()) {
      return; // no guidance unless recording
    }
    if (!force && t - this.lastEmit < 1 / MAX_RATE_HZ) {
      return;
    }
    if (t <= this.lastEmit) {
      t = this.lastEmit + 1e-4; // guidance timestamps must increase
    }
    this.lastEmit = t;
    const raw = pixelToTable(px, py, this.width, this.height, DRAG_PLANE_Z, this.bounds);
    this.emit({ t, pos: clampToBounds(raw, this.bounds), grip: this.grip });
  }
}
