/**
 * Top-down tabletop view: positions A and B, the cube, both end
 * effectors. Pixel<->table mapping lives here so the drag controller can
 * invert it. Table frame: x forward (away from the viewer), y lateral.
 */
export const DEFAULT_BOUNDS = {
    xMin: 0.0,
    xMax: 1.0,
    yMin: -0.5,
    yMax: 0.5,
    zMin: 0.0,
    zMax: 0.5,
};
export function tableToPixel(pos, width, height, bounds = DEFAULT_BOUNDS) {
    const px = ((bounds.yMax - pos[1]) / (bounds.yMax - bounds.yMin)) * width;
    const py = ((bounds.xMax - pos[0]) / (bounds.xMax - bounds.xMin)) * height;
    return [px, py];
}
export function pixelToTable(px, py, width, height, z, bounds = DEFAULT_BOUNDS) {
    const y = bounds.yMax - (px / width) * (bounds.yMax - bounds.yMin);
    const x = bounds.xMax - (py / height) * (bounds.xMax - bounds.xMin);
    return [x, y, z];
}
export function clampToBounds(pos, bounds = DEFAULT_BOUNDS) {
    return [
        Math.min(Math.max(pos[0], bounds.xMin), bounds.xMax),
        Math.min(Math.max(pos[1], bounds.yMin), bounds.yMax),
        Math.min(Math.max(pos[2], bounds.zMin), bounds.zMax),
    ];
}
const CUBE_EDGE_M = 0.037;
export class WorldView {
    constructor(canvas, bounds = DEFAULT_BOUNDS) {
        this.canvas = canvas;
        this.bounds = bounds;
        this.markers = [
            { label: "A", pos: [0.4, 0.3, 0.02] },
            { label: "B", pos: [0.4, -0.3, 0.02] },
        ];
    }
    render(world) {
        const ctx = this.canvas.getContext("2d");
        if (!ctx) {
            return; // headless test environments have no 2d context
        }
        const { width, height } = this.canvas;
        ctx.clearRect(0, 0, width, height);
        ctx.fillStyle = "#e8dcc8";
        ctx.fillRect(0, 0, width, height);
        for (const marker of this.markers) {
            const [px, py] = this.toPixel(marker.pos);
            ctx.strokeStyle = "#888";
            ctx.beginPath();
            ctx.arc(px, py, 14, 0, Math.PI * 2);
            ctx.stroke();
            ctx.fillStyle = "#555";
            ctx.font = "12px sans-serif";
            ctx.fillText(marker.label, px - 4, py + 4);
        }
        if (!world) {
            return;
        }
        const cubePixels = (CUBE_EDGE_M / (this.bounds.yMax - this.bounds.yMin)) * width;
        const [cx, cy] = this.toPixel(world.cube);
        ctx.fillStyle = "#b5651d";
        ctx.fillRect(cx - cubePixels / 2, cy - cubePixels / 2, cubePixels, cubePixels);
        for (const [arm, pose] of Object.entries(world.arms)) {
            const [ax, ay] = this.toPixel(pose.pos);
            ctx.beginPath();
            ctx.arc(ax, ay, 9, 0, Math.PI * 2);
            ctx.fillStyle = arm === "left" ? "#3a6ea5" : "#a53a3a";
            ctx.fill();
            ctx.strokeStyle = pose.grip === "closed" ? "#000" : "#fff";
            ctx.lineWidth = 2;
            ctx.stroke();
            if (world.attached === arm) {
                ctx.strokeStyle = "#b5651d";
                ctx.strokeRect(ax - cubePixels / 2, ay - cubePixels / 2, cubePixels, cubePixels);
            }
        }
    }
    toPixel(pos) {
        return tableToPixel(pos, this.canvas.width, this.canvas.height, this.bounds);
    }
    toTable(px, py, z) {
        return pixelToTable(px, py, this.canvas.width, this.canvas.height, z, this.bounds);
    }
}
