import { describe, expect, it } from "vitest";

import { Camera, DEFAULT_ORBIT, eyePosition } from "../src/camera.js";

describe("orbit camera", () => {
  it("projects the orbit target to the screen center", () => {
    const camera = new Camera({ ...DEFAULT_ORBIT, target: { x: 1, y: 2, z: 0.5 } }, 800, 600);
    const p = camera.project({ x: 1, y: 2, z: 0.5 });
    expect(p.visible).toBe(true);
    expect(p.sx).toBeCloseTo(400, 6);
    expect(p.sy).toBeCloseTo(300, 6);
  });

  it("keeps the eye at the orbit distance", () => {
    const eye = eyePosition(DEFAULT_ORBIT);
    const d = Math.hypot(
      eye.x - DEFAULT_ORBIT.target.x,
      eye.y - DEFAULT_ORBIT.target.y,
      eye.z - DEFAULT_ORBIT.target.z,
    );
    expect(d).toBeCloseTo(DEFAULT_ORBIT.distance, 9);
  });

  it("culls points behind the eye", () => {
    const camera = new Camera();
    const eye = eyePosition(camera.orbit);
    const behind = {
      x: eye.x * 2 - camera.orbit.target.x,
      y: eye.y * 2 - camera.orbit.target.y,
      z: eye.z * 2 - camera.orbit.target.z,
    };
    expect(camera.project(behind).visible).toBe(false);
  });

  it("renders higher z above the ground on screen", () => {
    const camera = new Camera();
    const ground = camera.project({ x: 0, y: 0, z: 0 });
    const raised = camera.project({ x: 0, y: 0, z: 2 });
    expect(raised.sy).toBeLessThan(ground.sy); // screen y grows downward
  });

  it("picks the nearest point under the cursor", () => {
    const camera = new Camera();
    const points = [
      { x: 0, y: 0, z: 0 },
      { x: 2, y: 0, z: 0 },
    ];
    const target = camera.project(points[1]!);
    expect(camera.pick(points, target.sx, target.sy)).toBe(1);
    expect(camera.pick(points, -1000, -1000)).toBeNull();
  });

  it("clamps elevation and zoom", () => {
    const camera = new Camera();
    camera.rotate(0, 500);
    expect(camera.orbit.elevation).toBe(89);
    camera.zoom(0.0001);
    expect(camera.orbit.distance).toBeGreaterThanOrEqual(1);
  });

  it("axisScreenScale measures on-screen pixels per world unit", () => {
    const camera = new Camera();
    const scale = camera.axisScreenScale({ x: 0, y: 0, z: 0 }, { x: 0, y: 0, z: 1 });
    // the z axis points up on screen from the default viewpoint
    expect(scale.dy).toBeLessThan(0);
    expect(Math.abs(scale.dy)).toBeGreaterThan(5);
  });
});
