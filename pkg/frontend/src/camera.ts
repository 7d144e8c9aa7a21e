// Orbit camera and perspective projection for the canvas renderer.
// World frame: x/y on the ground plane, z up; angles in degrees.

export interface Vec3 {
  x: number;
  y: number;
  z: number;
}

export interface OrbitParams {
  target: Vec3;
  distance: number;
  azimuth: number; // deg around z
  elevation: number; // deg above the ground plane
}

export interface Projected {
  sx: number;
  sy: number;
  depth: number;
  visible: boolean;
}

const RAD = Math.PI / 180;

export const DEFAULT_ORBIT: OrbitParams = {
  target: { x: 0, y: 0, z: 0.5 },
  distance: 9,
  azimuth: 225,
  elevation: 30,
};

export function eyePosition(orbit: OrbitParams): Vec3 {
  const ce = Math.cos(orbit.elevation * RAD);
  return {
    x: orbit.target.x + orbit.distance * ce * Math.cos(orbit.azimuth * RAD),
    y: orbit.target.y + orbit.distance * ce * Math.sin(orbit.azimuth * RAD),
    z: orbit.target.z + orbit.distance * Math.sin(orbit.elevation * RAD),
  };
}

function sub(a: Vec3, b: Vec3): Vec3 {
  return { x: a.x - b.x, y: a.y - b.y, z: a.z - b.z };
}

function cross(a: Vec3, b: Vec3): Vec3 {
  return { x: a.y * b.z - a.z * b.y, y: a.z * b.x - a.x * b.z, z: a.x * b.y - a.y * b.x };
}

function dot(a: Vec3, b: Vec3): number {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

function normalize(v: Vec3): Vec3 {
  const n = Math.hypot(v.x, v.y, v.z) || 1;
  return { x: v.x / n, y: v.y / n, z: v.z / n };
}

export class Camera {
  constructor(
    public orbit: OrbitParams = { ...DEFAULT_ORBIT },
    public width = 800,
    public height = 600,
    public focal = 1.6,
  ) {}

  /** Rotate by screen-drag deltas; elevation clamps short of the poles. */
  rotate(dAzimuth: number, dElevation: number): void {
    this.orbit.azimuth = (this.orbit.azimuth + dAzimuth) % 360;
    this.orbit.elevation = Math.min(89, Math.max(-89, this.orbit.elevation + dElevation));
  }

  zoom(factor: number): void {
    this.orbit.distance = Math.min(60, Math.max(1, this.orbit.distance * factor));
  }

  project(p: Vec3): Projected {
    const eye = eyePosition(this.orbit);
    const forward = normalize(sub(this.orbit.target, eye));
    const right = normalize(cross(forward, { x: 0, y: 0, z: 1 }));
    const up = cross(right, forward);
    const v = sub(p, eye);
    const depth = dot(v, forward);
    if (depth < 0.05) {
      return { sx: 0, sy: 0, depth, visible: false };
    }
    const scale = (this.focal / depth) * (this.height / 2);
    return {
      sx: this.width / 2 + dot(v, right) * scale,
      sy: this.height / 2 - dot(v, up) * scale,
      depth,
      visible: true,
    };
  }

  /** Index of the nearest projected point within `radius` px, or null. */
  pick(points: Vec3[], sx: number, sy: number, radius = 12): number | null {
    let best: number | null = null;
    let bestDepth = Infinity;
    for (let i = 0; i < points.length; i++) {
      const q = this.project(points[i]!);
      if (!q.visible) continue;
      if (Math.hypot(q.sx - sx, q.sy - sy) <= radius && q.depth < bestDepth) {
        best = i;
        bestDepth = q.depth;
      }
    }
    return best;
  }

  /**
   * Pixels per world unit along a world-space axis direction at a point;
   * used to convert a screen drag into a coordinate delta.
   */
  axisScreenScale(at: Vec3, direction: Vec3): { dx: number; dy: number } {
    const eps = 0.25;
    const a = this.project(at);
    const b = this.project({
      x: at.x + direction.x * eps,
      y: at.y + direction.y * eps,
      z: at.z + direction.z * eps,
    });
    return { dx: (b.sx - a.sx) / eps, dy: (b.sy - a.sy) / eps };
  }
}
