/**
 * Deterministic random numbers for weight init and batch shuffling.
 *
 * splitmix32 core: tiny, well-mixed, and trivially reproducible across
 * platforms. Training runs are seeded, so two runs with the same seed
 * produce bitwise-identical weight trajectories.
 */
export class Rng {
  private state: number;
  private spareNormal: number | null = null;

  constructor(seed: number) {
    if (!Number.isFinite(seed)) throw new Error(`seed must be finite, got ${seed}`);
    this.state = seed >>> 0;
  }

  /** Next uint32. */
  u32(): number {
    let z = (this.state = (this.state + 0x9e3779b9) >>> 0);
    z ^= z >>> 16;
    z = Math.imul(z, 0x21f0aaad);
    z ^= z >>> 15;
    z = Math.imul(z, 0x735a2d97);
    z ^= z >>> 15;
    return z >>> 0;
  }

  /** Uniform in [0, 1). */
  float(): number {
    return this.u32() / 4294967296;
  }

  /** Standard normal via Box-Muller; caches the spare draw. */
  normal(): number {
    if (this.spareNormal !== null) {
      const v = this.spareNormal;
      this.spareNormal = null;
      return v;
    }
    let u = 0;
    while (u === 0) u = this.float();
    const r = Math.sqrt(-2 * Math.log(u));
    const t = 2 * Math.PI * this.float();
    this.spareNormal = r * Math.sin(t);
    return r * Math.cos(t);
  }

  /** In-place Fisher-Yates shuffle. */
  shuffle(indices: Int32Array | number[]): void {
    for (let i = indices.length - 1; i > 0; i--) {
      const j = this.u32() % (i + 1);
      const tmp = indices[i];
      indices[i] = indices[j];
      indices[j] = tmp;
    }
  }
}
