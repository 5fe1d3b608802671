/**
 * Minimal reverse-mode autodiff over channel-planar feature maps.
 *
 * A feature map is a length-G signal with C channels stored planar:
 * data[c*G + g]. All learnable state lives in flat Param buffers. Ops
 * record their backward closure on a Tape; running inference with a
 * null tape skips gradient bookkeeping entirely.
 *
 * double precision throughout: the gradient checks compare against
 * central finite differences at 1e-4 relative, which float32 noise
 * would swamp.
 */

export class Param {
  data: Float64Array;
  grad: Float64Array;

  constructor(size: number) {
    this.data = new Float64Array(size);
    this.grad = new Float64Array(size);
  }
}

export class FMap {
  data: Float64Array;
  grad: Float64Array;
  G: number;
  C: number;

  constructor(G: number, C: number) {
    this.data = new Float64Array(G * C);
    this.grad = new Float64Array(G * C);
    this.G = G;
    this.C = C;
  }
}

export class Tape {
  private backs: Array<() => void> = [];

  push(back: () => void): void {
    this.backs.push(back);
  }

  /** Run recorded closures in reverse order, then clear the tape. */
  backward(): void {
    for (let i = this.backs.length - 1; i >= 0; i--) this.backs[i]();
    this.backs.length = 0;
  }
}

/** Convolution of extent K (odd), zero padding, optional dilation. */
export interface ConvParams {
  weight: Param; // flat [outC][inC][K]
  bias: Param; // [outC]
  inC: number;
  outC: number;
  K: number;
  dilation: number;
}

export function makeConvParams(inC: number, outC: number, K: number, dilation = 1): ConvParams {
  if (K < 1 || K % 2 === 0) throw new Error(`kernel extent must be odd and positive, got ${K}`);
  if (dilation < 1) throw new Error(`dilation must be >= 1, got ${dilation}`);
  return { weight: new Param(outC * inC * K), bias: new Param(outC), inC, outC, K, dilation };
}

let multiplyCount = 0;

/** Multiply-accumulate operations issued by conv1d since the last reset. */
export function getMultiplyCount(): number {
  return multiplyCount;
}

export function resetMultiplyCount(): void {
  multiplyCount = 0;
}

export function conv1d(tape: Tape | null, x: FMap, p: ConvParams): FMap {
  if (x.C !== p.inC) {
    throw new Error(`conv expects ${p.inC} input channels, feature map has ${x.C}`);
  }
  const G = x.G;
  const K = p.K;
  const half = (K - 1) >> 1;
  const dil = p.dilation;
  const out = new FMap(G, p.outC);
  const w = p.weight.data;
  const b = p.bias.data;
  const xd = x.data;
  const od = out.data;
  multiplyCount += G * K * p.inC * p.outC;
  for (let o = 0; o < p.outC; o++) {
    const oBase = o * G;
    od.fill(b[o], oBase, oBase + G);
    for (let i = 0; i < p.inC; i++) {
      const iBase = i * G;
      const wBase = (o * p.inC + i) * K;
      for (let k = 0; k < K; k++) {
        const wv = w[wBase + k];
        if (wv === 0) continue;
        const shift = (k - half) * dil;
        const gLo = Math.max(0, -shift);
        const gHi = Math.min(G, G - shift);
        for (let g = gLo; g < gHi; g++) {
          od[oBase + g] += wv * xd[iBase + g + shift];
        }
      }
    }
  }
  if (tape) {
    tape.push(() => {
      const gw = p.weight.grad;
      const gb = p.bias.grad;
      const gx = x.grad;
      const go = out.grad;
      for (let o = 0; o < p.outC; o++) {
        const oBase = o * G;
        let bAcc = 0;
        for (let g = 0; g < G; g++) bAcc += go[oBase + g];
        gb[o] += bAcc;
        for (let i = 0; i < p.inC; i++) {
          const iBase = i * G;
          const wBase = (o * p.inC + i) * K;
          for (let k = 0; k < K; k++) {
            const shift = (k - half) * dil;
            const gLo = Math.max(0, -shift);
            const gHi = Math.min(G, G - shift);
            const wv = w[wBase + k];
            let wAcc = 0;
            for (let g = gLo; g < gHi; g++) {
              const up = go[oBase + g];
              wAcc += up * xd[iBase + g + shift];
              gx[iBase + g + shift] += wv * up;
            }
            gw[wBase + k] += wAcc;
          }
        }
      }
    });
  }
  return out;
}

export function relu(tape: Tape | null, x: FMap): FMap {
  const out = new FMap(x.G, x.C);
  const n = x.data.length;
  for (let i = 0; i < n; i++) {
    const v = x.data[i];
    out.data[i] = v > 0 ? v : 0;
  }
  if (tape) {
    tape.push(() => {
      for (let i = 0; i < n; i++) {
        if (x.data[i] > 0) x.grad[i] += out.grad[i];
      }
    });
  }
  return out;
}

/** Channel concatenation; all parts must share G. */
export function concatChannels(tape: Tape | null, parts: FMap[]): FMap {
  if (parts.length === 0) throw new Error("concat of zero feature maps");
  const G = parts[0].G;
  let C = 0;
  for (const p of parts) {
    if (p.G !== G) throw new Error(`length mismatch in concat: ${p.G} vs ${G}`);
    C += p.C;
  }
  const out = new FMap(G, C);
  let cOff = 0;
  for (const p of parts) {
    out.data.set(p.data, cOff * G);
    cOff += p.C;
  }
  if (tape) {
    tape.push(() => {
      let off = 0;
      for (const p of parts) {
        const span = p.C * G;
        for (let i = 0; i < span; i++) p.grad[i] += out.grad[off + i];
        off += span;
      }
    });
  }
  return out;
}

export function add(tape: Tape | null, a: FMap, b: FMap): FMap {
  if (a.G !== b.G || a.C !== b.C) {
    throw new Error(`shape mismatch in add: ${a.G}x${a.C} vs ${b.G}x${b.C}`);
  }
  const out = new FMap(a.G, a.C);
  const n = out.data.length;
  for (let i = 0; i < n; i++) out.data[i] = a.data[i] + b.data[i];
  if (tape) {
    tape.push(() => {
      for (let i = 0; i < n; i++) {
        a.grad[i] += out.grad[i];
        b.grad[i] += out.grad[i];
      }
    });
  }
  return out;
}

export function sub(tape: Tape | null, a: FMap, b: FMap): FMap {
  if (a.G !== b.G || a.C !== b.C) {
    throw new Error(`shape mismatch in sub: ${a.G}x${a.C} vs ${b.G}x${b.C}`);
  }
  const out = new FMap(a.G, a.C);
  const n = out.data.length;
  for (let i = 0; i < n; i++) out.data[i] = a.data[i] - b.data[i];
  if (tape) {
    tape.push(() => {
      for (let i = 0; i < n; i++) {
        a.grad[i] += out.grad[i];
        b.grad[i] -= out.grad[i];
      }
    });
  }
  return out;
}

/** Per-channel global average, broadcast back over the full length. */
export function globalAveragePool(tape: Tape | null, x: FMap): FMap {
  const out = new FMap(x.G, x.C);
  const G = x.G;
  for (let c = 0; c < x.C; c++) {
    const base = c * G;
    let acc = 0;
    for (let g = 0; g < G; g++) acc += x.data[base + g];
    out.data.fill(acc / G, base, base + G);
  }
  if (tape) {
    tape.push(() => {
      for (let c = 0; c < x.C; c++) {
        const base = c * G;
        let acc = 0;
        for (let g = 0; g < G; g++) acc += out.grad[base + g];
        const share = acc / G;
        for (let g = 0; g < G; g++) x.grad[base + g] += share;
      }
    });
  }
  return out;
}
