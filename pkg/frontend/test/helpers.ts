/** Shared test scaffolding: tiny datasets, random tensors, gradient checks. */
import { Dataset, DatasetHeader } from "../src/dataset.js";
import { ComplexVector, Dictionary, synthesis } from "../src/dictionary.js";
import { ModelWeights, modelForward } from "../src/network.js";
import { coefficientsFromFeature } from "../src/pipeline.js";
import { Rng } from "../src/random.js";
import { FMap, sub } from "../src/tensor.js";

export function randomVector(rng: Rng, n: number, scale = 1): ComplexVector {
  const re = new Float64Array(n);
  const im = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    re[i] = rng.normal() * scale;
    im[i] = rng.normal() * scale;
  }
  return { re, im };
}

export function randomFMap(rng: Rng, G: number, C: number, scale = 1): FMap {
  const fm = new FMap(G, C);
  for (let i = 0; i < fm.data.length; i++) fm.data[i] = rng.normal() * scale;
  return fm;
}

export function maxAbsDiff(a: ArrayLike<number>, b: ArrayLike<number>): number {
  if (a.length !== b.length) throw new Error("length mismatch");
  let worst = 0;
  for (let i = 0; i < a.length; i++) worst = Math.max(worst, Math.abs(a[i] - b[i]));
  return worst;
}

export function header(overrides: Partial<DatasetHeader> = {}): DatasetHeader {
  return {
    version: 1,
    numAntennas: 16,
    sampleCount: 0,
    snrDb: 20,
    transmitPower: 1,
    wavelength: 0.03,
    spacing: 0.015,
    numPaths: 2,
    masterSeed: 0n,
    ...overrides,
  };
}

/**
 * In-memory dataset from float64 sample vectors; values pass through
 * float32 like the on-disk format would.
 */
export function datasetFromSamples(
  ys: ComplexVector[],
  hs: ComplexVector[],
  overrides: Partial<DatasetHeader> = {},
): Dataset {
  if (ys.length !== hs.length || ys.length === 0) throw new Error("bad sample lists");
  const n = ys[0].re.length;
  const y = new Float32Array(ys.length * 2 * n);
  const h = new Float32Array(ys.length * 2 * n);
  for (let i = 0; i < ys.length; i++) {
    for (let k = 0; k < n; k++) {
      y[(i * n + k) * 2] = ys[i].re[k];
      y[(i * n + k) * 2 + 1] = ys[i].im[k];
      h[(i * n + k) * 2] = hs[i].re[k];
      h[(i * n + k) * 2 + 1] = hs[i].im[k];
    }
  }
  return {
    header: header({ numAntennas: n, sampleCount: ys.length, ...overrides }),
    y,
    h,
  };
}

/** Forward-only loss: ||synth(fm - net(fm)) - h||^2. */
export function forwardLoss(
  fmData: Float64Array,
  G: number,
  weights: ModelWeights,
  dict: Dictionary,
  h: ComplexVector,
): number {
  const fm = new FMap(G, 2);
  fm.data.set(fmData);
  const denoised = sub(null, fm, modelForward(null, fm, weights));
  const hHat = synthesis(dict, coefficientsFromFeature(denoised));
  let loss = 0;
  for (let i = 0; i < h.re.length; i++) {
    const dr = hHat.re[i] - h.re[i];
    const di = hHat.im[i] - h.im[i];
    loss += dr * dr + di * di;
  }
  return loss;
}

/** Central finite difference of forwardLoss wrt one entry of a buffer. */
export function centralDiff(
  buffer: Float64Array,
  index: number,
  evalLoss: () => number,
  eps = 1e-5,
): number {
  const saved = buffer[index];
  buffer[index] = saved + eps;
  const up = evalLoss();
  buffer[index] = saved - eps;
  const down = evalLoss();
  buffer[index] = saved;
  return (up - down) / (2 * eps);
}

/** Relative agreement with an absolute floor for near-zero gradients. */
export function gradientsAgree(analytic: number, numeric: number, relTol = 1e-4): boolean {
  const mag = Math.max(Math.abs(analytic), Math.abs(numeric));
  if (mag < 1e-7) return true;
  return Math.abs(analytic - numeric) / mag <= relTol;
}
