/**
 * Learned denoisers over transformed observations.
 *
 * Three variants share one skeleton: a conv-relu-conv front stage
 * followed by B cascaded residual dense units. Each unit runs M
 * densely connected conv-relu blocks (block m sees the unit input
 * concatenated with every earlier block output), fuses the stack with
 * a 1-extent convolution back to the 2 boundary channels, and adds the
 * unit input. The multi-scale variant additionally feeds a four-branch
 * pyramid (global-average pool, plain conv, dilated rates 6 and 12) of
 * the unit input into the fusing convolution.
 *
 * Boundary tensors are G x 2 (real and imaginary planes of a domain
 * transform); all internal expansion to E channels stays inside a unit.
 */
import { Rng } from "./random.js";
import {
  ConvParams,
  FMap,
  Param,
  Tape,
  concatChannels,
  conv1d,
  globalAveragePool,
  makeConvParams,
  relu,
} from "./tensor.js";

export const BOUNDARY_CHANNELS = 2;

export type Domain = "angular" | "polar";
export type Variant = "mrdn" | "pmrdn" | "pmsrdn";

export interface NetworkConfig {
  numRdnBlocks: number; // B
  layersPerRdn: number; // M
  featureChannels: number; // E
  kernelSize: number; // K, odd
  learningRate: number;
  epochs: number;
  batchSize: number;
  domain: Domain;
  variant: Variant;
}

export const DEFAULT_KERNEL_SIZE = 3;

export function validateConfig(cfg: NetworkConfig): void {
  const intAtLeast = (v: number, lo: number, name: string) => {
    if (!Number.isInteger(v) || v < lo) {
      throw new Error(`${name} must be an integer >= ${lo}, got ${v}`);
    }
  };
  intAtLeast(cfg.numRdnBlocks, 1, "numRdnBlocks");
  intAtLeast(cfg.layersPerRdn, 1, "layersPerRdn");
  intAtLeast(cfg.featureChannels, 1, "featureChannels");
  intAtLeast(cfg.kernelSize, 1, "kernelSize");
  if (cfg.kernelSize % 2 === 0) {
    throw new Error(`kernelSize must be odd, got ${cfg.kernelSize}`);
  }
  intAtLeast(cfg.epochs, 1, "epochs");
  intAtLeast(cfg.batchSize, 1, "batchSize");
  if (!(cfg.learningRate > 0)) {
    throw new Error(`learningRate must be positive, got ${cfg.learningRate}`);
  }
  if (cfg.variant === "mrdn" && cfg.domain !== "angular") {
    throw new Error("mrdn runs in the angular domain");
  }
  if (cfg.variant !== "mrdn" && cfg.domain !== "polar") {
    throw new Error(`${cfg.variant} runs in the polar domain`);
  }
}

export interface AsppWeights {
  pool: ConvParams; // 1-extent conv after the pooled broadcast
  plain: ConvParams;
  rate6: ConvParams;
  rate12: ConvParams;
  fusion: ConvParams; // 4E -> 2, extent 1
}

export interface RdnUnitWeights {
  blocks: ConvParams[]; // block m: (2 + E*m) -> E, extent K
  fusion: ConvParams; // (2 + E*M [+ 2 with pyramid]) -> 2, extent 1
  aspp: AsppWeights | null;
}

export interface ModelWeights {
  config: NetworkConfig;
  frontFirst: ConvParams; // 2 -> E, extent K
  frontSecond: ConvParams; // E -> 2, extent K
  units: RdnUnitWeights[];
}

function makeAsppWeights(E: number, K: number): AsppWeights {
  return {
    pool: makeConvParams(BOUNDARY_CHANNELS, E, 1),
    plain: makeConvParams(BOUNDARY_CHANNELS, E, K),
    rate6: makeConvParams(BOUNDARY_CHANNELS, E, K, 6),
    rate12: makeConvParams(BOUNDARY_CHANNELS, E, K, 12),
    fusion: makeConvParams(4 * E, BOUNDARY_CHANNELS, 1),
  };
}

/** All weights and biases zero; forwards collapse to their skip terms. */
export function zeroWeights(cfg: NetworkConfig): ModelWeights {
  validateConfig(cfg);
  const { layersPerRdn: M, featureChannels: E, kernelSize: K } = cfg;
  const withAspp = cfg.variant === "pmsrdn";
  const units: RdnUnitWeights[] = [];
  for (let b = 0; b < cfg.numRdnBlocks; b++) {
    const blocks: ConvParams[] = [];
    for (let m = 0; m < M; m++) {
      blocks.push(makeConvParams(BOUNDARY_CHANNELS + E * m, E, K));
    }
    const fusionIn = BOUNDARY_CHANNELS + E * M + (withAspp ? BOUNDARY_CHANNELS : 0);
    units.push({
      blocks,
      fusion: makeConvParams(fusionIn, BOUNDARY_CHANNELS, 1),
      aspp: withAspp ? makeAsppWeights(E, K) : null,
    });
  }
  return {
    config: cfg,
    frontFirst: makeConvParams(BOUNDARY_CHANNELS, E, K),
    frontSecond: makeConvParams(E, BOUNDARY_CHANNELS, K),
    units,
  };
}

function heInit(rng: Rng, conv: ConvParams): void {
  const std = Math.sqrt(2 / (conv.inC * conv.K));
  const w = conv.weight.data;
  for (let i = 0; i < w.length; i++) w[i] = rng.normal() * std;
  conv.bias.data.fill(0);
}

/** Seeded fan-in-scaled normal init; biases start at zero. */
export function initWeights(cfg: NetworkConfig, seed: number): ModelWeights {
  const weights = zeroWeights(cfg);
  const rng = new Rng(seed);
  for (const conv of convList(weights)) heInit(rng, conv);
  return weights;
}

export function convList(w: ModelWeights): ConvParams[] {
  const convs: ConvParams[] = [w.frontFirst, w.frontSecond];
  for (const unit of w.units) {
    convs.push(...unit.blocks, unit.fusion);
    if (unit.aspp) {
      convs.push(unit.aspp.pool, unit.aspp.plain, unit.aspp.rate6, unit.aspp.rate12);
      convs.push(unit.aspp.fusion);
    }
  }
  return convs;
}

/** Flat parameter buffers in a stable order (weights then bias per conv). */
export function paramList(w: ModelWeights): Param[] {
  const params: Param[] = [];
  for (const conv of convList(w)) params.push(conv.weight, conv.bias);
  return params;
}

export function parameterCount(w: ModelWeights): number {
  let count = 0;
  for (const p of paramList(w)) count += p.data.length;
  return count;
}

/** Convolution followed by rectification. */
export function residualBlock(tape: Tape | null, x: FMap, conv: ConvParams): FMap {
  return relu(tape, conv1d(tape, x, conv));
}

/** Conv-relu-conv front stage. */
export function cbamForward(tape: Tape | null, x: FMap, w: ModelWeights): FMap {
  return conv1d(tape, residualBlock(tape, x, w.frontFirst), w.frontSecond);
}

/** Four-branch pyramid over the unit input, fused back to 2 channels. */
export function asppForward(tape: Tape | null, x: FMap, w: AsppWeights): FMap {
  const pooled = conv1d(tape, globalAveragePool(tape, x), w.pool);
  const plain = conv1d(tape, x, w.plain);
  const wide6 = conv1d(tape, x, w.rate6);
  const wide12 = conv1d(tape, x, w.rate12);
  return conv1d(tape, concatChannels(tape, [pooled, plain, wide6, wide12]), w.fusion);
}

function denseUnit(tape: Tape | null, x: FMap, unit: RdnUnitWeights): FMap {
  const stack: FMap[] = [x];
  for (const block of unit.blocks) {
    stack.push(residualBlock(tape, concatChannels(tape, stack), block));
  }
  if (unit.aspp) stack.push(asppForward(tape, x, unit.aspp));
  const fused = conv1d(tape, concatChannels(tape, stack), unit.fusion);
  // additive skip from the unit input
  const out = new FMap(x.G, x.C);
  for (let i = 0; i < out.data.length; i++) out.data[i] = fused.data[i] + x.data[i];
  if (tape) {
    tape.push(() => {
      for (let i = 0; i < out.data.length; i++) {
        fused.grad[i] += out.grad[i];
        x.grad[i] += out.grad[i];
      }
    });
  }
  return out;
}

/** Densely connected unit without the pyramid. */
export function rdnForward(tape: Tape | null, x: FMap, unit: RdnUnitWeights): FMap {
  if (unit.aspp) throw new Error("unit carries a pyramid; use asppRdnForward");
  return denseUnit(tape, x, unit);
}

/** Densely connected unit whose fusion also sees the pyramid output. */
export function asppRdnForward(tape: Tape | null, x: FMap, unit: RdnUnitWeights): FMap {
  if (!unit.aspp) throw new Error("unit has no pyramid; use rdnForward");
  return denseUnit(tape, x, unit);
}

/** Front stage first, then the cascade of B units. */
export function modelForward(tape: Tape | null, x: FMap, w: ModelWeights): FMap {
  if (x.C !== BOUNDARY_CHANNELS) {
    throw new Error(`boundary feature maps carry ${BOUNDARY_CHANNELS} channels, got ${x.C}`);
  }
  let t = cbamForward(tape, x, w);
  for (const unit of w.units) t = denseUnit(tape, t, unit);
  return t;
}

export function mrdnForward(tape: Tape | null, x: FMap, w: ModelWeights): FMap {
  if (w.config.variant === "pmsrdn") throw new Error("weights belong to the multi-scale variant");
  return modelForward(tape, x, w);
}

export function pMsrdnForward(tape: Tape | null, x: FMap, w: ModelWeights): FMap {
  if (w.config.variant !== "pmsrdn") throw new Error("weights lack the pyramid branches");
  return modelForward(tape, x, w);
}
