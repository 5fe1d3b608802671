/**
 * Seeded training loop: adaptive-moment gradient descent on the mean
 * squared channel error, batch accumulation, per-epoch validation
 * NMSE, and optional plateau-based early stopping.
 *
 * Two runs with identical config, data, and seed produce bitwise
 * identical weight trajectories (single-threaded, fixed op order).
 */
import { Dataset, sampleH, sampleY } from "./dataset.js";
import { ComplexVector, Dictionary } from "./dictionary.js";
import { nmseDb } from "./metrics.js";
import {
  ModelWeights,
  NetworkConfig,
  initWeights,
  paramList,
  validateConfig,
} from "./network.js";
import { evaluateModel, observationFeature, sampleLossBackward } from "./pipeline.js";
import { Rng } from "./random.js";
import { FMap, Param, Tape } from "./tensor.js";

export interface TrainOptions {
  seed: number;
  /** Stop once validation NMSE stops improving (see plateauEpoch). */
  stopOnPlateau?: boolean;
  plateauWindow?: number; // epochs, default 20
  plateauDbThreshold?: number; // default 0.05 dB
  onEpoch?: (epoch: number, trainLoss: number, valNmse: number) => void;
}

export interface TrainResult {
  weights: ModelWeights;
  /** Mean per-sample squared channel error, one entry per epoch run. */
  trainLossCurve: number[];
  /** Validation NMSE (ratio), one entry per epoch run. */
  valNmseCurve: number[];
  epochsRun: number;
  /** First epoch (1-based) at which validation NMSE had plateaued, if any. */
  plateauEpoch: number | null;
  finalTrainNmse: number;
  finalValNmse: number;
}

class Adam {
  private m: Float64Array[];
  private v: Float64Array[];
  private t = 0;

  constructor(
    private params: Param[],
    private lr: number,
    private beta1 = 0.9,
    private beta2 = 0.999,
    private eps = 1e-8,
  ) {
    this.m = params.map((p) => new Float64Array(p.data.length));
    this.v = params.map((p) => new Float64Array(p.data.length));
  }

  step(): void {
    this.t++;
    const c1 = 1 - Math.pow(this.beta1, this.t);
    const c2 = 1 - Math.pow(this.beta2, this.t);
    for (let k = 0; k < this.params.length; k++) {
      const p = this.params[k].data;
      const g = this.params[k].grad;
      const m = this.m[k];
      const v = this.v[k];
      for (let i = 0; i < p.length; i++) {
        m[i] = this.beta1 * m[i] + (1 - this.beta1) * g[i];
        v[i] = this.beta2 * v[i] + (1 - this.beta2) * g[i] * g[i];
        p[i] -= (this.lr * (m[i] / c1)) / (Math.sqrt(v[i] / c2) + this.eps);
      }
    }
  }
}

function checkDatasetMatch(ds: Dataset, dict: Dictionary, what: string): void {
  if (ds.header.numAntennas !== dict.geom.numAntennas) {
    throw new Error(
      `${what} set has ${ds.header.numAntennas} antennas, dictionary expects ` +
        `${dict.geom.numAntennas}`,
    );
  }
  if (ds.header.sampleCount === 0) throw new Error(`${what} set is empty`);
}

/**
 * Plateau rule: at epoch e (1-based), the best validation NMSE in dB
 * improved by less than `thresholdDb` over the trailing `window`
 * epochs. Returns the first such epoch or null.
 */
export function plateauEpochOf(
  valNmseCurve: number[],
  window = 20,
  thresholdDb = 0.05,
): number | null {
  let bestDb = Infinity;
  const bestUpTo: number[] = [];
  for (const v of valNmseCurve) {
    bestDb = Math.min(bestDb, nmseDb(v));
    bestUpTo.push(bestDb);
  }
  for (let e = window; e < bestUpTo.length; e++) {
    if (bestUpTo[e - window] - bestUpTo[e] < thresholdDb) return e + 1;
  }
  return null;
}

export function trainModel(
  config: NetworkConfig,
  trainSet: Dataset,
  valSet: Dataset,
  dict: Dictionary,
  opts: TrainOptions,
): TrainResult {
  validateConfig(config);
  if (config.domain !== dict.kind) {
    throw new Error(`config domain ${config.domain} does not match dictionary ${dict.kind}`);
  }
  checkDatasetMatch(trainSet, dict, "training");
  checkDatasetMatch(valSet, dict, "validation");

  const count = trainSet.header.sampleCount;
  const power = trainSet.header.transmitPower;
  const features: Float64Array[] = [];
  const targets: ComplexVector[] = [];
  for (let i = 0; i < count; i++) {
    features.push(observationFeature(sampleY(trainSet, i), dict, power).data);
    targets.push(sampleH(trainSet, i));
  }
  const G = dict.matrix.cols;

  const weights = initWeights(config, opts.seed);
  const params = paramList(weights);
  const adam = new Adam(params, config.learningRate);
  const rng = new Rng(opts.seed ^ 0x5bd1e995);
  const order = new Int32Array(count);
  const window = opts.plateauWindow ?? 20;
  const thresholdDb = opts.plateauDbThreshold ?? 0.05;

  const trainLossCurve: number[] = [];
  const valNmseCurve: number[] = [];
  let plateauEpoch: number | null = null;
  let epochsRun = 0;

  for (let epoch = 1; epoch <= config.epochs; epoch++) {
    for (let i = 0; i < count; i++) order[i] = i;
    rng.shuffle(order);
    let epochLoss = 0;
    for (let start = 0; start < count; start += config.batchSize) {
      const end = Math.min(start + config.batchSize, count);
      const scale = 1 / (end - start);
      for (const p of params) p.grad.fill(0);
      let batchLoss = 0;
      for (let s = start; s < end; s++) {
        const idx = order[s];
        const fm = new FMap(G, 2);
        fm.data.set(features[idx]);
        const tape = new Tape();
        batchLoss += sampleLossBackward(tape, fm, weights, dict, targets[idx], scale);
      }
      if (!Number.isFinite(batchLoss)) {
        throw new Error(
          `training diverged: non-finite batch loss at epoch ${epoch}, ` +
            `samples ${start}..${end - 1}; lower the learning rate or check the data`,
        );
      }
      epochLoss += batchLoss;
      adam.step();
    }
    epochsRun = epoch;
    trainLossCurve.push(epochLoss / count);
    const val = evaluateModel(weights, valSet, dict);
    valNmseCurve.push(val.nmse);
    opts.onEpoch?.(epoch, epochLoss / count, val.nmse);
    if (plateauEpoch === null) {
      plateauEpoch = plateauEpochOf(valNmseCurve, window, thresholdDb);
      if (plateauEpoch !== null && opts.stopOnPlateau) break;
    }
  }

  return {
    weights,
    trainLossCurve,
    valNmseCurve,
    epochsRun,
    plateauEpoch,
    finalTrainNmse: evaluateModel(weights, trainSet, dict).nmse,
    finalValNmse: valNmseCurve[valNmseCurve.length - 1],
  };
}

/** JSON text capturing what a training run did; one file per run. */
export function runManifest(
  config: NetworkConfig,
  seed: number,
  result: TrainResult,
): string {
  return JSON.stringify(
    {
      config,
      seed,
      epochsRun: result.epochsRun,
      plateauEpoch: result.plateauEpoch,
      finalTrainNmse: result.finalTrainNmse,
      finalValNmse: result.finalValNmse,
      finalTrainNmseDb: nmseDb(result.finalTrainNmse),
      finalValNmseDb: nmseDb(result.finalValNmse),
    },
    null,
    2,
  );
}
