/**
 * End-to-end estimation: domain transform, residual denoising,
 * synthesis back to the antenna domain.
 *
 * The network predicts the noise image of the transformed observation,
 * so the estimate is Y_dom - net(Y_dom) pushed through the synthesis
 * transform. With all-zero weights the angular pipeline collapses to
 * the pilot-inversion baseline exactly (unitary round trip); the polar
 * pipeline collapses to the dictionary's rank-limited projection.
 */
import { Dataset, sampleH, sampleY } from "./dataset.js";
import { ComplexVector, Dictionary, analysis, complexVector, synthesis } from "./dictionary.js";
import { NmseRecord, lsEstimate, nmse, nmseDb } from "./metrics.js";
import { ModelWeights, modelForward } from "./network.js";
import { FMap, Tape, sub } from "./tensor.js";

/** Stack a coefficient vector into a G x 2 boundary feature map. */
export function featureFromCoefficients(x: ComplexVector): FMap {
  const G = x.re.length;
  const fm = new FMap(G, 2);
  fm.data.set(x.re, 0);
  fm.data.set(x.im, G);
  return fm;
}

export function coefficientsFromFeature(fm: FMap): ComplexVector {
  if (fm.C !== 2) throw new Error(`boundary feature maps carry 2 channels, got ${fm.C}`);
  const G = fm.G;
  const out = complexVector(G);
  out.re.set(fm.data.subarray(0, G));
  out.im.set(fm.data.subarray(G, 2 * G));
  return out;
}

function checkDomain(weights: ModelWeights, dict: Dictionary): void {
  if (weights.config.domain !== dict.kind) {
    throw new Error(
      `model domain ${weights.config.domain} does not match dictionary kind ${dict.kind}`,
    );
  }
}

/** Transformed observation at training scale (pilot power divided out). */
export function observationFeature(
  y: ComplexVector,
  dict: Dictionary,
  transmitPower: number,
): FMap {
  return featureFromCoefficients(analysis(dict, lsEstimate(y, transmitPower)));
}

export function estimateChannelDl(
  y: ComplexVector,
  weights: ModelWeights,
  dict: Dictionary,
  transmitPower: number,
): ComplexVector {
  checkDomain(weights, dict);
  const fm = observationFeature(y, dict, transmitPower);
  const noise = modelForward(null, fm, weights);
  const denoised = sub(null, fm, noise);
  return synthesis(dict, coefficientsFromFeature(denoised));
}

/**
 * Squared channel error of one sample plus a full backward pass.
 *
 * The loss seen by training is the mean over the batch of
 * ||hHat - h||^2; gradSeedScale carries the 1/batch factor. Synthesis
 * is a fixed linear map, so the gradient enters the feature map as
 * 2 * A^H (hHat - h) split into its real and imaginary planes.
 */
export function sampleLossBackward(
  tape: Tape,
  fm: FMap,
  weights: ModelWeights,
  dict: Dictionary,
  h: ComplexVector,
  gradSeedScale: number,
): number {
  const noise = modelForward(tape, fm, weights);
  const denoised = sub(tape, fm, noise);
  const hHat = synthesis(dict, coefficientsFromFeature(denoised));
  const n = h.re.length;
  const err = complexVector(n);
  let loss = 0;
  for (let i = 0; i < n; i++) {
    const dr = hHat.re[i] - h.re[i];
    const di = hHat.im[i] - h.im[i];
    err.re[i] = dr;
    err.im[i] = di;
    loss += dr * dr + di * di;
  }
  const seed = analysis(dict, err);
  const G = denoised.G;
  for (let g = 0; g < G; g++) {
    denoised.grad[g] += 2 * seed.re[g] * gradSeedScale;
    denoised.grad[G + g] += 2 * seed.im[g] * gradSeedScale;
  }
  tape.backward();
  return loss;
}

/** Mean per-sample NMSE over a dataset, reported in the sweep row schema. */
export function evaluateModel(
  weights: ModelWeights,
  ds: Dataset,
  dict: Dictionary,
): NmseRecord {
  checkDomain(weights, dict);
  if (ds.header.numAntennas !== dict.geom.numAntennas) {
    throw new Error(
      `dataset has ${ds.header.numAntennas} antennas, dictionary expects ${dict.geom.numAntennas}`,
    );
  }
  const count = ds.header.sampleCount;
  if (count === 0) throw new Error("empty dataset");
  let acc = 0;
  for (let i = 0; i < count; i++) {
    const hHat = estimateChannelDl(sampleY(ds, i), weights, dict, ds.header.transmitPower);
    acc += nmse(sampleH(ds, i), hHat);
  }
  const mean = acc / count;
  return {
    estimator: weights.config.variant,
    snrDb: ds.header.snrDb,
    trials: count,
    nmse: mean,
    nmseDb: nmseDb(mean),
  };
}
