/**
 * Train one denoising network on recorded pilot datasets and report its
 * test NMSE next to the pilot-inversion floor (and, optionally, a
 * sparse-recovery baseline CSV produced by `xlce sweep`).
 *
 * Example (desk-scale protocol, one variant):
 *   xlce gen-dataset --n 64 --samples 4000 --snr-db 20 --seed 1021 --out train.bin
 *   xlce gen-dataset --n 64 --samples 1000 --snr-db 20 --seed 1022 --out val.bin
 *   xlce gen-dataset --n 64 --samples 1000 --snr-db 20 --seed 1023 --out test.bin
 *   node dist/scripts/desk_scale.js --train train.bin --val val.bin --test test.bin \
 *     --variant pmsrdn --epochs 300 --seed 99 --out-dir runs/pmsrdn20
 */
import * as fs from "node:fs";
import * as path from "node:path";
import { parseArgs } from "node:util";

import { readDataset, sampleH, sampleY } from "../src/dataset.js";
import { Dictionary, buildAngularDictionary, buildPolarDictionary, makeGeometry } from "../src/dictionary.js";
import { formatCsvRow, lsEstimate, nmse, nmseDb, recordsToCsv } from "../src/metrics.js";
import { NetworkConfig, Variant } from "../src/network.js";
import { evaluateModel } from "../src/pipeline.js";
import { runManifest, trainModel } from "../src/train.js";

const { values: args } = parseArgs({
  options: {
    train: { type: "string" },
    val: { type: "string" },
    test: { type: "string" },
    variant: { type: "string", default: "pmsrdn" },
    epochs: { type: "string", default: "300" },
    seed: { type: "string", default: "99" },
    "rdn-blocks": { type: "string", default: "4" },
    "layers-per-rdn": { type: "string", default: "4" },
    "feature-channels": { type: "string", default: "32" },
    "kernel-size": { type: "string", default: "3" },
    "learning-rate": { type: "string", default: "1e-4" },
    "batch-size": { type: "string", default: "64" },
    "atoms-per-angle": { type: "string", default: "2" },
    "r-min": { type: "string", default: "5" },
    "baseline-csv": { type: "string" },
    "out-dir": { type: "string" },
    "no-plateau-stop": { type: "boolean", default: false },
  },
});

function requirePath(name: "train" | "val" | "test"): string {
  const value = args[name];
  if (!value) {
    console.error(`missing required --${name} <dataset.bin>`);
    process.exit(2);
  }
  return value;
}

const variant = args.variant as Variant;
if (!["mrdn", "pmrdn", "pmsrdn"].includes(variant)) {
  console.error(`unknown --variant ${args.variant}; expected mrdn, pmrdn, or pmsrdn`);
  process.exit(2);
}

const trainSet = readDataset(requirePath("train"));
const valSet = readDataset(requirePath("val"));
const testSet = readDataset(requirePath("test"));

const geom = makeGeometry(trainSet.header.numAntennas, trainSet.header.wavelength, trainSet.header.spacing);
const dict: Dictionary =
  variant === "mrdn"
    ? buildAngularDictionary(geom)
    : buildPolarDictionary(geom, Number(args["atoms-per-angle"]), Number(args["r-min"]));

const config: NetworkConfig = {
  numRdnBlocks: Number(args["rdn-blocks"]),
  layersPerRdn: Number(args["layers-per-rdn"]),
  featureChannels: Number(args["feature-channels"]),
  kernelSize: Number(args["kernel-size"]),
  learningRate: Number(args["learning-rate"]),
  epochs: Number(args.epochs),
  batchSize: Number(args["batch-size"]),
  domain: variant === "mrdn" ? "angular" : "polar",
  variant,
};
const seed = Number(args.seed);

console.log(`training ${variant}: N=${geom.numAntennas}, atoms=${dict.matrix.cols}, ` +
  `snr=${trainSet.header.snrDb} dB, ${trainSet.header.sampleCount} train samples, seed ${seed}`);

const t0 = Date.now();
const result = trainModel(config, trainSet, valSet, dict, {
  seed,
  stopOnPlateau: !args["no-plateau-stop"],
  onEpoch: (epoch, loss, val) => {
    const mins = ((Date.now() - t0) / 60000).toFixed(1);
    console.log(`epoch ${epoch}/${config.epochs}: train loss ${loss.toExponential(4)}, ` +
      `val ${nmseDb(val).toFixed(3)} dB (${mins} min)`);
  },
});

const record = evaluateModel(result.weights, testSet, dict);

let lsAcc = 0;
for (let i = 0; i < testSet.header.sampleCount; i++) {
  lsAcc += nmse(sampleH(testSet, i), lsEstimate(sampleY(testSet, i), testSet.header.transmitPower));
}
const lsRecord = {
  estimator: "ls",
  snrDb: testSet.header.snrDb,
  trials: Number(testSet.header.sampleCount),
  nmse: lsAcc / Number(testSet.header.sampleCount),
  nmseDb: nmseDb(lsAcc / Number(testSet.header.sampleCount)),
};

console.log(`\n${variant}: plateau ${result.plateauEpoch ?? "none"} ` +
  `(${result.epochsRun} epochs run), test NMSE ${record.nmseDb.toFixed(3)} dB`);
console.log(`pilot inversion on the same test set: ${lsRecord.nmseDb.toFixed(3)} dB`);

if (args["baseline-csv"]) {
  const rows = fs.readFileSync(args["baseline-csv"], "utf8").trim().split("\n").slice(1);
  for (const row of rows) {
    const [estimator, , , , db] = row.split(",");
    const delta = Number(db) - record.nmseDb;
    console.log(`${estimator} baseline: ${Number(db).toFixed(3)} dB ` +
      `(${variant} ${delta >= 0 ? "better" : "worse"} by ${Math.abs(delta).toFixed(3)} dB)`);
  }
}

if (args["out-dir"]) {
  const dir = args["out-dir"];
  fs.mkdirSync(dir, { recursive: true });
  fs.writeFileSync(path.join(dir, "manifest.json"), runManifest(config, seed, result));
  fs.writeFileSync(path.join(dir, "nmse.csv"), recordsToCsv([record]) + formatCsvRow(lsRecord) + "\n");
  console.log(`wrote ${path.join(dir, "manifest.json")} and nmse.csv`);
}
