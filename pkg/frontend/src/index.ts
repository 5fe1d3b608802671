export {
  HEADER_NBYTES,
  DATASET_MAGIC,
  DATASET_VERSION,
  DatasetFormatError,
  DatasetMagicError,
  DatasetVersionError,
  DatasetTruncatedError,
  parseHeader,
  decodeDataset,
  readDataset,
  encodeDataset,
  sampleY,
  sampleH,
  sliceDataset,
} from "./dataset.js";
export type { Dataset, DatasetHeader } from "./dataset.js";
export {
  makeGeometry,
  waveNumber,
  complexVector,
  elementDistance,
  farFieldSteering,
  nearFieldSteering,
  angleGrid,
  buildAngularDictionary,
  buildPolarDictionary,
  analysis,
  synthesis,
} from "./dictionary.js";
export type {
  ArrayGeometry,
  ComplexVector,
  ComplexMatrix,
  Dictionary,
  DictionaryKind,
} from "./dictionary.js";
export {
  nmse,
  nmseDb,
  lsEstimate,
  formatG6,
  CSV_HEADER,
  formatCsvRow,
  recordsToCsv,
} from "./metrics.js";
export type { NmseRecord } from "./metrics.js";
export {
  BOUNDARY_CHANNELS,
  DEFAULT_KERNEL_SIZE,
  validateConfig,
  zeroWeights,
  initWeights,
  convList,
  paramList,
  parameterCount,
  residualBlock,
  cbamForward,
  asppForward,
  rdnForward,
  asppRdnForward,
  mrdnForward,
  pMsrdnForward,
  modelForward,
} from "./network.js";
export type {
  Domain,
  Variant,
  NetworkConfig,
  ModelWeights,
  RdnUnitWeights,
  AsppWeights,
} from "./network.js";
export {
  featureFromCoefficients,
  coefficientsFromFeature,
  observationFeature,
  estimateChannelDl,
  sampleLossBackward,
  evaluateModel,
} from "./pipeline.js";
export { trainModel, plateauEpochOf, runManifest } from "./train.js";
export type { TrainOptions, TrainResult } from "./train.js";
export { Rng } from "./random.js";
export {
  Param,
  FMap,
  Tape,
  makeConvParams,
  conv1d,
  relu,
  concatChannels,
  add,
  sub,
  globalAveragePool,
  getMultiplyCount,
  resetMultiplyCount,
} from "./tensor.js";
export type { ConvParams } from "./tensor.js";
