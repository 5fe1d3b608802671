/**
 * Reader for the sealed channel-sample files produced by the xlce CLI.
 *
 * Layout (little-endian, packed):
 *   offset 0   4 bytes  magic "XLCE"
 *   offset 4   u16      format version (1)
 *   offset 6   u16      reserved (0)
 *   offset 8   u32      antennas per sample, N
 *   offset 12  u64      sample count
 *   offset 20  f32      SNR in dB used at generation time
 *   offset 24  f32      transmit power
 *   offset 28  f64      wavelength
 *   offset 36  f64      element spacing
 *   offset 44  u32      propagation paths per sample
 *   offset 48  u64      master seed
 *   offset 56  payload: per sample, y then h, each N complex64
 *                       (float32 re, float32 im interleaved)
 *
 * Floats are kept in their original float32 form after reading; callers
 * widen to float64 at the point of use. That keeps re-serialization
 * byte-identical to what the generator wrote.
 */
import * as fs from "node:fs";

import type { ComplexVector } from "./dictionary.js";

export const HEADER_NBYTES = 56;
export const DATASET_MAGIC = "XLCE";
export const DATASET_VERSION = 1;

export class DatasetFormatError extends Error {}
export class DatasetMagicError extends DatasetFormatError {}
export class DatasetVersionError extends DatasetFormatError {}
export class DatasetTruncatedError extends DatasetFormatError {}

export interface DatasetHeader {
  version: number;
  numAntennas: number;
  sampleCount: number;
  snrDb: number;
  transmitPower: number;
  wavelength: number;
  spacing: number;
  numPaths: number;
  masterSeed: bigint;
}

export interface Dataset {
  header: DatasetHeader;
  /** Interleaved float32 observations: sample i spans [i*2N, (i+1)*2N). */
  y: Float32Array;
  /** Interleaved float32 channels, same layout as y. */
  h: Float32Array;
}

export function parseHeader(bytes: Uint8Array): DatasetHeader {
  if (bytes.length < HEADER_NBYTES) {
    throw new DatasetTruncatedError(
      `header needs ${HEADER_NBYTES} bytes, file has ${bytes.length}`,
    );
  }
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  const magic = String.fromCharCode(bytes[0], bytes[1], bytes[2], bytes[3]);
  if (magic !== DATASET_MAGIC) {
    throw new DatasetMagicError(`bad magic ${JSON.stringify(magic)}, expected "XLCE"`);
  }
  const version = view.getUint16(4, true);
  if (version !== DATASET_VERSION) {
    throw new DatasetVersionError(`unsupported format version ${version}`);
  }
  const sampleCount = view.getBigUint64(12, true);
  if (sampleCount > BigInt(Number.MAX_SAFE_INTEGER)) {
    throw new DatasetFormatError(`sample count ${sampleCount} exceeds safe integer range`);
  }
  return {
    version,
    numAntennas: view.getUint32(8, true),
    sampleCount: Number(sampleCount),
    snrDb: view.getFloat32(20, true),
    transmitPower: view.getFloat32(24, true),
    wavelength: view.getFloat64(28, true),
    spacing: view.getFloat64(36, true),
    numPaths: view.getUint32(44, true),
    masterSeed: view.getBigUint64(48, true),
  };
}

export function decodeDataset(bytes: Uint8Array): Dataset {
  const header = parseHeader(bytes);
  const n = header.numAntennas;
  const floatsPerVector = 2 * n;
  const sampleNbytes = 2 * floatsPerVector * 4;
  const expected = HEADER_NBYTES + header.sampleCount * sampleNbytes;
  if (bytes.length < expected) {
    throw new DatasetTruncatedError(
      `payload truncated: expected ${expected} bytes, file has ${bytes.length}`,
    );
  }
  const y = new Float32Array(header.sampleCount * floatsPerVector);
  const h = new Float32Array(header.sampleCount * floatsPerVector);
  // Copy through a DataView: the source buffer's alignment is arbitrary
  // and the format is explicitly little-endian.
  const view = new DataView(bytes.buffer, bytes.byteOffset, bytes.byteLength);
  let off = HEADER_NBYTES;
  for (let i = 0; i < header.sampleCount; i++) {
    const base = i * floatsPerVector;
    for (let f = 0; f < floatsPerVector; f++) {
      y[base + f] = view.getFloat32(off, true);
      off += 4;
    }
    for (let f = 0; f < floatsPerVector; f++) {
      h[base + f] = view.getFloat32(off, true);
      off += 4;
    }
  }
  return { header, y, h };
}

export function readDataset(path: string): Dataset {
  return decodeDataset(fs.readFileSync(path));
}

/** Inverse of decodeDataset; used to prove reads are bit-exact. */
export function encodeDataset(ds: Dataset): Uint8Array {
  const n = ds.header.numAntennas;
  const floatsPerVector = 2 * n;
  const sampleNbytes = 2 * floatsPerVector * 4;
  const out = new Uint8Array(HEADER_NBYTES + ds.header.sampleCount * sampleNbytes);
  const view = new DataView(out.buffer);
  out[0] = DATASET_MAGIC.charCodeAt(0);
  out[1] = DATASET_MAGIC.charCodeAt(1);
  out[2] = DATASET_MAGIC.charCodeAt(2);
  out[3] = DATASET_MAGIC.charCodeAt(3);
  view.setUint16(4, ds.header.version, true);
  view.setUint16(6, 0, true);
  view.setUint32(8, n, true);
  view.setBigUint64(12, BigInt(ds.header.sampleCount), true);
  view.setFloat32(20, ds.header.snrDb, true);
  view.setFloat32(24, ds.header.transmitPower, true);
  view.setFloat64(28, ds.header.wavelength, true);
  view.setFloat64(36, ds.header.spacing, true);
  view.setUint32(44, ds.header.numPaths, true);
  view.setBigUint64(48, ds.header.masterSeed, true);
  let off = HEADER_NBYTES;
  for (let i = 0; i < ds.header.sampleCount; i++) {
    const base = i * floatsPerVector;
    for (let f = 0; f < floatsPerVector; f++) {
      view.setFloat32(off, ds.y[base + f], true);
      off += 4;
    }
    for (let f = 0; f < floatsPerVector; f++) {
      view.setFloat32(off, ds.h[base + f], true);
      off += 4;
    }
  }
  return out;
}

function extractVector(src: Float32Array, sample: number, n: number): ComplexVector {
  const base = sample * 2 * n;
  const re = new Float64Array(n);
  const im = new Float64Array(n);
  for (let k = 0; k < n; k++) {
    re[k] = src[base + 2 * k];
    im[k] = src[base + 2 * k + 1];
  }
  return { re, im };
}

/** Observation of sample i, widened to float64 planar form. */
export function sampleY(ds: Dataset, i: number): ComplexVector {
  return extractVector(ds.y, i, ds.header.numAntennas);
}

/** First `count` samples as a view-backed dataset (shared buffers). */
export function sliceDataset(ds: Dataset, count: number): Dataset {
  if (!Number.isInteger(count) || count < 1 || count > ds.header.sampleCount) {
    throw new Error(`slice count must be in 1..${ds.header.sampleCount}, got ${count}`);
  }
  const floats = count * 2 * ds.header.numAntennas;
  return {
    header: { ...ds.header, sampleCount: count },
    y: ds.y.subarray(0, floats),
    h: ds.h.subarray(0, floats),
  };
}

/** True channel of sample i, widened to float64 planar form. */
export function sampleH(ds: Dataset, i: number): ComplexVector {
  return extractVector(ds.h, i, ds.header.numAntennas);
}
