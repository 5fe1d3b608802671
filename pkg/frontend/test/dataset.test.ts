import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  DATASET_VERSION,
  DatasetMagicError,
  DatasetTruncatedError,
  DatasetVersionError,
  HEADER_NBYTES,
  decodeDataset,
  encodeDataset,
  parseHeader,
  readDataset,
  sampleH,
  sampleY,
  sliceDataset,
} from "../src/dataset.js";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixtures");
const BIN = path.join(FIXTURES, "n16_snr20.bin");

interface ExpectedSample {
  yRe: number[];
  yIm: number[];
  hRe: number[];
  hIm: number[];
}

interface ExpectedDoc {
  header: {
    numAntennas: number;
    sampleCount: number;
    snrDb: number;
    transmitPower: number;
    wavelength: number;
    spacing: number;
    numPaths: number;
    masterSeed: number;
  };
  samples: ExpectedSample[];
}

const expected: ExpectedDoc = JSON.parse(
  fs.readFileSync(path.join(FIXTURES, "n16_snr20_expected.json"), "utf8"),
);

describe("header", () => {
  it("is 56 bytes", () => {
    expect(HEADER_NBYTES).toBe(56);
  });

  it("parses every field of the generator's file", () => {
    const h = parseHeader(fs.readFileSync(BIN));
    expect(h.version).toBe(DATASET_VERSION);
    expect(h.numAntennas).toBe(expected.header.numAntennas);
    expect(h.sampleCount).toBe(expected.header.sampleCount);
    expect(h.snrDb).toBe(expected.header.snrDb);
    expect(h.transmitPower).toBe(expected.header.transmitPower);
    expect(h.wavelength).toBe(expected.header.wavelength);
    expect(h.spacing).toBe(expected.header.spacing);
    expect(h.numPaths).toBe(expected.header.numPaths);
    expect(Number(h.masterSeed)).toBe(expected.header.masterSeed);
  });
});

describe("payload", () => {
  it("reproduces the generator's sample values bit for bit", () => {
    // The expected file was written by the generator's own reader, so
    // every float here is the exact float32 the producer stored.
    const ds = readDataset(BIN);
    for (let i = 0; i < ds.header.sampleCount; i++) {
      const y = sampleY(ds, i);
      const h = sampleH(ds, i);
      const want = expected.samples[i];
      for (let k = 0; k < ds.header.numAntennas; k++) {
        expect(y.re[k]).toBe(want.yRe[k]);
        expect(y.im[k]).toBe(want.yIm[k]);
        expect(h.re[k]).toBe(want.hRe[k]);
        expect(h.im[k]).toBe(want.hIm[k]);
      }
    }
  });

  it("re-encodes to the identical byte stream", () => {
    const bytes = fs.readFileSync(BIN);
    const again = encodeDataset(decodeDataset(bytes));
    expect(Buffer.compare(Buffer.from(again), bytes)).toBe(0);
  });

  it("expected byte size: header plus 16*N bytes per sample", () => {
    const bytes = fs.readFileSync(BIN);
    const h = parseHeader(bytes);
    expect(bytes.length).toBe(HEADER_NBYTES + h.sampleCount * 16 * h.numAntennas);
  });
});

describe("format errors", () => {
  const bytes = () => Uint8Array.from(fs.readFileSync(BIN));

  it("rejects a corrupted magic", () => {
    const b = bytes();
    b[0] = "Y".charCodeAt(0);
    expect(() => decodeDataset(b)).toThrow(DatasetMagicError);
  });

  it("rejects an unknown version", () => {
    const b = bytes();
    new DataView(b.buffer).setUint16(4, 9, true);
    expect(() => decodeDataset(b)).toThrow(DatasetVersionError);
  });

  it("rejects a payload cut mid-sample", () => {
    const b = bytes().subarray(0, HEADER_NBYTES + 16 * 16 * 2 + 40);
    expect(() => decodeDataset(b)).toThrow(DatasetTruncatedError);
  });

  it("rejects a short header", () => {
    expect(() => parseHeader(bytes().subarray(0, 20))).toThrow(DatasetTruncatedError);
  });
});

describe("sliceDataset", () => {
  it("keeps the leading samples and shares buffers", () => {
    const ds = readDataset(BIN);
    const head = sliceDataset(ds, 3);
    expect(head.header.sampleCount).toBe(3);
    expect(head.header.numAntennas).toBe(ds.header.numAntennas);
    const y2 = sampleY(head, 2);
    const full2 = sampleY(ds, 2);
    expect(y2.re).toEqual(full2.re);
    expect(y2.im).toEqual(full2.im);
  });

  it("rejects out-of-range counts", () => {
    const ds = readDataset(BIN);
    expect(() => sliceDataset(ds, 0)).toThrow(/slice count/);
    expect(() => sliceDataset(ds, 13)).toThrow(/slice count/);
  });
});
