/**
 * Array geometry, steering vectors, and the angular / polar dictionaries.
 *
 * Mirrors the generator side of the toolchain: a uniform linear array on
 * the y-axis, spatial angles theta in [-1, 1], and unit-norm steering
 * columns. Complex data lives in planar {re, im} Float64Array pairs;
 * matrices are column-major so one atom is one contiguous slice.
 */

export interface ArrayGeometry {
  numAntennas: number;
  wavelength: number;
  spacing: number;
}

export interface ComplexVector {
  re: Float64Array;
  im: Float64Array;
}

/** Column-major complex matrix: entry (n, q) sits at q * rows + n. */
export interface ComplexMatrix {
  re: Float64Array;
  im: Float64Array;
  rows: number;
  cols: number;
}

export type DictionaryKind = "angular" | "polar";

export interface Dictionary {
  kind: DictionaryKind;
  matrix: ComplexMatrix;
  geom: ArrayGeometry;
  /** (spatialAngle, distance) per column; distance Infinity marks a planar atom. */
  atomParams: Array<[number, number]>;
}

export function makeGeometry(
  numAntennas: number,
  wavelength = 0.03,
  spacing?: number,
): ArrayGeometry {
  if (!Number.isInteger(numAntennas) || numAntennas < 1) {
    throw new Error(`numAntennas must be a positive integer, got ${numAntennas}`);
  }
  if (!(wavelength > 0)) throw new Error(`wavelength must be positive, got ${wavelength}`);
  const d = spacing ?? wavelength / 2;
  if (!(d > 0)) throw new Error(`spacing must be positive, got ${d}`);
  return { numAntennas, wavelength, spacing: d };
}

export function waveNumber(geom: ArrayGeometry): number {
  return (2 * Math.PI) / geom.wavelength;
}

export function complexVector(n: number): ComplexVector {
  return { re: new Float64Array(n), im: new Float64Array(n) };
}

function checkSpatialAngle(theta: number): void {
  if (!(Math.abs(theta) <= 1)) {
    throw new Error(`spatial angle must lie in [-1, 1], got ${theta}`);
  }
}

/** Exact distance from antenna n to a source at distance r1 from antenna 0. */
export function elementDistance(
  geom: ArrayGeometry,
  spatialAngle: number,
  r1: number,
  n: number,
): number {
  checkSpatialAngle(spatialAngle);
  if (!(r1 > 0)) throw new Error(`r1 must be positive, got ${r1}`);
  const offset = n * geom.spacing;
  const sq = r1 * r1 + offset * offset - 2 * r1 * spatialAngle * offset;
  return Math.sqrt(Math.max(sq, 0));
}

/** Unit-norm planar-wavefront response: entry n is exp(+j*pi*n*theta)/sqrt(N). */
export function farFieldSteering(geom: ArrayGeometry, spatialAngle: number): ComplexVector {
  checkSpatialAngle(spatialAngle);
  const N = geom.numAntennas;
  const out = complexVector(N);
  const scale = 1 / Math.sqrt(N);
  for (let n = 0; n < N; n++) {
    const phase = Math.PI * spatialAngle * n;
    out.re[n] = Math.cos(phase) * scale;
    out.im[n] = Math.sin(phase) * scale;
  }
  return out;
}

/**
 * Unit-norm spherical-wavefront response. Entry n carries the exact
 * propagation phase difference relative to antenna 0:
 * exp(-j*k*(r_n - r1))/sqrt(N).
 */
export function nearFieldSteering(
  geom: ArrayGeometry,
  spatialAngle: number,
  r1: number,
): ComplexVector {
  const N = geom.numAntennas;
  const k = waveNumber(geom);
  const out = complexVector(N);
  const scale = 1 / Math.sqrt(N);
  for (let n = 0; n < N; n++) {
    const dist = elementDistance(geom, spatialAngle, r1, n);
    const phase = -k * (dist - r1);
    out.re[n] = Math.cos(phase) * scale;
    out.im[n] = Math.sin(phase) * scale;
  }
  return out;
}

/** theta_n = (2n - N + 1)/N for n = 0..N-1. */
export function angleGrid(geom: ArrayGeometry): Float64Array {
  const N = geom.numAntennas;
  const grid = new Float64Array(N);
  for (let n = 0; n < N; n++) grid[n] = (2 * n - N + 1) / N;
  return grid;
}

function emptyMatrix(rows: number, cols: number): ComplexMatrix {
  return {
    re: new Float64Array(rows * cols),
    im: new Float64Array(rows * cols),
    rows,
    cols,
  };
}

function setColumn(m: ComplexMatrix, col: number, v: ComplexVector): void {
  m.re.set(v.re, col * m.rows);
  m.im.set(v.im, col * m.rows);
}

/** Fourier dictionary on the grid theta_n = (2n - N + 1)/N; unitary. */
export function buildAngularDictionary(geom: ArrayGeometry): Dictionary {
  const angles = angleGrid(geom);
  const m = emptyMatrix(geom.numAntennas, geom.numAntennas);
  const params: Array<[number, number]> = [];
  for (let c = 0; c < geom.numAntennas; c++) {
    setColumn(m, c, farFieldSteering(geom, angles[c]));
    params.push([angles[c], Infinity]);
  }
  return { kind: "angular", matrix: m, geom, atomParams: params };
}

/**
 * Near-field dictionary: per angle, a distance ladder uniform in 1/r.
 * Rung q = 0 is the planar atom (r = Infinity, identical to the angular
 * column at that angle) and rung q = atomsPerAngle-1 lands exactly on
 * rMin. Columns are angle-major, distance descending.
 */
export function buildPolarDictionary(
  geom: ArrayGeometry,
  atomsPerAngle: number,
  rMin: number,
): Dictionary {
  if (!Number.isInteger(atomsPerAngle) || atomsPerAngle < 1) {
    throw new Error(`atomsPerAngle must be >= 1, got ${atomsPerAngle}`);
  }
  if (!(rMin > 0)) throw new Error(`rMin must be positive, got ${rMin}`);
  const ladder: number[] = [];
  for (let q = 0; q < atomsPerAngle; q++) {
    ladder.push(q === 0 ? Infinity : ((atomsPerAngle - 1) * rMin) / q);
  }
  const angles = angleGrid(geom);
  const cols = geom.numAntennas * atomsPerAngle;
  const m = emptyMatrix(geom.numAntennas, cols);
  const params: Array<[number, number]> = [];
  let c = 0;
  for (let a = 0; a < geom.numAntennas; a++) {
    for (const r of ladder) {
      const atom = Number.isFinite(r)
        ? nearFieldSteering(geom, angles[a], r)
        : farFieldSteering(geom, angles[a]);
      setColumn(m, c, atom);
      params.push([angles[a], r]);
      c++;
    }
  }
  return { kind: "polar", matrix: m, geom, atomParams: params };
}

/** x = A^H y; length equals the atom count. */
export function analysis(dict: Dictionary, y: ComplexVector): ComplexVector {
  const { re, im, rows, cols } = dict.matrix;
  if (y.re.length !== rows) {
    throw new Error(`observation length ${y.re.length} does not match array size ${rows}`);
  }
  const out = complexVector(cols);
  for (let q = 0; q < cols; q++) {
    const base = q * rows;
    let accRe = 0;
    let accIm = 0;
    for (let n = 0; n < rows; n++) {
      const ar = re[base + n];
      const ai = im[base + n];
      // conj(a) * y
      accRe += ar * y.re[n] + ai * y.im[n];
      accIm += ar * y.im[n] - ai * y.re[n];
    }
    out.re[q] = accRe;
    out.im[q] = accIm;
  }
  return out;
}

/** h = A x; length equals the array size. */
export function synthesis(dict: Dictionary, x: ComplexVector): ComplexVector {
  const { re, im, rows, cols } = dict.matrix;
  if (x.re.length !== cols) {
    throw new Error(`coefficient length ${x.re.length} does not match atom count ${cols}`);
  }
  const out = complexVector(rows);
  for (let q = 0; q < cols; q++) {
    const base = q * rows;
    const xr = x.re[q];
    const xi = x.im[q];
    for (let n = 0; n < rows; n++) {
      const ar = re[base + n];
      const ai = im[base + n];
      out.re[n] += ar * xr - ai * xi;
      out.im[n] += ar * xi + ai * xr;
    }
  }
  return out;
}
