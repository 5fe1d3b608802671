/**
 * Error metric and the CSV row contract shared with the xlce sweep
 * harness: header `estimator,snr_db,trials,nmse,nmse_db`, numbers
 * rendered with 6 significant digits in printf %g style.
 */
import type { ComplexVector } from "./dictionary.js";

/** Squared-error ratio ||hHat - h||^2 / ||h||^2. */
export function nmse(h: ComplexVector, hHat: ComplexVector): number {
  const n = h.re.length;
  if (hHat.re.length !== n) {
    throw new Error(`length mismatch: estimate ${hHat.re.length}, truth ${n}`);
  }
  let err = 0;
  let sig = 0;
  for (let i = 0; i < n; i++) {
    const dr = hHat.re[i] - h.re[i];
    const di = hHat.im[i] - h.im[i];
    err += dr * dr + di * di;
    sig += h.re[i] * h.re[i] + h.im[i] * h.im[i];
  }
  if (sig === 0) throw new Error("reference channel has zero energy");
  return err / sig;
}

export function nmseDb(value: number): number {
  if (value < 0) throw new Error(`nmse must be non-negative, got ${value}`);
  if (value === 0) return -Infinity;
  return 10 * Math.log10(value);
}

/** Pilot inversion baseline: hHat = y / sqrt(power). */
export function lsEstimate(y: ComplexVector, transmitPower: number): ComplexVector {
  if (!(transmitPower > 0)) {
    throw new Error(`transmit power must be positive, got ${transmitPower}`);
  }
  const scale = 1 / Math.sqrt(transmitPower);
  const n = y.re.length;
  const re = new Float64Array(n);
  const im = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    re[i] = y.re[i] * scale;
    im[i] = y.im[i] * scale;
  }
  return { re, im };
}

/**
 * printf "%.6g": 6 significant digits, trailing zeros stripped,
 * exponential form once the exponent leaves [-4, 6), two-digit
 * exponent minimum.
 */
export function formatG6(v: number): string {
  if (Number.isNaN(v)) return "nan";
  if (!Number.isFinite(v)) return v > 0 ? "inf" : "-inf";
  if (v === 0) return Object.is(v, -0) ? "-0" : "0";
  const sci = v.toExponential(5);
  const [mantRaw, expRaw] = sci.split("e");
  const exp = parseInt(expRaw, 10);
  if (exp < -4 || exp >= 6) {
    const mant = mantRaw.replace(/0+$/, "").replace(/\.$/, "");
    const digits = Math.abs(exp).toString().padStart(2, "0");
    return `${mant}e${exp < 0 ? "-" : "+"}${digits}`;
  }
  let fixed = v.toFixed(Math.max(0, 5 - exp));
  if (fixed.includes(".")) fixed = fixed.replace(/0+$/, "").replace(/\.$/, "");
  return fixed;
}

export const CSV_HEADER = "estimator,snr_db,trials,nmse,nmse_db";

export interface NmseRecord {
  estimator: string;
  snrDb: number;
  trials: number;
  nmse: number;
  nmseDb: number;
}

export function formatCsvRow(r: NmseRecord): string {
  return `${r.estimator},${formatG6(r.snrDb)},${r.trials},${formatG6(r.nmse)},${formatG6(r.nmseDb)}`;
}

export function recordsToCsv(records: NmseRecord[]): string {
  return [CSV_HEADER, ...records.map(formatCsvRow)].join("\n") + "\n";
}
