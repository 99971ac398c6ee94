/**
 * Log-log least squares, bit-compatible with the producing pipeline.
 *
 * Mean-centered ordinary least squares on (ln x, ln y) over a half-open
 * index window; the slope is the reported exponent and the residual is
 * the largest absolute log deviation inside the window.  This mirrors the
 * `exponent` command so annotated slopes agree with its JSON output to
 * well below 1e-9.
 */

export interface PowerLawFit {
  exponent: number;
  intercept: number;
  residual: number;
  window: [number, number];
}

export function fitPowerLaw(
  points: ReadonlyArray<readonly [number, number]>,
  window?: [number, number],
): PowerLawFit {
  const [lo, hi] = window ?? [0, points.length];
  if (!(Number.isInteger(lo) && Number.isInteger(hi) && lo >= 0 && lo < hi && hi <= points.length)) {
    throw new Error(`fit window (${lo}, ${hi}) does not address the ${points.length} points`);
  }
  const selected = points.slice(lo, hi);
  if (selected.length < 3) {
    throw new Error("a power-law fit needs at least 3 points");
  }
  for (const [x, y] of selected) {
    if (!(x > 0 && y > 0)) {
      throw new Error("log-log fitting needs strictly positive data");
    }
  }
  const lx = selected.map(([x]) => Math.log(x));
  const ly = selected.map(([, y]) => Math.log(y));
  const mx = lx.reduce((a, b) => a + b, 0) / lx.length;
  const my = ly.reduce((a, b) => a + b, 0) / ly.length;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < lx.length; i += 1) {
    const dx = lx[i]! - mx;
    sxx += dx * dx;
    sxy += dx * (ly[i]! - my);
  }
  if (sxx === 0) {
    throw new Error("all x values coincide; no slope is defined");
  }
  const exponent = sxy / sxx;
  const intercept = my - exponent * mx;
  let residual = 0;
  for (let i = 0; i < lx.length; i += 1) {
    residual = Math.max(residual, Math.abs(ly[i]! - (exponent * lx[i]! + intercept)));
  }
  return { exponent, intercept, residual, window: [lo, hi] };
}
