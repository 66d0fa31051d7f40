/** Basic sample statistics and the Student-t machinery for confidence bands. */

export function mean(xs: readonly number[]): number {
  if (xs.length === 0) throw new Error("mean of empty sample");
  let s = 0;
  for (const x of xs) s += x;
  return s / xs.length;
}

/** Unbiased (n-1) sample standard deviation. */
export function sampleSd(xs: readonly number[]): number {
  if (xs.length < 2) throw new Error("sd needs at least 2 values");
  const m = mean(xs);
  let s = 0;
  for (const x of xs) s += (x - m) * (x - m);
  return Math.sqrt(s / (xs.length - 1));
}

/** Running minimum: best objective value seen up to each index. */
export function bestSoFar(fs: readonly number[]): number[] {
  const out = new Array<number>(fs.length);
  let best = Infinity;
  for (let i = 0; i < fs.length; i++) {
    const f = fs[i]!;
    if (f < best) best = f;
    out[i] = best;
  }
  return out;
}

const LGAMMA_COEF = [
  676.5203681218851, -1259.1392167224028, 771.32342877765313,
  -176.61502916214059, 12.507343278686905, -0.13857109526572012,
  9.9843695780195716e-6, 1.5056327351493116e-7,
];

/** Log-gamma via the Lanczos approximation (g=7, n=9). */
export function logGamma(x: number): number {
  if (x < 0.5) {
    // reflection keeps the approximation on its accurate half-line
    return Math.log(Math.PI / Math.sin(Math.PI * x)) - logGamma(1 - x);
  }
  x -= 1;
  let acc = 0.99999999999980993;
  for (let i = 0; i < LGAMMA_COEF.length; i++) {
    acc += LGAMMA_COEF[i]! / (x + i + 1);
  }
  const t = x + 7.5;
  return 0.5 * Math.log(2 * Math.PI) + (x + 0.5) * Math.log(t) - t + Math.log(acc);
}

/** Continued fraction for the regularized incomplete beta (Lentz). */
function betacf(a: number, b: number, x: number): number {
  const EPS = 1e-15;
  const TINY = 1e-300;
  const qab = a + b;
  const qap = a + 1;
  const qam = a - 1;
  let c = 1;
  let d = 1 - (qab * x) / qap;
  if (Math.abs(d) < TINY) d = TINY;
  d = 1 / d;
  let h = d;
  for (let m = 1; m <= 300; m++) {
    const m2 = 2 * m;
    let aa = (m * (b - m) * x) / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (Math.abs(d) < TINY) d = TINY;
    c = 1 + aa / c;
    if (Math.abs(c) < TINY) c = TINY;
    d = 1 / d;
    h *= d * c;
    aa = (-(a + m) * (qab + m) * x) / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (Math.abs(d) < TINY) d = TINY;
    c = 1 + aa / c;
    if (Math.abs(c) < TINY) c = TINY;
    d = 1 / d;
    const del = d * c;
    h *= del;
    if (Math.abs(del - 1) < EPS) return h;
  }
  throw new Error("incomplete beta did not converge");
}

/** Regularized incomplete beta I_x(a, b). */
export function regularizedIncompleteBeta(a: number, b: number, x: number): number {
  if (!(a > 0) || !(b > 0)) throw new Error("beta parameters must be positive");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const front = Math.exp(
    logGamma(a + b) - logGamma(a) - logGamma(b) + a * Math.log(x) + b * Math.log(1 - x),
  );
  // the continued fraction converges fast only below the distribution mode
  if (x < (a + 1) / (a + b + 2)) {
    return (front * betacf(a, b, x)) / a;
  }
  return 1 - (front * betacf(b, a, 1 - x)) / b;
}

/** CDF of Student's t with nu degrees of freedom. */
export function studentTCdf(t: number, nu: number): number {
  if (!(nu > 0)) throw new Error("degrees of freedom must be positive");
  if (t === 0) return 0.5;
  const ib = regularizedIncompleteBeta(nu / 2, 0.5, nu / (nu + t * t));
  return t > 0 ? 1 - ib / 2 : ib / 2;
}

/** Quantile of Student's t: smallest t with CDF(t) = p, by bisection. */
export function studentTQuantile(p: number, nu: number): number {
  if (!(p > 0 && p < 1)) throw new Error("p must be in (0, 1)");
  if (p === 0.5) return 0;
  if (p < 0.5) return -studentTQuantile(1 - p, nu);
  let lo = 0;
  let hi = 1;
  while (studentTCdf(hi, nu) < p) {
    hi *= 2;
    if (hi > 1e10) throw new Error("quantile bracket failed");
  }
  for (let i = 0; i < 200; i++) {
    const mid = 0.5 * (lo + hi);
    if (studentTCdf(mid, nu) < p) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-12 * Math.max(1, hi)) break;
  }
  return 0.5 * (lo + hi);
}

/** Standard normal CDF.
 *
 * Lower-tail series for moderate z, Mills-ratio continued fraction for the
 * far tail; both converge to full double precision, so Phi(0) is exactly 0.5.
 */
export function normalCdf(z: number): number {
  if (z < 0) return 1 - normalCdf(-z);
  if (z > 40) return 1;
  const phi = Math.exp(-0.5 * z * z) / Math.sqrt(2 * Math.PI);
  if (z < 6) {
    // Phi(z) = 1/2 + phi(z) * sum_{k>=0} z^(2k+1) / (1*3*...*(2k+1))
    let term = z;
    let sum = z;
    let k = 0;
    while (Math.abs(term) > 1e-18 * (1 + Math.abs(sum)) && k < 500) {
      k += 1;
      term *= (z * z) / (2 * k + 1);
      sum += term;
    }
    return 0.5 + phi * sum;
  }
  let cf = 0; // backward evaluation of 1/(z + 1/(z + 2/(z + ...)))
  for (let k = 60; k >= 1; k--) cf = k / (z + cf);
  return 1 - phi / (z + cf);
}

export interface MeanCI {
  mean: number;
  lo: number;
  hi: number;
}

/** Student-t 95% confidence interval for the mean of a sample. */
export function meanCI95(xs: readonly number[]): MeanCI {
  const m = mean(xs);
  if (xs.length < 2) return { mean: m, lo: m, hi: m };
  const half =
    (studentTQuantile(0.975, xs.length - 1) * sampleSd(xs)) / Math.sqrt(xs.length);
  return { mean: m, lo: m - half, hi: m + half };
}
