//! Independent reference integration: composite Gauss-Legendre on a mesh
//! graded geometrically toward both endpoints, each panel bisected until it
//! agrees with its halves (this catches interior kinks such as `|g|^p` at a
//! zero of `g`). No error estimate; used only to cross-check the adaptive
//! integrator.

use std::sync::OnceLock;

const POINTS: usize = 20;
const GRADING: f64 = 0.25;
/// Grading stops once a panel is this small relative to the accumulated
/// integral magnitude, or at the double-precision floor.
const TAIL_RELATIVE: f64 = 1e-18;
const MAX_LEVELS: usize = 520;
const SPLIT_RELATIVE: f64 = 1e-14;
const NOISE_RELATIVE: f64 = 1e-12;
const MAX_SPLITS: u32 = 16;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// three-term recurrence.
fn legendre_rule() -> &'static ([f64; POINTS], [f64; POINTS]) {
    static RULE: OnceLock<([f64; POINTS], [f64; POINTS])> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut x = [0.0; POINTS];
        let mut w = [0.0; POINTS];
        let n = POINTS as f64;
        for i in 0..POINTS {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=POINTS {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

// `(int f, int |f|)` over one panel
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let (x, w) = legendre_rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let (mut s, mut m) = (0.0, 0.0);
    for i in 0..POINTS {
        let v = w[i] * f(c + h * x[i]);
        s += v;
        m += v.abs();
    }
    (s * h, m * h)
}

// Splitting stops at `SPLIT_RELATIVE` of the whole integral `floor`, at
// `NOISE_RELATIVE` of the panel's own mass, or at `MAX_SPLITS` levels (an
// integrand that is pure rounding noise, e.g. a remainder cancelling to zero,
// meets neither test).
fn refined<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: (f64, f64), floor: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (l, r) = (panel(f, a, m), panel(f, m, b));
    let halves = l.0 + r.0;
    let diff = (halves - whole.0).abs();
    let tol = (SPLIT_RELATIVE * floor).max(NOISE_RELATIVE * whole.1);
    if depth >= MAX_SPLITS || !(m > a && m < b) || diff <= tol {
        return halves;
    }
    refined(f, a, m, l, floor, depth + 1) + refined(f, m, b, r, floor, depth + 1)
}

// Panels [a + d_{k+1}, a + d_k] with d_k = d_0 * GRADING^k, innermost last.
// `floor` is the magnitude of the whole integral; splitting stops at that
// resolution so rounding noise on tiny panels does not trigger it.
fn graded_toward<F: Fn(f64) -> f64>(f: &F, a: f64, width: f64, dir: f64, scale: &mut f64, floor: Option<f64>) -> f64 {
    let mut total = 0.0;
    let mut d = width;
    for _ in 0..MAX_LEVELS {
        let d_next = d * GRADING;
        let (lo, hi) = if dir > 0.0 { (a + d_next, a + d) } else { (a - d, a - d_next) };
        if !(lo < hi) {
            break;
        }
        let whole = panel(f, lo, hi);
        let v = match floor {
            Some(m) => refined(f, lo, hi, whole, m, 0),
            None => whole.0,
        };
        total += v;
        *scale = scale.max(total.abs());
        d = d_next;
        if v.abs() < TAIL_RELATIVE * *scale && d < 1e-6 * width.max(1e-300) {
            break;
        }
        if d < 1e-300 {
            break;
        }
    }
    total
}

/// Reference value of `int_a^b f`.
pub fn oracle_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    let half = 0.5 * (b - a);
    let mut scale = 0.0f64;
    let coarse = graded_toward(&f, a, half, 1.0, &mut scale, None) + graded_toward(&f, b, half, -1.0, &mut scale, None);
    let floor = Some(coarse.abs().max(f64::MIN_POSITIVE));
    let mut scale = 0.0f64;
    let left = graded_toward(&f, a, half, 1.0, &mut scale, floor);
    let right = graded_toward(&f, b, half, -1.0, &mut scale, floor);
    left + right
}
