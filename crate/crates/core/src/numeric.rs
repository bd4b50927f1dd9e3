//! Scalar numerical kernels shared across the crate: monotone bisection,
//! golden-section minimisation, adaptive quadrature, and small regression
//! helpers.
//!
//! Conventions for the extended reals `[0, ∞]`: the value `f64::INFINITY` is a
//! first-class citizen and `0 · ∞ = 0` (the measure-theoretic convention).

/// Multiply under the convention `0 · ∞ = 0`.
pub fn emul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// `a / b` with `x/0 = ∞` for `x > 0`, `0/0 = 0`, and `x/∞ = 0`.
pub fn ediv(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        f64::INFINITY
    } else if b.is_infinite() {
        if a.is_infinite() {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        a / b
    }
}

/// Relative gap `|a - b| / (1 + max(|a|,|b|))`, with `∞ == ∞` counting as 0.
pub fn rel_gap(a: f64, b: f64) -> f64 {
    if a.is_infinite() && b.is_infinite() && a.signum() == b.signum() {
        return 0.0;
    }
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

/// Largest `x` in `[lo, hi]` with `pred(x)` true, assuming `pred` is monotone
/// (true on an initial segment). Requires `pred(lo)`; if `pred(hi)` the result
/// is `hi`. Converges by bisection to relative tolerance ~2^-iters.
pub fn bisect_sup(pred: impl Fn(f64) -> bool, lo: f64, hi: f64, iters: usize) -> f64 {
    debug_assert!(lo <= hi);
    if pred(hi) {
        return hi;
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Same as [`bisect_sup`] but bisecting in log space; `lo`, `hi` must be
/// positive. Suited to brackets spanning many decades.
pub fn bisect_sup_log(pred: impl Fn(f64) -> bool, lo: f64, hi: f64, iters: usize) -> f64 {
    debug_assert!(lo > 0.0 && hi > 0.0 && lo <= hi);
    if pred(hi) {
        return hi;
    }
    let (mut llo, mut lhi) = (lo.ln(), hi.ln());
    for _ in 0..iters {
        let mid = 0.5 * (llo + lhi);
        if mid <= llo || mid >= lhi {
            break;
        }
        if pred(mid.exp()) {
            llo = mid;
        } else {
            lhi = mid;
        }
    }
    llo.exp()
}

/// Golden-section minimisation of `f` over `[lo, hi]` in log space.
///
/// `f` may return `∞` on part of the domain (the search treats it as a very
/// large finite value); `f` is assumed unimodal on the bracket. Returns
/// `(argmin, min)`.
pub fn golden_min_log(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    debug_assert!(lo > 0.0 && hi > lo);
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let guard = |v: f64| if v.is_finite() { v } else { 1e300 };
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = guard(f(c.exp()));
    let mut fd = guard(f(d.exp()));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = guard(f(c.exp()));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = guard(f(d.exp()));
        }
    }
    let x = (0.5 * (a + b)).exp();
    let fx = f(x);
    // Report the best point actually evaluated.
    let mut best = (x, guard(fx));
    if fc < best.1 {
        best = (c.exp(), fc);
    }
    if fd < best.1 {
        best = (d.exp(), fd);
    }
    best
}

/// Golden-section maximisation of a concave `f` over `[lo, hi]` (linear
/// scale). Returns `(argmax, max)`.
pub fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (x, neg) = golden_min_lin(|x| -f(x), lo, hi, iters);
    (x, -neg)
}

/// Golden-section minimisation on a linear bracket.
pub fn golden_min_lin(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let guard = |v: f64| if v.is_finite() { v } else { 1e300 };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = guard(f(c));
    let mut fd = guard(f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = guard(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = guard(f(d));
        }
    }
    let x = 0.5 * (a + b);
    let mut best = (x, guard(f(x)));
    if fc < best.1 {
        best = (c, fc);
    }
    if fd < best.1 {
        best = (d, fd);
    }
    best
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
#[allow(clippy::too_many_arguments)]
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// `count` points log-spaced over `[lo, hi]` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo && count >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (llo + (lhi - llo) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
