//! Scalar root finding and quadrature used by the cycle builders.

/// Grows `[start, start * factor^k]` geometrically until `f` changes sign.
///
/// `factor > 1` searches upward, `0 < factor < 1` downward. Returns the
/// bracket ordered `(lo, hi)`.
pub fn grow_bracket<F>(f: F, start: f64, factor: f64, max_steps: usize) -> Option<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let f0 = f(start);
    if f0 == 0.0 {
        return Some((start, start));
    }
    let mut prev = start;
    for _ in 0..max_steps {
        let next = prev * factor;
        let fnext = f(next);
        if !fnext.is_finite() {
            return None;
        }
        if fnext == 0.0 || fnext.signum() != f0.signum() {
            return Some(if next > prev { (prev, next) } else { (next, prev) });
        }
        prev = next;
    }
    None
}

/// Bisection safeguarded secant iteration on a sign-changing bracket.
///
/// Stops once the bracket is narrower than `rel_tol * |x|` or the function
/// vanishes. Returns `None` if `[lo, hi]` does not bracket a root.
pub fn find_root<F>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for iter in 0..200 {
        let width = b - a;
        if width.abs() <= rel_tol * a.abs().max(b.abs()) {
            break;
        }
        // secant proposal, rejected when it leaves the inner part of the
        // bracket; every third step is a plain bisection
        let secant = b - fb * (b - a) / (fb - fa);
        let margin = 0.01 * width;
        let x = if iter % 3 != 2 && secant > a + margin && secant < b - margin {
            secant
        } else {
            0.5 * (a + b)
        };
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Some(if fa.abs() < fb.abs() { a } else { b })
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `(f(x + h) - f(x - h)) / (2h)`.
pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}
