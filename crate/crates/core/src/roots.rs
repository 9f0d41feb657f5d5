//! Scalar bracketing helpers shared by the fixed-point solver and the
//! closed-form oracles.

/// Sample `f` on a geometric grid over `[lo, hi]` and return every subinterval
/// whose endpoints differ in sign (or hit zero), in increasing order.
pub(crate) fn sign_changes<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<Vec<(f64, f64, f64, f64)>, E> {
    debug_assert!(lo > 0.0 && hi > lo && samples >= 2);
    let ratio = (hi / lo).powf(1.0 / (samples - 1) as f64);
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = f(a)?;
    for i in 1..samples {
        let b = if i == samples - 1 {
            hi
        } else {
            lo * ratio.powi(i as i32)
        };
        let fb = f(b)?;
        if fa == 0.0 || fa.signum() != fb.signum() {
            out.push((a, b, fa, fb));
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}

/// Bisection on a bracket with `f(a)` and `f(b)` of opposite sign. Stops when
/// the bracket is narrower than `width` relative to `max(1, |a|)`, when the
/// midpoint is no longer representable, or after `max_iter` halvings.
/// Returns the final bracket and the number of halvings performed.
pub(crate) fn bisect<E>(
    f: &mut impl FnMut(f64) -> Result<f64, E>,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    width: f64,
    max_iter: usize,
) -> Result<(f64, f64, usize), E> {
    let mut iters = 0;
    while iters < max_iter {
        if fa == 0.0 {
            return Ok((a, a, iters));
        }
        if (b - a).abs() <= width * a.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid)?;
        iters += 1;
        if fm == 0.0 {
            return Ok((mid, mid, iters));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok((a, b, iters))
}
