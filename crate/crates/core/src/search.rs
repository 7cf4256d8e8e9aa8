//! Scalar root bracketing and one-dimensional maximisation.

use rayon::prelude::*;

/// Golden ratio conjugate, `(√5 − 1)/2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// `f(lo)` and `f(hi)` must have opposite signs (zero counts as either).
/// Iterates until the bracket is narrower than `tol` or the midpoint can no
/// longer be represented strictly between the endpoints; returns the final
/// bracket `(lo, hi)` with the sign of `f(lo)` preserved.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let lo_sign = f(lo) > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Bisection on a monotone predicate that is `false` at `lo` and `true` at `hi`.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x, f(x))` for the best point seen, which includes both endpoints.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let (fa, fb) = (f(a), f(b));
    let mut best = if fa >= fb { (a, fa) } else { (b, fb) };
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Supremum of `f` over `[lo, hi]`: a uniform coarse grid of `points` nodes
/// (both ends included) followed by golden-section refinement in the two
/// cells adjacent to the best node.
///
/// Grid evaluations run in parallel; the reduction is in index order, so the
/// result does not depend on scheduling. Evaluation errors are propagated.
pub fn grid_sup<F, E>(f: F, lo: f64, hi: f64, points: usize, tol: f64) -> Result<(f64, f64), E>
where
    F: Fn(f64) -> Result<f64, E> + Sync,
    E: Send,
{
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let node = |i: usize| if i + 1 == points { hi } else { lo + step * i as f64 };
    let values: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|i| f(node(i)))
        .collect::<Result<_, E>>()?;
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let mut result = (node(best), values[best]);
    if step > 0.0 {
        let a = node(best.saturating_sub(1));
        let b = node((best + 1).min(points - 1));
        let mut failure = None;
        let refined = golden_max(
            |x| match f(x) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            },
            a,
            b,
            tol,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if refined.1 > result.1 {
            result = refined;
        }
    }
    Ok(result)
}
