//! Derivative-free one-dimensional refinement.

/// Values closer than this are treated as equal.
pub const TIE_TOL: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `tol`.
///
/// The result is the best of the golden-section estimate, both bracket ends
/// and `incumbent`, so maxima sitting on the boundary are found exactly. A
/// candidate must beat the incumbent by more than [`TIE_TOL`] to replace it.
pub fn maximize<F>(f: F, lo: f64, hi: f64, incumbent: (f64, f64), tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut best = incumbent;
    let mut consider = |x: f64, fx: f64| {
        if fx > best.1 + TIE_TOL {
            best = (x, fx);
        }
    };
    if hi <= lo {
        return best;
    }
    consider(lo, f(lo));
    consider(hi, f(hi));

    let (mut a, mut b) = (lo, hi);
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
    consider(x1, f1);
    consider(x2, f2);
    let mid = 0.5 * (a + b);
    consider(mid, f(mid));
    best
}

/// Minimizing counterpart of [`maximize`].
pub fn minimize<F>(f: F, lo: f64, hi: f64, incumbent: (f64, f64), tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (x, neg) = maximize(|x| -f(x), lo, hi, (incumbent.0, -incumbent.1), tol);
    (x, -neg)
}

/// Bracket of half-width `radius` around `center`, clipped to `[lo, hi]`.
pub fn local_bracket(center: f64, radius: f64, lo: f64, hi: f64) -> (f64, f64) {
    ((center - radius).max(lo), (center + radius).min(hi))
}

/// Nelder–Mead maximization over the box `[lo, hi]`; trial points are clamped into it.
///
/// `start` seeds a right-angled simplex with legs `scale`. Stops once the
/// simplex is smaller than `tol` on both axes or after `max_iter` iterations.
/// The returned value is never worse than `f(start)`.
pub fn nelder_mead_max<F>(
    f: F,
    start: [f64; 2],
    scale: [f64; 2],
    lo: [f64; 2],
    hi: [f64; 2],
    tol: f64,
    max_iter: usize,
) -> ([f64; 2], f64)
where
    F: Fn([f64; 2]) -> f64,
{
    let clamp = |p: [f64; 2]| [p[0].clamp(lo[0], hi[0]), p[1].clamp(lo[1], hi[1])];
    let leg = |axis: usize| {
        let mut p = start;
        // step inward when the start sits on the upper bound
        p[axis] = if start[axis] + scale[axis] <= hi[axis] {
            start[axis] + scale[axis]
        } else {
            start[axis] - scale[axis]
        };
        clamp(p)
    };
    let mut simplex: Vec<([f64; 2], f64)> = [start, leg(0), leg(1)]
        .into_iter()
        .map(|p| (p, f(p)))
        .collect();

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| clamp([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
    for _ in 0..max_iter {
        // best first; stable sort keeps the incumbent ahead on exact ties
        simplex.sort_by(|x, y| y.1.total_cmp(&x.1));
        let extent = |axis: usize| {
            let v = simplex.iter().map(|(p, _)| p[axis]);
            v.clone().fold(f64::NEG_INFINITY, f64::max) - v.fold(f64::INFINITY, f64::min)
        };
        if extent(0) < tol && extent(1) < tol {
            break;
        }
        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflected = lerp(centroid, worst.0, -1.0);
        let fr = f(reflected);
        if fr > simplex[0].1 {
            let expanded = lerp(centroid, worst.0, -2.0);
            let fe = f(expanded);
            simplex[2] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (reflected, fr);
        } else {
            let (toward, ft) = if fr > worst.1 { (reflected, fr) } else { worst };
            let contracted = lerp(centroid, toward, 0.5);
            let fc = f(contracted);
            if fc > ft {
                simplex[2] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let p = lerp(best, v.0, 0.5);
                    *v = (p, f(p));
                }
            }
        }
    }
    simplex.sort_by(|x, y| y.1.total_cmp(&x.1));
    simplex[0]
}
