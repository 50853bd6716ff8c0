//! One-dimensional solvers: golden-section minimization of convex functions
//! and sign-change bisection.

/// 1/phi
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a 1D minimization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
}

/// Golden-section search on `[lo, hi]` for a unimodal `f`.
///
/// Stops after `max_iter` iterations or once the bracket is narrower than
/// `xtol`. The endpoints are evaluated too, so a minimum sitting on the
/// boundary of the bracket is returned exactly.
pub fn golden_section<F>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc <= fd {
        Minimum { arg: c, value: fc }
    } else {
        Minimum { arg: d, value: fd }
    };
    for x in [lo, hi] {
        let fx = f(x);
        if fx <= best.value {
            best = Minimum { arg: x, value: fx };
        }
    }
    best
}

/// Upper end `S` of a bracket `[start, S]` containing the minimizer over
/// `s >= start` of a convex `f`. `S` starts at `start + step` and doubles its
/// offset until `f` stops decreasing.
pub fn expand_right<F>(f: &F, start: f64, step: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut offset = step.max(f64::MIN_POSITIVE);
    let mut prev = f(start + offset);
    if prev >= f(start) {
        return start + offset;
    }
    for _ in 0..1100 {
        let next = f(start + 2.0 * offset);
        if next >= prev {
            return start + 2.0 * offset;
        }
        prev = next;
        offset *= 2.0;
    }
    start + offset
}

/// Minimizes a convex `f` over `s >= 0`.
pub fn minimize_convex_halfline<F>(f: F, step: f64, max_iter: usize) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let hi = expand_right(&f, 0.0, step);
    golden_section(&f, 0.0, hi, 0.0, max_iter)
}

/// Minimizes a convex `f` over the whole real line, starting near `guess`.
pub fn minimize_convex_line<F>(f: F, guess: f64, step: f64, xtol: f64, max_iter: usize) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let hi = expand_right(&f, guess, step);
    let neg = |s: f64| f(2.0 * guess - s);
    let lo = 2.0 * guess - expand_right(&neg, guess, step);
    golden_section(&f, lo, hi, xtol, max_iter)
}

/// Bisection for a sign change of `f` on `[a, b]`.
///
/// Requires `f(a)` and `f(b)` of opposite sign (or one of them zero). Stops
/// when `|f| < ftol`, when the bracket is narrower than `xtol`, or when the
/// midpoint can no longer be distinguished from the endpoints.
pub fn bisect<F>(f: F, a: f64, b: f64, xtol: f64, ftol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi || (hi - lo).abs() < xtol {
            break;
        }
        let fm = f(mid);
        if fm.abs() < ftol {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 0.0, 200);
        assert!((m.arg - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn halfline_clamps_to_origin() {
        let m = minimize_convex_halfline(|s| (s + 1.0).abs(), 1.0, 200);
        assert_eq!(m.arg, 0.0);
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn halfline_expands_far() {
        let m = minimize_convex_halfline(|s| (s - 1.0e6).abs(), 1.0, 200);
        assert!((m.arg - 1.0e6).abs() < 1e-6);
    }

    #[test]
    fn line_search_goes_negative() {
        let m = minimize_convex_line(|s| (s + 37.5).powi(2), 0.0, 1.0, 1e-12, 300);
        assert!((m.arg + 37.5).abs() < 1e-6);
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 0.0, 0.0).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 0.0, 0.0).is_none());
    }
}
