//! Bessel functions of the first kind (orders 0, 1, 2) and bracketed root
//! finding.
//!
//! The Bessel evaluator uses the ascending power series for small arguments
//! and Miller's backward recurrence, normalized by the Neumann sum
//! `1 = J0 + 2 (J2 + J4 + ...)`, everywhere else. Both paths keep the absolute
//! error near machine precision over `[0, 50]`.

use crate::error::{Error, Result};

/// Arguments at or below this value use the power series. Above it the
/// largest series term exceeds ~1e2 and cancellation starts eating digits.
const SERIES_LIMIT: f64 = 8.0;

/// Iteration cap for [`find_root`].
pub const MAX_ROOT_ITERATIONS: usize = 200;

const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

/// A closed interval `[lo, hi]` with `lo < hi` expected to contain a sign
/// change of some function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::invalid(format!(
                "bracket requires finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Bracket { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `J_order(x)` for `order` in `{0, 1, 2}`.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > 2 {
        return Err(Error::invalid(format!(
            "unsupported Bessel order {order} (supported: 0, 1, 2)"
        )));
    }
    if x.is_nan() {
        return Err(Error::invalid("Bessel argument is NaN"));
    }
    Ok(bessel_j012(x)[order as usize])
}

pub fn j0(x: f64) -> f64 {
    bessel_j012(x)[0]
}

pub fn j1(x: f64) -> f64 {
    bessel_j012(x)[1]
}

pub fn j2(x: f64) -> f64 {
    bessel_j012(x)[2]
}

/// `[J0(x), J1(x), J2(x)]` evaluated together.
///
/// Negative arguments use the parity `J_n(-x) = (-1)^n J_n(x)`. Infinite
/// arguments return zeros (the functions decay like `x^-1/2`).
pub fn bessel_j012(x: f64) -> [f64; 3] {
    if x.is_nan() {
        return [f64::NAN; 3];
    }
    if x.is_infinite() {
        return [0.0; 3];
    }
    let ax = x.abs();
    let [a, b, c] = if ax <= SERIES_LIMIT {
        [series(0, ax), series(1, ax), series(2, ax)]
    } else {
        miller(ax)
    };
    if x < 0.0 {
        [a, -b, c]
    } else {
        [a, b, c]
    }
}

/// Ascending series `sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)`.
fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = 1.0;
    for i in 1..=order {
        term *= half / f64::from(i);
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= -q / (k * (k + f64::from(order)));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && k > half {
            break;
        }
        if term == 0.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Miller's backward recurrence `J_{k-1} = (2k/x) J_k - J_{k+1}` from a
/// start order well above `x`, normalized with the Neumann sum.
fn miller(x: f64) -> [f64; 3] {
    let start = {
        let n = x.ceil() as usize + 20 + (40.0 * x).sqrt() as usize;
        n + (n & 1)
    };
    let mut out = [0.0; 3];
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k, k = start
    let mut even_sum = if start % 2 == 0 { cur } else { 0.0 };
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        let order = k - 1;
        if cur.abs() > RESCALE_THRESHOLD {
            cur *= RESCALE_FACTOR;
            next *= RESCALE_FACTOR;
            even_sum *= RESCALE_FACTOR;
            for v in &mut out {
                *v *= RESCALE_FACTOR;
            }
        }
        if order > 0 && order % 2 == 0 {
            even_sum += cur;
        }
        if order <= 2 {
            out[order] = cur;
        }
    }
    let norm = out[0] + 2.0 * even_sum;
    out.map(|v| v / norm)
}

/// Finds a root of `f` inside `bracket` to abscissa tolerance `tol`.
///
/// Bisection with regula-falsi steps; a falsi step that fails to halve the
/// bracket forces a bisection step next, so the bracket at least halves every
/// two iterations. The returned root always lies within the input bracket.
pub fn find_root<F>(f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }

    let mut use_falsi = true;
    for _ in 0..MAX_ROOT_ITERATIONS {
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            return Ok(mid);
        }
        let mut x = if use_falsi { b - fb * (b - a) / (fb - fa) } else { mid };
        if !(x > a && x < b) {
            x = mid;
        }
        let mut fx = f(x);
        if !fx.is_finite() && x != mid {
            x = mid;
            fx = f(x);
        }
        if !fx.is_finite() {
            return Err(Error::Convergence {
                iterations: 0,
                detail: format!("non-finite function value at x = {x} inside [{a}, {b}]"),
            });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        let width = b - a;
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        use_falsi = b - a <= 0.5 * width;
    }
    Err(Error::Convergence {
        iterations: MAX_ROOT_ITERATIONS,
        detail: format!("bracket [{a}, {b}] still wider than tolerance {tol}"),
    })
}

/// Samples `f` on a uniform grid of `steps` intervals over `[lo, hi]` and
/// returns one bracket per sign change, in ascending order.
///
/// Samples where `f` is exactly zero are stepped over, so a root sitting on a
/// grid point still yields a bracket with nonzero ends. Non-finite samples
/// break the chain: no bracket is ever formed across them.
pub fn scan_sign_changes<F>(f: F, lo: f64, hi: f64, steps: usize) -> Vec<Bracket>
where
    F: Fn(f64) -> f64,
{
    let mut out = Vec::new();
    if !(lo < hi) || steps < 2 {
        return out;
    }
    let dx = (hi - lo) / steps as f64;
    let mut last: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let x = if i == steps { hi } else { lo + dx * i as f64 };
        let fx = f(x);
        if !fx.is_finite() {
            last = None;
            continue;
        }
        if fx == 0.0 {
            continue;
        }
        if let Some((xp, fp)) = last {
            if fp.signum() != fx.signum() {
                out.push(Bracket { lo: xp, hi: x });
            }
        }
        last = Some((x, fx));
    }
    out
}

/// Scans `[lo, hi]`, refines every bracket, and drops sign changes that turn
/// out to be poles (where `|f|` grows instead of vanishing at the limit).
pub fn find_roots<F>(f: F, lo: f64, hi: f64, steps: usize, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let mut roots = Vec::new();
    for bracket in scan_sign_changes(&f, lo, hi, steps) {
        let x = find_root(&f, bracket, tol)?;
        let fx = f(x);
        let scale = f(bracket.lo).abs().max(f(bracket.hi).abs());
        if fx.is_finite() && fx.abs() <= scale {
            roots.push(x);
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn unsupported_order() {
        assert!(matches!(bessel_j(3, 1.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn first_zeros() {
        assert!(j0(2.404826).abs() < 1e-6);
        assert!(j1(3.831706).abs() < 1e-6);
    }

    #[test]
    fn series_and_miller_agree_at_switch() {
        for x in [6.0, 7.5, 8.0, 8.5] {
            let m = miller(x);
            for (n, v) in m.iter().enumerate() {
                assert!((series(n as u32, x) - v).abs() < 1e-13, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_holds() {
        let mut x = 0.05;
        while x <= 50.0 {
            let [a, b, c] = bessel_j012(x);
            assert!((c - (2.0 * b / x - a)).abs() <= 1e-10, "x={x}");
            x += 0.05;
        }
    }

    #[test]
    fn derivative_of_j0_is_minus_j1() {
        let step = 1e-4;
        let mut x = 0.1;
        while x < 50.0 {
            let d = (j0(x + step) - j0(x - step)) / (2.0 * step);
            assert!((d + j1(x)).abs() < 1e-8, "x={x}");
            x += 0.37;
        }
    }

    #[test]
    fn negative_argument_parity() {
        let [a, b, c] = bessel_j012(-3.3);
        let [pa, pb, pc] = bessel_j012(3.3);
        assert_eq!((a, b, c), (pa, -pb, pc));
    }

    #[test]
    fn root_of_quadratic() {
        let r = find_root(|x| x * x - 2.0, Bracket::new(1.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn root_of_odd_function() {
        let r = find_root(|x| x, Bracket::new(-1.0, 1.0).unwrap(), 1e-12).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn root_of_j0() {
        let r = find_root(j0, Bracket::new(2.0, 3.0).unwrap(), 1e-10).unwrap();
        assert!((r - 2.404826).abs() < 1e-6);
    }

    #[test]
    fn non_bracketing_interval() {
        let err = find_root(|x| x * x + 1.0, Bracket::new(-1.0, 1.0).unwrap(), 1e-9);
        assert!(matches!(err, Err(Error::Bracket { .. })));
    }

    #[test]
    fn tolerance_below_resolution_still_terminates() {
        let r = find_root(|x| x - 1.0 / 3.0, Bracket::new(0.0, 1.0).unwrap(), 1e-300).unwrap();
        assert!((r - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bad_tolerance() {
        let b = Bracket::new(0.0, 1.0).unwrap();
        assert!(find_root(|x| x - 0.5, b, 0.0).is_err());
    }

    #[test]
    fn bracket_rejects_reversed_interval() {
        assert!(Bracket::new(1.0, 1.0).is_err());
        assert!(Bracket::new(2.0, 1.0).is_err());
    }

    #[test]
    fn scan_finds_two_sine_roots() {
        let b = scan_sign_changes(|x: f64| x.sin(), 1.0, 7.0, 100);
        assert_eq!(b.len(), 2);
        assert!(b[0].contains(std::f64::consts::PI));
        assert!(b[1].contains(2.0 * std::f64::consts::PI));
    }

    #[test]
    fn scan_without_roots_is_empty() {
        assert!(scan_sign_changes(|x| x * x + 1.0, 0.0, 10.0, 100).is_empty());
    }

    #[test]
    fn scan_handles_root_on_grid_point() {
        let b = scan_sign_changes(|x| x, -1.0, 1.0, 10);
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(0.0));
        assert!(b[0].lo() < 0.0 && b[0].hi() > 0.0);
    }

    #[test]
    fn scan_skips_non_finite_points() {
        // Pole exactly on a grid point: the sign flip across it is not a root.
        let f = |x: f64| (x - 1.0) / (x - 2.0);
        let b = scan_sign_changes(f, 0.0, 4.0, 8);
        assert_eq!(b.len(), 1);
        assert!(b[0].contains(1.0));
    }

    #[test]
    fn find_roots_rejects_off_grid_pole() {
        let f = |x: f64| (x - 1.0) * (x - 3.0) / (x - 2.1234);
        let roots = find_roots(f, 0.0, 4.0, 40, 1e-12).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-10);
        assert!((roots[1] - 3.0).abs() < 1e-10);
    }
}
