//! Adaptive Simpson quadrature.

use crate::error::{invalid, Result};
use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

/// `∫_a^b f` to absolute tolerance `tol` on each refined panel.
pub fn integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
    if !(a <= b) || !a.is_finite() || !b.is_finite() {
        return invalid(format!("integration range [{a}, {b}] must be finite and ordered"));
    }
    if !(tol > T::zero()) {
        return invalid(format!("tolerance must be positive, got {tol}"));
    }
    if a == b {
        return Ok(T::zero());
    }
    let half = T::lit(0.5);
    let m = a + (b - a) * half;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    Ok(refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH))
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let half = T::lit(0.5);
    let m = a + (b - a) * half;
    let (lm, rm) = (a + (m - a) * half, m + (b - m) * half);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol * half, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol * half, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::special::{phi_cdf, phi_pdf};

    #[test]
    fn polynomials_and_gaussians() {
        assert!((integrate(|x: f64| x * x * x, 0.0, 2.0, 1e-12).unwrap() - 4.0).abs() < 1e-12);
        let v = integrate(phi_pdf::<f64>, -1.0, 2.5, 1e-13).unwrap();
        assert!((v - (phi_cdf(2.5) - phi_cdf(-1.0))).abs() < 1e-12);
        assert_eq!(integrate(|x: f64| x, 1.0, 1.0, 1e-9).unwrap(), 0.0);
        assert!(integrate(|x: f64| x, 2.0, 1.0, 1e-9).is_err());
    }
}
