//! Small complex helpers missing from `num-complex`.

use num_complex::Complex64;

pub type C64 = Complex64;

pub const PI: f64 = core::f64::consts::PI;
pub const TAU: f64 = core::f64::consts::TAU;
pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// `e^{i pi k / n}` with the integer phase reduced first.
pub fn root_of_unity(k: i64, n: i64) -> C64 {
    let r = k.rem_euclid(2 * n);
    cis(PI * r as f64 / n as f64)
}

/// Integer power by squaring; negative exponents invert the base first.
pub fn powi(z: C64, n: i64) -> C64 {
    let (mut base, mut e) = if n < 0 { (z.inv(), n.unsigned_abs()) } else { (z, n as u64) };
    let mut acc = ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// `ln(1 + u)` for `|u| <= 1`, accurate for small `u`.
pub fn ln1p(u: C64) -> C64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    let im = u.im.atan2(1.0 + u.re);
    C64::new(re, im)
}

#[inline]
pub fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_repeated_product() {
        let z = c(0.3, -1.2);
        let mut p = ONE;
        for _ in 0..7 {
            p *= z;
        }
        assert!((powi(z, 7) - p).norm() < 1e-14);
        assert!((powi(z, -7) * p - ONE).norm() < 1e-14);
        assert_eq!(powi(z, 0), ONE);
    }

    #[test]
    fn ln1p_agrees_with_ln() {
        let u = c(-0.3, 0.4);
        assert!((ln1p(u) - (ONE + u).ln()).norm() < 1e-15);
        let u = c(1e-12, 1e-12);
        assert!((ln1p(u) - u).norm() < 1e-23);
    }

    #[test]
    fn root_of_unity_reduces_phase() {
        assert!((root_of_unity(7, 2) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((root_of_unity(-1, 1) + ONE).norm() < 1e-15);
    }
}
