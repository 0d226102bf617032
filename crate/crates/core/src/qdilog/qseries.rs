//! q-Pochhammer symbols and the theta function.

use crate::cmath::{powi, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Hard cap on product factors; reached only for `|q|` extremely close to 1.
const MAX_FACTORS: usize = 10_000_000;

/// Length of a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochIndex {
    Finite(i64),
    Infinite,
}

/// `(a; q)_infinity`, stopping once `|a q^n| < 1e-16` three times in a row.
pub(crate) fn qpoch_inf(a: C64, q: C64) -> Result<C64> {
    if q.norm() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    let mut prod = ONE;
    let mut t = a;
    let mut quiet = 0;
    for _ in 0..MAX_FACTORS {
        prod *= ONE - t;
        if t.norm() < 1e-16 {
            quiet += 1;
            if quiet == 3 {
                return Ok(prod);
            }
        } else {
            quiet = 0;
        }
        t *= q;
    }
    Err(Error::NonConvergent)
}

/// Like [`qpoch_inf`] but reports the smallest factor `|1 - a q^n|` seen.
pub(crate) fn qpoch_inf_min(a: C64, q: C64) -> Result<(C64, f64)> {
    if q.norm() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    let mut prod = ONE;
    let mut t = a;
    let mut quiet = 0;
    let mut least = f64::INFINITY;
    for _ in 0..MAX_FACTORS {
        let f = ONE - t;
        least = least.min(f.norm());
        prod *= f;
        if t.norm() < 1e-16 {
            quiet += 1;
            if quiet == 3 {
                return Ok((prod, least));
            }
        } else {
            quiet = 0;
        }
        t *= q;
    }
    Err(Error::NonConvergent)
}

/// `(a; q)_k` for integer `k` (negative allowed) or `k = infinity`.
///
/// Finite symbols are plain products and accept any `q`; negative `k` uses
/// `(a;q)_{-n} = 1 / prod_{j=1..n} (1 - a q^{-j})`.
pub fn qpochhammer(a: C64, q: C64, k: PochIndex) -> Result<C64> {
    match k {
        PochIndex::Infinite => qpoch_inf(a, q),
        PochIndex::Finite(n) if n >= 0 => {
            let mut prod = ONE;
            let mut t = a;
            for _ in 0..n {
                prod *= ONE - t;
                t *= q;
            }
            Ok(prod)
        }
        PochIndex::Finite(n) => {
            if q == ZERO {
                return Err(Error::DivergentParameter);
            }
            let qi = q.inv();
            let mut t = a * qi;
            let mut den = ONE;
            for _ in 0..(-n) {
                let f = ONE - t;
                if f.norm() <= 1e-15 * t.norm().max(1.0) {
                    return Err(Error::PoleHit);
                }
                den *= f;
                t *= qi;
            }
            Ok(den.inv())
        }
    }
}

/// `theta_q(x) = sum q^{k^2} x^k`, evaluated by the triple product
/// `(q^2;q^2)(-q x;q^2)(-q/x;q^2)`.
pub fn theta_q(q: C64, x: C64) -> Result<C64> {
    let n = q.norm();
    if !(n > 0.0 && n < 1.0) {
        return Err(Error::DivergentParameter);
    }
    if x == ZERO {
        return Err(Error::OutOfDomain("theta argument must be nonzero"));
    }
    let q2 = q * q;
    Ok(qpoch_inf(q2, q2)? * qpoch_inf(-q * x, q2)? * qpoch_inf(-q / x, q2)?)
}

/// Direct summation of the theta series, used as an independent check.
pub fn theta_q_series(q: C64, x: C64) -> Result<C64> {
    let n = q.norm();
    if !(n > 0.0 && n < 1.0) {
        return Err(Error::DivergentParameter);
    }
    if x == ZERO {
        return Err(Error::OutOfDomain("theta argument must be nonzero"));
    }
    let mut sum = ONE;
    let mut quiet = 0;
    for k in 1..100_000i64 {
        let qk = powi(q, k * k);
        let a = qk * powi(x, k);
        let b = qk * powi(x, -k);
        sum += a + b;
        if a.norm() + b.norm() < 1e-18 * sum.norm().max(1.0) {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmath::c;

    #[test]
    fn finite_examples() {
        let a = c(0.3, 0.2);
        let q = c(0.5, -0.1);
        assert_eq!(qpochhammer(a, q, PochIndex::Finite(0)).unwrap(), ONE);
        let two = qpochhammer(a, q, PochIndex::Finite(2)).unwrap();
        assert!((two - (ONE - a) * (ONE - a * q)).norm() < 1e-15);
    }

    #[test]
    fn infinite_matches_long_product() {
        let a = c(0.3, 0.0);
        let q = c(0.5, 0.0);
        let mut p = ONE;
        let mut t = a;
        for _ in 0..200 {
            p *= ONE - t;
            t *= q;
        }
        let v = qpochhammer(a, q, PochIndex::Infinite).unwrap();
        assert!((v - p).norm() < 1e-14);
    }

    #[test]
    fn negative_index_consistent_with_ratio() {
        let a = c(0.7, 0.4);
        let q = c(0.3, 0.2);
        for k in -4..=4i64 {
            let direct = qpochhammer(a, q, PochIndex::Finite(k)).unwrap();
            let ratio = qpoch_inf(a, q).unwrap() / qpoch_inf(a * powi(q, k), q).unwrap();
            assert!((direct - ratio).norm() < 1e-12 * ratio.norm().max(1.0), "k={k}");
        }
    }

    #[test]
    fn divergent_and_pole() {
        assert_eq!(qpochhammer(ONE * 0.5, ONE, PochIndex::Infinite), Err(Error::DivergentParameter));
        let q = c(0.5, 0.0);
        assert_eq!(qpochhammer(q, q, PochIndex::Finite(-1)), Err(Error::PoleHit));
    }

    #[test]
    fn theta_examples() {
        let q = c(0.1, 0.0);
        let x = c(2.0, 0.0);
        let p = theta_q(q, x).unwrap();
        let s = theta_q_series(q, x).unwrap();
        assert!((p - s).norm() < 1e-13 * s.norm());
        let q = c(0.5, 0.0);
        assert!(theta_q(q, -q.inv()).unwrap().norm() < 1e-15);
        let x = c(0.4, 0.9);
        assert!((theta_q(q, x).unwrap() - theta_q(q, x.inv()).unwrap()).norm() < 1e-13);
    }
}
