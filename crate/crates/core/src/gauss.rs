//! Quadratic Gauss sums `G(N) = Σ_{n=0}^{N−1} exp(2πi·n²/N)`.

use serde::Serialize;

use crate::dft::unit_phase;
use crate::error::{Error, Result};
use crate::C64;

pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussSumResult {
    pub n: u64,
    pub value: C64,
    pub method: Method,
}

/// `(1 + (−i)^N)/(1 − i) · √N`.
pub fn gauss_sum_closed(n: u64) -> C64 {
    assert!(n >= 1, "Gauss sum needs N >= 1");
    let minus_i_pow = match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    };
    (C64::new(1.0, 0.0) + minus_i_pow) / C64::new(1.0, -1.0) * (n as f64).sqrt()
}

/// Direct summation with `n² mod N` reduced in integer arithmetic.
pub fn gauss_sum_brute(n: u64) -> Result<C64> {
    if n == 0 {
        return Err(Error::Invalid("Gauss sum needs N >= 1".into()));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_LIMIT,
        });
    }
    let modulus = i128::from(n);
    // Fixed-size blocks keep the rounding independent of how the work is split.
    const BLOCK: u64 = 4096;
    let mut total = C64::new(0.0, 0.0);
    let mut start = 0;
    while start < n {
        let end = (start + BLOCK).min(n);
        let block: C64 = (start..end)
            .map(|k| {
                let k = i128::from(k);
                unit_phase((k * k) % modulus, modulus)
            })
            .sum();
        total += block;
        start = end;
    }
    Ok(total)
}

pub fn gauss_sum(n: u64, method: Method) -> Result<GaussSumResult> {
    let value = match method {
        Method::ClosedForm => {
            if n == 0 {
                return Err(Error::Invalid("Gauss sum needs N >= 1".into()));
            }
            gauss_sum_closed(n)
        }
        Method::BruteForce => gauss_sum_brute(n)?,
    };
    Ok(GaussSumResult { n, value, method })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert!((gauss_sum_closed(4) - C64::new(2.0, 2.0)).norm() < 1e-15);
        assert!(gauss_sum_closed(2).norm() < 1e-15);
        assert!((gauss_sum_closed(16) - C64::new(4.0, 4.0)).norm() < 1e-14);
        assert!((gauss_sum_closed(1) - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(gauss_sum_brute(1).unwrap(), C64::new(1.0, 0.0));
        assert!((gauss_sum_brute(4).unwrap() - C64::new(2.0, 2.0)).norm() < 1e-15);
        assert!((gauss_sum_brute(8).unwrap() - gauss_sum_closed(8)).norm() < 1e-12);
        assert!((gauss_sum_brute(16).unwrap() - C64::new(4.0, 4.0)).norm() < 1e-13);
    }

    #[test]
    fn brute_force_limits() {
        assert!(gauss_sum_brute(0).is_err());
        assert_eq!(
            gauss_sum_brute(BRUTE_FORCE_LIMIT + 1),
            Err(Error::TooLarge {
                n: BRUTE_FORCE_LIMIT + 1,
                max: BRUTE_FORCE_LIMIT
            })
        );
    }

    #[test]
    fn multiples_of_four_are_one_plus_i_root_n() {
        for m in 1..=64u64 {
            let n = 4 * m;
            let root = (n as f64).sqrt();
            let closed = gauss_sum_closed(n);
            assert!((closed - C64::new(root, root)).norm() <= 4.0 * f64::EPSILON * root);
        }
    }
}
