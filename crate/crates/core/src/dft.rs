//! Exact-phase complex exponentials and the centered DFT.
//!
//! All transform kernels in this crate have the form `exp(±2πi·m/n)` with
//! integer `m`; the numerator is reduced modulo `n` in integer arithmetic
//! before any trigonometry, so large products never lose phase accuracy.

use std::f64::consts::TAU;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::C64;

/// Sizes at or below this are summed directly under [`Strategy::Auto`].
pub const DIRECT_LIMIT: usize = 4096;

/// `exp(2πi·num/den)` with `num` reduced modulo `den` first.
pub fn unit_phase(num: i128, den: i128) -> C64 {
    debug_assert!(den > 0);
    let mut r = num.rem_euclid(den);
    // Quarter turns are returned exactly.
    if (4 * r) % den == 0 {
        return match 4 * r / den {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    if 2 * r > den {
        r -= den;
    }
    let (s, c) = (TAU * (r as f64) / (den as f64)).sin_cos();
    C64::new(c, s)
}

/// Kernel sign: `Forward` uses `exp(−2πi·…)`, `Inverse` uses `exp(+2πi·…)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => -1,
            Direction::Inverse => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Direct,
    Fast,
}

/// Table of the `n`-th roots of unity, `roots[k] = exp(2πi·k/n)`.
#[derive(Clone, Debug)]
pub struct RootTable {
    roots: Vec<C64>,
}

impl RootTable {
    pub fn new(n: usize) -> Self {
        let roots = (0..n as i128).map(|k| unit_phase(k, n as i128)).collect();
        Self { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `exp(2πi·m/n)` for any integer `m`.
    #[inline]
    pub fn get(&self, m: i64) -> C64 {
        self.roots[m.rem_euclid(self.roots.len() as i64) as usize]
    }
}

/// Centered DFT of size `n` (divisible by 4):
/// `out[w] = scale · Σ_z exp(∓2πi·z·w/n) · x[z]`, with `z, w ∈ [−n/2, n/2)`
/// stored in ascending order.
#[derive(Clone)]
pub struct CenteredDft {
    n: usize,
    roots: RootTable,
    fast_forward: Arc<dyn Fft<f64>>,
    fast_inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CenteredDft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CenteredDft").field("n", &self.n).finish()
    }
}

impl CenteredDft {
    pub fn new(n: usize) -> Self {
        assert!(
            n.is_multiple_of(4) && n > 0,
            "centered DFT size must be a positive multiple of 4"
        );
        let mut planner = FftPlanner::new();
        Self {
            n,
            roots: RootTable::new(n),
            fast_forward: planner.plan_fft_forward(n),
            fast_inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    pub fn transform(
        &self,
        input: &[C64],
        dir: Direction,
        scale: f64,
        strategy: Strategy,
    ) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.n];
        self.transform_into(input, &mut out, dir, scale, strategy);
        out
    }

    pub fn transform_into(
        &self,
        input: &[C64],
        out: &mut [C64],
        dir: Direction,
        scale: f64,
        strategy: Strategy,
    ) {
        assert_eq!(input.len(), self.n);
        assert_eq!(out.len(), self.n);
        let fast = match strategy {
            Strategy::Auto => self.n > DIRECT_LIMIT,
            Strategy::Direct => false,
            Strategy::Fast => true,
        };
        if fast {
            self.fast(input, out, dir, scale);
        } else {
            self.direct(input, out, dir, scale);
        }
    }

    fn direct(&self, input: &[C64], out: &mut [C64], dir: Direction, scale: f64) {
        let n = self.n as i64;
        let half = n / 2;
        let sign = dir.sign();
        for (j, o) in out.iter_mut().enumerate() {
            let w = j as i64 - half;
            // Phase index advances by w per input step; keep it reduced.
            let stride = (sign * w).rem_euclid(n);
            let mut m = (sign * w * -half).rem_euclid(n);
            let mut acc = C64::new(0.0, 0.0);
            for &x in input {
                acc += self.roots.roots[m as usize] * x;
                m += stride;
                if m >= n {
                    m -= n;
                }
            }
            *o = acc * scale;
        }
    }

    /// Standard FFT with the centering handled by alternating signs:
    /// `z·w = ij − (n/2)(i+j) + n²/4` and `exp(∓iπ n/2) = 1` for `n ≡ 0 mod 4`.
    fn fast(&self, input: &[C64], out: &mut [C64], dir: Direction, scale: f64) {
        for (i, (o, &x)) in out.iter_mut().zip(input).enumerate() {
            *o = if i % 2 == 0 { x } else { -x };
        }
        match dir {
            Direction::Forward => self.fast_forward.process(out),
            Direction::Inverse => self.fast_inverse.process(out),
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o *= if j % 2 == 0 { scale } else { -scale };
        }
    }
}
