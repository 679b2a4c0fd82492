//! Seeded test inputs.
//!
//! Every random object is drawn from `ChaCha8Rng::seed_from_u64(seed)`.
//! Complex values have real and imaginary parts independently uniform on
//! `[−1, 1)`, drawn real part first, in storage order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{GridFunction, LatticeSpec};
use crate::level1::Grid2;
use crate::level2::Functional;
use crate::pathspace::{IntegerPath, PathFunction, PathSpace};
use crate::{Result, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut SeededRng) -> C64 {
    let re = rng.random_range(-1.0..1.0);
    let im = rng.random_range(-1.0..1.0);
    C64::new(re, im)
}

pub fn complex_vec(rng: &mut SeededRng, len: usize) -> Vec<C64> {
    (0..len).map(|_| complex(rng)).collect()
}

pub fn grid_function(rng: &mut SeededRng, lattice: LatticeSpec) -> GridFunction {
    GridFunction::from_parts(lattice, complex_vec(rng, lattice.count()))
}

pub fn grid2(rng: &mut SeededRng, lattice: LatticeSpec) -> Grid2 {
    let n = lattice.count();
    Grid2::new(lattice, complex_vec(rng, n * n)).expect("length matches")
}

/// Dense functional with independent entries; subject to the space's guard.
pub fn dense_functional(rng: &mut SeededRng, space: PathSpace) -> Result<Functional> {
    let len = space.dense_len()?;
    Functional::dense(space, complex_vec(rng, len))
}

pub fn product_functional(rng: &mut SeededRng, space: PathSpace) -> Functional {
    let sites = (0..space.sites())
        .map(|_| complex_vec(rng, space.radix()))
        .collect();
    Functional::product(space, sites).expect("shape matches")
}

pub fn path(rng: &mut SeededRng, space: PathSpace) -> PathFunction {
    let n = space.radix() as i64;
    let digits = (0..space.sites())
        .map(|_| rng.random_range(-n / 2..n / 2))
        .collect();
    PathFunction::new(space, digits).expect("length matches")
}

/// Integer direction with raw digits uniform on the codomain index range.
pub fn integer_path(rng: &mut SeededRng, space: PathSpace) -> IntegerPath {
    let n = space.radix() as i64;
    let raw = (0..space.sites())
        .map(|_| rng.random_range(-n / 2..n / 2))
        .collect();
    IntegerPath::new(space, raw).expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a = complex_vec(&mut seeded(42), 16);
        let b = complex_vec(&mut seeded(42), 16);
        assert_eq!(a, b);
        assert_ne!(a, complex_vec(&mut seeded(43), 16));
        assert!(a.iter().all(|c| c.re.abs() <= 1.0 && c.im.abs() <= 1.0));
    }
}
