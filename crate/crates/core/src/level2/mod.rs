//! The functional transform on `A = {f : X → C}`.
//!
//! For both variants the kernel is `exp(∓2πi·Σ_k z′_a(k)·z′_b(k)/n)` with
//! `n` the codomain size, and `ε₀ = n^{−H²/2}`. The transform therefore
//! factors into one unitary centered DFT of size `n` per site, which is how
//! product-form functionals are transformed without enumerating `X`.

mod functional;
mod ops;
pub mod suite;

pub use functional::{Builtin, Functional, Repr};
pub use ops::{
    convolve2, diff_minus, diff_plus, forward2, inner2, inverse2, lambda_factor, lambda_functional,
    mixed_transform2, reflect2, transform2, transform2_at, translate2, Method, MixedPair,
    Multiplier, MIXED_LIMIT,
};
pub use suite::{
    delta_power_check, difference_suite, kernel_identity_check, product_parseval, product_vs_dense,
    transform_identity_suite,
};

use crate::pathspace::PathSpace;

/// `δ` on a path space: `1/ε₀` at the zero path.
pub fn delta2(space: PathSpace) -> Functional {
    Functional::delta(space)
}
