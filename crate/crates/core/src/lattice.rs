//! Centered lattices and complex functions on them.
//!
//! A lattice is stored by integer index `z ∈ [−count/2, count/2)`; the
//! coordinate of index `z` is `step · z`, kept as an exact rational until it
//! is needed as a float. Every lattice is treated as the cyclic group
//! `Z/count`, so out-of-range indices are folded back by [`wrap`].

use std::fmt;
use std::ops::Range;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

const MAX_COUNT: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    /// `L`: `H²` points, spacing `1/H`.
    Level1,
    /// `L′` of the first functional variant: `H′²` points, spacing `1/H′`.
    Level2TypeI,
    /// `L′` of the second functional variant: `H·H′²` points, spacing `1/H′`.
    Level2TypeII,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LatticeKind::Level1 => "level1",
            LatticeKind::Level2TypeI => "type1",
            LatticeKind::Level2TypeII => "type2",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    kind: LatticeKind,
    h: u32,
    hp: Option<u32>,
    count: usize,
}

fn check_even(name: &'static str, value: u32) -> Result<()> {
    if value < 2 || !value.is_multiple_of(2) {
        return Err(Error::OddParameter {
            name,
            value: i64::from(value),
        });
    }
    Ok(())
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, h: u32, hp: Option<u32>) -> Result<Self> {
        check_even("H", h)?;
        let count = match (kind, hp) {
            (LatticeKind::Level1, None) => u64::from(h) * u64::from(h),
            (LatticeKind::Level1, Some(_)) => return Err(Error::UnexpectedParameter("Hp")),
            (_, None) => return Err(Error::MissingParameter("Hp")),
            (LatticeKind::Level2TypeI, Some(hp)) => {
                check_even("Hp", hp)?;
                u64::from(hp) * u64::from(hp)
            }
            (LatticeKind::Level2TypeII, Some(hp)) => {
                check_even("Hp", hp)?;
                u64::from(h)
                    .checked_mul(u64::from(hp) * u64::from(hp))
                    .ok_or(Error::Overflow("lattice point count"))?
            }
        };
        if count > MAX_COUNT {
            return Err(Error::Overflow("lattice point count"));
        }
        Ok(Self {
            kind,
            h,
            hp,
            count: count as usize,
        })
    }

    pub fn level1(h: u32) -> Result<Self> {
        Self::new(LatticeKind::Level1, h, None)
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn hp(&self) -> Option<u32> {
        self.hp
    }

    /// Number of lattice points `N`.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Reciprocal of the spacing: `H` for level one, `H′` otherwise.
    pub fn resolution(&self) -> u32 {
        match self.kind {
            LatticeKind::Level1 => self.h,
            _ => self.hp.expect("level-2 lattices always carry Hp"),
        }
    }

    pub fn step(&self) -> Rational64 {
        Rational64::new(1, i64::from(self.resolution()))
    }

    pub fn halfwidth(&self) -> Rational64 {
        self.step() * (self.count as i64 / 2)
    }

    /// Valid indices in ascending order.
    pub fn indices(&self) -> Range<i64> {
        let half = self.count as i64 / 2;
        -half..half
    }

    pub fn min_index(&self) -> i64 {
        -(self.count as i64 / 2)
    }

    /// Storage slot of a (wrapped) index.
    pub fn slot(&self, z: i64) -> usize {
        (self.wrap(z) - self.min_index()) as usize
    }

    pub fn index_of_slot(&self, slot: usize) -> i64 {
        slot as i64 + self.min_index()
    }

    pub fn point(&self, z: i64) -> Rational64 {
        Rational64::new(z, i64::from(self.resolution()))
    }

    pub fn point_f64(&self, z: i64) -> f64 {
        z as f64 / f64::from(self.resolution())
    }

    /// Reduces `z` into `[−count/2, count/2)` modulo `count`.
    pub fn wrap(&self, z: i64) -> i64 {
        let n = self.count as i64;
        (z - self.min_index()).rem_euclid(n) + self.min_index()
    }
}

pub fn make_lattice(kind: LatticeKind, h: u32, hp: Option<u32>) -> Result<LatticeSpec> {
    LatticeSpec::new(kind, h, hp)
}

pub fn wrap(lattice: &LatticeSpec, z: i64) -> i64 {
    lattice.wrap(z)
}

/// Complex function on a lattice, slot `i` holding the value at `z = i − count/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    lattice: LatticeSpec,
    values: Vec<C64>,
}

impl GridFunction {
    pub fn new(lattice: LatticeSpec, values: Vec<C64>) -> Result<Self> {
        if values.len() != lattice.count() {
            return Err(Error::WrongLength {
                expected: lattice.count(),
                found: values.len(),
            });
        }
        if values
            .iter()
            .any(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::Invalid("grid function values must be finite".into()));
        }
        Ok(Self { lattice, values })
    }

    /// Builds a function by evaluating `f` at every index.
    pub fn from_fn(lattice: LatticeSpec, f: impl Fn(i64) -> C64) -> Self {
        let values = lattice.indices().map(f).collect();
        Self { lattice, values }
    }

    pub fn constant(lattice: LatticeSpec, value: C64) -> Self {
        Self {
            lattice,
            values: vec![value; lattice.count()],
        }
    }

    pub(crate) fn from_parts(lattice: LatticeSpec, values: Vec<C64>) -> Self {
        debug_assert_eq!(values.len(), lattice.count());
        Self { lattice, values }
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    /// Value at index `z`, periodically extended.
    pub fn at(&self, z: i64) -> C64 {
        self.values[self.lattice.slot(z)]
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self::from_parts(self.lattice, self.values.iter().map(|&v| f(v)).collect())
    }

    /// `x ↦ φ(−x)` on the wrapped lattice.
    pub fn reflect(&self) -> Self {
        Self::from_fn(self.lattice, |z| self.at(-z))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self::from_parts(self.lattice, values))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Periodic extension: the value of `phi` at an arbitrary lattice index.
pub fn extend_periodic(phi: &GridFunction, z: i64) -> C64 {
    phi.at(z)
}
