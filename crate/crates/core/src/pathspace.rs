//! The path space `X = {a : L → L′}`.
//!
//! A path assigns a codomain index `z′ ∈ [−n/2, n/2)` to each of the `H²`
//! sites of `L`, with `a(k) = z′/H′`. Paths form the group `(Z/n)^{H²}` under
//! sitewise addition. Ranking is mixed radix with site 0 least significant and
//! digit `z′` stored as `z′ + n/2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeKind, LatticeSpec};

/// Default limit on `|X|` for operations that enumerate the space.
pub const DEFAULT_GUARD: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Pairing `Σ_k a(k)·b(k)`, `L′` with `H′²` points.
    #[serde(rename = "type1")]
    TypeI,
    /// Pairing `ε·Σ_k a(k)·b(k)`, `L′` with `H·H′²` points.
    #[serde(rename = "type2")]
    TypeII,
}

impl Variant {
    pub fn lattice_kind(self) -> LatticeKind {
        match self {
            Variant::TypeI => LatticeKind::Level2TypeI,
            Variant::TypeII => LatticeKind::Level2TypeII,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::TypeI => "type1",
            Variant::TypeII => "type2",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "type1" => Ok(Variant::TypeI),
            "type2" => Ok(Variant::TypeII),
            other => Err(Error::Invalid(format!("unknown variant {other:?}"))),
        }
    }
}

/// Normalization weight `ε₀` of a path space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eps0 {
    pub variant: Variant,
    pub value: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct PathSpace {
    domain: LatticeSpec,
    codomain: LatticeSpec,
    guard: u64,
}

impl PartialEq for PathSpace {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain
    }
}

impl Eq for PathSpace {}

impl PathSpace {
    pub fn new(variant: Variant, h: u32, hp: u32) -> Result<Self> {
        let domain = LatticeSpec::level1(h)?;
        let codomain = LatticeSpec::new(variant.lattice_kind(), h, Some(hp))?;
        Self::from_lattices(domain, codomain)
    }

    pub fn from_lattices(domain: LatticeSpec, codomain: LatticeSpec) -> Result<Self> {
        if domain.kind() != LatticeKind::Level1 {
            return Err(Error::WrongLatticeKind {
                expected: LatticeKind::Level1,
                found: domain.kind(),
            });
        }
        if codomain.kind() == LatticeKind::Level1 || codomain.h() != domain.h() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            domain,
            codomain,
            guard: DEFAULT_GUARD,
        })
    }

    pub fn with_guard(mut self, guard: u64) -> Self {
        self.guard = guard;
        self
    }

    pub fn guard(&self) -> u64 {
        self.guard
    }

    pub fn domain(&self) -> &LatticeSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &LatticeSpec {
        &self.codomain
    }

    pub fn variant(&self) -> Variant {
        match self.codomain.kind() {
            LatticeKind::Level2TypeI => Variant::TypeI,
            _ => Variant::TypeII,
        }
    }

    pub fn h(&self) -> u32 {
        self.domain.h()
    }

    pub fn hp(&self) -> u32 {
        self.codomain.resolution()
    }

    /// Number of sites, `H²`.
    pub fn sites(&self) -> usize {
        self.domain.count()
    }

    /// Number of codomain values per site, `n`. Also the kernel period:
    /// both variants' pairings equal `Σ_k z′_a(k)·z′_b(k) / n`.
    pub fn radix(&self) -> usize {
        self.codomain.count()
    }

    /// `|X| = n^{H²}`.
    pub fn path_count(&self) -> Result<u64> {
        u32::try_from(self.sites())
            .ok()
            .and_then(|k| (self.radix() as u64).checked_pow(k))
            .filter(|&c| c <= i64::MAX as u64)
            .ok_or(Error::Overflow("path count"))
    }

    /// `|X|` as a buffer length, provided it is within the enumeration guard.
    pub fn dense_len(&self) -> Result<usize> {
        match self.path_count() {
            Ok(c) if c <= self.guard => Ok(c as usize),
            Ok(c) => Err(Error::SpaceTooLarge {
                paths: c.to_string(),
                guard: self.guard,
            }),
            Err(_) => Err(Error::SpaceTooLarge {
                paths: format!("{}^{}", self.radix(), self.sites()),
                guard: self.guard,
            }),
        }
    }

    /// Per-site normalization `ω = 1/√n`: `1/H′` or `1/(√H·H′)`.
    pub fn site_weight(&self) -> f64 {
        let hp = f64::from(self.hp());
        match self.variant() {
            Variant::TypeI => 1.0 / hp,
            Variant::TypeII => 1.0 / (f64::from(self.h()).sqrt() * hp),
        }
    }

    /// `ε₀ = ω^{H²}`: `H′^{−H²}` or `H^{−H²/2}·H′^{−H²}`.
    pub fn eps0(&self) -> Eps0 {
        Eps0 {
            variant: self.variant(),
            value: 1.0 / self.delta_peak(),
        }
    }

    /// `1/ε₀`, the value of the delta functional at the zero path.
    pub fn delta_peak(&self) -> f64 {
        let k = self.sites() as i32;
        let hp = f64::from(self.hp());
        match self.variant() {
            Variant::TypeI => hp.powi(k),
            Variant::TypeII => f64::from(self.h()).powi(k / 2) * hp.powi(k),
        }
    }

    pub fn zero(&self) -> PathFunction {
        PathFunction {
            space: *self,
            digits: vec![0; self.sites()],
        }
    }

    pub fn wrap_digit(&self, z: i64) -> i64 {
        self.codomain.wrap(z)
    }

    /// Storage offset of a wrapped digit.
    pub fn offset(&self, z: i64) -> usize {
        self.codomain.slot(z)
    }

    pub fn digit_of_offset(&self, offset: usize) -> i64 {
        self.codomain.index_of_slot(offset)
    }

    /// All paths in rank order.
    pub fn paths(&self) -> Result<impl Iterator<Item = PathFunction> + '_> {
        let count = self.dense_len()? as u64;
        Ok((0..count).map(move |r| unrank(r, self).expect("rank in range")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFunction {
    space: PathSpace,
    digits: Vec<i64>,
}

impl PathFunction {
    /// Digits are wrapped into the codomain index range.
    pub fn new(space: PathSpace, digits: Vec<i64>) -> Result<Self> {
        if digits.len() != space.sites() {
            return Err(Error::WrongLength {
                expected: space.sites(),
                found: digits.len(),
            });
        }
        let digits = digits.into_iter().map(|z| space.wrap_digit(z)).collect();
        Ok(Self { space, digits })
    }

    pub fn space(&self) -> &PathSpace {
        &self.space
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// `a(k) = z′(k)/H′`.
    pub fn value(&self, site: usize) -> f64 {
        self.digits[site] as f64 / f64::from(self.space.hp())
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&z| z == 0)
    }
}

/// Direction `b` with raw integer values; `ε′·b` is the path with digits `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPath {
    space: PathSpace,
    raw: Vec<i64>,
}

impl IntegerPath {
    pub fn new(space: PathSpace, raw: Vec<i64>) -> Result<Self> {
        if raw.len() != space.sites() {
            return Err(Error::WrongLength {
                expected: space.sites(),
                found: raw.len(),
            });
        }
        Ok(Self { space, raw })
    }

    pub fn space(&self) -> &PathSpace {
        &self.space
    }

    pub fn raw(&self) -> &[i64] {
        &self.raw
    }
}

pub fn path_count(space: &PathSpace) -> Result<u64> {
    space.path_count()
}

pub fn rank(a: &PathFunction) -> Result<u64> {
    let space = a.space();
    space.path_count()?;
    let n = space.radix() as u64;
    Ok(a.digits
        .iter()
        .rev()
        .fold(0u64, |acc, &z| acc * n + space.offset(z) as u64))
}

pub fn unrank(r: u64, space: &PathSpace) -> Result<PathFunction> {
    let count = space.path_count()?;
    if r >= count {
        return Err(Error::OutOfRange { rank: r, count });
    }
    let n = space.radix() as u64;
    let mut rest = r;
    let digits = (0..space.sites())
        .map(|_| {
            let d = (rest % n) as usize;
            rest /= n;
            space.digit_of_offset(d)
        })
        .collect();
    Ok(PathFunction {
        space: *space,
        digits,
    })
}

fn same_space(a: &PathSpace, b: &PathSpace) -> Result<()> {
    if a != b {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

fn zip_digits(
    a: &PathFunction,
    b: &PathFunction,
    op: impl Fn(i64, i64) -> i64,
) -> Result<PathFunction> {
    same_space(&a.space, &b.space)?;
    let digits = a
        .digits
        .iter()
        .zip(&b.digits)
        .map(|(&x, &y)| a.space.wrap_digit(op(x, y)))
        .collect();
    Ok(PathFunction {
        space: a.space,
        digits,
    })
}

pub fn path_add(a: &PathFunction, b: &PathFunction) -> Result<PathFunction> {
    zip_digits(a, b, |x, y| x + y)
}

pub fn path_sub(a: &PathFunction, b: &PathFunction) -> Result<PathFunction> {
    zip_digits(a, b, |x, y| x - y)
}

pub fn path_neg(a: &PathFunction) -> PathFunction {
    let digits = a.digits.iter().map(|&z| a.space.wrap_digit(-z)).collect();
    PathFunction {
        space: a.space,
        digits,
    }
}

/// The element `ε′·b` of `X`.
pub fn path_scale_dir(b: &IntegerPath) -> PathFunction {
    PathFunction::new(b.space, b.raw.clone()).expect("length checked on construction")
}

/// `Σ_k z′_a(k)·z′_b(k)` reduced into `[0, n)`; the kernel phase is
/// `exp(∓2πi·residue/n)` for both variants.
pub fn pairing_residue(a: &PathFunction, b: &PathFunction) -> Result<i64> {
    same_space(&a.space, &b.space)?;
    Ok(raw_pairing_residue(&a.space, &a.digits, &b.digits))
}

/// As [`pairing_residue`], for unwrapped digit sequences.
pub fn raw_pairing_residue(space: &PathSpace, a: &[i64], b: &[i64]) -> i64 {
    let n = space.radix() as i128;
    let acc: i128 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum();
    acc.rem_euclid(n) as i64
}

/// The variant's bilinear pairing: `Σ_k a(k)b(k)` (type I) or
/// `ε·Σ_k a(k)b(k)` (type II), accumulated over integers before scaling.
pub fn pairing(a: &PathFunction, b: &PathFunction) -> Result<f64> {
    same_space(&a.space, &b.space)?;
    let acc: i128 = a
        .digits
        .iter()
        .zip(&b.digits)
        .map(|(&x, &y)| i128::from(x) * i128::from(y))
        .sum();
    Ok(acc as f64 / a.space.radix() as f64)
}

/// `table[r] = rank(unrank(r) + shift)` for every rank `r`.
pub(crate) fn shifted_ranks(space: &PathSpace, shift: &[i64]) -> Result<Vec<usize>> {
    let len = space.dense_len()?;
    let mut out = vec![0usize; len];
    fill_shifted_ranks(space, shift, &mut out);
    Ok(out)
}

pub(crate) fn fill_shifted_ranks(space: &PathSpace, shift: &[i64], out: &mut [usize]) {
    let n = space.radix();
    let k = space.sites();
    debug_assert_eq!(shift.len(), k);
    let mut strides = Vec::with_capacity(k);
    let mut s = 1usize;
    for _ in 0..k {
        strides.push(s);
        s *= n;
    }
    debug_assert_eq!(out.len(), s);
    // Offsets add modulo n, independent of the centering.
    let site_tables: Vec<Vec<usize>> = (0..k)
        .map(|site| {
            let t = shift[site].rem_euclid(n as i64) as usize;
            (0..n).map(|d| ((d + t) % n) * strides[site]).collect()
        })
        .collect();
    fill_level(&site_tables, k - 1, 0, 0, &strides, out);
}

fn fill_level(
    tables: &[Vec<usize>],
    site: usize,
    base_in: usize,
    base_out: usize,
    strides: &[usize],
    out: &mut [usize],
) {
    let table = &tables[site];
    if site == 0 {
        for (d, &t) in table.iter().enumerate() {
            out[base_in + d] = base_out + t;
        }
        return;
    }
    for (d, &t) in table.iter().enumerate() {
        fill_level(
            tables,
            site - 1,
            base_in + d * strides[site],
            base_out + t,
            strides,
            out,
        );
    }
}
