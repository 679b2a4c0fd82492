use std::f64::consts::PI;

use crate::dft::unit_phase;
use crate::error::{Error, Result};
use crate::pathspace::{rank, unrank, PathFunction, PathSpace};
use crate::C64;

/// Closed-form functionals, evaluated on demand.
///
/// With `n` the codomain size, every variant's quadratic weight satisfies
/// `κ·a(k)² = z′(k)²/n`, so the formulas below are variant independent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Builtin {
    One,
    /// `1/ε₀` at the zero path, zero elsewhere.
    Delta,
    /// Pointwise real power of [`Builtin::Delta`].
    DeltaPow(f64),
    /// `exp(iπ·κ·Σ_k a(k)²)`.
    Chirp,
    /// `exp(−π·κ·Σ_k a(k)²)`.
    Gaussian,
    /// `exp(−π·κ·Σ_k (a(k) + iβ)²)`.
    ShiftedGaussian(f64),
}

impl Builtin {
    pub fn name(&self) -> &'static str {
        match self {
            Builtin::One => "one",
            Builtin::Delta => "delta",
            Builtin::DeltaPow(_) => "delta_pow",
            Builtin::Chirp => "chirp",
            Builtin::Gaussian => "gaussian",
            Builtin::ShiftedGaussian(_) => "shifted_gaussian",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Builtin::DeltaPow(l) if !(l > 0.0 && l.is_finite()) => Err(Error::Invalid(format!(
                "delta exponent must be positive, got {l}"
            ))),
            Builtin::ShiftedGaussian(b) if !b.is_finite() => {
                Err(Error::Invalid("gaussian shift must be finite".into()))
            }
            _ => Ok(()),
        }
    }

    /// Direct evaluation from the whole-path formula.
    fn eval(&self, space: &PathSpace, digits: &[i64]) -> C64 {
        let n = space.radix() as f64;
        let zero = digits.iter().all(|&z| z == 0);
        let square_sum = || -> i128 { digits.iter().map(|&z| i128::from(z) * i128::from(z)).sum() };
        match *self {
            Builtin::One => C64::new(1.0, 0.0),
            Builtin::Delta => point_mass(zero, space.delta_peak()),
            Builtin::DeltaPow(l) => point_mass(zero, space.delta_peak().powf(l)),
            Builtin::Chirp => unit_phase(square_sum(), 2 * space.radix() as i128),
            Builtin::Gaussian => C64::new((-PI * square_sum() as f64 / n).exp(), 0.0),
            Builtin::ShiftedGaussian(beta) => {
                let m = beta * f64::from(space.hp());
                let s: C64 = digits.iter().map(|&z| C64::new(z as f64, m).powi(2)).sum();
                (-PI * s / n).exp()
            }
        }
    }

    /// The common per-site factor `u` with `f(a) = Π_k u(a(k))`.
    fn site_vector(&self, space: &PathSpace) -> Vec<C64> {
        let n = space.radix();
        let nf = n as f64;
        let digits = (0..n).map(|o| space.digit_of_offset(o));
        match *self {
            Builtin::One => vec![C64::new(1.0, 0.0); n],
            Builtin::Delta => digits.map(|z| point_mass(z == 0, nf.sqrt())).collect(),
            Builtin::DeltaPow(l) => digits
                .map(|z| point_mass(z == 0, nf.powf(l / 2.0)))
                .collect(),
            Builtin::Chirp => digits
                .map(|z| unit_phase(i128::from(z) * i128::from(z), 2 * n as i128))
                .collect(),
            Builtin::Gaussian => digits
                .map(|z| C64::new((-PI * (z * z) as f64 / nf).exp(), 0.0))
                .collect(),
            Builtin::ShiftedGaussian(beta) => {
                let m = beta * f64::from(space.hp());
                digits
                    .map(|z| (-PI * C64::new(z as f64, m).powi(2) / nf).exp())
                    .collect()
            }
        }
    }
}

fn point_mass(hit: bool, value: f64) -> C64 {
    if hit {
        C64::new(value, 0.0)
    } else {
        C64::new(0.0, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Repr {
    /// One value per path, indexed by rank.
    Dense(Vec<C64>),
    /// `f(a) = Π_k sites[k][offset(a(k))]`.
    Product(Vec<Vec<C64>>),
    Builtin(Builtin),
}

/// A complex functional on a path space.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    space: PathSpace,
    repr: Repr,
}

impl Functional {
    pub fn dense(space: PathSpace, values: Vec<C64>) -> Result<Self> {
        let len = space.dense_len()?;
        if values.len() != len {
            return Err(Error::WrongLength {
                expected: len,
                found: values.len(),
            });
        }
        Ok(Self {
            space,
            repr: Repr::Dense(values),
        })
    }

    pub fn product(space: PathSpace, sites: Vec<Vec<C64>>) -> Result<Self> {
        if sites.len() != space.sites() {
            return Err(Error::WrongLength {
                expected: space.sites(),
                found: sites.len(),
            });
        }
        if let Some(bad) = sites.iter().find(|s| s.len() != space.radix()) {
            return Err(Error::WrongLength {
                expected: space.radix(),
                found: bad.len(),
            });
        }
        Ok(Self {
            space,
            repr: Repr::Product(sites),
        })
    }

    pub fn builtin(space: PathSpace, builtin: Builtin) -> Result<Self> {
        builtin.validate()?;
        Ok(Self {
            space,
            repr: Repr::Builtin(builtin),
        })
    }

    pub fn one(space: PathSpace) -> Self {
        Self::builtin(space, Builtin::One).expect("valid builtin")
    }

    pub fn delta(space: PathSpace) -> Self {
        Self::builtin(space, Builtin::Delta).expect("valid builtin")
    }

    pub fn space(&self) -> &PathSpace {
        &self.space
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn eval(&self, a: &PathFunction) -> Result<C64> {
        if a.space() != &self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(match &self.repr {
            Repr::Dense(values) => values[rank(a)? as usize],
            Repr::Product(sites) => sites
                .iter()
                .zip(a.digits())
                .map(|(site, &z)| site[self.space.offset(z)])
                .product(),
            Repr::Builtin(b) => b.eval(&self.space, a.digits()),
        })
    }

    /// Values in rank order. Builtins are evaluated path by path.
    pub fn to_dense_values(&self) -> Result<Vec<C64>> {
        let len = self.space.dense_len()?;
        match &self.repr {
            Repr::Dense(values) => Ok(values.clone()),
            Repr::Product(sites) => Ok(expand_product(sites)),
            Repr::Builtin(b) => Ok((0..len as u64)
                .map(|r| {
                    let a = unrank(r, &self.space).expect("rank in range");
                    b.eval(&self.space, a.digits())
                })
                .collect()),
        }
    }

    pub fn to_dense(&self) -> Result<Self> {
        Ok(Self {
            space: self.space,
            repr: Repr::Dense(self.to_dense_values()?),
        })
    }

    /// Per-site factors, when the functional has product form.
    pub fn product_sites(&self) -> Option<Vec<Vec<C64>>> {
        match &self.repr {
            Repr::Dense(_) => None,
            Repr::Product(sites) => Some(sites.clone()),
            Repr::Builtin(b) => Some(vec![b.site_vector(&self.space); self.space.sites()]),
        }
    }

    pub fn to_product(&self) -> Option<Self> {
        self.product_sites().map(|sites| Self {
            space: self.space,
            repr: Repr::Product(sites),
        })
    }

    /// Pointwise product; stays in product form when both factors have it.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if let (Some(a), Some(b)) = (self.product_sites(), other.product_sites()) {
            let sites = a
                .iter()
                .zip(&b)
                .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u * v).collect())
                .collect();
            return Self::product(self.space, sites);
        }
        let a = self.to_dense_values()?;
        let b = other.to_dense_values()?;
        Self::dense(self.space, a.iter().zip(&b).map(|(x, y)| x * y).collect())
    }

    pub fn scale(&self, c: C64) -> Result<Self> {
        match &self.repr {
            Repr::Dense(v) => Self::dense(self.space, v.iter().map(|x| x * c).collect()),
            _ => {
                let mut sites = self.product_sites().expect("non-dense has product form");
                if let Some(first) = sites.first_mut() {
                    first.iter_mut().for_each(|x| *x *= c);
                }
                Self::product(self.space, sites)
            }
        }
    }
}

pub(crate) fn expand_product(sites: &[Vec<C64>]) -> Vec<C64> {
    let mut values = vec![C64::new(1.0, 0.0)];
    for site in sites.iter().rev() {
        values = values
            .iter()
            .flat_map(|&high| site.iter().map(move |&u| high * u))
            .collect();
    }
    values
}
