//! The chirp and Gaussian functionals, their transform constants, and
//! convergence sweeps over growing resolutions.
//!
//! Both functionals live on type-II path spaces, where the quadratic weight
//! `ε·a(k)²` equals `z′(k)²/n` for the codomain size `n = H·Hp²`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dft::{unit_phase, Direction, RootTable};
use crate::error::{Error, Result};
use crate::level1::gaussian_constant1;
use crate::level2::{transform2, transform2_at, Builtin, Functional, Method, MIXED_LIMIT};
use crate::pathspace::{PathFunction, PathSpace, Variant};
use crate::random;
use crate::report::{Deviation, VerificationReport};
use crate::C64;

fn type2(h: u32, hp: u32) -> Result<PathSpace> {
    PathSpace::new(Variant::TypeII, h, hp)
}

fn require_type2(space: &PathSpace) -> Result<()> {
    if space.variant() != Variant::TypeII {
        return Err(Error::WrongVariant(
            "the chirp and Gaussian examples need a type2 space",
        ));
    }
    Ok(())
}

fn product_builtin(space: PathSpace, b: Builtin) -> Result<Functional> {
    require_type2(&space)?;
    Ok(Functional::builtin(space, b)?
        .to_product()
        .expect("builtins have product form"))
}

/// `f(a) = exp(iπ·ε·Σ_k a(k)²)` in product form.
pub fn chirp_functional(space: PathSpace) -> Result<Functional> {
    product_builtin(space, Builtin::Chirp)
}

/// `g(a) = exp(−π·ε·Σ_k a(k)²)` in product form.
pub fn gaussian_functional(space: PathSpace) -> Result<Functional> {
    product_builtin(space, Builtin::Gaussian)
}

/// The chirp formula on unreduced digits, `exp(iπ·Σ_k z_k²/n)`.
pub fn chirp_value(space: &PathSpace, raw: &[i64]) -> C64 {
    let squares: i128 = raw.iter().map(|&z| i128::from(z) * i128::from(z)).sum();
    unit_phase(squares, 2 * space.radix() as i128)
}

/// `(−1)^{H/2}`.
pub fn c1_limit(h: u32) -> C64 {
    if (h / 2).is_multiple_of(2) {
        C64::new(1.0, 0.0)
    } else {
        C64::new(-1.0, 0.0)
    }
}

/// Per-site chirp factor `Σ_{z′} n^{−1/2}·exp(iπz′²/n)`.
pub fn c1_site(h: u32, hp: u32) -> Result<C64> {
    let space = type2(h, hp)?;
    let n = space.radix() as i64;
    let sum: C64 = (-n / 2..n / 2)
        .map(|z| unit_phase(i128::from(z) * i128::from(z), 2 * i128::from(n)))
        .sum();
    Ok(sum * space.site_weight())
}

/// `C₁ = Σ_{a∈X} ε₀·f(a)`, computed as the per-site factor to the power `H²`.
pub fn c1(h: u32, hp: u32) -> Result<C64> {
    let space = type2(h, hp)?;
    Ok(c1_site(h, hp)?.powu(space.sites() as u32))
}

/// `C₁` by summing over every path of `X`.
pub fn c1_brute(h: u32, hp: u32) -> Result<C64> {
    let space = type2(h, hp)?;
    let f = Functional::builtin(space, Builtin::Chirp)?;
    let sum: C64 = f.to_dense_values()?.iter().sum();
    Ok(sum * space.eps0().value)
}

/// Checks `(Ff)(b) = C₁·conj(f(b))` for the chirp functional.
///
/// Spaces with at most [`MIXED_LIMIT`] paths are checked for every `b`
/// against the direct transform; larger ones on `samples` seeded paths.
pub fn chirp_transform_check(
    h: u32,
    hp: u32,
    seed: u64,
    samples: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    let space = type2(h, hp)?;
    let paths = space.path_count()?;
    let exhaustive = paths <= MIXED_LIMIT;
    let mut report = VerificationReport::new(format!("example chirp H={h} Hp={hp}"));
    let constant = c1(h, hp)?;
    let f = Functional::builtin(space, Builtin::Chirp)?;

    let bs: Vec<PathFunction> = if exhaustive {
        space.paths()?.collect()
    } else {
        let mut rng = random::seeded(seed);
        std::iter::once(space.zero())
            .chain((0..samples).map(|_| random::path(&mut rng, space)))
            .collect()
    };

    let (lhs, rhs): (Vec<C64>, Vec<C64>) = if exhaustive {
        let transformed = transform2(&f, Direction::Forward, Method::Direct)?;
        bs.iter()
            .map(|b| Ok((transformed.eval(b)?, constant * f.eval(b)?.conj())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    } else {
        bs.par_iter()
            .map(|b| {
                Ok((
                    transform2_at(&f, Direction::Forward, b)?,
                    constant * f.eval(b)?.conj(),
                ))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    };
    report.check(
        "chirp-transform",
        "(F f)(b) = C1 conj(f(b))",
        Deviation::between(&lhs, &rhs),
        tol_rel,
    );
    report.check(
        "chirp-at-zero",
        "(F f)(0) = C1",
        Deviation::scalar(
            transform2_at(&f, Direction::Forward, &space.zero())?,
            constant,
        ),
        tol_rel,
    );
    report.check(
        "chirp-constant-product-vs-sum",
        "prod_k s = sum_a eps0 f(a)",
        Deviation::scalar(constant, c1_brute(h, hp)?),
        tol_rel,
    );
    report.check(
        "chirp-constant-sign",
        "C1 = (-1)^(H/2)",
        Deviation::scalar(constant, c1_limit(h)),
        tol_rel,
    );
    report.check(
        "chirp-constant-unimodular",
        "|C1| = 1",
        Deviation::scalar(C64::new(constant.norm(), 0.0), C64::new(1.0, 0.0)),
        tol_rel,
    );

    // Σ_a exp(iπ·Σ(z_a − z_b)²/n) over unreduced differences equals the b = 0 sum.
    let n = space.radix() as i64;
    let roots = RootTable::new(2 * space.radix());
    let all: Vec<PathFunction> = space.paths()?.collect();
    let shifted_sum = |b: &[i64]| -> C64 {
        all.iter()
            .map(|a| {
                let q: i64 = a
                    .digits()
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| (x - y) * (x - y))
                    .sum();
                roots.get(q.rem_euclid(2 * n))
            })
            .sum()
    };
    let base = shifted_sum(space.zero().digits());
    let shifted: Vec<C64> = bs.par_iter().map(|b| shifted_sum(b.digits())).collect();
    report.check(
        "chirp-shift-invariance",
        "sum_a exp(i pi eps sum (a-b)^2) = sum_a exp(i pi eps sum a^2)",
        Deviation::between(&shifted, &vec![base; shifted.len()]),
        tol_rel,
    );
    Ok(report)
}

fn site_shift_digit(space: &PathSpace, beta: f64) -> Result<i64> {
    let m = beta * f64::from(space.hp());
    let rounded = m.round();
    let half = (space.radix() / 2) as f64;
    if !m.is_finite() || (m - rounded).abs() > 1e-9 {
        return Err(Error::Invalid(format!(
            "beta {beta} is not a multiple of 1/Hp = 1/{}",
            space.hp()
        )));
    }
    if rounded.abs() > half {
        return Err(Error::Invalid(format!(
            "beta {beta} lies outside the window [-{}, {}]",
            half / f64::from(space.hp()),
            half / f64::from(space.hp())
        )));
    }
    Ok(rounded as i64)
}

/// `Σ_{z′} n^{−1/2}·exp(−π(z′ + i·m)²/n)` for the lattice digit `m`.
fn c2_site_digit(space: &PathSpace, m: i64) -> C64 {
    let n = space.radix() as i64;
    let nf = n as f64;
    let sum: C64 = (-n / 2..n / 2)
        .map(|z| (-PI * C64::new(z as f64, m as f64).powi(2) / nf).exp())
        .sum();
    sum * space.site_weight()
}

/// Per-site Gaussian factor `s(β) = Σ_{z′} n^{−1/2}·exp(−π·ε·(z′/Hp + iβ)²)`.
///
/// `β` must be a multiple of `1/Hp` with `|β·Hp| ≤ n/2`.
pub fn c2_site(h: u32, hp: u32, beta: f64) -> Result<C64> {
    let space = type2(h, hp)?;
    let m = site_shift_digit(&space, beta)?;
    Ok(c2_site_digit(&space, m))
}

/// `s(β) − 1`, the finite-size error of the per-site Gaussian sum.
pub fn c2_site_error(h: u32, hp: u32, beta: f64) -> Result<C64> {
    Ok(c2_site(h, hp, beta)? - 1.0)
}

/// `C₂(b) = Π_k s(b(k))`.
pub fn c2_full(b: &PathFunction) -> Result<C64> {
    let space = *b.space();
    require_type2(&space)?;
    let mut cache: HashMap<i64, C64> = HashMap::new();
    Ok(b.digits()
        .iter()
        .map(|&m| *cache.entry(m).or_insert_with(|| c2_site_digit(&space, m)))
        .product())
}

/// `C₂(b) = Σ_{a∈X} ε₀·exp(−π·ε·Σ_k (a(k) + ib(k))²)` by enumeration.
pub fn c2_brute(b: &PathFunction) -> Result<C64> {
    let space = *b.space();
    require_type2(&space)?;
    let nf = space.radix() as f64;
    let sum: C64 = space
        .paths()?
        .map(|a| {
            let s: C64 = a
                .digits()
                .iter()
                .zip(b.digits())
                .map(|(&z, &m)| C64::new(z as f64, m as f64).powi(2))
                .sum();
            (-PI * s / nf).exp()
        })
        .sum();
    Ok(sum * space.eps0().value)
}

/// The constant path with every digit equal to `β·Hp`.
pub fn constant_path(space: PathSpace, beta: f64) -> Result<PathFunction> {
    let m = site_shift_digit(&space, beta)?;
    PathFunction::new(space, vec![m; space.sites()])
}

/// Checks `(Fg)(b) = C₂(b)·g(b)`, the product form of `C₂` against
/// enumeration, and the evenness `s(β) = s(−β)` for `|β| ≤ 2`.
pub fn gaussian_transform_check(
    h: u32,
    hp: u32,
    seed: u64,
    samples: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    let space = type2(h, hp)?;
    let paths = space.path_count()?;
    let exhaustive = paths <= MIXED_LIMIT;
    let mut report = VerificationReport::new(format!("example gaussian H={h} Hp={hp}"));
    let g = Functional::builtin(space, Builtin::Gaussian)?;

    let mut rng = random::seeded(seed);
    let sampled: Vec<PathFunction> = std::iter::once(space.zero())
        .chain((0..samples).map(|_| random::path(&mut rng, space)))
        .collect();
    let bs: Vec<PathFunction> = if exhaustive {
        space.paths()?.collect()
    } else {
        sampled.clone()
    };

    let pairs: Vec<(C64, C64)> = if exhaustive {
        let transformed = transform2(&g, Direction::Forward, Method::Direct)?;
        bs.iter()
            .map(|b| Ok((transformed.eval(b)?, c2_full(b)? * g.eval(b)?)))
            .collect::<Result<_>>()?
    } else {
        bs.par_iter()
            .map(|b| {
                Ok((
                    transform2_at(&g, Direction::Forward, b)?,
                    c2_full(b)? * g.eval(b)?,
                ))
            })
            .collect::<Result<_>>()?
    };
    let (lhs, rhs): (Vec<C64>, Vec<C64>) = pairs.into_iter().unzip();
    report.check(
        "gaussian-transform",
        "(F g)(b) = C2(b) g(b)",
        Deviation::between(&lhs, &rhs),
        tol_rel,
    );

    let (prod, brute): (Vec<C64>, Vec<C64>) = sampled
        .par_iter()
        .map(|b| Ok((c2_full(b)?, c2_brute(b)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    report.check(
        "c2-product-vs-sum",
        "prod_k s(b(k)) = sum_a eps0 exp(-pi eps sum (a+ib)^2)",
        Deviation::between(&prod, &brute),
        tol_rel,
    );

    let hpf = f64::from(hp);
    let reach = (2 * hp as i64).min(space.radix() as i64 / 2);
    let (plus, minus): (Vec<C64>, Vec<C64>) = (0..=reach)
        .map(|m| {
            let beta = m as f64 / hpf;
            Ok((c2_site(h, hp, beta)?, c2_site(h, hp, -beta)?))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    report.check(
        "c2-site-even",
        "s(beta) = s(-beta)",
        Deviation::between(&plus, &minus),
        tol_rel,
    );
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Quantity {
    C1,
    C2Site,
    C2Full,
    CLevel1,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::C1 => "C1",
            Quantity::C2Site => "C2_site",
            Quantity::C2Full => "C2_full",
            Quantity::CLevel1 => "c_level1",
        }
    }

    fn limit(self, h: u32) -> C64 {
        match self {
            Quantity::C1 => c1_limit(h),
            _ => C64::new(1.0, 0.0),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C1" => Ok(Quantity::C1),
            "C2_site" => Ok(Quantity::C2Site),
            "C2_full" => Ok(Quantity::C2Full),
            "c_level1" => Ok(Quantity::CLevel1),
            other => Err(Error::Invalid(format!(
                "unknown quantity {other:?}, expected C1, C2_site, C2_full or c_level1"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "H")]
    pub h: u32,
    /// Absent for the level-1 constant.
    #[serde(rename = "Hp")]
    pub hp: Option<u32>,
    pub quantity: Quantity,
    pub b_spec: String,
    pub value: C64,
    /// `|value − limit|`.
    pub deviation: f64,
}

/// Evaluates `quantity` on every `(H, Hp)` pair, rows ordered by `(H, Hp)`.
///
/// `beta` is the constant test direction (`p` for `c_level1`); it is unused
/// for `C1`. `c_level1` ignores `hps` and emits one row per `H`.
pub fn convergence_sweep(
    quantity: Quantity,
    hs: &[u32],
    hps: &[u32],
    beta: f64,
) -> Result<Vec<SweepRow>> {
    let mut hs = hs.to_vec();
    hs.sort_unstable();
    hs.dedup();
    let mut hps = hps.to_vec();
    hps.sort_unstable();
    hps.dedup();
    let cells: Vec<(u32, Option<u32>)> = match quantity {
        Quantity::CLevel1 => hs.iter().map(|&h| (h, None)).collect(),
        _ => hs
            .iter()
            .flat_map(|&h| hps.iter().map(move |&hp| (h, Some(hp))))
            .collect(),
    };
    let b_spec = match quantity {
        Quantity::C1 => "none".to_string(),
        Quantity::CLevel1 => format!("p={beta}"),
        _ => format!("const={beta}"),
    };
    cells
        .par_iter()
        .map(|&(h, hp)| {
            let value = match (quantity, hp) {
                (Quantity::C1, Some(hp)) => c1(h, hp)?,
                (Quantity::C2Site, Some(hp)) => c2_site(h, hp, beta)?,
                (Quantity::C2Full, Some(hp)) => c2_full(&constant_path(type2(h, hp)?, beta)?)?,
                (Quantity::CLevel1, None) => {
                    let p = beta * f64::from(h);
                    if (p - p.round()).abs() > 1e-9 {
                        return Err(Error::Invalid(format!(
                            "p {beta} is not a multiple of 1/{h}"
                        )));
                    }
                    gaussian_constant1(h, p.round() as i64)?
                }
                _ => unreachable!("cells follow the quantity"),
            };
            Ok(SweepRow {
                h,
                hp,
                quantity,
                b_spec: b_spec.clone(),
                value,
                deviation: (value - quantity.limit(h)).norm(),
            })
        })
        .collect()
}

/// Measured rounding floor below which sweep deviations are not ordered.
pub const SWEEP_NOISE_FLOOR: f64 = 1e-13;

/// True when, for each quantity and `H`, deviations never grow along `Hp`
/// by more than `floor`. Level-1 rows are compared along `H`.
pub fn nonincreasing(rows: &[SweepRow], floor: f64) -> bool {
    // Keyed by quantity and fixed H; values are (varying resolution, deviation).
    type Key = (Quantity, Option<u32>);
    let mut groups: HashMap<Key, Vec<(u32, f64)>> = HashMap::new();
    for r in rows {
        match r.hp {
            Some(hp) => groups
                .entry((r.quantity, Some(r.h)))
                .or_default()
                .push((hp, r.deviation)),
            None => groups
                .entry((r.quantity, None))
                .or_default()
                .push((r.h, r.deviation)),
        }
    }
    groups.values_mut().all(|g| {
        g.sort_by_key(|&(k, _)| k);
        g.windows(2).all(|w| w[1].1 <= w[0].1 + floor)
    })
}

pub const CSV_HEADER: &str = "H,Hp,quantity,b_spec,re,im,deviation";

/// CSV with 17 significant digits per number.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let hp = r.hp.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{:.16e},{:.16e},{:.16e}\n",
            r.h, hp, r.quantity, r.b_spec, r.value.re, r.value.im, r.deviation
        ));
    }
    out
}
