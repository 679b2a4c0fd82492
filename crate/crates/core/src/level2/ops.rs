use rayon::prelude::*;

use super::functional::Functional;
use crate::dft::{CenteredDft, Direction, RootTable, Strategy};
use crate::error::{Error, Result};
use crate::pathspace::{
    fill_shifted_ranks, path_scale_dir, raw_pairing_residue, shifted_ranks, unrank, IntegerPath,
    PathFunction, PathSpace, Variant,
};
use crate::C64;

/// Largest path space accepted by [`mixed_transform2`].
pub const MIXED_LIMIT: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Per-site factorization: product functionals stay in product form,
    /// dense ones are transformed one site axis at a time.
    #[default]
    Auto,
    /// The defining sum over all of `X`, evaluated for every output path.
    Direct,
}

/// `Forward` for `exp(−2πi·⟨a,b⟩)`, `Inverse` for `exp(+2πi·⟨a,b⟩)`.
pub fn transform2(f: &Functional, dir: Direction, method: Method) -> Result<Functional> {
    let space = *f.space();
    match method {
        Method::Direct => Functional::dense(space, direct_transform(f, dir)?),
        Method::Auto => match f.product_sites() {
            Some(sites) => {
                let dft = CenteredDft::new(space.radix());
                let w = space.site_weight();
                let sites = sites
                    .iter()
                    .map(|s| dft.transform(s, dir, w, Strategy::Auto))
                    .collect();
                Functional::product(space, sites)
            }
            None => {
                let mut values = f.to_dense_values()?;
                factorized_dense_transform(&space, &mut values, dir);
                Functional::dense(space, values)
            }
        },
    }
}

pub fn forward2(f: &Functional) -> Result<Functional> {
    transform2(f, Direction::Forward, Method::Auto)
}

pub fn inverse2(f: &Functional) -> Result<Functional> {
    transform2(f, Direction::Inverse, Method::Auto)
}

/// Offsets of every path, `|X| × H²`, row per rank.
fn offset_table(space: &PathSpace, len: usize) -> Vec<u32> {
    let n = space.radix();
    let k = space.sites();
    let mut table = vec![0u32; len * k];
    for (r, row) in table.chunks_mut(k).enumerate() {
        let mut rest = r;
        for slot in row.iter_mut() {
            *slot = (rest % n) as u32;
            rest /= n;
        }
    }
    table
}

fn direct_transform(f: &Functional, dir: Direction) -> Result<Vec<C64>> {
    let space = *f.space();
    let len = space.dense_len()?;
    let values = f.to_dense_values()?;
    let offsets = offset_table(&space, len);
    let k = space.sites();
    let n = space.radix() as i64;
    let roots = RootTable::new(space.radix());
    let eps0 = space.eps0().value;
    let support: Vec<(usize, C64)> = values
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, v)| *v != C64::new(0.0, 0.0))
        .collect();
    let half = n / 2;
    let out = (0..len)
        .into_par_iter()
        .map(|b| {
            let b_offsets = &offsets[b * k..(b + 1) * k];
            // rows[site][offset] = sign·z_b(site)·z reduced mod n
            let rows: Vec<Vec<i64>> = b_offsets
                .iter()
                .map(|&ob| {
                    let zb = i64::from(ob) - half;
                    (0..n)
                        .map(|o| (dir.sign() * zb * (o - half)).rem_euclid(n))
                        .collect()
                })
                .collect();
            let mut acc = C64::new(0.0, 0.0);
            for &(a, fa) in &support {
                let m: i64 = offsets[a * k..(a + 1) * k]
                    .iter()
                    .zip(&rows)
                    .map(|(&oa, row)| row[oa as usize])
                    .sum();
                acc += roots.get(m) * fa;
            }
            acc * eps0
        })
        .collect();
    Ok(out)
}

/// One value of the transform by its defining sum, `(Ff)(b)` or `(F̄f)(b)`.
pub fn transform2_at(f: &Functional, dir: Direction, b: &PathFunction) -> Result<C64> {
    let space = *f.space();
    if b.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    let n = space.radix() as i128;
    let mut acc = C64::new(0.0, 0.0);
    for a in space.paths()? {
        let fa = f.eval(&a)?;
        if fa == C64::new(0.0, 0.0) {
            continue;
        }
        let m = raw_pairing_residue(&space, a.digits(), b.digits());
        acc += crate::dft::unit_phase(i128::from(dir.sign()) * i128::from(m), n) * fa;
    }
    Ok(acc * space.eps0().value)
}

/// Tensor-product transform: a unitary centered DFT along every site axis.
fn factorized_dense_transform(space: &PathSpace, values: &mut [C64], dir: Direction) {
    let n = space.radix();
    let dft = CenteredDft::new(n);
    let w = space.site_weight();
    let mut line = vec![C64::new(0.0, 0.0); n];
    let mut out = vec![C64::new(0.0, 0.0); n];
    let mut stride = 1;
    for _ in 0..space.sites() {
        let block = stride * n;
        for start in (0..values.len()).step_by(block) {
            for inner in 0..stride {
                let base = start + inner;
                for (j, x) in line.iter_mut().enumerate() {
                    *x = values[base + j * stride];
                }
                dft.transform_into(&line, &mut out, dir, w, Strategy::Auto);
                for (j, &y) in out.iter().enumerate() {
                    values[base + j * stride] = y;
                }
            }
        }
        stride = block;
    }
}

/// `(f∗g)(a) = Σ_{a′} ε₀·f(a − a′)·g(a′)` over the group `(X, +)`.
pub fn convolve2(f: &Functional, g: &Functional) -> Result<Functional> {
    let space = *f.space();
    if g.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    let fv = f.to_dense_values()?;
    let gv = g.to_dense_values()?;
    let n = space.radix();
    let k = space.sites();
    let mut out = vec![C64::new(0.0, 0.0); fv.len()];
    let mut neg = vec![0i64; k];
    for (a2, &ga) in gv.iter().enumerate() {
        if ga == C64::new(0.0, 0.0) {
            continue;
        }
        let mut rest = a2;
        for slot in neg.iter_mut() {
            // −(offset − n/2) ≡ n/2 − offset
            *slot = (n / 2) as i64 - (rest % n) as i64;
            rest /= n;
        }
        accumulate_shifted(&space, &neg, ga, &fv, &mut out);
    }
    let eps0 = space.eps0().value;
    out.iter_mut().for_each(|v| *v *= eps0);
    Functional::dense(space, out)
}

/// `out[a] += c·src[a + shift]` for every path `a`.
fn accumulate_shifted(space: &PathSpace, shift: &[i64], c: C64, src: &[C64], out: &mut [C64]) {
    let n = space.radix();
    let k = space.sites();
    let t0 = shift[0].rem_euclid(n as i64) as usize;
    let mut strides = vec![1usize; k];
    for i in 1..k {
        strides[i] = strides[i - 1] * n;
    }
    let tables: Vec<Vec<usize>> = (1..k)
        .map(|site| {
            let t = shift[site].rem_euclid(n as i64) as usize;
            (0..n).map(|d| ((d + t) % n) * strides[site]).collect()
        })
        .collect();
    let mut visit = |base_in: usize, base_out: usize| {
        let dst = &mut out[base_in..base_in + n];
        let row = &src[base_out..base_out + n];
        let (head, tail) = dst.split_at_mut(n - t0);
        for (d, s) in head.iter_mut().zip(&row[t0..]) {
            *d += c * s;
        }
        for (d, s) in tail.iter_mut().zip(&row[..t0]) {
            *d += c * s;
        }
    };
    walk_blocks(&tables, &strides, k - 1, 0, 0, &mut visit);
}

fn walk_blocks(
    tables: &[Vec<usize>],
    strides: &[usize],
    site: usize,
    base_in: usize,
    base_out: usize,
    visit: &mut impl FnMut(usize, usize),
) {
    if site == 0 {
        visit(base_in, base_out);
        return;
    }
    for (d, &t) in tables[site - 1].iter().enumerate() {
        walk_blocks(
            tables,
            strides,
            site - 1,
            base_in + d * strides[site],
            base_out + t,
            visit,
        );
    }
}

/// `(f, g) = Σ_b ε₀·conj(f(b))·g(b)`; factorized when both have product form.
pub fn inner2(f: &Functional, g: &Functional) -> Result<C64> {
    let space = *f.space();
    if g.space() != &space {
        return Err(Error::SpaceMismatch);
    }
    if let (Some(fs), Some(gs)) = (f.product_sites(), g.product_sites()) {
        let w = space.site_weight();
        return Ok(fs
            .iter()
            .zip(&gs)
            .map(|(u, v)| u.iter().zip(v).map(|(x, y)| x.conj() * y).sum::<C64>() * w)
            .product());
    }
    let fv = f.to_dense_values()?;
    let gv = g.to_dense_values()?;
    let sum: C64 = fv.iter().zip(&gv).map(|(x, y)| x.conj() * y).sum();
    Ok(sum * space.eps0().value)
}

fn check_direction(f: &Functional, b: &IntegerPath) -> Result<()> {
    if b.space() != f.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// `(D₊f)(a) = (f(a + ε′b) − f(a))/ε′`.
pub fn diff_plus(f: &Functional, b: &IntegerPath) -> Result<Functional> {
    check_direction(f, b)?;
    let space = *f.space();
    let values = f.to_dense_values()?;
    let ahead = shifted_ranks(&space, b.raw())?;
    let inv_step = f64::from(space.hp());
    let out = values
        .iter()
        .zip(&ahead)
        .map(|(&fa, &r)| (values[r] - fa) * inv_step)
        .collect();
    Functional::dense(space, out)
}

/// `(D₋f)(a) = (f(a) − f(a − ε′b))/ε′`.
pub fn diff_minus(f: &Functional, b: &IntegerPath) -> Result<Functional> {
    check_direction(f, b)?;
    let space = *f.space();
    let values = f.to_dense_values()?;
    let back: Vec<i64> = b.raw().iter().map(|&z| -z).collect();
    let behind = shifted_ranks(&space, &back)?;
    let inv_step = f64::from(space.hp());
    let out = values
        .iter()
        .zip(&behind)
        .map(|(&fa, &r)| (fa - values[r]) * inv_step)
        .collect();
    Functional::dense(space, out)
}

/// Which of the two multipliers to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplier {
    /// `λ_b(a) = (exp(2πi·ε′ab) − 1)/ε′`
    Lambda,
    /// `λ̄_b(a) = (exp(−2πi·ε′ab) − 1)/ε′`
    LambdaBar,
}

/// `ε′ab` is the variant's pairing of `a` with the path `ε′b`.
pub fn lambda_factor(a: &PathFunction, b: &IntegerPath, which: Multiplier) -> Result<C64> {
    if a.space() != b.space() {
        return Err(Error::SpaceMismatch);
    }
    let space = a.space();
    let residue = raw_pairing_residue(space, a.digits(), b.raw());
    Ok(lambda_from_residue(space, residue, which))
}

fn lambda_from_residue(space: &PathSpace, residue: i64, which: Multiplier) -> C64 {
    let sign = match which {
        Multiplier::Lambda => 1,
        Multiplier::LambdaBar => -1,
    };
    let phase = crate::dft::unit_phase(sign * i128::from(residue), space.radix() as i128);
    (phase - 1.0) * f64::from(space.hp())
}

/// The multiplier as a dense functional `a ↦ λ_b(a)`.
pub fn lambda_functional(
    space: &PathSpace,
    b: &IntegerPath,
    which: Multiplier,
) -> Result<Functional> {
    if b.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let values = space
        .paths()?
        .map(|a| {
            lambda_from_residue(
                space,
                raw_pairing_residue(space, a.digits(), b.raw()),
                which,
            )
        })
        .collect();
    Functional::dense(*space, values)
}

/// `c ↦ f(−c)`.
pub fn reflect2(f: &Functional) -> Result<Functional> {
    let space = *f.space();
    let values = space
        .paths()?
        .map(|a| f.eval(&crate::pathspace::path_neg(&a)))
        .collect::<Result<Vec<_>>>()?;
    Functional::dense(space, values)
}

/// Shifts by the path `ε′b`: `a ↦ f(a + ε′b)`.
pub fn translate2(f: &Functional, b: &IntegerPath) -> Result<Functional> {
    check_direction(f, b)?;
    let space = *f.space();
    let values = f.to_dense_values()?;
    let step = path_scale_dir(b);
    let mut ranks = vec![0usize; values.len()];
    fill_shifted_ranks(&space, step.digits(), &mut ranks);
    Functional::dense(space, ranks.iter().map(|&r| values[r]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedPair {
    pub lhs: C64,
    pub rhs: C64,
}

/// Both sides of the two-argument identity on a type-II space:
///
/// `F_a(Σ_b ε₀·f(a−b, b)·g(b))(d)` and `{F_b(F_c f(c, b)(d)) ∗ F_b g(b)}(d)`,
///
/// evaluated at each requested `d`. The kernel is given by ranks `(c, b)`.
pub fn mixed_transform2(
    g: &Functional,
    kernel: &(dyn Fn(usize, usize) -> C64 + Sync),
    at: &[PathFunction],
) -> Result<Vec<MixedPair>> {
    let space = *g.space();
    if space.variant() != Variant::TypeII {
        return Err(Error::WrongVariant("type2"));
    }
    let count = space.path_count().unwrap_or(u64::MAX);
    if count > MIXED_LIMIT {
        return Err(Error::SpaceTooLarge {
            paths: count.to_string(),
            guard: MIXED_LIMIT,
        });
    }
    if at.iter().any(|d| d.space() != &space) {
        return Err(Error::SpaceMismatch);
    }
    let len = count as usize;
    let eps0 = space.eps0().value;
    let gv = g.to_dense_values()?;

    // lhs: h(a) = Σ_b ε₀ f(a − b, b) g(b), then F_a.
    let mut h = vec![C64::new(0.0, 0.0); len];
    let mut ranks = vec![0usize; len];
    for (b, &gb) in gv.iter().enumerate() {
        if gb == C64::new(0.0, 0.0) {
            continue;
        }
        let neg: Vec<i64> = unrank(b as u64, &space)?
            .digits()
            .iter()
            .map(|&z| -z)
            .collect();
        fill_shifted_ranks(&space, &neg, &mut ranks);
        for (a, &c) in ranks.iter().enumerate() {
            h[a] += kernel(c, b) * gb;
        }
    }
    h.iter_mut().for_each(|v| *v *= eps0);
    let lhs = forward2(&Functional::dense(space, h)?)?;

    let g_hat = forward2(g)?.to_dense_values()?;
    let offsets = offset_table(&space, len);
    let k = space.sites();
    let roots = RootTable::new(space.radix());
    let half = space.radix() as i64 / 2;
    at.iter()
        .map(|d| {
            // phase[c] = exp(−2πi⟨c, d⟩)
            let phase: Vec<C64> = offsets
                .chunks(k)
                .map(|row| {
                    let m: i64 = row
                        .iter()
                        .zip(d.digits())
                        .map(|(&o, &zd)| -(i64::from(o) - half) * zd)
                        .sum();
                    roots.get(m)
                })
                .collect();
            // y(b) = (F_c f(c, b))(d)
            let inner: Vec<C64> = (0..len)
                .into_par_iter()
                .map(|b| {
                    phase
                        .iter()
                        .enumerate()
                        .map(|(c, &p)| p * kernel(c, b))
                        .sum::<C64>()
                        * eps0
                })
                .collect();
            let outer = forward2(&Functional::dense(space, inner)?)?.to_dense_values()?;
            // {outer ∗ ĝ}(d) = Σ_q ε₀ outer(d − q) ĝ(q)
            let mut acc = C64::new(0.0, 0.0);
            for (q, &gq) in g_hat.iter().enumerate() {
                let qd = unrank(q as u64, &space)?;
                let diff = crate::pathspace::path_sub(d, &qd)?;
                acc += outer[crate::pathspace::rank(&diff)? as usize] * gq;
            }
            Ok(MixedPair {
                lhs: lhs.eval(d)?,
                rhs: acc * eps0,
            })
        })
        .collect()
}
