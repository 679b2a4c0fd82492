//! Seeded identity suites for the functional transform.

use std::f64::consts::PI;

use super::functional::{Builtin, Functional};
use super::ops::{
    convolve2, diff_minus, diff_plus, forward2, inner2, inverse2, lambda_functional,
    mixed_transform2, reflect2, transform2, Method, Multiplier,
};
use crate::dft::Direction;
use crate::error::{Error, Result};
use crate::pathspace::{PathSpace, Variant};
use crate::random;
use crate::report::{Deviation, IdentityRecord, VerificationReport};
use crate::C64;

fn values(f: &Functional) -> Result<Vec<C64>> {
    f.to_dense_values()
}

fn dev(a: &Functional, b: &Functional) -> Result<Deviation> {
    Ok(Deviation::between(&values(a)?, &values(b)?))
}

fn neg(f: &Functional) -> Result<Functional> {
    f.scale(C64::new(-1.0, 0.0))
}

fn label(space: &PathSpace) -> String {
    format!("{} H={} Hp={}", space.variant(), space.h(), space.hp())
}

/// Delta, unitarity, inversion, convolution and product identities on
/// `trials` seeded pairs of dense functionals.
pub fn transform_identity_suite(
    space: PathSpace,
    seed: u64,
    trials: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    space.dense_len()?;
    let mut rng = random::seeded(seed);
    let mut report = VerificationReport::new(format!(
        "level2 transform identities {} seed={seed} trials={trials}",
        label(&space)
    ));
    let one = Functional::one(space).to_dense()?;
    let delta = Functional::delta(space).to_dense()?;
    let d = dev(&forward2(&one)?, &delta)?.max(dev(&inverse2(&one)?, &delta)?);
    report.check("delta", "delta = F1 = Fbar1", d, tol_rel);

    let mut unitary = Deviation::default();
    let mut fourth = Deviation::default();
    let mut inversion = Deviation::default();
    let mut delta_unit = Deviation::default();
    let mut commute = Deviation::default();
    let mut conv = Deviation::default();
    let mut conv_bar = Deviation::default();
    let mut prod = Deviation::default();
    let mut prod_bar = Deviation::default();

    for _ in 0..trials {
        let f = random::dense_functional(&mut rng, space)?;
        let g = random::dense_functional(&mut rng, space)?;
        let ff = forward2(&f)?;
        let fg = forward2(&g)?;
        let bf = inverse2(&f)?;
        let bg = inverse2(&g)?;

        unitary = unitary.max(Deviation::scalar(inner2(&ff, &fg)?, inner2(&f, &g)?));

        let f2 = forward2(&ff)?;
        let f4 = forward2(&forward2(&f2)?)?;
        fourth = fourth.max(dev(&f4, &f)?).max(dev(&f2, &reflect2(&f)?)?);

        inversion = inversion
            .max(dev(&inverse2(&ff)?, &f)?)
            .max(dev(&forward2(&bf)?, &f)?);

        delta_unit = delta_unit
            .max(dev(&convolve2(&f, &delta)?, &f)?)
            .max(dev(&convolve2(&delta, &f)?, &f)?);

        let fg_conv = convolve2(&f, &g)?;
        commute = commute.max(dev(&fg_conv, &convolve2(&g, &f)?)?);
        conv = conv.max(dev(&forward2(&fg_conv)?, &ff.mul(&fg)?)?);
        conv_bar = conv_bar.max(dev(&inverse2(&fg_conv)?, &bf.mul(&bg)?)?);

        let fg_prod = f.mul(&g)?;
        prod = prod.max(dev(&forward2(&fg_prod)?, &convolve2(&ff, &fg)?)?);
        prod_bar = prod_bar.max(dev(&inverse2(&fg_prod)?, &convolve2(&bf, &bg)?)?);
    }

    report.check("unitary", "(Ff, Fg) = (f, g)", unitary, tol_rel);
    report.check(
        "fourth-power",
        "F^4 = 1, (F^2 f)(c) = f(-c)",
        fourth,
        tol_rel,
    );
    report.check("inversion", "Fbar F = F Fbar = 1", inversion, tol_rel);
    report.check(
        "delta-unit",
        "f * delta = delta * f = f",
        delta_unit,
        tol_rel,
    );
    report.check("commutative", "f * g = g * f", commute, tol_rel);
    report.check("convolution", "F(f * g) = (Ff)(Fg)", conv, tol_rel);
    report.check(
        "convolution-bar",
        "Fbar(f * g) = (Fbar f)(Fbar g)",
        conv_bar,
        tol_rel,
    );
    report.check("product", "F(fg) = (Ff) * (Fg)", prod, tol_rel);
    report.check(
        "product-bar",
        "Fbar(fg) = (Fbar f) * (Fbar g)",
        prod_bar,
        tol_rel,
    );
    Ok(report)
}

/// `F(δˡ)` is the constant `(1/ε₀)^{l−1}`; for type I that is `H′^{(l−1)H²}`.
pub fn delta_power_check(
    space: PathSpace,
    exponents: &[f64],
    tol_rel: f64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("delta powers {}", label(&space)));
    for &l in exponents {
        let f = Functional::builtin(space, Builtin::DeltaPow(l))?;
        let got = values(&transform2(&f, Direction::Forward, Method::Direct)?)?;
        let expected = vec![C64::new(space.delta_peak().powf(l - 1.0), 0.0); got.len()];
        report.check(
            &format!("delta-power l={l}"),
            "F delta^l = (1/eps0)^(l-1)",
            Deviation::between(&got, &expected),
            tol_rel,
        );
    }
    Ok(report)
}

/// Difference-operator identities and the adjoint relation, on `pairs`
/// seeded `(f, g, b)` triples.
pub fn difference_suite(
    space: PathSpace,
    seed: u64,
    pairs: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    space.dense_len()?;
    let mut rng = random::seeded(seed);
    let mut report = VerificationReport::new(format!(
        "difference operators {} seed={seed} pairs={pairs}",
        label(&space)
    ));
    let names = [
        ("diff-plus", "F(D+ f) = lambda_b Ff"),
        ("diff-minus", "F(D- f) = -lambdabar_b Ff"),
        ("lambda", "F(lambda_b f) = -D-(Ff)"),
        ("lambda-bar", "F(lambdabar_b f) = D+(Ff)"),
        ("inverse-diff-plus", "D+(Fbar f) = Fbar(lambda_b f)"),
        ("inverse-diff-minus", "D-(Fbar f) = -Fbar(lambdabar_b f)"),
        (
            "lambda-polar",
            "lambda_b(a) = 2 pi i sin(pi e'ab)/(pi e') exp(pi i e'ab)",
        ),
        ("adjoint", "(f, D+ g) = -(D- f, g)"),
    ];
    let mut devs = [Deviation::default(); 8];
    let mut same_direction = Deviation::default();
    let inv_step = f64::from(space.hp());
    let n = space.radix() as f64;

    for _ in 0..pairs {
        let f = random::dense_functional(&mut rng, space)?;
        let g = random::dense_functional(&mut rng, space)?;
        let b = random::integer_path(&mut rng, space);
        let lam = lambda_functional(&space, &b, Multiplier::Lambda)?;
        let lam_bar = lambda_functional(&space, &b, Multiplier::LambdaBar)?;
        let ff = forward2(&f)?;
        let bf = inverse2(&f)?;

        let checks = [
            (forward2(&diff_plus(&f, &b)?)?, lam.mul(&ff)?),
            (forward2(&diff_minus(&f, &b)?)?, neg(&lam_bar.mul(&ff)?)?),
            (forward2(&lam.mul(&f)?)?, neg(&diff_minus(&ff, &b)?)?),
            (forward2(&lam_bar.mul(&f)?)?, diff_plus(&ff, &b)?),
            (diff_plus(&bf, &b)?, inverse2(&lam.mul(&f)?)?),
            (diff_minus(&bf, &b)?, neg(&inverse2(&lam_bar.mul(&f)?)?)?),
        ];
        for (slot, (lhs, rhs)) in devs.iter_mut().zip(&checks) {
            *slot = slot.max(dev(lhs, rhs)?);
        }

        // Polar form from the unreduced pairing t = ε′⟨a, b⟩.
        let polar: Vec<C64> = space
            .paths()?
            .map(|a| {
                let acc: i128 = a
                    .digits()
                    .iter()
                    .zip(b.raw())
                    .map(|(&x, &y)| i128::from(x) * i128::from(y))
                    .sum();
                let t = acc as f64 / n;
                C64::new(0.0, 2.0 * PI)
                    * ((PI * t).sin() / PI * inv_step)
                    * C64::new(0.0, PI * t).exp()
            })
            .collect();
        devs[6] = devs[6].max(Deviation::between(&values(&lam)?, &polar));

        let lhs = inner2(&f, &diff_plus(&g, &b)?)?;
        devs[7] = devs[7].max(Deviation::scalar(lhs, -inner2(&diff_minus(&f, &b)?, &g)?));
        same_direction =
            same_direction.max(Deviation::scalar(lhs, -inner2(&diff_plus(&f, &b)?, &g)?));
    }

    for ((name, anchor), d) in names.iter().zip(devs) {
        report.check(name, anchor, d, tol_rel);
    }
    report.inform(
        "adjoint-same-direction",
        "(f, D+ g) = -(D+ f, g)",
        same_direction,
        tol_rel,
    );
    Ok(report)
}

/// The two-argument identity on a type-II space, for a delta kernel, a
/// constant kernel against `g = δ`, and `trials` random separable kernels,
/// each evaluated at the zero path plus `samples − 1` seeded points.
pub fn kernel_identity_check(
    space: PathSpace,
    seed: u64,
    trials: usize,
    samples: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    if space.variant() != Variant::TypeII {
        return Err(Error::WrongVariant("type2"));
    }
    let mut rng = random::seeded(seed);
    let mut points = vec![space.zero()];
    points.extend((1..samples).map(|_| random::path(&mut rng, space)));
    let mut report = VerificationReport::new(format!(
        "two-argument transform {} seed={seed}",
        label(&space)
    ));
    let anchor = "F_a(sum_b eps0 f(a-b,b) g(b))(d) = {F_b(F_c f(c,b)(d)) * F_b g(b)}(d)";
    let side_dev = |pairs: &[super::ops::MixedPair]| {
        let lhs: Vec<C64> = pairs.iter().map(|p| p.lhs).collect();
        let rhs: Vec<C64> = pairs.iter().map(|p| p.rhs).collect();
        Deviation::between(&lhs, &rhs)
    };

    let delta = values(&Functional::delta(space))?;
    let g = random::dense_functional(&mut rng, space)?;
    let pairs = mixed_transform2(&g, &|c, _| delta[c], &points)?;
    report.check("delta-kernel", anchor, side_dev(&pairs), tol_rel);

    let pairs = mixed_transform2(
        &Functional::delta(space),
        &|_, _| C64::new(1.0, 0.0),
        &points,
    )?;
    report.check("constant-kernel", anchor, side_dev(&pairs), tol_rel);

    let mut sep = Deviation::default();
    for _ in 0..trials {
        let u = values(&random::dense_functional(&mut rng, space)?)?;
        let v = values(&random::dense_functional(&mut rng, space)?)?;
        let g = random::dense_functional(&mut rng, space)?;
        let pairs = mixed_transform2(&g, &|c, b| u[c] * v[b], &points)?;
        sep = sep.max(side_dev(&pairs));
    }
    report.check("separable-kernel", anchor, sep, tol_rel);
    Ok(report)
}

/// Product-form transform against the direct sum over `X` on the same data.
pub fn product_vs_dense(
    space: PathSpace,
    seed: u64,
    count: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    let mut rng = random::seeded(seed);
    let mut worst = Deviation::default();
    for _ in 0..count {
        let f = random::product_functional(&mut rng, space);
        let fast = values(&forward2(&f)?)?;
        let dense = f.to_dense()?;
        let direct = values(&transform2(&dense, Direction::Forward, Method::Direct)?)?;
        worst = worst.max(Deviation::between(&fast, &direct));
    }
    let mut report = VerificationReport::new(format!("product path {} seed={seed}", label(&space)));
    report.check(
        "product-vs-direct",
        "per-site F = sum over X",
        worst,
        tol_rel,
    );
    Ok(report)
}

/// Parseval for product functionals, computed site by site.
pub fn product_parseval(
    space: PathSpace,
    seed: u64,
    count: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    let mut rng = random::seeded(seed);
    // Inner products of product functionals can be far from unit size, so
    // this one is relative to the values themselves.
    let rel = |a: C64, b: C64| {
        let abs = (a - b).norm();
        Deviation {
            abs,
            rel: abs / a.norm().max(b.norm()).max(f64::MIN_POSITIVE),
        }
    };
    let mut worst = Deviation::default();
    for _ in 0..count {
        let f = random::product_functional(&mut rng, space);
        let g = random::product_functional(&mut rng, space);
        let ff = forward2(&f)?;
        let fg = forward2(&g)?;
        worst = worst
            .max(rel(inner2(&ff, &ff)?, inner2(&f, &f)?))
            .max(rel(inner2(&ff, &fg)?, inner2(&f, &g)?));
    }
    let mut report =
        VerificationReport::new(format!("product parseval {} seed={seed}", label(&space)));
    report.push(IdentityRecord {
        name: "parseval".into(),
        anchor: "(Ff, Ff) = (f, f)".into(),
        max_abs_dev: worst.abs,
        max_rel_dev: worst.rel,
        tolerance: tol_rel,
        pass: worst.rel < tol_rel,
        informational: false,
    });
    Ok(report)
}
