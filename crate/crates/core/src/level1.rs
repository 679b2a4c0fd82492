//! The lattice Fourier transform on functions `L → C`.
//!
//! With `ε = 1/H` and `N = H²`,
//! `(Fφ)(p) = Σ_x ε·exp(−2πi·p·x)·φ(x)`; for `x = z/H`, `p = w/H` the kernel
//! is `exp(−2πi·z·w/N)`, so `F` is the unitary centered DFT of size `N`.

use std::f64::consts::PI;

use crate::dft::{unit_phase, CenteredDft, Direction, Strategy};
use crate::error::{Error, Result};
use crate::lattice::{GridFunction, LatticeKind, LatticeSpec};
use crate::random;
use crate::report::{Deviation, VerificationReport};
use crate::C64;

fn require_level1(lattice: &LatticeSpec) -> Result<()> {
    if lattice.kind() != LatticeKind::Level1 {
        return Err(Error::WrongLatticeKind {
            expected: LatticeKind::Level1,
            found: lattice.kind(),
        });
    }
    Ok(())
}

fn epsilon(lattice: &LatticeSpec) -> f64 {
    1.0 / f64::from(lattice.h())
}

pub fn transform1(phi: &GridFunction, dir: Direction, strategy: Strategy) -> Result<GridFunction> {
    let lattice = *phi.lattice();
    require_level1(&lattice)?;
    let dft = CenteredDft::new(lattice.count());
    let values = dft.transform(phi.values(), dir, epsilon(&lattice), strategy);
    Ok(GridFunction::from_parts(lattice, values))
}

pub fn forward1(phi: &GridFunction) -> Result<GridFunction> {
    transform1(phi, Direction::Forward, Strategy::Auto)
}

pub fn inverse1(phi: &GridFunction) -> Result<GridFunction> {
    transform1(phi, Direction::Inverse, Strategy::Auto)
}

/// `δ(x) = H` at `x = 0`, zero elsewhere.
pub fn delta1(lattice: LatticeSpec) -> Result<GridFunction> {
    delta_pow1(lattice, 1.0)
}

/// Pointwise real power `δˡ`, with `0ˡ = 0` for `l > 0`.
pub fn delta_pow1(lattice: LatticeSpec, l: f64) -> Result<GridFunction> {
    require_level1(&lattice)?;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Invalid(format!(
            "delta exponent must be positive, got {l}"
        )));
    }
    let peak = f64::from(lattice.h()).powf(l);
    Ok(GridFunction::from_fn(lattice, |z| {
        if z == 0 {
            C64::new(peak, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// `(φ∗ψ)(x) = Σ_y ε·φ(x−y)·ψ(y)` with cyclic wrap.
pub fn convolve1(phi: &GridFunction, psi: &GridFunction) -> Result<GridFunction> {
    let lattice = *phi.lattice();
    if lattice != *psi.lattice() {
        return Err(Error::LatticeMismatch);
    }
    require_level1(&lattice)?;
    let n = lattice.count();
    let eps = epsilon(&lattice);
    let (f, g) = (phi.values(), psi.values());
    // Slots and indices differ by n/2 on both sides, so slot(x−y) = (i − j + n/2) mod n.
    let values = (0..n)
        .map(|i| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, &gy) in g.iter().enumerate() {
                acc += f[(i + n + n / 2 - j) % n] * gy;
            }
            acc * eps
        })
        .collect();
    Ok(GridFunction::from_parts(lattice, values))
}

/// `Σ_x ε·conj(φ(x))·ψ(x)`.
pub fn inner1(phi: &GridFunction, psi: &GridFunction) -> Result<C64> {
    if phi.lattice() != psi.lattice() {
        return Err(Error::LatticeMismatch);
    }
    require_level1(phi.lattice())?;
    let sum: C64 = phi
        .values()
        .iter()
        .zip(psi.values())
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(sum * epsilon(phi.lattice()))
}

/// Dense two-variable function on `L × L`, row-major: `values[slot(u)·N + slot(y)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2 {
    lattice: LatticeSpec,
    values: Vec<C64>,
}

impl Grid2 {
    pub fn new(lattice: LatticeSpec, values: Vec<C64>) -> Result<Self> {
        require_level1(&lattice)?;
        let n = lattice.count();
        if values.len() != n * n {
            return Err(Error::WrongLength {
                expected: n * n,
                found: values.len(),
            });
        }
        Ok(Self { lattice, values })
    }

    pub fn from_fn(lattice: LatticeSpec, f: impl Fn(i64, i64) -> C64) -> Result<Self> {
        let values = lattice
            .indices()
            .flat_map(|u| lattice.indices().map(move |y| (u, y)))
            .map(|(u, y)| f(u, y))
            .collect();
        Self::new(lattice, values)
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn at(&self, u: i64, y: i64) -> C64 {
        let n = self.lattice.count();
        self.values[self.lattice.slot(u) * n + self.lattice.slot(y)]
    }
}

/// Left side of the mixed two-variable identity:
/// `F_x(Σ_y ε·f(x−y, y)·g(y))(p)`.
pub fn mixed_transform1(f: &Grid2, g: &GridFunction) -> Result<GridFunction> {
    let lattice = *g.lattice();
    if lattice != f.lattice {
        return Err(Error::LatticeMismatch);
    }
    let eps = epsilon(&lattice);
    let h = GridFunction::from_fn(lattice, |x| {
        lattice
            .indices()
            .map(|y| f.at(x - y, y) * g.at(y))
            .sum::<C64>()
            * eps
    });
    forward1(&h)
}

/// Right side of the mixed identity:
/// `{F_y(F_u f(u, y)(p)) ∗ F_y g}(p)`, the convolution evaluated at the same `p`.
pub fn rhs_mixed_transform1(f: &Grid2, g: &GridFunction) -> Result<GridFunction> {
    let lattice = *g.lattice();
    if lattice != f.lattice {
        return Err(Error::LatticeMismatch);
    }
    let eps = epsilon(&lattice);
    let n = lattice.count() as i128;
    let g_hat = forward1(g)?;
    let values = lattice
        .indices()
        .map(|p| {
            // y ↦ (F_u f(u, y))(p)
            let inner = GridFunction::from_fn(lattice, |y| {
                lattice
                    .indices()
                    .map(|u| unit_phase(-i128::from(p) * i128::from(u), n) * f.at(u, y))
                    .sum::<C64>()
                    * eps
            });
            let outer = forward1(&inner).expect("level-1 lattice");
            lattice
                .indices()
                .map(|q| outer.at(p - q) * g_hat.at(q))
                .sum::<C64>()
                * eps
        })
        .collect();
    Ok(GridFunction::from_parts(lattice, values))
}

/// `φ₁(x) = exp(iπx²)`, evaluated as `exp(2πi·z²/(2N))`.
pub fn chirp1(lattice: LatticeSpec) -> Result<GridFunction> {
    require_level1(&lattice)?;
    let two_n = 2 * lattice.count() as i128;
    Ok(GridFunction::from_fn(lattice, |z| {
        unit_phase(i128::from(z) * i128::from(z), two_n)
    }))
}

/// `φ₂(x) = exp(−πx²)` on the fundamental window.
pub fn gaussian1(lattice: LatticeSpec) -> Result<GridFunction> {
    require_level1(&lattice)?;
    Ok(GridFunction::from_fn(lattice, |z| {
        let x = lattice.point_f64(z);
        C64::new((-PI * x * x).exp(), 0.0)
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChirpCheck {
    pub report: VerificationReport,
    /// `Σ_x ε·exp(iπx²)`, which should equal `exp(iπ/4)`.
    pub constant: C64,
}

/// Checks `(Fφ₁)(p) = exp(iπ/4)·conj(φ₁(p))` on every lattice point.
pub fn chirp_identity_check1(h: u32, tol_abs: f64) -> Result<ChirpCheck> {
    let lattice = LatticeSpec::level1(h)?;
    let chirp = chirp1(lattice)?;
    let eps = epsilon(&lattice);
    let constant = chirp.values().iter().sum::<C64>() * eps;
    let eighth = unit_phase(1, 8);
    let transformed = forward1(&chirp)?;
    let expected: Vec<C64> = chirp.values().iter().map(|c| eighth * c.conj()).collect();

    let mut report = VerificationReport::new(format!("level1-chirp H={h}"));
    report.check_abs(
        "chirp-constant",
        "sum_x eps exp(i pi x^2) = exp(i pi/4)",
        Deviation::scalar(constant, eighth),
        tol_abs,
    );
    report.check_abs(
        "chirp-transform",
        "(F phi1)(p) = exp(i pi/4) conj(phi1(p))",
        Deviation::between(transformed.values(), &expected),
        tol_abs,
    );
    Ok(ChirpCheck { report, constant })
}

/// `c(p) = Σ_x ε·exp(−π(x + ip)²)` for the lattice point `p = p_index/H`,
/// so that `(Fφ₂)(p) = c(p)·φ₂(p)`.
pub fn gaussian_constant1(h: u32, p_index: i64) -> Result<C64> {
    let lattice = LatticeSpec::level1(h)?;
    if !lattice.indices().contains(&p_index) {
        return Err(Error::Invalid(format!(
            "p index {p_index} is not a lattice point"
        )));
    }
    let p = lattice.point_f64(p_index);
    let eps = epsilon(&lattice);
    let sum: C64 = lattice
        .indices()
        .map(|z| {
            let x = C64::new(lattice.point_f64(z), p);
            (-PI * x * x).exp()
        })
        .sum();
    Ok(sum * eps)
}

/// The level-one identity list on `trials` seeded random pairs `(φ, ψ)`.
pub fn identity_suite1(
    h: u32,
    seed: u64,
    trials: usize,
    tol_rel: f64,
) -> Result<VerificationReport> {
    let lattice = LatticeSpec::level1(h)?;
    let mut rng = random::seeded(seed);
    let one = GridFunction::constant(lattice, C64::new(1.0, 0.0));
    let delta = delta1(lattice)?;

    let mut report = VerificationReport::new(format!("level1 H={h} seed={seed} trials={trials}"));
    let dev = Deviation::between(forward1(&one)?.values(), delta.values())
        .max(Deviation::between(inverse1(&one)?.values(), delta.values()));
    report.check("delta", "delta = F1 = Fbar1", dev, tol_rel);

    let mut unitary = Deviation::default();
    let mut unitary_ok = true;
    let mut fourth = Deviation::default();
    let mut inversion = Deviation::default();
    let mut delta_unit = Deviation::default();
    let mut commute = Deviation::default();
    let mut conv_thm = Deviation::default();
    let mut prod_thm = Deviation::default();
    let mut conv_thm_bar = Deviation::default();
    let mut prod_thm_bar = Deviation::default();

    for _ in 0..trials {
        let phi = random::grid_function(&mut rng, lattice);
        let psi = random::grid_function(&mut rng, lattice);
        let f_phi = forward1(&phi)?;
        let f_psi = forward1(&psi)?;
        let b_phi = inverse1(&phi)?;
        let b_psi = inverse1(&psi)?;

        let before = inner1(&phi, &psi)?;
        let after = inner1(&f_phi, &f_psi)?;
        let d = Deviation::scalar(after, before);
        unitary_ok &= d.abs < tol_rel * (1.0 + before.norm());
        unitary = unitary.max(d);

        let f2 = forward1(&f_phi)?;
        let f4 = forward1(&forward1(&f2)?)?;
        fourth = fourth
            .max(Deviation::between(f4.values(), phi.values()))
            .max(Deviation::between(f2.values(), phi.reflect().values()));

        inversion = inversion
            .max(Deviation::between(inverse1(&f_phi)?.values(), phi.values()))
            .max(Deviation::between(forward1(&b_phi)?.values(), phi.values()));

        delta_unit = delta_unit
            .max(Deviation::between(
                convolve1(&phi, &delta)?.values(),
                phi.values(),
            ))
            .max(Deviation::between(
                convolve1(&delta, &phi)?.values(),
                phi.values(),
            ));

        let conv = convolve1(&phi, &psi)?;
        commute = commute.max(Deviation::between(
            conv.values(),
            convolve1(&psi, &phi)?.values(),
        ));

        let prod = phi.mul(&psi)?;
        conv_thm = conv_thm.max(Deviation::between(
            forward1(&conv)?.values(),
            f_phi.mul(&f_psi)?.values(),
        ));
        prod_thm = prod_thm.max(Deviation::between(
            forward1(&prod)?.values(),
            convolve1(&f_phi, &f_psi)?.values(),
        ));
        conv_thm_bar = conv_thm_bar.max(Deviation::between(
            inverse1(&conv)?.values(),
            b_phi.mul(&b_psi)?.values(),
        ));
        prod_thm_bar = prod_thm_bar.max(Deviation::between(
            inverse1(&prod)?.values(),
            convolve1(&b_phi, &b_psi)?.values(),
        ));
    }

    report.push(crate::report::IdentityRecord {
        name: "unitary".into(),
        anchor: "(F phi, F psi) = (phi, psi)".into(),
        max_abs_dev: unitary.abs,
        max_rel_dev: unitary.rel,
        tolerance: tol_rel,
        pass: unitary_ok,
        informational: false,
    });
    report.check(
        "fourth-power",
        "F^4 = 1, (F^2 phi)(x) = phi(-x)",
        fourth,
        tol_rel,
    );
    report.check("inversion", "Fbar F = F Fbar = 1", inversion, tol_rel);
    report.check(
        "delta-unit",
        "phi * delta = delta * phi = phi",
        delta_unit,
        tol_rel,
    );
    report.check("commutative", "phi * psi = psi * phi", commute, tol_rel);
    report.check(
        "convolution",
        "F(phi * psi) = (F phi)(F psi)",
        conv_thm,
        tol_rel,
    );
    report.check(
        "product",
        "F(phi psi) = (F phi) * (F psi)",
        prod_thm,
        tol_rel,
    );
    report.check(
        "convolution-bar",
        "Fbar(phi * psi) = (Fbar phi)(Fbar psi)",
        conv_thm_bar,
        tol_rel,
    );
    report.check(
        "product-bar",
        "Fbar(phi psi) = (Fbar phi) * (Fbar psi)",
        prod_thm_bar,
        tol_rel,
    );
    Ok(report)
}
