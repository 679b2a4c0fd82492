//! Library results against independent naive evaluations in real arithmetic.

use std::f64::consts::PI;

use hyperfourier::examples::{c1, c2_brute, c2_full, c2_site};
use hyperfourier::gauss::gauss_sum_brute;
use hyperfourier::lattice::GridFunction;
use hyperfourier::level1::{chirp1, convolve1, forward1, gaussian_constant1, inner1, inverse1};
use hyperfourier::level2::{diff_plus, forward2, inverse2, lambda_factor, Functional, Multiplier};
use hyperfourier::{random, LatticeSpec, PathFunction, PathSpace, Variant, C64};

fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

fn max_dev(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `(Fφ)(p) = Σ_x ε·exp(−2πi·x·p)·φ(x)` over `x, p ∈ {−H/2, …, H/2 − 1/H}`.
fn naive_forward1(h: usize, values: &[C64], sign: f64) -> Vec<C64> {
    let n = h * h;
    let eps = 1.0 / h as f64;
    let point = |i: usize| (i as f64 - (n / 2) as f64) * eps;
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| cis(sign * 2.0 * PI * point(i) * point(j)) * values[i] * eps)
                .sum()
        })
        .collect()
}

#[test]
fn level1_transform_matches_naive_sum() {
    let mut rng = random::seeded(1);
    for h in [2usize, 4, 8] {
        let lattice = LatticeSpec::level1(h as u32).unwrap();
        let phi = random::grid_function(&mut rng, lattice);
        let f = forward1(&phi).unwrap();
        assert!(max_dev(f.values(), &naive_forward1(h, phi.values(), -1.0)) < 1e-11);
        let g = inverse1(&phi).unwrap();
        assert!(max_dev(g.values(), &naive_forward1(h, phi.values(), 1.0)) < 1e-11);
    }
}

#[test]
fn level1_convolution_and_inner_product_match_naive() {
    let mut rng = random::seeded(2);
    let h = 4usize;
    let n = (h * h) as i64;
    let lattice = LatticeSpec::level1(h as u32).unwrap();
    let phi = random::grid_function(&mut rng, lattice);
    let psi = random::grid_function(&mut rng, lattice);
    let eps = 1.0 / h as f64;
    let at = |f: &GridFunction, z: i64| f.values()[(z + n / 2).rem_euclid(n) as usize];
    let naive: Vec<C64> = (-n / 2..n / 2)
        .map(|x| {
            (-n / 2..n / 2)
                .map(|y| at(&phi, x - y) * at(&psi, y) * eps)
                .sum()
        })
        .collect();
    assert!(max_dev(convolve1(&phi, &psi).unwrap().values(), &naive) < 1e-12);

    let inner = inner1(&phi, &psi).unwrap();
    let conj_first: C64 = phi
        .values()
        .iter()
        .zip(psi.values())
        .map(|(a, b)| a.conj() * b * eps)
        .sum();
    assert!((inner - conj_first).norm() < 1e-12);
}

#[test]
fn level1_chirp_and_gaussian_constants_match_naive() {
    for h in [2usize, 4, 8, 16] {
        let lattice = LatticeSpec::level1(h as u32).unwrap();
        let chirp = chirp1(lattice).unwrap();
        let naive: Vec<C64> = (0..h * h)
            .map(|i| {
                let x = (i as f64 - (h * h / 2) as f64) / h as f64;
                cis(PI * x * x)
            })
            .collect();
        assert!(max_dev(chirp.values(), &naive) < 1e-12);
        let constant: C64 = naive.iter().sum::<C64>() / h as f64;
        assert!((constant - cis(PI / 4.0)).norm() < 1e-12);
    }
    let h = 8.0;
    let p = 0.5;
    let naive: C64 = (-32..32)
        .map(|z| {
            let w = C64::new(z as f64 / h, p);
            (-PI * w * w).exp() / h
        })
        .sum();
    assert!((gaussian_constant1(8, 4).unwrap() - naive).norm() < 1e-13);
}

#[test]
fn gauss_sums_match_unreduced_trig() {
    for n in 1..=64u64 {
        let naive: C64 = (0..n)
            .map(|k| cis(2.0 * PI * (k * k) as f64 / n as f64))
            .sum();
        assert!(
            (gauss_sum_brute(n).unwrap() - naive).norm() < 1e-11,
            "N={n}"
        );
    }
}

struct NaiveSpace {
    h: usize,
    hp: usize,
    n: usize,
    eps: f64,
    type2: bool,
}

impl NaiveSpace {
    fn new(variant: Variant, h: usize, hp: usize) -> Self {
        let type2 = variant == Variant::TypeII;
        let n = if type2 { h * hp * hp } else { hp * hp };
        Self {
            h,
            hp,
            n,
            eps: 1.0 / h as f64,
            type2,
        }
    }

    fn sites(&self) -> usize {
        self.h * self.h
    }

    /// Every path as real values, site 0 varying fastest.
    fn paths(&self) -> Vec<Vec<f64>> {
        let k = self.sites();
        let total = self.n.pow(k as u32);
        (0..total)
            .map(|mut r| {
                (0..k)
                    .map(|_| {
                        let d = r % self.n;
                        r /= self.n;
                        (d as f64 - (self.n / 2) as f64) / self.hp as f64
                    })
                    .collect()
            })
            .collect()
    }

    fn pairing(&self, a: &[f64], b: &[f64]) -> f64 {
        let s: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        if self.type2 {
            self.eps * s
        } else {
            s
        }
    }

    fn eps0(&self) -> f64 {
        let k = self.sites() as i32;
        let w = if self.type2 {
            1.0 / ((self.h as f64).sqrt() * self.hp as f64)
        } else {
            1.0 / self.hp as f64
        };
        w.powi(k)
    }

    fn transform(&self, values: &[C64], sign: f64) -> Vec<C64> {
        let paths = self.paths();
        let e0 = self.eps0();
        paths
            .iter()
            .map(|b| {
                paths
                    .iter()
                    .zip(values)
                    .map(|(a, &f)| cis(sign * 2.0 * PI * self.pairing(a, b)) * f * e0)
                    .sum()
            })
            .collect()
    }
}

#[test]
fn level2_transform_matches_naive_sum() {
    let mut rng = random::seeded(3);
    for (variant, hp) in [(Variant::TypeI, 2usize), (Variant::TypeII, 2)] {
        let space = PathSpace::new(variant, 2, hp as u32).unwrap();
        let naive = NaiveSpace::new(variant, 2, hp);
        let f = random::dense_functional(&mut rng, space).unwrap();
        let values = f.to_dense_values().unwrap();
        let fwd = forward2(&f).unwrap().to_dense_values().unwrap();
        assert!(
            max_dev(&fwd, &naive.transform(&values, -1.0)) < 1e-9,
            "{variant}"
        );
        let inv = inverse2(&f).unwrap().to_dense_values().unwrap();
        assert!(
            max_dev(&inv, &naive.transform(&values, 1.0)) < 1e-9,
            "{variant}"
        );
    }
}

#[test]
fn delta_peak_values() {
    assert_eq!(
        PathSpace::new(Variant::TypeI, 2, 2).unwrap().delta_peak(),
        16.0
    );
    assert_eq!(
        PathSpace::new(Variant::TypeII, 2, 2).unwrap().delta_peak(),
        64.0
    );
    let naive = NaiveSpace::new(Variant::TypeII, 2, 2);
    assert!((naive.eps0() * 64.0 - 1.0).abs() < 1e-15);
}

#[test]
fn difference_and_multiplier_match_naive() {
    let mut rng = random::seeded(4);
    let space = PathSpace::new(Variant::TypeI, 2, 2).unwrap();
    let naive = NaiveSpace::new(Variant::TypeI, 2, 2);
    let n = naive.n as i64;
    let f = random::dense_functional(&mut rng, space).unwrap();
    for _ in 0..10 {
        let b = random::integer_path(&mut rng, space);
        let d = diff_plus(&f, &b).unwrap();
        for _ in 0..10 {
            let a = random::path(&mut rng, space);
            let ahead: Vec<i64> = a
                .digits()
                .iter()
                .zip(b.raw())
                .map(|(&x, &y)| (x + y + n / 2).rem_euclid(n) - n / 2)
                .collect();
            let ahead = PathFunction::new(space, ahead).unwrap();
            let want = (f.eval(&ahead).unwrap() - f.eval(&a).unwrap()) * naive.hp as f64;
            assert!((d.eval(&a).unwrap() - want).norm() < 1e-12);

            let av: Vec<f64> = a
                .digits()
                .iter()
                .map(|&z| z as f64 / naive.hp as f64)
                .collect();
            let bv: Vec<f64> = b
                .raw()
                .iter()
                .map(|&z| z as f64 / naive.hp as f64)
                .collect();
            let lam = (cis(2.0 * PI * naive.pairing(&av, &bv)) - 1.0) * naive.hp as f64;
            assert!((lambda_factor(&a, &b, Multiplier::Lambda).unwrap() - lam).norm() < 1e-12);
        }
    }
}

#[test]
fn chirp_constant_matches_naive_enumeration() {
    let naive = NaiveSpace::new(Variant::TypeII, 2, 2);
    let sum: C64 = naive
        .paths()
        .iter()
        .map(|a| cis(PI * naive.eps * a.iter().map(|x| x * x).sum::<f64>()))
        .sum();
    let brute = sum * naive.eps0();
    assert!((brute + 1.0).norm() < 1e-12);
    assert!((c1(2, 2).unwrap() - brute).norm() < 1e-12);
}

#[test]
fn gaussian_constants_match_naive_sums() {
    // Riemann sum of exp(−πx²) with step 1/(√H·Hp) over the type-II window.
    let site = |h: f64, hp: f64, beta: f64| -> C64 {
        let n = (h * hp * hp) as i64;
        let step = 1.0 / (h.sqrt() * hp);
        (-n / 2..n / 2)
            .map(|z| {
                let x = C64::new(z as f64 * step, beta * h.sqrt().recip());
                (-PI * x * x).exp() * step
            })
            .sum()
    };
    for (h, hp) in [(2u32, 2u32), (2, 4), (4, 2), (4, 4)] {
        for m in -2..=2 {
            let beta = m as f64 / f64::from(hp);
            let want = site(f64::from(h), f64::from(hp), beta);
            assert!(
                (c2_site(h, hp, beta).unwrap() - want).norm() < 1e-12,
                "H={h} Hp={hp} beta={beta}"
            );
        }
    }
    // Regression anchor for the coarsest sum.
    let s = c2_site(2, 2, 0.0).unwrap();
    assert!((s.re - 0.999_300_712_704_431_4).abs() < 1e-15 && s.im == 0.0);

    let space = PathSpace::new(Variant::TypeII, 2, 2).unwrap();
    let mut rng = random::seeded(5);
    for _ in 0..5 {
        let b = random::path(&mut rng, space);
        let prod = c2_full(&b).unwrap();
        assert!((prod - c2_brute(&b).unwrap()).norm() < 1e-9 * prod.norm().max(1.0));
    }
}

#[test]
fn builtin_values_match_formulas() {
    let space = PathSpace::new(Variant::TypeII, 2, 2).unwrap();
    let naive = NaiveSpace::new(Variant::TypeII, 2, 2);
    let g = Functional::builtin(space, hyperfourier::level2::Builtin::Gaussian).unwrap();
    let values = g.to_dense_values().unwrap();
    for (a, v) in naive.paths().iter().zip(&values) {
        let want = (-PI * naive.eps * a.iter().map(|x| x * x).sum::<f64>()).exp();
        assert!((v - want).norm() < 1e-14);
    }
}
