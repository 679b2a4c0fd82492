use proptest::prelude::*;

use hyperfourier::examples::{c1, c2_site, chirp_value};
use hyperfourier::gauss::{gauss_sum_brute, gauss_sum_closed};
use hyperfourier::io;
use hyperfourier::level1::{forward1, inner1, inverse1};
use hyperfourier::level2::{forward2, inner2, inverse2};
use hyperfourier::pathspace::{path_add, path_neg, path_sub, rank, raw_pairing_residue, unrank};
use hyperfourier::{
    make_lattice, random, wrap, LatticeKind, LatticeSpec, PathFunction, PathSpace, Variant, C64,
};

fn even(range: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = u32> {
    range.prop_map(|k| 2 * k)
}

fn kind() -> impl Strategy<Value = LatticeKind> {
    prop_oneof![
        Just(LatticeKind::Level1),
        Just(LatticeKind::Level2TypeI),
        Just(LatticeKind::Level2TypeII)
    ]
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::TypeI), Just(Variant::TypeII)]
}

fn sup(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn wrap_is_idempotent_and_centered(kind in kind(), h in even(1..=8), hp in even(1..=8), z in any::<i64>()) {
        let hp = (kind != LatticeKind::Level1).then_some(hp);
        let lattice = make_lattice(kind, h, hp).unwrap();
        let w = wrap(&lattice, z);
        let half = (lattice.count() / 2) as i64;
        prop_assert!((-half..half).contains(&w));
        prop_assert_eq!(wrap(&lattice, w), w);
        prop_assert_eq!((i128::from(z) - i128::from(w)).rem_euclid(lattice.count() as i128), 0);
    }

    #[test]
    fn rank_unrank_bijection(v in variant(), hp in even(1..=3), seed in any::<u64>()) {
        let space = PathSpace::new(v, 2, hp).unwrap();
        let count = space.path_count().unwrap();
        let r = seed % count;
        let a = unrank(r, &space).unwrap();
        prop_assert_eq!(rank(&a).unwrap(), r);
        let mut rng = random::seeded(seed);
        let b = random::path(&mut rng, space);
        prop_assert_eq!(unrank(rank(&b).unwrap(), &space).unwrap(), b);
    }

    #[test]
    fn kernel_phase_ignores_wrapping(v in variant(), hp in even(1..=4), seed in any::<u64>(), k in 0usize..4, m in -3i64..=3) {
        let space = PathSpace::new(v, 2, hp).unwrap();
        let mut rng = random::seeded(seed);
        let a = random::path(&mut rng, space);
        let b = random::path(&mut rng, space);
        let mut shifted = a.digits().to_vec();
        shifted[k] += m * space.radix() as i64;
        prop_assert_eq!(
            raw_pairing_residue(&space, &shifted, b.digits()),
            raw_pairing_residue(&space, a.digits(), b.digits())
        );
    }

    #[test]
    fn gauss_closed_form(n in 1u64..=1024) {
        let brute = gauss_sum_brute(n).unwrap();
        prop_assert!((brute - gauss_sum_closed(n)).norm() < 1e-10 * (1.0 + (n as f64).sqrt()));
    }

    #[test]
    fn level1_inversion_and_unitarity(h in even(1..=8), seed in any::<u64>()) {
        let lattice = LatticeSpec::level1(h).unwrap();
        let mut rng = random::seeded(seed);
        let phi = random::grid_function(&mut rng, lattice);
        let psi = random::grid_function(&mut rng, lattice);
        let back = inverse1(&forward1(&phi).unwrap()).unwrap();
        prop_assert!(sup(back.values(), phi.values()) < 1e-11);
        let before = inner1(&phi, &psi).unwrap();
        let after = inner1(&forward1(&phi).unwrap(), &forward1(&psi).unwrap()).unwrap();
        prop_assert!((before - after).norm() < 1e-11 * (1.0 + before.norm()));
    }

    #[test]
    fn level1_linearity(h in even(1..=4), seed in any::<u64>()) {
        let lattice = LatticeSpec::level1(h).unwrap();
        let mut rng = random::seeded(seed);
        let phi = random::grid_function(&mut rng, lattice);
        let psi = random::grid_function(&mut rng, lattice);
        let c = random::complex(&mut rng);
        let combo = hyperfourier::GridFunction::new(
            lattice,
            phi.values().iter().zip(psi.values()).map(|(a, b)| c * a + b).collect(),
        ).unwrap();
        let lhs = forward1(&combo).unwrap();
        let fp = forward1(&phi).unwrap();
        let fq = forward1(&psi).unwrap();
        let rhs: Vec<C64> = fp.values().iter().zip(fq.values()).map(|(a, b)| c * a + b).collect();
        prop_assert!(sup(lhs.values(), &rhs) < 1e-12);
    }

    #[test]
    fn product_functionals_invert_and_preserve_norm(v in variant(), h in even(1..=2), hp in even(1..=4), seed in any::<u64>()) {
        let space = PathSpace::new(v, h, hp).unwrap();
        let mut rng = random::seeded(seed);
        let f = random::product_functional(&mut rng, space);
        let g = random::product_functional(&mut rng, space);
        let ff = forward2(&f).unwrap();
        let back = inverse2(&ff).unwrap();
        let probe = random::path(&mut rng, space);
        let (x, y) = (back.eval(&probe).unwrap(), f.eval(&probe).unwrap());
        prop_assert!((x - y).norm() < 1e-10 * (1.0 + y.norm()));
        let before = inner2(&f, &g).unwrap();
        let after = inner2(&ff, &forward2(&g).unwrap()).unwrap();
        prop_assert!((before - after).norm() < 1e-10 * (1.0 + before.norm()));
    }

    #[test]
    fn c1_is_unimodular(h in even(1..=4), hp in even(1..=8)) {
        let value = c1(h, hp).unwrap();
        prop_assert!((value.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_site_factor_is_even(h in even(1..=4), hp in even(1..=4), m in 0i64..=8) {
        let beta = m as f64 / f64::from(hp);
        prop_assume!(m <= (h * hp * hp / 2) as i64);
        let plus = c2_site(h, hp, beta).unwrap();
        let minus = c2_site(h, hp, -beta).unwrap();
        prop_assert!((plus - minus).norm() < 1e-12 * plus.norm().max(1.0));
    }

    #[test]
    fn grid_json_round_trips_exactly(h in even(1..=4), seed in any::<u64>()) {
        let lattice = LatticeSpec::level1(h).unwrap();
        let mut rng = random::seeded(seed);
        let phi = random::grid_function(&mut rng, lattice);
        prop_assert_eq!(io::grid_from_json(&io::grid_to_json(&phi)).unwrap(), phi);
    }

    #[test]
    fn path_json_wraps_digits(v in variant(), hp in even(1..=4), raw in proptest::collection::vec(-1000i64..1000, 4)) {
        let space = PathSpace::new(v, 2, hp).unwrap();
        let text = format!(
            r#"{{"H":2,"Hp":{hp},"variant":"{v}","digits":[{}]}}"#,
            raw.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(",")
        );
        let a = io::path_from_json(&text).unwrap();
        prop_assert_eq!(a, PathFunction::new(space, raw).unwrap());
    }
}

#[test]
fn group_laws_hold_exhaustively() {
    let space = PathSpace::new(Variant::TypeI, 2, 2).unwrap();
    let paths: Vec<PathFunction> = space.paths().unwrap().collect();
    let zero = space.zero();
    for a in &paths {
        assert_eq!(path_add(a, &zero).unwrap(), *a);
        assert!(path_add(a, &path_neg(a)).unwrap().is_zero());
        for b in paths.iter().step_by(7) {
            let ab = path_add(a, b).unwrap();
            assert_eq!(ab, path_add(b, a).unwrap());
            assert_eq!(path_sub(&ab, b).unwrap(), *a);
            for c in paths.iter().step_by(31) {
                assert_eq!(
                    path_add(&ab, c).unwrap(),
                    path_add(a, &path_add(b, c).unwrap()).unwrap()
                );
            }
        }
    }
}

#[test]
fn chirp_is_periodic_under_full_digit_shift() {
    let space = PathSpace::new(Variant::TypeII, 2, 2).unwrap();
    let n = space.radix() as i64;
    for a in space.paths().unwrap() {
        for k in 0..space.sites() {
            for m in [-2, -1, 1, 2] {
                let mut raw = a.digits().to_vec();
                raw[k] += m * n;
                assert_eq!(chirp_value(&space, &raw), chirp_value(&space, a.digits()));
            }
        }
    }
}
