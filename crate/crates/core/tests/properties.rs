use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rees::cli::random_instance;
use rees::generators::recursion_generators;
use rees::gradedlin::{piece_basis, solve_combination, span_dim, x_monomials};
use rees::oracle::{bigraded_hilbert, buchberger, colon, rees_kernel_dim, saturate_m};
use rees::ring::{Field, Poly, PrimeField, Ring};
use rees::tower::Presentation;

fn field() -> PrimeField {
    PrimeField::default()
}

fn random_pres(n: usize, d: &[i64], seed: u64) -> Presentation<PrimeField> {
    random_instance(&field(), n, d, seed).unwrap().presentation(&field()).unwrap()
}

fn random_poly(ring: &Ring, bideg: (i64, i64), rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    let f = field();
    let basis = piece_basis(ring, bideg);
    Poly::from_terms(
        &f,
        basis
            .monomials
            .iter()
            .filter_map(|m| rng.gen_bool(0.6).then(|| (*m, f.random(rng))))
            .collect::<Vec<_>>(),
    )
}

fn degrees3() -> impl Strategy<Value = Vec<i64>> {
    (1i64..=3, 0i64..=3).prop_map(|(a, g)| vec![a, a + g])
}

fn degrees4() -> impl Strategy<Value = Vec<i64>> {
    (1i64..=2, 0i64..=1, 0i64..=2).prop_map(|(a, g, h)| vec![a, a + g, a + g + h])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Ring::S { n: 3 };
        let a = random_poly(&s, (2, 1), &mut rng);
        let b = random_poly(&s, (1, 2), &mut rng);
        let c = random_poly(&s, (0, 1), &mut rng);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let b2 = random_poly(&s, (1, 2), &mut rng);
        prop_assert_eq!(a.mul(&b.add(&b2)), a.mul(&b).add(&a.mul(&b2)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>(), i in 0i64..4, j in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Ring::S { n: 4 };
        let p = random_poly(&s, (i, j), &mut rng);
        let text = s.format(&p);
        prop_assert_eq!(s.parse(&field(), &text).unwrap(), p);
    }

    #[test]
    fn random_presentations_satisfy_sigma_identity(d in degrees4(), seed in 0u64..1000) {
        let p = random_pres(4, &d, seed);
        for m in 1..4 {
            let level = p.level(m).unwrap();
            prop_assert_eq!(level.sigma.total(), d[..m].iter().sum::<i64>());
            prop_assert_eq!(level.sigma.s, 4 - m);
            prop_assert!(level.xi_kills_phi(&p));
        }
    }

    #[test]
    fn minors_are_syzygies_of_phi_transpose(d in degrees3(), seed in 0u64..1000) {
        let p = random_pres(3, &d, seed);
        for j in 0..2 {
            let col = p.phi.column(j);
            let sum = col.iter().zip(&p.minors).fold(Poly::zero(&field()), |acc, (a, f)| acc.add(&a.mul(f)));
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(d in degrees3(), seed in 0u64..1000) {
        let p = random_pres(3, &d, seed);
        let level = p.level(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(&p.ring(), (1, 1), &mut rng);
        let b = random_poly(&p.ring(), (2, 2), &mut rng);
        prop_assert_eq!(level.subst(&a.mul(&b)), level.subst(&a).mul(&level.subst(&b)));
        let g = p.sym_equations();
        prop_assert!(level.subst(&g[0]).is_zero());
    }

    #[test]
    fn tower_level_identities(d in degrees4(), seed in 0u64..1000) {
        let p = random_pres(4, &d, seed);
        for m in 1..=2 {
            let level = p.level(m).unwrap();
            prop_assert!(level.wmult_identity_holds());
            prop_assert!(level.zero_part_in_image(3));
            for i in 0..level.sigma.s {
                prop_assert!(level.wmult_surjective(i));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
            let q = random_poly(&p.ring(), (1, 2), &mut rng);
            let nz = &level.normalization;
            prop_assert_eq!(nz.from_normalized(&nz.to_normalized(&q)), q);
        }
    }

    #[test]
    fn recursion_records_are_certified(d in degrees4(), seed in 0u64..1000) {
        let p = random_pres(4, &d, seed);
        let g = p.sym_equations();
        for m in 1..=2 {
            let level = p.level(m).unwrap();
            for r in recursion_generators(&level, &g[m]).unwrap() {
                prop_assert!(r.certify(&level));
                prop_assert_eq!(p.ring().bidegree(&r.poly).unwrap(), r.bidegree);
            }
        }
    }

    #[test]
    fn solve_combination_reexpands(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Poly<PrimeField>> = (0..3).map(|_| random_poly(&Ring::R, (2, 0), &mut rng)).collect();
        let coeffs: Vec<Poly<PrimeField>> = (0..3).map(|_| random_poly(&Ring::R, (2, 0), &mut rng)).collect();
        let target = gens.iter().zip(&coeffs).fold(Poly::zero(&field()), |acc, (g, c)| acc.add(&g.mul(c)));
        let a = solve_combination(&Ring::R, &target, &gens).expect("target lies in the ideal");
        let back = gens.iter().zip(&a).fold(Poly::zero(&field()), |acc, (g, c)| acc.add(&g.mul(c)));
        prop_assert_eq!(back, target);
    }

    #[test]
    fn span_dim_is_bounded(seed in any::<u64>(), k in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Ring::S { n: 2 };
        let vs: Vec<Poly<PrimeField>> = (0..k).map(|_| random_poly(&s, (1, 1), &mut rng)).collect();
        let piece = piece_basis(&s, (1, 1));
        prop_assert!(span_dim(&vs) <= k.min(piece.dim()));
        let basis: Vec<Poly<PrimeField>> = piece.monomials.iter().map(|m| Poly::monomial(&field(), *m)).collect();
        prop_assert_eq!(span_dim(&basis), piece.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn saturation_is_colon_stable(d in degrees3(), seed in 0u64..1000) {
        let p = random_pres(3, &d, seed);
        let k = saturate_m(&buchberger(&p.field, 3, &p.sym_equations())).unwrap();
        for v in 0..2 {
            let x = Poly::var(&field(), v);
            prop_assert_eq!(colon(&k, &x), k.clone());
        }
        prop_assert_eq!(buchberger(&p.field, 3, &k.generators()), k);
    }

    #[test]
    fn full_saturation_matches_rees_kernel(d in degrees3(), seed in 0u64..1000) {
        let p = random_pres(3, &d, seed);
        let k = saturate_m(&buchberger(&p.field, 3, &p.sym_equations())).unwrap();
        let dims = bigraded_hilbert(&k, (0, 3), (0, 3));
        for ((a, b), dim) in dims {
            prop_assert_eq!(dim, rees_kernel_dim(&p.minors, a, b), "bidegree ({}, {})", a, b);
        }
    }
}

#[test]
fn x_monomials_span_r() {
    let f = field();
    for d in 0..5 {
        let ms: Vec<Poly<PrimeField>> = x_monomials(d).into_iter().map(|m| Poly::monomial(&f, m)).collect();
        assert_eq!(span_dim(&ms), d as usize + 1);
    }
}
