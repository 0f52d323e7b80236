use chernkit::chern_calc::{reduce_hom, reduced_chern_formula, ChernVector};
use chernkit::exact_poly::{int, rat, MPoly, Rational, Var, VarTable, Vars};
use chernkit::symfun::{
    expand_elementary, express_in_elementary, monomial_coefficients, monomial_symmetric,
    partitions_of,
};
use chernkit::universal::solve_psi;
use proptest::prelude::*;

fn small_table() -> Vars {
    VarTable::new(vec![Var::new("a", 1), Var::new("b", 1), Var::new("c", 2)]).unwrap()
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Sparse polynomial over `vars` with exponents below `max_exp`.
fn poly_over(vars: Vars, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    let len = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..max_exp, len), coeff()),
        0..=max_terms,
    )
    .prop_map(move |terms| MPoly::from_terms(&vars, terms).unwrap())
}

fn small_poly() -> impl Strategy<Value = MPoly> {
    poly_over(small_table(), 3, 5)
}

/// Polynomial in `e1..en` of weighted degree at most `max_deg`.
fn e_poly(n: usize, max_deg: u32) -> impl Strategy<Value = MPoly> {
    poly_over(VarTable::elementary(n), 4, 6).prop_map(move |p| p.truncate(Some(max_deg)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn truncated_product_matches_full(p in small_poly(), q in small_poly(), cap in 0u32..8) {
        let full = &p * &q;
        prop_assert_eq!(p.mul_truncated(&q, Some(cap)).unwrap(), full.truncate(Some(cap)));
        prop_assert_eq!(p.mul_truncated(&q, None).unwrap(), full);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        p in small_poly(),
        q in small_poly(),
        images in prop::collection::vec(poly_over(VarTable::roots(2), 3, 3), 3),
    ) {
        let target = VarTable::roots(2);
        let sub = |f: &MPoly| f.substitute(&images, &target).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
    }

    #[test]
    fn json_round_trip(p in small_poly()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: MPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn elementary_round_trip((n, q) in (1usize..=4).prop_flat_map(|n| (Just(n), e_poly(n, 8)))) {
        let expanded = expand_elementary(&q, &VarTable::roots(n)).unwrap();
        prop_assert_eq!(express_in_elementary(&expanded).unwrap(), q);
    }

    #[test]
    fn positivity_propagates(
        n in 2usize..=3,
        left in prop::collection::vec(0u32..=3, 1..=3),
        right in prop::collection::vec(0u32..=3, 1..=3),
    ) {
        // nonnegative combinations of m_λ with |λ| ≤ 3 and at most n parts
        let build = |weights: &[u32]| {
            let x = VarTable::roots(n);
            let mut acc = MPoly::zero(&x);
            for (d, &w) in weights.iter().enumerate() {
                for lam in partitions_of(d as u32 + 1, n) {
                    acc = &acc + &monomial_symmetric(&lam, n).unwrap().scale(&int(w as i64));
                }
            }
            acc
        };
        let product = &build(&left) * &build(&right);
        prop_assert!(monomial_coefficients(&product).unwrap().is_nonnegative());
    }

    #[test]
    fn reduce_hom_is_a_homomorphism(p in poly_over(VarTable::chern(3), 3, 4), q in poly_over(VarTable::chern(3), 3, 4)) {
        let rp = reduce_hom(&p).unwrap();
        prop_assert_eq!(reduce_hom(&(&p * &q)).unwrap(), &rp * &reduce_hom(&q).unwrap());
        prop_assert_eq!(reduce_hom(&rp).unwrap(), rp);
    }

    #[test]
    fn reduce_hom_fixes_reduced_classes(n in 2usize..=4, exps in prop::collection::vec(0u32..=2, 3)) {
        // a monomial in c̄_2..c̄_n is fixed
        let c = VarTable::chern(n);
        let mut p = MPoly::one(&c);
        for (k, &e) in exps.iter().take(n - 1).enumerate() {
            p = &p * &reduced_chern_formula(n, k + 2).unwrap().pow(e);
        }
        prop_assert_eq!(reduce_hom(&p).unwrap(), p);
    }

    #[test]
    fn psi_rewrites_any_invariant((n, q) in (2usize..=4).prop_flat_map(|n| (Just(n), e_poly(n, n as u32)))) {
        let x = VarTable::roots(n);
        let p = expand_elementary(&q, &x).unwrap();

        // p → e-polynomial → s-polynomial via ψ → back through s(e) → roots
        let sol = solve_psi(n).unwrap();
        let in_e = express_in_elementary(&p).unwrap();
        let in_s = in_e.substitute(&sol.psi, &VarTable::s_vars(n)).unwrap();
        let back = in_s.substitute(&sol.s_elementary, &VarTable::elementary(n)).unwrap();
        prop_assert_eq!(expand_elementary(&back, &x).unwrap(), p);
    }
}

#[test]
fn free_vector_matches_formula_at_zero_c1() {
    for n in 2..=4 {
        let cv = ChernVector::free(n);
        for r in 2..=n {
            let f = reduced_chern_formula(n, r).unwrap();
            assert_eq!(chernkit::chern_calc::drop_c1(&f), cv.class(r));
        }
    }
}
