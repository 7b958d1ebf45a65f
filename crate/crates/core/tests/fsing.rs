mod common;

use common::*;
use frobcalc_core::frobenius::{bracket_power, BracketExponent};
use frobcalc_core::fsing::{
    fedder_pure_at, pure_locus, pure_locus_with_points, split_element_test, uniform_exponent,
    QuotientPresentation,
};
use frobcalc_core::polyring::{parse_generators, parse_ring, Ideal, Polynomial, Ring};
use frobcalc_core::Error;
use proptest::prelude::*;

fn ex(e: u32) -> BracketExponent {
    BracketExponent::new(e).unwrap()
}

#[test]
fn cusp_at_origin_by_cofactors() {
    let r = parse_ring("GF(2)[x,y]").unwrap();
    let i = Ideal::new(&r, parse_generators(&r, "y^2 + x^3").unwrap()).unwrap();
    let pres = QuotientPresentation::new(i);
    let m = Ideal::rational_point(&r, &[0, 0]).unwrap();
    let v = fedder_pure_at(&pres, &Polynomial::one(&r), &m, ex(1)).unwrap();
    assert!(!v.pure);
    // f^{p-1} = y^2 + x^3 = 1*y^2 + x*x^2 lies in m^[2].
    let m2 = bracket_power(&m, ex(1)).unwrap();
    assert!(m2.contains(&pres.ideal().gens()[0]).unwrap());
}

#[test]
fn point_table_matches_fedder_over_f5() {
    let r = Ring::with_indexed_vars(5, 2).unwrap();
    let mut g = rng(55);
    for _ in 0..12 {
        let f = random_nonconstant(&mut g, &r, 4, 5);
        let pres = QuotientPresentation::new(Ideal::new(&r, vec![f.clone()]).unwrap());
        let one = Polynomial::one(&r);
        let report = pure_locus_with_points(&pres, &one, ex(1)).unwrap();
        for pv in report.rational_points.unwrap() {
            let pt: Vec<i64> = pv.point.iter().map(|&a| a as i64).collect();
            let m = Ideal::rational_point(&r, &pt).unwrap();
            let fedder = fedder_pure_at(&pres, &one, &m, ex(1)).unwrap();
            assert_eq!(fedder.pure, pv.pure, "f = {f} at {pt:?}");
        }
    }
}

#[test]
fn off_variety_point_is_a_domain_error() {
    let r = parse_ring("GF(3)[x,y]").unwrap();
    let pres = QuotientPresentation::new(Ideal::new(&r, vec![Polynomial::var(&r, 0)]).unwrap());
    let m = Ideal::rational_point(&r, &[1, 0]).unwrap();
    assert!(matches!(
        fedder_pure_at(&pres, &Polynomial::one(&r), &m, ex(1)),
        Err(Error::Domain(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn locus_is_lift_independent(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(p, 2).unwrap();
        let f = random_nonconstant(&mut g, &r, 3, 4);
        let i = Ideal::new(&r, vec![f.clone()]).unwrap();
        let pres = QuotientPresentation::new(i.clone());
        let x = random_poly(&mut g, &r, 2, 3);
        let other = &x + &(&f * &random_poly(&mut g, &r, 2, 2));
        let a = pure_locus(&pres, &x, ex(1)).unwrap().locus_ideal.sum(&i).unwrap();
        let b = pure_locus(&pres, &other, ex(1)).unwrap().locus_ideal.sum(&i).unwrap();
        prop_assert!(a.equals(&b).unwrap(), "x = {}, x' = {}", x, other);
    }

    #[test]
    fn locus_is_monotone_in_r(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(p, 2).unwrap();
        let f = random_nonconstant(&mut g, &r, 3, 3);
        let pres = QuotientPresentation::new(Ideal::new(&r, vec![f]).unwrap());
        let x = random_poly(&mut g, &r, 2, 2);
        let x2 = &x * &random_poly(&mut g, &r, 2, 2);
        let big = pure_locus(&pres, &x, ex(1)).unwrap().locus_ideal;
        let small = pure_locus(&pres, &x2, ex(1)).unwrap().locus_ideal;
        prop_assert!(big.contains_ideal(&small).unwrap());
    }

    #[test]
    fn pure_everywhere_iff_locus_plus_i_is_unit(seed in any::<u64>()) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(3, 2).unwrap();
        let i = random_ideal(&mut g, &r, 2, 3, 3);
        let pres = QuotientPresentation::new(i.clone());
        let rep = pure_locus(&pres, &Polynomial::one(&r), ex(1)).unwrap();
        prop_assert_eq!(rep.pure_everywhere, rep.locus_ideal.sum(&i).unwrap().is_unit());
        let split = split_element_test(&pres, &Polynomial::one(&r), ex(1)).unwrap();
        prop_assert_eq!(split.splits, rep.pure_everywhere);
        prop_assert_eq!(split.certificate.is_some(), split.splits);
    }

    #[test]
    fn uniform_exponent_avoids_bracket_powers(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut g = rng(seed);
        let r = Ring::with_indexed_vars(p, 2).unwrap();
        let f = random_nonconstant(&mut g, &r, 4, 4);
        let u = uniform_exponent(&f, 20).unwrap();
        for _ in 0..10 {
            let m = Ideal::rational_point(&r, &random_point(&mut g, &r)).unwrap();
            prop_assert!(!bracket_power(&m, ex(u.e)).unwrap().contains(&f).unwrap());
        }
        if u.e > 1 {
            // Minimality: the previous root is proper.
            prop_assert_ne!(u.roots[u.roots.len() - 2].as_str(), "1");
        }
    }
}
