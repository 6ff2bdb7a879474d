use num_complex::Complex64;
use proptest::prelude::*;
use twistkit::algebra::NumberField;
use twistkit::json::{expansion_from_json, expansion_to_json};
use twistkit::siegel_fourier::*;
use twistkit::symplectic::SiegelPoint;

fn q() -> NumberField {
    NumberField::rationals()
}

fn expansion(genus: usize, bound: u64, coeffs: &[i64]) -> SiegelFourierExpansion {
    let k = q();
    let idx = psd_indices(genus, bound);
    SiegelFourierExpansion::new(genus, bound, &k, idx.into_iter().zip(coeffs.iter()).map(|(a, &c)| (a, k.from_int(c))))
        .unwrap()
}

#[test]
fn genus_one_value_at_i() {
    let k = q();
    let f = SiegelFourierExpansion::new(1, 2, &k, [(HalfIntegralMatrix::from_i64_diag(&[1]), k.one())]).unwrap();
    let v = f.evaluate(&SiegelPoint::scalar_imaginary(1, 1.0).unwrap()).unwrap();
    assert!((v - Complex64::new((-std::f64::consts::PI).exp(), 0.0)).norm() < 1e-15);
    let zero = SiegelFourierExpansion::zero(2, 4, &k);
    assert_eq!(zero.evaluate(&SiegelPoint::scalar_imaginary(2, 0.7).unwrap()).unwrap(), Complex64::new(0.0, 0.0));
    assert!(phi_operator(&zero).unwrap().is_zero());
    let one = SiegelFourierExpansion::new(2, 0, &k, [(HalfIntegralMatrix::zero(2), k.one())]).unwrap();
    assert!((one.evaluate(&SiegelPoint::scalar_imaginary(2, 3.0).unwrap()).unwrap() - 1.0).norm() < 1e-15);
    assert!(!is_cusp_truncated(&one).unwrap());
}

#[test]
fn definite_support_is_killed_by_enumeration() {
    // every psd index with a zero diagonal entry has a zero row, so a
    // definite index never has a vanishing last row and column
    for a in psd_indices(2, 8) {
        if a.is_positive_definite() {
            assert!(!a.last_row_col_zero());
        }
        if a.twice(1, 1) == 0 {
            assert!(a.last_row_col_zero());
        }
    }
    let k = q();
    let pd = SiegelFourierExpansion::new(
        2,
        8,
        &k,
        psd_indices(2, 8).into_iter().filter(|a| a.is_positive_definite()).map(|a| (a.clone(), k.from_int(a.trace()))),
    )
    .unwrap();
    assert!(phi_operator(&pd).unwrap().is_zero());
    assert!(is_cusp_truncated(&pd).unwrap());
}

#[test]
fn singular_index_survives() {
    let k = q();
    let f = SiegelFourierExpansion::new(2, 2, &k, [(HalfIntegralMatrix::from_i64_diag(&[1, 0]), k.from_int(5))]).unwrap();
    let p = phi_operator(&f).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p.coefficient(&HalfIntegralMatrix::from_i64_diag(&[1])), k.from_int(5));
}

#[test]
fn residual_decays_geometrically() {
    let coeffs: Vec<i64> = (1..40).map(|i| (i * 7) % 11 - 5).collect();
    let f = expansion(2, 4, &coeffs);
    let z = SiegelPoint::from_rows(&[vec![Complex64::new(0.25, 1.1)]]).unwrap();
    let r: Vec<f64> = [5.0, 10.0, 20.0].iter().map(|&t| phi_limit_residual(&f, Some(&z), t, 0).unwrap()).collect();
    assert!(r[0] > 0.0);
    assert!(r[1] / r[0] <= (-5.0 * std::f64::consts::PI).exp() * (1.0 + 1e-6));
    assert!(r[2] / r[1] <= (-10.0 * std::f64::consts::PI).exp() * (1.0 + 1e-6));
}

#[test]
fn json_round_trip() {
    let f = expansion(2, 3, &[1, -2, 3, 0, 5, 6, 7]);
    assert_eq!(expansion_from_json(&expansion_to_json(&f)).unwrap(), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phi_is_linear(
        a in prop::collection::vec(-9i64..10, 0..30),
        b in prop::collection::vec(-9i64..10, 0..30),
        s in -5i64..6,
        t in -5i64..6,
    ) {
        let k = q();
        let f = expansion(2, 4, &a);
        let g = expansion(2, 4, &b);
        let (s, t) = (k.from_int(s), k.from_int(t));
        let lhs = phi_operator(&f.linear_combination(&s, &g, &t).unwrap()).unwrap();
        let rhs = phi_operator(&f).unwrap().linear_combination(&s, &phi_operator(&g).unwrap(), &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
