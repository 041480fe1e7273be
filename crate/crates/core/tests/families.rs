mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rivercross::family::{find_recurrence, FamilyTerm};
use rivercross::*;

#[test]
fn family_counts_match_brute_force() {
    for (r, b, d) in [(5, 3, 1), (0, 4, 0), (1, 2, 0), (2, 3, 1)] {
        let fs = FamilySpec::new(r, b, d, 6).unwrap();
        for (i, term) in (1..).zip(family_counts(&fs)) {
            let expected = common::mc_count(i + r, i, b, d);
            match term {
                FamilyTerm::Solved { crossings, count } => {
                    assert_eq!(
                        Some((crossings, count.to_string())),
                        expected.map(|(k, w)| (k, w.to_string()))
                    )
                }
                FamilyTerm::Unsolvable => assert!(expected.is_none()),
            }
        }
    }
}

#[test]
fn equal_populations_with_small_boat_die_out() {
    let fs = FamilySpec::new(0, 2, 0, 5).unwrap();
    let terms = family_counts(&fs);
    assert!(terms[..3]
        .iter()
        .all(|t| matches!(t, FamilyTerm::Solved { .. })));
    assert_eq!(
        &terms[3..],
        &[FamilyTerm::Unsolvable, FamilyTerm::Unsolvable]
    );
}

#[test]
fn all_unsolvable_family_is_reported() {
    let fs = FamilySpec::new(0, 2, 0, 6).unwrap().starting_at(4);
    let report = conjecture_report(&fs, 2);
    assert!(report.all_unsolvable());
    assert!(report.recurrence.is_none());
    assert!(report.to_string().contains("No solutions exist"));
}

#[test]
fn fibonacci_report_text() {
    let report = conjecture_report(&FamilySpec::new(5, 3, 1, 12).unwrap(), 3);
    let text = report.to_string();
    assert!(text.contains("a(i) = a(i-1) + a(i-2)"), "{text}");
    assert!(text.contains("Recurrent from: i = 3"), "{text}");
    assert!(report.verified);
}

#[test]
fn generating_function_extends_past_the_fitted_terms() {
    let fs = FamilySpec::new(9, 2, 0, 24).unwrap().starting_at(0);
    let values: Vec<BigInt> = family_counts(&fs).iter().map(FamilyTerm::value).collect();
    let rec = find_recurrence(&values[..20], 4).unwrap();
    let gf = rational_gf(&rec, &values[..20]).unwrap();
    assert_eq!(series_coefficients(&gf, 24).unwrap(), values);
}

proptest! {
    #[test]
    fn fitting_is_scale_consistent(a0 in -9i64..10, a1 in -9i64..10, c1 in -3i64..4, c2 in -3i64..4, s in 1i64..50) {
        let mut seq = vec![BigInt::from(a0), BigInt::from(a1)];
        for n in 2..12 {
            let next = BigInt::from(c1) * &seq[n - 1] + BigInt::from(c2) * &seq[n - 2];
            seq.push(next);
        }
        let scaled: Vec<BigInt> = seq.iter().map(|v| v * s).collect();
        let a = fit_linear_recurrence(&seq, 3, 0).unwrap();
        let b = fit_linear_recurrence(&scaled, 3, 0).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(rec) = a {
            prop_assert!(rec.verify(&seq));
            let gf = rational_gf(&rec, &seq).unwrap();
            prop_assert_eq!(series_coefficients(&gf, seq.len()).unwrap(), seq.clone());
        }
    }

    #[test]
    fn recovers_planted_recurrence(a0 in 1i64..10, a1 in 1i64..10, a2 in 1i64..10, c in proptest::array::uniform3(-4i64..5)) {
        prop_assume!(c[2] != 0);
        let mut seq: Vec<BigInt> = vec![a0.into(), a1.into(), a2.into()];
        for n in 3..14 {
            let next: BigInt = (0..3).map(|j| BigInt::from(c[j]) * &seq[n - 1 - j]).sum();
            seq.push(next);
        }
        let rec = fit_linear_recurrence(&seq, 3, 0).unwrap().expect("an order-3 relation exists");
        prop_assert!(rec.order() <= 3);
        prop_assert!(rec.verify(&seq));
        if rec.order() == 3 {
            let planted: Vec<BigRational> = c.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            prop_assert_eq!(rec.coefficients, planted);
        }
    }
}
