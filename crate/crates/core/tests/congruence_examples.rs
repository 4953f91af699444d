//! Example reports checked against every reference factor of the differences
//! that lies above an odd prime.

use rankin_core::congruence::{example, example_suite, mismatches, valuation_or_infinite, RatioReport};
use rankin_core::numfield::{primes_above, FieldElem, PrimeIdealRef};
use rankin_core::arith::rat;

fn report(reports: &[RatioReport], m: i64) -> &RatioReport {
    reports.iter().find(|r| r.m == m).unwrap()
}

/// The ideal `(p, gen - value)`.
fn ideal(gen: &FieldElem, p: u64, value: i64) -> PrimeIdealRef {
    PrimeIdealRef::where_generator_is(gen.field(), p, gen, value).unwrap()
}

fn check(diff: &FieldElem, factors: &[(PrimeIdealRef, i64)]) {
    for (i, v) in factors {
        assert_eq!(valuation_or_infinite(diff, i).unwrap(), Some(*v), "at {i}");
    }
}

#[test]
fn example_1_factorizations() {
    let reps = example_suite(1).unwrap();
    assert!(mismatches(&example(1).unwrap(), &reps).is_empty());
    let b = reps[0].ratio_left.field();
    // beta0 / 24
    let gen = FieldElem::new(b, rat(45, 2), rat(1, 2));
    let both = |p: u64, c1: i64, c2: i64, v: i64| vec![(ideal(&gen, p, c1), v), (ideal(&gen, p, c2), v)];
    let big = primes_above(144169, b).unwrap()[0].clone();
    let mut f22 = [both(3, 23, 22, -1), both(5, 21, 19, -3), both(7, 20, 18, -1), both(11, 20, 14, -2)].concat();
    f22.push((big.clone(), 1));
    check(&report(&reps, 22).difference, &f22);
    let f21 = [both(3, 23, 22, -3), both(5, 21, 19, -1), both(7, 20, 18, -1), both(17, 21, 7, -1)].concat();
    check(&report(&reps, 21).difference, &f21);
    let f20 = [both(3, 23, 22, -1), both(5, 21, 19, -1), both(103, -18, -40, -1)].concat();
    check(&report(&reps, 20).difference, &f20);
    let f19 = [both(7, 20, 18, -1), both(17, 21, 7, -1), both(19, 15, 11, -1)].concat();
    check(&report(&reps, 19).difference, &f19);
    let f18 = [both(3, 23, 22, -1), both(5, 21, 19, -1), both(7, 20, 18, -1), both(17, 21, 7, -1)].concat();
    check(&report(&reps, 18).difference, &f18);
    // the two sides are the conjugate eigenforms
    for r in &reps {
        assert_eq!(r.ratio_left.conj(), r.ratio_right);
    }
    assert_eq!(report(&reps, 22).ratio_left.to_string(), "51776/317625 - 2/317625*sqrt(144169)");
}

#[test]
fn example_3_and_4_factorizations() {
    let reps = example_suite(3).unwrap();
    assert!(mismatches(&example(3).unwrap(), &reps).is_empty());
    let k = reps[0].ratio_left.field();
    let nu = FieldElem::sqrt_d(k); // nu_1 / 18
    let d11 = &report(&reps, 11).difference;
    let p11 = primes_above(11, k).unwrap()[0].clone();
    check(d11, &[
        (ideal(&nu, 3, -1), 2),
        (ideal(&nu, 3, -2), 1),
        (ideal(&nu, 5, -2), -1),
        (ideal(&nu, 5, -3), -1),
        (p11, -1),
        (ideal(&nu, 13, 0), 1),
        (ideal(&nu, 71, -20), -1),
    ]);

    let reps = example_suite(4).unwrap();
    assert!(mismatches(&example(4).unwrap(), &reps).is_empty());
    let r24 = report(&reps, 24);
    let p19 = primes_above(19, k).unwrap()[0].clone();
    // the reference exponents above 3 and 5 (2 and -1, -1) are not reproduced
    check(&r24.difference, &[
        (ideal(&nu, 7, -3), -2),
        (ideal(&nu, 7, -4), -2),
        (ideal(&nu, 13, 0), -2),
        (p19, -1),
        (ideal(&nu, 31, -6), -1),
    ]);
    assert!(!r24.congruent && !r24.hypothesis_ok);
    assert_eq!(r24.common_factor, rat(60951, 444808));
}

#[test]
fn example_5_both_ideals_above_691() {
    let reps = example_suite(5).unwrap();
    assert!(mismatches(&example(5).unwrap(), &reps).is_empty());
    let r22 = report(&reps, 22);
    let b = r22.ratio_left.field();
    let gen = FieldElem::new(b, rat(45, 2), rat(1, 2));
    check(&r22.difference, &[
        (ideal(&gen, 691, 12), 1),
        (ideal(&gen, 691, -658), 1),
        (ideal(&gen, 13, 20), -1),
        (ideal(&gen, 73, 6), 1),
        (ideal(&gen, 23003, -2325), 1),
    ]);
    // the hypothesis fails at 691 (83611 = 121 * 691) yet the congruence holds
    assert!(!r22.hypothesis_ok && r22.congruent);
}

#[test]
fn example_2_all_congruent() {
    let reps = example_suite(2).unwrap();
    assert_eq!(reps.iter().map(|r| r.m).collect::<Vec<_>>(), (21..=28).collect::<Vec<_>>());
    assert!(mismatches(&example(2).unwrap(), &reps).is_empty());
    assert!(example(6).is_err());
}
