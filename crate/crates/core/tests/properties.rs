//! Randomized checks on the assembled ratios and the abelian L-value ratios.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Signed;
use proptest::prelude::*;
use rankin_core::arith::{dirichlet_ratio_rational, DirichletCharacter};
use rankin_core::modforms::eigen_split_level1;
use rankin_core::modsym::build_space;
use rankin_core::rankin::{common_factor, completed_ratio_eisenstein, critical_points, StandardTable};

/// Level-one weights with a single rational eigenform.
const WEIGHTS: [i64; 6] = [12, 16, 18, 20, 22, 26];

fn tables() -> &'static BTreeMap<i64, StandardTable> {
    static TABLES: OnceLock<BTreeMap<i64, StandardTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        WEIGHTS
            .iter()
            .map(|&k| {
                let f = eigen_split_level1(k, 12).unwrap();
                let a2 = f.elements[0].series.coefficient(2).unwrap().clone();
                let space = build_space(k as usize, 1).unwrap();
                (k, StandardTable::new(&space, 2, &a2).unwrap())
            })
            .collect()
    })
}

fn right_critical_points() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for k in 6..40 {
        for l in 1..k {
            out.extend(critical_points(k, l).unwrap().right.map(|m| (k, l, m)));
        }
    }
    out
}

/// Whether `D(m+1, f) D(m-l+2, f)` contains the central value, which vanishes
/// for level one and `k = 2 (mod 4)`.
fn hits_vanishing_center(k: i64, l: i64, m: i64) -> bool {
    k % 4 == 2 && (m + 1 == k / 2 || m - l + 2 == k / 2)
}

/// `(k, l, m)` where the product formula reaches only critical standard values.
fn product_points() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for k in WEIGHTS {
        for l in (4..k).step_by(2) {
            out.extend((l..k - 1).filter(|m| 2 * m + 2 - k - l >= 2).map(|m| (k, l, m)));
        }
    }
    out
}

#[test]
fn vanishing_central_values_are_reported() {
    let points: Vec<_> = product_points().into_iter().filter(|&(k, l, m)| hits_vanishing_center(k, l, m)).collect();
    assert!(!points.is_empty());
    for (k, l, m) in points {
        let r = completed_ratio_eisenstein(&tables()[&k], l, m);
        assert_eq!(r, Err(rankin_core::Error::DivisionByZero), "{k} {l} {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zeta_ratios_are_positive(level in 1u64..60, half in 1i64..20) {
        let r = dirichlet_ratio_rational(2 * half, &DirichletCharacter::trivial(level)).unwrap();
        prop_assert!(r.is_positive());
    }

    #[test]
    fn common_factors_are_free_of_pi(i in 0usize..10_000) {
        let points = right_critical_points();
        let (k, l, m) = points[i % points.len()];
        let omega = if (k + l) % 2 == 0 {
            DirichletCharacter::trivial(1)
        } else {
            DirichletCharacter::legendre(3).unwrap()
        };
        let f = common_factor(k, l, m, &omega).unwrap();
        prop_assert_eq!(f.pi_power, 0);
        prop_assert!(f.exact().is_ok());
    }

    #[test]
    fn eisenstein_products_are_free_of_pi(i in 0usize..10_000) {
        let points = product_points();
        let (k, l, m) = points[i % points.len()];
        prop_assume!(!hits_vanishing_center(k, l, m));
        let v = completed_ratio_eisenstein(&tables()[&k], l, m).unwrap();
        // a rational eigenform gives a rational value
        prop_assert!(v.is_rational());
    }
}
