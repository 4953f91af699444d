//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rankin_core::arith::{dirichlet_ratio_rational, gcd_u64, int, rat, rational_valuation, DirichletCharacter, Rational};
use rankin_core::congruence::{example, example_suite, mismatches, RatioReport};
use rankin_core::data::{self, BUNDLED_PREC};
use rankin_core::eisenstein::{eisenstein_classical, eisenstein_star, lattice_oracle_error};
use rankin_core::linalg::mat_mul;
use rankin_core::modforms::{eigen_basis_level1_full, eigen_split_level1, BasisKind};
use rankin_core::modsym::{build_space, hecke_matrix, lratio_table, pairing_ratios};
use rankin_core::nearlyhol::{delta_iter, delta_iter_closed, holomorphic_projection, reconstruct, NearlyHoloForm};
use rankin_core::numfield::{primes_above, rational_str, valuation, FieldElem, QuadField};
use rankin_core::qseries::QSeries;
use rankin_core::rankin::{common_factor, common_factor_rational, completed_ratio_eisenstein, critical_points, RankinInput, StandardTable};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn beta0() -> FieldElem {
    FieldElem::new(QuadField::new(144169).unwrap(), int(540), int(12))
}

/// `x beta0 + y`
fn lin(x: Rational, y: Rational) -> FieldElem {
    &beta0().scale(&x) + &FieldElem::rational(y)
}

fn qs(coeffs: &[Rational]) -> QSeries {
    QSeries::from_rationals(coeffs.to_vec())
}

fn eisenstein_anchors() -> Outcome {
    let triv = DirichletCharacter::trivial(1);
    let c = |f: &NearlyHoloForm, n: usize| f.holomorphic_part().coefficient(n).unwrap().to_rational().unwrap();
    let e12 = eisenstein_star(12, 1, &triv, 4).map_err(|e| e.to_string())?;
    let want12 = [rat(65520, 691), rat(134250480, 691), rat(11606736960, 691)];
    ensure((1..4).map(|n| c(&e12, n)).eq(want12.iter().cloned()), "E*_12 coefficients")?;
    let e10 = eisenstein_star(10, 1, &triv, 6).map_err(|e| e.to_string())?;
    let want10 = [-264, -135432, -5196576, -69341448, -515625264].map(int);
    ensure((1..6).map(|n| c(&e10, n)).eq(want10.iter().cloned()), "E*_10 coefficients")?;
    let e2 = eisenstein_star(2, 1, &triv, 3).map_err(|e| e.to_string())?;
    ensure(e2.layer(1) == Some(&QSeries::from_ints(&[-12, 0, 0])), "E*_2 w-coefficient")?;
    ensure(e2.holomorphic_part() == &QSeries::from_ints(&[1, -24, -72]), "E*_2 q-coefficients")?;
    Ok("E*_12, E*_10, E*_2 exact".into())
}

struct Weight24 {
    basis: rankin_core::modforms::SpaceBasis,
    delta: QSeries,
    triv: DirichletCharacter,
}

impl Weight24 {
    fn new() -> Self {
        Weight24 {
            basis: eigen_split_level1(24, 30).unwrap(),
            delta: eigen_split_level1(12, 30).unwrap().elements[0].series.clone(),
            triv: DirichletCharacter::trivial(1),
        }
    }

    fn input<'a>(&'a self, f: &'a str) -> RankinInput<'a> {
        RankinInput { basis: &self.basis, f, g: &self.delta, l: 12, psi: &self.triv }
    }
}

fn projection_anchors(w: &Weight24) -> Outcome {
    let input = w.input("f1");
    let h22 = input.project(22).map_err(|e| e.to_string())?.h0.truncate(4);
    ensure(h22 == qs(&[int(0), rat(-5, 11), rat(-24, 11), rat(-977148, 11)]), format!("m = 22: {h22:?}"))?;
    let h18 = input.project(18).map_err(|e| e.to_string())?.h0.truncate(4);
    ensure(h18 == qs(&[int(0), rat(-5, 24871), rat(10536, 24871), rat(-212004, 3553)]), format!("m = 18: {h18:?}"))?;
    Ok("h0 prefixes at m = 22 and m = 18".into())
}

fn coefficient_anchors(w: &Weight24) -> Outcome {
    let input = w.input("f1");
    let p23 = input.project(23).map_err(|e| e.to_string())?;
    ensure(
        p23.coeffs == vec![lin(rat(-27017, 2390898696), rat(50418272, 99620779)), lin(rat(27017, 2390898696), rat(49202507, 99620779))],
        "m = 23 coefficient pair",
    )?;
    let p22 = input.project(22).map_err(|e| e.to_string())?;
    ensure(
        p22.coeffs == vec![lin(rat(223, 38060616), rat(-365440, 1585859)), lin(rat(-223, 38060616), rat(-355405, 1585859))],
        "m = 22 coefficient pair",
    )?;
    Ok("pairs at m = 23 and m = 22".into())
}

fn completed_ratio_anchors(w: &Weight24) -> Outcome {
    let triv = DirichletCharacter::trivial(1);
    let psi = DirichletCharacter::legendre(3).unwrap();
    ensure(common_factor_rational(24, 12, 22, &triv) == Ok(rat(13650, 83611)), "13650/83611")?;
    let r1 = w.input("f1").completed_ratio(22).map_err(|e| e.to_string())?;
    ensure(r1 == lin(rat(-1, 1905750), rat(51866, 317625)), format!("f1: {r1}"))?;
    let r2 = w.input("f2").completed_ratio(22).map_err(|e| e.to_string())?;
    ensure(r2 == lin(rat(1, 1905750), rat(51686, 317625)), format!("f2: {r2}"))?;
    let table = StandardTable::new(&build_space(24, 1).unwrap(), 2, &beta0()).map_err(|e| e.to_string())?;
    let e = completed_ratio_eisenstein(&table, 12, 22).map_err(|e| e.to_string())?;
    ensure(e == lin(rat(-19153, 3052249200), rat(23359724, 63588525)), format!("Eisenstein: {e}"))?;
    ensure(common_factor_rational(26, 13, 24, &psi) == Ok(rat(60951, 444808)), "60951/444808")?;
    Ok("all four exact".into())
}

fn verdicts() -> Outcome {
    let mut failures = Vec::new();
    let mut run = |id: u32| -> Vec<RatioReport> {
        let reps = example_suite(id).unwrap();
        failures.extend(mismatches(&example(id).unwrap(), &reps).into_iter().map(|m| format!("example {id}: {m}")));
        reps
    };
    let all_congruent = |reps: &[RatioReport], ms: std::ops::RangeInclusive<i64>| ms.clone().all(|m| reps.iter().any(|r| r.m == m && r.congruent));
    let at = |reps: &[RatioReport], m: i64| reps.iter().find(|r| r.m == m).cloned().unwrap();

    let ex1 = run(1);
    let mut checks = vec![(all_congruent(&ex1, 18..=22) && (18..=22).all(|m| at(&ex1, m).valuation() == Some(1)), "example 1 valuation 1 at m = 18..22".to_string())];
    let ex2 = run(2);
    checks.push((all_congruent(&ex2, 21..=28), "example 2 congruent at m = 21..28".into()));
    let ex3 = run(3);
    checks.push((all_congruent(&ex3, 9..=11) && at(&ex3, 11).valuation() == Some(1), "example 3 valuation 1 at m = 11".into()));
    let ex4 = run(4);
    let r24 = at(&ex4, 24);
    checks.push((all_congruent(&ex4, 19..=23), "example 4 congruent at m = 19..23".into()));
    checks.push((r24.valuation() == Some(-2), format!("example 4 m = 24 completed valuation {:?}, expected -2", r24.valuation())));
    checks.push((r24.d_valuation() == Some(1), format!("example 4 m = 24 D-ratio valuation {:?}, expected 1", r24.d_valuation())));
    let ex5 = run(5);
    checks.push((all_congruent(&ex5, 18..=22), "example 5 congruent at m = 18..22".into()));

    failures.extend(checks.into_iter().filter(|(ok, _)| !ok).map(|(_, msg)| msg));
    if failures.is_empty() {
        Ok("examples 1-5".into())
    } else {
        Err(failures.join("; "))
    }
}

const ODD: [(usize, &str, &str); 12] = [
    (1, "0", "1"),
    (3, "-569/18825760800", "-16757416/196101675"),
    (5, "3403/218993544000", "40511069/4562365500"),
    (7, "-147089/17869873190400", "-854671739/744578049600"),
    (9, "6538127/1250891123328000", "10060850717/52120463472000"),
    (11, "-320477/77436117158400", "-169463087/3226504881600"),
    (13, "320477/77436117158400", "169463087/3226504881600"),
    (15, "-6538127/1250891123328000", "-10060850717/52120463472000"),
    (17, "147089/17869873190400", "854671739/744578049600"),
    (19, "-3403/218993544000", "-40511069/4562365500"),
    (21, "569/18825760800", "16757416/196101675"),
    (23, "0", "-1"),
];

const EVEN: [(usize, &str, &str); 11] = [
    (2, "0", "1"),
    (4, "-1/15120000", "-59221/630000"),
    (6, "1/26593920", "12031/1108080"),
    (8, "-1783/80372736000", "-5312293/3348864000"),
    (10, "37/2344204800", "31327/97675200"),
    (12, "-847/60279552000", "-371437/2511648000"),
    (14, "37/2344204800", "31327/97675200"),
    (16, "-1783/80372736000", "-5312293/3348864000"),
    (18, "1/26593920", "12031/1108080"),
    (20, "-1/15120000", "-59221/630000"),
    (22, "0", "1"),
];

fn modsym_anchors() -> Outcome {
    let w5 = lratio_table(&build_space(5, 4).unwrap(), 3, &FieldElem::zero()).map_err(|e| e.to_string())?;
    ensure(w5[&3] == FieldElem::rational(rat(-5, 48)) && w5[&4] == FieldElem::rational(rat(-1, 20)), "weight 5 values")?;
    let raw = pairing_ratios(&build_space(24, 1).unwrap(), 2, &beta0()).map_err(|e| e.to_string())?;
    let p = |s: &str| rational_str::parse(s).unwrap();
    for (m, x, y) in ODD.iter().chain(EVEN.iter()) {
        ensure(raw[m] == lin(p(x), p(y)), format!("table entry m = {m}"))?;
    }
    for m in 1..=23usize {
        let mirror = &raw[&(24 - m)];
        let expect = if m % 2 == 1 { mirror.scale(&int(-1)) } else { mirror.clone() };
        ensure(raw[&m] == expect, format!("symmetry at m = {m}"))?;
    }
    Ok("weight 5 values, 23 table entries, symmetry".into())
}

fn small_series(len: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(-20i64..20, len).prop_map(|v| QSeries::from_ints(&v))
}

fn fail<T: std::fmt::Debug>(e: proptest::test_runner::TestError<T>) -> String {
    format!("{e:?}")
}

fn property_suites() -> Outcome {
    let run = |name: &str, f: &mut dyn FnMut(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config {
            failure_persistence: None,
            ..Config::with_cases(200)
        });
        f(&mut runner).map_err(|e| format!("{name}: {e}"))
    };

    run("delta iterate", &mut |r| {
        r.run(&(small_series(8), 1i64..14, 0usize..6), |(h, lambda, k)| {
            let lhs = delta_iter(lambda, k, &NearlyHoloForm::holomorphic(lambda, h.clone())).unwrap();
            prop_assert_eq!(lhs, delta_iter_closed(lambda, k, &h).unwrap());
            Ok(())
        })
        .map_err(fail)
    })?;
    run("projection reconstruction", &mut |r| {
        r.run(&(proptest::collection::vec(small_series(8), 1..5), 0i64..10), |(layers, extra)| {
            let top = layers.len() - 1;
            let k = 2 * top as i64 + 1 + extra;
            let f = NearlyHoloForm::new(k, layers).unwrap();
            let hs = holomorphic_projection(&f, k, top).unwrap();
            prop_assert_eq!(reconstruct(&hs, k).unwrap(), f);
            Ok(())
        })
        .map_err(fail)
    })?;
    run("derivation", &mut |r| {
        r.run(&(small_series(12), small_series(12)), |(f, g)| {
            let lhs = f.mul(&g).unwrap().d_operator();
            let rhs = f.d_operator().mul(&g).unwrap().add(&f.mul(&g.d_operator()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(fail)
    })?;
    run("Hecke commutativity", &mut |r| {
        r.run(&(2usize..7, 1u64..8), |(k, level)| {
            let s = build_space(k, level).unwrap();
            let ps: Vec<u64> = [2u64, 3, 5, 7].into_iter().filter(|p| level % p != 0).take(2).collect();
            let (a, b) = (hecke_matrix(&s, ps[0]).unwrap(), hecke_matrix(&s, ps[1]).unwrap());
            prop_assert_eq!(mat_mul(&a, &b), mat_mul(&b, &a));
            Ok(())
        })
        .map_err(fail)
    })?;
    let spaces: Vec<_> = data::manifest().unwrap().spaces.keys().map(|n| data::bundled_space(n).unwrap()).collect();
    let top = BUNDLED_PREC as u64;
    let pairs: Vec<(u64, u64)> = (2..top)
        .flat_map(|m| (2..top).map(move |n| (m, n)))
        .filter(|&(m, n)| m * n < top && gcd_u64(m, n) == 1)
        .collect();
    run("multiplicativity", &mut |r| {
        r.run(&(0..pairs.len()), |i| {
            let (m, n) = pairs[i];
            for e in spaces.iter().flat_map(|s| s.elements.iter()).filter(|e| e.kind == BasisKind::Newform) {
                let a = |j: u64| e.series.coefficient(j as usize).unwrap().clone();
                prop_assert_eq!(a(m * n), &a(m) * &a(n));
            }
            Ok(())
        })
        .map_err(fail)
    })?;
    run("split valuations", &mut |r| {
        r.run(&(-500i64..500, -500i64..500, 1i64..50, 0usize..4), |(a, b, den, i)| {
            prop_assume!(a != 0 || b != 0);
            let field = QuadField::new(144169).unwrap();
            let p = [3u64, 5, 7, 11][i];
            let x = FieldElem::new(field, rat(a, den), rat(b, den));
            let total: i64 = primes_above(p, field).unwrap().iter().map(|q| valuation(&x, q).unwrap()).sum();
            prop_assert_eq!(Some(total), rational_valuation(&x.norm(), p));
            Ok(())
        })
        .map_err(fail)
    })?;
    run("zeta ratio positivity", &mut |r| {
        r.run(&(1u64..60, 1i64..20), |(level, half)| {
            let v = dirichlet_ratio_rational(2 * half, &DirichletCharacter::trivial(level)).unwrap();
            prop_assert!(v > int(0));
            Ok(())
        })
        .map_err(fail)
    })?;
    let points: Vec<(i64, i64, i64)> = (6..40)
        .flat_map(|k| (1..k).flat_map(move |l| critical_points(k, l).unwrap().right.map(move |m| (k, l, m))))
        .collect();
    run("pi exponent", &mut |r| {
        r.run(&(0..points.len()), |i| {
            let (k, l, m) = points[i];
            let omega = if (k + l) % 2 == 0 { DirichletCharacter::trivial(1) } else { DirichletCharacter::legendre(3).unwrap() };
            let f = common_factor(k, l, m, &omega).unwrap();
            prop_assert_eq!(f.pi_power, 0);
            Ok(())
        })
        .map_err(fail)
    })?;
    Ok("8 suites x 200 cases".into())
}

fn cross_pipeline() -> Outcome {
    let table = StandardTable::new(&build_space(24, 1).unwrap(), 2, &beta0()).map_err(|e| e.to_string())?;
    let basis = eigen_basis_level1_full(24, 30).map_err(|e| e.to_string())?;
    let e12 = eisenstein_classical(12, 30).map_err(|e| e.to_string())?;
    let triv = DirichletCharacter::trivial(1);
    let input = RankinInput { basis: &basis, f: "f1", g: &e12, l: 12, psi: &triv };
    for m in 18..=22 {
        let projected = input.completed_ratio(m).map_err(|e| e.to_string())?;
        let product = completed_ratio_eisenstein(&table, 12, m).map_err(|e| e.to_string())?;
        ensure(projected == product, format!("m = {m}: {projected} vs {product}"))?;
    }
    Ok("projection and product paths agree at m = 18..22".into())
}

fn lattice_oracle() -> Outcome {
    let triv = DirichletCharacter::trivial(1);
    let psi = DirichletCharacter::legendre(3).unwrap();
    let mut worst: f64 = 0.0;
    for (lambda, level, omega) in [(10, 1, &triv), (12, 1, &triv), (5, 3, &psi)] {
        let err = lattice_oracle_error(lambda, level, omega, 1.0, 400).map_err(|e| e.to_string())?;
        ensure(err < 1e-6, format!("weight {lambda}, level {level}: relative error {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

fn main() {
    std::panic::set_hook(Box::new(|_| {}));
    let w = Weight24::new();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Eisenstein anchors", Box::new(eisenstein_anchors)),
        ("projection anchors", Box::new(|| projection_anchors(&w))),
        ("basis-coefficient anchors", Box::new(|| coefficient_anchors(&w))),
        ("completed-ratio anchors", Box::new(|| completed_ratio_anchors(&w))),
        ("congruence verdicts", Box::new(verdicts)),
        ("modular-symbols anchors", Box::new(modsym_anchors)),
        ("property suites", Box::new(property_suites)),
        ("cross-pipeline consistency", Box::new(cross_pipeline)),
        ("Eisenstein numerical oracle", Box::new(lattice_oracle)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
