//! Human-readable tables for standard output.

use std::collections::BTreeMap;
use std::fmt::Write;

use rankin_core::congruence::{Example, FormCongruence, IdealValuation, RatioReport};
use rankin_core::numfield::{FieldElem, PrimeIdealRef};

fn valuation(v: Option<i64>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

pub fn valuations(vs: &[IdealValuation]) -> String {
    vs.iter().map(|v| valuation(v.valuation)).collect::<Vec<_>>().join(", ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn example(ex: &Example, reports: &[RatioReport]) -> String {
    let mut s = String::new();
    let ideals: Vec<String> = ex.ideals.iter().map(ToString::to_string).collect();
    writeln!(s, "example {}: {}", ex.id, ex.title).unwrap();
    writeln!(s, "ideals: {}", ideals.join(", ")).unwrap();
    writeln!(s, "{:>3}  {:<9}  {:<10}  {:<10}  {:<10}  common factor", "m", "congruent", "v(L diff)", "v(D diff)", "hypothesis").unwrap();
    for r in reports {
        writeln!(
            s,
            "{:>3}  {:<9}  {:<10}  {:<10}  {:<10}  {}",
            r.m,
            yes_no(r.congruent),
            valuations(&r.valuations),
            valuations(&r.d_valuations),
            yes_no(r.hypothesis_ok),
            r.common_factor
        )
        .unwrap();
    }
    for r in reports {
        writeln!(s, "m = {}", r.m).unwrap();
        writeln!(s, "  left  L(m)/L(m+1) = {}", r.ratio_left).unwrap();
        writeln!(s, "  right L(m)/L(m+1) = {}", r.ratio_right).unwrap();
        writeln!(s, "  difference        = {}", r.difference).unwrap();
    }
    s
}

pub fn standard_table(table: &BTreeMap<usize, FieldElem>, raw: bool) -> String {
    let mut s = String::new();
    let (odd, even) = if raw {
        ("c_m / c_1", "d_m / d_2")
    } else {
        ("D(m) / ((-2 pi i)^(m-1) D(1))", "D(m) / ((-2 pi i)^(m-2) D(2))")
    };
    for (parity, head) in [(1, odd), (0, even)] {
        writeln!(s, "{:>3}  {head}", "m").unwrap();
        for (m, v) in table.iter().filter(|(m, _)| *m % 2 == parity) {
            writeln!(s, "{m:>3}  {v}").unwrap();
        }
    }
    s
}

pub fn sturm(ideal: &PrimeIdealRef, d: &FormCongruence) -> String {
    let mut s = String::new();
    writeln!(s, "ideal {ideal}: Sturm bound {}", d.bound).unwrap();
    for (n, v) in d.valuations.iter().enumerate() {
        writeln!(s, "  n = {n}: valuation {}", valuation(*v)).unwrap();
    }
    writeln!(s, "  {}", if d.congruent { "congruent" } else { "not congruent" }).unwrap();
    s
}
