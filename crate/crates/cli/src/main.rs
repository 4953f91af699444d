//! `rankin`: verification of the bundled congruence examples and direct access
//! to the projection, modular-symbol and Sturm-bound computations.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or schema error.

mod refs;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rankin_core::congruence::{self, form_congruence_detail, ratio_congruence_report, Group};
use rankin_core::data::{self, SpaceFile, BUNDLED_PREC};
use rankin_core::modforms::{BasisKind, SpaceBasis};
use rankin_core::modsym::{build_space, lratio_table, pairing_ratios};
use rankin_core::numfield::{primes_above, FieldElem, PrimeIdealRef, QuadField};
use rankin_core::rankin::{critical_points, RankinInput};
use serde_json::json;

#[derive(Parser)]
#[command(name = "rankin", version, about = "Exact Rankin-Selberg L-value ratios and their congruences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute a bundled example and compare with the expected verdicts.
    VerifyExample {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=5))]
        id: u32,
        /// Regenerate the spaces at this q-expansion precision instead of reading the bundled files.
        #[arg(long)]
        prec: Option<usize>,
        /// Read the spaces from this directory, one file per manifest entry.
        #[arg(long, conflicts_with = "prec")]
        data: Option<PathBuf>,
        /// Write the reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ratios L(m)/L(m+1) of one Rankin-Selberg convolution.
    RankinRatio {
        /// Space containing f: a file or a bundled space name.
        #[arg(long)]
        space: String,
        /// Label of f in the space.
        #[arg(long)]
        f: String,
        /// The form g: a form file, SPACE:LABEL, or eisenstein:K.
        #[arg(long)]
        g: String,
        /// Critical points; defaults to all points right of the center.
        #[arg(long, num_args = 1..)]
        m: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized standard L-values D(m, f) from modular symbols.
    ModsymTable {
        #[arg(long)]
        k: usize,
        #[arg(long = "N", alias = "level", default_value_t = 1)]
        level: u64,
        /// Prime for the Hecke operator.
        #[arg(long)]
        p: u64,
        /// Eigenvalue "a,b" meaning a + b sqrt(d), or a rational.
        #[arg(long, allow_hyphen_values = true)]
        ap: String,
        /// Discriminant parameter d of the coefficient field.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        /// Print the pairing ratios without the factorial normalization.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two q-expansions modulo a prime ideal up to the Sturm bound.
    SturmCheck {
        /// A form file, SPACE:LABEL, or eisenstein:K.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        prime: u64,
        /// Square root of d modulo the prime, selecting one split ideal.
        #[arg(long)]
        root: Option<u64>,
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        /// Exit with status 1 unless the verdict is this one.
        #[arg(long, value_enum)]
        expect: Option<Verdict>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Congruences of ratios between every pair of newforms in a user-supplied space.
    Scan {
        #[arg(long)]
        space: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the bundled data files into a directory.
    GenerateData {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = BUNDLED_PREC)]
        prec: usize,
    },
    /// Validate space or form files, optionally writing canonical copies.
    Import {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        into: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Gamma0,
    Gamma1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verdict {
    Congruent,
    Incongruent,
}

/// A computation that ran but disagrees with what was expected of it.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Mismatch>() => {
            eprintln!("mismatch: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::VerifyExample { id, prec, data, out } => verify_example(id, prec, data.as_deref(), out.as_deref()),
        Command::RankinRatio { space, f, g, m, out } => rankin_ratio(&space, &f, &g, &m, out.as_deref()),
        Command::ModsymTable { k, level, p, ap, d, raw, out } => modsym_table(k, level, p, &ap, d, raw, out.as_deref()),
        Command::SturmCheck { a, b, prime, root, group, expect, out } => {
            sturm_check(&a, &b, prime, root, group, expect, out.as_deref())
        }
        Command::Scan { space, g, prime, out } => scan(&space, &g, prime, out.as_deref()),
        Command::GenerateData { out, prec } => generate_data(&out, prec),
        Command::Import { files, into } => import(&files, into.as_deref()),
    }
}

fn write_json(path: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn verify_example(id: u32, prec: Option<usize>, dir: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let ex = congruence::example(id)?;
    let reports = match (prec, dir) {
        (Some(prec), _) => {
            let spaces = data::generate_spaces(prec)?;
            congruence::example_suite_with(id, &|name| {
                spaces
                    .iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| rankin_core::Error::DataMissing(name.to_string()))?
                    .1
                    .basis()
            })?
        }
        (None, Some(dir)) => {
            let manifest = data::manifest()?;
            congruence::example_suite_with(id, &|name| {
                let file = manifest
                    .spaces
                    .get(name)
                    .ok_or_else(|| rankin_core::Error::DataMissing(name.to_string()))?;
                data::load_space(&dir.join(file))
            })?
        }
        (None, None) => congruence::example_suite(id)?,
    };
    let mismatches = congruence::mismatches(&ex, &reports);
    print!("{}", render::example(&ex, &reports));
    write_json(
        out,
        &json!({
            "example": ex.id,
            "title": ex.title,
            "ideals": ex.ideals,
            "expectations": ex.expectations,
            "reports": reports,
            "mismatches": mismatches,
        }),
    )?;
    if let Some(first) = mismatches.first() {
        bail!(Mismatch(first.clone()));
    }
    println!("all expected verdicts reproduce");
    Ok(())
}

fn rankin_ratio(space: &str, f: &str, g: &str, ms: &[i64], out: Option<&Path>) -> Result<()> {
    let basis = refs::space(space)?;
    basis.get(f)?;
    let g = refs::form(g, basis.prec())?;
    let input = RankinInput {
        basis: &basis,
        f,
        g: &g.series,
        l: g.weight,
        psi: &g.character,
    };
    let ms: Vec<i64> = if ms.is_empty() {
        critical_points(basis.weight, g.weight)?.right.filter(|m| m + 1 < basis.weight).collect()
    } else {
        ms.to_vec()
    };
    let mut rows = Vec::new();
    for &m in ms.iter() {
        let completed = input.completed_ratio(m)?;
        let d = input.d_ratio(m)?;
        println!("m = {m}");
        println!("  L(m)/L(m+1) = {completed}");
        println!("  D(m)/D(m+1) = {d}");
        rows.push(json!({ "m": m, "completed_ratio": completed, "d_ratio": d }));
    }
    write_json(out, &json!({ "f": f, "g": g.label, "ratios": rows }))
}

fn modsym_table(k: usize, level: u64, p: u64, ap: &str, d: Option<i64>, raw: bool, out: Option<&Path>) -> Result<()> {
    let field = match d {
        Some(d) => QuadField::new(d)?,
        None => QuadField::Rational,
    };
    let ap = FieldElem::parse_pair(ap, field)?;
    let space = build_space(k, level)?;
    let table = if raw {
        pairing_ratios(&space, p, &ap)?
    } else {
        lratio_table(&space, p, &ap)?
    };
    print!("{}", render::standard_table(&table, raw));
    let rows: Vec<_> = table.iter().map(|(m, v)| json!({ "m": m, "value": v })).collect();
    write_json(out, &json!({ "k": k, "level": level, "p": p, "ap": ap, "raw": raw, "table": rows }))
}

fn ideals(field: QuadField, prime: u64, root: Option<u64>) -> Result<Vec<PrimeIdealRef>> {
    Ok(match root {
        Some(r) => vec![PrimeIdealRef::split(field, prime, r)?],
        None => primes_above(prime, field)?,
    })
}

fn sturm_check(
    a: &str,
    b: &str,
    prime: u64,
    root: Option<u64>,
    group: Option<GroupArg>,
    expect: Option<Verdict>,
    out: Option<&Path>,
) -> Result<()> {
    let fa = refs::form(a, BUNDLED_PREC)?;
    let fb = refs::form(b, BUNDLED_PREC)?;
    if fa.weight != fb.weight {
        bail!("weights differ: {} and {}", fa.weight, fb.weight);
    }
    let level = num_integer::lcm(fa.level, fb.level);
    let group = match group {
        Some(GroupArg::Gamma0) => Group::Gamma0,
        Some(GroupArg::Gamma1) => Group::Gamma1,
        None if fa.character.is_trivial() && fb.character.is_trivial() => Group::Gamma0,
        None => Group::Gamma1,
    };
    let field = fa.series.field().join(fb.series.field())?;
    let mut rows = Vec::new();
    let mut all = true;
    for ideal in ideals(field, prime, root)? {
        let detail = form_congruence_detail(&fa.series, &fb.series, &ideal, fa.weight, level, group)?;
        print!("{}", render::sturm(&ideal, &detail));
        all &= detail.congruent;
        rows.push(json!({ "ideal": ideal, "result": detail }));
    }
    let verdict = if all { Verdict::Congruent } else { Verdict::Incongruent };
    println!("{} {} {}", fa.label, if all { "is congruent to" } else { "is not congruent to" }, fb.label);
    write_json(out, &json!({ "a": fa.label, "b": fb.label, "weight": fa.weight, "level": level, "checks": rows }))?;
    if expect.is_some_and(|e| e != verdict) {
        bail!(Mismatch("verdict differs from --expect".into()));
    }
    Ok(())
}

fn newform_labels(basis: &SpaceBasis) -> Vec<String> {
    basis
        .elements
        .iter()
        .filter(|e| e.kind == BasisKind::Newform)
        .map(|e| e.label.clone())
        .collect()
}

fn scan(space: &str, g: &str, prime: u64, out: Option<&Path>) -> Result<()> {
    let basis = refs::space(space)?;
    let g = refs::form(g, basis.prec())?;
    let labels = newform_labels(&basis);
    let field = basis
        .elements
        .iter()
        .try_fold(g.series.field(), |f, e| f.join(e.series.field()))?;
    let ideals = primes_above(prime, field)?;
    let ms: Vec<i64> = critical_points(basis.weight, g.weight)?
        .right
        .filter(|m| m + 1 < basis.weight)
        .collect();
    let mut rows = Vec::new();
    for (i, f1) in labels.iter().enumerate() {
        for f2 in &labels[i + 1..] {
            let left = RankinInput {
                basis: &basis,
                f: f1,
                g: &g.series,
                l: g.weight,
                psi: &g.character,
            };
            let right = RankinInput { f: f2, ..left };
            for &m in &ms {
                let r = ratio_congruence_report(&left, &right, m, &ideals)?;
                println!(
                    "{f1} {f2} m = {m}: {} (valuation {})",
                    if r.congruent { "congruent" } else { "not congruent" },
                    render::valuations(&r.valuations)
                );
                rows.push(json!({ "f1": f1, "f2": f2, "report": r }));
            }
        }
    }
    write_json(out, &json!({ "g": g.label, "prime": prime, "results": rows }))
}

fn write_pretty<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn generate_data(out: &Path, prec: usize) -> Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let manifest = data::generated_manifest();
    for (name, file) in data::generate_spaces(prec)? {
        let path = out.join(&manifest.spaces[&name]);
        write_pretty(&path, &file)?;
        println!("wrote {}", path.display());
    }
    write_pretty(&out.join("manifest.json"), &manifest)?;
    println!("wrote {}", out.join("manifest.json").display());
    Ok(())
}

fn import(files: &[PathBuf], into: Option<&Path>) -> Result<()> {
    if let Some(dir) = into {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for path in files {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let target = into.and_then(|dir| path.file_name().map(|n| dir.join(n)));
        if value.get("elements").is_some() {
            let file: SpaceFile = serde_json::from_value(value).map_err(rankin_core::Error::from)?;
            let basis = file.basis().with_context(|| format!("validating {}", path.display()))?;
            println!(
                "{}: space of weight {}, level {}, {} elements, precision {}",
                path.display(),
                basis.weight,
                basis.level,
                basis.dim(),
                basis.prec()
            );
            if let Some(t) = target {
                write_pretty(&t, &file)?;
            }
        } else {
            let file: data::FormFile = serde_json::from_value(value).map_err(rankin_core::Error::from)?;
            let e = file.element().with_context(|| format!("validating {}", path.display()))?;
            println!(
                "{}: form {} of weight {}, level {}, precision {}",
                path.display(),
                e.label,
                file.weight,
                file.level,
                e.series.prec()
            );
            if let Some(t) = target {
                write_pretty(&t, &file)?;
            }
        }
    }
    Ok(())
}
