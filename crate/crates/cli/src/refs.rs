//! Resolution of the space and form arguments accepted on the command line.
//!
//! A space is a file path or the name of a bundled space. A form is one of
//! `eisenstein:K` (the level-one series with `a(n) = sigma_{K-1}(n)`),
//! `SPACE:LABEL` (an element of a space), or the path of a single-form file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use rankin_core::data;
use rankin_core::eisenstein::eisenstein_classical;
use rankin_core::modforms::SpaceBasis;
use rankin_core::{DirichletCharacter, QSeries};

pub struct Form {
    pub label: String,
    pub series: QSeries,
    pub weight: i64,
    pub level: u64,
    pub character: DirichletCharacter,
}

pub fn space(arg: &str) -> Result<SpaceBasis> {
    let path = Path::new(arg);
    if path.is_file() {
        return data::load_space(path).with_context(|| format!("loading {arg}"));
    }
    let manifest = data::manifest()?;
    if manifest.spaces.contains_key(arg) {
        return Ok(data::bundled_space(arg)?);
    }
    let names: Vec<&str> = manifest.spaces.keys().map(String::as_str).collect();
    bail!("{arg} is neither a file nor a bundled space ({})", names.join(", "))
}

pub fn form(arg: &str, prec: usize) -> Result<Form> {
    if let Some(k) = arg.strip_prefix("eisenstein:") {
        let k: i64 = k.parse().with_context(|| format!("weight in {arg}"))?;
        return Ok(Form {
            label: arg.to_string(),
            series: eisenstein_classical(k, prec)?,
            weight: k,
            level: 1,
            character: DirichletCharacter::trivial(1),
        });
    }
    if let Some((s, label)) = arg.rsplit_once(':') {
        if !Path::new(arg).is_file() {
            let basis = space(s)?;
            let e = basis.get(label)?;
            return Ok(Form {
                label: label.to_string(),
                series: e.series.clone(),
                weight: basis.weight,
                level: basis.level,
                character: e.character.clone(),
            });
        }
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    let file: data::FormFile = serde_json::from_str(&text).map_err(rankin_core::Error::from)?;
    let e = file.element()?;
    Ok(Form {
        label: e.label,
        series: e.series,
        weight: file.weight,
        level: file.level,
        character: e.character,
    })
}
