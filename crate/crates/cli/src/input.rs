use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use preproj_core::report::InputFingerprint;
use preproj_core::{generate, parse_quiver, Field, QAssignment, Quiver};

#[derive(Args, Debug, Clone)]
pub struct QuiverSource {
    /// Quiver description file (`vertex`, `arrow a : s -> t`, or a generator line).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["kind", "rank"])]
    pub quiver: Option<PathBuf>,
    /// Dynkin type to generate.
    #[arg(long = "type", value_name = "A|D|E", requires = "rank")]
    pub kind: Option<String>,
    #[arg(long, value_name = "N", requires = "kind")]
    pub rank: Option<usize>,
    /// linear|alternating for A, inward|outward for D, standard for E.
    #[arg(long, requires = "kind")]
    pub orientation: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `q` for the rationals, `fp:<p>` for a prime field.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    pub timings: bool,
}

impl QuiverSource {
    pub fn load(&self) -> Result<Quiver> {
        match (&self.quiver, &self.kind, self.rank) {
            (Some(path), _, _) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(parse_quiver(&text).with_context(|| format!("parsing {}", path.display()))?)
            }
            (None, Some(kind), Some(rank)) => {
                let kind = kind.to_uppercase();
                let orientation = match (&self.orientation, kind.as_str()) {
                    (Some(o), _) => o.clone(),
                    (None, "A") => "linear".into(),
                    (None, "D") => "inward".into(),
                    (None, _) => "standard".into(),
                };
                Ok(generate(&format!("{kind} {rank} {orientation}"))?)
            }
            _ => bail!("give either --quiver <file> or --type <A|D|E> --rank <n>"),
        }
    }
}

impl Common {
    pub fn field(&self) -> Result<Field> {
        Ok(self.field.parse::<Field>()?)
    }
}

/// q-values from `--q`; `None` when no values were given.
pub fn q_assignment(q: &Quiver, field: Field, text: Option<&str>, default_one: bool) -> Result<Option<QAssignment>> {
    match text {
        None => Ok(None),
        Some(t) => Ok(Some(QAssignment::parse(q, field, t, default_one)?)),
    }
}

pub fn fingerprint(q: &Quiver, common: &Common, options: &[(&str, Option<String>)]) -> InputFingerprint {
    let mut map = BTreeMap::new();
    map.insert("seed".to_string(), common.seed.to_string());
    for (k, v) in options {
        if let Some(v) = v {
            map.insert(k.to_string(), v.clone());
        }
    }
    InputFingerprint { quiver: q.to_text(), field: common.field.clone(), options: map }
}
