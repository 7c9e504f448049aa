use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::Args;
use preproj_core::dot::export_dot_window;
use preproj_core::homology::{omega, Bimodule};
use preproj_core::mesh::{covering_pi, table_check, MeshCategory};
use preproj_core::paths::{graded_quotient, Grading, StopPolicy};
use preproj_core::quiver::height_function;
use preproj_core::relations::{lambda_co_bounded, q_relations_by_vertex, standard_relations};
use preproj_core::{
    build_window, classify, double, lambda_co, lambda_ho, lambda_te, positive_roots, solve_scaling,
    verify_covering_iso, verify_scaling, Check, Error, GradedDimTable, PathElement, QAssignment, Quiver, RunReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::input::{fingerprint, q_assignment, Common, QuiverSource};

pub struct Outcome {
    pub report: RunReport,
    pub text: String,
}

struct Timer {
    enabled: bool,
    laps: BTreeMap<String, u64>,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer { enabled, laps: BTreeMap::new() }
    }

    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps.insert(name.to_string(), start.elapsed().as_millis() as u64);
        }
        out
    }

    fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timings_ms = Some(self.laps);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Construction {
    Co,
    Ho,
    Te,
}

impl Construction {
    fn name(self) -> &'static str {
        match self {
            Construction::Co => "co",
            Construction::Ho => "ho",
            Construction::Te => "te",
        }
    }
}

fn parse_constructions(text: &str) -> Result<Vec<Construction>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        match part {
            "co" => out.push(Construction::Co),
            "ho" => out.push(Construction::Ho),
            "te" => out.push(Construction::Te),
            "all" => out.extend([Construction::Co, Construction::Ho, Construction::Te]),
            other => bail!("unknown construction `{other}` (expected co, ho, te or all)"),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn render_tables(report: &RunReport) -> String {
    let mut out = String::new();
    for (name, t) in &report.tables {
        let _ = writeln!(out, "== {name} ==");
        out.push_str(&t.to_text());
    }
    out
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated list of co, ho, te, or all.
    #[arg(long, default_value = "co")]
    pub construction: String,
    /// q-values for the combinatorial construction, e.g. `a=2,b=-1/3`.
    #[arg(long)]
    pub q: Option<String>,
    /// Arrows missing from `--q` get the value 1.
    #[arg(long)]
    pub q_default_one: bool,
    /// Compute through this degree instead of stopping automatically.
    #[arg(long, value_name = "N")]
    pub max_degree: Option<usize>,
}

pub fn dims(args: &DimsArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let field = args.common.field()?;
    let constructions = parse_constructions(&args.construction)?;
    let qa = q_assignment(&q, field, args.q.as_deref(), args.q_default_one)?;
    let mut report = RunReport::new(
        "dims",
        fingerprint(
            &q,
            &args.common,
            &[
                ("construction", Some(constructions.iter().map(|c| c.name()).collect::<Vec<_>>().join(","))),
                ("q", args.q.clone()),
                ("q-default-one", args.q_default_one.then(|| "true".into())),
                ("max-degree", args.max_degree.map(|n| n.to_string())),
            ],
        ),
    );
    let mut timer = Timer::new(args.common.timings);
    for &c in &constructions {
        let table = timer.time(c.name(), || -> Result<GradedDimTable> {
            Ok(match (c, args.max_degree) {
                (Construction::Co, None) => match lambda_co(&q, qa.as_ref(), field, None) {
                    Err(Error::NeedsExplicitBound) => {
                        bail!("automatic stopping needs Dynkin input; pass --max-degree N")
                    }
                    other => other?.1,
                },
                (Construction::Co, Some(n)) => lambda_co_bounded(&q, qa.as_ref(), field, n)?.1,
                (Construction::Ho, n) => with_bound_hint(lambda_ho(&q, field, n))?,
                (Construction::Te, n) => with_bound_hint(lambda_te(&q, field, n))?,
            })
        })?;
        report.tables.insert(c.name().to_string(), table);
    }
    let names: Vec<&str> = constructions.iter().map(|c| c.name()).collect();
    for w in names.windows(2) {
        let check = table_check(&format!("{} = {}", w[0], w[1]), &report.tables[w[0]], &report.tables[w[1]]);
        report.push(check);
    }
    timer.finish(&mut report);
    let text = render_tables(&report);
    Ok(Outcome { report, text })
}

fn with_bound_hint<T>(r: preproj_core::Result<T>) -> Result<T> {
    match r {
        Err(Error::NeedsExplicitBound) => bail!("automatic stopping needs Dynkin input; pass --max-degree N"),
        other => Ok(other?),
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
    /// Random products checked for associativity.
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    /// Replace the first preprojective relation by one of its terms.
    #[arg(long, hide = true)]
    pub corrupt_relation: bool,
}

/// Standard relations with the first one cut down to a single term.
fn corrupted_table(q: &Quiver, field: preproj_core::Field) -> Result<GradedDimTable> {
    let dq = double(q);
    let mut relations = standard_relations(&dq, field);
    if let Some(first) = relations.first_mut() {
        let (p, c) = first.terms().next().map(|(p, c)| (p.clone(), c.clone())).expect("nonzero relation");
        *first = if first.len() > 1 { PathElement::term(c, p) } else { PathElement::zero(field) };
    }
    let pres = graded_quotient(dq.path_quiver(), &relations, field, StopPolicy::Auto)?;
    Ok(pres.dims(Grading::Star))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let field = args.common.field()?;
    if classify(&q).dynkin_type.is_none() {
        bail!(Error::NotDynkin);
    }
    let mut report = RunReport::new(
        "verify",
        fingerprint(&q, &args.common, &[("samples", Some(args.samples.to_string()))]),
    );
    let mut timer = Timer::new(args.common.timings);
    let (pres, co) = timer.time("co", || lambda_co(&q, None, field, None))?;
    let co = if args.corrupt_relation { corrupted_table(&q, field)? } else { co };
    let minus_one = QAssignment::constant(&q, field.from_i64(-1));
    let (_, co_minus) = timer.time("co_q-1", || lambda_co(&q, Some(&minus_one), field, None))?;
    let ho = timer.time("ho", || lambda_ho(&q, field, None))?;
    let te = timer.time("te", || lambda_te(&q, field, None))?;
    report.push(table_check("co = ho", &co, &ho));
    report.push(table_check("co = te", &co, &te));
    report.push(table_check("co = co(q=-1)", &co, &co_minus));
    let covering = timer.time("covering", || verify_covering_iso(&q, field))?;
    report.extend(covering.checks);

    // Associativity of the quotient product on random basis elements.
    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let basis = pres.basis_paths();
    let mut failures = 0;
    for _ in 0..args.samples {
        let pick = |rng: &mut ChaCha8Rng| {
            let p = basis[rng.gen_range(0..basis.len())].clone();
            PathElement::term(field.from_i64(rng.gen_range(1..=5)), p)
        };
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let left = pres.multiply(&pres.multiply(&x, &y)?, &z)?;
        let right = pres.multiply(&x, &pres.multiply(&y, &z)?)?;
        if left != right {
            failures += 1;
        }
    }
    report.push(Check::new(
        "associativity",
        failures == 0,
        format!("{} random triples, {failures} failures", args.samples),
    ));

    report.tables.insert("co".into(), co);
    report.tables.insert("co_q-1".into(), co_minus);
    report.tables.insert("ho".into(), ho);
    report.tables.insert("te".into(), te);
    timer.finish(&mut report);
    let totals: Vec<String> = report.tables.values().map(|t| t.total().to_string()).collect();
    let text = format!("totals (co, co_q-1, ho, te): {}\n", totals.join("/"));
    Ok(Outcome { report, text })
}

#[derive(Args, Debug)]
pub struct RescaleArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
    /// q-values, e.g. `a=2,b=3`; q ≡ 1 when omitted.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub q_default_one: bool,
}

pub fn rescale(args: &RescaleArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let field = args.common.field()?;
    let qa = q_assignment(&q, field, args.q.as_deref(), args.q_default_one)?
        .unwrap_or_else(|| QAssignment::constant(&q, field.one()));
    let mut report = RunReport::new(
        "rescale",
        fingerprint(
            &q,
            &args.common,
            &[("q", args.q.clone()), ("q-default-one", args.q_default_one.then(|| "true".into()))],
        ),
    );
    let mut timer = Timer::new(args.common.timings);
    let sol = timer.time("solve", || solve_scaling(&q, &qa))?;
    let check = timer.time("verify", || verify_scaling(&q, &qa, &sol));
    for v in &check.vertices {
        report.push(Check::new(format!("vertex {}", v.vertex), v.pass, format!("lambda = {}", v.lambda)));
    }
    if classify(&q).dynkin_type.is_some() {
        let (_, deformed) = timer.time("co_q", || lambda_co(&q, Some(&qa), field, None))?;
        let (_, standard) = timer.time("co", || lambda_co(&q, None, field, None))?;
        report.push(table_check("co(q) = co", &deformed, &standard));
    }
    let labels = q.vertices();
    let as_map = |values: &[preproj_core::Scalar]| -> serde_json::Value {
        labels.iter().zip(values).map(|(v, x)| (v.clone(), json!(x.to_string()))).collect::<serde_json::Map<_, _>>().into()
    };
    report.data.insert("epsilon".into(), as_map(&sol.epsilon));
    report.data.insert("lambda".into(), as_map(&sol.lambda));
    timer.finish(&mut report);
    let mut text = String::from("vertex  epsilon  lambda\n");
    for (i, v) in labels.iter().enumerate() {
        let _ = writeln!(text, "{v}  {}  {}", sol.epsilon[i], sol.lambda[i]);
    }
    Ok(Outcome { report, text })
}

#[derive(Args, Debug)]
pub struct MeshArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
    /// Last column of the window; defaults to the number of vertices.
    #[arg(long, value_name = "N")]
    pub window: Option<usize>,
    /// Write the window as Graphviz DOT.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
}

pub fn mesh(args: &MeshArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let field = args.common.field()?;
    let cols = args.window.unwrap_or(q.vertex_count());
    let mut report = RunReport::new("mesh", fingerprint(&q, &args.common, &[("window", Some(cols.to_string()))]));
    let mut timer = Timer::new(args.common.timings);
    let w = build_window(&q, cols)?;
    let pq = w.path_quiver();
    if let Some(path) = &args.dot {
        std::fs::write(path, export_dot_window(&w))?;
    }

    let mut sigma_ok = true;
    for z in 0..pq.vertex_count() {
        if let Some(tz) = w.tau(z) {
            let mut images: Vec<usize> = pq.incoming(z).iter().filter_map(|&a| w.sigma(a)).collect();
            images.sort();
            let mut out = pq.outgoing(tz).to_vec();
            out.sort();
            sigma_ok &= images == out;
        }
    }
    report.push(Check::new("sigma bijective", sigma_ok, "arrows into z vs arrows out of tau z"));

    let dq = double(&q);
    let sign_free = q_relations_by_vertex(&dq, &QAssignment::constant(&q, field.from_i64(-1)));
    let meshes = w.mesh_relations(field);
    let mut lines = String::new();
    let mut pi_ok = true;
    for m in &meshes {
        let image = covering_pi(&w, &dq, &m.element);
        pi_ok &= sign_free[w.position(m.vertex).1].as_ref() == Some(&image);
        let _ = writeln!(lines, "m{} = {}", pq.vertices()[m.vertex], pq.format_element(&m.element));
    }
    report.push(Check::new("pi(mesh) = sign-free relation", pi_ok, format!("{} meshes", meshes.len())));

    let cat = timer.time("hom", || MeshCategory::new(w.clone(), field))?;
    report.tables.insert("ho".into(), cat.table());
    report.data.insert(
        "window".into(),
        json!({"columns": cols + 1, "vertices": pq.vertex_count(), "arrows": pq.arrow_count(), "meshes": meshes.len()}),
    );
    timer.finish(&mut report);
    let mut text = format!(
        "window [0, {cols}]: {} vertices, {} arrows, {} meshes\n",
        pq.vertex_count(),
        pq.arrow_count(),
        meshes.len()
    );
    text.push_str(&lines);
    text.push_str(&render_tables(&report));
    Ok(Outcome { report, text })
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let mut report = RunReport::new("classify", fingerprint(&q, &args.common, &[]));
    let c = classify(&q);
    let dynkin = c.dynkin_type.map(|t| t.to_string());
    let roots = if c.dynkin_type.is_some() { Some(positive_roots(&q)?) } else { None };
    let heights = height_function(&q).ok().map(|h| h.values().to_vec());
    report.data.insert(
        "classification".into(),
        json!({
            "dynkin_type": dynkin,
            "is_tree": c.is_tree,
            "is_acyclic": c.is_acyclic,
            "positive_roots": roots.as_ref().map(Vec::len),
            "heights": heights,
        }),
    );
    let mut text = format!(
        "type: {}\ntree: {}\nacyclic: {}\n",
        dynkin.as_deref().unwrap_or("not Dynkin"),
        c.is_tree,
        c.is_acyclic
    );
    if let Some(r) = &roots {
        let total: u32 = r.iter().flatten().sum();
        let _ = writeln!(text, "positive roots: {} (coordinate sum {total})", r.len());
    }
    if let Some(h) = &heights {
        let pairs: Vec<String> = q.vertices().iter().zip(h).map(|(v, x)| format!("{v}:{x}")).collect();
        let _ = writeln!(text, "heights: {}", pairs.join(" "));
    }
    Ok(Outcome { report, text })
}

#[derive(Args, Debug)]
pub struct OmegaArgs {
    #[command(flatten)]
    pub source: QuiverSource,
    #[command(flatten)]
    pub common: Common,
}

fn bimodule_table(w: &Bimodule, p: u32) -> GradedDimTable {
    let mut t = GradedDimTable::new(Grading::Star);
    w.add_to_table(&mut t, p);
    t
}

pub fn omega_cmd(args: &OmegaArgs) -> Result<Outcome> {
    let q = args.source.load()?;
    let field = args.common.field()?;
    let mut report = RunReport::new("omega", fingerprint(&q, &args.common, &[]));
    let mut timer = Timer::new(args.common.timings);
    let w = timer.time("omega", || omega(&q, field))?;
    report.push(Check::new("actions commute", w.actions_commute(), "left and right arrow actions"));
    let table = bimodule_table(&w, 1);
    if classify(&q).dynkin_type.is_some() {
        let (_, co) = lambda_co(&q, None, field, None)?;
        let mut degree_one = GradedDimTable::new(Grading::Star);
        for ((i, j), d) in co.degree(1) {
            degree_one.add(&i, &j, 1, d);
        }
        report.push(table_check("omega = co degree 1", &table, &degree_one));
    }
    report.tables.insert("omega".into(), table);
    report.data.insert("omega".into(), w.to_json());
    timer.finish(&mut report);
    let mut text = render_tables(&report);
    let json = w.to_json();
    for a in json["actions"].as_array().into_iter().flatten() {
        let side = a["side"].as_str().unwrap_or_default();
        let idx = if side == "left" { format!("i={}", a["i"].as_str().unwrap_or_default()) } else { format!("j={}", a["j"].as_str().unwrap_or_default()) };
        let _ = writeln!(text, "{side} {} ({idx}): {}", a["arrow"].as_str().unwrap_or_default(), a["matrix"]);
    }
    Ok(Outcome { report, text })
}
