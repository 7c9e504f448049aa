//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! throughout. Exits nonzero if any criterion fails.

mod support;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use preproj_core::homology::{
    ext1, hom_rep, omega, omega_powers, projective, tau_minus, tensor, Representation,
};
use preproj_core::linalg::{kernel, rank};
use preproj_core::mesh::first_zero_degree;
use preproj_core::paths::{enumerate_paths, Grading};
use preproj_core::{
    build_window, classify, lambda_co, lambda_ho, lambda_te, solve_scaling, verify_covering_iso, verify_scaling,
    Error, Field, GradedDimTable, PathElement, QAssignment, Quiver,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

type Outcome = Result<String, String>;

const SEED: u64 = 0x5eed_0001;
const Q: Field = Field::Rational;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(name: &str, left: &GradedDimTable, right: &GradedDimTable) -> Result<(), String> {
    match left.first_difference(right) {
        None => Ok(()),
        Some(d) => Err(format!("{name}: first difference at {d}")),
    }
}

fn three_tables(q: &Quiver) -> Result<[GradedDimTable; 3], String> {
    let (_, co) = lambda_co(q, None, Q, None).map_err(|e| format!("co: {e}"))?;
    let ho = lambda_ho(q, Q, None).map_err(|e| format!("ho: {e}"))?;
    let te = lambda_te(q, Q, None).map_err(|e| format!("te: {e}"))?;
    Ok([co, ho, te])
}

fn agree(label: &str, q: &Quiver) -> Result<GradedDimTable, String> {
    let [co, ho, te] = three_tables(q)?;
    same(&format!("{label} co vs ho"), &co, &ho)?;
    same(&format!("{label} co vs te"), &co, &te)?;
    Ok(co)
}

fn a2_golden() -> Outcome {
    let mut golden = GradedDimTable::new(Grading::Star);
    golden.add("1", "1", 0, 1);
    golden.add("2", "2", 0, 1);
    golden.add("1", "2", 0, 1);
    golden.add("2", "1", 1, 1);
    let co = agree("A2", &quiver("A 2 linear"))?;
    same("A2 co vs golden", &co, &golden)?;
    ensure(co.total() == 4, || format!("total {}", co.total()))?;
    Ok("co = ho = te = hand table, total 4".into())
}

fn a3_golden() -> Outcome {
    let q = quiver("A 3 linear");
    let co = agree("A3", &q)?;
    let totals: Vec<usize> = co.degree_totals().into_values().collect();
    ensure(totals == [6, 3, 1], || format!("degree totals {totals:?}"))?;
    let p1: Vec<(String, String)> = co.degree(1).into_keys().collect();
    let want: Vec<(String, String)> =
        [("2", "1"), ("2", "2"), ("3", "2")].iter().map(|(i, j)| (i.to_string(), j.to_string())).collect();
    ensure(p1 == want, || format!("degree 1 entries {p1:?}"))?;
    let p2: Vec<((String, String), usize)> = co.degree(2).into_iter().collect();
    ensure(p2 == [(("3".to_string(), "1".to_string()), 1)], || format!("degree 2 entries {p2:?}"))?;
    ensure(root_height_sum(&q) == 10, || "positive roots of A3 do not sum to 10".into())?;
    Ok("totals 6/3/1, entries as expected, co = ho = te".into())
}

fn equivalence_suite() -> Outcome {
    let inputs = ["A 1 linear", "A 2 linear", "A 3 linear", "A 4 linear", "A 5 linear", "D 4 inward", "D 5 inward", "E 6 standard"];
    for req in inputs {
        let q = quiver(req);
        agree(req, &q)?;
        let report = verify_covering_iso(&q, Q).map_err(|e| format!("{req}: {e}"))?;
        if let Some(c) = report.checks.iter().find(|c| !c.pass) {
            return Err(format!("{req}: {} failed: {}", c.name, c.detail));
        }
        ensure(report.checks.len() == 5, || format!("{req}: {} covering checks", report.checks.len()))?;
    }
    Ok(format!("{} quivers: tables agree, covering and q=-1 bridge verified", inputs.len()))
}

fn total_dimension_oracle() -> Outcome {
    for n in 1..=5usize {
        let q = quiver(&format!("A {n} linear"));
        let (_, co) = lambda_co(&q, None, Q, None).map_err(|e| e.to_string())?;
        let formula = n * (n + 1) * (n + 2) / 6;
        ensure(co.total() == formula, || format!("A{n}: total {} vs {formula}", co.total()))?;
        ensure(root_height_sum(&q) == formula, || format!("A{n}: root sum {} vs {formula}", root_height_sum(&q)))?;
    }
    let d4 = quiver("D 4 inward");
    let (_, co) = lambda_co(&d4, None, Q, None).map_err(|e| e.to_string())?;
    ensure(co.total() == 28 && root_height_sum(&d4) == 28, || format!("D4: total {}", co.total()))?;

    let mut checked = 0;
    for req in ["A 3 linear", "A 4 linear", "D 4 inward"] {
        let base = quiver(req);
        let (pres, _) = lambda_co(&base, None, Q, None).map_err(|e| e.to_string())?;
        let reference = pres.dims(Grading::Length);
        for q in all_orientations(&base) {
            let (pres, co) = lambda_co(&q, None, Q, None).map_err(|e| e.to_string())?;
            same(&format!("{req} reoriented, length grading"), &pres.dims(Grading::Length), &reference)?;
            let ho = lambda_ho(&q, Q, None).map_err(|e| e.to_string())?;
            let te = lambda_te(&q, Q, None).map_err(|e| e.to_string())?;
            ensure(co.total() == reference.total() && ho.total() == co.total() && te.total() == co.total(), || {
                format!("{req} reoriented: totals {}/{}/{}", co.total(), ho.total(), te.total())
            })?;
            checked += 1;
        }
    }
    Ok(format!("A1..A5 and D4 match n(n+1)(n+2)/6, 28 and root sums; {checked} orientations agree"))
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fp = Field::prime(1009).map_err(|e| e.to_string())?;
    let bases = [quiver("A 5 linear"), quiver("D 5 inward")];
    let mut runs = 0;
    for (field, count) in [(fp, 100), (Q, 20)] {
        let mut standard = BTreeMap::new();
        for _ in 0..count {
            let q = random_orientation(&bases[rng.gen_range(0..2)], &mut rng);
            let values: Vec<_> = (0..q.arrows().len()).map(|_| random_unit(field, &mut rng)).collect();
            let map = q.arrows().iter().map(|a| a.id.clone()).zip(values).collect();
            let qa = QAssignment::from_map(&q, field, &map, false).map_err(|e| e.to_string())?;
            let sol = solve_scaling(&q, &qa).map_err(|e| e.to_string())?;
            let report = verify_scaling(&q, &qa, &sol);
            ensure(report.pass, || format!("{}: scaling fails at {:?}", q.to_text(), report.first_failure()))?;
            ensure(sol.lambda.iter().all(|l| !l.is_zero()), || "zero λ".into())?;
            let key = q.to_text();
            if !standard.contains_key(&key) {
                let (_, t) = lambda_co(&q, None, field, None).map_err(|e| e.to_string())?;
                standard.insert(key.clone(), t);
            }
            let (_, deformed) = lambda_co(&q, Some(&qa), field, None).map_err(|e| e.to_string())?;
            same("q-deformed vs standard", &deformed, &standard[&key])?;
            runs += 1;
        }
    }
    let q = bases[0].clone();
    let mut map: BTreeMap<String, _> = q.arrows().iter().map(|a| (a.id.clone(), Q.one())).collect();
    map.insert(q.arrows()[2].id.clone(), Q.zero());
    let qa = QAssignment::from_map(&q, Q, &map, false).map_err(|e| e.to_string())?;
    match solve_scaling(&q, &qa) {
        Err(Error::ZeroQValue(a)) if a == q.arrows()[2].id => {}
        other => return Err(format!("zero q-value accepted: {other:?}")),
    }
    Ok(format!("{runs} random q (100 over F_1009, 20 over Q) rescale and keep tables; zero q rejected"))
}

fn oracle_triangle() -> Outcome {
    let mut inputs: Vec<Quiver> = DYNKIN_UP_TO_6.iter().map(|r| quiver(r)).collect();
    inputs.push(quiver("A 5 alternating"));
    inputs.push(quiver("D 5 outward"));
    let mut degrees = 0;
    for q in &inputs {
        let name = q.name().unwrap_or("Q").to_string();
        let n = q.vertex_count();
        let ho = lambda_ho(q, Q, None).map_err(|e| e.to_string())?;
        let powers = omega_powers(q, Q, None).map_err(|e| e.to_string())?;
        let p0 = first_zero_degree(&ho).unwrap() as usize;
        ensure(powers.len() == p0 + 1 && powers[p0].is_zero(), || {
            format!("{name}: mesh vanishes at {p0}, tensor powers at {}", powers.len() - 1)
        })?;
        let mut orbits: Vec<Representation> =
            (0..n).map(|j| projective(q, Q, j)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for (p, w) in powers.iter().enumerate() {
            for j in 0..n {
                for i in 0..n {
                    let pi = projective(q, Q, i).map_err(|e| e.to_string())?;
                    let via_tau = hom_rep(&pi, &orbits[j]).map_err(|e| e.to_string())?.dim();
                    let via_mesh = ho.get(q.vertex_label(i), q.vertex_label(j), p as u32);
                    let via_tensor = w.dim(j, i);
                    ensure(via_tau == via_mesh && via_mesh == via_tensor && via_tau == orbits[j].dim_at(i), || {
                        format!("{name} (i,j,p)=({},{},{p}): mesh {via_mesh}, tau {via_tau}, tensor {via_tensor}",
                            q.vertex_label(i), q.vertex_label(j))
                    })?;
                }
            }
            orbits = orbits.iter().map(tau_minus).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            degrees += 1;
        }
        ensure(orbits.iter().all(Representation::is_zero), || format!("{name}: τ⁻ orbit does not vanish"))?;
    }
    Ok(format!("{} quivers, {degrees} degrees: mesh = Hom(P_i, τ^-p P_j) = Ω^p, same vanishing degree", inputs.len()))
}

fn invariant_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let fp = Field::prime(1009).map_err(|e| e.to_string())?;
    let mut counts = BTreeMap::new();
    let mut bump = |k: &'static str| *counts.entry(k).or_insert(0usize) += 1;

    // Rank-nullity.
    for _ in 0..60 {
        let field = if rng.gen() { Q } else { fp };
        let (r, c) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let m = random_matrix(field, r, c, &mut rng);
        let k = kernel(&m);
        ensure(rank(&m) + k.dim() == c, || format!("rank-nullity fails on\n{m}"))?;
        ensure(k.basis.iter().all(|v| m.apply(v).iter().all(|x| x.is_zero())), || "kernel vector not annihilated".into())?;
        bump("rank-nullity");
    }

    let dynkin: Vec<Quiver> = ["A 3 linear", "A 4 alternating", "D 4 inward", "D 5 outward", "E 6 standard"].iter().map(|r| quiver(r)).collect();
    for q in &dynkin {
        let name = q.name().unwrap_or("Q").to_string();
        let n = q.vertex_count();

        // σ is a bijection from arrows into z to arrows out of τz.
        let w = build_window(q, 3).map_err(|e| e.to_string())?;
        let pq = w.path_quiver();
        for z in 0..pq.vertex_count() {
            if let Some(tz) = w.tau(z) {
                let mut images: Vec<usize> = pq.incoming(z).iter().map(|&a| w.sigma(a).unwrap()).collect();
                images.sort();
                let mut out = pq.outgoing(tz).to_vec();
                out.sort();
                ensure(images == out, || format!("{name}: σ not bijective at {}", pq.vertices()[z]))?;
            }
        }
        bump("sigma bijectivity");

        // Degree 0 equals path counts in every construction.
        let [co, ho, te] = three_tables(q)?;
        for t in [&co, &ho, &te] {
            for i in 0..n {
                for j in 0..n {
                    ensure(t.get(q.vertex_label(i), q.vertex_label(j), 0) == q.path_count(i, j), || {
                        format!("{name}: degree 0 entry ({i},{j}) is not the path count")
                    })?;
                }
            }
        }
        bump("degree-0 path counts");

        // Vanishing propagation.
        let (pres, _) = lambda_co(q, None, Q, None).map_err(|e| e.to_string())?;
        let l = pres.vanishing_length().ok_or("no vanishing length")?;
        ensure(pres.vanishes_at(l) == Ok(true) && pres.vanishes_at(l + 1) == Ok(true), || {
            format!("{name}: quotient reappears after length {l}")
        })?;
        let om = omega(q, Q).map_err(|e| e.to_string())?;
        let powers = omega_powers(q, Q, None).map_err(|e| e.to_string())?;
        let extra = tensor(&om, powers.last().unwrap()).map_err(|e| e.to_string())?;
        ensure(extra.is_zero(), || format!("{name}: tensor power after the zero one is nonzero"))?;
        bump("vanishing propagation");

        // Bimodule actions commute.
        ensure(om.actions_commute() && powers.iter().all(|p| p.actions_commute()), || {
            format!("{name}: left and right actions do not commute")
        })?;
        bump("bimodule commutation");

        // Normal forms are idempotent and differ from the input by an ideal element.
        let dq = preproj_core::double(q);
        for _ in 0..10 {
            let i = q.vertex_label(rng.gen_range(0..n)).to_string();
            let j = q.vertex_label(rng.gen_range(0..n)).to_string();
            let len = rng.gen_range(0..=l);
            let paths = enumerate_paths(dq.path_quiver(), &i, &j, len).map_err(|e| e.to_string())?;
            let x = PathElement::from_terms(Q, paths.into_iter().map(|p| (Q.from_i64(rng.gen_range(-3..=3)), p)));
            let nf = pres.normal_form(&x).map_err(|e| e.to_string())?;
            ensure(pres.normal_form(&nf).map_err(|e| e.to_string())? == nf, || format!("{name}: nf not idempotent"))?;
            ensure(pres.in_ideal(&x.sub(&nf)).map_err(|e| e.to_string())?, || format!("{name}: x - nf(x) outside ideal"))?;
        }
        bump("normal-form idempotence");

        // Hom from a projective reads off the vertex space; Ext from a
        // projective vanishes and Ext is additive.
        for _ in 0..50 {
            let m = random_representation(q, Q, 2, &mut rng);
            for i in 0..n {
                let pi = projective(q, Q, i).map_err(|e| e.to_string())?;
                ensure(hom_rep(&pi, &m).map_err(|e| e.to_string())?.dim() == m.dim_at(i), || {
                    format!("{name}: dim Hom(P_{i}, M) != dim M_{i}")
                })?;
            }
        }
        for _ in 0..5 {
            let m1 = random_representation(q, Q, 1, &mut rng);
            let m2 = random_representation(q, Q, 1, &mut rng);
            let nn = random_representation(q, Q, 1, &mut rng);
            let sum = Representation::direct_sum(&[m1.clone(), m2.clone()]).map_err(|e| e.to_string())?;
            let d = |a: &Representation| ext1(a, &nn).map(|e| e.dim()).map_err(|e| e.to_string());
            ensure(d(&sum)? == d(&m1)? + d(&m2)?, || format!("{name}: Ext not additive"))?;
            let pi = projective(q, Q, rng.gen_range(0..n)).map_err(|e| e.to_string())?;
            ensure(d(&pi)? == 0, || format!("{name}: Ext from a projective is nonzero"))?;
        }
        bump("hom/ext identities");
        ensure(classify(q).dynkin_type.is_some(), || format!("{name} not classified as Dynkin"))?;
    }
    Ok(counts.iter().map(|(k, v)| format!("{k} x{v}")).collect::<Vec<_>>().join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("A2 golden table", a2_golden),
        ("A3 golden table", a3_golden),
        ("equivalence of the three constructions", equivalence_suite),
        ("total dimension oracle", total_dimension_oracle),
        ("rescaling lemma", lemma_suite),
        ("oracle triangle", oracle_triangle),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {}  {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {}  {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
