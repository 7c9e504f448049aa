//! Finite windows of the translation quiver ℤQ and its mesh category.
//!
//! The window with columns `[0, N]` has vertices `(n, i)` and arrows
//!
//! * `(n, a): (n, s(a)) -> (n, t(a))` for `0 <= n <= N`,
//! * `(n, a*): (n, t(a)) -> (n+1, s(a))` for `0 <= n < N`,
//!
//! with translation `τ(n, i) = (n-1, i)` and polarization
//! `σ(n, a) = (n-1, a*)`, `σ(n, a*) = (n, a)`. A path from `(0, i)` to
//! `(p, j)` never leaves columns `[0, p]`, and neither does any mesh
//! placement inside it, so Hom spaces of the mesh category between such
//! vertices are computed exactly in the window `[0, p]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, QuotientSpace};
use crate::paths::{
GradedDimTable, Grading, Path, PathArrow, PathElement, PathQuiver};
use crate::quiver::{classify, double, DoubledQuiver, Quiver};
use crate::relations::{lambda_co, q_relations_by_vertex, QAssignment};
use crate::report::Check;
use crate::scalar::{Field, Scalar};
use crate::scaling::{solve_scaling, verify_scaling};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowArrow {
    pub column: usize,
    pub base_arrow: usize,
    /// Starred arrows step one column forward.
    pub starred: bool,
}

#[derive(Clone, Debug)]
pub struct TranslationWindow {
    base: Quiver,
    max_column: usize,
    arrows: Vec<WindowArrow>,
    paths: PathQuiver,
}

/// A mesh relation `m_z = Σ_{t(a)=z} a∘σ(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshRelation {
    pub vertex: usize,
    pub element: PathElement,
}

pub fn build_window(q: &Quiver, max_column: usize) -> Result<TranslationWindow> {
    if !q.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let n = q.vertex_count();
    let vertices: Vec<String> = (0..=max_column)
        .flat_map(|col| q.vertices().iter().map(move |v| format!("({col},{v})")))
        .collect();
    let mut arrows = Vec::new();
    let mut path_arrows = Vec::new();
    for col in 0..=max_column {
        for (k, a) in q.arrows().iter().enumerate() {
            arrows.push(WindowArrow { column: col, base_arrow: k, starred: false });
            path_arrows.push(PathArrow {
                label: format!("({col},{})", a.id),
                source: col * n + a.source,
                target: col * n + a.target,
                star_degree: 0,
            });
        }
        if col < max_column {
            for (k, a) in q.arrows().iter().enumerate() {
                arrows.push(WindowArrow { column: col, base_arrow: k, starred: true });
                path_arrows.push(PathArrow {
                    label: format!("({col},{}*)", a.id),
                    source: col * n + a.target,
                    target: (col + 1) * n + a.source,
                    star_degree: 1,
                });
            }
        }
    }
    Ok(TranslationWindow {
        base: q.clone(),
        max_column,
        arrows,
        paths: PathQuiver::new(vertices, path_arrows, true),
    })
}

impl TranslationWindow {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn max_column(&self) -> usize {
        self.max_column
    }

    pub fn path_quiver(&self) -> &PathQuiver {
        &self.paths
    }

    pub fn window_arrows(&self) -> &[WindowArrow] {
        &self.arrows
    }

    pub fn vertex(&self, column: usize, i: usize) -> usize {
        column * self.base.vertex_count() + i
    }

    /// `(column, base vertex)` of a window vertex.
    pub fn position(&self, v: usize) -> (usize, usize) {
        let n = self.base.vertex_count();
        (v / n, v % n)
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        let (col, i) = self.position(v);
        (col > 0).then(|| self.vertex(col - 1, i))
    }

    /// Index of the window arrow with the given coordinates, if present.
    pub fn arrow_index(&self, column: usize, base_arrow: usize, starred: bool) -> Option<usize> {
        let m = self.base.arrows().len();
        if column > self.max_column || (starred && column == self.max_column) {
            return None;
        }
        // Each full column contributes 2m arrows: m unstarred then m starred.
        Some(column * 2 * m + if starred { m } else { 0 } + base_arrow)
    }

    pub fn sigma(&self, arrow: usize) -> Option<usize> {
        let a = self.arrows[arrow];
        if a.starred {
            self.arrow_index(a.column, a.base_arrow, false)
        } else if a.column > 0 {
            self.arrow_index(a.column - 1, a.base_arrow, true)
        } else {
            None
        }
    }

    /// Vertices carrying a complete, nonzero mesh: column at least 1 and at
    /// least one incoming arrow.
    pub fn mesh_vertices(&self) -> Vec<usize> {
        (0..self.paths.vertex_count())
            .filter(|&v| self.position(v).0 >= 1 && !self.paths.incoming(v).is_empty())
            .collect()
    }

    pub fn mesh_relations(&self, field: Field) -> Vec<MeshRelation> {
        self.mesh_vertices()
            .into_iter()
            .map(|z| {
                let mut element = PathElement::zero(field);
                for &a in self.paths.incoming(z) {
                    let s = self.sigma(a).expect("complete mesh");
                    let p = self.paths.path(self.paths.arrows()[s].source, &[s, a]).expect("σ(a) then a composes");
                    element.add_term(p, field.one());
                }
                MeshRelation { vertex: z, element }
            })
            .collect()
    }

    /// The unique lift of a doubled-quiver path starting at `(column, s(p))`,
    /// if it fits in the window.
    pub fn lift(&self, dq: &DoubledQuiver, p: &Path, column: usize) -> Option<Path> {
        let m = self.base.arrows().len();
        let mut col = column;
        let mut traversal = Vec::with_capacity(p.len());
        for &a in p.arrows() {
            let starred = dq.is_starred(a);
            let base_arrow = if starred { a - m } else { a };
            traversal.push(self.arrow_index(col, base_arrow, starred)?);
            if starred {
                col += 1;
            }
        }
        self.paths.path(self.vertex(column, p.source()), &traversal)
    }
}

/// Image under the covering functor `π: ℤQ -> Q̄`, which forgets columns.
pub fn covering_pi(w: &TranslationWindow, dq: &DoubledQuiver, x: &PathElement) -> PathElement {
    let m = w.base.arrows().len();
    let target_pq = dq.path_quiver();
    let terms = x.terms().map(|(p, c)| {
        let traversal: Vec<usize> = p
            .arrows()
            .iter()
            .map(|&a| {
                let wa = w.arrows[a];
                if wa.starred {
                    wa.base_arrow + m
                } else {
                    wa.base_arrow
                }
            })
            .collect();
        let source = w.position(p.source()).1;
        (c.clone(), target_pq.path(source, &traversal).expect("π preserves composability"))
    });
    PathElement::from_terms(x.field(), terms)
}

/// Classes of paths out of one vertex, length by length.
///
/// The mesh relations are quadratic, so the length-`d` part of the quotient
/// is `(⊕_{a: y -> z} V_{d-1}(y))` modulo the image of `V_{d-2}(τz)` under
/// `w ↦ (σ(a)∘w)_a`. Basis classes are represented by paths.
#[derive(Clone, Debug)]
struct Knitting {
    field: Field,
    source: usize,
    levels: Vec<Vec<Level>>,
}

#[derive(Clone, Debug)]
struct Level {
    basis: Vec<Path>,
    /// `(arrow, offset)` of each incoming arrow's block in the ambient space.
    blocks: Vec<(usize, usize)>,
    space: Option<QuotientSpace>,
}

impl Knitting {
    fn new(w: &TranslationWindow, field: Field, source: usize) -> Self {
        let pq = w.path_quiver();
        let nv = pq.vertex_count();
        let start = (0..nv)
            .map(|z| Level {
                basis: if z == source { vec![pq.trivial(source)] } else { Vec::new() },
                blocks: Vec::new(),
                space: None,
            })
            .collect();
        let mut k = Knitting { field, source, levels: vec![start] };
        loop {
            let d = k.levels.len();
            let mut next = Vec::with_capacity(nv);
            for z in 0..nv {
                let mut blocks = Vec::new();
                let mut ambient = 0;
                for &a in pq.incoming(z) {
                    blocks.push((a, ambient));
                    ambient += k.levels[d - 1][pq.arrows()[a].source].basis.len();
                }
                let mut relations = Vec::new();
                if let (Some(tz), true) = (w.tau(z), d >= 2) {
                    for t in 0..k.levels[d - 2][tz].basis.len() {
                        let mut rel = vec![field.zero(); ambient];
                        let unit = unit_vector(field, k.levels[d - 2][tz].basis.len(), t);
                        for &(a, off) in &blocks {
                            let s = w.sigma(a).expect("complete mesh");
                            let image = k.extend(pq, d - 1, s, &unit);
                            for (x, c) in image.into_iter().enumerate() {
                                rel[off + x] = c;
                            }
                        }
                        relations.push(rel);
                    }
                }
                let spanning: Vec<Vec<Scalar>> = (0..ambient).map(|m| unit_vector(field, ambient, m)).collect();
                let space = QuotientSpace::new(field, ambient, &spanning, &relations);
                let basis = (0..space.dim())
                    .map(|c| {
                        let m = space.representative(c).iter().position(|x| !x.is_zero()).expect("unit vector");
                        let &(a, off) = blocks.iter().rev().find(|(_, off)| *off <= m).expect("block");
                        let y = pq.arrows()[a].source;
                        pq.extend(&k.levels[d - 1][y].basis[m - off], a).expect("arrow extends path")
                    })
                    .collect();
                next.push(Level { basis, blocks, space: Some(space) });
            }
            let empty = next.iter().all(|l| l.basis.is_empty());
            k.levels.push(next);
            if empty {
                return k;
            }
        }
    }

    /// Class of `(class v at length d-1) then a`, at length `d`.
    fn extend(&self, pq: &PathQuiver, d: usize, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        let z = pq.arrows()[a].target;
        let Some(level) = self.levels.get(d).map(|l| &l[z]) else {
            return Vec::new();
        };
        let space = level.space.as_ref().expect("positive length");
        let &(_, off) = level.blocks.iter().find(|(b, _)| *b == a).expect("incoming arrow");
        let mut x = vec![self.field.zero(); space.ambient_dim()];
        for (t, c) in v.iter().enumerate() {
            x[off + t] = c.clone();
        }
        space.project(&x)
    }

    fn basis_at(&self, z: usize) -> Vec<Path> {
        self.levels.iter().flat_map(|l| l[z].basis.iter().cloned()).collect()
    }
}

fn unit_vector(field: Field, len: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[k] = field.one();
    v
}

/// The mesh category restricted to a window, with Hom spaces out of every
/// column-0 vertex.
#[derive(Clone, Debug)]
pub struct MeshCategory {
    window: TranslationWindow,
    field: Field,
    sources: Vec<Knitting>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshHom {
    pub dim: usize,
    pub basis: Vec<Path>,
}

/// Class of a path in the mesh category: its length, target and
/// coordinates in the basis of that Hom space component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshClass {
    pub length: usize,
    pub target: usize,
    pub coords: Vec<Scalar>,
}

impl MeshCategory {
    pub fn new(window: TranslationWindow, field: Field) -> Result<Self> {
        let sources = (0..window.base.vertex_count()).map(|i| Knitting::new(&window, field, window.vertex(0, i))).collect();
        Ok(MeshCategory { window, field, sources })
    }

    pub fn window(&self) -> &TranslationWindow {
        &self.window
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `Hom((0, i), (p, j))` in the mesh category.
    pub fn hom(&self, i: usize, p: usize, j: usize) -> Result<MeshHom> {
        if p > self.window.max_column {
            return Err(Error::OutOfWindow { column: p, max: self.window.max_column });
        }
        self.hom_between(self.window.vertex(0, i), self.window.vertex(p, j))
    }

    /// Hom space between arbitrary window vertices.
    pub fn hom_between(&self, from: usize, to: usize) -> Result<MeshHom> {
        let basis = match self.sources.iter().find(|k| k.source == from) {
            Some(k) => k.basis_at(to),
            None => Knitting::new(&self.window, self.field, from).basis_at(to),
        };
        Ok(MeshHom { dim: basis.len(), basis })
    }

    /// Class of a window path starting in column 0.
    pub fn class_of(&self, p: &Path) -> Option<MeshClass> {
        let k = self.sources.iter().find(|k| k.source == p.source())?;
        let pq = self.window.path_quiver();
        let mut coords = vec![self.field.one()];
        for (d, &a) in p.arrows().iter().enumerate() {
            coords = k.extend(pq, d + 1, a, &coords);
        }
        Some(MeshClass { length: p.len(), target: p.target(), coords })
    }

    /// Table of `dim Hom((0,i),(p,j))` for `p` in `[0, max_column]`.
    pub fn table(&self) -> GradedDimTable {
        let base = &self.window.base;
        let mut t = GradedDimTable::new(Grading::Star);
        for p in 0..=self.window.max_column {
            for i in 0..base.vertex_count() {
                for j in 0..base.vertex_count() {
                    let d = self.hom(i, p, j).expect("p within window").dim;
                    t.add(base.vertex_label(i), base.vertex_label(j), p as u32, d);
                }
            }
        }
        t
    }
}

pub fn mesh_hom(w: &TranslationWindow, field: Field, i: usize, p: usize, j: usize) -> Result<MeshHom> {
    MeshCategory::new(w.clone(), field)?.hom(i, p, j)
}

/// Mesh category on a window large enough to see the first vanishing degree
/// and one more (Dynkin input), or on `[0, max_column]` when given.
pub fn mesh_category(q: &Quiver, field: Field, max_column: Option<usize>) -> Result<MeshCategory> {
    match max_column {
        Some(n) => MeshCategory::new(build_window(q, n)?, field),
        None => {
            if classify(q).dynkin_type.is_none() {
                return Err(Error::NeedsExplicitBound);
            }
            let mut cols = q.vertex_count() + 1;
            loop {
                let cat = MeshCategory::new(build_window(q, cols)?, field)?;
                let table = cat.table();
                if let Some(p0) = first_zero_degree(&table) {
                    if (p0 as usize) < cols {
                        assert!(
                            table.max_degree().is_none_or(|m| m < p0),
                            "mesh Hom spaces reappear after degree {p0}"
                        );
                        return Ok(cat);
                    }
                }
                cols *= 2;
            }
        }
    }
}

/// `Λ^ho` as the star-graded table of mesh Hom dimensions.
///
/// Automatic for Dynkin input (all degrees up to and including the first
/// vanishing one), otherwise over `[0, max_column]`.
pub fn lambda_ho(q: &Quiver, field: Field, max_column: Option<usize>) -> Result<GradedDimTable> {
    let cat = mesh_category(q, field, max_column)?;
    let table = cat.table();
    Ok(match max_column {
        Some(_) => table,
        None => table.truncated(first_zero_degree(&table).expect("auto mode found a zero degree")),
    })
}

/// Smallest degree without any nonzero entry.
pub fn first_zero_degree(t: &GradedDimTable) -> Option<u32> {
    let totals = t.degree_totals();
    (0..=u32::MAX).find(|p| !totals.contains_key(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub checks: Vec<Check>,
    pub pass: bool,
    pub ho: GradedDimTable,
    pub co_minus_one: GradedDimTable,
    pub co_one: GradedDimTable,
}

/// Checks that `π` identifies the mesh category with the sign-free
/// preprojective algebra, and that the rescaling bridge reaches the standard
/// one.
pub fn verify_covering_iso(q: &Quiver, field: Field) -> Result<CoveringReport> {
    if classify(q).dynkin_type.is_none() {
        return Err(Error::NotDynkin);
    }
    let dq = double(q);
    let cat = mesh_category(q, field, None)?;
    let w = cat.window();
    let mut checks = Vec::new();

    // (a) π(m_z) is the sign-free relation at the base vertex, coefficients +1.
    let minus_one = QAssignment::constant(q, field.from_i64(-1));
    let sign_free = q_relations_by_vertex(&dq, &minus_one);
    let mut bad = None;
    for m in w.mesh_relations(field) {
        let image = covering_pi(w, &dq, &m.element);
        let (_, i) = w.position(m.vertex);
        let all_plus = image.terms().all(|(_, c)| c.is_one());
        if sign_free[i].as_ref() != Some(&image) || !all_plus {
            bad = Some(w.path_quiver().vertices()[m.vertex].clone());
            break;
        }
    }
    checks.push(Check::new(
        "pi(mesh) = sign-free relation",
        bad.is_none(),
        match &bad {
            Some(v) => format!("mismatch at mesh {v}"),
            None => format!("{} meshes", w.mesh_vertices().len()),
        },
    ));

    // (b) Hom tables agree with Λ^co for q ≡ -1.
    let ho = lambda_ho(q, field, None)?;
    let (pres_minus, co_minus_one) = lambda_co(q, Some(&minus_one), field, None)?;
    checks.push(table_check("ho = co(q=-1)", &ho, &co_minus_one));

    // (c) Rescaling bridge from q ≡ -1 to the standard relations.
    let sol = solve_scaling(q, &minus_one)?;
    let scaling = verify_scaling(q, &minus_one, &sol);
    checks.push(Check::new(
        "rescaling q=-1 -> q=1",
        scaling.pass,
        match scaling.first_failure() {
            Some(v) => format!("fails at vertex {}", v.vertex),
            None => "all vertices proportional".to_string(),
        },
    ));
    let (_, co_one) = lambda_co(q, None, field, None)?;
    checks.push(table_check("co(q=-1) = co(q=1)", &co_minus_one, &co_one));

    // (d) Lifts of basis paths are independent in the mesh category.
    let mut failure = None;
    for key in pres_minus.component_keys() {
        let basis = pres_minus.basis(key);
        if basis.is_empty() {
            continue;
        }
        let lifts: Option<Vec<Path>> = basis.iter().map(|b| w.lift(&dq, b, 0)).collect();
        let independent = match lifts {
            None => false,
            Some(lifts) => {
                let classes: Vec<MeshClass> = lifts.iter().filter_map(|l| cat.class_of(l)).collect();
                let mut span = EchelonBasis::new(field, classes.first().map_or(0, |c| c.coords.len()));
                classes.len() == lifts.len() && classes.iter().all(|c| span.insert(c.coords.clone()))
            }
        };
        if !independent {
            failure = Some(format!(
                "basis of e_{}Λe_{} in degree {} does not lift independently",
                q.vertex_label(key.target),
                q.vertex_label(key.source),
                key.star_degree
            ));
            break;
        }
    }
    checks.push(Check::new(
        "pi surjective on basis paths",
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{} basis paths lifted", pres_minus.basis_paths().len())),
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(CoveringReport { checks, pass, ho, co_minus_one, co_one })
}

pub fn table_check(name: &str, left: &GradedDimTable, right: &GradedDimTable) -> Check {
    match left.first_difference(right) {
        None => Check::new(name, true, format!("{} entries, total {}", left.entries().count(), left.total())),
        Some(d) => Check::new(name, false, format!("first difference at {d}")),
    }
}
