//! Paths, linear combinations of paths, and graded quotients of path algebras.
//!
//! Composition is written right to left: `b∘a` means "first `a`, then `b`",
//! so `e_j A e_i` is spanned by the paths from `i` to `j`. Internally a
//! [`Path`] stores its arrows in traversal order (first arrow first).

mod quotient;
mod table;

use std::collections::BTreeMap;
use std::fmt::Write as _;

pub use quotient::{graded_quotient, ComponentKey, QuotientPresentation, StopPolicy, AUTO_STOP_CAP};
pub use table::{DimEntry, GradedDimTable, Grading, TableDifference};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathArrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    /// 1 for starred (or column-stepping) arrows, 0 otherwise.
    pub star_degree: u32,
}

/// A finite quiver viewed as a generator set for a path algebra, with a
/// star-degree on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathQuiver {
    vertices: Vec<String>,
    arrows: Vec<PathArrow>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    auto_stop: bool,
}

impl PathQuiver {
    /// `auto_stop` records whether the automatic stopping policy is known to
    /// terminate for the algebras built over this quiver.
    pub fn new(vertices: Vec<String>, arrows: Vec<PathArrow>, auto_stop: bool) -> Self {
        let n = vertices.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (k, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(k);
            incoming[a.target].push(k);
        }
        PathQuiver { vertices, arrows, outgoing, incoming, auto_stop }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[PathArrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn auto_stop_allowed(&self) -> bool {
        self.auto_stop
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    /// The single-arrow path.
    pub fn arrow_path(&self, arrow: usize) -> Path {
        let a = &self.arrows[arrow];
        Path { source: a.source, target: a.target, arrows: vec![arrow], star_degree: a.star_degree }
    }

    /// Path from arrows listed in traversal order, checking composability.
    pub fn path(&self, source: usize, traversal: &[usize]) -> Option<Path> {
        let mut p = Path::trivial(source);
        for &a in traversal {
            p = self.extend(&p, a)?;
        }
        Some(p)
    }

    /// Path written in composition order: `["b", "a"]` is `b∘a`.
    /// Panics on unknown labels or non-composable arrows; meant for tests and
    /// literal construction.
    pub fn composite(&self, written: &[&str]) -> Path {
        assert!(!written.is_empty(), "use `trivial` for empty paths");
        let traversal: Vec<usize> =
            written.iter().rev().map(|l| self.arrow_index(l).expect("known arrow label")).collect();
        let source = self.arrows[traversal[0]].source;
        self.path(source, &traversal).expect("composable arrows")
    }

    /// `a∘p`, or `None` if `a` does not start where `p` ends.
    pub fn extend(&self, p: &Path, arrow: usize) -> Option<Path> {
        let a = &self.arrows[arrow];
        if a.source != p.target {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.push(arrow);
        Some(Path { source: p.source, target: a.target, arrows, star_degree: p.star_degree + a.star_degree })
    }

    /// `p∘a`, or `None` if `a` does not end where `p` starts.
    pub fn prepend(&self, arrow: usize, p: &Path) -> Option<Path> {
        let a = &self.arrows[arrow];
        if a.target != p.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(p.arrows.len() + 1);
        arrows.push(arrow);
        arrows.extend_from_slice(&p.arrows);
        Some(Path { source: a.source, target: p.target, arrows, star_degree: p.star_degree + a.star_degree })
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let labels: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrows[a].label.as_str()).collect();
        labels.join("∘")
    }

    pub fn format_element(&self, x: &PathElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (p, c)) in x.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                let _ = write!(out, "{mag}·");
            }
            out.push_str(&self.format_path(p));
        }
        out
    }
}

/// All paths from `i` to `j` of exactly the given length, in canonical order.
pub fn enumerate_paths(q: &PathQuiver, i: &str, j: &str, length: usize) -> Result<Vec<Path>> {
    let (i, j) = (q.vertex_index(i)?, q.vertex_index(j)?);
    let mut frontier = vec![Path::trivial(i)];
    for _ in 0..length {
        frontier = frontier
            .iter()
            .flat_map(|p| q.outgoing(p.target).iter().filter_map(move |&a| q.extend(p, a)))
            .collect();
    }
    let mut out: Vec<Path> = frontier.into_iter().filter(|p| p.target == j).collect();
    out.sort();
    Ok(out)
}

/// A path: arrows in traversal order, with endpoints so that empty paths
/// still know their vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
    star_degree: u32,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new(), star_degree: 0 }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn star_degree(&self) -> u32 {
        self.star_degree
    }

    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn key(&self) -> ComponentKey {
        ComponentKey { source: self.source, target: self.target, length: self.len(), star_degree: self.star_degree }
    }

    /// `self∘earlier`, if composable.
    pub fn after(&self, earlier: &Path) -> Option<Path> {
        if earlier.target != self.source {
            return None;
        }
        let mut arrows = earlier.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            source: earlier.source,
            target: self.target,
            arrows,
            star_degree: self.star_degree + earlier.star_degree,
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    /// By length, then endpoints, then the arrow sequence lexicographically.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.arrows.len(), self.source, self.target, &self.arrows).cmp(&(
            other.arrows.len(),
            other.source,
            other.target,
            &other.arrows,
        ))
    }
}

/// A finite linear combination of paths with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathElement {
    field: Field,
    terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero(field: Field) -> Self {
        PathElement { field, terms: BTreeMap::new() }
    }

    pub fn from_path(field: Field, p: Path) -> Self {
        Self::term(field.one(), p)
    }

    pub fn term(coeff: Scalar, p: Path) -> Self {
        let mut x = PathElement::zero(coeff.field());
        x.add_term(p, coeff);
        x
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Scalar, Path)>) -> Self {
        let mut x = PathElement::zero(field);
        for (c, p) in terms {
            x.add_term(p, c);
        }
        x
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PathElement) -> PathElement {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        if c.is_zero() {
            return PathElement::zero(self.field);
        }
        PathElement { field: self.field, terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// `self∘other`: bilinear extension of path composition, non-composable
    /// pairs contributing zero.
    pub fn compose(&self, other: &PathElement) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.after(r) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    /// The common `(source, target, length, star_degree)` of all terms, or
    /// `None` for zero or inhomogeneous elements.
    pub fn homogeneous_key(&self) -> Option<ComponentKey> {
        let mut keys = self.terms.keys().map(Path::key);
        let first = keys.next()?;
        keys.all(|k| k == first).then_some(first)
    }

    /// Applies a coefficient per arrow and multiplies along each path
    /// (the algebra map sending arrow `a` to `scale(a)·a`).
    pub fn rescale_arrows(&self, scale: impl Fn(usize) -> Scalar) -> PathElement {
        let mut out = PathElement::zero(self.field);
        for (p, c) in &self.terms {
            let mut coeff = c.clone();
            for &a in &p.arrows {
                coeff *= &scale(a);
            }
            out.add_term(p.clone(), coeff);
        }
        out
    }

    /// Splits into homogeneous components.
    pub fn components(&self) -> BTreeMap<ComponentKey, PathElement> {
        let mut out: BTreeMap<ComponentKey, PathElement> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(p.key()).or_insert_with(|| PathElement::zero(self.field)).add_term(p.clone(), c.clone());
        }
        out
    }
}
