//! Quivers, doubled quivers and height functions.
//!
//! Vertices and arrows carry arbitrary string identifiers; internally they are
//! indexed densely in declaration order.

mod classify;
mod parse;

use std::collections::{HashMap, VecDeque};

pub use classify::{classify, positive_roots, Classification, DynkinType};
pub use parse::{generate, parse_quiver};

use crate::error::{Error, Result};
use crate::paths::{PathArrow, PathQuiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    name: Option<String>,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex identifiers and `(id, source, target)`
    /// triples, checking uniqueness and endpoints.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut b = QuiverBuilder::default();
        for v in vertices {
            b.vertex(0, v.into())?;
        }
        for (id, s, t) in arrows {
            b.arrow(0, id, &s, &t)?;
        }
        Ok(b.finish())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Same vertices, with the arrows whose flag is set reversed.
    pub fn reoriented(&self, flip: &[bool]) -> Quiver {
        assert_eq!(flip.len(), self.arrows.len());
        let arrows = self
            .arrows
            .iter()
            .zip(flip)
            .map(|(a, &f)| {
                if f {
                    Arrow { id: a.id.clone(), source: a.target, target: a.source }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver { name: self.name.clone(), vertices: self.vertices.clone(), arrows }
    }

    /// Whether the quiver has no directed cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        seen == n
    }

    /// The quiver as a path-enumeration graph (all arrows of star degree 0).
    pub fn path_quiver(&self) -> PathQuiver {
        PathQuiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| PathArrow { label: a.id.clone(), source: a.source, target: a.target, star_degree: 0 })
                .collect(),
            self.is_acyclic(),
        )
    }

    /// Number of paths from `i` to `j` (all lengths). Panics on cyclic input.
    pub fn path_count(&self, i: usize, j: usize) -> usize {
        assert!(self.is_acyclic(), "path counts of a cyclic quiver are infinite");
        let n = self.vertices.len();
        // count[v] = number of paths i -> v, relaxed in topological order.
        let order = self.topological_order();
        let mut count = vec![0usize; n];
        count[i] = 1;
        for &v in &order {
            if count[v] == 0 {
                continue;
            }
            for a in self.arrows.iter().filter(|a| a.source == v) {
                count[a.target] += count[v];
            }
        }
        count[j]
    }

    fn topological_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        order
    }

    /// Neighbours in the underlying undirected multigraph, one entry per arrow.
    pub(crate) fn undirected_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, a) in self.arrows.iter().enumerate() {
            adj[a.source].push((a.target, k));
            if a.source != a.target {
                adj[a.target].push((a.source, k));
            }
        }
        adj
    }

    /// Text form accepted by [`parse_quiver`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("quiver {name}\n"));
        }
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.id, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        out
    }
}

#[derive(Default)]
pub(crate) struct QuiverBuilder {
    name: Option<String>,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    arrows: Vec<Arrow>,
    arrow_ids: HashMap<String, usize>,
}

impl QuiverBuilder {
    pub(crate) fn name(&mut self, name: String) {
        self.name = Some(name);
    }

    pub(crate) fn vertex(&mut self, line: usize, id: String) -> Result<()> {
        check_identifier(line, &id)?;
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateIdentifier { line, id });
        }
        self.index.insert(id.clone(), self.vertices.len());
        self.vertices.push(id);
        Ok(())
    }

    pub(crate) fn arrow(&mut self, line: usize, id: String, source: &str, target: &str) -> Result<()> {
        check_identifier(line, &id)?;
        if self.arrow_ids.contains_key(&id) {
            return Err(Error::DuplicateIdentifier { line, id });
        }
        let lookup = |v: &str| {
            self.index.get(v).copied().ok_or_else(|| Error::DanglingEndpoint {
                line,
                arrow: id.clone(),
                vertex: v.to_string(),
            })
        };
        let (s, t) = (lookup(source)?, lookup(target)?);
        self.arrow_ids.insert(id.clone(), self.arrows.len());
        self.arrows.push(Arrow { id, source: s, target: t });
        Ok(())
    }

    pub(crate) fn finish(self) -> Quiver {
        Quiver { name: self.name, vertices: self.vertices, arrows: self.arrows }
    }
}

/// Identifiers are non-empty and avoid whitespace and the reserved characters
/// `: ; # *` (`*` marks starred arrows of the doubled quiver).
fn check_identifier(line: usize, id: &str) -> Result<()> {
    let bad = id.is_empty()
        || id.chars().any(|c| c.is_whitespace() || matches!(c, ':' | ';' | '#' | '*'))
        || id.contains("->");
    if bad {
        return Err(Error::Syntax { line, message: format!("invalid identifier `{id}`") });
    }
    Ok(())
}

/// The doubled quiver: every arrow `a: i -> j` gains a partner `a*: j -> i`.
///
/// Arrow indices `0..m` are the base arrows in declaration order and
/// `m..2m` their starred partners, so `star(k) = k ± m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: Quiver,
    paths: PathQuiver,
}

pub fn double(q: &Quiver) -> DoubledQuiver {
    let mut arrows: Vec<PathArrow> = q
        .arrows
        .iter()
        .map(|a| PathArrow { label: a.id.clone(), source: a.source, target: a.target, star_degree: 0 })
        .collect();
    arrows.extend(q.arrows.iter().map(|a| PathArrow {
        label: format!("{}*", a.id),
        source: a.target,
        target: a.source,
        star_degree: 1,
    }));
    let auto = classify(q).dynkin_type.is_some();
    DoubledQuiver { base: q.clone(), paths: PathQuiver::new(q.vertices.clone(), arrows, auto) }
}

impl DoubledQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn path_quiver(&self) -> &PathQuiver {
        &self.paths
    }

    pub fn arrow_count(&self) -> usize {
        self.paths.arrow_count()
    }

    /// Index of the starred partner of base arrow `k`, and vice versa.
    pub fn star(&self, arrow: usize) -> usize {
        let m = self.base.arrows.len();
        if arrow < m {
            arrow + m
        } else {
            arrow - m
        }
    }

    pub fn is_starred(&self, arrow: usize) -> bool {
        arrow >= self.base.arrows.len()
    }

    pub fn starred_index(&self, base_arrow: usize) -> usize {
        base_arrow + self.base.arrows.len()
    }
}

/// Heights with `h(t(a)) = h(s(a)) + 1` for every arrow, minimum 0 on each
/// connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    values: Vec<u32>,
}

impl HeightFunction {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, vertex: usize) -> u32 {
        self.values[vertex]
    }
}

pub fn height_function(q: &Quiver) -> Result<HeightFunction> {
    let n = q.vertex_count();
    let adj = q.undirected_adjacency();
    let mut h: Vec<Option<i64>> = vec![None; n];
    let mut values = vec![0u32; n];
    for root in 0..n {
        if h[root].is_some() {
            continue;
        }
        h[root] = Some(0);
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let hv = h[v].unwrap();
            for &(w, k) in &adj[v] {
                let a = &q.arrows[k];
                let expected = if a.source == v && a.target == w { hv + 1 } else { hv - 1 };
                if a.source == a.target {
                    return Err(Error::HeightUnsatisfiable(format!("loop `{}`", a.id)));
                }
                match h[w] {
                    None => {
                        h[w] = Some(expected);
                        component.push(w);
                        stack.push(w);
                    }
                    Some(x) if x != expected => {
                        return Err(Error::HeightUnsatisfiable(format!(
                            "arrow `{}` closes an unbalanced cycle",
                            a.id
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let min = component.iter().map(|&v| h[v].unwrap()).min().unwrap();
        for &v in &component {
            values[v] = (h[v].unwrap() - min) as u32;
        }
    }
    Ok(HeightFunction { values })
}
