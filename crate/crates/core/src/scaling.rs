//! Rescaling isomorphisms between q-deformed and standard preprojective
//! algebras of trees.
//!
//! For `ε: Q₀ → k*` the algebra map `φ_ε` sends each base arrow `a: i -> j` to
//! `ε(i)⁻¹ε(j)·a` and fixes starred arrows. On a tree one can choose `ε` so
//! that `φ_ε(ρ_{q,i}) = λ(i)·ρ_{1,i}` at every vertex, which makes `φ_ε` an
//! isomorphism of the quotients.
//!
//! Expanding the images shows what is needed: at vertex `v`, every outgoing
//! `b: v -> w` contributes `ε(w)/ε(v)` and every incoming `a: u -> v`
//! contributes `q(a)·ε(v)/ε(u)`, and all of these must equal `λ(v)`. Along an
//! edge `a: i -> j` that gives `ε(j) = λ(i)·ε(i)` and `λ(j) = q(a)·λ(i)`,
//! which a traversal of the tree solves one edge at a time.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::PathElement;
use crate::quiver::{classify, double, DoubledQuiver, Quiver};
use crate::relations::{q_relations_by_vertex, QAssignment};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingSolution {
    pub epsilon: Vec<Scalar>,
    pub lambda: Vec<Scalar>,
}

impl ScalingSolution {
    /// The solution with `ε` replaced by `ε⁻¹`; its `φ` inverts this one's on
    /// generators. `λ` is not meaningful for the inverse and is set to `λ⁻¹`.
    pub fn inverse(&self) -> ScalingSolution {
        ScalingSolution {
            epsilon: self.epsilon.iter().map(Scalar::inv).collect(),
            lambda: self.lambda.iter().map(Scalar::inv).collect(),
        }
    }
}

pub fn solve_scaling(q: &Quiver, qa: &QAssignment) -> Result<ScalingSolution> {
    if !classify(q).is_tree {
        return Err(Error::NotATree);
    }
    qa.check_nonzero(q)?;
    let field = qa.field();
    let n = q.vertex_count();
    let adj = q.undirected_adjacency();
    let mut epsilon: Vec<Option<Scalar>> = vec![None; n];
    let mut lambda: Vec<Option<Scalar>> = vec![None; n];

    epsilon[0] = Some(field.one());
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &(w, k) in &adj[v] {
            if epsilon[w].is_some() {
                continue;
            }
            let a = &q.arrows()[k];
            let ev = epsilon[v].clone().unwrap();
            let lv = lambda[v].get_or_insert_with(|| field.one()).clone();
            if a.source == v {
                // v -> w: ε(w) = λ(v)ε(v), λ(w) = q·λ(v).
                epsilon[w] = Some(&lv * &ev);
                lambda[w] = Some(qa.get(k) * &lv);
            } else {
                // w -> v: λ(w) = λ(v)/q, ε(w) = ε(v)/λ(w).
                let lw = &lv / qa.get(k);
                epsilon[w] = Some(&ev / &lw);
                lambda[w] = Some(lw);
            }
            stack.push(w);
        }
    }
    Ok(ScalingSolution {
        epsilon: epsilon.into_iter().map(|e| e.expect("tree is connected")).collect(),
        lambda: lambda.into_iter().map(|l| l.unwrap_or_else(|| field.one())).collect(),
    })
}

/// `φ_ε(x)` for `x` in the doubled path algebra.
pub fn apply_phi(dq: &DoubledQuiver, sol: &ScalingSolution, x: &PathElement) -> PathElement {
    let base = dq.base();
    let field = x.field();
    x.rescale_arrows(|k| {
        if dq.is_starred(k) {
            field.one()
        } else {
            let a = &base.arrows()[k];
            &sol.epsilon[a.target] / &sol.epsilon[a.source]
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: String,
    pub lambda: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    pub vertices: Vec<VertexCheck>,
    pub pass: bool,
}

impl ScalingReport {
    pub fn first_failure(&self) -> Option<&VertexCheck> {
        self.vertices.iter().find(|v| !v.pass)
    }
}

/// Checks `φ_ε(ρ_{q,i}) = λ(i)·ρ_{1,i}` coefficientwise at every vertex.
pub fn verify_scaling(q: &Quiver, qa: &QAssignment, sol: &ScalingSolution) -> ScalingReport {
    let dq = double(q);
    let field = qa.field();
    let deformed = q_relations_by_vertex(&dq, qa);
    let standard = q_relations_by_vertex(&dq, &QAssignment::constant(q, field.one()));
    let vertices: Vec<VertexCheck> = (0..q.vertex_count())
        .map(|i| {
            let image = deformed[i].as_ref().map_or_else(|| PathElement::zero(field), |r| apply_phi(&dq, sol, r));
            let target = standard[i].as_ref().map_or_else(|| PathElement::zero(field), |r| r.scale(&sol.lambda[i]));
            let pass = !sol.lambda[i].is_zero() && !sol.epsilon[i].is_zero() && image == target;
            VertexCheck { vertex: q.vertex_label(i).to_string(), lambda: sol.lambda[i].to_string(), pass }
        })
        .collect();
    let pass = vertices.iter().all(|v| v.pass);
    ScalingReport { vertices, pass }
}
