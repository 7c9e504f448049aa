//! Finite-dimensional right modules over the path algebra of an acyclic
//! quiver, as representations.
//!
//! Paths compose right to left, so an arrow `γ: u -> v` is the element
//! `e_v γ e_u`, and in a right module `m·γ` lands in `M e_u`. The action of `γ`
//! is therefore a matrix `M_v -> M_u`. For `A₂ = (1 -a-> 2)` the projective
//! `P₂ = e₂A` has `(P₂)_1 = ⟨a⟩`, `(P₂)_2 = ⟨e₂⟩` and `a` sends `e₂ ↦ a`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::paths::{Path, PathQuiver};
use crate::quiver::Quiver;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    field: Field,
    labels: Vec<Vec<String>>,
    actions: Vec<Matrix>,
}

impl Representation {
    /// `actions[k]` is the matrix of arrow `k: u -> v`, of shape
    /// `dims[u] x dims[v]`. Basis vectors get generic labels.
    pub fn new(quiver: &Quiver, field: Field, dims: &[usize], actions: Vec<Matrix>) -> Result<Self> {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(v, &d)| (0..d).map(|k| format!("{}.{k}", quiver.vertex_label(v))).collect())
            .collect();
        Self::with_labels(quiver, field, labels, actions)
    }

    pub fn with_labels(quiver: &Quiver, field: Field, labels: Vec<Vec<String>>, actions: Vec<Matrix>) -> Result<Self> {
        if labels.len() != quiver.vertex_count() || actions.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} vertex spaces and {} arrow matrices for a quiver with {} vertices and {} arrows",
                labels.len(),
                actions.len(),
                quiver.vertex_count(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&actions) {
            let want = (labels[a.source].len(), labels[a.target].len());
            if (m.rows(), m.cols()) != want || m.field() != field {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix over {field}, got {}x{} over {}",
                    a.id,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols(),
                    m.field()
                )));
            }
        }
        Ok(Representation { quiver: quiver.clone(), field, labels, actions })
    }

    pub fn zero(quiver: &Quiver, field: Field) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let actions = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self::new(quiver, field, &dims, actions).expect("zero shapes match")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.labels[v].len()
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn labels(&self, v: usize) -> &[String] {
        &self.labels[v]
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.actions[arrow]
    }

    /// Matrix `M_{t(p)} -> M_{s(p)}` of a path given in traversal order.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dim_at(p.target()));
        for &a in p.arrows().iter().rev() {
            m = self.actions[a].mul(&m).expect("representation shapes are consistent");
        }
        m
    }

    pub fn direct_sum(parts: &[Representation]) -> Result<Representation> {
        let first = parts.first().ok_or_else(|| Error::ShapeMismatch("direct sum of no summands".into()))?;
        let (q, field) = (first.quiver.clone(), first.field);
        if parts.iter().any(|p| p.quiver != q || p.field != field) {
            return Err(Error::ShapeMismatch("summands live over different quivers or fields".into()));
        }
        let labels: Vec<Vec<String>> = (0..q.vertex_count())
            .map(|v| {
                parts
                    .iter()
                    .enumerate()
                    .flat_map(|(s, p)| p.labels[v].iter().map(move |l| format!("{s}:{l}")))
                    .collect()
            })
            .collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = Matrix::zeros(field, labels[a.source].len(), labels[a.target].len());
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let block = &p.actions[k];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m[(r0 + r, c0 + c)] = block[(r, c)].clone();
                        }
                    }
                    r0 += block.rows();
                    c0 += block.cols();
                }
                m
            })
            .collect();
        Representation::with_labels(&q, field, labels, actions)
    }
}

/// All paths of an acyclic quiver, indexed `[from][to]` and sorted.
#[derive(Clone, Debug)]
pub struct PathTable {
    pq: PathQuiver,
    paths: Vec<Vec<Vec<Path>>>,
}

impl PathTable {
    pub fn new(q: &Quiver) -> Result<Self> {
        if !q.is_acyclic() {
            return Err(Error::Cyclic);
        }
        let pq = q.path_quiver();
        let n = q.vertex_count();
        let mut paths = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            let mut stack = vec![pq.trivial(s)];
            while let Some(p) = stack.pop() {
                for &a in pq.outgoing(p.target()) {
                    stack.push(pq.extend(&p, a).expect("outgoing arrow composes"));
                }
                paths[s][p.target()].push(p);
            }
        }
        for row in &mut paths {
            for list in row {
                list.sort();
            }
        }
        Ok(PathTable { pq, paths })
    }

    pub fn path_quiver(&self) -> &PathQuiver {
        &self.pq
    }

    pub fn between(&self, from: usize, to: usize) -> &[Path] {
        &self.paths[from][to]
    }

    pub fn index(&self, p: &Path) -> usize {
        self.paths[p.source()][p.target()].binary_search(p).expect("path is listed")
    }

    pub fn total(&self) -> usize {
        self.paths.iter().flatten().map(Vec::len).sum()
    }
}

fn check_vertex(q: &Quiver, i: usize) -> Result<()> {
    if i >= q.vertex_count() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    Ok(())
}

/// `P_i = e_i A`, spanned by the paths ending at `i`.
pub fn projective(q: &Quiver, field: Field, i: usize) -> Result<Representation> {
    check_vertex(q, i)?;
    projective_from(&PathTable::new(q)?, q, field, i)
}

pub(crate) fn projective_from(t: &PathTable, q: &Quiver, field: Field, i: usize) -> Result<Representation> {
    let labels = (0..q.vertex_count())
        .map(|u| t.between(u, i).iter().map(|p| t.pq.format_path(p)).collect())
        .collect();
    let actions = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let g = t.pq.arrow_path(k);
            let mut m = Matrix::zeros(field, t.between(a.source, i).len(), t.between(a.target, i).len());
            for (c, p) in t.between(a.target, i).iter().enumerate() {
                m[(t.index(&p.after(&g).expect("p∘γ composes")), c)] = field.one();
            }
            m
        })
        .collect();
    Representation::with_labels(q, field, labels, actions)
}

/// `I_i = D(A e_i)`, with `(I_i)_u` dual to the paths `i -> u`.
pub fn injective(q: &Quiver, field: Field, i: usize) -> Result<Representation> {
    check_vertex(q, i)?;
    injective_from(&PathTable::new(q)?, q, field, i)
}

pub(crate) fn injective_from(t: &PathTable, q: &Quiver, field: Field, i: usize) -> Result<Representation> {
    let labels = (0..q.vertex_count())
        .map(|u| t.between(i, u).iter().map(|p| format!("δ({})", t.pq.format_path(p))).collect())
        .collect();
    let actions = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            // δ_p ↦ δ_{p'} when p = β∘p'.
            let mut m = Matrix::zeros(field, t.between(i, a.source).len(), t.between(i, a.target).len());
            for (c, p) in t.between(i, a.target).iter().enumerate() {
                if p.arrows().last() == Some(&k) {
                    let shorter = t.pq.path(i, &p.arrows()[..p.len() - 1]).expect("prefix of a path");
                    m[(t.index(&shorter), c)] = field.one();
                }
            }
            m
        })
        .collect();
    Representation::with_labels(q, field, labels, actions)
}

/// `DA = ⊕_i I_i`, summands in vertex order.
pub fn dual_algebra(q: &Quiver, field: Field) -> Result<Representation> {
    let t = PathTable::new(q)?;
    let parts = (0..q.vertex_count()).map(|i| injective_from(&t, q, field, i)).collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        return Ok(Representation::zero(q, field));
    }
    Representation::direct_sum(&parts)
}

/// The module map `P_u -> P_v`, `p ↦ γ∘p`, for an arrow `γ: u -> v`.
pub fn projective_map(t: &PathTable, q: &Quiver, field: Field, gamma: usize) -> Vec<Matrix> {
    let a = &q.arrows()[gamma];
    let g = t.pq.arrow_path(gamma);
    (0..q.vertex_count())
        .map(|x| {
            let mut m = Matrix::zeros(field, t.between(x, a.target).len(), t.between(x, a.source).len());
            for (c, p) in t.between(x, a.source).iter().enumerate() {
                m[(t.index(&g.after(p).expect("γ∘p composes")), c)] = field.one();
            }
            m
        })
        .collect()
}

/// The module map `I_u -> I_v` dual to `x ↦ x∘γ` on `A e_v -> A e_u`, for an
/// arrow `γ: u -> v`.
pub fn injective_map(t: &PathTable, q: &Quiver, field: Field, gamma: usize) -> Vec<Matrix> {
    let a = &q.arrows()[gamma];
    (0..q.vertex_count())
        .map(|w| {
            let mut m = Matrix::zeros(field, t.between(a.target, w).len(), t.between(a.source, w).len());
            for (c, p) in t.between(a.source, w).iter().enumerate() {
                if p.arrows().first() == Some(&gamma) {
                    let rest = t.pq.path(a.target, &p.arrows()[1..]).expect("suffix of a path");
                    m[(t.index(&rest), c)] = field.one();
                }
            }
            m
        })
        .collect()
}
