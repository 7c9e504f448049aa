//! Hom and Ext¹ between representations.
//!
//! Ext¹ uses the projective cover `P⁰ = ⊕_v P_v^{dim M_v} -> M` sending the
//! generator of each copy to a basis vector. Over a path algebra the kernel
//! `K` is projective, so `Ext¹(M, N)` is the cokernel of restriction
//! `Hom(P⁰, N) -> Hom(K, N)`.

use crate::error::{Error, Result};
use crate::linalg::{kernel, Kernel, Matrix, QuotientSpace};
use crate::scalar::{Field, Scalar};

use super::representation::{projective_from, PathTable, Representation};

/// The space of module maps `M -> N` as the kernel of the intertwining
/// equations. Unknowns are the entries of each `f_v`, row-major, vertex by
/// vertex.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: Field,
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    offsets: Vec<usize>,
    unknowns: usize,
    kernel: Kernel,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    fn unflatten(&self, v: &[Scalar]) -> Vec<Matrix> {
        self.source_dims
            .iter()
            .zip(&self.target_dims)
            .zip(&self.offsets)
            .map(|((&m, &n), &off)| {
                let rows = (0..n).map(|r| v[off + r * m..off + (r + 1) * m].to_vec()).collect();
                Matrix::from_rows(self.field, m, rows)
            })
            .collect()
    }

    fn flatten(&self, f: &[Matrix]) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.unknowns);
        for m in f {
            for r in 0..m.rows() {
                v.extend_from_slice(m.row(r));
            }
        }
        v
    }

    pub fn basis_element(&self, k: usize) -> Vec<Matrix> {
        self.unflatten(&self.kernel.basis[k])
    }

    pub fn basis(&self) -> Vec<Vec<Matrix>> {
        (0..self.dim()).map(|k| self.basis_element(k)).collect()
    }

    /// Coordinates of a module map in the basis.
    pub fn coordinates(&self, f: &[Matrix]) -> Vec<Scalar> {
        self.kernel.coordinates(&self.flatten(f))
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Matrix> {
        self.unflatten(&self.kernel.combine(self.field, coords, self.unknowns))
    }
}

fn same_category(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver() != n.quiver() || m.field() != n.field() {
        return Err(Error::ShapeMismatch("representations of different quivers or fields".into()));
    }
    Ok(())
}

/// All `f` with `f_u·M(γ) = N(γ)·f_v` for every arrow `γ: u -> v`.
pub fn hom_rep(m: &Representation, n: &Representation) -> Result<HomSpace> {
    same_category(m, n)?;
    let field = m.field();
    let q = m.quiver();
    let source_dims = m.dimension_vector();
    let target_dims = n.dimension_vector();
    let mut offsets = Vec::with_capacity(source_dims.len());
    let mut unknowns = 0;
    for (a, b) in source_dims.iter().zip(&target_dims) {
        offsets.push(unknowns);
        unknowns += a * b;
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * source_dims[v] + c;

    let mut rows = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        let (u, v) = (a.source, a.target);
        let (am, an) = (m.action(k), n.action(k));
        for r in 0..target_dims[u] {
            for c in 0..source_dims[v] {
                let mut row = vec![field.zero(); unknowns];
                for t in 0..source_dims[u] {
                    row[var(u, r, t)] += &am[(t, c)];
                }
                for s in 0..target_dims[v] {
                    row[var(v, s, c)] -= &an[(r, s)];
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(field, unknowns, rows);
    Ok(HomSpace { field, source_dims, target_dims, offsets, unknowns, kernel: kernel(&system) })
}

/// Applies a module map vertexwise.
fn apply_at(f: &[Matrix], v: usize, x: &[Scalar]) -> Vec<Scalar> {
    f[v].apply(x)
}

fn compose(after: &[Matrix], before: &[Matrix]) -> Vec<Matrix> {
    after.iter().zip(before).map(|(a, b)| a.mul(b).expect("module maps compose")).collect()
}

/// A projective cover `P⁰ -> M` and its kernel `K ⊆ P⁰`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    module: Representation,
    /// `(v, k)`: the copy of `P_v` whose generator maps to basis vector `k` of `M_v`.
    generators: Vec<(usize, usize)>,
    top: Representation,
    kernel: Representation,
    /// Per vertex, basis of `K_u` inside `P⁰_u`.
    kernels: Vec<Kernel>,
    /// Per vertex, the offset of each generator's block in `P⁰_u`.
    block_offsets: Vec<Vec<usize>>,
    paths: PathTable,
}

impl ProjectivePresentation {
    pub fn new(m: &Representation) -> Result<Self> {
        let q = m.quiver();
        let field = m.field();
        let paths = PathTable::new(q)?;
        let n = q.vertex_count();
        let generators: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..m.dim_at(v)).map(move |k| (v, k))).collect();
        let projectives = (0..n).map(|v| projective_from(&paths, q, field, v)).collect::<Result<Vec<_>>>()?;
        let top = if generators.is_empty() {
            Representation::zero(q, field)
        } else {
            Representation::direct_sum(&generators.iter().map(|&(v, _)| projectives[v].clone()).collect::<Vec<_>>())?
        };
        let block_offsets: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                let mut off = 0;
                generators
                    .iter()
                    .map(|&(v, _)| {
                        let o = off;
                        off += paths.between(u, v).len();
                        o
                    })
                    .collect()
            })
            .collect();

        // Cover at u: the copy of path p: u -> v in block (v, k) maps to (e_k)·p.
        let mut kernels = Vec::with_capacity(n);
        for u in 0..n {
            let mut cover = Matrix::zeros(field, m.dim_at(u), top.dim_at(u));
            for (g, &(v, k)) in generators.iter().enumerate() {
                for (idx, p) in paths.between(u, v).iter().enumerate() {
                    let col = m.path_action(p).column(k);
                    for (r, x) in col.into_iter().enumerate() {
                        cover[(r, block_offsets[u][g] + idx)] = x;
                    }
                }
            }
            kernels.push(kernel(&cover));
        }

        let labels = (0..n).map(|u| (0..kernels[u].dim()).map(|k| format!("{}.k{k}", q.vertex_label(u))).collect()).collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (u, v) = (a.source, a.target);
                let rows: Vec<Vec<Scalar>> = kernels[v]
                    .basis
                    .iter()
                    .map(|b| kernels[u].coordinates(&top.action(k).apply(b)))
                    .collect();
                Matrix::from_rows(field, kernels[u].dim(), rows).transpose()
            })
            .collect();
        let kernel_rep = Representation::with_labels(q, field, labels, actions)?;
        Ok(ProjectivePresentation {
            module: m.clone(),
            generators,
            top,
            kernel: kernel_rep,
            kernels,
            block_offsets,
            paths,
        })
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn top(&self) -> &Representation {
        &self.top
    }

    pub fn kernel(&self) -> &Representation {
        &self.kernel
    }

    /// The inclusion `K -> P⁰`.
    pub fn inclusion(&self) -> Vec<Matrix> {
        self.kernels
            .iter()
            .enumerate()
            .map(|(u, k)| Matrix::from_rows(self.module.field(), self.top.dim_at(u), k.basis.clone()).transpose())
            .collect()
    }

    /// Restriction `K' -> K` of a lift `P⁰' -> P⁰` of `f: M' -> M`, where
    /// `self` presents `M'` and `target` presents `M`.
    pub fn lift(&self, target: &ProjectivePresentation, f: &[Matrix]) -> Vec<Matrix> {
        let field = self.module.field();
        let n = self.module.quiver().vertex_count();
        let index = |p: &ProjectivePresentation, v: usize, k: usize| {
            p.generators.iter().position(|&g| g == (v, k)).expect("generator exists")
        };
        (0..n)
            .map(|u| {
                let mut fp = Matrix::zeros(field, target.top.dim_at(u), self.top.dim_at(u));
                for (g, &(v, b)) in self.generators.iter().enumerate() {
                    let image = apply_at(f, v, &unit(field, self.module.dim_at(v), b));
                    for (k, c) in image.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let tg = index(target, v, k);
                        for idx in 0..self.paths.between(u, v).len() {
                            fp[(target.block_offsets[u][tg] + idx, self.block_offsets[u][g] + idx)] = c.clone();
                        }
                    }
                }
                let rows: Vec<Vec<Scalar>> = self.kernels[u]
                    .basis
                    .iter()
                    .map(|b| target.kernels[u].coordinates(&fp.apply(b)))
                    .collect();
                Matrix::from_rows(field, target.kernels[u].dim(), rows).transpose()
            })
            .collect()
    }
}

fn unit(field: Field, len: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[k] = field.one();
    v
}

/// `Ext¹(M, N)` with a chosen basis of classes in `Hom(K, N)`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    hom_k: HomSpace,
    quotient: QuotientSpace,
}

impl Ext1 {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Representative in `Hom(K, N)` of the `k`-th basis class.
    pub fn representative(&self, k: usize) -> Vec<Matrix> {
        self.hom_k.combine(self.quotient.representative(k))
    }

    /// Class coordinates of a map `K -> N`.
    pub fn class_of(&self, h: &[Matrix]) -> Vec<Scalar> {
        self.quotient.project(&self.hom_k.coordinates(h))
    }

    fn matrix_of(&self, dst: &Ext1, image: impl Fn(Vec<Matrix>) -> Vec<Matrix>) -> Matrix {
        let field = self.hom_k.field;
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|k| dst.class_of(&image(self.representative(k)))).collect();
        Matrix::from_rows(field, dst.dim(), cols).transpose()
    }

    /// `Ext¹(M, g): Ext¹(M, N) -> Ext¹(M, N')` for `g: N -> N'`; `dst` must use
    /// the same presentation of `M`.
    pub fn map_covariant(&self, dst: &Ext1, g: &[Matrix]) -> Matrix {
        self.matrix_of(dst, |h| compose(g, &h))
    }

    /// `Ext¹(f, N): Ext¹(M, N) -> Ext¹(M', N)` given the restriction
    /// `f_K: K' -> K` of a lift of `f: M' -> M`.
    pub fn map_contravariant(&self, dst: &Ext1, f_k: &[Matrix]) -> Matrix {
        self.matrix_of(dst, |h| compose(&h, f_k))
    }
}

pub fn ext1(m: &Representation, n: &Representation) -> Result<Ext1> {
    ext1_with(&ProjectivePresentation::new(m)?, n)
}

pub fn ext1_with(pres: &ProjectivePresentation, n: &Representation) -> Result<Ext1> {
    same_category(pres.module(), n)?;
    let hom_k = hom_rep(pres.kernel(), n)?;
    let hom_top = hom_rep(pres.top(), n)?;
    let inclusion = pres.inclusion();
    let restricted: Vec<Vec<Scalar>> =
        hom_top.basis().into_iter().map(|r| hom_k.coordinates(&compose(&r, &inclusion))).collect();
    let d = hom_k.dim();
    let field = n.field();
    let spanning: Vec<Vec<Scalar>> = (0..d).map(|k| unit(field, d, k)).collect();
    let quotient = QuotientSpace::new(field, d, &spanning, &restricted);
    Ok(Ext1 { hom_k, quotient })
}
