//! Bimodules over a path algebra, the bimodule `Ω = Ext¹(DA, A)` and its
//! tensor powers.
//!
//! A bimodule `W` is stored by components `W[j][i] = e_j W e_i`. For an arrow
//! `γ: u -> v` the left action maps `W[u][i] -> W[v][i]` and the right action
//! maps `W[j][v] -> W[j][u]`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuotientSpace};
use crate::paths::{GradedDimTable, Grading};
use crate::quiver::{classify, Quiver};
use crate::scalar::{Field, Scalar};

use super::ext::{ext1_with, Ext1, ProjectivePresentation};
use super::representation::{injective_from, injective_map, projective_from, projective_map, PathTable, Representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    quiver: Quiver,
    field: Field,
    dims: Vec<Vec<usize>>,
    /// `left[γ][i]: W[u][i] -> W[v][i]`.
    left: Vec<Vec<Matrix>>,
    /// `right[γ][j]: W[j][v] -> W[j][u]`.
    right: Vec<Vec<Matrix>>,
}

impl Bimodule {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `dim e_j W e_i`.
    pub fn dim(&self, j: usize, i: usize) -> usize {
        self.dims[j][i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn left(&self, gamma: usize, i: usize) -> &Matrix {
        &self.left[gamma][i]
    }

    pub fn right(&self, gamma: usize, j: usize) -> &Matrix {
        &self.right[gamma][j]
    }

    /// Whether `(γ·w)·δ = γ·(w·δ)` for all arrows `γ, δ`, on every component.
    pub fn actions_commute(&self) -> bool {
        let arrows = self.quiver.arrows();
        arrows.iter().enumerate().all(|(g, ga)| {
            arrows.iter().enumerate().all(|(d, da)| {
                // W[u][v'] -> W[v][u'] for γ: u -> v and δ: u' -> v'.
                let left_then_right = self.right[d][ga.target].mul(&self.left[g][da.target]).unwrap();
                let right_then_left = self.left[g][da.source].mul(&self.right[d][ga.source]).unwrap();
                left_then_right == right_then_left
            })
        })
    }

    /// Table with entries `(i, j, p) = dim W[j][i]`.
    pub fn add_to_table(&self, table: &mut GradedDimTable, p: u32) {
        let n = self.quiver.vertex_count();
        for i in 0..n {
            for j in 0..n {
                table.add(self.quiver.vertex_label(i), self.quiver.vertex_label(j), p, self.dims[j][i]);
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let label = |v: usize| self.quiver.vertex_label(v).to_string();
        let matrix = |m: &Matrix| -> Value {
            (0..m.rows()).map(|r| m.row(r).iter().map(Scalar::to_string).collect::<Vec<_>>()).collect()
        };
        let n = self.quiver.vertex_count();
        let components: Vec<Value> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.dims[j][i] > 0)
            .map(|(i, j)| json!({"i": label(i), "j": label(j), "dim": self.dims[j][i]}))
            .collect();
        let mut actions = Vec::new();
        for (g, a) in self.quiver.arrows().iter().enumerate() {
            for i in 0..n {
                let m = &self.left[g][i];
                if m.rows() > 0 && m.cols() > 0 {
                    actions.push(json!({"arrow": a.id, "side": "left", "i": label(i), "matrix": matrix(m)}));
                }
            }
            for j in 0..n {
                let m = &self.right[g][j];
                if m.rows() > 0 && m.cols() > 0 {
                    actions.push(json!({"arrow": a.id, "side": "right", "j": label(j), "matrix": matrix(m)}));
                }
            }
        }
        json!({"field": self.field.to_string(), "components": components, "actions": actions})
    }
}

/// `A` as a bimodule over itself: `A[j][i]` has the paths `i -> j`.
pub fn regular_bimodule(q: &Quiver, field: Field) -> Result<Bimodule> {
    let t = PathTable::new(q)?;
    let n = q.vertex_count();
    let dims = (0..n).map(|j| (0..n).map(|i| t.between(i, j).len()).collect()).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (g, a) in q.arrows().iter().enumerate() {
        // γ∘p on paths into u, as P_u -> P_v at vertex i.
        let pm = projective_map(&t, q, field, g);
        left.push(pm);
        let gp = t.path_quiver().arrow_path(g);
        right.push(
            (0..n)
                .map(|j| {
                    let mut m = Matrix::zeros(field, t.between(a.source, j).len(), t.between(a.target, j).len());
                    for (c, p) in t.between(a.target, j).iter().enumerate() {
                        m[(t.index(&p.after(&gp).expect("p∘γ composes")), c)] = field.one();
                    }
                    m
                })
                .collect(),
        );
    }
    Ok(Bimodule { quiver: q.clone(), field, dims, left, right })
}

/// Presentations of the indecomposable injectives and the lifts of the maps
/// `I_u -> I_v` induced by each arrow.
struct InjectiveData {
    presentations: Vec<ProjectivePresentation>,
    /// `lifts[γ]`: `K(I_u) -> K(I_v)` for `γ: u -> v`.
    lifts: Vec<Vec<Matrix>>,
}

impl InjectiveData {
    fn new(q: &Quiver, field: Field, t: &PathTable) -> Result<Self> {
        let presentations = (0..q.vertex_count())
            .map(|i| ProjectivePresentation::new(&injective_from(t, q, field, i)?))
            .collect::<Result<Vec<_>>>()?;
        let lifts = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, a)| {
                presentations[a.source].lift(&presentations[a.target], &injective_map(t, q, field, g))
            })
            .collect();
        Ok(InjectiveData { presentations, lifts })
    }

    /// Ext¹(I_i, M) for every `i`, with the right action of each arrow.
    fn ext_column(&self, q: &Quiver, m: &Representation) -> Result<(Vec<Ext1>, Vec<Matrix>)> {
        let exts = self.presentations.iter().map(|p| ext1_with(p, m)).collect::<Result<Vec<_>>>()?;
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(g, a)| exts[a.target].map_contravariant(&exts[a.source], &self.lifts[g]))
            .collect();
        Ok((exts, actions))
    }
}

/// `Ω = Ext¹(DA, A)` with components `Ω[j][i] = Ext¹(I_i, P_j)`; the left
/// action comes from `P_u -> P_v`, the right action from `I_u -> I_v`.
pub fn omega(q: &Quiver, field: Field) -> Result<Bimodule> {
    let t = PathTable::new(q)?;
    let n = q.vertex_count();
    let inj = InjectiveData::new(q, field, &t)?;
    let mut exts: Vec<Vec<Ext1>> = Vec::with_capacity(n);
    let mut right_by_j: Vec<Vec<Matrix>> = Vec::with_capacity(n);
    for j in 0..n {
        let (row, actions) = inj.ext_column(q, &projective_from(&t, q, field, j)?)?;
        exts.push(row);
        right_by_j.push(actions);
    }
    let dims = exts.iter().map(|row| row.iter().map(Ext1::dim).collect()).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (g, a) in q.arrows().iter().enumerate() {
        let pm = projective_map(&t, q, field, g);
        left.push((0..n).map(|i| exts[a.source][i].map_covariant(&exts[a.target][i], &pm)).collect());
        right.push((0..n).map(|j| right_by_j[j][g].clone()).collect());
    }
    Ok(Bimodule { quiver: q.clone(), field, dims, left, right })
}

/// `W ⊗_A V`: the sum `⊕_l W[j][l] ⊗ V[l][i]` modulo `w·γ ⊗ v − w ⊗ γ·v`.
pub fn tensor(w: &Bimodule, v: &Bimodule) -> Result<Bimodule> {
    if w.quiver != v.quiver || w.field != v.field {
        return Err(Error::ShapeMismatch("bimodules over different algebras".into()));
    }
    let q = &w.quiver;
    let field = w.field;
    let n = q.vertex_count();
    let arrows = q.arrows();

    // Block offsets of l inside component (j, i).
    let offsets = |j: usize, i: usize| -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(n);
        let mut total = 0;
        for l in 0..n {
            off.push(total);
            total += w.dims[j][l] * v.dims[l][i];
        }
        (off, total)
    };

    let mut spaces: Vec<Vec<QuotientSpace>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let (off, total) = offsets(j, i);
            let mut relations = Vec::new();
            for (g, a) in arrows.iter().enumerate() {
                let (l, l2) = (a.source, a.target);
                let wr = &w.right[g][j]; // W[j][l2] -> W[j][l]
                let vl = &v.left[g][i]; // V[l][i] -> V[l2][i]
                for x in 0..w.dims[j][l2] {
                    for y in 0..v.dims[l][i] {
                        let mut rel = vec![field.zero(); total];
                        for r in 0..w.dims[j][l] {
                            let c = &wr[(r, x)];
                            if !c.is_zero() {
                                rel[off[l] + r * v.dims[l][i] + y] += c;
                            }
                        }
                        for s in 0..v.dims[l2][i] {
                            let c = &vl[(s, y)];
                            if !c.is_zero() {
                                rel[off[l2] + x * v.dims[l2][i] + s] -= c;
                            }
                        }
                        relations.push(rel);
                    }
                }
            }
            let spanning: Vec<Vec<Scalar>> = (0..total)
                .map(|k| {
                    let mut e = vec![field.zero(); total];
                    e[k] = field.one();
                    e
                })
                .collect();
            row.push(QuotientSpace::new(field, total, &spanning, &relations));
        }
        spaces.push(row);
    }

    // Outer actions: apply to representatives blockwise, then project.
    let induced = |src: &QuotientSpace, dst: &QuotientSpace, block: &dyn Fn(usize) -> Matrix, src_off: &[usize], dst_off: &[usize]| {
        let cols: Vec<Vec<Scalar>> = (0..src.dim())
            .map(|k| {
                let x = src.representative(k);
                let mut y = vec![field.zero(); dst.ambient_dim()];
                for l in 0..n {
                    let m = block(l);
                    let end = src_off.get(l + 1).copied().unwrap_or(src.ambient_dim());
                    let image = m.apply(&x[src_off[l]..end]);
                    for (t, val) in image.into_iter().enumerate() {
                        y[dst_off[l] + t] = val;
                    }
                }
                dst.project(&y)
            })
            .collect();
        Matrix::from_rows(field, dst.dim(), cols).transpose()
    };

    let dims: Vec<Vec<usize>> = spaces.iter().map(|row| row.iter().map(QuotientSpace::dim).collect()).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (g, a) in arrows.iter().enumerate() {
        let (u, t) = (a.source, a.target);
        left.push(
            (0..n)
                .map(|i| {
                    let block = |l: usize| w.left[g][l].kron(&Matrix::identity(field, v.dims[l][i]));
                    induced(&spaces[u][i], &spaces[t][i], &block, &offsets(u, i).0, &offsets(t, i).0)
                })
                .collect(),
        );
        right.push(
            (0..n)
                .map(|j| {
                    let block = |l: usize| Matrix::identity(field, w.dims[j][l]).kron(&v.right[g][l]);
                    induced(&spaces[j][t], &spaces[j][u], &block, &offsets(j, t).0, &offsets(j, u).0)
                })
                .collect(),
        );
    }
    Ok(Bimodule { quiver: q.clone(), field, dims, left, right })
}

/// `W^{⊗p}`, with `W^{⊗0} = A` and `W^{⊗p} = W ⊗ W^{⊗(p-1)}`.
pub fn tensor_power(w: &Bimodule, p: usize) -> Result<Bimodule> {
    let mut acc = regular_bimodule(&w.quiver, w.field)?;
    for _ in 0..p {
        acc = tensor(w, &acc)?;
    }
    Ok(acc)
}

/// All tensor powers of `Ω` up to and including the first zero one (Dynkin
/// input), or powers `0..=max_power` when given. Powers beyond a zero power
/// are checked to vanish too, by computing one more.
pub fn omega_powers(q: &Quiver, field: Field, max_power: Option<usize>) -> Result<Vec<Bimodule>> {
    if !q.is_acyclic() {
        return Err(Error::Cyclic);
    }
    if max_power.is_none() && classify(q).dynkin_type.is_none() {
        return Err(Error::NeedsExplicitBound);
    }
    let w = omega(q, field)?;
    let mut powers = vec![regular_bimodule(q, field)?];
    loop {
        let p = powers.len() - 1;
        let last = &powers[p];
        let done = match max_power {
            Some(m) => p >= m,
            None => last.is_zero() && p > 0,
        };
        if done {
            break;
        }
        let next = tensor(&w, last)?;
        powers.push(next);
    }
    if max_power.is_none() {
        let extra = tensor(&w, powers.last().expect("nonempty"))?;
        assert!(extra.is_zero(), "tensor powers reappear after vanishing");
    }
    Ok(powers)
}

/// `Λ^te`: the star-graded table of `T_A(Ω) = ⊕_p Ω^{⊗p}`.
pub fn lambda_te(q: &Quiver, field: Field, max_power: Option<usize>) -> Result<GradedDimTable> {
    let mut table = GradedDimTable::new(Grading::Star);
    for (p, w) in omega_powers(q, field, max_power)?.iter().enumerate() {
        w.add_to_table(&mut table, p as u32);
    }
    Ok(table)
}

/// `τ⁻M = Ext¹(DA, M)`: the right module with `(τ⁻M)_i = Ext¹(I_i, M)`.
pub fn tau_minus(m: &Representation) -> Result<Representation> {
    let q = m.quiver();
    let field = m.field();
    let t = PathTable::new(q)?;
    let inj = InjectiveData::new(q, field, &t)?;
    let (exts, actions) = inj.ext_column(q, m)?;
    let dims: Vec<usize> = exts.iter().map(Ext1::dim).collect();
    Representation::new(q, field, &dims, actions)
}
