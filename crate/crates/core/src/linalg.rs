//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row);
        }
        Matrix { field, rows: n, cols, entries }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        out[(r1 * rhs.rows + r2, c1 * rhs.cols + c2)] = a * &rhs[(r2, c2)];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form and the (strictly increasing) pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.entries.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a[(row, col)].inv();
        for c in col..a.cols {
            a[(row, c)] = &a[(row, c)] * &inv;
        }
        for r in 0..a.rows {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                if !a[(row, c)].is_zero() {
                    let delta = &factor * &a[(row, c)];
                    a[(r, c)] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    let mut basis = EchelonBasis::new(m.field, m.cols);
    for r in 0..m.rows {
        basis.insert(m.row(r).to_vec());
    }
    basis.rank()
}

/// Null-space basis. Each vector has a 1 at its own free column and 0 at every
/// other free column, so the coordinates of any kernel element in this basis
/// are its values at the free columns (see [`Kernel::coordinates`]).
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: Vec<Vec<Scalar>>,
    pub free_columns: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector assumed to lie in the kernel.
    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free_columns.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn combine(&self, field: Field, coords: &[Scalar], len: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (c, v) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }
}

pub fn kernel(m: &Matrix) -> Kernel {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free_columns: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free_columns
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect();
    Kernel { basis, free_columns }
}

/// Solves `m x = b`; `Ok(None)` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {}x{} system",
            b.len(),
            m.rows,
            m.cols
        )));
    }
    let mut aug = Matrix::zeros(m.field, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols)] = b[r].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = red[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

/// Incrementally maintained reduced row echelon basis of a subspace of
/// `field^dim`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// `pivot_row[c]` is the row whose pivot is column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(field: Field, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[Scalar])> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        order.into_iter().map(move |r| (self.pivots[r], self.rows[r].as_slice()))
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduces `v` modulo the subspace; the result vanishes at every pivot.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// The quotient `V / U` of a subspace `V ⊆ field^n` by a subspace `U ⊆ V`,
/// with a chosen complement basis.
///
/// Elements of `V` are projected to coordinates along the complement.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: Field,
    ambient: usize,
    /// Basis of `U`, reduced.
    sub: EchelonBasis,
    /// Complement representatives, stored both raw and reduced modulo `U`.
    complement: Vec<Vec<Scalar>>,
    /// Echelon form of the complement after reduction modulo `U`, with the
    /// change of basis back to `complement` indices.
    reduced: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
}

impl QuotientSpace {
    /// `spanning` spans `V`, `sub` spans `U`; `U ⊆ V` is assumed.
    pub fn new(field: Field, ambient: usize, spanning: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> Self {
        let mut sub_basis = EchelonBasis::new(field, ambient);
        for u in sub {
            sub_basis.insert(u.clone());
        }
        let mut total = sub_basis.clone();
        let mut complement = Vec::new();
        for v in spanning {
            if total.insert(v.clone()) {
                complement.push(v.clone());
            }
        }
        let mut q = QuotientSpace { field, ambient, sub: sub_basis, complement, reduced: Vec::new() };
        q.build_reduction();
        q
    }

    fn build_reduction(&mut self) {
        // Gaussian elimination on the reduced complement vectors, tracking
        // combinations so projections can be expressed in complement indices.
        let k = self.complement.len();
        let mut rows: Vec<(Vec<Scalar>, Vec<Scalar>)> = self
            .complement
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut tag = vec![self.field.zero(); k];
                tag[i] = self.field.one();
                (self.sub.reduce(v.clone()), tag)
            })
            .collect();
        let mut done: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        while let Some((mut v, mut tag)) = rows.pop() {
            for (p, row, rtag) in &done {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &(&f * y);
                }
                for (x, y) in tag.iter_mut().zip(rtag) {
                    *x -= &(&f * y);
                }
            }
            let p = v.iter().position(|x| !x.is_zero()).expect("complement is independent modulo U");
            let inv = v[p].inv();
            v.iter_mut().for_each(|x| *x *= &inv);
            tag.iter_mut().for_each(|x| *x *= &inv);
            for (_, row, rtag) in done.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &(&f * y);
                }
                for (x, y) in rtag.iter_mut().zip(&tag) {
                    *x -= &(&f * y);
                }
            }
            done.push((p, v, tag));
        }
        self.reduced = done;
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Representative of the `k`-th basis class.
    pub fn representative(&self, k: usize) -> &[Scalar] {
        &self.complement[k]
    }

    /// Coordinates of the class of `v` (which must lie in `V`).
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = self.sub.reduce(v.to_vec());
        let mut coords = vec![self.field.zero(); self.complement.len()];
        for (p, row, tag) in &self.reduced {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &(&f * y);
            }
            for (c, t) in coords.iter_mut().zip(tag) {
                *c += &(&f * t);
            }
        }
        debug_assert!(r.iter().all(Scalar::is_zero), "projected vector not in V");
        coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 2);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1]));

        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let f5 = Field::prime(5).unwrap();
        let (r, p) = rref(&Matrix::from_i64(f5, &[&[2]]));
        assert_eq!(r, Matrix::from_i64(f5, &[&[1]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rank_kernel_solve_examples() {
        assert_eq!(rank(&Matrix::zeros(Q, 3, 3)), 0);

        let k = kernel(&Matrix::from_i64(Q, &[&[1, 1]]));
        assert_eq!(k.basis, vec![vec![Q.from_i64(-1), Q.from_i64(1)]]);

        let m = Matrix::from_i64(Q, &[&[2, 0], &[0, 3]]);
        let x = solve(&m, &[Q.from_i64(4), Q.from_i64(9)]).unwrap();
        assert_eq!(x, Some(vec![Q.from_i64(2), Q.from_i64(3)]));

        let sing = Matrix::from_i64(Q, &[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&sing, &[Q.from_i64(1), Q.from_i64(2)]).unwrap(), None);
        assert!(matches!(solve(&m, &[Q.one()]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn quotient_projection() {
        // V = Q^3, U = span(e0 + e1); complement picks e0 and e2.
        let e = |i: usize| {
            let mut v = vec![Q.zero(); 3];
            v[i] = Q.one();
            v
        };
        let u = vec![Q.one(), Q.one(), Q.zero()];
        let qs = QuotientSpace::new(Q, 3, &[e(0), e(1), e(2)], &[u]);
        assert_eq!(qs.dim(), 2);
        // e1 ≡ -e0 modulo U.
        assert_eq!(qs.project(&e(1)), vec![Q.from_i64(-1), Q.zero()]);
        assert_eq!(qs.project(&e(2)), vec![Q.zero(), Q.one()]);
    }
}
