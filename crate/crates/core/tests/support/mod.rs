#![allow(dead_code)]

use preproj_core::homology::Representation;
use preproj_core::linalg::Matrix;
use preproj_core::{generate, Field, Quiver, Scalar};
use rand::Rng;

pub const DYNKIN_UP_TO_6: &[&str] = &[
    "A 1 linear",
    "A 2 linear",
    "A 3 linear",
    "A 4 linear",
    "A 5 linear",
    "A 6 linear",
    "D 4 inward",
    "D 5 inward",
    "D 6 inward",
    "E 6 standard",
];

pub fn quiver(request: &str) -> Quiver {
    generate(request).unwrap_or_else(|e| panic!("{request}: {e}"))
}

pub fn random_orientation(q: &Quiver, rng: &mut impl Rng) -> Quiver {
    let flips: Vec<bool> = (0..q.arrows().len()).map(|_| rng.gen()).collect();
    q.reoriented(&flips)
}

/// Every orientation of `q`, by flipping subsets of arrows.
pub fn all_orientations(q: &Quiver) -> Vec<Quiver> {
    let m = q.arrows().len();
    (0..1u32 << m)
        .map(|mask| q.reoriented(&(0..m).map(|k| mask >> k & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let entries = (0..rows).map(|_| (0..cols).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect()).collect();
    Matrix::from_rows(field, cols, entries)
}

pub fn random_representation(q: &Quiver, field: Field, max_dim: usize, rng: &mut impl Rng) -> Representation {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let actions = q.arrows().iter().map(|a| random_matrix(field, dims[a.source], dims[a.target], rng)).collect();
    Representation::new(q, field, &dims, actions).expect("shapes match")
}

/// A random nonzero scalar: a small integer over `F_p`, a small fraction over ℚ.
pub fn random_unit(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let x = match field {
            Field::Rational => field.from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)).unwrap(),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        };
        if !x.is_zero() {
            return x;
        }
    }
}

/// Sum of the coordinates of all positive roots: the total dimension of all
/// indecomposable representations together.
pub fn root_height_sum(q: &Quiver) -> usize {
    preproj_core::positive_roots(q).unwrap().iter().map(|r| r.iter().map(|&x| x as usize).sum::<usize>()).sum()
}
