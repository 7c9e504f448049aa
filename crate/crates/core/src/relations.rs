//! Standard and q-deformed preprojective relations, and the combinatorial
//! preprojective algebra as a graded quotient of the doubled path algebra.
//!
//! At a vertex `i` the standard relation is
//! `ρ_i = Σ_{t(a)=i} a∘a* − Σ_{s(b)=i} b*∘b`, and the q-deformed one is
//! `ρ_{q,i} = Σ_{s(a)=i} a*∘a − Σ_{t(a)=i} q(a)·a∘a*`. For `q ≡ 1` the two
//! differ by a sign, which does not change the ideal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::paths::{graded_quotient, GradedDimTable, Grading, PathElement, QuotientPresentation, StopPolicy};
use crate::quiver::{double, DoubledQuiver, Quiver};
use crate::scalar::{Field, Scalar};

/// A value `q(a)` for every arrow of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAssignment {
    field: Field,
    values: Vec<Scalar>,
}

impl QAssignment {
    pub fn constant(q: &Quiver, value: Scalar) -> Self {
        QAssignment { field: value.field(), values: vec![value; q.arrows().len()] }
    }

    /// Values given per arrow identifier. Every arrow needs a value unless
    /// `default_one` is set, in which case missing arrows get 1.
    pub fn from_map(q: &Quiver, field: Field, values: &BTreeMap<String, Scalar>, default_one: bool) -> Result<Self> {
        for id in values.keys() {
            q.arrow_index(id)?;
        }
        let values = q
            .arrows()
            .iter()
            .map(|a| match values.get(&a.id) {
                Some(v) => Ok(v.clone()),
                None if default_one => Ok(field.one()),
                None => Err(Error::MissingQValue(a.id.clone())),
            })
            .collect::<Result<_>>()?;
        Ok(QAssignment { field, values })
    }

    /// Parses `a=2,b=-1/3`.
    pub fn parse(q: &Quiver, field: Field, text: &str, default_one: bool) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (id, value) = part
                .split_once('=')
                .ok_or_else(|| Error::BadScalar(format!("expected `<arrow>=<value>`, got `{part}`")))?;
            map.insert(id.trim().to_string(), field.parse(value)?);
        }
        Self::from_map(q, field, &map, default_one)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Value for base arrow index `k`.
    pub fn get(&self, k: usize) -> &Scalar {
        &self.values[k]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Rejects zero values, naming the first offending arrow.
    pub fn check_nonzero(&self, q: &Quiver) -> Result<()> {
        match self.values.iter().position(Scalar::is_zero) {
            Some(k) => Err(Error::ZeroQValue(q.arrows()[k].id.clone())),
            None => Ok(()),
        }
    }
}

/// `a∘a*` for base arrow `k` (a loop at the target of `a`).
fn out_and_back(dq: &DoubledQuiver, k: usize) -> crate::paths::Path {
    let pq = dq.path_quiver();
    let star = dq.starred_index(k);
    pq.path(pq.arrows()[star].source, &[star, k]).expect("a* then a composes")
}

/// `a*∘a` for base arrow `k` (a loop at the source of `a`).
fn back_and_out(dq: &DoubledQuiver, k: usize) -> crate::paths::Path {
    let pq = dq.path_quiver();
    pq.path(pq.arrows()[k].source, &[k, dq.starred_index(k)]).expect("a then a* composes")
}

/// `ρ_i` for every vertex with at least one incident arrow, in vertex order.
pub fn standard_relations(dq: &DoubledQuiver, field: Field) -> Vec<PathElement> {
    let base = dq.base();
    (0..base.vertex_count())
        .map(|i| {
            let mut r = PathElement::zero(field);
            for (k, a) in base.arrows().iter().enumerate() {
                if a.target == i {
                    r.add_term(out_and_back(dq, k), field.one());
                }
                if a.source == i {
                    r.add_term(back_and_out(dq, k), field.from_i64(-1));
                }
            }
            r
        })
        .filter(|r| !r.is_zero())
        .collect()
}

/// `ρ_{q,i}` for every vertex with at least one incident arrow.
pub fn q_relations(dq: &DoubledQuiver, qa: &QAssignment) -> Vec<PathElement> {
    q_relations_by_vertex(dq, qa).into_iter().flatten().collect()
}

/// `ρ_{q,i}` indexed by vertex; `None` where the relation is zero.
pub fn q_relations_by_vertex(dq: &DoubledQuiver, qa: &QAssignment) -> Vec<Option<PathElement>> {
    let base = dq.base();
    let field = qa.field();
    (0..base.vertex_count())
        .map(|i| {
            let mut r = PathElement::zero(field);
            for (k, a) in base.arrows().iter().enumerate() {
                if a.source == i {
                    r.add_term(back_and_out(dq, k), field.one());
                }
                if a.target == i {
                    r.add_term(out_and_back(dq, k), -qa.get(k));
                }
            }
            (!r.is_zero()).then_some(r)
        })
        .collect()
}

/// The combinatorial preprojective algebra `kQ̄ / ⟨ρ_q⟩` (standard relations
/// when `qa` is `None`) with its star-graded dimension table.
///
/// `stop` defaults to automatic stopping, which requires Dynkin input.
pub fn lambda_co(
    q: &Quiver,
    qa: Option<&QAssignment>,
    field: Field,
    stop: Option<StopPolicy>,
) -> Result<(QuotientPresentation, GradedDimTable)> {
    let dq = double(q);
    let relations = match qa {
        Some(qa) => {
            if qa.field() != field {
                return Err(Error::BadField(format!("q-values live in {} but the computation uses {field}", qa.field())));
            }
            q_relations(&dq, qa)
        }
        None => standard_relations(&dq, field),
    };
    let pres = graded_quotient(dq.path_quiver(), &relations, field, stop.unwrap_or(StopPolicy::Auto))?;
    let table = pres.dims(Grading::Star);
    Ok((pres, table))
}

/// `Λ^co` through star degree `max_degree`, for input without automatic
/// stopping.
///
/// On an acyclic quiver unstarred runs have length below the vertex count, so
/// star degree `p` needs paths of length at most `p + (p+1)(n-1)`; the table
/// is complete through `max_degree`. A quiver with cycles has no such bound,
/// and the table is graded by length up to `max_degree` instead.
pub fn lambda_co_bounded(
    q: &Quiver,
    qa: Option<&QAssignment>,
    field: Field,
    max_degree: usize,
) -> Result<(QuotientPresentation, GradedDimTable)> {
    if !q.is_acyclic() {
        let (pres, _) = lambda_co(q, qa, field, Some(StopPolicy::MaxDegree(max_degree)))?;
        let table = pres.dims(Grading::Length);
        return Ok((pres, table));
    }
    let n = q.vertex_count().max(1);
    let length = max_degree + (max_degree + 1) * (n - 1);
    let (pres, table) = lambda_co(q, qa, field, Some(StopPolicy::MaxDegree(length)))?;
    Ok((pres, table.truncated(max_degree as u32)))
}

/// `nf(x∘y)` in the quotient.
pub fn multiply(x: &PathElement, y: &PathElement, pres: &QuotientPresentation) -> Result<PathElement> {
    pres.multiply(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{generate, parse_quiver};

    const Q: Field = Field::Rational;

    #[test]
    fn standard_relation_examples() {
        let dq = double(&generate("A 2 linear").unwrap());
        let pq = dq.path_quiver();
        let rel: Vec<String> = standard_relations(&dq, Q).iter().map(|r| pq.format_element(r)).collect();
        assert_eq!(rel, vec!["-a*∘a", "a∘a*"]);

        let dq = double(&generate("A 3 linear").unwrap());
        let pq = dq.path_quiver();
        let r2 = &standard_relations(&dq, Q)[1];
        let expected = PathElement::from_path(Q, pq.composite(&["a", "a*"]))
            .sub(&PathElement::from_path(Q, pq.composite(&["b*", "b"])));
        assert_eq!(r2, &expected);

        assert!(standard_relations(&double(&parse_quiver("vertex x").unwrap()), Q).is_empty());
    }

    #[test]
    fn q_relation_examples() {
        let a2 = generate("A 2 linear").unwrap();
        let dq = double(&a2);
        let pq = dq.path_quiver();
        let c = Q.from_i64(7);
        let qa = QAssignment::constant(&a2, c.clone());
        let rel = q_relations(&dq, &qa);
        assert_eq!(rel[0], PathElement::from_path(Q, pq.composite(&["a*", "a"])));
        assert_eq!(rel[1], PathElement::term(-c, pq.composite(&["a", "a*"])));

        let a3 = generate("A 3 linear").unwrap();
        let dq = double(&a3);
        let pq = dq.path_quiver();
        let qa = QAssignment::parse(&a3, Q, "a=2,b=5", false).unwrap();
        let r2 = &q_relations(&dq, &qa)[1];
        let expected = PathElement::from_path(Q, pq.composite(&["b*", "b"]))
            .sub(&PathElement::term(Q.from_i64(2), pq.composite(&["a", "a*"])));
        assert_eq!(r2, &expected);
    }

    #[test]
    fn q_one_is_negated_standard() {
        for req in ["A 4 alternating", "D 5 inward", "E 6 standard"] {
            let q = generate(req).unwrap();
            let dq = double(&q);
            let ones = q_relations(&dq, &QAssignment::constant(&q, Q.one()));
            let std = standard_relations(&dq, Q);
            for (a, b) in ones.iter().zip(&std) {
                assert!(a.add(b).is_zero());
            }
        }
    }

    #[test]
    fn q_assignment_parsing() {
        let a3 = generate("A 3 linear").unwrap();
        assert_eq!(QAssignment::parse(&a3, Q, "a=2", false).unwrap_err(), Error::MissingQValue("b".into()));
        let qa = QAssignment::parse(&a3, Q, "a=2", true).unwrap();
        assert!(qa.get(1).is_one());
        assert_eq!(QAssignment::parse(&a3, Q, "z=2", true).unwrap_err(), Error::UnknownArrow("z".into()));
        let zero = QAssignment::parse(&a3, Q, "a=0,b=1", false).unwrap();
        assert_eq!(zero.check_nonzero(&a3).unwrap_err(), Error::ZeroQValue("a".into()));
        assert!(QAssignment::parse(&a3, Q, "a:2", true).is_err());
    }

    #[test]
    fn lambda_a2_table() {
        let (_, t) = lambda_co(&generate("A 2 linear").unwrap(), None, Q, None).unwrap();
        assert_eq!(t.total(), 4);
        assert_eq!(t.get("1", "1", 0), 1);
        assert_eq!(t.get("2", "2", 0), 1);
        assert_eq!(t.get("1", "2", 0), 1);
        assert_eq!(t.get("2", "1", 1), 1);
    }

    #[test]
    fn lambda_a3_table() {
        let (_, t) = lambda_co(&generate("A 3 linear").unwrap(), None, Q, None).unwrap();
        assert_eq!(t.degree_totals(), BTreeMap::from([(0, 6), (1, 3), (2, 1)]));
        let p1: Vec<(String, String)> = t.degree(1).into_keys().collect();
        assert_eq!(
            p1,
            vec![("2".into(), "1".into()), ("2".into(), "2".into()), ("3".into(), "2".into())]
        );
        assert_eq!(t.get("3", "1", 2), 1);
    }

    #[test]
    fn non_dynkin_needs_bound() {
        let q = parse_quiver("vertex 1; vertex 2; arrow a: 1 -> 2; arrow b: 1 -> 2").unwrap();
        assert_eq!(lambda_co(&q, None, Q, None).unwrap_err(), Error::NeedsExplicitBound);
        let (_, t) = lambda_co(&q, None, Q, Some(StopPolicy::MaxDegree(2))).unwrap();
        assert!(t.total() > 0);
        // Degree 0 of the Kronecker quiver: e_1, e_2, a, b.
        let (_, t) = lambda_co_bounded(&q, None, Q, 1).unwrap();
        assert_eq!(t.degree_totals().get(&0), Some(&4));
        assert_eq!(t.max_degree(), Some(1));

        let cyc = parse_quiver("vertex 1; arrow l: 1 -> 1").unwrap();
        let (_, t) = lambda_co_bounded(&cyc, None, Q, 3).unwrap();
        assert_eq!(t.grading(), Grading::Length);
    }

    #[test]
    fn multiplication_examples() {
        let (pres, _) = lambda_co(&generate("A 2 linear").unwrap(), None, Q, None).unwrap();
        let pq = pres.quiver().clone();
        let a = PathElement::from_path(Q, pq.composite(&["a"]));
        let s = PathElement::from_path(Q, pq.composite(&["a*"]));
        let e2 = PathElement::from_path(Q, pq.trivial(1));
        assert!(multiply(&a, &s, &pres).unwrap().is_zero());
        assert_eq!(multiply(&e2, &a, &pres).unwrap(), a);
        assert_eq!(multiply(&s, &e2.scale(&Q.from_i64(2)), &pres).unwrap(), s.scale(&Q.from_i64(2)));
        // Not composable: a∘a.
        assert!(multiply(&a, &a, &pres).unwrap().is_zero());
    }
}
