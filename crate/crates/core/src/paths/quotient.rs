//! Degree-by-degree computation of `kQ / I` for a homogeneous ideal `I`.
//!
//! Paths are bucketed by `(source, target, length, star_degree)`. The ideal
//! piece of length `d` is spanned by the relations of length `d` together with
//! `a∘x` and `x∘a` for arrows `a` and basis elements `x` of the pieces of
//! length `d - 1`; this equals the span of all placements `u∘r∘v`.

use std::collections::{BTreeMap, HashMap};

use super::{GradedDimTable, Grading, Path, PathElement, PathQuiver};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::scalar::{Field, Scalar};

/// Hard limit on the path length explored under [`StopPolicy::Auto`].
pub const AUTO_STOP_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopPolicy {
    /// Stop at the first length where the quotient vanishes, then compute one
    /// more length as a check.
    Auto,
    /// Compute all lengths `0..=n`.
    MaxDegree(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentKey {
    pub source: usize,
    pub target: usize,
    pub length: usize,
    pub star_degree: u32,
}

#[derive(Clone, Debug)]
struct Component {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: EchelonBasis,
}

impl Component {
    fn new(field: Field, mut paths: Vec<Path>) -> Self {
        paths.sort();
        let index = paths.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let ideal = EchelonBasis::new(field, paths.len());
        Component { paths, index, ideal }
    }

    fn quotient_dim(&self) -> usize {
        self.paths.len() - self.ideal.rank()
    }

    fn vector(&self, x: &PathElement) -> Vec<Scalar> {
        let mut v = vec![x.field().zero(); self.paths.len()];
        for (p, c) in x.terms() {
            v[self.index[p]] = c.clone();
        }
        v
    }

    fn element(&self, field: Field, v: &[Scalar]) -> PathElement {
        PathElement::from_terms(field, v.iter().zip(&self.paths).map(|(c, p)| (c.clone(), p.clone())))
    }
}

/// A graded quotient of a path algebra, computed up to a length bound.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    quiver: PathQuiver,
    field: Field,
    relations: Vec<PathElement>,
    components: BTreeMap<ComponentKey, Component>,
    bound: usize,
    vanishing_length: Option<usize>,
}

pub fn graded_quotient(
    quiver: &PathQuiver,
    relations: &[PathElement],
    field: Field,
    stop: StopPolicy,
) -> Result<QuotientPresentation> {
    if stop == StopPolicy::Auto && !quiver.auto_stop_allowed() {
        return Err(Error::NeedsExplicitBound);
    }
    let mut by_length: BTreeMap<usize, Vec<&PathElement>> = BTreeMap::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let key = r.homogeneous_key().ok_or_else(|| Error::InhomogeneousRelation(quiver.format_element(r)))?;
        by_length.entry(key.length).or_default().push(r);
    }

    let mut pres = QuotientPresentation {
        quiver: quiver.clone(),
        field,
        relations: relations.iter().filter(|r| !r.is_zero()).cloned().collect(),
        components: BTreeMap::new(),
        bound: 0,
        vanishing_length: None,
    };

    let mut level: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut d = 0;
    loop {
        pres.add_level(d, &level, by_length.get(&d).map(Vec::as_slice).unwrap_or(&[]));
        pres.bound = d;
        match stop {
            StopPolicy::MaxDegree(n) if d >= n => break,
            StopPolicy::MaxDegree(_) => {}
            StopPolicy::Auto => {
                if let Some(v) = pres.vanishing_length {
                    // One extra length has now been computed past the vanishing one.
                    debug_assert_eq!(v + 1, d);
                    break;
                }
                if pres.level_vanishes(d) {
                    pres.vanishing_length = Some(d);
                } else if d >= AUTO_STOP_CAP {
                    return Err(Error::AutoStopExceeded(AUTO_STOP_CAP));
                }
            }
        }
        level = level
            .iter()
            .flat_map(|p| quiver.outgoing(p.target()).iter().filter_map(move |&a| quiver.extend(p, a)))
            .collect();
        d += 1;
    }
    Ok(pres)
}

impl QuotientPresentation {
    fn add_level(&mut self, d: usize, paths: &[Path], relations: &[&PathElement]) {
        let field = self.field;
        let mut buckets: BTreeMap<ComponentKey, Vec<Path>> = BTreeMap::new();
        for p in paths {
            buckets.entry(p.key()).or_default().push(p.clone());
        }
        let mut level: BTreeMap<ComponentKey, Component> =
            buckets.into_iter().map(|(k, ps)| (k, Component::new(field, ps))).collect();

        for r in relations {
            let key = r.homogeneous_key().expect("checked homogeneous");
            let comp = level.get_mut(&key).expect("relation paths exist");
            let v = comp.vector(r);
            comp.ideal.insert(v);
        }

        if d > 0 {
            let q = &self.quiver;
            let prev: Vec<(&ComponentKey, &Component)> =
                self.components.range(..).filter(|(k, _)| k.length == d - 1).collect();
            for (_, comp) in prev {
                for (_, row) in comp.ideal.rows() {
                    let x = comp.element(field, row);
                    let tail = x.terms().next().unwrap().0;
                    for &a in q.outgoing(tail.target()) {
                        let y = PathElement::from_terms(
                            field,
                            x.terms().map(|(p, c)| (c.clone(), q.extend(p, a).unwrap())),
                        );
                        let target = level.get_mut(&y.homogeneous_key().unwrap()).unwrap();
                        let v = target.vector(&y);
                        target.ideal.insert(v);
                    }
                    for &a in q.incoming(tail.source()) {
                        let y = PathElement::from_terms(
                            field,
                            x.terms().map(|(p, c)| (c.clone(), q.prepend(a, p).unwrap())),
                        );
                        let target = level.get_mut(&y.homogeneous_key().unwrap()).unwrap();
                        let v = target.vector(&y);
                        target.ideal.insert(v);
                    }
                }
            }
        }
        self.components.extend(level);
    }

    fn level_vanishes(&self, d: usize) -> bool {
        self.components.iter().filter(|(k, _)| k.length == d).all(|(_, c)| c.quotient_dim() == 0)
    }

    pub fn quiver(&self) -> &PathQuiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[PathElement] {
        &self.relations
    }

    /// Largest path length computed.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Under automatic stopping, the first length at which the quotient vanished.
    pub fn vanishing_length(&self) -> Option<usize> {
        self.vanishing_length
    }

    /// Whether every component of the given length is zero in the quotient.
    pub fn vanishes_at(&self, length: usize) -> Result<bool> {
        if length > self.bound {
            return Err(Error::DegreeOutOfRange { degree: length, bound: self.bound });
        }
        Ok(self.level_vanishes(length))
    }

    pub fn component_keys(&self) -> impl Iterator<Item = &ComponentKey> {
        self.components.keys()
    }

    /// Number of paths in a component (0 for components without paths).
    pub fn path_count(&self, key: &ComponentKey) -> usize {
        self.components.get(key).map_or(0, |c| c.paths.len())
    }

    pub fn quotient_dim(&self, key: &ComponentKey) -> usize {
        self.components.get(key).map_or(0, Component::quotient_dim)
    }

    /// Paths of the component that represent the quotient basis (the
    /// complement of the pivot paths of the reduced ideal).
    pub fn basis(&self, key: &ComponentKey) -> Vec<Path> {
        self.components.get(key).map_or_else(Vec::new, |c| {
            c.paths.iter().enumerate().filter(|(k, _)| !c.ideal.is_pivot(*k)).map(|(_, p)| p.clone()).collect()
        })
    }

    /// All basis paths, component by component.
    pub fn basis_paths(&self) -> Vec<Path> {
        self.components.keys().flat_map(|k| self.basis(k)).collect()
    }

    /// Reduced basis of the ideal piece of a component.
    pub fn ideal_basis(&self, key: &ComponentKey) -> Vec<PathElement> {
        self.components.get(key).map_or_else(Vec::new, |c| {
            c.ideal.rows().map(|(_, row)| c.element(self.field, row)).collect()
        })
    }

    /// The representative of `x` supported on basis paths; zero exactly when
    /// `x` lies in the ideal.
    pub fn normal_form(&self, x: &PathElement) -> Result<PathElement> {
        let mut out = PathElement::zero(self.field);
        for (key, part) in x.components() {
            if key.length > self.bound {
                match self.vanishing_length {
                    Some(v) if key.length >= v => continue,
                    _ => return Err(Error::DegreeOutOfRange { degree: key.length, bound: self.bound }),
                }
            }
            let comp = &self.components[&key];
            let reduced = comp.ideal.reduce(comp.vector(&part));
            out = out.add(&comp.element(self.field, &reduced));
        }
        Ok(out)
    }

    /// `nf(x∘y)`.
    pub fn multiply(&self, x: &PathElement, y: &PathElement) -> Result<PathElement> {
        self.normal_form(&x.compose(y))
    }

    pub fn in_ideal(&self, x: &PathElement) -> Result<bool> {
        Ok(self.normal_form(x)?.is_zero())
    }

    /// Dimension table in the requested grading. Star-degree tables sum the
    /// bigraded pieces over all computed lengths.
    pub fn dims(&self, grading: Grading) -> GradedDimTable {
        let mut table = GradedDimTable::new(grading);
        for (k, c) in &self.components {
            let p = match grading {
                Grading::Star => k.star_degree,
                Grading::Length => k.length as u32,
            };
            table.add(&self.quiver.vertices()[k.source], &self.quiver.vertices()[k.target], p, c.quotient_dim());
        }
        table
    }

    /// Free path counts in the same layout as [`QuotientPresentation::dims`].
    pub fn path_dims(&self, grading: Grading) -> GradedDimTable {
        let mut table = GradedDimTable::new(grading);
        for (k, c) in &self.components {
            let p = match grading {
                Grading::Star => k.star_degree,
                Grading::Length => k.length as u32,
            };
            table.add(&self.quiver.vertices()[k.source], &self.quiver.vertices()[k.target], p, c.paths.len());
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{double, generate, parse_quiver};

    const Q: Field = Field::Rational;

    fn a2_relations(pq: &PathQuiver) -> Vec<PathElement> {
        vec![
            PathElement::from_path(Q, pq.composite(&["a*", "a"])),
            PathElement::from_path(Q, pq.composite(&["a", "a*"])),
        ]
    }

    #[test]
    fn a2_quotient() {
        let d = double(&generate("A 2 linear").unwrap());
        let pq = d.path_quiver();
        let pres = graded_quotient(pq, &a2_relations(pq), Q, StopPolicy::Auto).unwrap();
        assert_eq!(pres.vanishing_length(), Some(2));
        assert_eq!(pres.bound(), 3);
        let t = pres.dims(Grading::Star);
        assert_eq!(t.total(), 4);
        let basis: Vec<String> = pres.basis_paths().iter().map(|p| pq.format_path(p)).collect();
        assert_eq!(basis, vec!["e_1", "a", "a*", "e_2"]);

        let len = pres.dims(Grading::Length);
        assert_eq!(len.degree_totals(), BTreeMap::from([(0, 2), (1, 2)]));
    }

    #[test]
    fn a2_normal_forms() {
        let d = double(&generate("A 2 linear").unwrap());
        let pq = d.path_quiver();
        let pres = graded_quotient(pq, &a2_relations(pq), Q, StopPolicy::Auto).unwrap();
        let p = |w: &[&str]| PathElement::from_path(Q, pq.composite(w));
        assert!(pres.normal_form(&p(&["a*", "a"])).unwrap().is_zero());
        assert_eq!(pres.normal_form(&p(&["a"])).unwrap(), p(&["a"]));
        let e1 = PathElement::from_path(Q, pq.trivial(0));
        assert_eq!(pres.normal_form(&e1).unwrap(), e1);
        // Past the vanishing length everything is zero.
        assert!(pres.normal_form(&p(&["a", "a*", "a", "a*", "a"])).unwrap().is_zero());
    }

    #[test]
    fn empty_relations_give_path_counts() {
        let d = double(&generate("A 3 linear").unwrap());
        let pq = d.path_quiver();
        let pres = graded_quotient(pq, &[], Q, StopPolicy::MaxDegree(1)).unwrap();
        assert_eq!(pres.dims(Grading::Length), pres.path_dims(Grading::Length));
        assert_eq!(pres.dims(Grading::Length).total(), 3 + 4);
        assert!(matches!(
            pres.normal_form(&PathElement::from_path(Q, pq.composite(&["a*", "a"]))),
            Err(Error::DegreeOutOfRange { degree: 2, bound: 1 })
        ));
    }

    #[test]
    fn policy_errors() {
        let cyc = parse_quiver("vertex 1; arrow l: 1 -> 1").unwrap();
        let pq = cyc.path_quiver();
        assert_eq!(graded_quotient(&pq, &[], Q, StopPolicy::Auto).unwrap_err(), Error::NeedsExplicitBound);
        assert_eq!(graded_quotient(&pq, &[], Q, StopPolicy::MaxDegree(3)).unwrap().dims(Grading::Length).total(), 4);

        let d = double(&generate("A 2 linear").unwrap());
        let pq = d.path_quiver();
        let bad = PathElement::from_path(Q, pq.composite(&["a*", "a"])).add(&PathElement::from_path(Q, pq.trivial(0)));
        assert!(matches!(graded_quotient(pq, &[bad], Q, StopPolicy::Auto), Err(Error::InhomogeneousRelation(_))));
        // Dynkin doubled quiver without relations never vanishes.
        assert_eq!(graded_quotient(pq, &[], Q, StopPolicy::Auto).unwrap_err(), Error::AutoStopExceeded(AUTO_STOP_CAP));
    }

    #[test]
    fn plain_acyclic_quiver_auto_stops() {
        let q = generate("A 3 linear").unwrap();
        let pres = graded_quotient(&q.path_quiver(), &[], Q, StopPolicy::Auto).unwrap();
        assert_eq!(pres.dims(Grading::Length).total(), 6);
        assert_eq!(pres.vanishing_length(), Some(3));
    }
}
