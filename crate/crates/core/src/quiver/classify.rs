use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Quiver;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub dynkin_type: Option<DynkinType>,
    pub is_tree: bool,
    pub is_acyclic: bool,
}

pub fn classify(q: &Quiver) -> Classification {
    let n = q.vertex_count();
    let is_acyclic = q.is_acyclic();
    let is_tree = n > 0 && q.arrows().len() + 1 == n && is_connected(q);
    let dynkin_type = if is_tree { tree_shape(q) } else { None };
    Classification { dynkin_type, is_tree, is_acyclic }
}

fn is_connected(q: &Quiver) -> bool {
    let adj = q.undirected_adjacency();
    let mut seen = vec![false; q.vertex_count()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Shape of a tree: a path, or a single branch point with three legs.
/// Trees have no loops or multi-edges, so the adjacency is simple.
fn tree_shape(q: &Quiver) -> Option<DynkinType> {
    let n = q.vertex_count();
    let adj = q.undirected_adjacency();
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    if degree.iter().any(|&d| d > 3) {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    match branches.as_slice() {
        [] => Some(DynkinType::A(n)),
        [b] => {
            let mut legs: Vec<usize> = adj[*b]
                .iter()
                .map(|&(start, _)| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    while let Some(&(next, _)) = adj[cur].iter().find(|&&(w, _)| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] => Some(DynkinType::E6),
                [1, 2, 3] => Some(DynkinType::E7),
                [1, 2, 4] => Some(DynkinType::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

/// All positive roots of the underlying Dynkin diagram as dimension vectors,
/// sorted. Obtained by closing the simple roots under simple reflections.
pub fn positive_roots(q: &Quiver) -> Result<Vec<Vec<u32>>> {
    if classify(q).dynkin_type.is_none() {
        return Err(Error::NotDynkin);
    }
    let n = q.vertex_count();
    let adj = q.undirected_adjacency();
    let simple = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut roots: BTreeSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut queue: VecDeque<Vec<i64>> = roots.iter().cloned().collect();
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            // Pairing with the simple root: 2 x_i - sum of neighbours.
            let pairing = 2 * root[i] - adj[i].iter().map(|&(w, _)| root[w]).sum::<i64>();
            if pairing == 0 {
                continue;
            }
            let mut image = root.clone();
            image[i] -= pairing;
            if image.iter().all(|&x| x >= 0) && image.iter().any(|&x| x > 0) && roots.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    Ok(roots.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{generate, parse_quiver};

    fn class(text: &str) -> Classification {
        classify(&parse_quiver(text).unwrap())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            class("vertex 1; vertex 2; vertex 3; arrow a: 1 -> 2; arrow b: 2 -> 3"),
            Classification { dynkin_type: Some(DynkinType::A(3)), is_tree: true, is_acyclic: true }
        );
        assert_eq!(
            class("vertex 1; vertex 2; vertex 3; arrow a: 1 -> 2; arrow b: 2 -> 3; arrow c: 3 -> 1"),
            Classification { dynkin_type: None, is_tree: false, is_acyclic: false }
        );
        assert_eq!(
            class("vertex 1; vertex 2; arrow a: 1 -> 2; arrow b: 1 -> 2"),
            Classification { dynkin_type: None, is_tree: false, is_acyclic: true }
        );
    }

    #[test]
    fn recognizes_all_families() {
        for (req, ty) in [
            ("A 1 linear", DynkinType::A(1)),
            ("A 5 alternating", DynkinType::A(5)),
            ("D 4 inward", DynkinType::D(4)),
            ("D 7 outward", DynkinType::D(7)),
            ("E 6 standard", DynkinType::E6),
            ("E 7 standard", DynkinType::E7),
            ("E 8 standard", DynkinType::E8),
        ] {
            assert_eq!(classify(&generate(req).unwrap()).dynkin_type, Some(ty), "{req}");
        }
    }

    #[test]
    fn rejects_non_dynkin_trees() {
        // Star with four legs, and the affine E6 shape (legs 2,2,2).
        let star = "vertex c; vertex 1; vertex 2; vertex 3; vertex 4; arrow a: 1 -> c; arrow b: 2 -> c; arrow d: 3 -> c; arrow e: 4 -> c";
        let c = class(star);
        assert!(c.is_tree && c.dynkin_type.is_none());
        let e6t = "vertex c; vertex 1; vertex 2; vertex 3; vertex 4; vertex 5; vertex 6;
                   arrow a: 1 -> c; arrow b: 2 -> 1; arrow d: 3 -> c; arrow e: 4 -> 3; arrow f: 5 -> c; arrow g: 6 -> 5";
        assert_eq!(class(e6t).dynkin_type, None);
        assert!(!class("").is_tree);
        assert!(!class("vertex 1; vertex 2").is_tree);
    }

    #[test]
    fn root_examples() {
        let a2 = positive_roots(&generate("A 2 linear").unwrap()).unwrap();
        assert_eq!(a2, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);

        let a3 = positive_roots(&generate("A 3 linear").unwrap()).unwrap();
        assert_eq!(a3.len(), 6);
        for r in &a3 {
            // Interval indicator: ones form a contiguous block.
            let ones: Vec<usize> = (0..3).filter(|&i| r[i] == 1).collect();
            assert!(r.iter().all(|&x| x <= 1));
            assert_eq!(ones.last().unwrap() - ones[0] + 1, ones.len());
        }

        let d4 = positive_roots(&generate("D 4 inward").unwrap()).unwrap();
        assert_eq!(d4.len(), 12);
        assert_eq!(d4.iter().flatten().sum::<u32>(), 28);
        assert!(matches!(positive_roots(&parse_quiver("vertex 1; arrow l: 1 -> 1").unwrap()), Err(Error::NotDynkin)));
    }

    #[test]
    fn root_counts_match_known_totals() {
        for n in 1..=8 {
            let roots = positive_roots(&generate(&format!("A {n} linear")).unwrap()).unwrap();
            assert_eq!(roots.len(), n * (n + 1) / 2);
        }
        assert_eq!(positive_roots(&generate("E 6 standard").unwrap()).unwrap().len(), 36);
        assert_eq!(positive_roots(&generate("E 7 standard").unwrap()).unwrap().len(), 63);
        assert_eq!(positive_roots(&generate("E 8 standard").unwrap()).unwrap().len(), 120);
    }

    #[test]
    fn roots_ignore_orientation() {
        let q = generate("D 5 inward").unwrap();
        let base = positive_roots(&q).unwrap();
        for mask in 0u32..16 {
            let flip: Vec<bool> = (0..4).map(|k| mask >> k & 1 == 1).collect();
            assert_eq!(positive_roots(&q.reoriented(&flip)).unwrap(), base);
        }
    }
}
