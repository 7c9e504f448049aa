//! Line-oriented quiver descriptions and the built-in generators.
//!
//! ```text
//! quiver example      # optional header
//! vertex 1
//! vertex 2
//! arrow a : 1 -> 2
//! ```
//!
//! Statements may also be separated by `;`. A description consisting of a
//! single generator statement such as `A 3 linear` or `E 6 standard` expands
//! to the built-in quiver.

use super::{Quiver, QuiverBuilder};
use crate::error::{Error, Result};

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let statements: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .flat_map(|(n, line)| {
            let line = line.split('#').next().unwrap_or("");
            line.split(';').map(move |s| (n + 1, s.trim()))
        })
        .filter(|(_, s)| !s.is_empty())
        .collect();

    if let [(_, only)] = statements.as_slice() {
        if let Some(q) = try_generator(only)? {
            return Ok(q);
        }
    }

    let mut b = QuiverBuilder::default();
    for (line, stmt) in statements {
        let (keyword, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        let rest = rest.trim();
        match keyword {
            "quiver" => {
                if rest.is_empty() {
                    return Err(Error::Syntax { line, message: "missing quiver name".into() });
                }
                b.name(rest.to_string());
            }
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(Error::Syntax { line, message: format!("expected `vertex <id>`, got `{stmt}`") });
                }
                b.vertex(line, rest.to_string())?;
            }
            "arrow" => {
                let bad = || Error::Syntax { line, message: format!("expected `arrow <id> : <src> -> <dst>`, got `{stmt}`") };
                let (id, ends) = rest.split_once(':').ok_or_else(bad)?;
                let (src, dst) = ends.split_once("->").ok_or_else(bad)?;
                let (id, src, dst) = (id.trim(), src.trim(), dst.trim());
                if [id, src, dst].iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
                    return Err(bad());
                }
                b.arrow(line, id.to_string(), src, dst)?;
            }
            _ => {
                return Err(Error::Syntax { line, message: format!("unknown statement `{stmt}`") });
            }
        }
    }
    Ok(b.finish())
}

fn try_generator(stmt: &str) -> Result<Option<Quiver>> {
    let words: Vec<&str> = stmt.split_whitespace().collect();
    match words.as_slice() {
        [kind @ ("A" | "D" | "E"), n, _orientation] if n.parse::<usize>().is_ok() => {
            let _ = kind;
            generate(stmt).map(Some)
        }
        _ => Ok(None),
    }
}

/// Expands a generator request `A <n> linear|alternating`,
/// `D <n> inward|outward` or `E 6|7|8 standard`.
///
/// Vertices are `1..=n`; arrows are named `a`, `b`, `c`, ... in order.
pub fn generate(request: &str) -> Result<Quiver> {
    let words: Vec<&str> = request.split_whitespace().collect();
    let unknown = || Error::UnknownGenerator(request.trim().to_string());
    let [kind, n, orientation] = words.as_slice() else {
        return Err(unknown());
    };
    let n: usize = n.parse().map_err(|_| unknown())?;
    let edges: Vec<(usize, usize)> = match (*kind, *orientation) {
        ("A", "linear") if n >= 1 => (1..n).map(|k| (k, k + 1)).collect(),
        ("A", "alternating") if n >= 1 => {
            (1..n).map(|k| if k % 2 == 1 { (k, k + 1) } else { (k + 1, k) }).collect()
        }
        ("D", o @ ("inward" | "outward")) if n >= 4 => {
            let branch = n - 2;
            let mut e: Vec<(usize, usize)> = (1..branch).map(|k| (k, k + 1)).collect();
            e.push((n - 1, branch));
            e.push((n, branch));
            if o == "outward" {
                e.iter_mut().for_each(|(s, t)| std::mem::swap(s, t));
            }
            e
        }
        ("E", "standard") if (6..=8).contains(&n) => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|k| (k, k + 1)).collect();
            e.push((n, 3));
            e
        }
        _ => return Err(unknown()),
    };
    let name = format!("{kind}{n}_{orientation}");
    let q = Quiver::new(
        (1..=n).map(|v| v.to_string()),
        edges
            .into_iter()
            .enumerate()
            .map(|(k, (s, t))| (arrow_name(k), s.to_string(), t.to_string())),
    )?;
    Ok(q.with_name(name))
}

fn arrow_name(k: usize) -> String {
    if k < 26 {
        char::from(b'a' + k as u8).to_string()
    } else {
        format!("a{k}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_inline_statements() {
        let q = parse_quiver("vertex 1; vertex 2; arrow a: 1 -> 2").unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrows().len(), 1);
        assert_eq!((q.arrows()[0].source, q.arrows()[0].target), (0, 1));
    }

    #[test]
    fn generator_request() {
        let q = parse_quiver("A 3 linear").unwrap();
        assert_eq!(q.vertices(), &["1", "2", "3"]);
        let ends: Vec<_> = q.arrows().iter().map(|a| (a.id.as_str(), a.source, a.target)).collect();
        assert_eq!(ends, vec![("a", 0, 1), ("b", 1, 2)]);
        assert!(matches!(parse_quiver("A 0 linear"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(generate("D 3 inward"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(generate("E 9 standard"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn reports_errors_with_lines() {
        assert_eq!(
            parse_quiver("vertex 1\narrow a: 1 -> 9").unwrap_err(),
            Error::DanglingEndpoint { line: 2, arrow: "a".into(), vertex: "9".into() }
        );
        assert_eq!(
            parse_quiver("vertex 1\n# comment\nvertex 1").unwrap_err(),
            Error::DuplicateIdentifier { line: 3, id: "1".into() }
        );
        assert!(matches!(
            parse_quiver("vertex 1; vertex 2\narrow a: 1 -> 2\narrow a: 2 -> 1"),
            Err(Error::DuplicateIdentifier { line: 3, .. })
        ));
        assert!(matches!(parse_quiver("vertex 1\nedge 1 2"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_quiver("vertex 1\narrow a 1 -> 1"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_quiver("vertex a*"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn header_and_comments() {
        let q = parse_quiver("quiver demo # named\n\nvertex x  # first\n").unwrap();
        assert_eq!(q.name(), Some("demo"));
        assert_eq!(q.vertices(), &["x"]);
    }

    #[test]
    fn generator_shapes() {
        let d4 = generate("D 4 inward").unwrap();
        assert!(d4.arrows().iter().all(|a| d4.vertex_label(a.target) == "2"));
        let d4o = generate("D 4 outward").unwrap();
        assert!(d4o.arrows().iter().all(|a| d4o.vertex_label(a.source) == "2"));
        let e6 = generate("E 6 standard").unwrap();
        assert_eq!(e6.arrows().len(), 5);
        let alt = generate("A 4 alternating").unwrap();
        let ends: Vec<_> = alt.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(ends, vec![(0, 1), (2, 1), (2, 3)]);
    }

    fn arb_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..8).prop_map(move |edges| {
                Quiver::new(
                    (0..n).map(|v| format!("v{v}")),
                    edges.into_iter().enumerate().map(|(k, (s, t))| (format!("x{k}"), format!("v{s}"), format!("v{t}"))),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(q in arb_quiver(), named in any::<bool>()) {
            let q = if named { q.with_name("rt") } else { q };
            prop_assert_eq!(parse_quiver(&q.to_text()).unwrap(), q);
        }
    }
}
