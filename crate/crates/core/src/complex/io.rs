//! Text formats.
//!
//! Complex file: a `dim <d>` line, a `vertices <k>` line, then one maximal
//! simplex per line as space-separated vertex indices. Faces are closed
//! automatically.
//!
//! Action file: one generator per line, a permutation of `0..k` in one-line
//! notation.
//!
//! Orientation file: one top simplex per line, `+` or `-` followed by its
//! vertices in the order the sign refers to.
//!
//! Blank lines and text after `#` are ignored in all three.

use std::fmt::Write as _;

use super::{ComplexError, EquivariantComplex, Permutation, SimplicialComplex};

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_indices(line: usize, text: &str) -> Result<Vec<usize>, ComplexError> {
    text.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| ComplexError::Parse {
                line,
                message: format!("expected a vertex index, found {t:?}"),
            })
        })
        .collect()
}

fn keyed(line: Option<(usize, &str)>, key: &str) -> Result<usize, ComplexError> {
    let (n, text) = line.ok_or(ComplexError::Parse {
        line: 0,
        message: format!("missing `{key}` line"),
    })?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => v.parse().map_err(|_| ComplexError::Parse {
            line: n,
            message: format!("bad value for `{key}`"),
        }),
        _ => Err(ComplexError::Parse {
            line: n,
            message: format!("expected `{key} <int>`"),
        }),
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut it = lines(text);
    let dim = keyed(it.next(), "dim")?;
    let vertex_count = keyed(it.next(), "vertices")?;
    let mut facets = Vec::new();
    for (n, l) in it {
        let s = parse_indices(n, l)?;
        if s.len() > dim + 1 {
            return Err(ComplexError::Parse {
                line: n,
                message: format!(
                    "simplex with {} vertices in a complex of dim {dim}",
                    s.len()
                ),
            });
        }
        facets.push(s);
    }
    let k = SimplicialComplex::from_simplices(vertex_count, facets)?;
    if k.dim() != Some(dim) {
        return Err(ComplexError::Input(format!(
            "declared dim {dim} but the largest simplex has dim {}",
            k.dim().map_or("none".into(), |d| d.to_string())
        )));
    }
    Ok(k)
}

pub fn parse_action(text: &str) -> Result<Vec<Permutation>, ComplexError> {
    lines(text)
        .map(|(n, l)| {
            let images = parse_indices(n, l)?;
            Permutation::new(images).map_err(|e| ComplexError::Parse {
                line: n,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn parse_orientation(text: &str) -> Result<Vec<(i8, Vec<usize>)>, ComplexError> {
    lines(text)
        .map(|(n, l)| {
            let (sign, rest) = l.split_at(1);
            let sign = match sign {
                "+" => 1,
                "-" => -1,
                _ => {
                    return Err(ComplexError::Parse {
                        line: n,
                        message: "expected `+` or `-`".into(),
                    })
                }
            };
            Ok((sign, parse_indices(n, rest)?))
        })
        .collect()
}

/// Assembles an action from the three file contents.
pub fn load(
    complex: &str,
    action: &str,
    orientation: Option<&str>,
) -> Result<EquivariantComplex, ComplexError> {
    let mut k = parse_complex(complex)?;
    if let Some(o) = orientation {
        k = k.with_orientation(&parse_orientation(o)?)?;
    }
    EquivariantComplex::new(k, parse_action(action)?)
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", k.dim().unwrap_or(0));
    let _ = writeln!(out, "vertices {}", k.vertex_count());
    for s in k.maximal_simplices() {
        out.push_str(&join(&s));
        out.push('\n');
    }
    out
}

pub fn write_action(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

/// Orientation lines for an oriented complex, each top simplex in sorted order.
pub fn write_orientation(k: &SimplicialComplex) -> Option<String> {
    let signs = k.orientation()?;
    Some(
        k.top_simplices()
            .iter()
            .zip(signs)
            .map(|(s, &sign)| format!("{} {}\n", if sign > 0 { '+' } else { '-' }, join(s)))
            .collect(),
    )
}

fn join(s: &[usize]) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus;

    #[test]
    fn round_trip() {
        let e = corpus::octahedron_d4();
        let k = write_complex(e.complex());
        let a = write_action(e.generators());
        let o = write_orientation(e.complex()).unwrap();
        let back = load(&k, &a, Some(&o)).unwrap();
        assert_eq!(back.complex(), e.complex());
        assert_eq!(back.order(), 8);
    }

    #[test]
    fn parses_comments_and_reports_lines() {
        let text = "# triangle\ndim 1\nvertices 3\n0 1\n1 2 # edge\n2 0\n";
        assert_eq!(parse_complex(text).unwrap().f_vector(), [3, 3]);
        let bad = "dim 1\nvertices 3\n0 x\n";
        assert!(matches!(
            parse_complex(bad),
            Err(ComplexError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_complex("vertices 3\n"),
            Err(ComplexError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex("dim 2\nvertices 3\n0 1\n"),
            Err(ComplexError::Input(_))
        ));
        assert!(matches!(
            parse_action("0 1\n1 1\n"),
            Err(ComplexError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_orientation("* 0 1 2\n"),
            Err(ComplexError::Parse { line: 1, .. })
        ));
    }
}
