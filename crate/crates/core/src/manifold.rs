//! A small language for describing closed manifolds and evaluating their
//! dimension, Euler characteristic, orientability and connectedness.
//!
//! ```text
//! expr  := term  ( '+' term  )*          disjoint union
//! term  := csum  ( '*' csum  )*          product
//! csum  := unary ( '#' unary )*          connected sum
//! unary := 'dc' '(' expr ')'             orientable double cover
//!        | atom
//!        | '(' expr ')'
//! atom  := 'S' '(' uint ')'              sphere S^r
//!        | 'Sigma' '(' uint ')'          orientable surface of genus g
//!        | 'N' '(' uint ')'              non-orientable surface, g >= 1 cross-caps
//!        | 'T' '(' uint ')'              torus T^r, r >= 1
//!        | 'chi' '(' uint ',' int ',' ('o' | 'n') ')'
//!                                        raw connected descriptor
//! ```
//!
//! Binary operators associate to the left. Whitespace between tokens is
//! ignored. Closed forms: `χ(S^r) = 1 + (-1)^r`, `χ(Σ_g) = 2 - 2g`,
//! `χ(N_g) = 2 - g`, `χ(T^r) = 0`.
//!
//! `S(0)` is two points and therefore not connected.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifoldError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("argument out of range at byte {offset}: {message}")]
    ArgumentRange { offset: usize, message: String },
    #[error("dimension mismatch for '{op}' ({left} vs {right}){}", at(*.offset))]
    DimensionMismatch {
        op: char,
        left: u32,
        right: u32,
        offset: Option<usize>,
    },
    #[error("connected sum of a disconnected operand{}", at(*.offset))]
    DisconnectedSummand { offset: Option<usize> },
    #[error("connected sum of 0-manifolds{}", at(*.offset))]
    ZeroDimensionalSum { offset: Option<usize> },
    #[error("double cover of an orientable manifold{}", at(*.offset))]
    AlreadyOrientable { offset: Option<usize> },
    #[error("integer overflow evaluating the Euler characteristic")]
    Overflow,
}

fn at(offset: Option<usize>) -> String {
    offset.map(|o| format!(" at byte {o}")).unwrap_or_default()
}

/// `(dim, χ, orientable, connected)` of a closed manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChiDescriptor {
    pub dim: u32,
    pub chi: i64,
    pub orientable: bool,
    pub connected: bool,
}

impl ChiDescriptor {
    pub fn new(dim: u32, chi: i64, orientable: bool, connected: bool) -> Self {
        ChiDescriptor {
            dim,
            chi,
            orientable,
            connected,
        }
    }
}

impl fmt::Display for ChiDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} chi={} orientable={} connected={}",
            self.dim, self.chi, self.orientable, self.connected
        )
    }
}

/// The orientable double cover of a non-orientable manifold.
pub fn double_cover(d: &ChiDescriptor) -> Result<ChiDescriptor, ManifoldError> {
    if d.orientable {
        return Err(ManifoldError::AlreadyOrientable { offset: None });
    }
    Ok(ChiDescriptor {
        dim: d.dim,
        chi: d.chi.checked_mul(2).ok_or(ManifoldError::Overflow)?,
        orientable: true,
        connected: d.connected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ManifoldExpr {
    Sphere(u32),
    Surface(u64),
    NonOrientableSurface(u64),
    Torus(u32),
    Raw {
        dim: u32,
        chi: i64,
        orientable: bool,
    },
    Product(Box<ManifoldExpr>, Box<ManifoldExpr>),
    ConnectedSum(Box<ManifoldExpr>, Box<ManifoldExpr>),
    DisjointUnion(Box<ManifoldExpr>, Box<ManifoldExpr>),
    DoubleCover(Box<ManifoldExpr>),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Union,
    Product,
    Sum,
    Atom,
}

impl ManifoldExpr {
    pub fn product(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn connected_sum(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::ConnectedSum(Box::new(a), Box::new(b))
    }

    pub fn disjoint_union(a: ManifoldExpr, b: ManifoldExpr) -> Self {
        ManifoldExpr::DisjointUnion(Box::new(a), Box::new(b))
    }

    pub fn double_cover(a: ManifoldExpr) -> Self {
        ManifoldExpr::DoubleCover(Box::new(a))
    }

    pub fn parse(text: &str) -> Result<Self, ManifoldError> {
        let mut p = Parser { src: text, pos: 0 };
        let (expr, _) = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.syntax("unexpected trailing input"));
        }
        Ok(expr)
    }

    pub fn evaluate(&self) -> Result<ChiDescriptor, ManifoldError> {
        match self {
            ManifoldExpr::Sphere(r) => Ok(sphere(*r)),
            ManifoldExpr::Surface(g) => Ok(ChiDescriptor::new(
                2,
                surface_chi(*g, 2).ok_or(ManifoldError::Overflow)?,
                true,
                true,
            )),
            ManifoldExpr::NonOrientableSurface(g) => Ok(ChiDescriptor::new(
                2,
                surface_chi(*g, 1).ok_or(ManifoldError::Overflow)?,
                false,
                true,
            )),
            ManifoldExpr::Torus(r) => Ok(ChiDescriptor::new(*r, 0, true, true)),
            ManifoldExpr::Raw {
                dim,
                chi,
                orientable,
            } => Ok(ChiDescriptor::new(*dim, *chi, *orientable, true)),
            ManifoldExpr::Product(a, b) => product(&a.evaluate()?, &b.evaluate()?),
            ManifoldExpr::ConnectedSum(a, b) => connected_sum(&a.evaluate()?, &b.evaluate()?, None),
            ManifoldExpr::DisjointUnion(a, b) => {
                disjoint_union(&a.evaluate()?, &b.evaluate()?, None)
            }
            ManifoldExpr::DoubleCover(a) => double_cover(&a.evaluate()?),
        }
    }

    fn prec(&self) -> Prec {
        match self {
            ManifoldExpr::DisjointUnion(..) => Prec::Union,
            ManifoldExpr::Product(..) => Prec::Product,
            ManifoldExpr::ConnectedSum(..) => Prec::Sum,
            _ => Prec::Atom,
        }
    }
}

impl FromStr for ManifoldExpr {
    type Err = ManifoldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ManifoldExpr::parse(s)
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &ManifoldExpr, op: char, b: &ManifoldExpr| {
            let p = self.prec();
            if a.prec() < p {
                write!(f, "({a})")?;
            } else {
                write!(f, "{a}")?;
            }
            write!(f, "{op}")?;
            if b.prec() <= p {
                write!(f, "({b})")
            } else {
                write!(f, "{b}")
            }
        };
        match self {
            ManifoldExpr::Sphere(r) => write!(f, "S({r})"),
            ManifoldExpr::Surface(g) => write!(f, "Sigma({g})"),
            ManifoldExpr::NonOrientableSurface(g) => write!(f, "N({g})"),
            ManifoldExpr::Torus(r) => write!(f, "T({r})"),
            ManifoldExpr::Raw {
                dim,
                chi,
                orientable,
            } => write!(
                f,
                "chi({dim},{chi},{})",
                if *orientable { 'o' } else { 'n' }
            ),
            ManifoldExpr::Product(a, b) => binary(f, a, '*', b),
            ManifoldExpr::ConnectedSum(a, b) => binary(f, a, '#', b),
            ManifoldExpr::DisjointUnion(a, b) => binary(f, a, '+', b),
            ManifoldExpr::DoubleCover(a) => write!(f, "dc({a})"),
        }
    }
}

fn sphere(r: u32) -> ChiDescriptor {
    let chi = if r.is_multiple_of(2) { 2 } else { 0 };
    ChiDescriptor::new(r, chi, true, r > 0)
}

/// `2 - k·g` with overflow checking.
fn surface_chi(g: u64, k: i64) -> Option<i64> {
    2i64.checked_sub(i64::try_from(g).ok()?.checked_mul(k)?)
}

fn product(a: &ChiDescriptor, b: &ChiDescriptor) -> Result<ChiDescriptor, ManifoldError> {
    Ok(ChiDescriptor {
        dim: a.dim.checked_add(b.dim).ok_or(ManifoldError::Overflow)?,
        chi: a.chi.checked_mul(b.chi).ok_or(ManifoldError::Overflow)?,
        orientable: a.orientable && b.orientable,
        connected: a.connected && b.connected,
    })
}

fn connected_sum(
    a: &ChiDescriptor,
    b: &ChiDescriptor,
    offset: Option<usize>,
) -> Result<ChiDescriptor, ManifoldError> {
    if a.dim != b.dim {
        return Err(ManifoldError::DimensionMismatch {
            op: '#',
            left: a.dim,
            right: b.dim,
            offset,
        });
    }
    if !a.connected || !b.connected {
        return Err(ManifoldError::DisconnectedSummand { offset });
    }
    if a.dim == 0 {
        return Err(ManifoldError::ZeroDimensionalSum { offset });
    }
    let chi = a
        .chi
        .checked_add(b.chi)
        .and_then(|c| c.checked_sub(sphere(a.dim).chi))
        .ok_or(ManifoldError::Overflow)?;
    Ok(ChiDescriptor {
        dim: a.dim,
        chi,
        orientable: a.orientable && b.orientable,
        connected: true,
    })
}

fn disjoint_union(
    a: &ChiDescriptor,
    b: &ChiDescriptor,
    offset: Option<usize>,
) -> Result<ChiDescriptor, ManifoldError> {
    if a.dim != b.dim {
        return Err(ManifoldError::DimensionMismatch {
            op: '+',
            left: a.dim,
            right: b.dim,
            offset,
        });
    }
    Ok(ChiDescriptor {
        dim: a.dim,
        chi: a.chi.checked_add(b.chi).ok_or(ManifoldError::Overflow)?,
        orientable: a.orientable && b.orientable,
        connected: false,
    })
}

type Parsed = (ManifoldExpr, ChiDescriptor);

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> ManifoldError {
        ManifoldError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ManifoldError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Parsed, ManifoldError> {
        let (mut e, mut d) = self.term()?;
        while self.peek() == Some(b'+') {
            let offset = self.pos;
            self.pos += 1;
            let (e2, d2) = self.term()?;
            d = disjoint_union(&d, &d2, Some(offset))?;
            e = ManifoldExpr::disjoint_union(e, e2);
        }
        Ok((e, d))
    }

    fn term(&mut self) -> Result<Parsed, ManifoldError> {
        let (mut e, mut d) = self.csum()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let (e2, d2) = self.csum()?;
            d = product(&d, &d2)?;
            e = ManifoldExpr::product(e, e2);
        }
        Ok((e, d))
    }

    fn csum(&mut self) -> Result<Parsed, ManifoldError> {
        let (mut e, mut d) = self.unary()?;
        while self.peek() == Some(b'#') {
            let offset = self.pos;
            self.pos += 1;
            let (e2, d2) = self.unary()?;
            d = connected_sum(&d, &d2, Some(offset))?;
            e = ManifoldExpr::connected_sum(e, e2);
        }
        Ok((e, d))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(|b| b.is_ascii_alphabetic()).count();
        self.pos += len;
        &rest[..len]
    }

    fn uint(&mut self) -> Result<(u64, usize), ManifoldError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return Err(self.syntax("expected a non-negative integer"));
        }
        self.pos += len;
        let value =
            self.src[start..self.pos]
                .parse()
                .map_err(|_| ManifoldError::ArgumentRange {
                    offset: start,
                    message: "integer too large".into(),
                })?;
        Ok((value, start))
    }

    fn int(&mut self) -> Result<i64, ManifoldError> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let (v, start) = self.uint()?;
        let v = i64::try_from(v).map_err(|_| ManifoldError::ArgumentRange {
            offset: start,
            message: "integer too large".into(),
        })?;
        Ok(if negative { -v } else { v })
    }

    fn dim_arg(&mut self) -> Result<(u32, usize), ManifoldError> {
        let (v, start) = self.uint()?;
        let v = u32::try_from(v).map_err(|_| ManifoldError::ArgumentRange {
            offset: start,
            message: "dimension too large".into(),
        })?;
        Ok((v, start))
    }

    fn unary(&mut self) -> Result<Parsed, ManifoldError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        let start = self.pos;
        let name = self.ident();
        let expr = match name {
            "dc" => {
                self.expect(b'(')?;
                let (inner, d) = self.expr()?;
                self.expect(b')')?;
                let d = double_cover(&d).map_err(|_| ManifoldError::AlreadyOrientable {
                    offset: Some(start),
                })?;
                return Ok((ManifoldExpr::double_cover(inner), d));
            }
            "S" => {
                self.expect(b'(')?;
                let (r, _) = self.dim_arg()?;
                ManifoldExpr::Sphere(r)
            }
            "Sigma" => {
                self.expect(b'(')?;
                let (g, _) = self.uint()?;
                ManifoldExpr::Surface(g)
            }
            "N" => {
                self.expect(b'(')?;
                let (g, at) = self.uint()?;
                if g == 0 {
                    return Err(ManifoldError::ArgumentRange {
                        offset: at,
                        message: "N(g) needs at least one cross-cap".into(),
                    });
                }
                ManifoldExpr::NonOrientableSurface(g)
            }
            "T" => {
                self.expect(b'(')?;
                let (r, at) = self.dim_arg()?;
                if r == 0 {
                    return Err(ManifoldError::ArgumentRange {
                        offset: at,
                        message: "T(r) needs r >= 1".into(),
                    });
                }
                ManifoldExpr::Torus(r)
            }
            "chi" => {
                self.expect(b'(')?;
                let (dim, _) = self.dim_arg()?;
                self.expect(b',')?;
                let chi = self.int()?;
                self.expect(b',')?;
                let flag = self.ident();
                let orientable = match flag {
                    "o" => true,
                    "n" => false,
                    _ => {
                        self.pos -= flag.len();
                        return Err(self.syntax("expected 'o' or 'n'"));
                    }
                };
                ManifoldExpr::Raw {
                    dim,
                    chi,
                    orientable,
                }
            }
            "" => return Err(self.syntax("expected an atom, 'dc' or '('")),
            other => {
                self.pos = start;
                return Err(self.syntax(&format!("unknown atom '{other}'")));
            }
        };
        self.expect(b')')?;
        let d = expr.evaluate()?;
        Ok((expr, d))
    }
}
