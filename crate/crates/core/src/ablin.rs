//! Abelianization `Aut(F_n) → GL_n(Z)`, exact determinants, reduction mod
//! `q` and enumeration of finite matrix groups over `Z/q`.
//!
//! Integer entries are `i64` with checked arithmetic; any overflow is an
//! error rather than a wrapped value.

use std::collections::hash_map::{Entry, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::aut::{closure, AutError, Automorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("matrix literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntegerMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(MatrixError::SizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntegerMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1;
        }
        IntegerMatrix { size, entries }
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let mut m = Self::identity(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d;
        }
        m
    }

    /// Identity plus `value` at 1-based position `(row, col)`, e.g. `x_{1i}(1)`.
    pub fn elementary(size: usize, row: usize, col: usize, value: i64) -> Self {
        assert!(row != col && (1..=size).contains(&row) && (1..=size).contains(&col));
        let mut m = Self::identity(size);
        m.entries[(row - 1) * size + (col - 1)] = value;
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// 0-based entry access.
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.size + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.size.max(1))
            .map(<[i64]>::to_vec)
            .take(self.size)
            .collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix, MatrixError> {
        if self.size != other.size {
            return Err(MatrixError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        let n = self.size;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    let term = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(MatrixError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(MatrixError::Overflow)?;
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(IntegerMatrix { size: n, entries })
    }

    pub fn pow(&self, exp: u32) -> Result<IntegerMatrix, MatrixError> {
        let mut out = Self::identity(self.size);
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn negate(&self) -> Result<IntegerMatrix, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_neg().ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntegerMatrix {
            size: self.size,
            entries,
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i64, MatrixError> {
        let n = self.size;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<i128> = self.entries.iter().map(|&e| e as i128).collect();
        let at = |i: usize, j: usize| i * n + j;
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..n - 1 {
            if a[at(k, k)] == 0 {
                let Some(swap) = (k + 1..n).find(|&i| a[at(i, k)] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(at(k, j), at(swap, j));
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[at(i, j)]
                        .checked_mul(a[at(k, k)])
                        .and_then(|x| x.checked_sub(a[at(i, k)].checked_mul(a[at(k, j)])?))
                        .ok_or(MatrixError::Overflow)?;
                    // Exact by Sylvester's identity.
                    a[at(i, j)] = num / prev;
                    if i64::try_from(a[at(i, j)]).is_err() {
                        return Err(MatrixError::Overflow);
                    }
                }
            }
            prev = a[at(k, k)];
        }
        i64::try_from(sign * a[at(n - 1, n - 1)]).map_err(|_| MatrixError::Overflow)
    }

    pub fn reduce_mod(&self, q: u64) -> Result<ModMatrix, MatrixError> {
        if q < 2 {
            return Err(MatrixError::BadModulus(q));
        }
        let m = q as i128;
        let entries = self
            .entries
            .iter()
            .map(|&e| (e as i128).rem_euclid(m) as u64)
            .collect();
        Ok(ModMatrix {
            size: self.size,
            modulus: q,
            entries,
        })
    }
}

/// Writes `[r0c0,r0c1;r1c0,r1c1]`.
impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.size, self.entries.iter())
    }
}

fn write_rows<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    size: usize,
    entries: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("[")?;
    for (k, e) in entries.enumerate() {
        if k > 0 {
            f.write_str(if k % size == 0 { ";" } else { "," })?;
        }
        write!(f, "{e}")?;
    }
    f.write_str("]")
}

impl FromStr for IntegerMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| MatrixError::Parse("expected [ ... ]".into()))?;
        if body.trim().is_empty() {
            return Ok(IntegerMatrix::identity(0));
        }
        let rows = body
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|e| MatrixError::Parse(format!("{x:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }
}

/// Square matrix over `Z/q`, entries in `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModMatrix {
    size: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(size: usize, modulus: u64) -> Result<Self, MatrixError> {
        IntegerMatrix::identity(size).reduce_mod(modulus)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.size + col]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix, MatrixError> {
        if self.size != other.size {
            return Err(MatrixError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        if self.modulus != other.modulus {
            return Err(MatrixError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        let n = self.size;
        let q = self.modulus as u128;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % q;
                }
                entries[i * n + j] = acc as u64;
            }
        }
        Ok(ModMatrix {
            size: n,
            modulus: self.modulus,
            entries,
        })
    }

    /// Canonical hash key: size, modulus, then entries, all little-endian.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 8 * self.entries.len());
        out.extend((self.size as u64).to_le_bytes());
        out.extend(self.modulus.to_le_bytes());
        for e in &self.entries {
            out.extend(e.to_le_bytes());
        }
        out
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.size, self.entries.iter())?;
        write!(f, " mod {}", self.modulus)
    }
}

/// Exponent-sum matrix of `f`: column `i` records the image of `a_{i+1}`.
pub fn abelianize(f: &Automorphism) -> IntegerMatrix {
    let n = f.rank();
    let mut m = IntegerMatrix {
        size: n,
        entries: vec![0; n * n],
    };
    for (col, image) in f.images().iter().enumerate() {
        for (row, s) in image.exponent_sums().into_iter().enumerate() {
            m.entries[row * n + col] = s;
        }
    }
    m
}

/// Whether `f` lies in `SAut(F_n)`, i.e. its abelianization has determinant 1.
pub fn is_special(f: &Automorphism) -> Result<bool, MatrixError> {
    Ok(abelianize(f).det()? == 1)
}

/// A finite group of matrices over `Z/q`, in breadth-first discovery order.
#[derive(Debug, Clone, Serialize)]
pub struct ModGroupTable {
    pub elements: Vec<ModMatrix>,
    /// Every pair of generators commutes.
    pub generators_commute: bool,
    /// Every generator has order exactly 2.
    pub generators_involutions: bool,
    /// Abelian and every non-identity element has order 2.
    pub elementary_abelian_2: bool,
}

impl ModGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn closure_mod(gens: &[ModMatrix], cap: usize) -> Result<ModGroupTable, MatrixError> {
    let first = gens.first().ok_or(MatrixError::NoGenerators)?;
    for g in gens {
        if g.size != first.size {
            return Err(MatrixError::SizeMismatch {
                left: first.size,
                right: g.size,
            });
        }
        if g.modulus != first.modulus {
            return Err(MatrixError::ModulusMismatch {
                left: first.modulus,
                right: g.modulus,
            });
        }
    }
    let identity = ModMatrix::identity(first.size, first.modulus)?;
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::from([(identity.encode(), 0)]);
    let mut elements = vec![identity];
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        for g in gens {
            let next = current.mul(g)?;
            let key = next.encode();
            if let Entry::Vacant(e) = seen.entry(key) {
                if elements.len() == cap {
                    return Err(MatrixError::CapExceeded { cap });
                }
                e.insert(elements.len());
                elements.push(next);
            }
        }
        cursor += 1;
    }

    let mut generators_commute = true;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.mul(b)? != b.mul(a)? {
                generators_commute = false;
            }
        }
    }
    let mut generators_involutions = true;
    for g in gens {
        if g.is_identity() || !g.mul(g)?.is_identity() {
            generators_involutions = false;
        }
    }
    let mut elementary_abelian_2 = generators_commute;
    for x in &elements {
        if !x.mul(x)?.is_identity() {
            elementary_abelian_2 = false;
        }
    }
    Ok(ModGroupTable {
        elements,
        generators_commute,
        generators_involutions,
        elementary_abelian_2,
    })
}

/// Whether `mod q ∘ abelianize` is injective on the subgroup generated by `gens`.
pub fn restriction_injective(
    gens: &[Automorphism],
    q: u64,
    cap: usize,
) -> Result<bool, MatrixError> {
    let table = closure(gens, cap)?;
    let mut images = HashMap::new();
    for f in table.elements() {
        let key = abelianize(f).reduce_mod(q)?.encode();
        if images.insert(key, ()).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{rotation_generators, NamedGenerator};

    fn m(s: &str) -> IntegerMatrix {
        s.parse().unwrap()
    }

    fn named(g: NamedGenerator, rank: usize) -> Automorphism {
        Automorphism::named(g, rank).unwrap()
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(
            abelianize(&named(NamedGenerator::Inversion(1), 3)),
            IntegerMatrix::diagonal(&[-1, 1, 1])
        );
        assert_eq!(
            abelianize(&named(NamedGenerator::Rotation(1), 2)),
            m("[0,1;-1,-1]")
        );
        assert_eq!(
            abelianize(&Automorphism::identity(4)),
            IntegerMatrix::identity(4)
        );
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntegerMatrix::diagonal(&[-1, 1, 1]).det().unwrap(), -1);
        assert_eq!(abelianize(&Automorphism::delta(4)).det().unwrap(), 1);
        assert_eq!(m("[0,1;-1,-1]").det().unwrap(), 1);
        assert_eq!(m("[2,3;4,6]").det().unwrap(), 0);
        assert_eq!(m("[0,0,1;0,1,0;1,0,0]").det().unwrap(), -1);
        assert_eq!(m("[2,-1,0;-1,2,-1;0,-1,2]").det().unwrap(), 4);
    }

    #[test]
    fn det_overflow_is_reported() {
        let big = i64::MAX / 2;
        let a = IntegerMatrix::diagonal(&[big, big]);
        assert_eq!(a.det(), Err(MatrixError::Overflow));
        assert_eq!(a.mul(&a), Err(MatrixError::Overflow));
    }

    #[test]
    fn is_special_examples() {
        assert!(!is_special(&named(NamedGenerator::Inversion(1), 3)).unwrap());
        assert!(is_special(&named(NamedGenerator::Rotation(1), 3)).unwrap());
        for n in 2..=6 {
            assert_eq!(is_special(&Automorphism::delta(n)).unwrap(), n % 2 == 0);
        }
    }

    #[test]
    fn mod_reduce_examples() {
        let minus = IntegerMatrix::diagonal(&[-1, -1, -1, -1])
            .reduce_mod(2)
            .unwrap();
        assert!(minus.is_identity());
        let r = abelianize(&named(NamedGenerator::Rotation(1), 2))
            .reduce_mod(3)
            .unwrap();
        assert_eq!(r.to_string(), "[0,1;2,2] mod 3");
        let x = IntegerMatrix::elementary(3, 1, 2, 1).reduce_mod(2).unwrap();
        assert!(!x.is_identity() && x.mul(&x).unwrap().is_identity());
        assert_eq!(m("[1]").reduce_mod(1), Err(MatrixError::BadModulus(1)));
    }

    #[test]
    fn closure_mod_examples() {
        let gens: Vec<_> = (2..=5)
            .map(|i| IntegerMatrix::elementary(5, 1, i, 1).reduce_mod(2).unwrap())
            .collect();
        let t = closure_mod(&gens, 64).unwrap();
        assert_eq!(t.order(), 16);
        assert!(t.elementary_abelian_2 && t.generators_commute && t.generators_involutions);

        let id = closure_mod(&[ModMatrix::identity(3, 3).unwrap()], 10).unwrap();
        assert_eq!(id.order(), 1);

        let rot: Vec<_> = rotation_generators(4)
            .iter()
            .map(|f| abelianize(f).reduce_mod(5).unwrap())
            .collect();
        assert_eq!(closure_mod(&rot, 100).unwrap().order(), 9);
        assert_eq!(
            closure_mod(&gens, 8).unwrap_err(),
            MatrixError::CapExceeded { cap: 8 }
        );
    }

    #[test]
    fn restriction_injective_examples() {
        let t = rotation_generators(4);
        assert!(restriction_injective(&t, 5, 100).unwrap());
        assert!(restriction_injective(&t, 3, 100).unwrap());
        assert!(!restriction_injective(&[Automorphism::delta(4)], 2, 100).unwrap());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["[0,1;-1,-1]", "[1,0,0;0,1,0;0,0,1]", "[7]"] {
            assert_eq!(m(s).to_string(), s);
        }
        assert!("[1,2;3]".parse::<IntegerMatrix>().is_err());
        assert!("1,2".parse::<IntegerMatrix>().is_err());
    }
}
