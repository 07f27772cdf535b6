//! Automorphisms of `F_n` with certified inverses, the named finite-order
//! generators, and breadth-first enumeration of the finite subgroups they
//! generate.

use std::borrow::Borrow;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Letter, Word, WordError};

/// Default bound on the number of elements enumerated by [`closure`].
pub const DEFAULT_CAP: usize = 10_000;

/// Environment variable overriding enumeration caps.
pub const CAP_ENV: &str = "AUTFN_CAP";

/// Reads [`CAP_ENV`]; `None` when unset or unparsable.
pub fn cap_from_env() -> Option<usize> {
    std::env::var(CAP_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&c| c > 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid generator {generator} for rank {rank}")]
    InvalidGenerator { generator: String, rank: usize },
    #[error("images and inverse images do not compose to the identity")]
    NotInverse,
    #[error("enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no generators given")]
    NoGenerators,
}

/// The named automorphisms. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGenerator {
    /// `e_i : a_i ↦ a_i^{-1}`.
    Inversion(usize),
    /// `(ij) : a_i ↔ a_j`.
    Transposition(usize, usize),
    /// `R_i : a_{2i-1} ↦ a_{2i}^{-1}, a_{2i} ↦ a_{2i}^{-1} a_{2i-1}`.
    Rotation(usize),
    /// `λ_{ij} : a_i ↦ a_i a_j`.
    Nielsen(usize, usize),
}

impl fmt::Display for NamedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NamedGenerator::Inversion(i) => write!(f, "e{i}"),
            NamedGenerator::Transposition(i, j) => write!(f, "({i}{j})"),
            NamedGenerator::Rotation(i) => write!(f, "R{i}"),
            NamedGenerator::Nielsen(i, j) => write!(f, "L{i},{j}"),
        }
    }
}

/// An automorphism of `F_n`, stored as the images of the basis together with
/// the images of its inverse.
///
/// Equality and hashing look at `images` only.
#[derive(Debug, Clone, Serialize)]
pub struct Automorphism {
    rank: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Automorphism {}

impl Hash for Automorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

// Hash agrees with `[Word]` since `Vec<Word>` hashes as its slice.
impl Borrow<[Word]> for Automorphism {
    fn borrow(&self) -> &[Word] {
        &self.images
    }
}

impl Automorphism {
    pub fn identity(rank: usize) -> Self {
        let basis: Vec<Word> = (1..=rank)
            .map(|i| Word::gen(rank, i).expect("index within rank"))
            .collect();
        Automorphism {
            rank,
            images: basis.clone(),
            inverse_images: basis,
        }
    }

    /// Builds an automorphism after checking that both composites are the
    /// identity on every basis element.
    pub fn new(images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self, AutError> {
        let rank = images.len();
        if inverse_images.len() != rank {
            return Err(WordError::ImageCountMismatch {
                expected: rank,
                actual: inverse_images.len(),
            }
            .into());
        }
        for w in images.iter().chain(&inverse_images) {
            if w.rank() != rank {
                return Err(WordError::RankMismatch {
                    left: rank,
                    right: w.rank(),
                }
                .into());
            }
        }
        let f = Automorphism {
            rank,
            images,
            inverse_images,
        };
        for i in 1..=rank {
            let a = Word::gen(rank, i)?;
            let there_and_back = a.apply_map(&f.inverse_images)?.apply_map(&f.images)?;
            let back_and_there = a.apply_map(&f.images)?.apply_map(&f.inverse_images)?;
            if there_and_back != a || back_and_there != a {
                return Err(AutError::NotInverse);
            }
        }
        Ok(f)
    }

    pub fn named(generator: NamedGenerator, rank: usize) -> Result<Self, AutError> {
        let invalid = || AutError::InvalidGenerator {
            generator: generator.to_string(),
            rank,
        };
        let in_range = |i: usize| (1..=rank).contains(&i);
        let gen = |i: usize| Word::gen(rank, i);
        let mut images: Vec<Word> = (1..=rank).map(gen).collect::<Result<_, _>>()?;
        match generator {
            NamedGenerator::Inversion(i) => {
                if !in_range(i) {
                    return Err(invalid());
                }
                images[i - 1] = Word::letter(rank, Letter::inv(i))?;
                let inverse = images.clone();
                Ok(Automorphism {
                    rank,
                    images,
                    inverse_images: inverse,
                })
            }
            NamedGenerator::Transposition(i, j) => {
                if !in_range(i) || !in_range(j) || i == j {
                    return Err(invalid());
                }
                images.swap(i - 1, j - 1);
                let inverse = images.clone();
                Ok(Automorphism {
                    rank,
                    images,
                    inverse_images: inverse,
                })
            }
            NamedGenerator::Rotation(i) => {
                if i == 0 || 2 * i > rank {
                    return Err(invalid());
                }
                let (odd, even) = (2 * i - 1, 2 * i);
                images[odd - 1] = Word::letter(rank, Letter::inv(even))?;
                images[even - 1] = Word::from_letters(rank, [Letter::inv(even), Letter::gen(odd)])?;
                // R_i has order 3, so R_i^{-1} = R_i ∘ R_i.
                let inverse = images
                    .iter()
                    .map(|w| w.apply_map(&images))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Automorphism {
                    rank,
                    images,
                    inverse_images: inverse,
                })
            }
            NamedGenerator::Nielsen(i, j) => {
                if !in_range(i) || !in_range(j) || i == j {
                    return Err(invalid());
                }
                let mut inverse = images.clone();
                images[i - 1] = Word::from_letters(rank, [Letter::gen(i), Letter::gen(j)])?;
                inverse[i - 1] = Word::from_letters(rank, [Letter::gen(i), Letter::inv(j)])?;
                Ok(Automorphism {
                    rank,
                    images,
                    inverse_images: inverse,
                })
            }
        }
    }

    /// `Δ = e_1 e_2 ⋯ e_n`.
    pub fn delta(rank: usize) -> Self {
        let images: Vec<Word> = (1..=rank)
            .map(|i| Word::letter(rank, Letter::inv(i)).expect("index within rank"))
            .collect();
        Automorphism {
            rank,
            images: images.clone(),
            inverse_images: images,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    /// Applies the automorphism to a word of the same rank.
    pub fn apply(&self, w: &Word) -> Result<Word, AutError> {
        Ok(w.apply_map(&self.images)?)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| matches!(w.letters(), [l] if l.index() == i + 1 && !l.is_inverse()))
    }

    /// `self ∘ g`: applies `g` first.
    pub fn compose(&self, g: &Automorphism) -> Result<Automorphism, AutError> {
        if self.rank != g.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: g.rank,
            }
            .into());
        }
        let images = g
            .images
            .iter()
            .map(|w| w.apply_map(&self.images))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| w.apply_map(&g.inverse_images))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Automorphism {
            rank: self.rank,
            images,
            inverse_images,
        })
    }

    /// `self ∘ other ∘ self^{-1}`.
    pub fn conjugate(&self, other: &Automorphism) -> Result<Automorphism, AutError> {
        self.compose(other)?.compose(&self.inverse())
    }

    /// Basis images of `self ∘ other ∘ self^{-1}`, without the inverse.
    pub fn conjugate_images(&self, other: &Automorphism) -> Result<Vec<Word>, AutError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            }
            .into());
        }
        self.inverse_images
            .iter()
            .map(|w| Ok(w.apply_map(&other.images)?.apply_map(&self.images)?))
            .collect()
    }

    /// Least `k ≤ cap` with `f^k = id`.
    pub fn order(&self, cap: usize) -> Result<Order, AutError> {
        let mut power = self.clone();
        for k in 1..=cap {
            if power.is_identity() {
                return Ok(Order::Finite(k));
            }
            if k < cap {
                power = power.compose(self)?;
            }
        }
        Ok(Order::CapExceeded)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(usize),
    CapExceeded,
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(k) => Some(k),
            Order::CapExceeded => None,
        }
    }
}

/// A finite subgroup enumerated by breadth-first closure.
///
/// `elements[0]` is the identity. Elements appear in discovery order, which
/// is shortlex order on words in the generators.
#[derive(Debug, Clone)]
pub struct GroupTable {
    generators: Vec<Automorphism>,
    elements: Vec<Automorphism>,
    index: HashMap<Automorphism, usize>,
}

impl GroupTable {
    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, f: &Automorphism) -> bool {
        self.index.contains_key(f)
    }

    /// Membership test by basis images.
    pub fn contains_images(&self, images: &[Word]) -> bool {
        self.index.contains_key(images)
    }

    pub fn index_of(&self, f: &Automorphism) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Sub-table of the elements satisfying `keep`, in the same order.
    pub fn filter<F>(&self, mut keep: F) -> GroupTable
    where
        F: FnMut(&Automorphism) -> bool,
    {
        let elements: Vec<Automorphism> =
            self.elements.iter().filter(|f| keep(f)).cloned().collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        GroupTable {
            generators: Vec::new(),
            elements,
            index,
        }
    }

    /// Checks identity, inverses and closure directly on the table.
    pub fn satisfies_group_axioms(&self) -> Result<bool, AutError> {
        let Some(first) = self.elements.first() else {
            return Ok(false);
        };
        if !first.is_identity() {
            return Ok(false);
        }
        for f in &self.elements {
            if !self.contains(&f.inverse()) {
                return Ok(false);
            }
            for g in &self.elements {
                if !self.contains(&f.compose(g)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Breadth-first closure of `gens` under composition.
pub fn closure(gens: &[Automorphism], cap: usize) -> Result<GroupTable, AutError> {
    let rank = gens.first().ok_or(AutError::NoGenerators)?.rank();
    if let Some(bad) = gens.iter().find(|g| g.rank() != rank) {
        return Err(WordError::RankMismatch {
            left: rank,
            right: bad.rank(),
        }
        .into());
    }
    let identity = Automorphism::identity(rank);
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        for g in gens {
            let next = current.compose(g)?;
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(AutError::CapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        cursor += 1;
    }
    Ok(GroupTable {
        generators: gens.to_vec(),
        elements,
        index,
    })
}

/// Generators of the inversion subgroup `N = ⟨e_1, …, e_n⟩`.
pub fn inversion_generators(rank: usize) -> Vec<Automorphism> {
    (1..=rank)
        .map(|i| Automorphism::named(NamedGenerator::Inversion(i), rank).expect("valid index"))
        .collect()
}

/// Generators of the signed permutation group `W_n`: all `e_i` and the
/// adjacent transpositions `(i i+1)`, which generate every `(ij)`.
pub fn signed_permutation_generators(rank: usize) -> Vec<Automorphism> {
    let mut gens = inversion_generators(rank);
    for i in 1..rank {
        gens.push(
            Automorphism::named(NamedGenerator::Transposition(i, i + 1), rank)
                .expect("valid indices"),
        );
    }
    gens
}

/// Generators `R_1, …, R_m` of `T`, `m = ⌊n/2⌋`.
pub fn rotation_generators(rank: usize) -> Vec<Automorphism> {
    (1..=rank / 2)
        .map(|i| Automorphism::named(NamedGenerator::Rotation(i), rank).expect("valid index"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(g: NamedGenerator, rank: usize) -> Automorphism {
        Automorphism::named(g, rank).unwrap()
    }

    fn images(f: &Automorphism) -> Vec<String> {
        f.images().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn named_images() {
        assert_eq!(
            images(&named(NamedGenerator::Inversion(1), 3)),
            ["A1", "a2", "a3"]
        );
        assert_eq!(
            images(&named(NamedGenerator::Rotation(1), 4)),
            ["A2", "A2a1", "a3", "a4"]
        );
        assert_eq!(
            images(&named(NamedGenerator::Transposition(1, 2), 3)),
            ["a2", "a1", "a3"]
        );
        assert_eq!(
            images(&named(NamedGenerator::Nielsen(1, 2), 2)),
            ["a1a2", "a2"]
        );
    }

    #[test]
    fn named_inverses_are_certified() {
        for g in [
            NamedGenerator::Inversion(2),
            NamedGenerator::Transposition(1, 3),
            NamedGenerator::Rotation(2),
            NamedGenerator::Nielsen(3, 1),
        ] {
            let f = named(g, 4);
            let again = Automorphism::new(f.images().to_vec(), f.inverse_images().to_vec());
            assert!(again.is_ok(), "{g}");
            assert!(f.compose(&f.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn invalid_generators() {
        for (g, rank) in [
            (NamedGenerator::Inversion(0), 3),
            (NamedGenerator::Inversion(4), 3),
            (NamedGenerator::Transposition(2, 2), 3),
            (NamedGenerator::Rotation(2), 3),
            (NamedGenerator::Nielsen(1, 5), 3),
        ] {
            assert!(matches!(
                Automorphism::named(g, rank),
                Err(AutError::InvalidGenerator { .. })
            ));
        }
    }

    #[test]
    fn new_rejects_non_inverse() {
        let rank = 2;
        let w = |s: &str| Word::parse(s, rank).unwrap();
        let err = Automorphism::new(vec![w("a1a2"), w("a2")], vec![w("a1a2"), w("a2")]);
        assert_eq!(err.unwrap_err(), AutError::NotInverse);
    }

    #[test]
    fn compose_examples() {
        let t = named(NamedGenerator::Transposition(1, 2), 3);
        assert!(t.compose(&t).unwrap().is_identity());
        let r = named(NamedGenerator::Rotation(1), 4);
        assert!(r.compose(&r.compose(&r).unwrap()).unwrap().is_identity());
        let e1 = named(NamedGenerator::Inversion(1), 3);
        let te = t.compose(&e1).unwrap();
        assert_eq!(te.images()[0].to_string(), "A2");
    }

    #[test]
    fn compose_rank_mismatch() {
        let a = Automorphism::identity(2);
        let b = Automorphism::identity(3);
        assert!(matches!(
            a.compose(&b),
            Err(AutError::Word(WordError::RankMismatch { .. }))
        ));
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            named(NamedGenerator::Inversion(1), 3).order(10).unwrap(),
            Order::Finite(2)
        );
        assert_eq!(
            named(NamedGenerator::Rotation(1), 4).order(10).unwrap(),
            Order::Finite(3)
        );
        assert_eq!(
            named(NamedGenerator::Nielsen(1, 2), 3).order(50).unwrap(),
            Order::CapExceeded
        );
        assert_eq!(
            Automorphism::identity(3).order(1).unwrap(),
            Order::Finite(1)
        );
    }

    #[test]
    fn closure_examples() {
        let t = closure(&rotation_generators(4), 100).unwrap();
        assert_eq!(t.order(), 9);
        let gens = vec![
            named(NamedGenerator::Inversion(1), 3),
            named(NamedGenerator::Inversion(2), 3),
            named(NamedGenerator::Inversion(3), 3),
            named(NamedGenerator::Transposition(1, 2), 3),
            named(NamedGenerator::Transposition(2, 3), 3),
        ];
        let w3 = closure(&gens, 100).unwrap();
        assert_eq!(w3.order(), 48);
        assert!(w3.satisfies_group_axioms().unwrap());
        assert_eq!(
            closure(&[Automorphism::identity(3)], 10).unwrap().order(),
            1
        );
    }

    #[test]
    fn closure_cap_exceeded() {
        let err = closure(&[named(NamedGenerator::Nielsen(1, 2), 2)], 20).unwrap_err();
        assert_eq!(err, AutError::CapExceeded { cap: 20 });
        assert_eq!(closure(&[], 5).unwrap_err(), AutError::NoGenerators);
    }

    #[test]
    fn closure_is_deterministic() {
        let gens = signed_permutation_generators(3);
        let a = closure(&gens, 100).unwrap();
        let b = closure(&gens, 100).unwrap();
        assert_eq!(a.elements(), b.elements());
    }
}
