use std::collections::HashMap;
use std::fmt;

use super::simplicial::{sort_parity, SimplicialComplex};
use super::ComplexError;

/// Default bound on the order of a vertex-permutation group.
pub const GROUP_CAP: usize = 10_000;

/// A permutation of `0..len` in one-line notation: `i ↦ self[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ComplexError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(ComplexError::NotPermutation(images));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    /// Product of disjoint transpositions.
    pub fn from_swaps(len: usize, swaps: &[(usize, usize)]) -> Self {
        let mut p: Vec<usize> = (0..len).collect();
        for &(a, b) in swaps {
            p.swap(a, b);
        }
        Permutation(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Sorted image of a simplex.
    pub fn image_of(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|&v| self.0[v]).collect();
        out.sort_unstable();
        out
    }

    pub fn fixes_vertexwise(&self, s: &[usize]) -> bool {
        s.iter().all(|&v| self.0[v] == v)
    }

    /// Least `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Breadth-first closure of a set of permutations; index 0 is the identity.
pub fn permutation_group(
    len: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, ComplexError> {
    let identity = Permutation::identity(len);
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut cursor = 0;
    while cursor < elements.len() {
        let current = elements[cursor].clone();
        for g in gens {
            let next = current.compose(g);
            if !index.contains_key(&next) {
                if elements.len() == cap {
                    return Err(ComplexError::CapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        cursor += 1;
    }
    Ok(elements)
}

/// A finite simplicial complex with a finite group acting by vertex
/// permutations that map simplices to simplices.
#[derive(Debug, Clone)]
pub struct EquivariantComplex {
    complex: SimplicialComplex,
    generators: Vec<Permutation>,
    group: Vec<Permutation>,
    regular: bool,
}

/// Subgroup as a sorted list of indices into [`EquivariantComplex::group`].
pub type Subgroup = Vec<usize>;

impl EquivariantComplex {
    pub fn new(
        complex: SimplicialComplex,
        generators: Vec<Permutation>,
    ) -> Result<Self, ComplexError> {
        Self::with_cap(complex, generators, GROUP_CAP)
    }

    pub fn with_cap(
        complex: SimplicialComplex,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, ComplexError> {
        let n = complex.vertex_count();
        for g in &generators {
            if g.len() != n {
                return Err(ComplexError::Input(format!(
                    "permutation of length {} for {} vertices",
                    g.len(),
                    n
                )));
            }
            for s in complex.maximal_simplices() {
                if !complex.contains(&g.image_of(&s)) {
                    return Err(ComplexError::NotSimplicial {
                        generator: g.to_string(),
                        simplex: s,
                    });
                }
            }
        }
        let group = permutation_group(n, &generators, cap)?;
        let regular = is_regular(&complex, &group);
        Ok(EquivariantComplex {
            complex,
            generators,
            group,
            regular,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All group elements, identity first.
    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.len()
    }

    /// Every element that fixes a simplex setwise fixes it vertexwise.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn require_regular(&self) -> Result<(), ComplexError> {
        if self.regular {
            Ok(())
        } else {
            Err(ComplexError::NotRegular)
        }
    }

    /// No non-identity element acts as the identity permutation.
    pub fn is_effective(&self) -> bool {
        self.group.iter().skip(1).all(|g| !g.is_identity())
    }

    /// Barycentric subdivision with the induced action.
    pub fn subdivide(&self) -> EquivariantComplex {
        let index = self.complex.simplex_index();
        let simplices: Vec<&Vec<usize>> = self.complex.all_simplices().collect();
        let induce = |g: &Permutation| {
            Permutation(
                simplices
                    .iter()
                    .map(|s| index[g.image_of(s).as_slice()])
                    .collect(),
            )
        };
        let complex = self.complex.barycentric_subdivision();
        let generators: Vec<Permutation> = self.generators.iter().map(induce).collect();
        let group: Vec<Permutation> = self.group.iter().map(induce).collect();
        let regular = is_regular(&complex, &group);
        EquivariantComplex {
            complex,
            generators,
            group,
            regular,
        }
    }

    /// Subdivides until regular; two subdivisions always suffice.
    pub fn regularize(&self) -> (EquivariantComplex, usize) {
        let mut current = self.clone();
        let mut steps = 0;
        while !current.regular {
            current = current.subdivide();
            steps += 1;
        }
        (current, steps)
    }

    pub fn whole_group(&self) -> Subgroup {
        (0..self.group.len()).collect()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        vec![0]
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_by(&self, elements: &[usize]) -> Result<Subgroup, ComplexError> {
        let lookup: HashMap<&Permutation, usize> =
            self.group.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let gens: Vec<Permutation> = elements
            .iter()
            .map(|&i| {
                self.group
                    .get(i)
                    .cloned()
                    .ok_or_else(|| ComplexError::Input(format!("no group element {i}")))
            })
            .collect::<Result<_, _>>()?;
        let sub = permutation_group(self.complex.vertex_count(), &gens, self.group.len())?;
        let mut idx: Vec<usize> = sub.iter().map(|g| lookup[g]).collect();
        idx.sort_unstable();
        Ok(idx)
    }

    /// Index of a permutation in the group table.
    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.group.iter().position(|x| x == g)
    }

    /// Number of elements fixing `s` vertexwise.
    pub fn stabilizer_order(&self, s: &[usize]) -> usize {
        self.group.iter().filter(|g| g.fixes_vertexwise(s)).count()
    }

    /// Simplices fixed vertexwise by every element of `subgroup`.
    pub fn fixed_subcomplex(&self, subgroup: &[usize]) -> Result<FixedSet, ComplexError> {
        self.require_regular()?;
        let elements: Vec<&Permutation> = subgroup.iter().map(|&i| &self.group[i]).collect();
        let complex = self
            .complex
            .subcomplex(|s| elements.iter().all(|g| g.fixes_vertexwise(s)));
        let components = complex.components();
        Ok(FixedSet {
            complex,
            components,
        })
    }

    /// Orientation behaviour of element `g`: `Some(true)` if it preserves the
    /// orientation on every top simplex, `Some(false)` if it reverses it on
    /// every one, `None` when mixed or the complex is not oriented.
    pub fn preserves_orientation(&self, g: &Permutation) -> Option<bool> {
        let mut verdict = None;
        for s in self.complex.top_simplices() {
            let sign = self.complex.orientation_of(s)?;
            let mapped: Vec<usize> = s.iter().map(|&v| g.apply(v)).collect();
            let image = g.image_of(s);
            let image_sign = self.complex.orientation_of(&image)?;
            let here = sign * sort_parity(&mapped) == image_sign;
            match verdict {
                None => verdict = Some(here),
                Some(v) if v != here => return None,
                Some(_) => {}
            }
        }
        verdict
    }

    /// Whether every group element preserves the attached orientation.
    pub fn is_orientation_preserving(&self) -> bool {
        self.complex.orientation().is_some()
            && self
                .group
                .iter()
                .all(|g| self.preserves_orientation(g) == Some(true))
    }

    /// Attaches a coherent orientation to the underlying complex.
    pub fn with_orientation(mut self, signed: &[(i8, Vec<usize>)]) -> Result<Self, ComplexError> {
        self.complex = self.complex.with_orientation(signed)?;
        Ok(self)
    }

    /// Orients the underlying complex automatically, if possible.
    pub fn oriented(mut self) -> Result<Self, ComplexError> {
        self.complex = self
            .complex
            .orient()
            .ok_or_else(|| ComplexError::Orientation("complex is not orientable".into()))?;
        Ok(self)
    }

    /// The prime `p` and exponent `n` with `|G| = p^n`, `n ≥ 1`.
    pub fn p_group_order(&self) -> Option<(u64, u32)> {
        prime_power(self.group.len() as u64)
    }

    /// Structure of an elementary abelian `p`-group.
    pub fn elementary_abelian(&self) -> Result<ElementaryAbelian, ComplexError> {
        let not = || ComplexError::NotElementaryAbelian;
        let (p, rank) = self.p_group_order().ok_or_else(not)?;
        for g in &self.group {
            if g.order() as u64 > p || p % g.order() as u64 != 0 {
                return Err(not());
            }
            for h in &self.group {
                if g.compose(h) != h.compose(g) {
                    return Err(not());
                }
            }
        }
        // Greedy basis; `coords` maps each element to its exponent vector.
        let mut basis: Vec<usize> = Vec::new();
        let mut coords: HashMap<Permutation, Vec<u64>> =
            HashMap::from([(self.group[0].clone(), Vec::new())]);
        for (i, g) in self.group.iter().enumerate() {
            if coords.contains_key(g) {
                continue;
            }
            basis.push(i);
            let mut next = HashMap::new();
            for (h, c) in &coords {
                let mut power = h.clone();
                for e in 0..p {
                    let mut v = c.clone();
                    v.push(e);
                    next.insert(power.clone(), v);
                    power = g.compose(&power);
                }
            }
            coords = next;
        }
        debug_assert_eq!(basis.len() as u32, rank);
        let coordinates = self.group.iter().map(|g| coords[g].clone()).collect();
        Ok(ElementaryAbelian {
            p,
            rank,
            basis,
            coordinates,
        })
    }

    /// All subgroups of index `p` of an elementary abelian `p`-group, each
    /// the kernel of a nonzero functional with leading coefficient 1.
    pub fn index_p_subgroups(&self) -> Result<Vec<Subgroup>, ComplexError> {
        let ea = self.elementary_abelian()?;
        let k = ea.rank as usize;
        let p = ea.p;
        let mut out = Vec::new();
        let total = (p as usize).pow(k as u32);
        for code in 1..total {
            let mut phi = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                phi.push((c % p as usize) as u64);
                c /= p as usize;
            }
            phi.reverse();
            if phi.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let kernel: Subgroup = ea
                .coordinates
                .iter()
                .enumerate()
                .filter(|(_, v)| v.iter().zip(&phi).map(|(a, b)| a * b).sum::<u64>() % p == 0)
                .map(|(i, _)| i)
                .collect();
            out.push(kernel);
        }
        Ok(out)
    }
}

/// An elementary abelian `p`-group with a chosen basis.
#[derive(Debug, Clone)]
pub struct ElementaryAbelian {
    pub p: u64,
    pub rank: u32,
    /// Group indices of the basis elements.
    pub basis: Vec<usize>,
    /// Exponent vector of each group element, in group order.
    pub coordinates: Vec<Vec<u64>>,
}

/// A fixed-point subcomplex and its connected components.
#[derive(Debug, Clone)]
pub struct FixedSet {
    pub complex: SimplicialComplex,
    pub components: Vec<super::Component>,
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// Dimension of the component containing `vertex`.
    pub fn component_dim_at(&self, vertex: usize) -> Option<usize> {
        self.components
            .iter()
            .find(|c| c.vertices.contains(&vertex))
            .map(|c| c.dim)
    }

    /// Largest component dimension.
    pub fn dim(&self) -> Option<usize> {
        self.complex.dim()
    }
}

fn is_regular(complex: &SimplicialComplex, group: &[Permutation]) -> bool {
    group.iter().skip(1).all(|g| {
        complex
            .all_simplices()
            .all(|s| g.fixes_vertexwise(s) || g.image_of(s) != *s)
    })
}

/// `(p, n)` with `m = p^n`, `n ≥ 1`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2;
    while !m.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = m;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus::{self, oct};

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_simplicial_generator() {
        let oct = corpus::octahedron();
        // Swapping +x with +y alone does not preserve the octahedron.
        let bad = Permutation::from_swaps(6, &[(oct::PX, oct::PZ), (oct::NX, oct::PY)]);
        assert!(matches!(
            EquivariantComplex::new(oct, vec![bad]),
            Err(ComplexError::NotSimplicial { .. })
        ));
    }

    #[test]
    fn regularity() {
        assert!(corpus::octahedron_reflections(&[0, 1]).is_regular());
        let tri = corpus::cycle_rotation(3, 1);
        assert!(tri.is_regular());
        let edge_rot = corpus::octahedron_edge_rotation();
        assert!(!edge_rot.is_regular());
        let (reg, steps) = edge_rot.regularize();
        assert!(reg.is_regular());
        assert!((1..=2).contains(&steps));
        // A filled triangle rotated about its center needs subdivision.
        let filled = SimplicialComplex::from_simplices(3, [vec![0, 1, 2]]).unwrap();
        let rot = EquivariantComplex::new(filled, vec![Permutation::new(vec![1, 2, 0]).unwrap()])
            .unwrap();
        assert!(!rot.is_regular());
        let once = rot.subdivide();
        assert!(once.is_regular());
        assert!(once.subdivide().is_regular());
    }

    #[test]
    fn subdivision_keeps_group_and_chi() {
        let e = corpus::octahedron_reflections(&[0, 1]);
        let sd = e.subdivide();
        assert_eq!(sd.order(), 4);
        assert_eq!(sd.complex().euler_characteristic(), 2);
        assert!(sd.is_effective());
    }

    #[test]
    fn fixed_subcomplex_examples() {
        let e = corpus::octahedron_reflections(&[0, 1]);
        let x = e.element_index(&oct::reflection(0)).unwrap();
        let fx = e.fixed_subcomplex(&e.generated_by(&[x]).unwrap()).unwrap();
        assert_eq!(fx.components.len(), 1);
        assert_eq!(fx.components[0].dim, 1);
        assert_eq!(fx.complex.euler_characteristic(), 0);

        let fg = e.fixed_subcomplex(&e.whole_group()).unwrap();
        assert_eq!(fg.components.len(), 2);
        assert!(fg.components.iter().all(|c| c.dim == 0));
        assert_eq!(
            fg.complex.vertices().collect::<Vec<_>>(),
            [oct::PZ, oct::NZ]
        );

        let ft = e.fixed_subcomplex(&e.trivial_subgroup()).unwrap();
        assert_eq!(ft.complex.f_vector(), e.complex().f_vector());

        assert!(matches!(
            corpus::octahedron_edge_rotation().fixed_subcomplex(&[0]),
            Err(ComplexError::NotRegular)
        ));
    }

    #[test]
    fn orientation_behaviour() {
        let rot = corpus::octahedron_rotations_pi(&[2]);
        assert!(rot.is_orientation_preserving());
        let refl = corpus::octahedron_reflections(&[0]);
        assert_eq!(refl.preserves_orientation(&refl.group()[1]), Some(false));
        assert!(!refl.is_orientation_preserving());
        // Unoriented complexes never count as orientation-preserving.
        let shift = corpus::torus_translations(3, 3, &[(1, 0)]);
        assert!(!shift.is_orientation_preserving());
        assert!(shift.oriented().unwrap().is_orientation_preserving());
        assert!(!corpus::torus_swap(3)
            .oriented()
            .unwrap()
            .is_orientation_preserving());
    }

    #[test]
    fn elementary_abelian_structure() {
        let e = corpus::octahedron_reflections(&[0, 1, 2]);
        let ea = e.elementary_abelian().unwrap();
        assert_eq!((ea.p, ea.rank), (2, 3));
        assert_eq!(e.index_p_subgroups().unwrap().len(), 7);
        for h in e.index_p_subgroups().unwrap() {
            assert_eq!(h.len(), 4);
        }
        assert!(matches!(
            corpus::octahedron_quarter_turn().elementary_abelian(),
            Err(ComplexError::NotElementaryAbelian)
        ));
        let t = corpus::torus_translations(3, 3, &[(1, 0), (0, 1)]);
        let ea = t.elementary_abelian().unwrap();
        assert_eq!((ea.p, ea.rank), (3, 2));
        assert_eq!(t.index_p_subgroups().unwrap().len(), 4);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }
}
