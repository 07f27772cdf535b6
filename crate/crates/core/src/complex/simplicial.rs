use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::ComplexError;

/// A simplex as its strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// Sign of the permutation that sorts `seq` (entries distinct).
pub(crate) fn sort_parity(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A connected component of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// A finite abstract simplicial complex, closed under faces.
///
/// Vertex labels live in `0..vertex_count`; a label need not be used (fixed
/// subcomplexes share the labels of the ambient complex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Simplex>>,
    /// Sign of each top-dimensional simplex relative to its sorted vertex
    /// order, aligned with `by_dim[dim]`.
    orientation: Option<Vec<i8>>,
}

impl SimplicialComplex {
    /// The face closure of `simplices`. Vertex order within each input is irrelevant.
    pub fn from_simplices<I>(vertex_count: usize, simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for mut s in simplices {
            if s.is_empty() {
                continue;
            }
            s.sort_unstable();
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(s));
            }
            if s.len() > 24 {
                return Err(ComplexError::Input(format!(
                    "simplex of dimension {} is too large",
                    s.len() - 1
                )));
            }
            if all.contains(&s) {
                continue;
            }
            // All non-empty subsets.
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let face: Simplex = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s[i])
                    .collect();
                all.insert(face);
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        Ok(SimplicialComplex {
            vertex_count,
            by_dim,
            orientation: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Largest simplex dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Every simplex, by dimension then lexicographically.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn top_simplices(&self) -> &[Simplex] {
        self.by_dim.last().map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let Some(level) = s.len().checked_sub(1).and_then(|d| self.by_dim.get(d)) else {
            return false;
        };
        level.binary_search_by(|x| x.as_slice().cmp(s)).is_ok()
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&[usize]> = BTreeSet::new();
        for level in self.by_dim.iter().skip(1) {
            for s in level {
                for face in facets_of(s) {
                    covered.insert(self.lookup(&face));
                }
            }
        }
        self.all_simplices()
            .filter(|s| !covered.contains(s.as_slice()))
            .cloned()
            .collect()
    }

    fn lookup(&self, s: &[usize]) -> &[usize] {
        let level = &self.by_dim[s.len() - 1];
        let i = level
            .binary_search_by(|x| x.as_slice().cmp(s))
            .expect("face of a simplex in a closed complex");
        &level[i]
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// `Σ (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn components(&self) -> Vec<Component> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: BTreeMap<usize, Component> = BTreeMap::new();
        for v in self.vertices() {
            let root = find(&mut parent, v);
            comps
                .entry(root)
                .or_insert_with(|| Component {
                    vertices: Vec::new(),
                    dim: 0,
                })
                .vertices
                .push(v);
        }
        for s in self.all_simplices() {
            let root = find(&mut parent, s[0]);
            let c = comps
                .get_mut(&root)
                .expect("vertex of a simplex is present");
            c.dim = c.dim.max(s.len() - 1);
        }
        comps.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Every maximal simplex is top-dimensional and every codimension-one
    /// simplex lies in exactly two top simplices.
    pub fn is_pseudomanifold(&self) -> bool {
        let Some(d) = self.dim() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let cofaces = self.top_coface_counts();
        self.simplices(d - 1)
            .iter()
            .all(|f| cofaces.get(f.as_slice()).copied() == Some(2))
    }

    fn top_coface_counts(&self) -> HashMap<Vec<usize>, usize> {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in self.top_simplices() {
            for f in facets_of(s) {
                *counts.entry(f).or_default() += 1;
            }
        }
        counts
    }

    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    /// Sign of the top simplex `s` (sorted), if oriented.
    pub fn orientation_of(&self, s: &[usize]) -> Option<i8> {
        let signs = self.orientation.as_ref()?;
        let i = self
            .top_simplices()
            .binary_search_by(|x| x.as_slice().cmp(s))
            .ok()?;
        Some(signs[i])
    }

    /// Attaches an orientation given as ordered top simplices with a sign;
    /// the orientation of `(sign, [v0, v1, ...])` is `sign` times that of the
    /// ordered tuple. Every top simplex must appear exactly once and the
    /// result must be coherent.
    pub fn with_orientation(mut self, signed: &[(i8, Vec<usize>)]) -> Result<Self, ComplexError> {
        let top = self.top_simplices();
        let mut signs: Vec<Option<i8>> = vec![None; top.len()];
        for (sign, ordered) in signed {
            if *sign != 1 && *sign != -1 {
                return Err(ComplexError::Orientation(format!("bad sign {sign}")));
            }
            let mut sorted = ordered.clone();
            sorted.sort_unstable();
            let i = top.binary_search(&sorted).map_err(|_| {
                ComplexError::Orientation(format!("{ordered:?} is not a top simplex"))
            })?;
            if signs[i].is_some() {
                return Err(ComplexError::Orientation(format!(
                    "{ordered:?} listed twice"
                )));
            }
            signs[i] = Some(sign * sort_parity(ordered));
        }
        let signs = signs
            .into_iter()
            .zip(top)
            .map(|(s, t)| s.ok_or_else(|| ComplexError::Orientation(format!("{t:?} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        self.orientation = Some(signs);
        if !self.orientation_is_coherent() {
            return Err(ComplexError::Orientation(
                "orientation is not coherent".into(),
            ));
        }
        Ok(self)
    }

    /// Induced orientations cancel on every codimension-one face shared by
    /// two top simplices.
    pub fn orientation_is_coherent(&self) -> bool {
        let Some(signs) = &self.orientation else {
            return false;
        };
        let mut induced: HashMap<Vec<usize>, Vec<i8>> = HashMap::new();
        for (s, &sign) in self.top_simplices().iter().zip(signs) {
            for (j, f) in facets_of(s).into_iter().enumerate() {
                let parity = if j % 2 == 0 { 1 } else { -1 };
                induced.entry(f).or_default().push(sign * parity);
            }
        }
        induced.values().all(|v| match v.as_slice() {
            [_] => true,
            [a, b] => a + b == 0,
            _ => false,
        })
    }

    /// Finds a coherent orientation of a pseudomanifold by propagation, or
    /// `None` when none exists.
    pub fn orient(&self) -> Option<Self> {
        if !self.is_pseudomanifold() {
            return None;
        }
        let top = self.top_simplices();
        let mut by_face: HashMap<Vec<usize>, Vec<(usize, i8)>> = HashMap::new();
        for (i, s) in top.iter().enumerate() {
            for (j, f) in facets_of(s).into_iter().enumerate() {
                by_face
                    .entry(f)
                    .or_default()
                    .push((i, if j % 2 == 0 { 1 } else { -1 }));
            }
        }
        let mut signs: Vec<Option<i8>> = vec![None; top.len()];
        for start in 0..top.len() {
            if signs[start].is_some() {
                continue;
            }
            signs[start] = Some(1);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let si = signs[i].expect("assigned before push");
                for (j, f) in facets_of(&top[i]).into_iter().enumerate() {
                    let pi = if j % 2 == 0 { 1 } else { -1 };
                    for &(k, pk) in &by_face[&f] {
                        if k == i {
                            continue;
                        }
                        // si * pi + sk * pk = 0
                        let want = -si * pi * pk;
                        match signs[k] {
                            None => {
                                signs[k] = Some(want);
                                stack.push(k);
                            }
                            Some(s) if s != want => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        let mut out = self.clone();
        out.orientation = Some(signs.into_iter().map(|s| s.expect("all visited")).collect());
        Some(out)
    }

    /// Index of each simplex in [`Self::all_simplices`] order.
    pub(crate) fn simplex_index(&self) -> HashMap<&[usize], usize> {
        self.all_simplices()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect()
    }

    /// Barycentric subdivision. Vertex `i` of the result is the barycenter of
    /// the `i`-th simplex in [`Self::all_simplices`] order. Orientation is
    /// carried over when present.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let index = self.simplex_index();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut signs: Vec<(Vec<usize>, i8)> = Vec::new();
        let top_dim = self.dim();
        for facet in self.maximal_simplices() {
            let facet_sign = match top_dim {
                Some(d) if facet.len() == d + 1 => self.orientation_of(&facet),
                _ => None,
            };
            for order in permutations(&facet) {
                let mut prefix: Vec<usize> = Vec::with_capacity(order.len());
                let mut chain = Vec::with_capacity(order.len());
                for &v in &order {
                    prefix.push(v);
                    let mut face = prefix.clone();
                    face.sort_unstable();
                    chain.push(index[face.as_slice()]);
                }
                // Chain indices increase with dimension, so `chain` is sorted.
                if let Some(s) = facet_sign {
                    signs.push((chain.clone(), s * sort_parity(&order)));
                }
                chains.push(chain);
            }
        }
        let mut sd = SimplicialComplex::from_simplices(index.len(), chains)
            .expect("chains of faces form a valid complex");
        if self.orientation.is_some() {
            let lookup: HashMap<Vec<usize>, i8> = signs.into_iter().collect();
            sd.orientation = Some(sd.top_simplices().iter().map(|s| lookup[s]).collect());
        }
        sd
    }

    /// The subcomplex of simplices satisfying `keep`; `keep` must be closed
    /// under taking faces.
    pub(crate) fn subcomplex<F>(&self, mut keep: F) -> SimplicialComplex
    where
        F: FnMut(&[usize]) -> bool,
    {
        let mut by_dim: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|level| level.iter().filter(|s| keep(s)).cloned().collect())
            .collect();
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex {
            vertex_count: self.vertex_count,
            by_dim,
            orientation: None,
        }
    }
}

/// Codimension-one faces, the `j`-th omitting vertex `j`.
pub(crate) fn facets_of(s: &[usize]) -> Vec<Vec<usize>> {
    if s.len() < 2 {
        return Vec::new();
    }
    (0..s.len())
        .map(|j| {
            s.iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// All orderings of `items`, lexicographic in positions.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}
