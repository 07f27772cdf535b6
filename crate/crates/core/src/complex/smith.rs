//! Euler-characteristic checks for `p`-group actions: stabilizer strata,
//! free quotients, the fixed-point split, Borel's dimension formula, the
//! Mann–Su rank inequalities and the resulting divisibility of `χ`.
//!
//! Each check returns a report with a `holds` flag. A `false` flag on valid
//! input would falsify the underlying theorem; callers treat it as failure.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::action::{prime_power, EquivariantComplex};
use super::{ComplexError, SimplicialComplex};
use crate::manifold::ChiDescriptor;
use crate::obstruction::{rank_bound, ActionMode, Bound};

/// Report identifiers.
pub const STRATIFICATION: &str = "stratification";
pub const FREE_QUOTIENT: &str = "smith-free-quotient";
pub const FIXED_SPLIT: &str = "smith-fixed-split";
pub const BOREL: &str = "borel-formula";
pub const MANN_SU: &str = "mann-su-bound";
pub const ORIENTED_BOUND: &str = "oriented-2-rank-bound";
pub const RANK_DIVISIBILITY: &str = "rank-divisibility";

/// Subdivisions tried while looking for a simplicial orbit space.
pub const MAX_QUOTIENT_SUBDIVISIONS: usize = 3;

fn sign(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Alternating count of the simplices accepted by `keep`.
pub fn open_chi<F>(complex: &SimplicialComplex, mut keep: F) -> i64
where
    F: FnMut(&[usize]) -> bool,
{
    complex
        .all_simplices()
        .filter(|s| keep(s))
        .map(|s| sign(s.len() - 1))
        .sum()
}

/// Index of vertex `v` of `complex` in its barycentric subdivision.
fn vertex_in_subdivision(complex: &SimplicialComplex, v: usize) -> Option<usize> {
    complex.simplices(0).iter().position(|s| s[0] == v)
}

fn regularized(e: &EquivariantComplex) -> (EquivariantComplex, usize) {
    e.regularize()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Stabilizer order is `p^i`.
    pub i: u32,
    pub chi_c: i64,
    /// `p^(n-i)`.
    pub modulus: i64,
    /// `chi_c / modulus` when divisible.
    pub a: Option<i64>,
    pub simplices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataReport {
    pub check: &'static str,
    pub p: u64,
    pub n: u32,
    pub subdivisions: usize,
    /// `χ` from the face counts.
    pub chi: i64,
    /// Alternating count over every open simplex, summed stratum by stratum.
    pub strata_sum: i64,
    pub strata: Vec<Stratum>,
    pub holds: bool,
}

/// Partitions the open simplices by stabilizer order `p^i` and checks
/// `p^(n-i) | chi_c(X_i)` and `Σ chi_c(X_i) = χ(X)`.
pub fn strata_chi(e: &EquivariantComplex) -> Result<StrataReport, ComplexError> {
    let (p, n) = e
        .p_group_order()
        .ok_or(ComplexError::NotPGroup { order: e.order() })?;
    let (reg, subdivisions) = regularized(e);
    let mut chi_c = vec![0i64; n as usize + 1];
    let mut counts = vec![0usize; n as usize + 1];
    for s in reg.complex().all_simplices() {
        let order = reg.stabilizer_order(s) as u64;
        let i = if order == 1 {
            0
        } else {
            match prime_power(order) {
                Some((q, i)) if q == p => i,
                _ => return Err(ComplexError::NotPGroup { order: e.order() }),
            }
        };
        chi_c[i as usize] += sign(s.len() - 1);
        counts[i as usize] += 1;
    }
    let chi = reg.complex().euler_characteristic();
    let strata: Vec<Stratum> = (0..=n)
        .map(|i| {
            let modulus = (p as i64).pow(n - i);
            let c = chi_c[i as usize];
            Stratum {
                i,
                chi_c: c,
                modulus,
                a: (c % modulus == 0).then_some(c / modulus),
                simplices: counts[i as usize],
            }
        })
        .collect();
    let strata_sum = chi_c.iter().sum();
    let holds = strata_sum == chi && strata.iter().all(|s| s.a.is_some());
    Ok(StrataReport {
        check: STRATIFICATION,
        p,
        n,
        subdivisions,
        chi,
        strata_sum,
        strata,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub check: &'static str,
    pub order: usize,
    pub subdivisions: usize,
    pub chi: i64,
    pub quotient_chi: i64,
    pub quotient_f_vector: Vec<usize>,
    pub holds: bool,
}

/// Orbit complex of a free regular action, if it is simplicial: vertex
/// orbits span distinct simplices and distinct simplex orbits stay distinct.
fn orbit_complex(e: &EquivariantComplex) -> Option<SimplicialComplex> {
    let k = e.complex();
    let mut orbit_of = vec![usize::MAX; k.vertex_count()];
    let mut next = 0;
    for v in k.vertices() {
        if orbit_of[v] == usize::MAX {
            for g in e.group() {
                orbit_of[g.apply(v)] = next;
            }
            next += 1;
        }
    }
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut simplex_orbits = 0usize;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in k.all_simplices() {
        if seen.contains(s) {
            continue;
        }
        simplex_orbits += 1;
        for g in e.group() {
            seen.insert(g.image_of(s));
        }
        let mut image: Vec<usize> = s.iter().map(|&v| orbit_of[v]).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != s.len() {
            return None;
        }
        images.insert(image);
    }
    let quotient = SimplicialComplex::from_simplices(next, images).ok()?;
    (quotient.f_vector().iter().sum::<usize>() == simplex_orbits).then_some(quotient)
}

/// `(χ(X), χ(X/G))` for a free action, with `χ(X) = |G|·χ(X/G)` checked
/// against an explicitly built orbit complex.
pub fn free_quotient_chi(e: &EquivariantComplex) -> Result<QuotientReport, ComplexError> {
    let (mut current, mut subdivisions) = regularized(e);
    let free = current
        .group()
        .iter()
        .skip(1)
        .all(|g| current.complex().vertices().all(|v| g.apply(v) != v));
    if !free {
        return Err(ComplexError::NotFree);
    }
    loop {
        if let Some(q) = orbit_complex(&current) {
            let chi = current.complex().euler_characteristic();
            let quotient_chi = q.euler_characteristic();
            return Ok(QuotientReport {
                check: FREE_QUOTIENT,
                order: current.order(),
                subdivisions,
                chi,
                quotient_chi,
                quotient_f_vector: q.f_vector(),
                holds: chi == current.order() as i64 * quotient_chi,
            });
        }
        if subdivisions == MAX_QUOTIENT_SUBDIVISIONS {
            return Err(ComplexError::QuotientNotSimplicial { subdivisions });
        }
        current = current.subdivide();
        subdivisions += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedSplitReport {
    pub check: &'static str,
    pub p: u64,
    pub subdivisions: usize,
    pub chi: i64,
    /// `chi_c(X - F)`.
    pub complement_chi_c: i64,
    /// `χ(F)`.
    pub fixed_chi: i64,
    /// `p | chi_c(X - F)`, the free part.
    pub complement_divisible: bool,
    pub holds: bool,
}

/// `χ(X) = chi_c(X - F) + χ(F)` for a group of prime order.
pub fn fixed_split_chi(e: &EquivariantComplex) -> Result<FixedSplitReport, ComplexError> {
    let p = match e.p_group_order() {
        Some((p, 1)) => p,
        _ => return Err(ComplexError::NotCyclicPrime { order: e.order() }),
    };
    let (reg, subdivisions) = regularized(e);
    let fixed = reg.fixed_subcomplex(&reg.whole_group())?;
    let chi = reg.complex().euler_characteristic();
    let complement_chi_c = open_chi(reg.complex(), |s| !fixed.complex.contains(s));
    let fixed_chi = fixed.complex.euler_characteristic();
    Ok(FixedSplitReport {
        check: FIXED_SPLIT,
        p,
        subdivisions,
        chi,
        complement_chi_c,
        fixed_chi,
        complement_divisible: complement_chi_c % p as i64 == 0,
        holds: chi == complement_chi_c + fixed_chi && complement_chi_c % p as i64 == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelTerm {
    /// Group element indices of the index-`p` subgroup.
    pub subgroup: Vec<usize>,
    pub n_h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelReport {
    pub check: &'static str,
    pub p: u64,
    pub rank: u32,
    pub basepoint: usize,
    pub subdivisions: usize,
    /// Manifold dimension.
    pub n: usize,
    /// Dimension of the basepoint's component of `Fix(G)`.
    pub r: usize,
    pub terms: Vec<BorelTerm>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

fn declared_manifold(k: &SimplicialComplex) -> Result<usize, ComplexError> {
    if !k.is_pseudomanifold() {
        return Err(ComplexError::NotPseudomanifold);
    }
    k.dim().ok_or(ComplexError::NotPseudomanifold)
}

/// `n - r = Σ_H (n(H) - r)` over index-`p` subgroups `H`, at a `G`-fixed
/// vertex `basepoint`.
pub fn borel_check(e: &EquivariantComplex, basepoint: usize) -> Result<BorelReport, ComplexError> {
    let n = declared_manifold(e.complex())?;
    let ea = e.elementary_abelian()?;
    if basepoint >= e.complex().vertex_count()
        || !e.complex().contains(&[basepoint])
        || e.group().iter().any(|g| g.apply(basepoint) != basepoint)
    {
        return Err(ComplexError::BasepointNotFixed { vertex: basepoint });
    }
    let (reg, subdivisions) = regularized(e);
    let mut x = basepoint;
    let mut ambient = e.complex().clone();
    for _ in 0..subdivisions {
        x = vertex_in_subdivision(&ambient, x).expect("basepoint survives subdivision");
        ambient = ambient.barycentric_subdivision();
    }
    debug_assert_eq!(&ambient, reg.complex());
    let dim_at = |reg: &EquivariantComplex, h: &[usize]| -> Result<usize, ComplexError> {
        Ok(reg
            .fixed_subcomplex(h)?
            .component_dim_at(x)
            .expect("basepoint is fixed"))
    };
    let r = dim_at(&reg, &reg.whole_group())?;
    let mut terms = Vec::new();
    for h in e.index_p_subgroups()? {
        let n_h = dim_at(&reg, &h)?;
        terms.push(BorelTerm { subgroup: h, n_h });
    }
    let lhs = n as i64 - r as i64;
    let rhs = terms.iter().map(|t| t.n_h as i64 - r as i64).sum();
    Ok(BorelReport {
        check: BOREL,
        p: ea.p,
        rank: ea.rank,
        basepoint,
        subdivisions,
        n,
        r,
        terms,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub check: &'static str,
    /// Left side, `k` or `2k`.
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityCheck {
    pub check: &'static str,
    pub chi: i64,
    /// Largest admissible `p`-rank given `χ`, the dimension and the mode.
    pub bound: Bound,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCheckReport {
    pub p: u64,
    pub k: u32,
    pub r: usize,
    pub subdivisions: usize,
    pub mode: ActionMode,
    /// `dim Fix(G)`, absent when the fixed set is empty.
    pub r0: Option<usize>,
    /// The Mann–Su style inequality; absent when `Fix(G)` is empty.
    pub inequality: Option<InequalityCheck>,
    pub divisibility: DivisibilityCheck,
    pub holds: bool,
}

/// Rank inequalities for an effective elementary abelian action on a
/// declared closed connected manifold. Orientation preservation is detected
/// from the attached orientation; without one the general bound is used.
pub fn effective_rank_bound_check(e: &EquivariantComplex) -> Result<RankCheckReport, ComplexError> {
    let r = declared_manifold(e.complex())?;
    if !e.complex().is_connected() {
        return Err(ComplexError::Disconnected);
    }
    if !e.is_effective() {
        return Err(ComplexError::NotEffective);
    }
    let ea = e.elementary_abelian()?;
    let (p, k) = (ea.p, ea.rank);
    let mode = if p == 2 && e.is_orientation_preserving() {
        ActionMode::OrientationPreserving
    } else {
        ActionMode::General
    };
    let (reg, subdivisions) = regularized(e);
    let r0 = reg.fixed_subcomplex(&reg.whole_group())?.dim();
    let inequality = r0.map(|r0| {
        let (check, lhs, rhs) = match mode {
            ActionMode::OrientationPreserving => {
                (ORIENTED_BOUND, i64::from(k), r as i64 - 1 - r0 as i64)
            }
            ActionMode::General if p == 2 => (MANN_SU, i64::from(k), r as i64 - r0 as i64),
            ActionMode::General => (MANN_SU, 2 * i64::from(k), r as i64 - r0 as i64),
        };
        InequalityCheck {
            check,
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    });
    let chi = e.complex().euler_characteristic();
    let descriptor = ChiDescriptor::new(
        r as u32,
        chi,
        mode == ActionMode::OrientationPreserving,
        true,
    );
    let bound =
        rank_bound(&descriptor, p, mode).map_err(|err| ComplexError::Input(err.to_string()))?;
    let divisibility = DivisibilityCheck {
        check: RANK_DIVISIBILITY,
        chi,
        bound: bound.bound,
        holds: bound.admits(u64::from(k)),
    };
    let holds = divisibility.holds && inequality.as_ref().is_none_or(|c| c.holds);
    Ok(RankCheckReport {
        p,
        k,
        r,
        subdivisions,
        mode,
        r0,
        inequality,
        divisibility,
        holds,
    })
}

/// Vertices fixed by every group element.
pub fn fixed_vertices(e: &EquivariantComplex) -> Vec<usize> {
    e.complex()
        .vertices()
        .filter(|&v| e.group().iter().all(|g| g.apply(v) == v))
        .collect()
}

/// Counts of open simplices per stabilizer order, a second route to the
/// strata used by the tests.
pub fn stabilizer_histogram(e: &EquivariantComplex) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for s in e.complex().all_simplices() {
        *out.entry(e.stabilizer_order(s)).or_insert(0) += sign(s.len() - 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::corpus::{self, oct};

    fn chis(r: &StrataReport) -> Vec<i64> {
        r.strata.iter().map(|s| s.chi_c).collect()
    }

    #[test]
    fn strata_examples() {
        let hex = strata_chi(&corpus::bipyramid_rotation(6, 2)).unwrap();
        assert_eq!((hex.p, hex.n), (3, 1));
        assert_eq!(chis(&hex), [0, 2]);
        assert!(hex.holds);

        let refl = strata_chi(&corpus::octahedron_reflections(&[0, 1]).subdivide()).unwrap();
        assert_eq!(chis(&refl), [4, -4, 2]);
        assert_eq!(
            refl.strata.iter().map(|s| s.a).collect::<Vec<_>>(),
            [Some(1), Some(-2), Some(2)]
        );
        assert!(refl.holds);

        let anti = strata_chi(&corpus::octahedron_antipodal()).unwrap();
        assert_eq!(chis(&anti), [2, 0]);
        assert_eq!(anti.strata[0].a, Some(1));
    }

    #[test]
    fn strata_rejects_non_p_groups() {
        let c6 = corpus::cycle_rotation(6, 1);
        assert!(matches!(
            strata_chi(&c6),
            Err(ComplexError::NotPGroup { order: 6 })
        ));
    }

    #[test]
    fn histogram_agrees_with_strata() {
        let e = corpus::octahedron_reflections(&[0, 1, 2]);
        let h = stabilizer_histogram(&e);
        let r = strata_chi(&e).unwrap();
        for s in &r.strata {
            assert_eq!(h.get(&(1usize << s.i)).copied().unwrap_or(0), s.chi_c);
        }
    }

    #[test]
    fn free_quotients() {
        let anti = free_quotient_chi(&corpus::octahedron_antipodal()).unwrap();
        assert_eq!((anti.chi, anti.quotient_chi), (2, 1));
        assert_eq!(anti.subdivisions, 1);
        assert!(anti.holds);

        let nine = free_quotient_chi(&corpus::cycle_rotation(9, 3)).unwrap();
        assert_eq!((nine.chi, nine.quotient_chi), (0, 0));
        assert_eq!(nine.quotient_f_vector, [3, 3]);

        assert!(matches!(
            free_quotient_chi(&corpus::octahedron_reflections(&[0])),
            Err(ComplexError::NotFree)
        ));
    }

    #[test]
    fn fixed_split_examples() {
        let b = fixed_split_chi(&corpus::bipyramid_rotation(6, 2)).unwrap();
        assert_eq!((b.chi, b.complement_chi_c, b.fixed_chi), (2, 0, 2));
        let r = fixed_split_chi(&corpus::octahedron_reflections(&[0])).unwrap();
        assert_eq!((r.chi, r.complement_chi_c, r.fixed_chi), (2, 2, 0));
        assert!(b.holds && r.holds);
        assert!(matches!(
            fixed_split_chi(&corpus::octahedron_reflections(&[0, 1])),
            Err(ComplexError::NotCyclicPrime { order: 4 })
        ));
    }

    #[test]
    fn borel_examples() {
        let e = corpus::octahedron_reflections(&[0, 1]);
        let b = borel_check(&e, oct::PZ).unwrap();
        assert_eq!((b.n, b.r), (2, 0));
        let mut dims: Vec<usize> = b.terms.iter().map(|t| t.n_h).collect();
        dims.sort_unstable();
        assert_eq!(dims, [0, 1, 1]);
        assert!(b.holds);

        let z3 = borel_check(&corpus::bipyramid_rotation(6, 2), 6).unwrap();
        assert_eq!(z3.terms.len(), 1);
        assert_eq!((z3.lhs, z3.rhs), (2, 2));

        let x = corpus::octahedron_reflections(&[0]);
        let one = borel_check(&x, oct::PY).unwrap();
        assert_eq!((one.r, one.lhs, one.rhs), (1, 1, 1));

        assert!(matches!(
            borel_check(&e, oct::PX),
            Err(ComplexError::BasepointNotFixed { .. })
        ));
    }

    #[test]
    fn rank_check_examples() {
        let refl = effective_rank_bound_check(&corpus::octahedron_reflections(&[0, 1])).unwrap();
        assert_eq!(refl.mode, ActionMode::General);
        let ineq = refl.inequality.as_ref().unwrap();
        assert_eq!((ineq.check, ineq.lhs, ineq.rhs), (MANN_SU, 2, 2));

        let rot = effective_rank_bound_check(&corpus::octahedron_rotations_pi(&[2])).unwrap();
        assert_eq!(rot.mode, ActionMode::OrientationPreserving);
        let ineq = rot.inequality.as_ref().unwrap();
        assert_eq!((ineq.check, ineq.lhs, ineq.rhs), (ORIENTED_BOUND, 1, 1));

        let z3 = effective_rank_bound_check(&corpus::bipyramid_rotation(3, 1)).unwrap();
        let ineq = z3.inequality.as_ref().unwrap();
        assert_eq!((ineq.lhs, ineq.rhs), (2, 2));

        // Klein four-group of half-turns: no common fixed point, rank 2 attains
        // the oriented divisibility bound.
        let klein = effective_rank_bound_check(&corpus::octahedron_rotations_pi(&[0, 1])).unwrap();
        assert_eq!(klein.k, 2);
        assert!(klein.inequality.is_none());
        assert_eq!(klein.divisibility.bound, Bound::Finite(2));
        assert!(klein.holds);
    }
}
