//! Small triangulated spheres and tori with finite group actions.

use super::{EquivariantComplex, Permutation, SimplicialComplex};

/// Octahedron vertex labels: `±` unit vectors along the axes.
pub mod oct {
    use super::Permutation;

    pub const PX: usize = 0;
    pub const NX: usize = 1;
    pub const PY: usize = 2;
    pub const NY: usize = 3;
    pub const PZ: usize = 4;
    pub const NZ: usize = 5;

    /// Reflection negating coordinate `axis` (0, 1, 2 for x, y, z).
    pub fn reflection(axis: usize) -> Permutation {
        Permutation::from_swaps(6, &[(2 * axis, 2 * axis + 1)])
    }

    /// Half-turn about coordinate axis `axis`.
    pub fn half_turn(axis: usize) -> Permutation {
        let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
        reflection(others[0]).compose(&reflection(others[1]))
    }

    pub fn antipodal() -> Permutation {
        Permutation::from_swaps(6, &[(PX, NX), (PY, NY), (PZ, NZ)])
    }

    /// Quarter turn about z: `+x → +y → -x → -y`.
    pub fn quarter_turn() -> Permutation {
        Permutation::new(vec![PY, NY, NX, PX, PZ, NZ]).expect("permutation")
    }

    /// Half-turn about the axis through the midpoints of `{+x,+y}` and `{-x,-y}`.
    pub fn edge_half_turn() -> Permutation {
        Permutation::from_swaps(6, &[(PX, PY), (NX, NY), (PZ, NZ)])
    }
}

/// Boundary of the octahedron, oriented by the outward normal.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for x in [oct::PX, oct::NX] {
        for y in [oct::PY, oct::NY] {
            for z in [oct::PZ, oct::NZ] {
                let sign = [x, y, z].iter().filter(|&&v| v % 2 == 1).count();
                let s = if sign % 2 == 0 { 1 } else { -1 };
                facets.push((s, vec![x, y, z]));
            }
        }
    }
    SimplicialComplex::from_simplices(6, facets.iter().map(|(_, f)| f.clone()))
        .and_then(|k| k.with_orientation(&facets))
        .expect("octahedron")
}

fn octahedron_action(gens: Vec<Permutation>) -> EquivariantComplex {
    EquivariantComplex::new(octahedron(), gens).expect("octahedral symmetry")
}

/// Reflections in the given coordinate axes.
pub fn octahedron_reflections(axes: &[usize]) -> EquivariantComplex {
    octahedron_action(axes.iter().map(|&a| oct::reflection(a)).collect())
}

/// Half-turns about the given coordinate axes.
pub fn octahedron_rotations_pi(axes: &[usize]) -> EquivariantComplex {
    octahedron_action(axes.iter().map(|&a| oct::half_turn(a)).collect())
}

pub fn octahedron_antipodal() -> EquivariantComplex {
    octahedron_action(vec![oct::antipodal()])
}

/// Cyclic group of order 4 generated by a quarter turn about z.
pub fn octahedron_quarter_turn() -> EquivariantComplex {
    octahedron_action(vec![oct::quarter_turn()])
}

/// Dihedral group of order 8: quarter turn and the x-reflection.
pub fn octahedron_d4() -> EquivariantComplex {
    octahedron_action(vec![oct::quarter_turn(), oct::reflection(0)])
}

/// A half-turn swapping the ends of an edge; not regular.
pub fn octahedron_edge_rotation() -> EquivariantComplex {
    octahedron_action(vec![oct::edge_half_turn()])
}

/// Suspension of an `m`-gon: equator `0..m`, apexes `m` and `m + 1`.
pub fn bipyramid(m: usize) -> SimplicialComplex {
    assert!(m >= 3, "bipyramid needs m >= 3");
    let facets = (0..m).flat_map(|i| {
        let j = (i + 1) % m;
        [vec![i, j, m], vec![i, j, m + 1]]
    });
    SimplicialComplex::from_simplices(m + 2, facets).expect("bipyramid")
}

fn equator_shift(m: usize, step: usize) -> Permutation {
    let mut images: Vec<usize> = (0..m).map(|i| (i + step) % m).collect();
    images.extend([m, m + 1]);
    Permutation::new(images).expect("permutation")
}

/// Rotation of the bipyramid by `step` equator positions.
pub fn bipyramid_rotation(m: usize, step: usize) -> EquivariantComplex {
    let k = bipyramid(m).orient().expect("sphere");
    EquivariantComplex::new(k, vec![equator_shift(m, step)]).expect("rotation")
}

/// Rotation by `step` together with the reflection swapping the apexes.
pub fn bipyramid_rotation_and_flip(m: usize, step: usize) -> EquivariantComplex {
    let k = bipyramid(m).orient().expect("sphere");
    let flip = Permutation::from_swaps(m + 2, &[(m, m + 1)]);
    EquivariantComplex::new(k, vec![equator_shift(m, step), flip]).expect("rotation")
}

/// Boundary of an `m`-gon.
pub fn cycle(m: usize) -> SimplicialComplex {
    assert!(m >= 3, "cycle needs m >= 3");
    SimplicialComplex::from_simplices(m, (0..m).map(|i| vec![i, (i + 1) % m])).expect("cycle")
}

pub fn cycle_rotation(m: usize, step: usize) -> EquivariantComplex {
    let images = (0..m).map(|i| (i + step) % m).collect();
    EquivariantComplex::new(
        cycle(m),
        vec![Permutation::new(images).expect("permutation")],
    )
    .expect("rotation")
}

/// The `a × b` grid torus; vertex `(i, j)` is `i * b + j`. Needs `a, b ≥ 3`.
pub fn torus_grid(a: usize, b: usize) -> SimplicialComplex {
    assert!(a >= 3 && b >= 3, "torus grid needs a, b >= 3");
    let v = |i: usize, j: usize| (i % a) * b + (j % b);
    let facets = (0..a).flat_map(|i| {
        (0..b).flat_map(move |j| {
            [
                vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)],
                vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)],
            ]
        })
    });
    SimplicialComplex::from_simplices(a * b, facets).expect("torus")
}

fn torus_map<F>(a: usize, b: usize, f: F) -> Permutation
where
    F: Fn(i64, i64) -> (i64, i64),
{
    let (ai, bi) = (a as i64, b as i64);
    let images = (0..a * b)
        .map(|x| {
            let (i, j) = f((x / b) as i64, (x % b) as i64);
            (i.rem_euclid(ai) * bi + j.rem_euclid(bi)) as usize
        })
        .collect();
    Permutation::new(images).expect("permutation")
}

/// Translations of the grid torus by the given steps.
pub fn torus_translations(a: usize, b: usize, steps: &[(i64, i64)]) -> EquivariantComplex {
    let gens = steps
        .iter()
        .map(|&(di, dj)| torus_map(a, b, move |i, j| (i + di, j + dj)))
        .collect();
    EquivariantComplex::new(torus_grid(a, b), gens).expect("translation")
}

/// `(i, j) ↦ (-j, i - j)` on the `3 × 3` torus, of order 3, with optional
/// extra translations.
pub fn torus_order_three(steps: &[(i64, i64)]) -> EquivariantComplex {
    let mut gens = vec![torus_map(3, 3, |i, j| (-j, i - j))];
    gens.extend(
        steps
            .iter()
            .map(|&(di, dj)| torus_map(3, 3, move |i, j| (i + di, j + dj))),
    );
    EquivariantComplex::new(torus_grid(3, 3), gens).expect("order-three map")
}

/// `(i, j) ↦ (j, i)` on the square torus.
pub fn torus_swap(a: usize) -> EquivariantComplex {
    EquivariantComplex::new(torus_grid(a, a), vec![torus_map(a, a, |i, j| (j, i))]).expect("swap")
}

/// A named example action.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: &'static str,
    pub action: EquivariantComplex,
}

/// Prime-power order actions with `p ∈ {2, 3}` on spheres, circles and tori.
pub fn pgroup_cases() -> Vec<Case> {
    let case = |name, action| Case { name, action };
    vec![
        case("octahedron/refl-x", octahedron_reflections(&[0])),
        case("octahedron/refl-xy", octahedron_reflections(&[0, 1])),
        case("octahedron/refl-xyz", octahedron_reflections(&[0, 1, 2])),
        case(
            "octahedron/refl-xy/sd",
            octahedron_reflections(&[0, 1]).subdivide(),
        ),
        case("octahedron/antipodal", octahedron_antipodal()),
        case("octahedron/half-turn-z", octahedron_rotations_pi(&[2])),
        case("octahedron/half-turns-xy", octahedron_rotations_pi(&[0, 1])),
        case("octahedron/quarter-turn", octahedron_quarter_turn()),
        case("octahedron/d4", octahedron_d4()),
        case("octahedron/edge-half-turn", octahedron_edge_rotation()),
        case(
            "octahedron/edge-half-turn/sd",
            octahedron_edge_rotation().subdivide(),
        ),
        case("bipyramid-3/rotation", bipyramid_rotation(3, 1)),
        case("bipyramid-6/rotation-3", bipyramid_rotation(6, 2)),
        case(
            "bipyramid-6/rotation-3/sd",
            bipyramid_rotation(6, 2).subdivide(),
        ),
        case("bipyramid-4/rotation-4", bipyramid_rotation(4, 1)),
        case(
            "bipyramid-4/rotation-2-flip",
            bipyramid_rotation_and_flip(4, 2),
        ),
        case(
            "bipyramid-6/half-turn-flip",
            bipyramid_rotation_and_flip(6, 3),
        ),
        case("cycle-3/rotation", cycle_rotation(3, 1)),
        case("cycle-9/rotation-9", cycle_rotation(9, 1)),
        case("cycle-9/rotation-3", cycle_rotation(9, 3)),
        case("cycle-4/rotation-4", cycle_rotation(4, 1)),
        case("torus-3x3/translation", torus_translations(3, 3, &[(1, 0)])),
        case(
            "torus-3x3/translations",
            torus_translations(3, 3, &[(1, 0), (0, 1)]),
        ),
        case("torus-3x3/order-three", torus_order_three(&[])),
        case(
            "torus-3x3/order-three-translations",
            torus_order_three(&[(1, 0)]),
        ),
        case(
            "torus-4x4/translations-2",
            torus_translations(4, 4, &[(2, 0), (0, 2)]),
        ),
        case("torus-3x3/swap", torus_swap(3)),
        case("torus-4x4/swap", torus_swap(4)),
    ]
}

/// The subset of [`pgroup_cases`] whose group has prime order.
pub fn cyclic_prime_cases() -> Vec<Case> {
    pgroup_cases()
        .into_iter()
        .filter(|c| matches!(c.action.p_group_order(), Some((_, 1))))
        .collect()
}

/// The subset of [`pgroup_cases`] whose group is elementary abelian.
pub fn elementary_abelian_cases() -> Vec<Case> {
    pgroup_cases()
        .into_iter()
        .filter(|c| c.action.elementary_abelian().is_ok())
        .collect()
}
