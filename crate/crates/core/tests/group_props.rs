use autfn_core::ablin::{abelianize, closure_mod, is_special, IntegerMatrix};
use autfn_core::aut::{
    closure, inversion_generators, rotation_generators, signed_permutation_generators,
    Automorphism, NamedGenerator, DEFAULT_CAP,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn named_generators(rank: usize) -> Vec<Automorphism> {
    let mut out = Vec::new();
    for i in 1..=rank {
        out.push(NamedGenerator::Inversion(i));
        if 2 * i <= rank {
            out.push(NamedGenerator::Rotation(i));
        }
        for j in 1..=rank {
            if i != j {
                out.push(NamedGenerator::Transposition(i, j));
                out.push(NamedGenerator::Nielsen(i, j));
            }
        }
    }
    out.into_iter()
        .map(|g| Automorphism::named(g, rank).unwrap())
        .collect()
}

fn product(gens: &[Automorphism], picks: &[usize]) -> Automorphism {
    let rank = gens[0].rank();
    picks.iter().fold(Automorphism::identity(rank), |acc, &i| {
        acc.compose(&gens[i % gens.len()]).unwrap()
    })
}

#[test]
fn abelianization_is_functorial_on_200_products() {
    let mut runner = TestRunner::new(Config {
        cases: 200,
        ..Config::default()
    });
    let strategy = (2usize..=5).prop_flat_map(|r| {
        (
            Just(r),
            prop::collection::vec(any::<usize>(), 1..=8),
            prop::collection::vec(any::<usize>(), 1..=8),
        )
    });
    runner
        .run(&strategy, |(rank, a, b)| {
            let gens = named_generators(rank);
            let f = product(&gens, &a);
            let g = product(&gens, &b);
            let lhs = abelianize(&f.compose(&g).unwrap());
            let rhs = abelianize(&f).mul(&abelianize(&g)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let det = abelianize(&f).det().unwrap();
            prop_assert!(det == 1 || det == -1);
            prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
            Ok(())
        })
        .unwrap();
}

#[test]
fn order_is_a_conjugacy_invariant_on_signed_permutations() {
    for n in 2..=4 {
        let w = closure(&signed_permutation_generators(n), DEFAULT_CAP).unwrap();
        let elements = w.elements();
        // All pairs for n <= 3, a stride through the pairs for n = 4.
        let stride = if n == 4 { 7 } else { 1 };
        for (k, f) in elements.iter().enumerate() {
            for g in elements.iter().skip(k % stride).step_by(stride) {
                let fg = f.compose(g).unwrap().order(DEFAULT_CAP).unwrap();
                let gf = g.compose(f).unwrap().order(DEFAULT_CAP).unwrap();
                assert_eq!(fg, gf);
            }
        }
    }
}

#[test]
fn enumerated_tables_are_groups() {
    for n in 2..=4 {
        for gens in [
            inversion_generators(n),
            signed_permutation_generators(n),
            rotation_generators(n),
        ] {
            let t = closure(&gens, DEFAULT_CAP).unwrap();
            assert!(t.satisfies_group_axioms().unwrap());
        }
    }
}

#[test]
fn rotation_subgroup_is_special_and_cubes_to_identity_mod_q() {
    for n in 2..=6 {
        let t = closure(&rotation_generators(n), DEFAULT_CAP).unwrap();
        for f in t.elements() {
            assert!(is_special(f).unwrap());
            for q in [2, 3, 5] {
                let m = abelianize(f).reduce_mod(q).unwrap();
                assert!(m.mul(&m).unwrap().mul(&m).unwrap().is_identity());
            }
        }
    }
}

#[test]
fn special_inversions_are_half() {
    for n in 2..=6 {
        let t = closure(&inversion_generators(n), DEFAULT_CAP).unwrap();
        let special = t.filter(|f| is_special(f).unwrap());
        assert_eq!(2 * special.order(), t.order());
    }
}

#[test]
fn elementary_matrices_mod_two() {
    for n in 3..=5 {
        let gens: Vec<_> = (2..=n)
            .map(|i| IntegerMatrix::elementary(n, 1, i, 1).reduce_mod(2).unwrap())
            .collect();
        let t = closure_mod(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(t.order(), 1 << (n - 1));
        assert!(t.elementary_abelian_2);
    }
}
