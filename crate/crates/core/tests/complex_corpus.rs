use autfn_core::complex::corpus::{self, Case};
use autfn_core::complex::smith::{
    borel_check, effective_rank_bound_check, fixed_split_chi, fixed_vertices, open_chi,
    stabilizer_histogram, strata_chi,
};
use autfn_core::complex::ComplexError;

#[test]
fn open_simplex_count_matches_face_count_chi() {
    for Case { name, action } in corpus::pgroup_cases() {
        let k = action.complex();
        assert_eq!(open_chi(k, |_| true), k.euler_characteristic(), "{name}");
        let sd = k.barycentric_subdivision();
        assert_eq!(
            sd.euler_characteristic(),
            k.euler_characteristic(),
            "{name}"
        );
    }
}

#[test]
fn stratification_on_every_case() {
    for Case { name, action } in corpus::pgroup_cases() {
        let r = strata_chi(&action).unwrap();
        assert!(r.holds, "{name}: {r:?}");
        assert_eq!(r.strata_sum, r.chi, "{name}");
        assert_eq!(
            r.strata.iter().map(|s| s.simplices).sum::<usize>(),
            action
                .regularize()
                .0
                .complex()
                .f_vector()
                .iter()
                .sum::<usize>(),
            "{name}"
        );
        // Independent route: stabilizer orders on the regularized action.
        let hist = stabilizer_histogram(&action.regularize().0);
        for s in &r.strata {
            let order = (r.p as usize).pow(s.i);
            assert_eq!(hist.get(&order).copied().unwrap_or(0), s.chi_c, "{name}");
        }
    }
}

#[test]
fn strata_stable_under_subdivision() {
    for Case { name, action } in corpus::pgroup_cases() {
        let once = strata_chi(&action).unwrap();
        let twice = strata_chi(&action.subdivide()).unwrap();
        let c = |r: &autfn_core::complex::smith::StrataReport| {
            r.strata.iter().map(|s| s.chi_c).collect::<Vec<_>>()
        };
        assert_eq!(c(&once), c(&twice), "{name}");
    }
}

#[test]
fn fixed_split_on_prime_order_cases() {
    let cases = corpus::cyclic_prime_cases();
    assert!(cases.len() >= 8);
    for Case { name, action } in cases {
        let r = fixed_split_chi(&action).unwrap();
        assert!(r.holds, "{name}: {r:?}");
    }
    let trivial = corpus::octahedron_reflections(&[]);
    assert!(matches!(
        fixed_split_chi(&trivial),
        Err(ComplexError::NotCyclicPrime { order: 1 })
    ));
}

#[test]
fn borel_formula_at_all_fixed_vertices() {
    let mut checked = 0;
    for Case { name, action } in corpus::elementary_abelian_cases() {
        let reg = action.regularize().0;
        for v in fixed_vertices(&reg) {
            let b = borel_check(&reg, v).unwrap();
            assert!(b.holds, "{name} at {v}: {b:?}");
            checked += 1;
        }
    }
    assert!(checked >= 6, "only {checked} basepoints");
}

#[test]
fn rank_inequalities_on_effective_cases() {
    let mut with_fixed = 0;
    for Case { name, action } in corpus::elementary_abelian_cases() {
        let r = effective_rank_bound_check(&action).unwrap();
        assert!(r.holds, "{name}: {r:?}");
        with_fixed += usize::from(r.inequality.is_some());
    }
    assert!(with_fixed >= 5);
}
