use wedge_crystal::crystal::{v_kl, CrystalOps};
use wedge_crystal::theorems::{
    components_bfs, components_union_find, decompose, h_diamond, run_suite, verify_cor57, verify_deltaword,
    verify_lem44_prop46, verify_thm58,
};
use wedge_crystal::{AffineType, Error, KacLabel};

const MATRIX_TYPES: [KacLabel; 4] = [KacLabel::C1, KacLabel::A2Even, KacLabel::A2EvenDagger, KacLabel::A2Odd];
const SPIN_TYPES: [KacLabel; 3] = [KacLabel::B1, KacLabel::D1, KacLabel::D2];

fn ty(l: KacLabel, n: usize) -> AffineType {
    AffineType::new(l, n).unwrap()
}

#[test]
fn c2_index_set_and_partition() {
    let t = ty(KacLabel::C1, 2);
    assert_eq!(h_diamond(&t).unwrap(), vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]);
    let ops = CrystalOps::new(t);
    let comps = components_union_find(&ops);
    assert_eq!(comps.len(), 6);
    assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), 16);
    assert_eq!(comps, components_bfs(&ops));
}

#[test]
fn decomposition_sizes_add_up() {
    for l in MATRIX_TYPES.iter().chain(&SPIN_TYPES) {
        for n in 2..=5 {
            let t = ty(*l, n);
            let d = decompose(&t).unwrap();
            assert!(d.unmatched.is_empty(), "{l:?} n={n}");
            let total: usize = d.components.iter().map(|c| c.size).sum();
            assert_eq!(total as u64, d.ground_size);
            let branched: usize = d.components.iter().flat_map(|c| &c.branching).map(|b| b.size).sum();
            assert_eq!(branched, total, "{l:?} n={n}: classical pieces must tile the components");
            for c in &d.components {
                let s: usize = c.sigma.iter().map(|(_, m)| m).sum();
                assert_eq!(s, if t.is_matrix() { c.size } else { 0 });
            }
        }
    }
}

#[test]
fn every_suite_passes_up_to_five() {
    for l in MATRIX_TYPES.iter().chain(&SPIN_TYPES) {
        for n in 2..=5 {
            let r = run_suite("all", &ty(*l, n), None).unwrap();
            assert!(r.passed, "{l:?} n={n}: {:?}", r.discrepancies);
            assert!(r.checks > 0);
        }
    }
}

#[test]
fn sigma_set_examples() {
    // C_3^(1), k = 2 and A_6^(2), k = 2.
    assert!(verify_thm58(&ty(KacLabel::C1, 3), 2).unwrap().passed);
    assert!(verify_thm58(&ty(KacLabel::A2Even, 3), 2).unwrap().passed);
    assert!(verify_thm58(&ty(KacLabel::A2Odd, 3), 3).unwrap().passed);
}

#[test]
fn a2odd_specifics() {
    let t = ty(KacLabel::A2Odd, 3);
    let r = verify_lem44_prop46(&t, 1).unwrap();
    assert!(r.passed, "{:?}", r.discrepancies);
    assert!(verify_cor57(&t).unwrap().passed);
    for k in 1..3 {
        assert!(verify_deltaword(&t, k).unwrap().passed);
    }
    let d = decompose(&t).unwrap();
    let singles: Vec<&str> = d.components.iter().filter(|c| c.size == 1).map(|c| c.representative.as_str()).collect();
    assert_eq!(singles, vec!["v_{0,3}", "v_{0,2}"]);
    let ops = CrystalOps::new(t);
    for k in 1..3 {
        let a = ops.component_ids(v_kl(3, k, 3 - k).unwrap().id());
        assert!(a.contains(&v_kl(3, k, 2 - k).unwrap().id()));
    }
}

#[test]
fn usage_errors() {
    assert!(matches!(run_suite("prop41", &ty(KacLabel::B1, 3), None), Err(Error::WrongType(_))));
    assert!(matches!(run_suite("spin", &ty(KacLabel::C1, 3), None), Err(Error::WrongType(_))));
    assert!(matches!(run_suite("nope", &ty(KacLabel::C1, 3), None), Err(Error::InvalidParameters(_))));
    assert!(matches!(run_suite("prop46", &ty(KacLabel::A2Odd, 3), Some(3)), Err(Error::InvalidParameters(_))));
    assert!(matches!(run_suite("thm58", &ty(KacLabel::C1, 3), Some(0)), Err(Error::InvalidParameters(_))));
}
