use wedge_crystal::crystal::{v_kl, CrystalOps};
use wedge_crystal::fock::{
    highest_vectors, kashiwara_from_module, lattice_and_crystal_match, representation, verify_highest,
    verify_polarization, verify_relations,
};
use wedge_crystal::{cartan_data, AffineType, KacLabel, LaurentScalar, RationalScalar};

fn ty(l: KacLabel, n: usize) -> AffineType {
    AffineType::new(l, n).unwrap()
}

fn unit(dim: usize, b: usize) -> Vec<LaurentScalar> {
    (0..dim).map(|x| if x == b { LaurentScalar::one() } else { LaurentScalar::zero() }).collect()
}

#[test]
fn d_end_raises_two_rows() {
    // B_3^(1) has a (1,1) end at node 0: rows 1 and 2 are bits 2 and 1.
    let rep = representation(&ty(KacLabel::B1, 3));
    let out = rep.e(0).apply(&unit(8, 0b001));
    let support: Vec<usize> = (0..8).filter(|&b| !out[b].is_zero()).collect();
    assert_eq!(support, vec![0b111]);
    let c = out[0b111].as_monomial().unwrap();
    assert_eq!(c.1, 0);
}

#[test]
fn vacuum_is_classically_highest() {
    for l in [KacLabel::C1, KacLabel::A2Even, KacLabel::A2EvenDagger, KacLabel::A2Odd] {
        let rep = representation(&ty(l, 2));
        for i in 1..=2 {
            assert!(rep.e(i).column(0).is_empty(), "{l:?} e_{i}");
        }
    }
}

#[test]
fn c2_highest_vectors_of_fundamental_weight() {
    let t = ty(KacLabel::C1, 2);
    let rep = representation(&t);
    let w = cartan_data(&t).level_zero_fundamental(1);
    let hv = highest_vectors(&rep, &w).unwrap();
    let ops = CrystalOps::new(t);
    let crystal: Vec<u64> =
        (0..16).filter(|&x| ops.is_classical_highest(x) && ops.weight(x).0 == w).collect();
    assert_eq!(hv.len(), crystal.len());
    let mut reps: Vec<u64> = (0..=1).map(|l| v_kl(2, 1, l).unwrap().id()).collect();
    reps.sort_unstable();
    assert_eq!(crystal, reps);
    // Each kernel vector reduces to a combination of the two v_{1,l}.
    for v in &hv {
        let scale = v.iter().filter(|x| !x.is_zero()).filter_map(RationalScalar::valuation).min().unwrap();
        for (b, x) in v.iter().enumerate() {
            if !reps.contains(&(b as u64)) && !x.is_zero() {
                assert!(x.valuation().unwrap() >= scale);
            }
        }
    }
}

#[test]
fn all_types_pass_at_rank_two() {
    for l in KacLabel::ALL {
        let rep = representation(&ty(l, 2));
        for r in [verify_relations(&rep), verify_polarization(&rep), lattice_and_crystal_match(&rep), verify_highest(&rep)] {
            assert!(r.passed, "{l:?} {}: {:?}", r.check, r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn f_tilde_columns_have_one_entry_at_zero() {
    let rep = representation(&ty(KacLabel::A2Odd, 2));
    for i in 0..=2 {
        let p = kashiwara_from_module(&rep, i).unwrap();
        for b in 0..rep.dim {
            let units = p.f.column(b).values().filter(|x| x.eval_at_zero().is_ok_and(|v| !num_traits::Zero::is_zero(&v))).count();
            assert!(units <= 1);
        }
    }
}
