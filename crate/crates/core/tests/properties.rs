use proptest::prelude::*;
use wedge_crystal::bicrystal::{big_e, big_f, sigma, sigma_closed, varsigma};
use wedge_crystal::crystal::CrystalOps;
use wedge_crystal::fock::SparseOperator;
use wedge_crystal::{cartan_data, AffineType, BinaryMatrix, CrystalElement, KacLabel, LaurentScalar};

fn any_type() -> impl Strategy<Value = AffineType> {
    (0..KacLabel::ALL.len(), 2usize..=7).prop_map(|(i, n)| AffineType::new(KacLabel::ALL[i], n).unwrap())
}

fn type_and_element() -> impl Strategy<Value = (AffineType, u64)> {
    any_type().prop_flat_map(|t| {
        let size = CrystalOps::new(t).ground_size();
        (Just(t), 0..size)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn operators_are_partial_inverses((t, id) in type_and_element()) {
        let ops = CrystalOps::new(t);
        for i in 0..=t.n {
            if let Some(y) = ops.f(i, id) {
                prop_assert_eq!(ops.e(i, y), Some(id));
            }
            if let Some(y) = ops.e(i, id) {
                prop_assert_eq!(ops.f(i, y), Some(id));
            }
        }
    }

    #[test]
    fn weights_shift_by_simple_roots((t, id) in type_and_element()) {
        let ops = CrystalOps::new(t);
        let cd = cartan_data(&t);
        let w = ops.weight(id).0;
        prop_assert_eq!(cd.level(&w), 0);
        for i in 0..=t.n {
            if let Some(y) = ops.e(i, id) {
                let shifted: Vec<i64> = w.iter().zip(cd.root_column(i)).map(|(a, b)| a + b).collect();
                prop_assert_eq!(ops.weight(y).0, shifted);
            }
        }
    }

    #[test]
    fn reflection_is_an_involution((t, id) in type_and_element(), i in 0usize..8) {
        let i = i % (t.n + 1);
        let ops = CrystalOps::new(t);
        let y = ops.reflect(i, id).unwrap();
        prop_assert_eq!(ops.reflect(i, y).unwrap(), id);
        let w = ops.weight(id).0;
        let wy = ops.weight(y).0;
        prop_assert_eq!(wy[i], -w[i]);
    }

    #[test]
    fn text_round_trips((t, id) in type_and_element()) {
        let x = CrystalOps::new(t).element(id);
        prop_assert_eq!(CrystalElement::parse(&x.text()).unwrap(), x);
    }

    #[test]
    fn sigma_closed_form(n in 2usize..=12, seed in any::<u64>()) {
        let id = seed & ((1u64 << (2 * n)) - 1);
        let m = BinaryMatrix::from_id(n, id);
        prop_assert_eq!(sigma(&m), sigma_closed(&m));
        if let Some(y) = big_f(&m) {
            prop_assert_eq!(big_e(&y), Some(m));
            let (s, sy) = (sigma(&m), sigma(&y));
            prop_assert_eq!((sy.eps, sy.phi), (s.eps + 1, s.phi - 1));
        }
    }

    #[test]
    fn varsigma_is_an_involution(n in 3usize..=8, k in 1usize..8, seed in any::<u64>()) {
        prop_assume!(k < n);
        let t = AffineType::new(KacLabel::A2Odd, n).unwrap();
        let m = BinaryMatrix::from_id(n, seed & ((1u64 << (2 * n)) - 1));
        if let Ok(y) = varsigma(&t, k, &m) {
            prop_assert_ne!(y, m);
            prop_assert_eq!(varsigma(&t, k, &y).unwrap(), m);
        }
    }

    #[test]
    fn kron_mixed_product(a in prop::collection::vec(-2i64..3, 4), b in prop::collection::vec(-2i64..3, 4),
                          c in prop::collection::vec(-2i64..3, 4), d in prop::collection::vec(-2i64..3, 4)) {
        let op = |v: &[i64]| {
            let mut m = SparseOperator::<LaurentScalar>::zero(2);
            for (k, x) in v.iter().enumerate() {
                m.add_entry(k / 2, k % 2, LaurentScalar::q_pow(*x).scale(&num_rational::BigRational::from_integer((x + 3).into())));
            }
            m
        };
        let (a, b, c, d) = (op(&a), op(&b), op(&c), op(&d));
        let lhs = SparseOperator::kron(&a, &b).compose(&SparseOperator::kron(&c, &d));
        let rhs = SparseOperator::kron(&a.compose(&c), &b.compose(&d));
        prop_assert_eq!(lhs, rhs);
    }
}
