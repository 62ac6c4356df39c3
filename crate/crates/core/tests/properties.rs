use std::sync::{Arc, OnceLock};

use heisp::chartab::{build_table, CharacterTable};
use heisp::classes::Family;
use heisp::ffield::FieldCtx;
use num_rational::BigRational;
use proptest::prelude::*;

const QS: [u64; 4] = [3, 5, 7, 9];

fn tables() -> &'static [CharacterTable] {
    static T: OnceLock<Vec<CharacterTable>> = OnceLock::new();
    T.get_or_init(|| QS.iter().map(|&q| build_table(Arc::new(FieldCtx::from_order(q).unwrap())).unwrap()).collect())
}

fn entry() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..QS.len()).prop_flat_map(|i| {
        let n = tables()[i].len();
        (Just(i), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn bounded_by_degree((t, r, c) in entry()) {
        let t = &tables()[t];
        let v = t.value(r, c).to_complex().norm();
        prop_assert!(v <= t.degree(r) as f64 + 1e-9);
    }

    #[test]
    fn center_acts_by_roots_of_unity((t, r, _c) in entry(), z in 0u32..9) {
        let t = &tables()[t];
        let f = t.field();
        let z = f.element(z % f.q()).unwrap();
        let a = t.class_index(Family::A, Some(z), None, None).unwrap();
        let deg = BigRational::from_integer(t.degree(r).into());
        let unit = t.value(r, a).div_rational(&deg).unwrap();
        // a p-th root of unity
        let mut pow = t.conv().cyclo().one();
        for _ in 0..f.p() {
            pow = &pow * &unit;
        }
        prop_assert_eq!(pow, t.conv().cyclo().one());
    }

    #[test]
    fn value_at_matches_stored((t, r, c) in entry()) {
        let t = &tables()[t];
        prop_assert_eq!(&t.value_at(r, c), t.value(r, c));
    }

    #[test]
    fn values_are_algebraic_integers((t, r, c) in entry()) {
        // The power basis of Q(zeta_N) spans Z[zeta_N]; entries are integral.
        let t = &tables()[t];
        prop_assert_eq!(t.value(r, c).denominator(), &num_bigint::BigInt::from(1));
    }
}
