use std::collections::BTreeMap;

use cyclobrauer::coeff::{normalize_loop_label, DeltaPoly, GaussRat};
use num::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = GaussRat> {
    (-60i64..=60, 1i64..=15, -60i64..=60, 1i64..=15)
        .prop_map(|(a, b, c, d)| GaussRat::from_frac(a, b) + GaussRat::from_frac(c, d) * GaussRat::i())
}

fn poly(m: u32) -> impl Strategy<Value = DeltaPoly> {
    let vars = (m / 2 + 1) as usize;
    prop::collection::vec((prop::collection::vec(0u32..3, vars), rat()), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(DeltaPoly::zero(m), |acc, (e, c)| &acc + &DeltaPoly::from_exponents(m, e, c))
    })
}

proptest! {
    #[test]
    fn field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, GaussRat::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussRat::one());
            prop_assert_eq!((&b / &a) * &a, b.clone());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn text_round_trip(a in rat()) {
        let (re, im) = a.to_strings();
        prop_assert_eq!(GaussRat::from_strings(&re, &im).unwrap(), a);
    }

    #[test]
    fn ring_axioms(a in poly(4), b in poly(4), c in poly(4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &DeltaPoly::one(4), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in poly(3), b in poly(3), x in rat(), y in rat()) {
        let at: BTreeMap<usize, GaussRat> = BTreeMap::from([(0, x), (1, y)]);
        let ev = |p: &DeltaPoly| p.specialize(&at).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&DeltaPoly::one(3)), GaussRat::one());
    }

    #[test]
    fn json_round_trip(a in poly(5)) {
        prop_assert_eq!(DeltaPoly::from_json(5, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn loop_labels_are_symmetric(m in 1u32..8, l in 0u32..8) {
        let l = l % m;
        prop_assert_eq!(normalize_loop_label(l, m), normalize_loop_label((m - l) % m, m));
        prop_assert!(normalize_loop_label(l, m) <= m / 2);
    }
}

#[test]
fn specialization_needs_every_variable() {
    let p = DeltaPoly::var(2, 1).unwrap();
    assert!(p.specialize(&BTreeMap::from([(0, GaussRat::one())])).is_err());
}

#[test]
fn mixing_moduli_is_an_error() {
    let a = DeltaPoly::var(2, 0).unwrap();
    let b = DeltaPoly::var(3, 0).unwrap();
    assert!(a.checked_add(&b).is_err());
    assert!(a.checked_mul(&b).is_err());
}
