//! Cross-module properties: the character routes, the Fock model and the
//! mode algebra checked against each other.

use bvoa::branching::branching_product;
use bvoa::characters::{decompose_by_level, fermion_character, theorem2_character};
use bvoa::fock::{FockSpace, FockVector};
use bvoa::modealg::{mode_operator, GenKey, PBWState};
use bvoa::qseries::TruncSeries;
use bvoa::rational::int;
use bvoa::weylchar::CharacterTable;
use bvoa::Caps;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

#[test]
fn level_decomposition_is_branching() {
    for (n, t) in [(1, 12), (2, 8)] {
        let table = CharacterTable::new(n, &Caps::default()).unwrap();
        let chi = fermion_character(n, 1, t).unwrap();
        for (l, s) in decompose_by_level(&table, &chi).unwrap() {
            assert_eq!(s, branching_product(&l, n, t).unwrap(), "n={n} l={l}");
        }
    }
}

#[test]
fn fock_basis_counts() {
    for (n, d) in [(1, 1), (1, 2), (2, 1)] {
        let f = FockSpace::new(n, d).unwrap();
        let mut gen = TruncSeries::one(8);
        for j in 1..=8 {
            for _ in 0..2 * n * d {
                gen = &gen * &(&TruncSeries::one(8) + &TruncSeries::monomial(BigInt::one(), j, 8));
            }
        }
        for k in 0..=8 {
            let len = f.graded_basis(k, &Caps::default()).unwrap().len();
            assert_eq!(BigInt::from(len), gen.coeff(k), "n={n} d={d} k={k}");
        }
    }
}

#[test]
fn fock_invariants_follow_the_vacuum_character() {
    for d in 1..=2 {
        let f = FockSpace::new(1, d).unwrap();
        let s = theorem2_character(1, d, 5, &Caps::default()).unwrap();
        for k in 0..=5 {
            let dim = f.invariant_subspace(k, &Caps::default()).unwrap().dim;
            assert_eq!(BigInt::from(dim), s.coeff(k));
        }
    }
}

#[test]
fn vacuum_module_norms_match_fock() {
    // <L(1,1) L(-1,-1) 1> in both models at r = -2n
    for n in 1..=2usize {
        let r = int(-2 * n as i64);
        let key = GenKey::new(1, 1, -1, -1);
        let v = PBWState::monomial(&[key]).unwrap();
        let down = bvoa::modealg::apply_generator(&GenKey::new(1, 1, 1, 1), &v, &r);
        let f = FockSpace::new(n, 1).unwrap();
        let fv = f.apply_key(&key, &FockVector::vacuum());
        let fdown = f.mode_apply(1, 1, 1, 1, &fv);
        assert_eq!(down, PBWState::scalar(fdown.coeff(&Default::default())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn omega_zero_mode_counts_degree(m1 in 1i64..=3, n1 in 1i64..=3, m2 in 1i64..=3, n2 in 1i64..=3, a in 1usize..=2, b in 1usize..=2) {
        let r = int(-2);
        let v = PBWState::monomial(&[GenKey::new(a, b, -m1, -n1), GenKey::new(b, b, -m2, -n2)]).unwrap();
        let mut w = PBWState::zero();
        for c in 1..=2 {
            w.add_scaled(&mode_operator(c, c, 1, &v, &r), &One::one());
        }
        prop_assert_eq!(w, v.scale(&int(m1 + n1 + m2 + n2)));
    }
}
