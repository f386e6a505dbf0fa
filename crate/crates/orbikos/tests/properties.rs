//! Property-based invariants of the algebraic foundations.

use orbikos::clifford::{normalize, word_mul, CliffWord, Sym};
use orbikos::cyclotomic::CycNum;
use orbikos::poly::{Mono, Poly};
use proptest::prelude::*;

fn arb_sym() -> impl Strategy<Value = Sym> {
    (0u8..3, prop::bool::ANY).prop_map(|(i, theta)| if theta { Sym::Theta(i) } else { Sym::Del(i) })
}

fn arb_word() -> impl Strategy<Value = Vec<Sym>> {
    prop::collection::vec(arb_sym(), 0..=6)
}

/// Multiply two normalized expansions with the basis product table.
fn product_of_normal_forms(
    a: &[(CliffWord, i64)],
    b: &[(CliffWord, i64)],
) -> std::collections::BTreeMap<CliffWord, i64> {
    let mut acc = std::collections::BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            for &(w, s) in word_mul(*wa, *wb) {
                let e = acc.entry(w).or_insert(0i64);
                *e += ca * cb * s;
            }
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

proptest! {
    /// Normal ordering is an algebra homomorphism: normalizing a
    /// concatenation agrees with multiplying the normal forms.
    #[test]
    fn clifford_normalization_is_multiplicative(a in arb_word(), b in arb_word()) {
        let mut ab = a.clone();
        ab.extend(b.iter().cloned());
        let direct: std::collections::BTreeMap<CliffWord, i64> =
            normalize(&ab).into_iter().collect();
        let staged = product_of_normal_forms(&normalize(&a), &normalize(&b));
        prop_assert_eq!(direct, staged);
    }

    /// Field axioms hold exactly for random cyclotomic numbers.
    #[test]
    fn cyclotomic_ring_axioms(
        order in 1u32..=8,
        coeffs_a in prop::collection::vec(-4i64..=4, 4),
        coeffs_b in prop::collection::vec(-4i64..=4, 4),
    ) {
        let build = |cs: &[i64]| {
            let mut acc = CycNum::zero(order);
            for (k, c) in cs.iter().enumerate() {
                acc = acc.add(
                    &CycNum::from_int(*c).mul(&CycNum::root_of_unity(order, k as i64)),
                );
            }
            acc
        };
        let a = build(&coeffs_a);
        let b = build(&coeffs_b);
        prop_assert!(a.mul(&b).equals(&b.mul(&a)));
        prop_assert!(a.add(&b).equals(&b.add(&a)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.inv().unwrap().mul(&a).is_one());
        }
    }

    /// Polynomial multiplication distributes over addition and respects the
    /// tripled grading.
    #[test]
    fn poly_distributivity_and_grading(
        ea in prop::collection::vec(0u16..3, 3),
        eb in prop::collection::vec(0u16..3, 3),
        ec in prop::collection::vec(0u16..3, 3),
        ca in -3i64..=3,
        cb in -3i64..=3,
        cc in -3i64..=3,
    ) {
        let mono = |e: &[u16]| Mono::from_xyz(e[0], e[1], e[2]);
        let a = Poly::monomial(mono(&ea), CycNum::from_int(ca));
        let b = Poly::monomial(mono(&eb), CycNum::from_int(cb));
        let c = Poly::monomial(mono(&ec), CycNum::from_int(cc));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        let prod = a.mul(&b);
        if !prod.is_zero() {
            prop_assert_eq!(
                prod.homogeneous_degree(),
                Some(mono(&ea).tripled_degree() + mono(&eb).tripled_degree())
            );
        }
    }
}
