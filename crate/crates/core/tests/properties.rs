use proptest::prelude::*;

use pp8_core::equiv::satisfies_requirements;
use pp8_core::{hc_octic, normalize, FieldCtx, FieldElement, LinearWitness, Octic};

fn ctx(r: u32) -> FieldCtx {
    FieldCtx::new(r).unwrap()
}

fn el(ctx: &FieldCtx, bits: u32) -> FieldElement {
    ctx.element(bits % ctx.q()).unwrap()
}

fn nonzero(ctx: &FieldCtx, bits: u32) -> FieldElement {
    ctx.element(1 + bits % (ctx.q() - 1)).unwrap()
}

fn octic(ctx: &FieldCtx, raw: &[u32; 9]) -> Octic {
    let mut coeffs = raw.map(|b| el(ctx, b));
    coeffs[8] = nonzero(ctx, raw[8]);
    Octic::new(ctx, coeffs).unwrap()
}

fn witness(ctx: &FieldCtx, raw: [u32; 4]) -> LinearWitness {
    LinearWitness::new(
        nonzero(ctx, raw[0]),
        nonzero(ctx, raw[1]),
        el(ctx, raw[2]),
        el(ctx, raw[3]),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn field_axioms(r in 2u32..=9, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = ctx(r);
        let (a, b, c) = (el(&k, a), el(&k, b), el(&k, c));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.add(a, a), FieldElement::ZERO);
        prop_assert_eq!(k.pow(a, k.q() as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElement::ONE);
            prop_assert_eq!(k.exp(k.dlog(a).unwrap() as u64), a);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(r in 2u32..=9, j in 0u32..9, a in any::<u32>(), b in any::<u32>()) {
        let k = ctx(r);
        let (a, b) = (el(&k, a), el(&k, b));
        prop_assert_eq!(k.frob(k.mul(a, b), j), k.mul(k.frob(a, j), k.frob(b, j)));
        prop_assert_eq!(k.frob(k.add(a, b), j), k.add(k.frob(a, j), k.frob(b, j)));
        prop_assert_eq!(k.frob(a, r), a);
    }

    #[test]
    fn log_index_round_trip(r in 2u32..=9, a in any::<u32>()) {
        let k = ctx(r);
        let a = el(&k, a);
        prop_assert_eq!(k.from_log_index(k.log_index(a)).unwrap(), a);
        prop_assert_eq!(k.parse_element(&k.format_element(a)).unwrap(), a);
    }

    #[test]
    fn witness_composition(r in 3u32..=6, f in any::<[u32; 9]>(), w1 in any::<[u32; 4]>(), w2 in any::<[u32; 4]>()) {
        let k = ctx(r);
        let f = octic(&k, &f);
        let (w1, w2) = (witness(&k, w1), witness(&k, w2));
        let stepwise = f.linear_sub(&w1).unwrap().linear_sub(&w2).unwrap();
        prop_assert_eq!(f.linear_sub(&w1.then(&k, &w2)).unwrap(), stepwise);
    }

    #[test]
    fn substitution_preserves_value_counts(r in 3u32..=6, f in any::<[u32; 9]>(), w in any::<[u32; 4]>()) {
        let k = ctx(r);
        let f = octic(&k, &f);
        let g = f.linear_sub(&LinearWitness { v: FieldElement::ZERO, ..witness(&k, w) }).unwrap();
        let mut a: Vec<u32> = f.value_multiset().into_values().collect();
        let mut b: Vec<u32> = g.value_multiset().into_values().collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hc_of_doubled_exponent_is_square(r in 3u32..=6, t in any::<[u32; 7]>(), k in 1u64..200) {
        let c = ctx(r);
        let f = Octic::normalized(&c, t.map(|b| el(&c, b))).unwrap();
        let k = 1 + k % (c.q() as u64 / 2 - 1).max(1);
        prop_assert_eq!(hc_octic(&f, 2 * k).unwrap(), c.square(hc_octic(&f, k).unwrap()));
    }

    #[test]
    fn normalize_returns_a_valid_witness(r in 4u32..=6, f in any::<[u32; 9]>()) {
        let k = ctx(r);
        let f = octic(&k, &f);
        let nf = normalize(&f).unwrap();
        prop_assert_eq!(f.linear_sub(&nf.witness).unwrap(), nf.octic.clone());
        prop_assert!(nf.octic.is_normalized());
        prop_assert!(satisfies_requirements(&nf.octic));
        // Idempotent up to the identity witness.
        let again = normalize(&nf.octic).unwrap();
        prop_assert_eq!(again.octic, nf.octic);
    }
}
