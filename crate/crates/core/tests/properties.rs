//! Randomized invariants over the bundled fixtures.

use std::cmp::Ordering;

use keyforge::algebra::poly::binomial;
use keyforge::algebra::{is_power_of, Field, Poly, Rationals};
use keyforge::fixtures::{ft_field, ft_three_level, ftpoly, q2_root, q2_two_step, qpoly, FtPoly, QPoly};
use keyforge::keypoly::epsilon;
use keyforge::ordgroup::{lex_compare, principal_convex_index, rat, ExtValue};
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-8i64..=8, 1..=max_len)
}

fn nonzero_q(max_len: usize) -> impl Strategy<Value = QPoly> {
    coeffs(max_len).prop_map(|c| qpoly(&c)).prop_filter("nonzero", |f| !f.is_zero())
}

fn nonconstant_q(max_len: usize) -> impl Strategy<Value = QPoly> {
    nonzero_q(max_len).prop_filter("nonconstant", |f| f.deg0() > 0)
}

fn monic_q(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-8i64..=8, 1..=max_deg).prop_map(|mut c| {
        c.push(1);
        qpoly(&c)
    })
}

fn ft3(max_len: usize) -> impl Strategy<Value = FtPoly> {
    prop::collection::vec(prop::collection::vec(0i64..3, 0..=2), 1..=max_len).prop_map(|cs| {
        let k = ft_field(3);
        let refs: Vec<&[i64]> = cs.iter().map(Vec::as_slice).collect();
        ftpoly(&k, &refs)
    })
}

fn value(rank: usize) -> impl Strategy<Value = ExtValue> {
    prop::collection::vec((-4i64..=4, 1i64..=3), rank)
        .prop_map(|c| ExtValue::Finite(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn leibniz_holds<K: Field>(k: &K, f: &Poly<K::Elem>, g: &Poly<K::Elem>, b: usize) -> bool
where
    K::Elem: PartialEq,
{
    let lhs = f.mul(k, g).hasse(k, b);
    let rhs = (0..=b).fold(Poly::zero(), |acc, j| acc.add(k, &f.hasse(k, j).mul(k, &g.hasse(k, b - j))));
    lhs == rhs
}

fn composition_holds<K: Field>(k: &K, f: &Poly<K::Elem>, a: usize, b: usize) -> bool
where
    K::Elem: PartialEq,
{
    f.hasse(k, b).hasse(k, a) == f.hasse(k, a + b).scale(k, &binomial(k, a + b, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lex_order_is_total(a in value(3), b in value(3), c in value(3)) {
        let ab = lex_compare(&a, &b).unwrap();
        prop_assert_eq!(ab, a.cmp(&b));
        prop_assert_eq!(lex_compare(&b, &a).unwrap(), ab.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn principal_index_is_scale_invariant(g in value(3), n in 1i64..=9, d in 1i64..=9) {
        prop_assume!(!g.is_zero());
        let scaled = g.scale(&rat(n, d)).unwrap();
        prop_assert_eq!(principal_convex_index(&scaled).unwrap(), principal_convex_index(&g).unwrap());
    }

    #[test]
    fn expansion_reconstructs(f in coeffs(9).prop_map(|c| qpoly(&c)), q in monic_q(3)) {
        let digits = f.q_expansion(&Rationals, &q).unwrap();
        prop_assert_eq!(Poly::from_expansion(&Rationals, &digits, &q), f);
    }

    #[test]
    fn hasse_leibniz_over_q(f in nonzero_q(5), g in nonzero_q(5), b in 0usize..=8) {
        prop_assert!(leibniz_holds(&Rationals, &f, &g, b));
    }

    #[test]
    fn hasse_leibniz_over_f3t(f in ft3(5), g in ft3(5), b in 0usize..=8) {
        prop_assert!(leibniz_holds(&ft_field(3), &f, &g, b));
    }

    #[test]
    fn hasse_composition(f in nonzero_q(7), h in ft3(7), a in 0usize..=4, b in 0usize..=4) {
        prop_assert!(composition_holds(&Rationals, &f, a, b));
        prop_assert!(composition_holds(&ft_field(3), &h, a, b));
    }

    #[test]
    fn multiplicity_is_a_power_of_the_characteristic(f in nonconstant_q(6), h in ft3(7)) {
        prop_assert_eq!(f.multiplicity(&Rationals).unwrap(), 1);
        prop_assume!(h.deg0() > 0);
        prop_assert!(is_power_of(h.multiplicity(&ft_field(3)).unwrap() as u64, 3));
    }

    #[test]
    fn valuation_axioms_q(f in nonzero_q(7), g in nonzero_q(7)) {
        let nu = q2_two_step();
        let k = nu.field();
        prop_assert_eq!(nu.evaluate(&f.mul(k, &g)), nu.evaluate(&f).add(&nu.evaluate(&g)));
        prop_assert!(nu.evaluate(&f.add(k, &g)) >= nu.evaluate(&f).min(nu.evaluate(&g)));
    }

    #[test]
    fn valuation_axioms_f3t(f in ft3(6), g in ft3(6)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let nu = ft_three_level(3);
        let k = nu.field();
        prop_assert_eq!(nu.evaluate(&f.mul(k, &g)), nu.evaluate(&f).add(&nu.evaluate(&g)));
        prop_assert!(nu.evaluate(&f.add(k, &g)) >= nu.evaluate(&f).min(nu.evaluate(&g)));
    }

    #[test]
    fn prefixes_are_smaller(f in nonzero_q(7), h in ft3(6)) {
        let nu = q2_two_step();
        for j in 0..nu.depth() {
            let mu = nu.prefix(j);
            prop_assert!(mu.evaluate(&f) <= nu.evaluate(&f));
            if f.deg0() < nu.steps()[j + 1].phi.deg0() {
                prop_assert_eq!(mu.evaluate(&f), nu.evaluate(&f));
            }
        }
        prop_assume!(!h.is_zero());
        let nu = ft_three_level(3);
        for j in 0..nu.depth() {
            let mu = nu.prefix(j);
            prop_assert!(mu.evaluate(&h) <= nu.evaluate(&h));
            if h.deg0() < nu.steps()[j + 1].phi.deg0() {
                prop_assert_eq!(mu.evaluate(&h), nu.evaluate(&h));
            }
        }
    }

    #[test]
    fn last_key_truncates_to_itself(f in nonzero_q(8)) {
        let nu = q2_two_step();
        prop_assert_eq!(nu.truncate_eval(nu.phi_min(), &f).unwrap().value, nu.evaluate(&f));
    }

    #[test]
    fn epsilon_of_products(f in nonconstant_q(5), g in nonconstant_q(5)) {
        let nu = q2_two_step();
        let (ef, eg) = (epsilon(&nu, &f).unwrap(), epsilon(&nu, &g).unwrap());
        let efg = epsilon(&nu, &f.mul(nu.field(), &g)).unwrap();
        prop_assert_eq!(&efg.epsilon, &ef.epsilon.clone().max(eg.epsilon.clone()));
        if ef.epsilon < eg.epsilon && eg.epsilon.is_finite() {
            prop_assert_eq!(efg.i_set, eg.i_set);
        }
    }

    #[test]
    fn key_truncation_bounds(f in nonconstant_q(7)) {
        let nu = q2_two_step();
        let k = nu.field();
        for q in [qpoly(&[0, 1]), qpoly(&[2, 0, 1]), qpoly(&[2, 2, 1])] {
            let eq = epsilon(&nu, &q).unwrap().epsilon;
            let tf = nu.truncate_eval(&q, &f).unwrap().value;
            for b in 1..=f.deg0() {
                let lhs = nu.truncate_eval(&q, &f.hasse(k, b)).unwrap().value;
                prop_assert!(lhs >= tf.sub(&eq.mul_int(b as i64)));
            }
            if epsilon(&nu, &f).unwrap().epsilon < eq {
                let (quot, rem) = f.divrem(k, &q).unwrap();
                prop_assert_eq!(nu.evaluate(&f), nu.evaluate(&rem));
                if !quot.is_zero() {
                    prop_assert!(nu.evaluate(&rem) < nu.evaluate(&quot.mul(k, &q)));
                }
            }
        }
    }

    #[test]
    fn residual_polynomials_multiply(f in nonzero_q(6), g in nonzero_q(6)) {
        for nu in [q2_root(), q2_two_step()] {
            let kappa = nu.residue_field().unwrap();
            let k = nu.field();
            let rf = nu.residual_canonical(&f).unwrap();
            let rg = nu.residual_canonical(&g).unwrap();
            prop_assert_eq!(nu.residual_canonical(&f.mul(k, &g)).unwrap(), rf.mul(&kappa, &rg));
        }
    }
}
