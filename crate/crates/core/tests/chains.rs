use keyforge::fixtures::{q_sqrt_chain, r1};
use keyforge::limitchain::{check_limit_theorems, stable_value, CheckStatus, Stability};
use proptest::prelude::*;

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Square roots of `D = 1 mod 8` in `Q_2`: every identity applies and passes.
    #[test]
    fn two_adic_square_roots(k in 1i64..400) {
        let d = 1 + 8 * k;
        prop_assume!(!is_square(d));
        let chain = q_sqrt_chain(2, d, 1);
        let phi = chain.declared_witness().unwrap().clone();
        let report = check_limit_theorems(&chain, &phi, 5).unwrap();
        for line in &report.lines {
            prop_assert!(!matches!(line.status, CheckStatus::Fail(_)), "D = {}: {}", d, line);
        }
        let inv = &report.invariants;
        prop_assert_eq!((inv.t_inf, inv.b_inf), (1, 1));
        prop_assert_eq!(&inv.alpha_inf, &r1(1, 1));
        let unstable = matches!(stable_value(&chain, &phi, 5).unwrap(), Stability::NotStabilizedWithin { .. });
        prop_assert!(unstable);
    }
}
