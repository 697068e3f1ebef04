use super::*;
use crate::fixtures::*;

fn ft_budget() -> SearchBudget {
    SearchBudget::new(128, 11)
}

#[test]
fn epsilon_examples() {
    let nu = q2_two_step();
    let r = epsilon(&nu, &qpoly(&[2, 0, 1])).unwrap();
    assert_eq!((r.epsilon.clone(), r.i_set.clone()), (r1(3, 4), vec![2]));
    assert_eq!(r.table[0].derivative_value, r1(3, 2));
    assert_eq!(r.table[0].quotient, Some(r1(0, 1)));
    let r = epsilon(&nu, &qpoly(&[0, 1])).unwrap();
    assert_eq!((r.epsilon, r.i_set), (r1(1, 2), vec![1]));
    let r = epsilon(&nu, &qpoly(&[2, 2, 1])).unwrap();
    assert_eq!((r.epsilon, r.i_set), (r1(3, 4), vec![2]));
    assert!(epsilon(&nu, &qpoly(&[5])).is_err());
}

#[test]
fn epsilon_on_the_support() {
    let v = crate::algebra::PAdic::new(2).unwrap();
    let s = ValuationHandle::make_degree_one(v, 1, 0, qpoly(&[-1, 1]), ExtValue::Infinity).unwrap();
    let r = epsilon(&s, &qpoly(&[-1, 1])).unwrap();
    assert_eq!((r.epsilon, r.i_set), (ExtValue::Infinity, vec![1]));
}

#[test]
fn residue_examples() {
    let mu = q2_root();
    let one = FfElem::P(1);
    assert_eq!(residue_of_unit(&mu, &qpoly(&[2]), &qpoly(&[2])).unwrap(), one);
    assert_eq!(residue_of_unit(&mu, &qpoly(&[6]), &qpoly(&[2])).unwrap(), one);
    assert_eq!(residue_of_unit(&mu, &qpoly(&[0, 2]), &qpoly(&[0, 2])).unwrap(), one);
    assert_eq!(residue_of_unit(&mu, &qpoly(&[4]), &qpoly(&[2])), Err(Error::NotDegreeZero));
}

#[test]
fn mlv_key_wrapper() {
    let mu = q2_root();
    assert_eq!(
        is_mlv_key(&mu, &qpoly(&[2, 0, 1])).unwrap(),
        (true, Some(MlvCase::ResidualIrreducible { residual_degree: 1 }))
    );
    assert_eq!(is_mlv_key(&mu, &qpoly(&[0, 1])).unwrap(), (true, Some(MlvCase::Equivalent)));
    assert_eq!(is_mlv_key(&mu, &qpoly(&[0, 0, 1])).unwrap(), (false, None));
}

#[test]
fn abstract_key_examples() {
    let nu = q2_two_step();
    let b = SearchBudget::default();
    let c = is_abstract_key(&nu, &qpoly(&[0, 1]), &b).unwrap();
    assert_eq!(c.verdict, Verdict::Yes);
    assert_eq!(c.route, Route::Structural(KeyReason::MinimalBelow { level: 0 }));
    assert!(!c.maximal);

    let c = is_abstract_key(&nu, &qpoly(&[2, 2, 1]), &b).unwrap();
    assert_eq!(c.route, Route::Structural(KeyReason::InPhiClass { level: 0 }));
    assert!(c.maximal);

    let c = is_abstract_key(&nu, &qpoly(&[0, 0, 0, 1]), &b).unwrap();
    assert_ne!(c.verdict, Verdict::Yes);

    let c = is_abstract_key(&nu, &qpoly(&[0, 2, 0, 1]), &b).unwrap();
    assert_eq!(c.verdict, Verdict::No);
    match c.route {
        Route::Falsified { witness, witness_epsilon } => {
            assert_eq!(witness, qpoly(&[2, 0, 1]));
            assert_eq!(witness_epsilon, c.epsilon);
        }
        other => panic!("expected a falsification, got {other:?}"),
    }

    // a key of nu of degree 4 is not minimal for nu
    let chi = qpoly(&[12, 4, 4, 2, 1]);
    let c = is_abstract_key(&nu, &chi, &b).unwrap();
    assert_eq!(c.route, Route::Structural(KeyReason::NonMinimalForWhole));
    assert!(matches!(falsify(&nu, &chi, &b).unwrap(), Falsifier::Found { .. }));
    assert!(is_abstract_key(&nu, &qpoly(&[1, 2]), &b).is_err());
}

#[test]
fn degree_one_fallback() {
    // x - 1 is a unit under [v_2; x, 1/2], yet every monic linear polynomial is a key
    let nu = q2_two_step();
    let c = is_abstract_key(&nu, &qpoly(&[-1, 1]), &SearchBudget::default()).unwrap();
    assert_eq!(c.route, Route::Structural(KeyReason::DegreeOne));
}

#[test]
fn falsifier_is_strategy_independent() {
    let nu = ft_three_level(2);
    let k = nu.field().clone();
    let q = ftpoly(&k, &[&[1], &[0, 1], &[1], &[1]]);
    let seq = falsify(&nu, &q, &ft_budget().with_exec(Exec::Sequential)).unwrap();
    let par = falsify(&nu, &q, &ft_budget().with_exec(Exec::Parallel)).unwrap();
    assert_eq!(seq, par);
    let cands = falsifier_candidates(&nu, &q, &ft_budget());
    assert!(cands.len() <= 128 && cands.iter().all(|f| f.deg0() >= 1 && f.deg0() < 3));
}
