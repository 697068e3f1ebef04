use super::*;
use crate::algebra::{FfElem, TAdic};
use crate::fixtures::*;

#[test]
fn degree_one_root_values() {
    let mu = q2_root();
    assert_eq!(mu.evaluate(&qpoly(&[2, 0, 1])), r1(1, 1));
    assert_eq!(mu.evaluate(&qpoly(&[17])), r1(0, 1));
    assert_eq!(mu.evaluate(&qpoly(&[0, 2])), r1(3, 2));

    let k = ft_field(3);
    let v = TAdic::new(k.clone());
    let m = ValuationHandle::make_degree_one(v, 1, 0, ftpoly(&k, &[&[], &[1]]), r1(1, 1)).unwrap();
    assert_eq!(m.evaluate(&ftpoly(&k, &[&[0, 1], &[1]])), r1(1, 1));

    let v2 = crate::algebra::PAdic::new(2).unwrap();
    let s = ValuationHandle::make_degree_one(v2, 1, 0, qpoly(&[0, 1]), ExtValue::Infinity).unwrap();
    assert_eq!(s.evaluate(&qpoly(&[0, 1, 1])), ExtValue::Infinity);
    assert_eq!(s.evaluate(&qpoly(&[1, 1])), r1(0, 1));

    assert!(ValuationHandle::make_degree_one(
        crate::algebra::PAdic::new(2).unwrap(),
        1,
        0,
        qpoly(&[0, 0, 1]),
        r1(1, 1)
    )
    .is_err());
}

#[test]
fn augmentation_values_and_errors() {
    let mu = q2_root();
    let nu = q2_two_step();
    assert_eq!(nu.evaluate(&qpoly(&[0, 0, 0, 1])), r1(3, 2));
    assert_eq!(nu.evaluate(&qpoly(&[2, 2, 1])), r1(3, 2));
    assert_eq!(nu.evaluate(&qpoly(&[17])), r1(0, 1));
    assert!(matches!(mu.augment(qpoly(&[2, 0, 1]), r1(1, 1)), Err(Error::MonotonicityViolation { .. })));
    assert!(matches!(mu.augment(qpoly(&[0, 0, 1]), r1(5, 2)), Err(Error::KeyRequired(_))));
    assert!(matches!(
        mu.augment(qpoly(&[2, 0, 1]), ExtValue::parse("(1,1)").unwrap()),
        Err(Error::RankMismatch { .. })
    ));
}

#[test]
fn equivalent_key_replaces_last_step() {
    let nu = q2_two_step();
    // x^2 + 2x + 2 ~ x^2 + 2 under nu? nu(2x) = 3/2 = nu(x^2 + 2): not equivalent
    assert!(!nu.equivalent_in(&qpoly(&[2, 2, 1]), &qpoly(&[2, 0, 1])).unwrap());
    // x^2 + 4x + 2 differs by 4x of value 5/2 > 3/2
    let eta = nu.augment(qpoly(&[2, 4, 1]), r1(2, 1)).unwrap();
    assert_eq!(eta.depth(), 1);
    assert_eq!(eta.phi_min(), &qpoly(&[2, 4, 1]));
}

#[test]
fn truncation_examples() {
    let nu = q2_two_step();
    let t = nu.truncate_eval(&qpoly(&[0, 1]), &qpoly(&[2, 0, 1])).unwrap();
    assert_eq!((t.value, t.attaining), (r1(1, 1), vec![0, 2]));
    let phi = qpoly(&[2, 0, 1]);
    let t = nu.truncate_eval(&phi, &phi).unwrap();
    assert_eq!((t.value, t.attaining), (r1(3, 2), vec![1]));
    // x^3 = x (x^2 + 2) - 2x: digit values 3/2 and 1/2 + 3/2 = 2
    let t = nu.truncate_eval(&phi, &qpoly(&[0, 0, 0, 1])).unwrap();
    assert_eq!((t.value, t.attaining), (r1(3, 2), vec![0]));
    assert!(nu.truncate_eval(&qpoly(&[1, 2]), &phi).is_err());
}

#[test]
fn equivalence_examples() {
    let mu = q2_root();
    let f = qpoly(&[2, 2, 1]);
    let g = qpoly(&[2, 0, 1]);
    assert!(mu.equivalent_in(&f, &g).unwrap());
    assert!(mu.equivalent_in(&f, &f).unwrap());
    assert!(!mu.equivalent_in(&f, &qpoly(&[0, 1])).unwrap());
    assert!(mu.equivalent_in(&f, &Poly::zero()).is_err());
}

#[test]
fn phi_class_examples() {
    let mu = q2_root();
    let nu = q2_two_step();
    assert_eq!(phi_class(&mu, &nu).unwrap(), (qpoly(&[2, 0, 1]), 2));
    // (x^2+2)^2 + 2x (x^2+2) + 8 has residual polynomial y^2 + y + 1
    let chi = qpoly(&[12, 4, 4, 2, 1]);
    let eta = nu.augment(chi.clone(), r1(4, 1)).unwrap();
    assert_eq!(eta.depth(), 2);
    assert_eq!(phi_class(&mu, &eta).unwrap(), phi_class(&mu, &nu).unwrap());
    assert_eq!(phi_class(&nu, &eta).unwrap(), (chi, 4));
    assert!(matches!(phi_class(&mu, &mu), Err(Error::NotComparable)));
    assert!(matches!(phi_class(&nu, &mu), Err(Error::NotComparable)));
}

#[test]
fn value_group_examples() {
    let mu = q2_root();
    let d = mu.value_group_data().unwrap();
    assert_eq!(d.e_rel, 2);
    assert_eq!(d.gens_below, vec![r1(1, 1)]);
    let nu = q2_two_step();
    assert_eq!(nu.value_group_data().unwrap().e_rel, 1);
    let gauss = q_degree_one(2, 0, r1(0, 1));
    assert_eq!(gauss.value_group_data().unwrap().e_rel, 1);
    let three = q_degree_one(3, 1, r1(2, 3));
    assert_eq!(three.value_group_data().unwrap().e_rel, 3);
}

#[test]
fn residual_examples() {
    let mu = q2_root();
    let x = qpoly(&[0, 1]);
    let r = mu.residual_polynomial(&x, &qpoly(&[2]), &qpoly(&[2, 0, 1])).unwrap();
    assert_eq!(r.coeffs(), &[FfElem::P(1), FfElem::P(1)]);
    let r = mu.residual_polynomial(&x, &qpoly(&[2]), &x).unwrap();
    assert_eq!(r.coeffs(), &[FfElem::P(1)]);
    assert!(matches!(mu.residual_polynomial(&x, &qpoly(&[4]), &x), Err(Error::BadNormalizer(_))));
}

#[test]
fn unit_residue_examples() {
    let mu = q2_root();
    let one = FfElem::P(1);
    assert_eq!(mu.unit_residue(&[(qpoly(&[2]), 1), (qpoly(&[2]), -1)]).unwrap(), one);
    assert_eq!(mu.unit_residue(&[(qpoly(&[6]), 1), (qpoly(&[2]), -1)]).unwrap(), one);
    assert_eq!(mu.unit_residue(&[(qpoly(&[0, 2]), 1), (qpoly(&[0, 2]), -1)]).unwrap(), one);
    assert!(matches!(mu.unit_residue(&[(qpoly(&[4]), 1), (qpoly(&[2]), -1)]), Err(Error::NotDegreeZero)));
    // x^2 / 2 has degree zero but is not a unit
    assert!(matches!(mu.unit_residue(&[(qpoly(&[0, 0, 1]), 1), (qpoly(&[2]), -1)]), Err(Error::NotAUnit)));
}

#[test]
fn mlv_key_examples() {
    let mu = q2_root();
    assert_eq!(mu.mlv_key_case(&qpoly(&[2, 0, 1])).unwrap(), Some(MlvCase::ResidualIrreducible { residual_degree: 1 }));
    assert_eq!(mu.mlv_key_case(&qpoly(&[0, 1])).unwrap(), Some(MlvCase::Equivalent));
    assert_eq!(mu.mlv_key_case(&qpoly(&[0, 0, 1])).unwrap(), None);
    assert!(mu.mlv_key_case(&qpoly(&[0, 2])).is_err());
}

#[test]
fn residue_towers_grow_with_residual_degree() {
    // x^4 + 2x^2 + 4 over [v_2; x, 1/2]: S = {0,2,4}, R = y^2 + y + 1
    let mu = q2_root();
    let phi = qpoly(&[4, 0, 2, 0, 1]);
    assert_eq!(mu.mlv_key_case(&phi).unwrap(), Some(MlvCase::ResidualIrreducible { residual_degree: 2 }));
    let nu = mu.augment(phi, r1(5, 2)).unwrap();
    assert_eq!(nu.residue_field().unwrap().abs_degree(), 2);
}

#[test]
fn tadic_chain_over_f2() {
    let nu = ft_three_level(2);
    assert_eq!(nu.depth(), 2);
    assert_eq!(nu.e_rel(), Some(1));
    let k = nu.field().clone();
    assert_eq!(nu.evaluate(&ftpoly(&k, &[&[0, 1], &[0, 1], &[1]])), r1(2, 1));
    assert_eq!(nu.evaluate(&ftpoly(&k, &[&[0, 1], &[], &[1]])), r1(3, 2));
}
