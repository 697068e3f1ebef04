//! Bundled chains used by the property suites, the acceptance tests and the
//! command-line self test.

use num_rational::BigRational;

use crate::algebra::{Field, FiniteField, PAdic, Poly, RatFunc, RationalFunctions, TAdic};
use crate::limitchain::{ChainRule, ChainSpec};
use crate::ordgroup::{int, rat, AffineCoord, Boundedness, ExtValue, Rat, SequenceDescriptor, Tail, TailKind};
use crate::valuation::ValuationHandle;

pub type QPoly = Poly<BigRational>;
pub type QHandle = ValuationHandle<PAdic>;
pub type FtHandle = ValuationHandle<TAdic<FiniteField>>;
pub type FtPoly = Poly<RatFunc<crate::algebra::FfElem>>;

pub fn r1(n: i64, d: i64) -> ExtValue {
    ExtValue::Finite(vec![rat(n, d)])
}

pub fn qpoly(cs: &[i64]) -> QPoly {
    Poly::from_i64s(&crate::algebra::Rationals, cs)
}

/// `[v_2; x, 1/2]`.
pub fn q2_root() -> QHandle {
    let v = PAdic::new(2).expect("prime");
    ValuationHandle::make_degree_one(v, 1, 0, qpoly(&[0, 1]), r1(1, 2)).expect("valid root")
}

/// `[[v_2; x, 1/2]; x^2 + 2, 3/2]`.
pub fn q2_two_step() -> QHandle {
    q2_root().augment(qpoly(&[2, 0, 1]), r1(3, 2)).expect("valid augmentation")
}

/// `[v_p; x - c, gamma]` over `Q`.
pub fn q_degree_one(p: u64, c: i64, gamma: ExtValue) -> QHandle {
    let v = PAdic::new(p).expect("prime");
    ValuationHandle::make_degree_one(v, 1, 0, qpoly(&[-c, 1]), gamma).expect("valid root")
}

pub fn ft_field(p: u64) -> RationalFunctions<FiniteField> {
    RationalFunctions::new(FiniteField::prime(p).expect("prime"), "t")
}

/// Polynomial in `x` whose coefficients are polynomials in `t`, given as
/// integer coefficient lists (low degree first in both variables).
pub fn ftpoly(k: &RationalFunctions<FiniteField>, cs: &[&[i64]]) -> FtPoly {
    let kk = k.coefficient_field();
    let coeffs = cs.iter().map(|c| k.from_poly(Poly::from_i64s(kk, c))).collect();
    Poly::from_coeffs(k, coeffs)
}

/// `[v_t; x, 1/2] -> (x^2 + t, 3/2) -> (x^2 + t x + t, 2)` over `F_p(t)`.
pub fn ft_three_level(p: u64) -> FtHandle {
    let k = ft_field(p);
    let v = TAdic::new(k.clone());
    let root = ValuationHandle::make_degree_one(v, 1, 0, ftpoly(&k, &[&[], &[1]]), r1(1, 2)).expect("root");
    let mid = root.augment(ftpoly(&k, &[&[0, 1], &[], &[1]]), r1(3, 2)).expect("first step");
    mid.augment(ftpoly(&k, &[&[0, 1], &[0, 1], &[1]]), r1(2, 1)).expect("second step")
}

/// Every polynomial in `t` over `F_p` of degree at most `max_tdeg`.
pub fn ft_coefficients(k: &RationalFunctions<FiniteField>, max_tdeg: usize) -> Vec<RatFunc<crate::algebra::FfElem>> {
    let p = k.coefficient_field().characteristic() as usize;
    let count = (0..=max_tdeg).fold(1usize, |acc, _| acc * p);
    (0..count)
        .map(|mut idx| {
            let cs: Vec<i64> = (0..=max_tdeg)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c as i64
                })
                .collect();
            k.from_poly(Poly::from_i64s(k.coefficient_field(), &cs))
        })
        .collect()
}

/// Every monic polynomial in `x` of degree `1..=max_deg` whose coefficients
/// are polynomials in `t` of degree at most `max_tdeg`.
pub fn ft_monic_grid(k: &RationalFunctions<FiniteField>, max_deg: usize, max_tdeg: usize) -> Vec<FtPoly> {
    let pool = ft_coefficients(k, max_tdeg);
    let mut out = Vec::new();
    for d in 1..=max_deg {
        let count = (0..d).fold(1usize, |acc, _| acc * pool.len());
        for mut idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(pool[idx % pool.len()].clone());
                idx /= pool.len();
            }
            coeffs.push(k.one());
            out.push(Poly::from_coeffs(k, coeffs));
        }
    }
    out
}

fn q_base(p: u64) -> QHandle {
    let v = PAdic::new(p).expect("prime");
    ValuationHandle::make_degree_one(v, 1, 0, qpoly(&[0, 1]), r1(0, 1)).expect("Gauss valuation")
}

/// `chi_i = x - a_i` with `a_i` the Newton approximations of the square root
/// of `radicand` in `Q_p`, over `[v_p; x, 0]`, declared witness `x^2 - radicand`.
pub fn q_sqrt_chain(p: u64, radicand: i64, first: i64) -> ChainSpec<PAdic> {
    let k = crate::algebra::Rationals;
    let rule = ChainRule::HenselSqrt { radicand: k.from_i64(radicand), first: k.from_i64(first) };
    ChainSpec::new(q_base(p), rule).expect("valid lifting rule").with_witness(qpoly(&[-radicand, 0, 1]))
}

/// The square root of 17 over `(Q, v_2)`: `a = 1, 9, 233, ...`, `beta = 3, 5, 9, ...`.
pub fn q2_sqrt17() -> ChainSpec<PAdic> {
    q_sqrt_chain(2, 17, 1)
}

/// The square root of 2 over `(Q, v_7)`, starting from 3.
pub fn q7_sqrt2() -> ChainSpec<PAdic> {
    q_sqrt_chain(7, 2, 3)
}

/// The square root of `1 + t` over `(F_3(t), v_t)`, starting from 1.
pub fn ft3_sqrt_one_plus_t() -> ChainSpec<TAdic<FiniteField>> {
    let k = ft_field(3);
    let v = TAdic::new(k.clone());
    let base = ValuationHandle::make_degree_one(v, 1, 0, ftpoly(&k, &[&[], &[1]]), r1(0, 1)).expect("Gauss valuation");
    let one_plus_t = k.from_poly(Poly::from_i64s(k.coefficient_field(), &[1, 1]));
    let rule = ChainRule::HenselSqrt { radicand: one_plus_t, first: k.one() };
    ChainSpec::new(base, rule).expect("valid lifting rule").with_witness(ftpoly(&k, &[&[-1, -1], &[], &[1]]))
}

/// An inessential chain over `(F_3(t), v_t)`: `chi_i = x - (t + ... + t^i)`,
/// `beta_i = i + 1` over `[v_t; x, 1]`, with `steps` explicit steps. Its
/// non-stable witness `x - t/(1 - t)` has the chain degree.
pub fn ft3_geometric(steps: usize) -> ChainSpec<TAdic<FiniteField>> {
    let k = ft_field(3);
    let kk = k.coefficient_field().clone();
    let v = TAdic::new(k.clone());
    let base = ValuationHandle::make_degree_one(v, 1, 0, ftpoly(&k, &[&[], &[1]]), r1(1, 1)).expect("root");
    let list = (1..=steps)
        .map(|i| {
            let mut partial = vec![0i64; i + 1];
            partial[1..].iter_mut().for_each(|c| *c = -1);
            let chi = Poly::from_coeffs(&k, vec![k.from_poly(Poly::from_i64s(&kk, &partial)), k.one()]);
            (chi, r1(i as i64 + 1, 1))
        })
        .collect();
    let tail = Tail::Affine { coords: vec![AffineCoord::new(int(1), int(1))], kind: TailKind::Exact };
    let limit = k.fraction(Poly::from_i64s(&kk, &[0, 1]), Poly::from_i64s(&kk, &[1, -1])).expect("nonzero denominator");
    let witness = Poly::from_coeffs(&k, vec![k.neg(&limit), k.one()]);
    ChainSpec::new(base, ChainRule::Explicit { steps: list, tail }).expect("valid explicit chain").with_witness(witness)
}

/// One row of the boundedness table in `Q^2_lex`.
#[derive(Clone, Debug)]
pub struct BoundednessRow {
    pub label: &'static str,
    pub sequence: SequenceDescriptor,
    pub class: Boundedness,
    /// 1-based index of `H_S`: 1 is the whole group, 2 is `{0} x Q`.
    pub hs_index: usize,
}

fn lex2(a: Rat, b: Rat) -> ExtValue {
    ExtValue::Finite(vec![a, b])
}

/// The four example sequences `(0, 1 - 1/n)`, `(1, n)`, `(0, n)`, `(n, 0)`.
/// The first starts at `n = 2`, its first positive element.
pub fn boundedness_table() -> Vec<BoundednessRow> {
    let affine = |a: (i64, i64), b: (i64, i64)| Tail::Affine {
        coords: vec![AffineCoord::new(int(a.0), int(a.1)), AffineCoord::new(int(b.0), int(b.1))],
        kind: TailKind::Exact,
    };
    let converging = (2..=6).map(|n| lex2(int(0), int(1) - rat(1, n))).collect();
    vec![
        BoundednessRow {
            label: "(0, 1 - 1/n)",
            sequence: SequenceDescriptor::new(converging, Tail::AssertedSupremum(Some(lex2(int(0), int(1))))),
            class: Boundedness::VB,
            hs_index: 2,
        },
        BoundednessRow {
            label: "(1, n)",
            sequence: SequenceDescriptor::new(vec![], affine((0, 1), (1, 0))),
            class: Boundedness::VB,
            hs_index: 1,
        },
        BoundednessRow {
            label: "(0, n)",
            sequence: SequenceDescriptor::new(vec![], affine((0, 0), (1, 0))),
            class: Boundedness::HB,
            hs_index: 2,
        },
        BoundednessRow {
            label: "(n, 0)",
            sequence: SequenceDescriptor::new(vec![], affine((1, 0), (0, 0))),
            class: Boundedness::UB,
            hs_index: 1,
        },
    ]
}
