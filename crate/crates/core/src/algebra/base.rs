//! Discrete valuations on the base field: `p`-adic on `Q`, `t`-adic on
//! `k(t)`, and the trivial valuation.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{bigint_mod, Field, Rationals};
use super::finite_field::{FfElem, FiniteField};
use super::poly::Poly;
use super::ratfunc::{RatFunc, RationalFunctions};

pub trait BaseValuation: Clone + Debug + Send + Sync {
    type F: Field;

    fn field(&self) -> &Self::F;

    /// Integer value; `None` for zero.
    fn value(&self, a: &<Self::F as Field>::Elem) -> Option<i64>;

    /// `None` for the trivial valuation.
    fn uniformizer(&self) -> Option<<Self::F as Field>::Elem>;

    /// The residue field when it is finite.
    fn residue_field(&self) -> Option<FiniteField>;

    /// Residue class of an element of value zero.
    fn reduce(&self, a: &<Self::F as Field>::Elem) -> Option<FfElem>;

    /// Characteristic of the residue field (0 allowed).
    fn residue_characteristic(&self) -> u64;

    /// A simple element `b` with `v(a - b) >= prec`, for integral `a`.
    fn truncate(&self, a: &<Self::F as Field>::Elem, prec: i64) -> Option<<Self::F as Field>::Elem>;

    fn describe(&self) -> String;

    /// Characteristic exponent of the residue field.
    fn char_exponent(&self) -> u64 {
        match self.residue_characteristic() {
            0 => 1,
            p => p,
        }
    }

    fn is_trivial(&self) -> bool {
        self.uniformizer().is_none()
    }
}

fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// The `p`-adic valuation on `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    residue: FiniteField,
}

impl PAdic {
    pub fn new(p: u64) -> crate::error::Result<Self> {
        Ok(PAdic { p, residue: FiniteField::prime(p)? })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl BaseValuation for PAdic {
    type F = Rationals;

    fn field(&self) -> &Rationals {
        &Rationals
    }

    fn value(&self, a: &BigRational) -> Option<i64> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        Some(vp_int(a.numer(), &p) - vp_int(a.denom(), &p))
    }

    fn uniformizer(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(BigInt::from(self.p)))
    }

    fn residue_field(&self) -> Option<FiniteField> {
        Some(self.residue.clone())
    }

    fn reduce(&self, a: &BigRational) -> Option<FfElem> {
        if self.value(a)? != 0 {
            return None;
        }
        let f = &self.residue;
        let n = FfElem::P(bigint_mod(a.numer(), self.p));
        let d = FfElem::P(bigint_mod(a.denom(), self.p));
        f.div(&n, &d)
    }

    fn residue_characteristic(&self) -> u64 {
        self.p
    }

    fn truncate(&self, a: &BigRational, prec: i64) -> Option<BigRational> {
        if self.value(a).is_some_and(|v| v < 0) {
            return None;
        }
        if prec <= 0 {
            return Some(BigRational::zero());
        }
        let m = BigInt::from(self.p).pow(prec as u32);
        let d_inv = a.denom().extended_gcd(&m).x;
        let r = (a.numer() * d_inv).mod_floor(&m);
        Some(BigRational::from_integer(r))
    }

    fn describe(&self) -> String {
        format!("{}-adic valuation on Q", self.p)
    }
}

fn ord_t<E: Clone + PartialEq, F: Field<Elem = E>>(k: &F, p: &Poly<E>) -> i64 {
    p.coeffs().iter().position(|c| !k.is_zero(c)).expect("nonzero") as i64
}

/// The `t`-adic valuation on `k(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TAdic<F: Field> {
    field: RationalFunctions<F>,
}

impl<F: Field> TAdic<F> {
    pub fn new(field: RationalFunctions<F>) -> Self {
        TAdic { field }
    }
}

impl<F: Field> BaseValuation for TAdic<F> {
    type F = RationalFunctions<F>;

    fn field(&self) -> &RationalFunctions<F> {
        &self.field
    }

    fn value(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        if a.num.is_zero() {
            return None;
        }
        let k = self.field.coefficient_field();
        Some(ord_t(k, &a.num) - ord_t(k, &a.den))
    }

    fn uniformizer(&self) -> Option<RatFunc<F::Elem>> {
        Some(self.field.t())
    }

    fn residue_field(&self) -> Option<FiniteField> {
        self.field.coefficient_field().as_finite()
    }

    fn reduce(&self, a: &RatFunc<F::Elem>) -> Option<FfElem> {
        if self.value(a)? != 0 {
            return None;
        }
        let k = self.field.coefficient_field();
        let s = ord_t(k, &a.num) as usize;
        let q = k.div(&a.num.coeffs()[s], &a.den.coeffs()[s])?;
        k.to_ff(&q)
    }

    fn residue_characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn truncate(&self, a: &RatFunc<F::Elem>, prec: i64) -> Option<RatFunc<F::Elem>> {
        if self.value(a).is_some_and(|v| v < 0) {
            return None;
        }
        if prec <= 0 || a.num.is_zero() {
            return Some(self.field.zero());
        }
        let k = self.field.coefficient_field();
        let n = prec as usize;
        // power series of num/den modulo t^n
        let d0_inv = k.inv(&a.den.coeff(k, 0))?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = a.num.coeff(k, i);
            for j in 1..=i {
                c = k.sub(&c, &k.mul(&a.den.coeff(k, j), &out[i - j]));
            }
            out.push(k.mul(&c, &d0_inv));
        }
        Some(self.field.from_poly(Poly::from_coeffs(k, out)))
    }

    fn describe(&self) -> String {
        format!("{}-adic valuation", self.field.symbol())
    }
}

/// The trivial valuation.
#[derive(Clone, Debug, PartialEq)]
pub struct Trivial<F: Field> {
    field: F,
}

impl<F: Field> Trivial<F> {
    pub fn new(field: F) -> Self {
        Trivial { field }
    }
}

impl<F: Field> BaseValuation for Trivial<F> {
    type F = F;

    fn field(&self) -> &F {
        &self.field
    }

    fn value(&self, a: &F::Elem) -> Option<i64> {
        (!self.field.is_zero(a)).then_some(0)
    }

    fn uniformizer(&self) -> Option<F::Elem> {
        None
    }

    fn residue_field(&self) -> Option<FiniteField> {
        self.field.as_finite()
    }

    fn reduce(&self, a: &F::Elem) -> Option<FfElem> {
        if self.field.is_zero(a) {
            return None;
        }
        self.field.to_ff(a)
    }

    fn residue_characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn truncate(&self, a: &F::Elem, _prec: i64) -> Option<F::Elem> {
        Some(a.clone())
    }

    fn describe(&self) -> String {
        "trivial valuation".into()
    }
}

/// Whether `n` is a power of `p`; for `p <= 1` only 1 qualifies.
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    if p <= 1 {
        return n == 1;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::rat;

    #[test]
    fn padic_values() {
        let v = PAdic::new(2).unwrap();
        assert_eq!(v.value(&rat(24, 1)), Some(3));
        assert_eq!(v.value(&rat(3, 8)), Some(-3));
        assert_eq!(v.value(&rat(0, 1)), None);
        assert_eq!(v.reduce(&rat(3, 1)), Some(FfElem::P(1)));
        assert_eq!(v.truncate(&rat(1, 3), 3), Some(rat(3, 1)));
    }

    #[test]
    fn tadic_values() {
        let f3 = FiniteField::prime(3).unwrap();
        let k = RationalFunctions::new(f3.clone(), "t");
        let v = TAdic::new(k.clone());
        let t = k.t();
        let x = k.div(&k.mul(&t, &t), &k.add(&k.one(), &t)).unwrap();
        assert_eq!(v.value(&x), Some(2));
        assert_eq!(v.value(&k.zero()), None);
        let g = k.div(&k.one(), &k.sub(&k.one(), &t)).unwrap();
        // 1/(1-t) = 1 + t + t^2 + ...
        assert_eq!(v.truncate(&g, 3).unwrap(), k.from_poly(Poly::from_i64s(&f3, &[1, 1, 1])));
        assert_eq!(v.reduce(&g), Some(FfElem::P(1)));
    }

    #[test]
    fn powers() {
        assert!(is_power_of(8, 2));
        assert!(!is_power_of(6, 2));
        assert!(is_power_of(1, 1));
        assert!(!is_power_of(2, 1));
    }
}
