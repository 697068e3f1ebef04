//! The rational function field `k(t)` over an exact coefficient field.

use num_bigint::BigInt;

use super::field::Field;
use super::finite_field::FiniteField;
use super::poly::Poly;

/// A reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctions<F: Field> {
    coeff: F,
    symbol: String,
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(coeff: F, symbol: &str) -> Self {
        RationalFunctions { coeff, symbol: symbol.to_string() }
    }

    pub fn coefficient_field(&self) -> &F {
        &self.coeff
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    /// `num / den`; `None` when `den` is zero.
    pub fn fraction(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Option<RatFunc<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        let k = &self.coeff;
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = num.gcd(k, &den);
        let num = num.div_exact(k, &g).expect("gcd divides");
        let den = den.div_exact(k, &g).expect("gcd divides");
        let l = k.inv(den.lead().expect("nonzero")).expect("nonzero");
        Some(RatFunc { num: num.scale(k, &l), den: den.scale(k, &l) })
    }

    pub fn from_poly(&self, p: Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc { num: p, den: Poly::one(&self.coeff) }
    }

    pub fn from_coeff(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(Poly::constant(&self.coeff, c))
    }

    pub fn t(&self) -> RatFunc<F::Elem> {
        self.from_poly(Poly::x(&self.coeff))
    }

    /// `t^n` for any integer `n`.
    pub fn t_pow(&self, n: i64) -> RatFunc<F::Elem> {
        let k = &self.coeff;
        let m = Poly::monomial(k, k.one(), n.unsigned_abs() as usize);
        if n >= 0 {
            self.from_poly(m)
        } else {
            RatFunc { num: Poly::one(k), den: m }
        }
    }
}

fn fmt_part<F: Field>(k: &F, p: &Poly<F::Elem>, sym: &str) -> String {
    let s = p.format(k, sym);
    let terms = p.coeffs().iter().filter(|c| !k.is_zero(c)).count();
    if terms > 1 || (terms == 1 && k.is_compound(p.lead().unwrap())) {
        format!("({s})")
    } else {
        s
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(Poly::zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(Poly::one(&self.coeff))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.coeff;
        if a.den == b.den {
            return self.fraction(a.num.add(k, &b.num), a.den.clone()).expect("nonzero");
        }
        let num = a.num.mul(k, &b.den).add(k, &b.num.mul(k, &a.den));
        self.fraction(num, a.den.mul(k, &b.den)).expect("nonzero")
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc { num: a.num.neg(&self.coeff), den: a.den.clone() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.coeff;
        self.fraction(a.num.mul(k, &b.num), a.den.mul(k, &b.den)).expect("nonzero")
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_coeff(self.coeff.from_bigint(n))
    }

    fn characteristic(&self) -> u64 {
        self.coeff.characteristic()
    }

    fn format(&self, a: &Self::Elem) -> String {
        let k = &self.coeff;
        if a.den.deg0() == 0 {
            return a.num.format(k, &self.symbol);
        }
        format!("{}/{}", fmt_part(k, &a.num, &self.symbol), fmt_part(k, &a.den, &self.symbol))
    }

    fn is_compound(&self, a: &Self::Elem) -> bool {
        let k = &self.coeff;
        if a.den.deg0() > 0 {
            return true;
        }
        let terms = a.num.coeffs().iter().filter(|c| !k.is_zero(c)).count();
        terms > 1 || a.num.lead().is_some_and(|c| k.is_compound(c))
    }

    fn as_finite(&self) -> Option<FiniteField> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;

    #[test]
    fn arithmetic_reduces() {
        let f3 = FiniteField::prime(3).unwrap();
        let k = RationalFunctions::new(f3.clone(), "t");
        let t = k.t();
        let one = k.one();
        let a = k.div(&t, &k.sub(&one, &t)).unwrap();
        let b = k.mul(&a, &k.sub(&one, &t));
        assert_eq!(b, t);
        assert_eq!(k.format(&a), "2*t/(t + 2)");
        let q = RationalFunctions::new(Rationals, "t");
        let h = q.div(&q.from_i64(1), &q.from_i64(2)).unwrap();
        assert_eq!(q.format(&h), "1/2");
    }
}
