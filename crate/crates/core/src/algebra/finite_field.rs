//! Finite fields as towers `F_p ⊂ F_p[y]/(m_1) ⊂ ...`. One type covers prime
//! fields, `F_q` given by a modulus over `F_p`, and residue-field towers built
//! along a chain of augmentations.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use rand::Rng;

use crate::error::{domain, Result};

use super::field::{bigint_mod, Field};
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FfElem {
    /// Element of a prime field, in `[0, p)`.
    P(u64),
    /// Element of an extension: trimmed coefficients over the parent field.
    E(Vec<FfElem>),
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    p: u64,
    parent: Option<FiniteField>,
    modulus: Poly<FfElem>,
    symbol: String,
    abs_degree: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.abs_degree)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return domain(format!("{p} is not a supported prime"));
        }
        Ok(FiniteField(Arc::new(Inner {
            p,
            parent: None,
            modulus: Poly::zero(),
            symbol: String::new(),
            abs_degree: 1,
        })))
    }

    /// `self[y]/(modulus)`; the modulus must be monic and irreducible.
    pub fn extend(&self, modulus: Poly<FfElem>, symbol: &str) -> Result<Self> {
        if !modulus.is_monic(self) || modulus.deg0() == 0 {
            return domain("extension modulus must be monic of positive degree");
        }
        if !self.is_irreducible(&modulus) {
            return domain(format!("modulus {} is reducible", modulus.format(self, "y")));
        }
        let d = modulus.deg0();
        Ok(FiniteField(Arc::new(Inner {
            p: self.0.p,
            parent: Some(self.clone()),
            modulus,
            symbol: symbol.to_string(),
            abs_degree: self.0.abs_degree * d,
        })))
    }

    /// `F_q` with `q = p^m`, given a modulus over `F_p` as integer coefficients.
    pub fn with_modulus(p: u64, modulus: &[i64], symbol: &str) -> Result<Self> {
        let fp = Self::prime(p)?;
        let m = Poly::from_i64s(&fp, modulus);
        fp.extend(m, symbol)
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.parent.is_none()
    }

    pub fn parent(&self) -> Option<&FiniteField> {
        self.0.parent.as_ref()
    }

    pub fn modulus(&self) -> &Poly<FfElem> {
        &self.0.modulus
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    /// Degree over the parent field (1 for a prime field).
    pub fn rel_degree(&self) -> usize {
        if self.is_prime_field() {
            1
        } else {
            self.0.modulus.deg0()
        }
    }

    /// Degree over `F_p`.
    pub fn abs_degree(&self) -> usize {
        self.0.abs_degree
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.abs_degree as u32)
    }

    /// The class of the adjoined root.
    pub fn generator(&self) -> FfElem {
        match &self.0.parent {
            None => FfElem::P(1),
            Some(par) => self.from_parent_poly(&Poly::x(par)),
        }
    }

    /// Image of a parent element.
    pub fn embed(&self, a: &FfElem) -> FfElem {
        match &self.0.parent {
            None => a.clone(),
            Some(par) => self.from_parent_poly(&Poly::constant(par, a.clone())),
        }
    }

    fn parent_poly(&self, a: &FfElem) -> Poly<FfElem> {
        match a {
            FfElem::E(c) => Poly::from_coeffs(self.0.parent.as_ref().expect("extension"), c.clone()),
            FfElem::P(_) => panic!("prime-field element used in an extension"),
        }
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_parent_poly(&self, a: &Poly<FfElem>) -> FfElem {
        let par = self.0.parent.as_ref().expect("extension");
        let r = a.rem(par, &self.0.modulus).expect("nonzero modulus");
        FfElem::E(r.into_coeffs())
    }

    /// Builds an element from coordinates over the parent field.
    pub fn from_parent_coords(&self, coords: Vec<FfElem>) -> FfElem {
        let par = self.0.parent.as_ref().expect("extension");
        self.from_parent_poly(&Poly::from_coeffs(par, coords))
    }

    /// Every element, for small fields.
    pub fn elements(&self) -> Vec<FfElem> {
        match &self.0.parent {
            None => (0..self.0.p).map(FfElem::P).collect(),
            Some(par) => {
                let base = par.elements();
                let mut out: Vec<Vec<FfElem>> = vec![vec![]];
                for _ in 0..self.rel_degree() {
                    out = out
                        .into_iter()
                        .flat_map(|v| {
                            base.iter().map(move |b| {
                                let mut w = v.clone();
                                w.push(b.clone());
                                w
                            })
                        })
                        .collect();
                }
                out.into_iter().map(|v| self.from_parent_coords(v)).collect()
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FfElem {
        match &self.0.parent {
            None => FfElem::P(rng.gen_range(0..self.0.p)),
            Some(par) => {
                let v = (0..self.rel_degree()).map(|_| par.random(rng)).collect();
                self.from_parent_coords(v)
            }
        }
    }

    /// Rabin's test over this field.
    pub fn is_irreducible(&self, f: &Poly<FfElem>) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = f.monic(self);
        let q = self.order();
        let bits: Vec<bool> = (0..q.bits()).map(|i| q.bit(i)).collect();
        let x = Poly::x(self);
        let mut frob = vec![x.rem(self, &f).expect("nonzero")];
        for _ in 0..n {
            let next = frob.last().unwrap().powmod_bits(self, &bits, &f);
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return false;
        }
        prime_factors(n).into_iter().all(|r| {
            let h = frob[n / r].sub(self, &x);
            h.gcd(self, &f).deg0() == 0
        })
    }
}

impl Field for FiniteField {
    type Elem = FfElem;

    fn zero(&self) -> FfElem {
        match self.0.parent {
            None => FfElem::P(0),
            Some(_) => FfElem::E(Vec::new()),
        }
    }

    fn one(&self) -> FfElem {
        self.from_i64(1)
    }

    fn add(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a, b) {
            (FfElem::P(x), FfElem::P(y)) => FfElem::P((x + y) % self.0.p),
            _ => {
                let par = self.0.parent.as_ref().expect("extension");
                FfElem::E(self.parent_poly(a).add(par, &self.parent_poly(b)).into_coeffs())
            }
        }
    }

    fn neg(&self, a: &FfElem) -> FfElem {
        match a {
            FfElem::P(x) => FfElem::P((self.0.p - x) % self.0.p),
            _ => {
                let par = self.0.parent.as_ref().expect("extension");
                FfElem::E(self.parent_poly(a).neg(par).into_coeffs())
            }
        }
    }

    fn mul(&self, a: &FfElem, b: &FfElem) -> FfElem {
        match (a, b) {
            (FfElem::P(x), FfElem::P(y)) => FfElem::P(((*x as u128 * *y as u128) % self.0.p as u128) as u64),
            _ => {
                let par = self.0.parent.as_ref().expect("extension");
                self.from_parent_poly(&self.parent_poly(a).mul(par, &self.parent_poly(b)))
            }
        }
    }

    fn inv(&self, a: &FfElem) -> Option<FfElem> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            FfElem::P(x) => Some(self.pow(&FfElem::P(*x), self.0.p - 2)),
            _ => {
                let par = self.0.parent.as_ref().expect("extension");
                let (g, s, _) = self.parent_poly(a).ext_gcd(par, &self.0.modulus);
                debug_assert_eq!(g.deg0(), 0);
                Some(self.from_parent_poly(&s))
            }
        }
    }

    fn from_bigint(&self, n: &BigInt) -> FfElem {
        match &self.0.parent {
            None => FfElem::P(bigint_mod(n, self.0.p)),
            Some(par) => self.from_parent_poly(&Poly::constant(par, par.from_bigint(n))),
        }
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn format(&self, a: &FfElem) -> String {
        match a {
            FfElem::P(x) => x.to_string(),
            _ => self.parent_poly(a).format(self.0.parent.as_ref().unwrap(), &self.0.symbol),
        }
    }

    fn is_compound(&self, a: &FfElem) -> bool {
        match a {
            FfElem::P(_) => false,
            FfElem::E(c) => {
                let par = self.0.parent.as_ref().unwrap();
                c.iter().filter(|x| !par.is_zero(x)).count() > 1 || c.iter().any(|x| par.is_compound(x))
            }
        }
    }

    fn as_finite(&self) -> Option<FiniteField> {
        Some(self.clone())
    }

    fn to_ff(&self, a: &FfElem) -> Option<FfElem> {
        Some(a.clone())
    }
}

impl FiniteField {
    pub fn order_u64(&self) -> Option<u64> {
        let q = self.order();
        if q > BigUint::from(u64::MAX) {
            None
        } else {
            Some(q.iter_u64_digits().next().unwrap_or(0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.from_i64(-1), FfElem::P(6));
        assert!(FiniteField::prime(8).is_err());
    }

    #[test]
    fn extension_field_inverses() {
        let f4 = FiniteField::with_modulus(2, &[1, 1, 1], "g").unwrap();
        assert_eq!(f4.elements().len(), 4);
        for a in f4.elements() {
            if !f4.is_zero(&a) {
                assert_eq!(f4.mul(&a, &f4.inv(&a).unwrap()), f4.one());
            }
        }
        let g = f4.generator();
        assert_eq!(f4.pow(&g, 3), f4.one());
        assert!(FiniteField::with_modulus(2, &[1, 0, 1], "g").is_err());
    }

    #[test]
    fn irreducibility_matches_brute_force_over_f2() {
        let f2 = FiniteField::prime(2).unwrap();
        // brute force: irreducible iff no monic factor of degree <= n/2
        for n in 1..=6usize {
            for bits in 0..(1u32 << n) {
                let mut cs: Vec<i64> = (0..n).map(|i| ((bits >> i) & 1) as i64).collect();
                cs.push(1);
                let f = Poly::from_i64s(&f2, &cs);
                let mut reducible = false;
                for d in 1..=n / 2 {
                    for gb in 0..(1u32 << d) {
                        let mut gs: Vec<i64> = (0..d).map(|i| ((gb >> i) & 1) as i64).collect();
                        gs.push(1);
                        let g = Poly::from_i64s(&f2, &gs);
                        if f.rem(&f2, &g).unwrap().is_zero() {
                            reducible = true;
                        }
                    }
                }
                assert_eq!(f2.is_irreducible(&f), !reducible, "{}", f.format(&f2, "y"));
            }
        }
    }

    #[test]
    fn towers() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = f2.extend(Poly::from_i64s(&f2, &[1, 1, 1]), "g").unwrap();
        // y^2 + y + g is irreducible over F_4
        let m = Poly::from_coeffs(&f4, vec![f4.generator(), f4.one(), f4.one()]);
        let f16 = f4.extend(m, "z").unwrap();
        assert_eq!(f16.order(), BigUint::from(16u32));
        let z = f16.generator();
        assert_eq!(f16.pow(&z, 15), f16.one());
        assert_eq!(f16.elements().len(), 16);
    }
}
