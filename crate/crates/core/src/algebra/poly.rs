//! Dense univariate polynomials over a [`Field`], low degree first.

use crate::error::{domain, Error, Result};

use super::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with 0 for the zero polynomial.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    pub fn from_i64s<F: Field<Elem = E>>(f: &F, cs: &[i64]) -> Self {
        Self::from_coeffs(f, cs.iter().map(|&c| f.from_i64(c)).collect())
    }

    /// `c * x^n`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, n: usize) -> Self {
        let mut v = vec![f.zero(); n];
        v.push(c);
        Self::from_coeffs(f, v)
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    /// `x - c`.
    pub fn linear<F: Field<Elem = E>>(f: &F, c: &E) -> Self {
        Self::from_coeffs(f, vec![f.neg(c), f.one()])
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.lead().is_some_and(|c| f.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::from_coeffs(f, v)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::from_coeffs(f, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, v)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// Multiplies by `x^n`.
    pub fn shift<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, at: &E) -> E {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
    }

    /// Divides by the leading coefficient.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(f, &f.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// `self = q * g + r` with `deg r < deg g`.
    pub fn divrem<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Result<(Self, Self)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(g.lead().expect("nonzero")).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dg], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, b));
            }
            q[k] = c;
        }
        r.truncate(dg);
        Ok((Self::from_coeffs(f, q), Self::from_coeffs(f, r)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Result<Self> {
        self.divrem(f, g).map(|(_, r)| r)
    }

    /// Exact quotient; `None` when `g` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Option<Self> {
        let (q, r) = self.divrem(f, g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Digits `a_0, a_1, ...` with `self = sum a_s q^s` and `deg a_s < deg q`.
    /// The zero polynomial has the single digit 0.
    pub fn q_expansion<F: Field<Elem = E>>(&self, f: &F, q: &Self) -> Result<Vec<Self>> {
        if !q.is_monic(f) || q.deg0() == 0 {
            return domain("expansion base must be monic of positive degree");
        }
        let mut digits = Vec::new();
        let mut cur = self.clone();
        loop {
            let (quo, r) = cur.divrem(f, q)?;
            digits.push(r);
            if quo.is_zero() {
                break;
            }
            cur = quo;
        }
        Ok(digits)
    }

    /// Inverse of [`Poly::q_expansion`].
    pub fn from_expansion<F: Field<Elem = E>>(f: &F, digits: &[Self], q: &Self) -> Self {
        digits.iter().rev().fold(Self::zero(), |acc, d| acc.mul(f, q).add(f, d))
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `(g, s, t)` with `g = s*self + t*o`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(f, &q.mul(f, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(f, &q.mul(f, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(l).expect("nonzero");
                (r0.scale(f, &li), s0.scale(f, &li), t0.scale(f, &li))
            }
        }
    }

    /// `self^e mod m` for a big exponent given as little-endian bits.
    pub fn powmod_bits<F: Field<Elem = E>>(&self, f: &F, bits: &[bool], m: &Self) -> Self {
        let mut acc = Self::one(f).rem(f, m).expect("nonzero modulus");
        for &bit in bits.iter().rev() {
            acc = acc.mul(f, &acc).rem(f, m).expect("nonzero modulus");
            if bit {
                acc = acc.mul(f, self).rem(f, m).expect("nonzero modulus");
            }
        }
        acc
    }

    /// Hasse derivative: `d_b x^n = C(n, b) x^(n-b)`, binomials computed by
    /// Pascal's rule inside the field.
    pub fn hasse<F: Field<Elem = E>>(&self, f: &F, b: usize) -> Self {
        let n = self.coeffs.len();
        if b == 0 {
            return self.clone();
        }
        if b >= n {
            return Self::zero();
        }
        let rows = binomial_rows(f, n - 1, b);
        let v = (b..n).map(|k| f.mul(&rows[k][b], &self.coeffs[k])).collect();
        Self::from_coeffs(f, v)
    }

    /// Least `b >= 1` with a nonzero Hasse derivative.
    pub fn multiplicity<F: Field<Elem = E>>(&self, f: &F) -> Result<usize> {
        let d = self.deg0();
        if d == 0 {
            return domain("multiplicity of a constant polynomial");
        }
        Ok((1..=d).find(|&b| !self.hasse(f, b).is_zero()).expect("d_deg f is the leading coefficient"))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format(c);
            let negative = s.starts_with('-') && !f.is_compound(c);
            if negative {
                s.remove(0);
            }
            if !out.is_empty() {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                if f.is_compound(c) && !out.is_empty() {
                    out.push_str(&format!("({s})"));
                } else {
                    out.push_str(&s);
                }
            } else if s == "1" {
                out.push_str(&mono);
            } else if f.is_compound(c) {
                out.push_str(&format!("({s})*{mono}"));
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        out
    }
}

/// Rows `C(k, j)` for `k <= n`, `j <= b`, by Pascal's rule in `f`.
fn binomial_rows<F: Field>(f: &F, n: usize, b: usize) -> Vec<Vec<F::Elem>> {
    let mut rows = Vec::with_capacity(n + 1);
    let mut prev = vec![f.zero(); b + 1];
    prev[0] = f.one();
    rows.push(prev.clone());
    for _ in 1..=n {
        let mut row = vec![f.zero(); b + 1];
        row[0] = f.one();
        for j in 1..=b {
            row[j] = f.add(&prev[j - 1], &prev[j]);
        }
        rows.push(row.clone());
        prev = row;
    }
    rows
}

/// `C(n, k)` as a field element.
pub fn binomial<F: Field>(f: &F, n: usize, k: usize) -> F::Elem {
    if k > n {
        return f.zero();
    }
    binomial_rows(f, n, k)[n][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;

    fn p(cs: &[i64]) -> Poly<num_rational::BigRational> {
        Poly::from_i64s(&Rationals, cs)
    }

    #[test]
    fn divrem_examples() {
        let q = &Rationals;
        let (quo, r) = p(&[0, 0, 0, 1]).divrem(q, &p(&[2, 0, 1])).unwrap();
        assert_eq!(quo, p(&[0, 1]));
        assert_eq!(r, p(&[0, -2]));
        let (quo, r) = p(&[1, 1]).divrem(q, &p(&[2, 0, 1])).unwrap();
        assert!(quo.is_zero());
        assert_eq!(r, p(&[1, 1]));
        let big = p(&[2, 0, 1]).mul(q, &p(&[-7, 0, 0, 0, 0, 1])).add(q, &p(&[3]));
        assert_eq!(big.rem(q, &p(&[2, 0, 1])).unwrap(), p(&[3]));
        assert!(matches!(big.divrem(q, &Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn expansion_examples() {
        let q = &Rationals;
        let phi = p(&[2, 0, 1]);
        assert_eq!(p(&[0, 0, 0, 1]).q_expansion(q, &phi).unwrap(), vec![p(&[0, -2]), p(&[0, 1])]);
        assert_eq!(p(&[5, 1]).q_expansion(q, &phi).unwrap(), vec![p(&[5, 1])]);
        assert_eq!(phi.q_expansion(q, &phi).unwrap(), vec![Poly::zero(), p(&[1])]);
        assert!(p(&[1]).q_expansion(q, &p(&[1, 2])).is_err());
    }

    #[test]
    fn hasse_examples() {
        let q = &Rationals;
        assert_eq!(p(&[0, 0, 0, 0, 0, 1]).hasse(q, 2), p(&[0, 0, 0, 10]));
        let f = p(&[3, -1, 4, 1]);
        assert_eq!(f.hasse(q, 3), p(&[1]));
        assert!(f.hasse(q, 4).is_zero());
        assert_eq!(p(&[-17, 0, 1]).multiplicity(q).unwrap(), 1);
        assert!(p(&[4]).multiplicity(q).is_err());
    }

    #[test]
    fn formatting() {
        let q = &Rationals;
        assert_eq!(p(&[2, -1, 1]).format(q, "x"), "x^2 - x + 2");
        assert_eq!(p(&[-17, 0, 1]).format(q, "x"), "x^2 - 17");
        assert_eq!(p(&[0, 3]).format(q, "x"), "3*x");
        assert_eq!(Poly::<num_rational::BigRational>::zero().format(q, "x"), "0");
    }
}
