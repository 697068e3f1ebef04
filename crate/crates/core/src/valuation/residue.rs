//! Degree-zero residues and residual polynomials, computed by recursion on
//! the chain. The graded algebra itself is never built: a formal product
//! `prod g_k^{n_k}` of degree zero is split at each level into the residual
//! polynomials of its factors, a power of the residual variable, and a
//! product of lower-degree pieces handed to the level below.

use crate::algebra::{BaseValuation, FfElem, Field, FiniteField, Poly};
use crate::error::{domain, Error, Result};
use crate::ordgroup::ExtValue;

use super::{MlvCase, ValuationHandle, P};

/// A formal product `prod p^n`.
pub type Factors<E> = Vec<(Poly<E>, i64)>;

/// Residual data of one polynomial at one level.
#[derive(Clone, Debug)]
pub(crate) struct Residual<E> {
    pub s0: usize,
    pub d: usize,
    pub a_top: Poly<E>,
    pub r: Poly<FfElem>,
}

fn embed_into(from: &FiniteField, to: &FiniteField, x: FfElem) -> FfElem {
    if from == to {
        x
    } else {
        to.embed(&x)
    }
}

fn pow_signed(k: &FiniteField, x: &FfElem, n: i64) -> Result<FfElem> {
    let base = if n < 0 { k.inv(x).ok_or(Error::NotAUnit)? } else { x.clone() };
    Ok(k.pow(&base, n.unsigned_abs()))
}

impl<V: BaseValuation> ValuationHandle<V> {
    fn kappa_at(&self, j: usize) -> Result<FiniteField> {
        self.level(j).kappa.clone().ok_or(Error::ResidueUnsupported)
    }

    /// Residual polynomial of `g` at level `i` with respect to a key `phi` of
    /// the level's minimal degree. `normalizer` defaults to the canonical one.
    pub(crate) fn residual_at(
        &self,
        i: usize,
        phi: &P<V>,
        g: &P<V>,
        normalizer: Option<&[(P<V>, i64)]>,
    ) -> Result<Residual<crate::valuation::Elem<V>>> {
        if g.is_zero() {
            return domain("residual polynomial of zero");
        }
        let data = self.level(i);
        let kappa = data.kappa.clone().ok_or(Error::ResidueUnsupported)?;
        let e = data.e.ok_or(Error::ResidueUnsupported)? as usize;
        let u = match normalizer {
            Some(u) => u,
            None => data.u.as_deref().ok_or(Error::ResidueUnsupported)?,
        };
        let phi_value = self.eval_at(i, phi);
        let tr = self.truncation_at(i, phi, &phi_value, g)?;
        let s0 = tr.attaining[0];
        let s_top = *tr.attaining.last().expect("nonempty");
        if tr.attaining.iter().any(|s| (s - s0) % e != 0) {
            return Err(Error::KeyRequired(format!(
                "{} is not minimal: attaining indices not congruent modulo {e}",
                phi.format(self.field(), "x")
            )));
        }
        let d = (s_top - s0) / e;
        let a_top = tr.digits[s_top].clone();
        let mut coeffs = Vec::with_capacity(d + 1);
        for jj in 0..=d {
            let s = s0 + jj * e;
            if s == s_top {
                coeffs.push(kappa.one());
            } else if tr.attaining.binary_search(&s).is_err() {
                coeffs.push(kappa.zero());
            } else {
                let mut fs: Factors<_> = vec![(tr.digits[s].clone(), 1), (a_top.clone(), -1)];
                let pw = (d - jj) as i64;
                fs.extend(u.iter().map(|(p, n)| (p.clone(), -n * pw)));
                coeffs.push(self.lower_residue_unchecked(i, &fs)?);
            }
        }
        Ok(Residual { s0, d, a_top, r: Poly::from_coeffs(&kappa, coeffs) })
    }

    fn total_value(&self, j: usize, factors: &[(P<V>, i64)]) -> Result<ExtValue> {
        let mut total = ExtValue::zero(self.rank());
        for (g, n) in factors {
            let v = self.eval_at(j, g);
            if v.is_infinite() {
                return Err(Error::NotAUnit);
            }
            total = total.add(&v.mul_int(*n));
        }
        Ok(total)
    }

    /// Residue in `kappa_j` of a degree-zero product of polynomials of degree
    /// below `deg phi_j`.
    pub(crate) fn lower_residue_unchecked(&self, j: usize, factors: &[(P<V>, i64)]) -> Result<FfElem> {
        let kappa_j = self.kappa_at(j)?;
        let k = self.field();
        if j == 0 {
            let mut prod = k.one();
            for (g, n) in factors {
                if g.deg0() > 0 {
                    return domain("non-constant factor at the root level");
                }
                let c = &g.coeffs()[0];
                let c = if *n < 0 { k.inv(c).ok_or(Error::DivisionByZero)? } else { c.clone() };
                prod = k.mul(&prod, &k.pow(&c, n.unsigned_abs()));
            }
            return self.base().reduce(&prod).ok_or(Error::NotDegreeZero);
        }
        let i = j - 1;
        let kappa_i = self.kappa_at(i)?;
        let deg_i = self.steps()[i].phi.deg0();
        if factors.iter().all(|(g, _)| g.deg0() < deg_i) {
            let x = self.lower_residue_unchecked(i, factors)?;
            return Ok(embed_into(&kappa_i, &kappa_j, x));
        }
        let data = self.level(i);
        let e = data.e.ok_or(Error::ResidueUnsupported)? as i64;
        let u = data.u.as_deref().ok_or(Error::ResidueUnsupported)?;
        let phi = self.steps()[i].phi.clone();
        let mut parts = Vec::with_capacity(factors.len());
        for (g, n) in factors {
            parts.push((self.residual_at(i, &phi, g, None)?, *n));
        }
        let s0_total: i64 = parts.iter().map(|(r, n)| r.s0 as i64 * n).sum();
        if s0_total % e != 0 {
            return Err(Error::NotDegreeZero);
        }
        let kk = s0_total / e;
        let d_total: i64 = parts.iter().map(|(r, n)| r.d as i64 * n).sum();
        let mut lower: Factors<_> = parts.iter().map(|(r, n)| (r.a_top.clone(), *n)).collect();
        lower.extend(u.iter().map(|(p, m)| (p.clone(), m * (kk + d_total))));
        let base = self.lower_residue_unchecked(i, &lower)?;
        let mut x = embed_into(&kappa_i, &kappa_j, base);
        let z = self.level(j).z.clone().ok_or(Error::ResidueUnsupported)?;
        x = kappa_j.mul(&x, &pow_signed(&kappa_j, &z, kk)?);
        for (r, n) in &parts {
            let rz = r.r.coeffs().iter().rev().fold(kappa_j.zero(), |acc, c| {
                kappa_j.add(&kappa_j.mul(&acc, &z), &embed_into(&kappa_i, &kappa_j, c.clone()))
            });
            if kappa_j.is_zero(&rz) {
                return Err(Error::NotAUnit);
            }
            x = kappa_j.mul(&x, &pow_signed(&kappa_j, &rz, *n)?);
        }
        Ok(x)
    }

    /// Residue in the residue field of a degree-zero unit given as a formal
    /// product of polynomials.
    pub fn unit_residue(&self, factors: &[(P<V>, i64)]) -> Result<FfElem> {
        let l = self.depth();
        if !self.total_value(l, factors)?.is_zero() {
            return Err(Error::NotDegreeZero);
        }
        let m = self.degree();
        if factors.iter().all(|(g, _)| g.deg0() < m) {
            return self.lower_residue_unchecked(l, factors);
        }
        if self.last_gamma().is_infinite() {
            return Err(Error::ResidueUnsupported);
        }
        let kappa = self.kappa_at(l)?;
        let phi = self.phi_min().clone();
        let mut num = Poly::one(&kappa);
        let mut den = Poly::one(&kappa);
        let mut s0_total = 0i64;
        let mut lower: Factors<_> = Vec::new();
        for (g, n) in factors {
            let r = self.residual_at(l, &phi, g, None)?;
            s0_total += r.s0 as i64 * n;
            let rp = r.r.pow(&kappa, n.unsigned_abs());
            if *n > 0 {
                num = num.mul(&kappa, &rp);
            } else {
                den = den.mul(&kappa, &rp);
            }
            lower.push((r.a_top, *n));
        }
        if s0_total != 0 || num != den {
            return Err(Error::NotAUnit);
        }
        self.lower_residue_unchecked(l, &lower)
    }

    /// Residual polynomial of `f` with respect to a minimal-degree key `phi`
    /// and a normalizer `u` of value `e_rel * nu(phi)` and degree below `deg phi`.
    pub fn residual_polynomial(&self, phi: &P<V>, u: &P<V>, f: &P<V>) -> Result<Poly<FfElem>> {
        let k = self.field();
        let l = self.depth();
        if self.last_gamma().is_infinite() {
            return Err(Error::ResidueUnsupported);
        }
        if !phi.is_monic(k) || phi.deg0() != self.degree() {
            return Err(Error::KeyRequired(format!("{} is not a key of minimal degree", phi.format(k, "x"))));
        }
        if self.mlv_key_case(phi)?.is_none() {
            return Err(Error::KeyRequired(phi.format(k, "x")));
        }
        let e = self.e_rel().ok_or(Error::ResidueUnsupported)?;
        if u.is_zero() || u.deg0() >= phi.deg0() {
            return Err(Error::BadNormalizer("degree must be below the key degree".into()));
        }
        let target = self.evaluate(phi).mul_int(e as i64);
        if self.evaluate(u) != target {
            return Err(Error::BadNormalizer(format!("value must be {target}")));
        }
        Ok(self.residual_at(l, phi, f, Some(&[(u.clone(), 1)]))?.r)
    }

    /// Residual polynomial with respect to the last key and the canonical normalizer.
    pub fn residual_canonical(&self, f: &P<V>) -> Result<Poly<FfElem>> {
        if self.last_gamma().is_infinite() {
            return Err(Error::ResidueUnsupported);
        }
        Ok(self.residual_at(self.depth(), &self.phi_min().clone(), f, None)?.r)
    }

    /// Key test by the residual criterion.
    pub fn mlv_key_case(&self, chi: &P<V>) -> Result<Option<MlvCase>> {
        let k = self.field();
        if !chi.is_monic(k) {
            return domain("key candidates must be monic");
        }
        let phi = self.phi_min();
        if self.last_gamma().is_infinite() {
            return Ok((chi == phi).then_some(MlvCase::Equivalent));
        }
        let m = phi.deg0();
        let dchi = chi.deg0();
        if dchi < m {
            return Ok(None);
        }
        if dchi == m && self.equivalent_in(chi, phi)? {
            return Ok(Some(MlvCase::Equivalent));
        }
        let Some(e) = self.e_rel() else {
            return Ok(None);
        };
        let e = e as usize;
        if !dchi.is_multiple_of(m * e) {
            return Ok(None);
        }
        let kappa = self.kappa_at(self.depth())?;
        let r = self.residual_at(self.depth(), &phi.clone(), chi, None)?.r;
        let dr = r.deg0();
        if dr >= 1 && dchi == m * e * dr && kappa.is_irreducible(&r) {
            Ok(Some(MlvCase::ResidualIrreducible { residual_degree: dr }))
        } else {
            Ok(None)
        }
    }
}
