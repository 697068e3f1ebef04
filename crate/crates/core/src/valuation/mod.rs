//! Valuations on `K[x]` given by finite MacLane chains: a degree-one root
//! followed by ordinary augmentations.

pub mod lattice;
mod residue;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::{BaseValuation, FfElem, Field, FiniteField, Poly};
use crate::error::{domain, Error, Result};
use crate::ordgroup::{int, ExtValue};

pub use residue::Factors;

pub type Elem<V> = <<V as BaseValuation>::F as Field>::Elem;
pub type P<V> = Poly<Elem<V>>;

/// How a polynomial was certified as a MacLane-Vaquie key polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MlvCase {
    /// Same degree as the valuation and equivalent to its minimal key.
    Equivalent,
    /// `deg = deg(nu) * e * deg R` with `R` irreducible over the residue field.
    ResidualIrreducible { residual_degree: usize },
}

impl fmt::Display for MlvCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MlvCase::Equivalent => write!(f, "equivalent to the minimal key"),
            MlvCase::ResidualIrreducible { residual_degree } => {
                write!(f, "irreducible residual polynomial of degree {residual_degree}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step<V: BaseValuation> {
    pub phi: P<V>,
    pub gamma: ExtValue,
    /// Key certificate against the previous valuation; `None` for the root.
    pub evidence: Option<MlvCase>,
}

/// Residue bookkeeping for one level of the chain.
#[derive(Clone, Debug)]
pub(crate) struct LevelData<E> {
    /// The residue field `kappa` of this level.
    pub kappa: Option<FiniteField>,
    /// Image in `kappa` of the previous level's residual variable.
    pub z: Option<FfElem>,
    /// Relative ramification index; `None` for infinite or incommensurable values.
    pub e: Option<u64>,
    /// Normalizer with value `e * gamma`, as a formal product.
    pub u: Option<Vec<(Poly<E>, i64)>>,
}

#[derive(Clone, Debug)]
pub struct ValuationHandle<V: BaseValuation> {
    base: V,
    rank: usize,
    coord: usize,
    steps: Vec<Step<V>>,
    levels: Vec<LevelData<Elem<V>>>,
}

/// Generators of `Gamma_nu` and of `Gamma_{nu, deg nu}` with the index between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueGroupData {
    pub gens: Vec<ExtValue>,
    pub gens_below: Vec<ExtValue>,
    pub e_rel: u64,
}

/// Result of a truncation: the value and the attaining digit indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation<E> {
    pub value: ExtValue,
    pub attaining: Vec<usize>,
    pub digits: Vec<Poly<E>>,
}

impl<V: BaseValuation> ValuationHandle<V> {
    /// `[v; phi0, gamma0]`, evaluating `sum a_i phi0^i` as `min v(a_i) + i gamma0`.
    /// `coord` is the 0-based coordinate carrying `v(K*)`.
    pub fn make_degree_one(base: V, rank: usize, coord: usize, phi0: P<V>, gamma0: ExtValue) -> Result<Self> {
        if rank == 0 || coord >= rank {
            return domain("embedding coordinate outside the ambient rank");
        }
        let k = base.field();
        if phi0.degree() != Some(1) || !phi0.is_monic(k) {
            return domain("root key polynomial must be monic of degree one");
        }
        check_rank(&gamma0, rank)?;
        let mut h = ValuationHandle {
            base,
            rank,
            coord,
            steps: vec![Step { phi: phi0, gamma: gamma0, evidence: None }],
            levels: Vec::new(),
        };
        h.rebuild_levels(0)?;
        Ok(h)
    }

    /// `[self; phi, gamma]`. An equivalent key of the same degree replaces
    /// the last step, keeping the chain optimal.
    pub fn augment(&self, phi: P<V>, gamma: ExtValue) -> Result<Self> {
        let k = self.field();
        if !phi.is_monic(k) || phi.deg0() == 0 {
            return domain("key polynomial must be monic of positive degree");
        }
        check_rank(&gamma, self.rank)?;
        if self.last_gamma().is_infinite() {
            return domain("cannot augment a valuation with nonzero support");
        }
        let current = self.evaluate(&phi);
        if gamma <= current {
            return Err(Error::MonotonicityViolation { current: current.to_string() });
        }
        let case = self.mlv_key_case(&phi)?.ok_or_else(|| Error::KeyRequired(phi.format(k, "x")))?;
        let mut h = self.clone();
        let last = self.depth();
        let from = if case == MlvCase::Equivalent {
            let evidence = h.steps[last].evidence.clone();
            h.steps[last] = Step { phi, gamma, evidence };
            last
        } else {
            h.steps.push(Step { phi, gamma, evidence: Some(case) });
            last + 1
        };
        h.rebuild_levels(from)?;
        Ok(h)
    }

    /// Builds a chain from `(phi, gamma)` pairs, the first being the root.
    pub fn from_chain(base: V, rank: usize, coord: usize, chain: Vec<(P<V>, ExtValue)>) -> Result<Self> {
        let mut it = chain.into_iter();
        let (phi0, g0) = it.next().ok_or_else(|| Error::Domain("empty chain".into()))?;
        let mut h = Self::make_degree_one(base, rank, coord, phi0, g0)?;
        for (phi, g) in it {
            h = h.augment(phi, g)?;
        }
        Ok(h)
    }

    pub fn base(&self) -> &V {
        &self.base
    }

    pub fn field(&self) -> &V::F {
        self.base.field()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coord(&self) -> usize {
        self.coord
    }

    pub fn steps(&self) -> &[Step<V>] {
        &self.steps
    }

    /// Number of augmentations after the root.
    pub fn depth(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.phi_min().deg0()
    }

    /// The last key polynomial, a key of minimal degree.
    pub fn phi_min(&self) -> &P<V> {
        &self.steps.last().expect("nonempty").phi
    }

    pub fn last_gamma(&self) -> &ExtValue {
        &self.steps.last().expect("nonempty").gamma
    }

    /// The valuation `mu_j` given by the first `j` augmentations.
    pub fn prefix(&self, j: usize) -> Self {
        assert!(j <= self.depth());
        ValuationHandle {
            base: self.base.clone(),
            rank: self.rank,
            coord: self.coord,
            steps: self.steps[..=j].to_vec(),
            levels: self.levels[..=j].to_vec(),
        }
    }

    /// Whether `self` is a prefix of `other` as chains.
    pub fn is_prefix_of(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.coord == other.coord
            && self.steps.len() <= other.steps.len()
            && self.steps.iter().zip(&other.steps).all(|(a, b)| a.phi == b.phi && a.gamma == b.gamma)
    }

    pub fn base_value(&self, a: &Elem<V>) -> ExtValue {
        match self.base.value(a) {
            None => ExtValue::Infinity,
            Some(n) => ExtValue::at(self.rank, self.coord, int(n)),
        }
    }

    /// The value group of the base field, by generators.
    pub fn base_gens(&self) -> Vec<ExtValue> {
        if self.base.is_trivial() {
            Vec::new()
        } else {
            vec![ExtValue::at(self.rank, self.coord, int(1))]
        }
    }

    pub fn evaluate(&self, f: &P<V>) -> ExtValue {
        self.eval_at(self.depth(), f)
    }

    /// Value under the level-`j` valuation of the chain.
    pub(crate) fn eval_at(&self, j: usize, f: &P<V>) -> ExtValue {
        let Some(d) = f.degree() else {
            return ExtValue::Infinity;
        };
        if d == 0 {
            return self.base_value(&f.coeffs()[0]);
        }
        let i = (0..=j).rev().find(|&i| self.steps[i].phi.deg0() <= d).expect("root has degree one");
        let step = &self.steps[i];
        let digits = f.q_expansion(self.field(), &step.phi).expect("monic key");
        let mut best = ExtValue::Infinity;
        for (s, a) in digits.iter().enumerate() {
            if a.is_zero() || (s > 0 && step.gamma.is_infinite()) {
                continue;
            }
            let va = if i == 0 { self.base_value(&a.coeffs()[0]) } else { self.eval_at(i - 1, a) };
            let v = if s == 0 { va } else { va.add(&step.gamma.mul_int(s as i64)) };
            if v < best {
                best = v;
            }
        }
        best
    }

    /// `nu_Q(f) = min nu(a_s Q^s)` with the attaining indices.
    pub fn truncate_eval(&self, q: &P<V>, f: &P<V>) -> Result<Truncation<Elem<V>>> {
        self.truncation_at(self.depth(), q, &self.evaluate(q), f)
    }

    pub(crate) fn truncation_at(
        &self,
        level: usize,
        q: &P<V>,
        q_value: &ExtValue,
        f: &P<V>,
    ) -> Result<Truncation<Elem<V>>> {
        let digits = f.q_expansion(self.field(), q)?;
        let mut value = ExtValue::Infinity;
        let mut attaining = Vec::new();
        for (s, a) in digits.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let va = self.eval_at(level, a);
            let v = if s == 0 {
                va
            } else if q_value.is_infinite() {
                ExtValue::Infinity
            } else {
                va.add(&q_value.mul_int(s as i64))
            };
            match v.cmp(&value) {
                std::cmp::Ordering::Less => {
                    value = v;
                    attaining = vec![s];
                }
                std::cmp::Ordering::Equal => attaining.push(s),
                std::cmp::Ordering::Greater => {}
            }
        }
        Ok(Truncation { value, attaining, digits })
    }

    /// `f ~ g`: equal values and `nu(f - g) > nu(f)`.
    pub fn equivalent_in(&self, f: &P<V>, g: &P<V>) -> Result<bool> {
        if f.is_zero() || g.is_zero() {
            return domain("equivalence of the zero polynomial");
        }
        let vf = self.evaluate(f);
        if vf != self.evaluate(g) {
            return Ok(false);
        }
        if vf.is_infinite() {
            return Ok(true);
        }
        Ok(self.evaluate(&f.sub(self.field(), g)) > vf)
    }

    /// Generators of the value groups and the relative ramification index.
    pub fn value_group_data(&self) -> Result<ValueGroupData> {
        if self.steps.iter().any(|s| s.gamma.is_infinite()) {
            return domain("value group of a valuation with nonzero support");
        }
        let mut gens = self.base_gens();
        gens.extend(self.steps.iter().map(|s| s.gamma.clone()));
        let deg = self.degree();
        let mut below = self.base_gens();
        below.extend(self.steps.iter().filter(|s| s.phi.deg0() < deg).map(|s| s.gamma.clone()));
        let e = self.e_rel().ok_or_else(|| Error::Incommensurable(self.last_gamma().to_string()))?;
        Ok(ValueGroupData { gens, gens_below: below, e_rel: e })
    }

    pub fn e_rel(&self) -> Option<u64> {
        self.levels.last().and_then(|l| l.e)
    }

    /// Residue field of the valuation, when finite.
    pub fn residue_field(&self) -> Option<FiniteField> {
        self.levels.last().and_then(|l| l.kappa.clone())
    }

    /// Canonical normalizer with value `e_rel * nu(phi_min)`, as a formal product.
    pub fn normalizer(&self) -> Option<&[(P<V>, i64)]> {
        self.levels.last().and_then(|l| l.u.as_deref())
    }

    /// Formats a formal product of polynomials.
    pub fn format_factors(&self, fs: &[(P<V>, i64)]) -> String {
        if fs.is_empty() {
            return "1".into();
        }
        fs.iter()
            .map(|(p, n)| {
                let s = p.format(self.field(), "x");
                let s = if p.coeffs().len() > 1 || s.contains(' ') { format!("({s})") } else { s };
                if *n == 1 {
                    s
                } else {
                    format!("{s}^{n}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn rebuild_levels(&mut self, from: usize) -> Result<()> {
        self.levels.truncate(from);
        for j in from..self.steps.len() {
            let data = self.compute_level(j)?;
            self.levels.push(data);
        }
        Ok(())
    }

    /// Indices `i` whose key is the last of its degree block, with degree
    /// below `deg`.
    fn block_last_below(&self, upto: usize, deg: usize) -> Vec<usize> {
        (0..upto)
            .filter(|&i| {
                let d = self.steps[i].phi.deg0();
                d < deg && self.steps[i + 1].phi.deg0() > d
            })
            .collect()
    }

    fn compute_level(&self, j: usize) -> Result<LevelData<Elem<V>>> {
        let k = self.field().clone();
        let mut data = LevelData { kappa: None, z: None, e: None, u: None };
        if j == 0 {
            data.kappa = self.base.residue_field();
        } else {
            let prev = &self.levels[j - 1];
            if let (Some(kappa), Some(_), Some(_)) = (&prev.kappa, prev.e, &prev.u) {
                let kappa = kappa.clone();
                let psi = self.residual_at(j - 1, &self.steps[j - 1].phi.clone(), &self.steps[j].phi.clone(), None)?;
                if psi.r.deg0() == 1 {
                    data.z = Some(kappa.neg(&psi.r.coeff(&kappa, 0)));
                    data.kappa = Some(kappa);
                } else {
                    let ext = kappa.extend(psi.r, &format!("z{j}"))?;
                    data.z = Some(ext.generator());
                    data.kappa = Some(ext);
                }
            }
        }
        let gamma = self.steps[j].gamma.clone();
        if gamma.is_finite() {
            let deg = self.steps[j].phi.deg0();
            let lows = self.block_last_below(j, deg);
            let mut labels: Vec<P<V>> = Vec::new();
            let mut gens = Vec::new();
            if let Some(pi) = self.base.uniformizer() {
                labels.push(Poly::constant(&k, pi));
                gens.push(ExtValue::at(self.rank, self.coord, int(1)));
            }
            for &i in &lows {
                labels.push(self.steps[i].phi.clone());
                gens.push(self.steps[i].gamma.clone());
            }
            let mut sup = gens.clone();
            sup.push(gamma.clone());
            if let Some(e) = lattice::index(&gens, &sup, self.rank) {
                let e = e.to_u64().expect("small ramification index");
                let target = gamma.mul_int(e as i64);
                let n = lattice::solve(&gens, &target).expect("e * gamma lies in the lower group");
                let u: Vec<(P<V>, i64)> = labels
                    .into_iter()
                    .zip(n)
                    .filter(|(_, c)| *c != BigInt::from(0))
                    .map(|(p, c)| (p, c.to_i64().expect("small exponent")))
                    .collect();
                data.e = Some(e);
                data.u = Some(u);
            }
        }
        Ok(data)
    }

    pub(crate) fn level(&self, j: usize) -> &LevelData<Elem<V>> {
        &self.levels[j]
    }

    pub fn describe(&self) -> String {
        let k = self.field();
        let mut parts = vec![self.base.describe()];
        for s in &self.steps {
            parts.push(format!("{} -> {}", s.phi.format(k, "x"), s.gamma));
        }
        format!("[{}]", parts.join("; "))
    }
}

fn check_rank(g: &ExtValue, rank: usize) -> Result<()> {
    match g.rank() {
        Some(r) if r != rank => Err(Error::RankMismatch { expected: rank, found: r }),
        _ => Ok(()),
    }
}

/// `Phi_{mu,nu}` for nested chains: the first key of `nu` beyond `mu`.
pub fn phi_class<V: BaseValuation>(mu: &ValuationHandle<V>, nu: &ValuationHandle<V>) -> Result<(P<V>, usize)> {
    if !mu.is_prefix_of(nu) || mu.steps.len() == nu.steps.len() {
        return Err(Error::NotComparable);
    }
    let phi = nu.steps[mu.steps.len()].phi.clone();
    let d = phi.deg0();
    Ok((phi, d))
}

#[cfg(test)]
mod tests;
