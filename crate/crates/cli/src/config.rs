//! Session configuration, JSON schema version 1.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use keyforge::algebra::{BaseValuation, FiniteField, PAdic, RationalFunctions, Rationals, TAdic, Trivial};
use keyforge::limitchain::{ChainRule, ChainSpec};
use keyforge::ordgroup::{parse_rational, AffineCoord, ExtValue, Tail, TailKind};
use keyforge::valuation::{ValuationHandle, P};
use serde::Deserialize;

use crate::parse::{parse_constant, parse_poly, Symbols};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub version: u32,
    pub base_field: FieldConfig,
    pub base_valuation: ValuationConfig,
    #[serde(default = "one")]
    pub ambient_rank: usize,
    pub chain: Vec<StepConfig>,
    #[serde(default)]
    pub limit_chain: Option<LimitConfig>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldConfig {
    Rationals,
    /// `F_p`, or `F_p[g]/(modulus)` with `modulus` listed from the constant term.
    Finite {
        p: u64,
        #[serde(default)]
        q: Option<u64>,
        #[serde(default)]
        modulus: Option<Vec<i64>>,
        #[serde(default = "generator")]
        generator: String,
    },
    /// `k(t)` with `k = Q` when `p` is absent.
    RationalFunctions {
        #[serde(default)]
        p: Option<u64>,
        #[serde(default)]
        q: Option<u64>,
        #[serde(default)]
        modulus: Option<Vec<i64>>,
        #[serde(default = "generator")]
        generator: String,
        #[serde(default = "variable")]
        variable: String,
    },
}

fn generator() -> String {
    "g".into()
}

fn variable() -> String {
    "t".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationConfig {
    /// `p-adic`, `t-adic` or `trivial`.
    pub kind: String,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(default)]
    pub embedding_coordinate: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    pub phi: String,
    pub gamma: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LimitConfig {
    Explicit {
        steps: Vec<StepConfig>,
        #[serde(default)]
        tail: TailConfig,
        #[serde(default)]
        declared_witness: Option<String>,
    },
    HenselSqrt {
        radicand: String,
        first: String,
        #[serde(default)]
        declared_witness: Option<String>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TailConfig {
    #[default]
    ExplicitOnly,
    /// `beta_n = intercept + slope * n` per coordinate, for `n` past the list.
    Affine {
        coords: Vec<AffineConfig>,
        #[serde(default = "yes")]
        exact: bool,
    },
    Supremum {
        value: String,
    },
    Unbounded,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineConfig {
    pub slope: String,
    pub intercept: String,
}

/// A parsed valuation with its optional continuous chain.
pub struct Ctx<V: BaseValuation> {
    pub nu: ValuationHandle<V>,
    pub limit: Option<ChainSpec<V>>,
}

pub enum Session {
    Padic(Ctx<PAdic>),
    RationalsTrivial(Ctx<Trivial<Rationals>>),
    FiniteTrivial(Ctx<Trivial<FiniteField>>),
    FunctionField(Ctx<TAdic<FiniteField>>),
    RationalFunctions(Ctx<TAdic<Rationals>>),
}

pub fn load(path: &Path) -> Result<SessionConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let cfg: SessionConfig = serde_json::from_str(&text)
        .map_err(|e| anyhow!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))?;
    if cfg.version != 1 {
        bail!("{}: unsupported config version {}", path.display(), cfg.version);
    }
    Ok(cfg)
}

fn finite_field(p: u64, q: Option<u64>, modulus: &Option<Vec<i64>>, generator: &str) -> Result<FiniteField> {
    let f = match modulus {
        None => FiniteField::prime(p)?,
        Some(m) => FiniteField::with_modulus(p, m, generator)?,
    };
    if let Some(q) = q {
        if f.order_u64() != Some(q) {
            bail!("base_field.q = {q} does not match the field of order {}", f.order());
        }
    }
    Ok(f)
}

pub fn poly<K: Symbols>(k: &K, what: &str, text: &str) -> Result<keyforge::algebra::Poly<K::Elem>> {
    parse_poly(k, text).map_err(|e| anyhow!("{what}: {e} in \"{text}\""))
}

fn value(what: &str, text: &str, rank: usize) -> Result<ExtValue> {
    ExtValue::parse_with_rank(text, rank).map_err(|e| anyhow!("{what}: {e}"))
}

impl SessionConfig {
    pub fn session(&self) -> Result<Session> {
        let kind = self.base_valuation.kind.as_str();
        let p = self.base_valuation.p;
        Ok(match (&self.base_field, kind) {
            (FieldConfig::Rationals, "p-adic") => {
                let p = p.ok_or_else(|| anyhow!("base_valuation.p is required for a p-adic valuation"))?;
                Session::Padic(self.build(PAdic::new(p)?)?)
            }
            (FieldConfig::Rationals, "trivial") => Session::RationalsTrivial(self.build(Trivial::new(Rationals))?),
            (FieldConfig::Finite { p, q, modulus, generator }, "trivial") => {
                Session::FiniteTrivial(self.build(Trivial::new(finite_field(*p, *q, modulus, generator)?))?)
            }
            (FieldConfig::RationalFunctions { p: Some(p), q, modulus, generator, variable }, "t-adic") => {
                let k = RationalFunctions::new(finite_field(*p, *q, modulus, generator)?, variable);
                Session::FunctionField(self.build(TAdic::new(k))?)
            }
            (FieldConfig::RationalFunctions { p: None, variable, .. }, "t-adic") => {
                Session::RationalFunctions(self.build(TAdic::new(RationalFunctions::new(Rationals, variable)))?)
            }
            (f, k) => bail!("unsupported combination: {k} valuation on {f:?}"),
        })
    }

    fn build<V: BaseValuation>(&self, base: V) -> Result<Ctx<V>>
    where
        V::F: Symbols,
    {
        let k = base.field().clone();
        let rank = self.ambient_rank;
        let steps = self
            .chain
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok((
                    poly(&k, &format!("chain[{i}].phi"), &s.phi)?,
                    value(&format!("chain[{i}].gamma"), &s.gamma, rank)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let nu = ValuationHandle::from_chain(base, rank, self.base_valuation.embedding_coordinate, steps)
            .context("invalid chain")?;
        let limit = match &self.limit_chain {
            None => None,
            Some(l) => Some(self.limit(&k, nu.clone(), l)?),
        };
        Ok(Ctx { nu, limit })
    }

    fn limit<V: BaseValuation>(&self, k: &V::F, base: ValuationHandle<V>, cfg: &LimitConfig) -> Result<ChainSpec<V>>
    where
        V::F: Symbols,
    {
        let rank = self.ambient_rank;
        let (rule, witness) = match cfg {
            LimitConfig::Explicit { steps, tail, declared_witness } => {
                let steps = steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        Ok((
                            poly(k, &format!("limit_chain.steps[{i}].phi"), &s.phi)?,
                            value(&format!("limit_chain.steps[{i}].gamma"), &s.gamma, rank)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (ChainRule::Explicit { steps, tail: self.tail(tail)? }, declared_witness)
            }
            LimitConfig::HenselSqrt { radicand, first, declared_witness } => {
                let c = |what: &str, t: &str| parse_constant(k, t).map_err(|e| anyhow!("limit_chain.{what}: {e}"));
                (
                    ChainRule::HenselSqrt { radicand: c("radicand", radicand)?, first: c("first", first)? },
                    declared_witness,
                )
            }
        };
        let chain = ChainSpec::new(base, rule).context("invalid limit chain")?;
        Ok(match witness {
            Some(w) => chain.with_witness(poly(k, "limit_chain.declared_witness", w)?),
            None => chain,
        })
    }

    fn tail(&self, t: &TailConfig) -> Result<Tail> {
        Ok(match t {
            TailConfig::ExplicitOnly => Tail::ExplicitOnly,
            TailConfig::Unbounded => Tail::AssertedSupremum(None),
            TailConfig::Supremum { value: v } => {
                Tail::AssertedSupremum(Some(value("limit_chain.tail.value", v, self.ambient_rank)?))
            }
            TailConfig::Affine { coords, exact } => {
                if coords.len() != self.ambient_rank {
                    bail!("limit_chain.tail.coords needs one entry per coordinate ({})", self.ambient_rank);
                }
                let coords = coords
                    .iter()
                    .map(|c| Ok(AffineCoord::new(parse_rational(&c.slope)?, parse_rational(&c.intercept)?)))
                    .collect::<Result<Vec<_>>>()?;
                Tail::Affine { coords, kind: if *exact { TailKind::Exact } else { TailKind::LowerEnvelope } }
            }
        })
    }
}

/// Convenience for commands: parse a polynomial over the session field.
pub fn arg_poly<V: BaseValuation>(nu: &ValuationHandle<V>, flag: &str, text: &str) -> Result<P<V>>
where
    V::F: Symbols,
{
    poly(nu.field(), flag, text)
}
