use std::fmt;

use anyhow::{anyhow, Result};
use keyforge::algebra::BaseValuation;
use keyforge::exec::Exec;
use keyforge::fixtures::{ft_three_level, q2_sqrt17, q2_two_step};
use keyforge::keypoly::{epsilon, is_abstract_key, Route, SearchBudget, Verdict};
use keyforge::limitchain::{
    chain_invariants, check_limit_theorems, classify_betas, stable_value, ChainSpec, CheckStatus, Stability,
};
use keyforge::suites::{
    boundedness_rows, chain_invariant_suite, epsilon_product_laws, residual_anchors, residual_multiplicativity,
    split_root_values, sqrt17_fixture, truncation_trichotomy, valuation_axioms, SuiteReport,
};
use keyforge::valuation::{ValuationHandle, P};
use keyforge::ExtValue;
use serde_json::{json, Value};

use crate::args::{ChainArgs, ChainCommand, Command};
use crate::config::{self, Ctx, Session};
use crate::parse::Symbols;

/// Bad input: unreadable config, malformed polynomial, missing option.
/// Reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(e: impl fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

/// Text lines, the structured payload, and whether the verdict is a success.
pub struct Outcome {
    pub text: Vec<String>,
    pub result: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: Vec<String>, result: Value) -> Self {
        Outcome { text, result, ok: true }
    }
}

pub fn run(cmd: &Command, exec: Exec) -> Result<Outcome> {
    if let Command::Selftest { quick, config } = cmd {
        let session = match config {
            Some(path) => Some(open(path)?),
            None => None,
        };
        return Ok(selftest(*quick, session.as_ref(), exec));
    }
    let path = match cmd {
        Command::Eval { config, .. }
        | Command::Expand { config, .. }
        | Command::Epsilon { config, .. }
        | Command::Iskey { config, .. }
        | Command::Residual { config, .. } => config,
        Command::Chain { command } => match command {
            ChainCommand::Invariants(a) | ChainCommand::Classify(a) | ChainCommand::Check(a) => &a.config,
            ChainCommand::Stable { config, .. } => config,
        },
        Command::Selftest { .. } => unreachable!(),
    };
    let out = match open(path)? {
        Session::Padic(c) => run_on(&c, cmd, exec),
        Session::RationalsTrivial(c) => run_on(&c, cmd, exec),
        Session::FiniteTrivial(c) => run_on(&c, cmd, exec),
        Session::FunctionField(c) => run_on(&c, cmd, exec),
        Session::RationalFunctions(c) => run_on(&c, cmd, exec),
    };
    out.map_err(|e| match e.downcast_ref::<keyforge::Error>() {
        Some(k) if rejects_input(k) => usage(k),
        _ => e,
    })
}

/// Errors meaning an argument violates a precondition, as opposed to a
/// computation that could not conclude.
fn rejects_input(e: &keyforge::Error) -> bool {
    use keyforge::Error::*;
    matches!(
        e,
        Domain(_)
            | RankMismatch { .. }
            | KeyRequired(_)
            | BadNormalizer(_)
            | MonotonicityViolation { .. }
            | DivisionByZero
    )
}

fn open(path: &std::path::Path) -> Result<Session> {
    config::load(path).and_then(|c| c.session()).map_err(|e| usage(format!("{e:#}")))
}

fn arg<V: BaseValuation>(nu: &ValuationHandle<V>, flag: &str, text: &str) -> Result<P<V>>
where
    V::F: Symbols,
{
    config::arg_poly(nu, flag, text).map_err(usage)
}

fn show<V: BaseValuation>(nu: &ValuationHandle<V>, f: &P<V>) -> String {
    f.format(nu.field(), "x")
}

fn run_on<V: BaseValuation>(ctx: &Ctx<V>, cmd: &Command, exec: Exec) -> Result<Outcome>
where
    V::F: Symbols,
{
    let nu = &ctx.nu;
    match cmd {
        Command::Eval { f, .. } => {
            let f = arg(nu, "-f", f)?;
            let v = nu.evaluate(&f);
            Ok(Outcome::ok(vec![v.to_string()], json!({"poly": show(nu, &f), "value": v.to_string()})))
        }
        Command::Expand { f, q, .. } => {
            let (f, q) = (arg(nu, "-f", f)?, arg(nu, "-q", q)?);
            let k = nu.field();
            if !q.is_monic(k) || q.is_constant() {
                return Err(usage("-q must be monic of positive degree"));
            }
            let digits = f.q_expansion(k, &q)?;
            let vq = nu.evaluate(&q);
            let tr = nu.truncate_eval(&q, &f)?;
            let mut text = Vec::new();
            let mut rows = Vec::new();
            for (i, a) in digits.iter().enumerate() {
                let term = nu.evaluate(a).add(&vq.mul_int(i as i64));
                text.push(format!("a_{i} = {}  value of a_{i} q^{i}: {term}", show(nu, a)));
                rows.push(json!({"index": i, "digit": show(nu, a), "term_value": term.to_string()}));
            }
            text.push(format!("truncated value = {}, attained at {}", tr.value, braces(&tr.attaining)));
            Ok(Outcome::ok(
                text,
                json!({"digits": rows, "truncated_value": tr.value.to_string(), "attaining": tr.attaining,
                       "value": nu.evaluate(&f).to_string()}),
            ))
        }
        Command::Epsilon { f, .. } => {
            let f = arg(nu, "-f", f)?;
            let r = epsilon(nu, &f)?;
            let mut text = vec![format!("epsilon = {}, I = {}", r.epsilon, braces(&r.i_set))];
            let mut rows = Vec::new();
            for row in &r.table {
                let q = row.quotient.as_ref().map_or("-inf".to_string(), ExtValue::to_string);
                text.push(format!("  b = {}: value of derivative {}, quotient {q}", row.b, row.derivative_value));
                rows.push(json!({"b": row.b, "derivative_value": row.derivative_value.to_string(), "quotient": q}));
            }
            Ok(Outcome::ok(
                text,
                json!({"epsilon": r.epsilon.to_string(), "i_set": r.i_set, "value": r.value.to_string(), "table": rows}),
            ))
        }
        Command::Iskey { q, budget, seed, .. } => {
            let q = arg(nu, "-q", q)?;
            let b = SearchBudget::new(*budget, *seed).with_exec(exec);
            let c = is_abstract_key(nu, &q, &b)?;
            let (why, route) = match &c.route {
                Route::Structural(r) => (format!("structural: {r}"), json!({"structural": r.to_string()})),
                Route::Falsified { witness, witness_epsilon } => (
                    format!("epsilon({}) = {witness_epsilon} is not below epsilon(q)", show(nu, witness)),
                    json!({"falsified": {"witness": show(nu, witness), "witness_epsilon": witness_epsilon.to_string()}}),
                ),
                Route::SampledOnly { tried } => {
                    (format!("no counterexample among {tried} lower-degree candidates"), json!({"sampled_only": tried}))
                }
            };
            let text = vec![
                format!("{}: {why}", c.verdict),
                format!("epsilon = {}", c.epsilon),
                format!("maximal: {}", if c.maximal { "yes" } else { "no" }),
            ];
            let result = json!({"verdict": c.verdict.to_string(), "route": route, "epsilon": c.epsilon.to_string(),
                                "maximal": c.maximal});
            Ok(Outcome { text, result, ok: c.verdict == Verdict::Yes })
        }
        Command::Residual { f, phi, u, .. } => {
            let (f, phi, u) = (arg(nu, "-f", f)?, arg(nu, "--phi", phi)?, arg(nu, "--u", u)?);
            let r = nu.residual_polynomial(&phi, &u, &f)?;
            let kappa = nu.residue_field().ok_or_else(|| anyhow!("the residue field is not finite"))?;
            let s = r.format(&kappa, "y");
            Ok(Outcome::ok(vec![format!("R(y) = {s}")], json!({"residual": s, "degree": r.deg0()})))
        }
        Command::Chain { command } => {
            let chain = ctx.limit.as_ref().ok_or_else(|| usage("the config has no limit_chain"))?;
            run_chain(chain, command, exec)
        }
        Command::Selftest { .. } => unreachable!("handled before dispatch"),
    }
}

fn braces(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn values(xs: &[ExtValue]) -> Vec<String> {
    xs.iter().map(ExtValue::to_string).collect()
}

fn witness<V: BaseValuation>(chain: &ChainSpec<V>, a: &ChainArgs) -> Result<Option<P<V>>>
where
    V::F: Symbols,
{
    match &a.witness {
        Some(w) => Ok(Some(arg(&chain.base(), "--witness", w)?)),
        None => Ok(chain.declared_witness().cloned()),
    }
}

fn run_chain<V: BaseValuation>(chain: &ChainSpec<V>, cmd: &ChainCommand, exec: Exec) -> Result<Outcome>
where
    V::F: Symbols,
{
    let base = chain.base();
    let need = |a: &ChainArgs| -> Result<P<V>> {
        witness(chain, a)?.ok_or_else(|| usage("no --witness given and the chain declares none"))
    };
    let _ = exec;
    match cmd {
        ChainCommand::Invariants(a) => {
            let phi = need(a)?;
            let inv = chain_invariants(chain, &phi, a.budget)?;
            let class = match &inv.classification {
                Ok(c) => format!("{}, H_S = coordinate {}", c.class, c.hs_index),
                Err(e) => format!("not classifiable: {e}"),
            };
            let text = vec![
                format!("witness {} at depth {}", show(&base, &inv.witness), inv.depth),
                format!("values: {}", values(&inv.values).join(", ")),
                format!("betas: {}", values(&inv.betas).join(", ")),
                format!("t: {:?}, stable from step {}", inv.t_sequence, inv.stabilization_index),
                format!("t_inf = {}, alpha_inf = {}", inv.t_inf, inv.alpha_inf),
                format!("b: {:?}, b_inf = {}, delta_inf = {}", inv.b_sequence, inv.b_inf, inv.delta_inf),
                format!("epsilon: {}", values(&inv.epsilon_sequence).join(", ")),
                format!("m = {}, m_inf = {}, mult = {}", inv.m, inv.m_inf, inv.mult),
                format!("class: {class}"),
            ];
            let result = json!({
                "witness": show(&base, &inv.witness), "depth": inv.depth,
                "values": values(&inv.values), "betas": values(&inv.betas),
                "t_sequence": inv.t_sequence, "stabilization_index": inv.stabilization_index,
                "t_inf": inv.t_inf, "alpha_inf": inv.alpha_inf.to_string(),
                "b_sequence": inv.b_sequence, "b_inf": inv.b_inf, "delta_inf": inv.delta_inf.to_string(),
                "epsilon_sequence": values(&inv.epsilon_sequence),
                "m": inv.m, "m_inf": inv.m_inf, "mult": inv.mult, "classification": class,
            });
            Ok(Outcome::ok(text, result))
        }
        ChainCommand::Classify(a) => {
            let (i0, from) = match witness(chain, a)? {
                Some(phi) => (chain_invariants(chain, &phi, a.budget)?.stabilization_index, "witness"),
                None => (1, "first step"),
            };
            let depth = chain.probe_limit(a.budget);
            match classify_betas(chain, i0, depth)? {
                Ok(c) => {
                    let line = format!("{}, H_S = coordinate {}", c.class, c.hs_index);
                    Ok(Outcome::ok(
                        vec![line.clone(), format!("  betas from step {i0} ({from}); {}", c.witness)],
                        json!({"class": c.class.to_string(), "hs_coordinate": c.hs_index, "from_step": i0,
                               "summary": line, "reason": c.witness}),
                    ))
                }
                Err(e) => Ok(Outcome {
                    text: vec![format!("not classifiable: {e}")],
                    result: json!({"class": Value::Null, "reason": e.to_string(), "from_step": i0}),
                    ok: false,
                }),
            }
        }
        ChainCommand::Check(a) => {
            let phi = need(a)?;
            let rep = check_limit_theorems(chain, &phi, a.budget)?;
            let text: Vec<String> = rep.lines.iter().map(ToString::to_string).collect();
            let lines: Vec<Value> = rep
                .lines
                .iter()
                .map(|l| {
                    let (status, detail) = match &l.status {
                        CheckStatus::Pass => ("pass", String::new()),
                        CheckStatus::Fail(w) => ("fail", w.clone()),
                        CheckStatus::Skipped(w) => ("skipped", w.clone()),
                    };
                    json!({"name": l.name, "status": status, "detail": detail})
                })
                .collect();
            Ok(Outcome { text, result: json!({"checks": lines, "passed": rep.passed()}), ok: rep.passed() })
        }
        ChainCommand::Stable { f, budget, .. } => {
            let f = arg(&base, "-f", f)?;
            Ok(match stable_value(chain, &f, *budget)? {
                Stability::Stable { value, at_index } => Outcome::ok(
                    vec![format!("stable: value {value} from step {}", at_index.saturating_sub(1))],
                    json!({"stable": true, "value": value.to_string(), "at_index": at_index}),
                ),
                Stability::NotStabilizedWithin { budget } => Outcome {
                    text: vec![format!("not stable within {budget} steps")],
                    result: json!({"stable": false, "budget": budget}),
                    ok: false,
                },
            })
        }
    }
}

fn selftest(quick: bool, session: Option<&Session>, e: Exec) -> Outcome {
    let n = if quick { 60 } else { 300 };
    let mut reports: Vec<SuiteReport> = vec![
        boundedness_rows(),
        sqrt17_fixture(6),
        chain_invariant_suite(6, n / 10, 7, e),
        valuation_axioms(&q2_two_step(), n, 8, 11, e),
        valuation_axioms(&ft_three_level(3), n, 8, 13, e),
        residual_anchors(&q2_two_step()),
        residual_anchors(&ft_three_level(3)),
    ];
    if let Ok(limit) = q2_sqrt17().materialize(5) {
        reports.push(residual_anchors(&limit));
    }
    if !quick {
        reports.push(split_root_values(e));
        reports.push(epsilon_product_laws(&q2_two_step(), n, 100, 31, e));
        reports.push(residual_multiplicativity(&q2_two_step(), 100, 6, 61, e));
        reports.push(truncation_trichotomy(200, 81, e).0);
    }
    if let Some(s) = session {
        match s {
            Session::Padic(c) => reports.extend(session_suites(c, n, e)),
            Session::RationalsTrivial(c) => reports.extend(session_suites(c, n, e)),
            Session::FiniteTrivial(c) => reports.extend(session_suites(c, n, e)),
            Session::FunctionField(c) => reports.extend(session_suites(c, n, e)),
            Session::RationalFunctions(c) => reports.extend(session_suites(c, n, e)),
        }
    }
    let ok = reports.iter().all(SuiteReport::passed);
    let text = reports.iter().map(ToString::to_string).collect();
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| json!({"name": r.name, "cases": r.cases, "failures": r.failures, "notes": r.notes, "passed": r.passed()}))
        .collect();
    Outcome { text, result: json!({"suites": suites, "passed": ok}), ok }
}

fn session_suites<V: BaseValuation>(ctx: &Ctx<V>, n: usize, e: Exec) -> Vec<SuiteReport> {
    vec![valuation_axioms(&ctx.nu, n, 6, 101, e), epsilon_product_laws(&ctx.nu, n, n / 10, 102, e)]
}
