//! Finite-rank lexicographically ordered groups `Q^r` extended by `inf`,
//! principal convex subgroups, and the VB/HB/UB trichotomy for strictly
//! increasing sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An element of `Q^r_lex` or the symbol `inf`.
///
/// Ordering assumes both operands share a rank; use [`lex_compare`] when the
/// ranks come from untrusted input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(Vec<Rat>),
    Infinity,
}

impl ExtValue {
    pub fn zero(rank: usize) -> Self {
        ExtValue::Finite(vec![Rat::zero(); rank])
    }

    /// `q` placed at `coord` (0-based), zero elsewhere.
    pub fn at(rank: usize, coord: usize, q: Rat) -> Self {
        let mut v = vec![Rat::zero(); rank];
        v[coord] = q;
        ExtValue::Finite(v)
    }

    pub fn from_coords(coords: Vec<Rat>) -> Self {
        ExtValue::Finite(coords)
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            ExtValue::Finite(c) => Some(c.len()),
            ExtValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExtValue::Finite(c) => c.iter().all(Zero::is_zero),
            ExtValue::Infinity => false,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtValue::Finite(c) => c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()),
            ExtValue::Infinity => true,
        }
    }

    pub fn coords(&self) -> Option<&[Rat]> {
        match self {
            ExtValue::Finite(c) => Some(c),
            ExtValue::Infinity => None,
        }
    }

    pub fn add(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                debug_assert_eq!(a.len(), b.len());
                ExtValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => ExtValue::Infinity,
        }
    }

    /// `self - other`; `None` when `other` is infinite.
    pub fn checked_sub(&self, other: &ExtValue) -> Option<ExtValue> {
        match (self, other) {
            (_, ExtValue::Infinity) => None,
            (ExtValue::Infinity, _) => Some(ExtValue::Infinity),
            (ExtValue::Finite(a), ExtValue::Finite(b)) => {
                Some(ExtValue::Finite(a.iter().zip(b).map(|(x, y)| x - y).collect()))
            }
        }
    }

    /// Finite subtraction. Panics if `other` is infinite.
    pub fn sub(&self, other: &ExtValue) -> ExtValue {
        self.checked_sub(other).expect("subtracting infinity")
    }

    pub fn neg(&self) -> Option<ExtValue> {
        match self {
            ExtValue::Finite(a) => Some(ExtValue::Finite(a.iter().map(|x| -x).collect())),
            ExtValue::Infinity => None,
        }
    }

    /// Rational scaling in the divisible hull. `inf` is fixed by positive
    /// scalars; scaling `inf` by a non-positive rational is rejected.
    pub fn scale(&self, q: &Rat) -> Option<ExtValue> {
        match self {
            ExtValue::Finite(a) => Some(ExtValue::Finite(a.iter().map(|x| x * q).collect())),
            ExtValue::Infinity if q.is_positive() => Some(ExtValue::Infinity),
            ExtValue::Infinity => None,
        }
    }

    pub fn mul_int(&self, n: i64) -> ExtValue {
        if n == 0 {
            return match self {
                ExtValue::Finite(a) => ExtValue::zero(a.len()),
                ExtValue::Infinity => panic!("0 * inf"),
            };
        }
        self.scale(&int(n)).expect("0 * inf or negative inf")
    }

    pub fn div_int(&self, n: i64) -> ExtValue {
        assert!(n > 0);
        self.scale(&rat(1, n)).expect("positive scaling")
    }

    /// Parses `inf`, `3/2`, or `(1/2,-3)`.
    pub fn parse(text: &str) -> Result<ExtValue> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "inf" || s == "∞" {
            return Ok(ExtValue::Infinity);
        }
        let inner = match (s.strip_prefix('('), s.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => s.as_str(),
            _ => return domain(format!("unbalanced parentheses in value `{text}`")),
        };
        if inner.is_empty() {
            return domain("empty value");
        }
        inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(ExtValue::Finite)
    }

    /// Parses and checks the rank.
    pub fn parse_with_rank(text: &str, rank: usize) -> Result<ExtValue> {
        let v = ExtValue::parse(text)?;
        match v.rank() {
            Some(r) if r != rank => Err(Error::RankMismatch { expected: rank, found: r }),
            _ => Ok(v),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || Error::Domain(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rational(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Infinity => write!(f, "inf"),
            ExtValue::Finite(c) if c.len() == 1 => write!(f, "{}", fmt_rational(&c[0])),
            ExtValue::Finite(c) => {
                let parts: Vec<String> = c.iter().map(fmt_rational).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Infinity, ExtValue::Infinity) => Ordering::Equal,
            (ExtValue::Infinity, _) => Ordering::Greater,
            (_, ExtValue::Infinity) => Ordering::Less,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
        }
    }
}

/// Lexicographic comparison with a rank check.
pub fn lex_compare(a: &ExtValue, b: &ExtValue) -> Result<Ordering> {
    if let (Some(ra), Some(rb)) = (a.rank(), b.rank()) {
        if ra != rb {
            return Err(Error::RankMismatch { expected: ra, found: rb });
        }
    }
    Ok(a.cmp(b))
}

/// Position (1-based) of the leading nonzero coordinate of `gamma`: the
/// principal convex subgroup it generates is `{x : x_j = 0 for j < index}`.
pub fn principal_convex_index(gamma: &ExtValue) -> Result<usize> {
    match gamma {
        ExtValue::Infinity => domain("principal convex subgroup of inf"),
        ExtValue::Finite(c) => match c.iter().position(|x| !x.is_zero()) {
            Some(i) => Ok(i + 1),
            None => domain("principal convex subgroup of 0"),
        },
    }
}

/// One coordinate of an affine tail: `intercept + slope * n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCoord {
    pub slope: Rat,
    pub intercept: Rat,
}

impl AffineCoord {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        AffineCoord { slope, intercept }
    }

    pub fn constant(c: Rat) -> Self {
        AffineCoord { slope: Rat::zero(), intercept: c }
    }
}

/// How an affine tail relates to the true sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// The tail gives the elements exactly.
    Exact,
    /// The tail is a lower envelope; only unboundedness can be concluded.
    LowerEnvelope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    ExplicitOnly,
    /// Elements with index `n > prefix.len()` (1-based).
    Affine {
        coords: Vec<AffineCoord>,
        kind: TailKind,
    },
    /// `None` asserts that the sequence has no upper bound at all.
    AssertedSupremum(Option<ExtValue>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDescriptor {
    pub prefix: Vec<ExtValue>,
    pub tail: Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundedness {
    VB,
    HB,
    UB,
}

impl fmt::Display for Boundedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Boundedness::VB => "VB",
            Boundedness::HB => "HB",
            Boundedness::UB => "UB",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqClassification {
    pub class: Boundedness,
    /// 1-based index of the principal convex subgroup `H_S`.
    pub hs_index: usize,
    pub witness: String,
}

impl SequenceDescriptor {
    pub fn new(prefix: Vec<ExtValue>, tail: Tail) -> Self {
        SequenceDescriptor { prefix, tail }
    }

    fn rank(&self) -> Option<usize> {
        self.prefix.iter().find_map(ExtValue::rank).or(match &self.tail {
            Tail::Affine { coords, .. } => Some(coords.len()),
            Tail::AssertedSupremum(Some(s)) => s.rank(),
            _ => None,
        })
    }

    /// The `n`-th element (1-based), when the descriptor determines it.
    pub fn element(&self, n: usize) -> Option<ExtValue> {
        if n == 0 {
            return None;
        }
        if n <= self.prefix.len() {
            return Some(self.prefix[n - 1].clone());
        }
        match &self.tail {
            Tail::Affine { coords, kind: TailKind::Exact } => {
                let nn = int(n as i64);
                Some(ExtValue::Finite(coords.iter().map(|c| &c.intercept + &c.slope * &nn).collect()))
            }
            _ => None,
        }
    }

    fn validate_prefix(&self) -> Result<()> {
        let rank = self.rank();
        for (i, g) in self.prefix.iter().enumerate() {
            if g.is_infinite() {
                return domain("sequence elements must be finite");
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank.unwrap_or(0), found: g.rank().unwrap_or(0) });
            }
            if !g.is_positive() {
                return domain(format!("element {} is not positive", i + 1));
            }
            if i > 0 && self.prefix[i - 1] >= *g {
                return domain(format!("elements {} and {} are not strictly increasing", i, i + 1));
            }
        }
        Ok(())
    }

    fn prefix_hs(&self) -> Option<usize> {
        self.prefix.iter().filter_map(|g| principal_convex_index(g).ok()).min()
    }
}

/// Decides VB/HB/UB from the descriptor. Explicit-only data is refused.
pub fn classify_sequence(seq: &SequenceDescriptor) -> Result<SeqClassification> {
    seq.validate_prefix()?;
    match &seq.tail {
        Tail::ExplicitOnly => Err(Error::NotClassifiable("finite data cannot decide boundedness".into())),
        Tail::AssertedSupremum(sup) => classify_asserted(seq, sup.as_ref()),
        Tail::Affine { coords, kind } => classify_affine(seq, coords, *kind),
    }
}

fn classify_asserted(seq: &SequenceDescriptor, sup: Option<&ExtValue>) -> Result<SeqClassification> {
    let hs =
        seq.prefix_hs().ok_or_else(|| Error::NotClassifiable("an asserted tail needs a nonempty prefix".into()))?;
    let Some(sup) = sup else {
        return Ok(SeqClassification {
            class: Boundedness::UB,
            hs_index: hs,
            witness: "asserted: no upper bound".into(),
        });
    };
    if sup.is_infinite() {
        return domain("asserted supremum must be finite");
    }
    if seq.prefix.iter().any(|g| g >= sup) {
        return domain("asserted supremum does not bound the prefix");
    }
    let sup_index = principal_convex_index(sup)?;
    let class = if sup_index >= hs { Boundedness::VB } else { Boundedness::HB };
    Ok(SeqClassification { class, hs_index: hs, witness: format!("asserted supremum {sup} lies in H_{sup_index}") })
}

fn classify_affine(seq: &SequenceDescriptor, coords: &[AffineCoord], kind: TailKind) -> Result<SeqClassification> {
    if let Some(r) = seq.prefix.first().and_then(ExtValue::rank) {
        if r != coords.len() {
            return Err(Error::RankMismatch { expected: r, found: coords.len() });
        }
    }
    let growth = coords.iter().position(|c| !c.slope.is_zero());
    let Some(growth) = growth else {
        return domain("affine tail is constant, hence not strictly increasing");
    };
    if coords[growth].slope.is_negative() {
        return domain("affine tail is decreasing");
    }
    let first_tail = seq.prefix.len() + 1;

    if kind == TailKind::LowerEnvelope {
        if growth == 0 {
            return Ok(SeqClassification {
                class: Boundedness::UB,
                hs_index: 1,
                witness: format!("lower envelope grows in coordinate 1 with slope {}", fmt_rational(&coords[0].slope)),
            });
        }
        return Err(Error::NotClassifiable("a lower envelope only certifies growth in the leading coordinate".into()));
    }

    let first = seq.element(first_tail).expect("exact tail");
    if !first.is_positive() {
        return domain("first tail element is not positive");
    }
    if let Some(last) = seq.prefix.last() {
        if *last >= first {
            return domain("tail does not continue the strict increase");
        }
    }
    let tail_hs = coords
        .iter()
        .position(|c| !(c.slope.is_zero() && c.intercept.is_zero()))
        .map(|i| i + 1)
        .expect("nonzero slope exists");
    let hs = seq.prefix_hs().map_or(tail_hs, |p| p.min(tail_hs));
    let h0 = hs - 1;

    if growth == h0 {
        if hs == 1 {
            return Ok(SeqClassification {
                class: Boundedness::UB,
                hs_index: hs,
                witness: "coordinate 1 grows without bound".into(),
            });
        }
        let mut bound = vec![Rat::zero(); coords.len()];
        bound[h0 - 1] = Rat::one();
        return Ok(SeqClassification {
            class: Boundedness::HB,
            hs_index: hs,
            witness: format!("coordinate {hs} grows without bound; {} bounds S outside H_S", ExtValue::Finite(bound)),
        });
    }
    // growth happens strictly below the H_S coordinate, which is eventually constant
    let max_h = seq
        .prefix
        .iter()
        .filter_map(|g| g.coords().map(|c| c[h0].clone()))
        .chain(std::iter::once(coords[h0].intercept.clone()))
        .max()
        .expect("nonempty");
    let mut bound = vec![Rat::zero(); coords.len()];
    bound[h0] = max_h + Rat::one();
    Ok(SeqClassification {
        class: Boundedness::VB,
        hs_index: hs,
        witness: format!("{} bounds S inside H_S", ExtValue::Finite(bound)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[(i64, i64)]) -> ExtValue {
        ExtValue::Finite(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn lex_order_examples() {
        assert_eq!(lex_compare(&v(&[(0, 1), (1, 1)]), &v(&[(1, 1), (0, 1)])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&ExtValue::Infinity, &v(&[(1_000_000, 1), (0, 1)])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&v(&[(1, 2), (-3, 1)]), &v(&[(1, 2), (-3, 1)])).unwrap(), Ordering::Equal);
        assert!(matches!(lex_compare(&v(&[(1, 1)]), &v(&[(1, 1), (0, 1)])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn principal_index_examples() {
        assert_eq!(principal_convex_index(&v(&[(0, 1), (5, 1)])).unwrap(), 2);
        assert_eq!(principal_convex_index(&v(&[(1, 1), (17, 1)])).unwrap(), 1);
        assert_eq!(principal_convex_index(&v(&[(0, 1), (0, 1), (7, 3)])).unwrap(), 3);
        assert!(principal_convex_index(&ExtValue::zero(2)).is_err());
        assert!(principal_convex_index(&ExtValue::Infinity).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(ExtValue::parse("(1/2, -3)").unwrap(), v(&[(1, 2), (-3, 1)]));
        assert_eq!(ExtValue::parse("3/2").unwrap(), v(&[(3, 2)]));
        assert_eq!(ExtValue::parse("inf").unwrap(), ExtValue::Infinity);
        assert_eq!(v(&[(1, 2), (-3, 1)]).to_string(), "(1/2,-3)");
        assert_eq!(v(&[(6, 4)]).to_string(), "3/2");
        assert!(ExtValue::parse("(1,2").is_err());
        assert!(ExtValue::parse("1/0").is_err());
        assert!(ExtValue::parse_with_rank("(1,2)", 3).is_err());
    }

    #[test]
    fn explicit_only_is_refused() {
        let s = SequenceDescriptor::new(vec![v(&[(1, 1)]), v(&[(2, 1)])], Tail::ExplicitOnly);
        assert!(matches!(classify_sequence(&s), Err(Error::NotClassifiable(_))));
    }

    #[test]
    fn non_increasing_prefix_is_a_domain_error() {
        let s = SequenceDescriptor::new(vec![v(&[(2, 1)]), v(&[(2, 1)])], Tail::AssertedSupremum(None));
        assert!(matches!(classify_sequence(&s), Err(Error::Domain(_))));
        let s = SequenceDescriptor::new(vec![v(&[(-1, 1)])], Tail::AssertedSupremum(None));
        assert!(matches!(classify_sequence(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn lower_envelope_only_certifies_ub() {
        let tail = Tail::Affine { coords: vec![AffineCoord::new(int(2), int(1))], kind: TailKind::LowerEnvelope };
        let s = SequenceDescriptor::new(vec![v(&[(2, 1)])], tail);
        assert_eq!(classify_sequence(&s).unwrap().class, Boundedness::UB);
        let tail = Tail::Affine {
            coords: vec![AffineCoord::constant(int(0)), AffineCoord::new(int(1), int(0))],
            kind: TailKind::LowerEnvelope,
        };
        let s = SequenceDescriptor::new(vec![], tail);
        assert!(classify_sequence(&s).is_err());
    }
}
