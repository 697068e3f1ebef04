//! Polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! `x` is the polynomial variable; other symbols (`t`, a finite-field
//! generator) name constants of the base field. Division and negative
//! exponents are allowed only for nonzero constants.

use std::fmt;

use keyforge::algebra::{Field, FiniteField, Poly, RationalFunctions, Rationals};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Named constants of a base field.
pub trait Symbols: Field {
    fn symbols(&self) -> Vec<(String, Self::Elem)>;
}

impl Symbols for Rationals {
    fn symbols(&self) -> Vec<(String, Self::Elem)> {
        Vec::new()
    }
}

impl Symbols for FiniteField {
    fn symbols(&self) -> Vec<(String, Self::Elem)> {
        if self.is_prime_field() {
            Vec::new()
        } else {
            vec![(self.symbol().to_string(), self.generator())]
        }
    }
}

impl<F: Symbols> Symbols for RationalFunctions<F> {
    fn symbols(&self) -> Vec<(String, Self::Elem)> {
        let mut out = vec![(self.symbol().to_string(), self.t())];
        out.extend(self.coefficient_field().symbols().into_iter().map(|(s, c)| (s, self.from_coeff(c))));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Sym(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a, K: Symbols> {
    k: &'a K,
    symbols: Vec<(String, K::Elem)>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

type P<K> = Poly<<K as Field>::Elem>;

impl<K: Symbols> Parser<'_, K> {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<P<K>, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(self.k, &rhs) } else { acc.sub(self.k, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P<K>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let col = self.column();
            let rhs = self.unary()?;
            acc = if op == '*' {
                acc.mul(self.k, &rhs)
            } else {
                let inv = self.invert(&rhs).ok_or_else(|| ParseError {
                    column: col,
                    message: "division is only defined by nonzero constants".into(),
                })?;
                acc.scale(self.k, &inv)
            };
        }
        Ok(acc)
    }

    fn invert(&self, p: &P<K>) -> Option<K::Elem> {
        if p.is_zero() || p.deg0() > 0 {
            return None;
        }
        self.k.inv(&p.coeff(self.k, 0))
    }

    fn unary(&mut self) -> Result<P<K>, ParseError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg(self.k));
        }
        self.power()
    }

    fn power(&mut self) -> Result<P<K>, ParseError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek_op() == Some('-');
        if negative {
            self.pos += 1;
        }
        let col = self.column();
        let Some((_, Tok::Int(n))) = self.toks.get(self.pos).cloned() else {
            return self.fail("expected an integer exponent");
        };
        self.pos += 1;
        let e: u64 = n.try_into().map_err(|_| ParseError { column: col, message: "exponent too large".into() })?;
        if !negative {
            return Ok(base.pow(self.k, e));
        }
        let inv = self.invert(&base).ok_or_else(|| ParseError {
            column: col,
            message: "negative exponents are only defined for nonzero constants".into(),
        })?;
        Ok(Poly::constant(self.k, self.k.pow(&inv, e)))
    }

    fn atom(&mut self) -> Result<P<K>, ParseError> {
        let Some((col, tok)) = self.toks.get(self.pos).cloned() else {
            return self.fail("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Poly::constant(self.k, self.k.from_bigint(&n))),
            Tok::Sym(s) if s == "x" => Ok(Poly::x(self.k)),
            Tok::Sym(s) => match self.symbols.iter().find(|(name, _)| *name == s) {
                Some((_, c)) => Ok(Poly::constant(self.k, c.clone())),
                None => Err(ParseError { column: col, message: format!("unknown symbol '{s}'") }),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(ParseError { column: col, message: format!("unexpected '{c}'") }),
        }
    }
}

pub fn parse_poly<K: Symbols>(k: &K, text: &str) -> Result<Poly<K::Elem>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { k, symbols: k.symbols(), toks, pos: 0, end: text.chars().count() + 1 };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

/// A constant of the base field.
pub fn parse_constant<K: Symbols>(k: &K, text: &str) -> Result<K::Elem, ParseError> {
    let p = parse_poly(k, text)?;
    if p.deg0() > 0 {
        return Err(ParseError { column: 1, message: "expected a constant, found a polynomial in x".into() });
    }
    Ok(p.coeff(k, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_polynomials() {
        let q = Rationals;
        let f = parse_poly(&q, "x^3 - (1/2)*x + 2*(x+1)^2").unwrap();
        assert_eq!(f.format(&q, "x"), "x^3 + 2*x^2 + (7/2)*x + 2");
        assert_eq!(parse_poly(&q, " - x ^ 2 ").unwrap().format(&q, "x"), "-x^2");
        assert_eq!(parse_poly(&q, "2^-3").unwrap().format(&q, "x"), "1/8");
    }

    #[test]
    fn function_field_symbols() {
        let k = RationalFunctions::new(FiniteField::prime(3).unwrap(), "t");
        let f = parse_poly(&k, "x - t/(1-t)").unwrap();
        assert_eq!(parse_poly(&k, &f.format(&k, "x")).unwrap(), f);
        let g = FiniteField::with_modulus(2, &[1, 1, 1], "g").unwrap();
        let kg = RationalFunctions::new(g, "t");
        let h = parse_poly(&kg, "g*t*x^2 + (g+1)").unwrap();
        assert_eq!(parse_poly(&kg, &h.format(&kg, "x")).unwrap(), h);
    }

    #[test]
    fn errors_carry_columns() {
        let q = Rationals;
        assert_eq!(parse_poly(&q, "x + y").unwrap_err().column, 5);
        assert_eq!(parse_poly(&q, "x / x").unwrap_err().column, 5);
        assert_eq!(parse_poly(&q, "(x + 1").unwrap_err().column, 7);
        assert_eq!(parse_poly(&q, "x $").unwrap_err().column, 3);
        assert!(parse_poly(&q, "x^").is_err());
    }

    mod round_trip {
        use keyforge::algebra::{BaseValuation, PAdic, TAdic};
        use keyforge::ordgroup::{rat, ExtValue};
        use keyforge::sample::random_poly;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        use super::*;

        fn round_trips<V: BaseValuation>(base: &V, seed: u64) -> Result<(), TestCaseError>
        where
            V::F: Symbols,
        {
            let k = base.field();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_poly(base, &mut rng, 6);
            let printed = f.format(k, "x");
            let back = parse_poly(k, &printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
            prop_assert_eq!(back, f, "{}", printed);
            Ok(())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn rational_polynomials(seed in any::<u64>()) {
                round_trips(&PAdic::new(3).unwrap(), seed)?;
            }

            #[test]
            fn function_field_polynomials(seed in any::<u64>()) {
                round_trips(&TAdic::new(RationalFunctions::new(FiniteField::prime(3).unwrap(), "t")), seed)?;
                let f4 = FiniteField::with_modulus(2, &[1, 1, 1], "g").unwrap();
                round_trips(&TAdic::new(RationalFunctions::new(f4, "t")), seed)?;
                round_trips(&TAdic::new(RationalFunctions::new(Rationals, "t")), seed)?;
            }

            #[test]
            fn values(coords in prop::collection::vec((-50i64..50, 1i64..12), 1..4), inf in any::<bool>()) {
                let rank = coords.len();
                let v = if inf {
                    ExtValue::Infinity
                } else {
                    ExtValue::from_coords(coords.iter().map(|&(n, d)| rat(n, d)).collect())
                };
                let printed = v.to_string();
                prop_assert_eq!(ExtValue::parse_with_rank(&printed, rank).unwrap(), v, "{}", printed);
            }
        }
    }
}
