//! Polynomial expressions in `z`.
//!
//! ```text
//! expr  := sign? term (('+' | '-') term)*
//! term  := coeff? ('*'? 'z' ('^' uint)?)?
//! coeff := int | int '/' uint
//! ```
//!
//! Whitespace is ignored and the Unicode minus sign is read as `-`.
//! Repeated powers are added up.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use wdeg_core::RationalPolynomial;

/// Parse failure at a character position of the original input (0-based).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

const MAX_EXPONENT: usize = 4096;

struct Lexer {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if matches!(c, '\u{2212}' | '\u{2013}') { '-' } else { c }))
            .collect();
        Self { chars, at: 0, end: src.chars().count() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(i, _)| i)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos(), message: message.into() })
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        (!s.is_empty()).then_some(s)
    }
}

/// Parses `src` into a polynomial; the zero polynomial is rejected.
pub fn parse_polynomial(src: &str) -> Result<RationalPolynomial, ParseError> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return lx.error("empty expression");
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut first = true;
    loop {
        let negative = if lx.eat('-') {
            true
        } else if lx.eat('+') || first {
            false
        } else {
            return lx.error(format!("expected '+' or '-', found '{}'", lx.peek().unwrap()));
        };
        first = false;
        let start = lx.pos();
        let (coeff, power) = term(&mut lx)?;
        if coeff.is_none() && power.is_none() {
            return Err(ParseError { position: start, message: "expected a term".into() });
        }
        let mut c = coeff.unwrap_or_else(BigRational::one);
        if negative {
            c = -c;
        }
        let k = power.unwrap_or(0);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += c;
        if lx.peek().is_none() {
            break;
        }
    }
    let p = RationalPolynomial::new(coeffs);
    if p.is_zero() {
        return Err(ParseError { position: 0, message: "the polynomial is zero".into() });
    }
    Ok(p)
}

fn term(lx: &mut Lexer) -> Result<(Option<BigRational>, Option<usize>), ParseError> {
    let mut coeff = None;
    if let Some(num) = lx.digits() {
        let num: BigInt = num.parse().unwrap();
        let den = if lx.eat('/') {
            match lx.digits() {
                Some(d) => d.parse::<BigInt>().unwrap(),
                None => return lx.error("expected a denominator after '/'"),
            }
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return lx.error("zero denominator");
        }
        coeff = Some(BigRational::new(num, den));
    }
    let star = coeff.is_some() && lx.eat('*');
    if lx.eat('z') {
        let power = if lx.eat('^') {
            let at = lx.pos();
            match lx.digits().and_then(|s| s.parse::<usize>().ok()) {
                Some(k) if k <= MAX_EXPONENT => k,
                Some(_) => {
                    return Err(ParseError { position: at, message: format!("exponent above {MAX_EXPONENT}") })
                }
                None => return lx.error("expected an exponent after '^'"),
            }
        } else {
            1
        };
        return Ok((coeff, Some(power)));
    }
    if star {
        return lx.error("expected 'z' after '*'");
    }
    match lx.peek() {
        None | Some('+') | Some('-') => Ok((coeff, None)),
        Some(c) => lx.error(format!("unexpected character '{c}'")),
    }
}
