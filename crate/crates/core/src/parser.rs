//! Polynomial expressions and germ specification files.
//!
//! Expression grammar (standard precedence, no implicit multiplication):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?        right-associative
//! atom    := literal | identifier | '(' expr ')'
//! literal := digits ('/' digits)?
//! ```
//!
//! Exponents must evaluate to non-negative integer constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, Rational};
use crate::poly::{Polynomial, Vars};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("malformed literal '{0}'")]
    MalformedLiteral(String),
    #[error("unbalanced parentheses")]
    UnbalancedParens,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent must be a non-negative integer constant")]
    NonIntegerExponent,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected token '{0}'")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

/// Expression error with the byte offset where it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(n) => Rational(n.clone()).to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((i, Tok::Plus)),
            b'-' => out.push((i, Tok::Minus)),
            b'*' => out.push((i, Tok::Star)),
            b'^' => out.push((i, Tok::Caret)),
            b'(' => out.push((i, Tok::LParen)),
            b')' => out.push((i, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num_end = i;
                let mut den = None;
                if i < bytes.len() && bytes[i] == b'/' {
                    let ds = i + 1;
                    let mut j = ds;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == ds {
                        return Err(ParseError {
                            offset: start,
                            kind: ParseErrorKind::MalformedLiteral(src[start..j].to_string()),
                        });
                    }
                    den = Some(&src[ds..j]);
                    i = j;
                }
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'.' || bytes[i] == b'_') {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'.' || bytes[j] == b'_') {
                        j += 1;
                    }
                    return Err(ParseError {
                        offset: start,
                        kind: ParseErrorKind::MalformedLiteral(src[start..j].to_string()),
                    });
                }
                let num: BigInt = src[start..num_end].parse().expect("digits");
                let value = match den {
                    None => BigRational::from_integer(num),
                    Some(d) => {
                        let d: BigInt = d.parse().expect("digits");
                        if d.is_zero() {
                            return Err(ParseError {
                                offset: start,
                                kind: ParseErrorKind::MalformedLiteral(src[start..i].to_string()),
                            });
                        }
                        BigRational::new(num, d)
                    }
                };
                out.push((start, Tok::Num(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::UnexpectedChar(ch),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind,
        }
    }

    fn expr(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            if let Some(Tok::Minus) = self.peek() {
                return Err(self.err(ParseErrorKind::NegativeExponent));
            }
            let e = self.power()?;
            let e = exponent_value(&e).map_err(|kind| ParseError { offset: at, kind })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>, ParseError> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Polynomial::constant(self.vars, Rational(n))),
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.vars, i)),
                None => Err(ParseError {
                    offset,
                    kind: ParseErrorKind::UnknownIdentifier(name),
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(self.err(ParseErrorKind::UnexpectedToken(self.peek().expect("some").text()))),
                    None => Err(ParseError {
                        offset,
                        kind: ParseErrorKind::UnbalancedParens,
                    }),
                }
            }
            Tok::RParen => Err(ParseError {
                offset,
                kind: ParseErrorKind::UnbalancedParens,
            }),
            other => Err(ParseError {
                offset,
                kind: ParseErrorKind::UnexpectedToken(other.text()),
            }),
        }
    }
}

fn exponent_value(e: &Polynomial<Rational>) -> Result<u32, ParseErrorKind> {
    if !e.is_constant() {
        return Err(ParseErrorKind::NonIntegerExponent);
    }
    let c = e.constant_term();
    if c.0.is_negative() {
        return Err(ParseErrorKind::NegativeExponent);
    }
    if !c.0.is_integer() {
        return Err(ParseErrorKind::NonIntegerExponent);
    }
    match c.0.to_integer().to_u32() {
        Some(v) if v <= MAX_EXPONENT => Ok(v),
        _ => Err(ParseErrorKind::ExponentTooLarge),
    }
}

/// Parses an arithmetic expression over `vars` into an exact polynomial.
pub fn parse_polynomial(src: &str, vars: &Vars) -> Result<Polynomial<Rational>, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        vars,
    };
    let out = p.expr()?;
    if let Some(tok) = p.peek() {
        let kind = if *tok == Tok::RParen {
            ParseErrorKind::UnbalancedParens
        } else {
            ParseErrorKind::UnexpectedToken(tok.text())
        };
        return Err(p.err(kind));
    }
    Ok(out)
}

/// Germ or unfolding specification file.
///
/// ```json
/// { "name": "crosscap", "components": ["x", "y^2", "x*y"] }
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl GermSpec {
    pub fn new<S: Into<String>>(components: [S; 3]) -> Self {
        GermSpec {
            name: None,
            parameter: None,
            components: components.into_iter().map(Into::into).collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_parameter(mut self) -> Self {
        self.parameter = Some("t".to_string());
        self
    }

    pub fn is_unfolding(&self) -> bool {
        self.parameter.is_some()
    }

    /// Variables the components are parsed over: `(x, y)` or `(x, y, t)`.
    pub fn source_vars(&self) -> Vars {
        if self.is_unfolding() {
            Vars::new(&["x", "y", "t"])
        } else {
            Vars::new(&["x", "y"])
        }
    }

    /// Parses the three components (validation included).
    pub fn parse_components(&self) -> Result<[Polynomial<Rational>; 3], SpecError> {
        if let Some(p) = &self.parameter {
            if p != "t" {
                return Err(SpecError::BadParameter(p.clone()));
            }
        }
        if self.components.len() != 3 {
            return Err(SpecError::ComponentCount(self.components.len()));
        }
        let vars = self.source_vars();
        let mut out = Vec::with_capacity(3);
        for (i, src) in self.components.iter().enumerate() {
            let p = parse_polynomial(src, &vars).map_err(|source| SpecError::Component { index: i, source })?;
            check_vanishing(&p, self.is_unfolding()).map_err(|_| SpecError::ConstantTerm { index: i })?;
            out.push(p);
        }
        Ok(out.try_into().expect("three components"))
    }

    /// Canonical JSON used for hashing and `catalog show`.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Every monomial must contain `x` or `y` (index 0 or 1).
fn check_vanishing(p: &Polynomial<Rational>, unfolding: bool) -> Result<(), ()> {
    if unfolding {
        if p.terms().any(|(m, _)| m.exp(0) == 0 && m.exp(1) == 0) {
            return Err(());
        }
    } else if !p.constant_term().is_zero() {
        return Err(());
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid germ document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected exactly 3 components, found {0}")]
    ComponentCount(usize),
    #[error("only the parameter name 't' is supported, found '{0}'")]
    BadParameter(String),
    #[error("component {index}: {source}")]
    Component {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("nonzero constant term in component {index} (byte 0): a germ must vanish at the origin")]
    ConstantTerm { index: usize },
}

/// Reads and validates a germ document (JSON, UTF-8).
pub fn load_germ_spec(doc: &str) -> Result<GermSpec, SpecError> {
    let spec: GermSpec = serde_json::from_str(doc)?;
    spec.parse_components()?;
    Ok(spec)
}
