//! Text entry for polynomials and rationals.
//!
//! The expression grammar is deliberately small:
//!
//! ```text
//! expr   := [ '-' ] term { ( '+' | '-' ) term }
//! term   := factor { '*' factor }
//! factor := atom [ '^' integer ]
//! atom   := integer [ '/' integer ] | variable | '(' expr ')'
//! ```
//!
//! Multiplication must be written explicitly (`2*x`, never `2x`), `^` takes
//! a literal non-negative integer exponent, and `/` is only the separator
//! inside a rational literal such as `5/2`.  Every error carries the
//! character offset it was raised at.  [`crate::poly::Polynomial::render`]
//! emits text that re-parses to the same polynomial.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::{Polynomial, Rational};

/// An ordered list of distinct variable names fixing the coordinate system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableContext {
    names: Vec<String>,
}

impl VariableContext {
    /// Validates that every name is an ASCII identifier (letter or `_`
    /// first, then letters, digits, `_`) and that the names are distinct.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Invalid("at least one variable is required".into()));
        }
        for name in &names {
            let mut chars = name.chars();
            let head_ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !head_ok || !name.chars().skip(1).all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Invalid(format!("invalid variable name {name:?}")));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::Invalid(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(VariableContext { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Token {
    Integer(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(Token, usize)>,
    end: usize,
}

fn err_at(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Lexer, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => { tokens.push((Token::Plus, i)); i += 1; }
            '-' => { tokens.push((Token::Minus, i)); i += 1; }
            '*' => { tokens.push((Token::Star, i)); i += 1; }
            '/' => { tokens.push((Token::Slash, i)); i += 1; }
            '^' => { tokens.push((Token::Caret, i)); i += 1; }
            '(' => { tokens.push((Token::LParen, i)); i += 1; }
            ')' => { tokens.push((Token::RParen, i)); i += 1; }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits.parse::<BigInt>().expect("digits parse as integer");
                tokens.push((Token::Integer(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((Token::Ident(chars[start..i].iter().collect()), start));
            }
            other => return Err(err_at(i, format!("unexpected character {other:?}"))),
        }
    }
    Ok(Lexer { tokens, end: chars.len() })
}

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    end: usize,
    ctx: &'a VariableContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<&(Token, usize)> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Token::Caret)) {
            return Ok(base);
        }
        self.bump();
        let offset = self.offset();
        match self.bump() {
            Some((Token::Integer(e), _)) => {
                let exp = u32::try_from(e).map_err(|_| err_at(offset, "exponent too large"))?;
                Ok(base.pow(exp))
            }
            Some((Token::Minus, _)) => Err(err_at(offset, "exponent must be non-negative")),
            _ => Err(err_at(offset, "'^' must be followed by an integer literal")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        let offset = self.offset();
        match self.bump().cloned() {
            Some((Token::Integer(n), _)) => {
                // An integer may continue as a rational literal `p/q`.
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    let den_offset = self.offset();
                    match self.bump().cloned() {
                        Some((Token::Integer(d), _)) => {
                            if d.is_zero() {
                                return Err(err_at(den_offset, "zero denominator"));
                            }
                            Ok(Polynomial::constant(self.ctx.len(), Rational::new(n, d)))
                        }
                        _ => Err(err_at(
                            den_offset,
                            "'/' is only allowed between integer literals",
                        )),
                    }
                } else {
                    Ok(Polynomial::constant(self.ctx.len(), Rational::from_integer(n)))
                }
            }
            Some((Token::Ident(name), o)) => match self.ctx.index_of(&name) {
                Some(var) => Ok(Polynomial::variable(self.ctx.len(), var)),
                None => Err(err_at(o, format!("unknown variable {name:?}"))),
            },
            Some((Token::LParen, o)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Token::RParen, _)) => Ok(inner),
                    _ => Err(err_at(o, "unclosed parenthesis")),
                }
            }
            Some((tok, o)) => Err(err_at(o, format!("unexpected token {tok:?}"))),
            None => Err(err_at(offset, "unexpected end of input")),
        }
    }
}

/// Parses an expression in the variables of `ctx` into a [`Polynomial`].
pub fn parse_polynomial(text: &str, ctx: &VariableContext) -> Result<Polynomial, Error> {
    let lexer = lex(text)?;
    let mut parser = Parser { tokens: &lexer.tokens, pos: 0, end: lexer.end, ctx };
    if parser.peek().is_none() {
        return Err(err_at(0, "empty input"));
    }
    let poly = parser.expr()?;
    if let Some((tok, o)) = parser.tokens.get(parser.pos) {
        return Err(err_at(*o, format!("unexpected token {tok:?} after expression")));
    }
    Ok(poly)
}

/// Parses a rational literal of the form `p`, `-p`, `p/q`, or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let lexer = lex(text)?;
    let mut toks = lexer.tokens.iter();
    let mut negative = false;
    let mut next = toks.next();
    if let Some((Token::Minus, _)) = next {
        negative = true;
        next = toks.next();
    }
    let numer = match next {
        Some((Token::Integer(n), _)) => n.clone(),
        Some((_, o)) => return Err(err_at(*o, "expected an integer")),
        None => return Err(err_at(lexer.end, "expected an integer")),
    };
    let denom = match toks.next() {
        None => BigInt::from(1),
        Some((Token::Slash, o)) => match toks.next() {
            Some((Token::Integer(d), od)) => {
                if d.is_zero() {
                    return Err(err_at(*od, "zero denominator"));
                }
                d.clone()
            }
            Some((_, od)) => return Err(err_at(*od, "expected a denominator")),
            None => return Err(err_at(*o + 1, "expected a denominator")),
        },
        Some((tok, o)) => return Err(err_at(*o, format!("unexpected token {tok:?}"))),
    };
    if let Some((_, o)) = toks.next() {
        return Err(err_at(*o, "trailing input after rational"));
    }
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rational, rational_int, Exponent};
    use proptest::prelude::*;

    fn ctx() -> VariableContext {
        VariableContext::new(vec!["x", "y"]).unwrap()
    }

    #[test]
    fn parses_standard_forms() {
        let f = parse_polynomial("x^2 + y^3", &ctx()).unwrap();
        assert_eq!(f.render(&["x", "y"]), "y^3 + x^2");

        let g = parse_polynomial("x^2*y^2 + x^5 + y^5", &ctx()).unwrap();
        assert_eq!(g.num_terms(), 3);
        assert_eq!(g.coeff(&Exponent::new(vec![2, 2])), Some(&rational_int(1)));

        let h = parse_polynomial("1/2*x - 3*y + 2", &ctx()).unwrap();
        assert_eq!(h.coeff(&Exponent::new(vec![1, 0])), Some(&rational(1, 2)));
        assert_eq!(h.constant_term(), rational_int(2));

        // parenthesized expressions with powers
        let p = parse_polynomial("(x + y)^2 - x^2 - y^2", &ctx()).unwrap();
        assert_eq!(
            p,
            Polynomial::monomial(2, Exponent::new(vec![1, 1]), rational_int(2))
        );

        // leading minus
        let m = parse_polynomial("-x^2 + y", &ctx()).unwrap();
        assert_eq!(m.coeff(&Exponent::new(vec![2, 0])), Some(&rational_int(-1)));
    }

    #[test]
    fn rejects_malformed_input_with_offsets() {
        // implicit multiplication
        let err = parse_polynomial("2x", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 1, .. }), "{err}");

        // unknown variable
        let err = parse_polynomial("x + z", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 4, .. }), "{err}");

        // negative exponent
        let err = parse_polynomial("x^-1", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }), "{err}");

        // division by a variable
        let err = parse_polynomial("x/2", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");

        // unclosed parenthesis
        let err = parse_polynomial("(x + y", &ctx()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 0, .. }), "{err}");

        assert!(parse_polynomial("", &ctx()).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("5/2").unwrap(), rational(5, 2));
        assert_eq!(parse_rational("-2/4").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rational_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn context_validation() {
        assert!(VariableContext::new(vec!["x", "x"]).is_err());
        assert!(VariableContext::new(vec!["2x"]).is_err());
        assert!(VariableContext::new(Vec::<String>::new()).is_err());
        assert!(VariableContext::new(vec!["x_1", "y2"]).is_ok());
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..5, 2),
                (-9i64..=9, 1i64..=5),
            ),
            0..6,
        )
        .prop_map(|terms| {
            Polynomial::from_terms(
                2,
                terms
                    .into_iter()
                    .map(|(e, (n, d))| (Exponent::new(e), rational(n, d))),
            )
        })
    }

    proptest! {
        /// render ∘ parse is the identity on canonical text.
        #[test]
        fn render_parse_round_trip(p in small_poly()) {
            let names = ["x", "y"];
            let text = p.render(&names);
            let back = parse_polynomial(&text, &ctx()).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.render(&names), text);
        }
    }
}
