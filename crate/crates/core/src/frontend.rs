//! Expression grammar, parser and deterministic renderer.
//!
//! ```text
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := [rat] product
//! rat     := int ["/" int]
//! product := factor ["*" factor]          -- a*b*c is rejected
//! factor  := "x" int | "v" int | "(" expr ")"
//!          | "A(" expr "," expr "," expr ")" | "C(" expr "," expr ")"
//!          | "O(" expr "," expr ")" | "T(" expr "," expr "," expr "," expr ")"
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{expand_sugar, MagmaPoly, PolyError, Sugar};
use crate::scalar::{Field, Scalar};
use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("identity mixes generators and variables: {0} is not allowed in an identity")]
    MixedLetters(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Gen(u32),
    Var(u32),
    Sugar(Sugar),
    LParen,
    RParen,
    Star,
    Plus,
    Minus,
    Slash,
    Comma,
    Eq,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos: pos + 1,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '*' => out.push((start, Tok::Star)),
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '/' => out.push((start, Tok::Slash)),
            ',' => out.push((start, Tok::Comma)),
            '=' => out.push((start, Tok::Eq)),
            'x' | 'v' => {
                i += 1;
                let d = digits(&mut i);
                if d.is_empty() {
                    return Err(syntax(start, format!("expected an index after '{c}'")));
                }
                let k: u32 = d.parse().map_err(|_| syntax(start, "index too large"))?;
                if k == 0 || k > (u32::MAX >> 2) {
                    return Err(syntax(start, "indices start at 1"));
                }
                out.push((start, if c == 'x' { Tok::Gen(k) } else { Tok::Var(k) }));
                continue;
            }
            'A' | 'C' | 'O' | 'T' => {
                let kind = match c {
                    'A' => Sugar::Associator,
                    'C' => Sugar::Commutator,
                    'O' => Sugar::Circle,
                    _ => Sugar::Tch,
                };
                out.push((start, Tok::Sugar(kind)));
            }
            d if d.is_ascii_digit() => {
                let s = digits(&mut i);
                out.push((start, Tok::Int(s.parse().unwrap())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: Field,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(syntax(at, format!("expected {what}, found {t:?}"))),
            None => Err(syntax(at, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<MagmaPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MagmaPoly, ParseError> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            neg = true;
        }
        let mut coeff = BigRational::one();
        if let Some(Tok::Int(_)) = self.peek() {
            let Some(Tok::Int(num)) = self.bump() else { unreachable!() };
            let mut den = BigInt::one();
            if self.peek() == Some(&Tok::Slash) {
                self.bump();
                let at = self.here();
                match self.bump() {
                    Some(Tok::Int(d)) if !d.is_zero() => den = d,
                    _ => return Err(syntax(at, "expected a nonzero denominator")),
                }
            }
            coeff = BigRational::new(num, den);
        }
        if neg {
            coeff = -coeff;
        }
        // A bare `0` is the rendering of the zero polynomial.
        let bare = matches!(
            self.peek(),
            None | Some(Tok::Plus | Tok::Minus | Tok::RParen | Tok::Comma | Tok::Eq)
        );
        if bare && self.pos > 0 && matches!(self.toks[self.pos - 1].1, Tok::Int(_)) {
            if coeff.is_zero() {
                return Ok(MagmaPoly::zero(self.field));
            }
            return Err(syntax(self.here(), "constant terms are not allowed"));
        }
        let p = self.product()?;
        let c = Scalar::from_rational(self.field, &coeff).map_err(PolyError::from)?;
        Ok(p.scale(&c))
    }

    fn product(&mut self) -> Result<MagmaPoly, ParseError> {
        let a = self.factor()?;
        if self.peek() != Some(&Tok::Star) {
            return Ok(a);
        }
        self.bump();
        let b = self.factor()?;
        if self.peek() == Some(&Tok::Star) {
            return Err(syntax(self.here(), "chained product is ambiguous; parenthesize it"));
        }
        Ok(a.magma_mul(&b)?)
    }

    fn factor(&mut self) -> Result<MagmaPoly, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Gen(k)) => Ok(MagmaPoly::word(Word::gen(k), self.field)),
            Some(Tok::Var(k)) => Ok(MagmaPoly::word(Word::var(k), self.field)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Sugar(kind)) => {
                self.expect(Tok::LParen, "'(' after operator name")?;
                let mut args = vec![self.expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "')'")?;
                if args.len() != kind.arity() {
                    return Err(syntax(
                        at,
                        format!("{} takes {} arguments, got {}", kind.name(), kind.arity(), args.len()),
                    ));
                }
                Ok(expand_sugar(kind, &args)?)
            }
            Some(t) => Err(syntax(at, format!("unexpected {t:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression with rational coefficients.
pub fn parse_expr(text: &str) -> Result<MagmaPoly, ParseError> {
    parse_expr_in(text, Field::Rational)
}

pub fn parse_expr_in(text: &str, field: Field) -> Result<MagmaPoly, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.chars().count(),
        field,
    };
    if p.toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "trailing input"));
    }
    Ok(e)
}

/// Parses `lhs = rhs` (or a bare expression meaning `= 0`) over the formal
/// variables `v1, v2, ...`; generators are rejected.
pub fn parse_identity(text: &str) -> Result<MagmaPoly, ParseError> {
    let (lhs, rhs) = match text.find('=') {
        Some(i) => (&text[..i], &text[i + 1..]),
        None => (text, "0"),
    };
    let l = parse_expr(lhs)?;
    let r = if rhs.trim() == "0" {
        MagmaPoly::zero(Field::Rational)
    } else {
        parse_expr(rhs).map_err(|e| match e {
            ParseError::Syntax { pos, msg } => ParseError::Syntax {
                pos: pos + lhs.chars().count() + 1,
                msg,
            },
            e => e,
        })?
    };
    let f = l.checked_sub(&r)?;
    if let Some(g) = f.generators().into_iter().next() {
        return Err(ParseError::MixedLetters(format!("x{g}")));
    }
    Ok(f)
}

/// One identity per line; `#` starts a comment; blank lines are skipped.
pub fn parse_identity_file(text: &str) -> Result<Vec<MagmaPoly>, (usize, ParseError)> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_identity(line).map_err(|e| (n + 1, e))?);
    }
    Ok(out)
}

/// Joins `(name, coefficient)` pairs: `a + 2 b - c`, a leading negative unit
/// prints as `-1 a`, and the empty sum is `0`.
pub fn render_terms(items: &[(String, &Scalar)]) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (name, c)) in items.iter().enumerate() {
        if i == 0 {
            if !c.is_one() {
                s.push_str(&format!("{c} "));
            }
        } else {
            let (op, mag) = if c.is_negative() { ("-", -*c) } else { ("+", (*c).clone()) };
            s.push_str(&format!(" {op} "));
            if !mag.is_one() {
                s.push_str(&format!("{mag} "));
            }
        }
        s.push_str(name);
    }
    s
}

pub fn render_poly(p: &MagmaPoly) -> String {
    let items: Vec<(String, &Scalar)> = p.terms().map(|(w, c)| (w.to_string(), c)).collect();
    render_terms(&items)
}

/// Anything with a canonical text form.
pub fn render(e: &impl fmt::Display) -> String {
    e.to_string()
}

/// Converts an identity over variables into a polynomial on generators
/// `v_k -> x_k`.
pub fn vars_to_gens(p: &MagmaPoly) -> MagmaPoly {
    p.rename_letters(|l| Letter::Gen(l.index()))
}

pub fn gens_to_vars(p: &MagmaPoly) -> MagmaPoly {
    p.rename_letters(|l| Letter::Var(l.index()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_products_and_sugar() {
        let p = parse_expr("(x1*x2)*(x3*x4)").unwrap();
        assert_eq!(render_poly(&p), "(x1*x2)*(x3*x4)");
        let rs = parse_expr("A(v1,v2,v3) - A(v1,v3,v2)").unwrap();
        assert_eq!(rs.len(), 4);
        assert_eq!(parse_expr("T(x1,x2,x3,x4)").unwrap().len(), 6);
        assert_eq!(render_poly(&parse_expr("1/2 x1 - 3 x2*x1").unwrap()), "1/2 x1 - 3 x2*x1");
        assert!(parse_expr("0 x1 + x1 - x1").unwrap().is_zero());
    }

    #[test]
    fn rejects_chained_products_and_junk() {
        let e = parse_expr("x1*x2*x3").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { pos: 6, .. }), "{e}");
        assert!(parse_expr("x1 x2").is_err());
        assert!(parse_expr("A(x1,x2)").is_err());
        assert!(parse_expr("x0").is_err());
        assert!(parse_expr("(x1*x2").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1/0 x1").is_err());
    }

    #[test]
    fn identities() {
        let f = parse_identity("v1*A(v2,v3,v4) = A(v2,v3,v1*v4)").unwrap();
        assert_eq!(f.variables().len(), 4);
        assert!(matches!(parse_identity("v1*x2 = 0"), Err(ParseError::MixedLetters(_))));
        let file = "# rs\nA(v1,v2,v3) - A(v1,v3,v2) = 0\n\n(v1*v2)*(v3*v4) = 0 # met\n";
        assert_eq!(parse_identity_file(file).unwrap().len(), 2);
        assert_eq!(parse_identity_file("v1 = 0\nv1*").unwrap_err().0, 2);
    }

    #[test]
    fn zero_renders_as_zero() {
        assert_eq!(render_poly(&MagmaPoly::zero(Field::Rational)), "0");
    }

    #[test]
    fn residue_coefficients_round_trip() {
        let f = Field::prime(101).unwrap();
        let p = parse_expr_in("-1 x1 + 1/2 x2*x1", f).unwrap();
        let s = render_poly(&p);
        assert_eq!(s, "-1 x1 - 50 x2*x1");
        assert_eq!(parse_expr_in(&s, f).unwrap(), p);
    }

    fn arb_word(depth: u32) -> impl Strategy<Value = Word> {
        let leaf = (1u32..5).prop_map(Word::gen);
        leaf.prop_recursive(depth, 6, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| a.mul(&b)))
    }

    fn arb_poly() -> impl Strategy<Value = MagmaPoly> {
        prop::collection::vec((arb_word(5), -6i64..7, 1i64..4), 0..6).prop_map(|terms| {
            let mut p = MagmaPoly::zero(Field::Rational);
            for (w, n, d) in terms {
                if w.degree() <= 6 {
                    p.add_term(w, Scalar::Rational(BigRational::new(n.into(), d.into())));
                }
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parse_render_round_trip(p in arb_poly()) {
            let s = render_poly(&p);
            let q = parse_expr(&s).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(render_poly(&q), s);
        }
    }
}
