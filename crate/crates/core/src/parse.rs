//! Plain-text grammar: polynomials, ideals, fractional ideals, rational
//! functions, and star-operation terms.
//!
//! Polynomial terms look like `3*X^2*Y - 1/2*Z + 5`. Variable names are
//! case-sensitive, `^` takes powers, rational coefficients are written
//! `a/b`, prime-field coefficients as integers. Inside a polynomial a `/`
//! is only a coefficient separator between two integer literals; any other
//! `/` ends the polynomial, which is what lets `Y/(X+Y*Z)` parse as a
//! rational function.

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Lexed {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(s: &str) -> Result<Lexed> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: u64 = s[start..i]
                .parse()
                .map_err(|_| Error::parse(start, "integer literal too large"))?;
            toks.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric()
                    || bytes[i] == b'_'
                    || bytes[i] == b'\'')
            {
                i += 1;
            }
            toks.push((Tok::Ident(s[start..i].to_string()), start));
        } else if "+-*^/(),[]=".contains(c) {
            toks.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(Lexed { toks, end: s.len() })
}

struct Parser {
    lexed: Lexed,
    pos: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Parser> {
        Ok(Parser { lexed: lex(s)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lexed.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.lexed.toks.get(self.pos + 1).map(|(t, _)| t)
    }

    fn at(&self) -> usize {
        self.lexed
            .toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.lexed.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lexed.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(Error::parse(self.at(), format!("expected {c:?}")))
        }
    }

    fn expect_ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => Err(Error::parse(self.at(), "expected identifier")),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.lexed.toks.len()
    }

    fn expect_done(&self) -> Result<()> {
        if self.done() {
            Ok(())
        } else {
            Err(Error::parse(self.at(), "trailing input"))
        }
    }

    // ---- polynomial grammar ----

    fn poly_expr(&mut self, ring: &Ring) -> Result<Poly> {
        let mut neg = false;
        if self.eat_sym('-') {
            neg = true;
        } else {
            let _ = self.eat_sym('+');
        }
        let mut acc = {
            let t = self.poly_term(ring)?;
            if neg {
                t.neg()
            } else {
                t
            }
        };
        loop {
            if self.eat_sym('+') {
                let t = self.poly_term(ring)?;
                acc = acc.add(&t);
            } else if self.eat_sym('-') {
                let t = self.poly_term(ring)?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self, ring: &Ring) -> Result<Poly> {
        let mut acc = self.poly_factor(ring)?;
        while self.eat_sym('*') {
            let f = self.poly_factor(ring)?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn poly_factor(&mut self, ring: &Ring) -> Result<Poly> {
        let base = self.poly_atom(ring)?;
        if self.eat_sym('^') {
            match self.next() {
                Some(Tok::Int(n)) => {
                    let n = u32::try_from(n)
                        .map_err(|_| Error::parse(self.at(), "exponent too large"))?;
                    Ok(base.pow(n))
                }
                _ => Err(Error::parse(self.at(), "expected exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn poly_atom(&mut self, ring: &Ring) -> Result<Poly> {
        let at = self.at();
        match self.next() {
            Some(Tok::Int(n)) => {
                let num = i64::try_from(n).map_err(|_| Error::parse(at, "literal too large"))?;
                // Int '/' Int is a rational coefficient literal.
                if self.peek() == Some(&Tok::Sym('/')) {
                    if let Some(Tok::Int(_)) = self.peek2() {
                        self.pos += 1; // '/'
                        let d = match self.next() {
                            Some(Tok::Int(d)) => d,
                            _ => unreachable!(),
                        };
                        let den =
                            i64::try_from(d).map_err(|_| Error::parse(at, "literal too large"))?;
                        let c = ring.field().from_ratio(num, den)?;
                        return Ok(Poly::constant(ring, c));
                    }
                }
                Ok(Poly::constant(ring, ring.field().from_i64(num)))
            }
            Some(Tok::Ident(name)) => Poly::var(ring, &name)
                .map_err(|_| Error::parse(at, format!("unknown variable {name}"))),
            Some(Tok::Sym('(')) => {
                let inner = self.poly_expr(ring)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Some(Tok::Sym('-')) => {
                let inner = self.poly_atom(ring)?;
                Ok(inner.neg())
            }
            _ => Err(Error::parse(at, "expected polynomial atom")),
        }
    }

    // ---- star terms ----

    fn star_term(&mut self) -> Result<StarAst> {
        let at = self.at();
        let name = self.expect_ident()?;
        match name.as_str() {
            "d" => Ok(StarAst::D),
            "v" => Ok(StarAst::V),
            "t" => Ok(StarAst::T),
            "b" => Ok(StarAst::B),
            "custom_gcd_star" => Ok(StarAst::CustomGcdStar),
            "wedge" => {
                self.expect_sym('(')?;
                let mut members = Vec::new();
                loop {
                    members.push(self.overring_ref()?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                Ok(StarAst::Wedge(members))
            }
            "induced" => {
                self.expect_sym('(')?;
                let t = self.overring_ref()?;
                self.expect_sym(')')?;
                Ok(StarAst::Induced(t))
            }
            "tilde" => {
                self.expect_sym('(')?;
                let inner = self.star_term()?;
                self.expect_sym(',')?;
                self.expect_sym('[')?;
                let mut primes = Vec::new();
                loop {
                    primes.push(self.paren_poly_list()?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(']')?;
                self.expect_sym(')')?;
                Ok(StarAst::Tilde(Box::new(inner), primes))
            }
            "a_approx" => {
                self.expect_sym('(')?;
                let inner = self.star_term()?;
                self.expect_sym(',')?;
                let mut pool = String::from("default");
                let mut bound = 1u32;
                loop {
                    let key = self.expect_ident()?;
                    self.expect_sym('=')?;
                    match key.as_str() {
                        "pool" => pool = self.expect_ident()?,
                        "bound" => match self.next() {
                            Some(Tok::Int(n)) => bound = n as u32,
                            _ => return Err(Error::parse(self.at(), "expected bound integer")),
                        },
                        other => {
                            return Err(Error::parse(
                                self.at(),
                                format!("unknown a_approx key {other}"),
                            ))
                        }
                    }
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                Ok(StarAst::AApprox { inner: Box::new(inner), pool, bound })
            }
            "meet" => {
                self.expect_sym('(')?;
                let mut members = Vec::new();
                loop {
                    members.push(self.star_term()?);
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(')')?;
                Ok(StarAst::Meet(members))
            }
            other => Err(Error::parse(at, format!("unknown star constructor {other}"))),
        }
    }

    fn overring_ref(&mut self) -> Result<OverringRef> {
        let at = self.at();
        let name = self.expect_ident()?;
        match name.as_str() {
            "adjoin" => {
                self.expect_sym('(')?;
                let num = self.poly_text()?;
                self.expect_sym(',')?;
                let den = self.poly_text()?;
                self.expect_sym(')')?;
                Ok(OverringRef::Adjoin(num, den))
            }
            "loc" => {
                self.expect_sym('(')?;
                let gens = self.paren_poly_list()?;
                self.expect_sym(')')?;
                Ok(OverringRef::Localization(gens))
            }
            "dvr" => {
                self.expect_sym('(')?;
                let p = self.poly_text()?;
                self.expect_sym(')')?;
                Ok(OverringRef::Dvr(p))
            }
            "base" => Ok(OverringRef::Base),
            _ => {
                if self.peek() == Some(&Tok::Sym('(')) {
                    Err(Error::parse(at, format!("unknown overring constructor {name}")))
                } else {
                    Ok(OverringRef::Name(name))
                }
            }
        }
    }

    /// `(p, q, ...)` — a parenthesized comma list of polynomial texts.
    fn paren_poly_list(&mut self) -> Result<Vec<String>> {
        self.expect_sym('(')?;
        let mut items = Vec::new();
        loop {
            items.push(self.poly_text()?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        Ok(items)
    }

    /// Re-serialize tokens of one polynomial (up to a top-level ',' / ')' /
    /// ']') so it can be parsed later against a ring.
    fn poly_text(&mut self) -> Result<String> {
        let mut depth = 0usize;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => break,
                Some(Tok::Sym(c)) if depth == 0 && (*c == ',' || *c == ')' || *c == ']') => break,
                Some(tok) => {
                    match tok {
                        Tok::Sym('(') => depth += 1,
                        Tok::Sym(')') => depth -= 1,
                        _ => {}
                    }
                    match tok {
                        Tok::Ident(s) => {
                            out.push(' ');
                            out.push_str(s);
                        }
                        Tok::Int(n) => {
                            out.push(' ');
                            out.push_str(&n.to_string());
                        }
                        Tok::Sym(c) => {
                            out.push(' ');
                            out.push(*c);
                        }
                    }
                    self.pos += 1;
                }
            }
        }
        if out.trim().is_empty() {
            return Err(Error::parse(self.at(), "expected polynomial"));
        }
        Ok(out.trim().to_string())
    }
}

/// Syntax tree of a star-operation term; resolved against a base domain
/// and an overring environment when built.
#[derive(Debug, Clone, PartialEq)]
pub enum StarAst {
    D,
    V,
    T,
    B,
    CustomGcdStar,
    Wedge(Vec<OverringRef>),
    Induced(OverringRef),
    /// inner op, list of prime-ideal generator texts
    Tilde(Box<StarAst>, Vec<Vec<String>>),
    AApprox { inner: Box<StarAst>, pool: String, bound: u32 },
    Meet(Vec<StarAst>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OverringRef {
    Name(String),
    Adjoin(String, String),
    Localization(Vec<String>),
    Dvr(String),
    Base,
}

pub fn parse_poly(s: &str, ring: &Ring) -> Result<Poly> {
    let mut p = Parser::new(s)?;
    let poly = p.poly_expr(ring)?;
    p.expect_done()?;
    Ok(poly)
}

/// `ideal(f, g, ...)` or `(f, g, ...)` or a bare comma list.
pub fn parse_ideal_gens(s: &str, ring: &Ring) -> Result<Vec<Poly>> {
    let mut p = Parser::new(s)?;
    let wrapped = if p.peek() == Some(&Tok::Ident("ideal".to_string())) {
        p.pos += 1;
        p.expect_sym('(')?;
        true
    } else {
        p.eat_sym('(')
    };
    let mut gens = Vec::new();
    loop {
        gens.push(p.poly_expr(ring)?);
        if !p.eat_sym(',') {
            break;
        }
    }
    if wrapped {
        p.expect_sym(')')?;
    }
    p.expect_done()?;
    Ok(gens)
}

/// `frac(ideal(...), den)` or an ideal literal (denominator 1).
pub fn parse_frac_parts(s: &str, ring: &Ring) -> Result<(Vec<Poly>, Poly)> {
    let trimmed = s.trim_start();
    if trimmed.starts_with("frac") {
        let mut p = Parser::new(s)?;
        p.pos += 1; // frac
        p.expect_sym('(')?;
        if p.peek() != Some(&Tok::Ident("ideal".to_string())) {
            return Err(Error::parse(p.at(), "expected ideal(...)"));
        }
        p.pos += 1;
        p.expect_sym('(')?;
        let mut gens = Vec::new();
        loop {
            gens.push(p.poly_expr(ring)?);
            if !p.eat_sym(',') {
                break;
            }
        }
        p.expect_sym(')')?;
        p.expect_sym(',')?;
        let den = p.poly_expr(ring)?;
        p.expect_sym(')')?;
        p.expect_done()?;
        Ok((gens, den))
    } else {
        Ok((parse_ideal_gens(s, ring)?, Poly::one(ring)))
    }
}

/// `f` or `f/g`: a `/` not forming a rational literal splits num and den.
pub fn parse_rational_function(s: &str, ring: &Ring) -> Result<(Poly, Poly)> {
    let mut p = Parser::new(s)?;
    let num = p.poly_expr(ring)?;
    if p.done() {
        return Ok((num, Poly::one(ring)));
    }
    p.expect_sym('/')?;
    let den = p.poly_expr(ring)?;
    p.expect_done()?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((num, den))
}

pub fn parse_star_term(s: &str) -> Result<StarAst> {
    let mut p = Parser::new(s)?;
    let ast = p.star_term()?;
    p.expect_done()?;
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring() -> Ring {
        Ring::new(
            FieldSpec::Rationals,
            vec!["X".into(), "Y".into(), "Z".into()],
        )
    }

    #[test]
    fn poly_with_rational_coeff() {
        let r = ring();
        let p = parse_poly("3*X^2*Y - 1/2*Z + 5", &r).unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn rational_function_split() {
        let r = ring();
        let (n, d) = parse_rational_function("Y/(X+Y*Z)", &r).unwrap();
        assert_eq!(n.to_string(), "Y");
        assert_eq!(d.to_string(), "Y*Z + X");
        // coefficient fraction does not split
        let (n2, d2) = parse_rational_function("1/2*X", &r).unwrap();
        assert!(d2.is_one());
        assert_eq!(n2.to_string(), "1/2*X");
    }

    #[test]
    fn ideal_forms() {
        let r = ring();
        assert_eq!(parse_ideal_gens("ideal(X^2 - Y, X*Y)", &r).unwrap().len(), 2);
        assert_eq!(parse_ideal_gens("(X, Y)", &r).unwrap().len(), 2);
        let (gens, den) = parse_frac_parts("frac(ideal(X, Y), X*Y)", &r).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(den.to_string(), "X*Y");
    }

    #[test]
    fn star_terms() {
        assert_eq!(parse_star_term("d").unwrap(), StarAst::D);
        let w = parse_star_term("wedge(adjoin(X, Y), adjoin(Y, X))").unwrap();
        match w {
            StarAst::Wedge(ms) => assert_eq!(ms.len(), 2),
            _ => panic!(),
        }
        let t = parse_star_term("tilde(custom_gcd_star, [(X, Y)])").unwrap();
        match t {
            StarAst::Tilde(inner, primes) => {
                assert_eq!(*inner, StarAst::CustomGcdStar);
                assert_eq!(primes, vec![vec!["X".to_string(), "Y".to_string()]]);
            }
            _ => panic!(),
        }
        let a = parse_star_term("a_approx(d, pool=default, bound=3)").unwrap();
        match a {
            StarAst::AApprox { bound, .. } => assert_eq!(bound, 3),
            _ => panic!(),
        }
        assert!(parse_star_term("frobnicate").is_err());
    }

    #[test]
    fn empty_input_is_error() {
        let r = ring();
        assert!(parse_poly("", &r).is_err());
    }
}
