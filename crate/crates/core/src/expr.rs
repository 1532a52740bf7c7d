//! Expression trees and the literal syntax shared by families, radical
//! formulas and complex constants.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' int)?                        int may be signed or parenthesized
//! atom    := number | 'i' | symbol | '(' sum ')'
//! symbol  := 'z' | 'a' | 'a' digits | 'z' digits
//! ```
//!
//! Constant subtrees are folded while parsing, so printing a parsed tree and
//! parsing it again yields the same tree.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::{Complex, ComplexPoly};

/// Absolute modulus below which a divisor counts as zero.
pub const DIV_ZERO_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Root variable `z` of a family.
    Z,
    /// Family parameter `a`.
    A,
    /// Coefficient variable `a<k>` of a radical formula.
    Coeff(usize),
    /// Earlier level `z<k>` of a radical formula (1-based).
    Level(usize),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Z => f.write_str("z"),
            Symbol::A => f.write_str("a"),
            Symbol::Coeff(k) => write!(f, "a{k}"),
            Symbol::Level(k) => write!(f, "z{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex),
    Var(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("ParseError: unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("ParseError: unexpected {found} at offset {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("ParseError: unknown variable {name:?}")]
    UnknownVariable { name: String },
    #[error("ParseError: bad number {text:?}")]
    BadNumber { text: String },
    #[error("ParseError: variable {symbol} not allowed here")]
    DisallowedSymbol { symbol: Symbol },
    #[error("ParseError: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("DivisionByZero: divisor modulus {modulus:e}")]
    DivisionByZero { modulus: f64 },
    #[error("UnboundVariable: {0}")]
    UnboundVariable(Symbol),
}

impl Expr {
    pub fn constant(c: Complex) -> Expr {
        Expr::Const(c)
    }

    pub fn real(x: f64) -> Expr {
        Expr::Const(Complex::new(x, 0.0))
    }

    pub fn var(s: Symbol) -> Expr {
        Expr::Var(s)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Const(c) => Expr::Const(-c),
            e => Expr::Neg(Box::new(e)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Expr, r: Expr) -> Expr {
        match (l, r) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
            (l, r) => Expr::Add(Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(l: Expr, r: Expr) -> Expr {
        match (l, r) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
            (l, r) => Expr::Sub(Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: Expr, r: Expr) -> Expr {
        match (l, r) {
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
            (l, r) => Expr::Mul(Box::new(l), Box::new(r)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(l: Expr, r: Expr) -> Expr {
        match (l, r) {
            (Expr::Const(a), Expr::Const(b)) if b.norm() > DIV_ZERO_EPS => Expr::Const(a / b),
            (l, r) => Expr::Div(Box::new(l), Box::new(r)),
        }
    }

    pub fn pow(base: Expr, e: i32) -> Expr {
        match base {
            Expr::Const(c) if e >= 0 || c.norm() > DIV_ZERO_EPS => Expr::Const(c.powi(e)),
            b => Expr::Pow(Box::new(b), e),
        }
    }

    pub fn eval(&self, env: &dyn Fn(Symbol) -> Option<Complex>) -> Result<Complex, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(s) => env(*s).ok_or(EvalError::UnboundVariable(*s))?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(l, r) => l.eval(env)? + r.eval(env)?,
            Expr::Sub(l, r) => l.eval(env)? - r.eval(env)?,
            Expr::Mul(l, r) => l.eval(env)? * r.eval(env)?,
            Expr::Div(l, r) => {
                let num = l.eval(env)?;
                let den = r.eval(env)?;
                check_divisor(den)?;
                num / den
            }
            Expr::Pow(b, e) => {
                let base = b.eval(env)?;
                if *e < 0 {
                    check_divisor(base)?;
                }
                base.powi(*e)
            }
        })
    }

    /// All symbols referenced by the tree.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(s) => {
                out.insert(*s);
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.collect_symbols(out),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    /// Rewrites every symbol through `f`.
    pub fn map_symbols(&self, f: &dyn Fn(Symbol) -> Symbol) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var(s) => Expr::Var(f(*s)),
            Expr::Neg(e) => Expr::Neg(Box::new(e.map_symbols(f))),
            Expr::Pow(e, k) => Expr::Pow(Box::new(e.map_symbols(f)), *k),
            Expr::Add(l, r) => Expr::Add(Box::new(l.map_symbols(f)), Box::new(r.map_symbols(f))),
            Expr::Sub(l, r) => Expr::Sub(Box::new(l.map_symbols(f)), Box::new(r.map_symbols(f))),
            Expr::Mul(l, r) => Expr::Mul(Box::new(l.map_symbols(f)), Box::new(r.map_symbols(f))),
            Expr::Div(l, r) => Expr::Div(Box::new(l.map_symbols(f)), Box::new(r.map_symbols(f))),
        }
    }

    /// Expands a polynomial in `z` and `a` into its `z`-coefficients, each a
    /// polynomial in `a`. Division is allowed only by nonzero constants.
    pub fn expand_bivariate(&self) -> Result<Vec<ComplexPoly>, ParseError> {
        Ok(self.bivariate()?.0)
    }

    fn bivariate(&self) -> Result<Bivariate, ParseError> {
        Ok(match self {
            Expr::Const(c) => Bivariate::constant(*c),
            Expr::Var(Symbol::Z) => Bivariate(vec![ComplexPoly::zero(), ComplexPoly::constant(Complex::one())]).trim(),
            Expr::Var(Symbol::A) => Bivariate(vec![ComplexPoly::identity()]),
            Expr::Var(s) => return Err(ParseError::DisallowedSymbol { symbol: *s }),
            Expr::Neg(e) => e.bivariate()?.scale(-Complex::one()),
            Expr::Add(l, r) => l.bivariate()?.add(&r.bivariate()?),
            Expr::Sub(l, r) => l.bivariate()?.add(&r.bivariate()?.scale(-Complex::one())),
            Expr::Mul(l, r) => l.bivariate()?.mul(&r.bivariate()?),
            Expr::Div(l, r) => {
                let den = r.bivariate()?;
                match den.as_constant() {
                    Some(c) if c.norm() > DIV_ZERO_EPS => l.bivariate()?.scale(c.inv()),
                    _ => {
                        return Err(ParseError::Invalid(
                            "family coefficients must be polynomial: division only by nonzero constants".into(),
                        ))
                    }
                }
            }
            Expr::Pow(b, e) => {
                if *e < 0 {
                    return Err(ParseError::Invalid("negative powers not allowed in a family".into()));
                }
                let base = b.bivariate()?;
                let mut acc = Bivariate::constant(Complex::one());
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) => 5,
        }
    }
}

fn check_divisor(den: Complex) -> Result<(), EvalError> {
    let modulus = den.norm();
    if modulus <= DIV_ZERO_EPS || !modulus.is_finite() {
        Err(EvalError::DivisionByZero { modulus })
    } else {
        Ok(())
    }
}

/// `z`-indexed list of polynomials in `a`.
struct Bivariate(Vec<ComplexPoly>);

impl Bivariate {
    fn constant(c: Complex) -> Self {
        Bivariate(vec![ComplexPoly::constant(c)]).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|p| p.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn as_constant(&self) -> Option<Complex> {
        match self.0.as_slice() {
            [] => Some(Complex::zero()),
            [p] if p.degree().unwrap_or(0) == 0 => Some(p.coeff(0)),
            _ => None,
        }
    }

    fn scale(&self, s: Complex) -> Self {
        Bivariate(self.0.iter().map(|p| p.scale(s)).collect()).trim()
    }

    fn add(&self, rhs: &Self) -> Self {
        let len = self.0.len().max(rhs.0.len());
        let zero = ComplexPoly::zero();
        Bivariate(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&zero) + rhs.0.get(k).unwrap_or(&zero))
                .collect(),
        )
        .trim()
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Bivariate(Vec::new());
        }
        let mut out = vec![ComplexPoly::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, p) in self.0.iter().enumerate() {
            for (j, q) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
        Bivariate(out).trim()
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: Complex) -> fmt::Result {
    if c.im == 0.0 {
        if c.re >= 0.0 && !c.re.is_sign_negative() {
            write!(f, "{}", c.re)
        } else {
            write!(f, "({})", c.re)
        }
    } else if c.re == 0.0 {
        write!(f, "({}i)", c.im)
    } else if c.im < 0.0 {
        write!(f, "({}-{}i)", c.re, -c.im)
    } else {
        write!(f, "({}+{}i)", c.re, c.im)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let p = self.prec();
        match self {
            Expr::Const(c) => write_const(f, *c),
            Expr::Var(s) => write!(f, "{s}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                child(f, e, e.prec() < 3)
            }
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                let op = match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    Expr::Mul(..) => "*",
                    _ => "/",
                };
                child(f, l, l.prec() < p)?;
                f.write_str(op)?;
                child(f, r, r.prec() <= p)
            }
            Expr::Pow(b, e) => {
                child(f, b, b.prec() < 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                i += 1;
            }
            // Exponent: e[+-]digits, only when digits actually follow.
            if i < chars.len() && (chars[i].1 == 'e' || chars[i].1 == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j].1 == '+' || chars[j].1 == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].1.is_ascii_digit() {
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let end = chars.get(i).map_or(s.len(), |c| c.0);
            let text = &s[pos..end];
            let _ = start;
            let v: f64 = text
                .parse()
                .map_err(|_| ParseError::BadNumber { text: text.into() })?;
            out.push((pos, Tok::Num(v)));
        } else if ch.is_ascii_alphabetic() {
            // An identifier is one letter followed by digits: `z`, `a3`, `z12`, `i`.
            i += 1;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let end = chars.get(i).map_or(s.len(), |c| c.0);
            out.push((pos, Tok::Ident(s[pos..end].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar { pos, ch });
        }
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = match self.peek() {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Op(c) => format!("{c:?}"),
            Tok::End => "end of input".into(),
        };
        ParseError::Unexpected {
            pos: self.pos(),
            found,
            expected,
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::add(lhs, self.product()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::div(lhs, self.unary()?);
                }
                Tok::Ident(_) | Tok::Op('(') | Tok::Num(_) => {
                    lhs = Expr::mul(lhs, self.power()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(Expr::neg(self.unary()?))
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Op('^') {
            self.bump();
            let e = self.exponent()?;
            Ok(Expr::pow(base, e))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let paren = self.peek() == &Tok::Op('(');
        if paren {
            self.bump();
        }
        let neg = match self.peek() {
            Tok::Op('-') => {
                self.bump();
                true
            }
            Tok::Op('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let e = match self.peek() {
            Tok::Num(v) if v.fract() == 0.0 && v.abs() <= 64.0 => *v as i32,
            _ => return Err(self.unexpected("integer exponent")),
        };
        self.bump();
        if paren {
            if self.peek() != &Tok::Op(')') {
                return Err(self.unexpected("')'"));
            }
            self.bump();
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::real(v))
            }
            Tok::Ident(name) => {
                self.bump();
                symbol_or_i(&name)
            }
            Tok::Op('(') => {
                self.bump();
                let e = self.sum()?;
                if self.peek() != &Tok::Op(')') {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected("number, variable or '('")),
        }
    }
}

fn symbol_or_i(name: &str) -> Result<Expr, ParseError> {
    let unknown = || ParseError::UnknownVariable { name: name.into() };
    let (head, digits) = name.split_at(1);
    Ok(match (head, digits) {
        ("i", "") => Expr::Const(Complex::i()),
        ("z", "") => Expr::Var(Symbol::Z),
        ("a", "") => Expr::Var(Symbol::A),
        ("a", d) => Expr::Var(Symbol::Coeff(d.parse().map_err(|_| unknown())?)),
        ("z", d) => {
            let k: usize = d.parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(unknown());
            }
            Expr::Var(Symbol::Level(k))
        }
        _ => return Err(unknown()),
    })
}

/// Parses an expression in the shared literal syntax.
pub fn parse(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        at: 0,
    };
    let e = p.sum()?;
    if p.peek() != &Tok::End {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(e)
}

/// Parses an expression and requires it to use only the listed symbols.
pub fn parse_with(s: &str, allowed: &dyn Fn(Symbol) -> bool) -> Result<Expr, ParseError> {
    let e = parse(s)?;
    if let Some(bad) = e.symbols().into_iter().find(|s| !allowed(*s)) {
        return Err(ParseError::DisallowedSymbol { symbol: bad });
    }
    Ok(e)
}

/// Parses a constant complex expression such as `-1.5+0.25i`.
pub fn parse_constant(s: &str) -> Result<Complex, ParseError> {
    match parse(s)? {
        Expr::Const(c) => Ok(c),
        e => match e.symbols().into_iter().next() {
            Some(symbol) => Err(ParseError::DisallowedSymbol { symbol }),
            None => e
                .eval(&|_| None)
                .map_err(|err| ParseError::Invalid(err.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("2").unwrap(), z(2.0, 0.0));
        assert_eq!(parse_constant("-1.5+0.25i").unwrap(), z(-1.5, 0.25));
        assert_eq!(parse_constant("3*i").unwrap(), z(0.0, 3.0));
        assert_eq!(parse_constant("(1+i)/2").unwrap(), z(0.5, 0.5));
        assert_eq!(parse_constant("1e-3i").unwrap(), z(0.0, 1e-3));
        assert_eq!(parse_constant("2^-1").unwrap(), z(0.5, 0.0));
        assert!(parse_constant("z").is_err());
    }

    #[test]
    fn precedence() {
        let e = parse("-z^2 + 3*z - 1/2").unwrap();
        let v = e.eval(&|s| (s == Symbol::Z).then_some(z(2.0, 0.0))).unwrap();
        assert_eq!(v, z(-4.0 + 6.0 - 0.5, 0.0));
        let e = parse("2z^3").unwrap();
        let v = e.eval(&|_| Some(z(2.0, 0.0))).unwrap();
        assert_eq!(v, z(16.0, 0.0));
        let e = parse("z2^3 - (-a0 + z1)/2").unwrap();
        assert_eq!(
            e.symbols().into_iter().collect::<Vec<_>>(),
            vec![Symbol::Coeff(0), Symbol::Level(1), Symbol::Level(2)]
        );
    }

    #[test]
    fn division_by_zero() {
        let e = parse("1/(a - a)").unwrap();
        assert!(matches!(
            e.eval(&|_| Some(z(1.0, 0.0))),
            Err(EvalError::DivisionByZero { .. })
        ));
        let e = parse("a^(-2)").unwrap();
        assert!(e.eval(&|_| Some(z(0.0, 0.0))).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x + 1"), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse("z +"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse("z $ 1"), Err(ParseError::UnexpectedChar { .. })));
        assert!(matches!(parse("z^1.5"), Err(ParseError::Unexpected { .. })));
        assert!(parse("z0").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "z^5 - 5*z + a",
            "(z^3 - a)^3 - a*(a - 1)",
            "z^4 + 2*(1 - 2*a)*z^2 + 1",
            "-(z - a) - -z",
            "a - (z - 1)",
            "z/(a/z)",
            "(1+2i)*z^2 - (0.5-3i)",
            "z1^(-2) + z2*-a3",
            "(-z)^2",
        ] {
            let e = parse(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{s} -> {printed}");
        }
    }

    #[test]
    fn bivariate_expansion() {
        let e = parse("(z - a)^2 + a/2").unwrap();
        let c = e.expand_bivariate().unwrap();
        // z^2 - 2 a z + a^2 + a/2
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], ComplexPoly::constant(z(1.0, 0.0)));
        assert_eq!(c[1], ComplexPoly::monomial(z(-2.0, 0.0), 1));
        assert_eq!(c[0], ComplexPoly::from_real(&[0.0, 0.5, 1.0]));
        assert!(parse("z/a").unwrap().expand_bivariate().is_err());
        assert!(parse("z1 + z").unwrap().expand_bivariate().is_err());
    }
}
