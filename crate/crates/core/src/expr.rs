//! The small expression language shared by the table files and the catalog:
//! scalar and vector expressions over the Chevalley generators, conditions,
//! and isomorphism-class descriptions.
//!
//! Everything is parsed by hand-written recursive descent over a token
//! stream. Parse trees keep explicit parentheses so that unparsing
//! reproduces the original token sequence.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ExactError, QuadExt, Rational};
use crate::rank2::RankTwo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("{0} needs a rational value")]
    NotRational(String),
    #[error("sqrt of negative value {0}")]
    NegativeRadicand(String),
    #[error("cannot divide by {0}")]
    Division(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn syntax(col: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax { col, msg: msg.into() }
}

// ---------------------------------------------------------------------------
// Surds: finite sums of rational multiples of square roots

/// A sum `sum_m r_m sqrt(m)` over square-free positive `m` (key 1 holds the
/// rational part). Closed under ring operations; division is supported when
/// the divisor lies in a single quadratic field.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<i64, Rational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn rational(r: Rational) -> Self {
        let mut s = Surd::default();
        s.push(1, r);
        s
    }

    pub fn int(v: i64) -> Self {
        Surd::rational(Rational::from_int(v))
    }

    pub fn from_quad(q: &QuadExt) -> Self {
        let mut s = Surd::rational(q.a().clone());
        if !q.b().is_zero() {
            s.push(q.radicand(), q.b().clone());
        }
        s
    }

    /// Principal square root of a non-negative rational.
    pub fn sqrt(r: &Rational) -> Result<Self, ExprError> {
        if r.signum() < 0 {
            return Err(ExprError::NegativeRadicand(r.to_string()));
        }
        Ok(Surd::from_quad(&QuadExt::sqrt_of(r)?))
    }

    fn push(&mut self, m: i64, r: Rational) {
        if r.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e = &*e + &r;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    fn need_rational(&self, what: &str) -> Result<Rational, ExprError> {
        self.as_rational()
            .ok_or_else(|| ExprError::NotRational(format!("{what} ({self})")))
    }

    /// Radicands other than 1 that occur.
    pub fn radicands(&self) -> Vec<i64> {
        self.terms.keys().copied().filter(|&m| m != 1).collect()
    }

    pub fn to_quad(&self) -> Result<QuadExt, ExprError> {
        let rad = self.radicands();
        let a = self.terms.get(&1).cloned().unwrap_or_else(Rational::zero);
        match rad.as_slice() {
            [] => Ok(QuadExt::rational(a)),
            [m] => Ok(QuadExt::new(a, self.terms[m].clone(), *m)?),
            _ => Err(ExactError::MixedRadicands(rad[0], rad[1]).into()),
        }
    }

    pub fn add(&self, o: &Surd) -> Surd {
        let mut s = self.clone();
        for (m, r) in &o.terms {
            s.push(*m, r.clone());
        }
        s
    }

    pub fn neg(&self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(m, r)| (*m, -r)).collect(),
        }
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let mut s = Surd::default();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &o.terms {
                // sqrt(m1) sqrt(m2) = g sqrt(m1 m2 / g^2), with a sign flip
                // when both radicands are negative
                let g = gcd(*m1, *m2);
                let m = (m1 / g) * (m2 / g);
                let g = if *m1 < 0 && *m2 < 0 { -g } else { g };
                s.push(m, r1 * r2 * Rational::from_int(g));
            }
        }
        s
    }

    pub fn div(&self, o: &Surd) -> Result<Surd, ExprError> {
        if o.is_zero() {
            return Err(ExprError::Division("0".into()));
        }
        let q = o.to_quad().map_err(|_| ExprError::Division(o.to_string()))?;
        let conj = Surd::from_quad(&q.conj());
        let norm = q.norm();
        let inv_norm = Surd::rational(norm.recip()?);
        Ok(self.mul(&conj).mul(&inv_norm))
    }

    pub fn pow(&self, e: i64) -> Result<Surd, ExprError> {
        let mut acc = Surd::int(1);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            acc = Surd::int(1).div(&acc)?;
        }
        Ok(acc)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl From<Rational> for Surd {
    fn from(r: Rational) -> Self {
        Surd::rational(r)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Ok(q) = self.to_quad() {
            return write!(f, "{q}");
        }
        for (i, (m, r)) in self.terms.iter().enumerate() {
            let s = if *m == 1 { r.to_string() } else { format!("{r}*sqrt({m})") };
            if i > 0 && !s.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Num(String),
    Ident(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) | Tok::Ident(s) => write!(f, "{s}"),
            Tok::Sym(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    /// 1-based column of the first character.
    pub col: usize,
    /// Whether whitespace precedes the token.
    pub spaced: bool,
}

const SYMBOLS: [&str; 19] = [
    "(+)", "!=", "<=", ">=", ":=", "+", "-", "*", "/", "^", "(", ")", ",", ";", ":", "{", "}",
    "=", "<",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut spaced = false;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            spaced = true;
            i += 1;
            continue;
        }
        let col = i + 1;
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Num(s), col, spaced });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), col, spaced });
        } else if c == '>' {
            let two = chars.get(i + 1) == Some(&'=');
            i += if two { 2 } else { 1 };
            let s = if two { ">=" } else { ">" };
            out.push(Token { tok: Tok::Sym(s), col, spaced });
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let sym = SYMBOLS
                .iter()
                .find(|s| rest.starts_with(*s))
                .ok_or_else(|| syntax(col, format!("unexpected character {c:?}")))?;
            i += sym.chars().count();
            out.push(Token { tok: Tok::Sym(sym), col, spaced });
        }
        spaced = false;
    }
    Ok(out)
}

/// Token texts of a source string, for token-level comparisons.
pub fn token_texts(src: &str) -> Result<Vec<String>, ExprError> {
    Ok(tokenize(src)?.into_iter().map(|t| t.tok.to_string()).collect())
}

// ---------------------------------------------------------------------------
// Syntax trees

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn sym(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

/// Scalar or vector expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(String),
    Var(String),
    /// `X(m,n)` (positive) or `Y(m,n)` (negative) root vector.
    Root { positive: bool, m: i64, n: i64 },
    Ha,
    Hb,
    /// `T(a,b)`, C2 only.
    T(Box<Expr>, Box<Expr>),
    /// `H(c,d)`, the Cartan element attached to `c alpha + d beta`.
    H(Box<Expr>, Box<Expr>),
    Call(String, Box<Expr>),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Paren(Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(s) | Expr::Var(s) => write!(f, "{s}"),
            Expr::Root { positive, m, n } => {
                write!(f, "{}({m},{n})", if *positive { "X" } else { "Y" })
            }
            Expr::Ha => write!(f, "Ha"),
            Expr::Hb => write!(f, "Hb"),
            Expr::T(a, b) => write!(f, "T({a},{b})"),
            Expr::H(a, b) => write!(f, "H({a},{b})"),
            Expr::Call(name, a) => write!(f, "{name}({a})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Bin(op, a, b) => write!(f, "{a}{}{b}", op.sym()),
            Expr::Pow(a, e) => write!(f, "{a}^{e}"),
            Expr::Paren(a) => write!(f, "({a})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    fn sym(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Expr(Expr),
    Tuple(Vec<Expr>),
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Expr(e) => write!(f, "{e}"),
            Operand::Tuple(es) => write!(f, "({})", join(es, ",")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cond {
    Rel(Operand, RelOp, Operand),
    And(Vec<Cond>),
    Or(Vec<Cond>),
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::Rel(a, op, b) => write!(f, "{a} {} {b}", op.sym()),
            Cond::And(cs) => write!(f, "{}", join(cs, " and ")),
            Cond::Or(cs) => write!(f, "{}", join(cs, " or ")),
        }
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// How a parameter slot of a catalog entry is filled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    /// `A=expr`
    Eq(String, Expr),
    /// `A,B in {x, y, ...}`: every name ranges over the set independently.
    Each(Vec<String>, Vec<Expr>),
    /// `(A,B) in {(x,y), ...}`
    Tuples(Vec<String>, Vec<Vec<Expr>>),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Eq(n, e) => write!(f, "{n}={e}"),
            Binding::Each(ns, es) => write!(f, "{} in {{{}}}", ns.join(","), join(es, ", ")),
            Binding::Tuples(ns, ts) => {
                let ts: Vec<String> = ts.iter().map(|t| format!("({})", join(t, ","))).collect();
                write!(f, "({}) in {{{}}}", ns.join(","), ts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassBase {
    /// A catalog entry or semisimple type, optionally with parameter bindings.
    Entry { id: String, bindings: Vec<Binding> },
    /// `A1+base`: the Levi decomposable catalog entry with that radical.
    Levi(Box<Summand>),
    Group(ClassSum),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub mult: Option<u32>,
    pub base: ClassBase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSum(pub Vec<Summand>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    One(ClassSum),
    /// `any{...}`: the algebra is claimed to be one of the listed classes.
    Any(Vec<ClassSum>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guard {
    Always,
    If(Cond),
    Else,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub guard: Guard,
    pub target: Target,
}

/// A full isomorphism-class claim: guarded clauses plus `where` bindings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub clauses: Vec<Clause>,
    pub bindings: Vec<(String, Expr)>,
}

impl fmt::Display for ClassBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassBase::Entry { id, bindings } if bindings.is_empty() => write!(f, "{id}"),
            ClassBase::Entry { id, bindings } => write!(f, "{id}({})", join(bindings, ", ")),
            ClassBase::Levi(s) => write!(f, "A1+{s}"),
            ClassBase::Group(s) => write!(f, "({s})"),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.mult {
            write!(f, "{m}")?;
        }
        write!(f, "{}", self.base)
    }
}

impl fmt::Display for ClassSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.0, " (+) "))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::One(s) => write!(f, "{s}"),
            Target::Any(ss) => write!(f, "any{{{}}}", join(ss, ", ")),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clauses: Vec<String> = self
            .clauses
            .iter()
            .map(|c| match &c.guard {
                Guard::Always => c.target.to_string(),
                Guard::If(cond) => format!("if {cond}: {}", c.target),
                Guard::Else => format!("else: {}", c.target),
            })
            .collect();
        write!(f, "{}", clauses.join("; "))?;
        if !self.bindings.is_empty() {
            let bs: Vec<String> = self.bindings.iter().map(|(n, e)| format!("{n}={e}")).collect();
            write!(f, " where {}", bs.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser

const KEYWORDS: [&str; 7] = ["if", "else", "or", "and", "in", "where", "any"];

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self, ExprError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            end_col: src.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        if self.is_ident(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ExprError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{s}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        match self.peek() {
            Some(t) => syntax(self.col(), format!("expected {wanted}, found '{t}'")),
            None => syntax(self.col(), format!("expected {wanted}, found end of input")),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<(), ExprError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn name(&mut self) -> Result<String, ExprError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        let neg = self.eat_sym("-");
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v: i64 = s.parse().map_err(|_| syntax(self.col(), "integer too large"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat_sym("+") {
                BinOp::Add
            } else if self.eat_sym("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat_sym("*") {
                BinOp::Mul
            } else if self.eat_sym("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if self.eat_sym("^") {
            let e = self.int()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                if matches!(self.peek(), Some(Tok::Ident(_))) && !self.toks[self.pos].spaced {
                    return Err(syntax(self.col(), "implicit multiplication; write '*'"));
                }
                Ok(Expr::Num(s))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(Expr::Paren(Box::new(e)))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "Ha" => Ok(Expr::Ha),
                    "Hb" => Ok(Expr::Hb),
                    "X" | "Y" => {
                        self.expect_sym("(")?;
                        let m = self.int()?;
                        self.expect_sym(",")?;
                        let n = self.int()?;
                        self.expect_sym(")")?;
                        Ok(Expr::Root { positive: id == "X", m, n })
                    }
                    "T" | "H" => {
                        self.expect_sym("(")?;
                        let a = self.expr()?;
                        self.expect_sym(",")?;
                        let b = self.expr()?;
                        self.expect_sym(")")?;
                        let (a, b) = (Box::new(a), Box::new(b));
                        Ok(if id == "T" { Expr::T(a, b) } else { Expr::H(a, b) })
                    }
                    "sqrt" | "abs" => {
                        self.expect_sym("(")?;
                        let a = self.expr()?;
                        self.expect_sym(")")?;
                        Ok(Expr::Call(id, Box::new(a)))
                    }
                    _ if KEYWORDS.contains(&id.as_str()) => {
                        Err(syntax(col, format!("unexpected keyword '{id}'")))
                    }
                    _ => Ok(Expr::Var(id)),
                }
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    /// `cond (',' cond)*`
    pub fn cond_list(&mut self) -> Result<Vec<Cond>, ExprError> {
        let mut out = vec![self.cond()?];
        while self.eat_sym(",") {
            out.push(self.cond()?);
        }
        Ok(out)
    }

    pub fn cond(&mut self) -> Result<Cond, ExprError> {
        let mut parts = vec![self.conj()?];
        while self.eat_ident("or") {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Cond::Or(parts) })
    }

    fn conj(&mut self) -> Result<Cond, ExprError> {
        let mut parts = vec![self.rel()?];
        while self.eat_ident("and") {
            parts.push(self.rel()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Cond::And(parts) })
    }

    fn rel(&mut self) -> Result<Cond, ExprError> {
        let lhs = self.operand()?;
        let op = match self.peek() {
            Some(Tok::Sym("=")) => RelOp::Eq,
            Some(Tok::Sym("!=")) => RelOp::Ne,
            Some(Tok::Sym("<")) => RelOp::Lt,
            Some(Tok::Sym("<=")) => RelOp::Le,
            Some(Tok::Sym(">")) => RelOp::Gt,
            Some(Tok::Sym(">=")) => RelOp::Ge,
            _ => return Err(self.unexpected("a comparison")),
        };
        self.pos += 1;
        let rhs = self.operand()?;
        Ok(Cond::Rel(lhs, op, rhs))
    }

    fn operand(&mut self) -> Result<Operand, ExprError> {
        if let Some(t) = self.try_tuple()? {
            return Ok(Operand::Tuple(t));
        }
        Ok(Operand::Expr(self.expr()?))
    }

    /// `'(' expr (',' expr)+ ')'`, backtracking if the parenthesis turns out
    /// to group an ordinary expression.
    fn try_tuple(&mut self) -> Result<Option<Vec<Expr>>, ExprError> {
        if !self.is_sym("(") {
            return Ok(None);
        }
        let save = self.pos;
        self.pos += 1;
        let first = match self.expr() {
            Ok(e) => e,
            Err(_) => {
                self.pos = save;
                return Ok(None);
            }
        };
        if !self.eat_sym(",") {
            self.pos = save;
            return Ok(None);
        }
        let mut items = vec![first, self.expr()?];
        while self.eat_sym(",") {
            items.push(self.expr()?);
        }
        self.expect_sym(")")?;
        Ok(Some(items))
    }

    pub fn class_spec(&mut self) -> Result<ClassSpec, ExprError> {
        let mut clauses = Vec::new();
        loop {
            clauses.push(self.clause()?);
            if !self.eat_sym(";") {
                break;
            }
        }
        let mut bindings = Vec::new();
        if self.eat_ident("where") {
            loop {
                let n = self.name()?;
                self.expect_sym("=")?;
                bindings.push((n, self.expr()?));
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        let guarded = clauses.iter().filter(|c| c.guard != Guard::Always).count();
        if guarded > 0 && guarded != clauses.len() {
            return Err(syntax(1, "mixing guarded and unguarded class clauses"));
        }
        Ok(ClassSpec { clauses, bindings })
    }

    fn clause(&mut self) -> Result<Clause, ExprError> {
        let guard = if self.eat_ident("if") {
            let c = self.cond()?;
            self.expect_sym(":")?;
            Guard::If(c)
        } else if self.eat_ident("else") {
            self.expect_sym(":")?;
            Guard::Else
        } else {
            Guard::Always
        };
        let target = if self.eat_ident("any") {
            self.expect_sym("{")?;
            let mut alts = vec![self.class_sum()?];
            while self.eat_sym(",") {
                alts.push(self.class_sum()?);
            }
            self.expect_sym("}")?;
            Target::Any(alts)
        } else {
            Target::One(self.class_sum()?)
        };
        Ok(Clause { guard, target })
    }

    pub fn class_sum(&mut self) -> Result<ClassSum, ExprError> {
        let mut parts = vec![self.summand()?];
        while self.eat_sym("(+)") {
            parts.push(self.summand()?);
        }
        Ok(ClassSum(parts))
    }

    fn summand(&mut self) -> Result<Summand, ExprError> {
        let mult = match self.peek() {
            Some(Tok::Num(s)) => {
                let m: u32 = s.parse().map_err(|_| syntax(self.col(), "bad multiplicity"))?;
                self.pos += 1;
                Some(m)
            }
            _ => None,
        };
        let base = if self.eat_sym("(") {
            let s = self.class_sum()?;
            self.expect_sym(")")?;
            ClassBase::Group(s)
        } else {
            let id = self.name()?;
            if id == "A1" && self.is_sym("+") {
                self.pos += 1;
                ClassBase::Levi(Box::new(self.summand()?))
            } else {
                let mut bindings = Vec::new();
                if self.eat_sym("(") {
                    loop {
                        bindings.push(self.binding()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.expect_sym(")")?;
                }
                ClassBase::Entry { id, bindings }
            }
        };
        Ok(Summand { mult, base })
    }

    fn binding(&mut self) -> Result<Binding, ExprError> {
        if self.eat_sym("(") {
            let mut names = vec![self.name()?];
            while self.eat_sym(",") {
                names.push(self.name()?);
            }
            self.expect_sym(")")?;
            if !self.eat_ident("in") {
                return Err(self.unexpected("'in'"));
            }
            self.expect_sym("{")?;
            let mut tuples = Vec::new();
            loop {
                let t = self
                    .try_tuple()?
                    .ok_or_else(|| self.unexpected("a parenthesized tuple"))?;
                if t.len() != names.len() {
                    return Err(syntax(self.col(), "tuple arity mismatch"));
                }
                tuples.push(t);
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym("}")?;
            return Ok(Binding::Tuples(names, tuples));
        }
        let first = self.name()?;
        if self.eat_sym("=") {
            return Ok(Binding::Eq(first, self.expr()?));
        }
        let mut names = vec![first];
        while self.eat_sym(",") {
            names.push(self.name()?);
        }
        if !self.eat_ident("in") {
            return Err(self.unexpected("'=' or 'in'"));
        }
        self.expect_sym("{")?;
        let mut vals = vec![self.expr()?];
        while self.eat_sym(",") {
            vals.push(self.expr()?);
        }
        self.expect_sym("}")?;
        Ok(Binding::Each(names, vals))
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// `expr (';' expr)*`, the generator-list syntax.
pub fn parse_expr_list(src: &str) -> Result<Vec<Expr>, ExprError> {
    let mut p = Parser::new(src)?;
    let mut out = vec![p.expr()?];
    while p.eat_sym(";") {
        out.push(p.expr()?);
    }
    p.expect_end()?;
    Ok(out)
}

pub fn parse_cond(src: &str) -> Result<Cond, ExprError> {
    let mut p = Parser::new(src)?;
    let c = p.cond()?;
    p.expect_end()?;
    Ok(c)
}

pub fn parse_cond_list(src: &str) -> Result<Vec<Cond>, ExprError> {
    let mut p = Parser::new(src)?;
    if p.at_end() {
        return Ok(Vec::new());
    }
    let c = p.cond_list()?;
    p.expect_end()?;
    Ok(c)
}

pub fn parse_class(src: &str) -> Result<ClassSpec, ExprError> {
    let mut p = Parser::new(src)?;
    let c = p.class_spec()?;
    p.expect_end()?;
    Ok(c)
}

// ---------------------------------------------------------------------------
// Evaluation

pub type Env = BTreeMap<String, Surd>;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Surd),
    Vector(Vec<Surd>),
}

impl Expr {
    /// Evaluates a scalar expression.
    pub fn eval_scalar(&self, env: &Env) -> Result<Surd, ExprError> {
        match self.eval(env, None)? {
            Value::Scalar(s) => Ok(s),
            Value::Vector(_) => Err(ExprError::Type(format!("{self} is a vector"))),
        }
    }

    /// Evaluates a generator expression to coordinates in the ambient basis.
    pub fn eval_vector(&self, env: &Env, ambient: &RankTwo) -> Result<Vec<Surd>, ExprError> {
        match self.eval(env, Some(ambient))? {
            Value::Vector(v) => Ok(v),
            Value::Scalar(_) => Err(ExprError::Type(format!("{self} is a scalar"))),
        }
    }

    /// Names of the variables the expression mentions.
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Expr::T(a, b) | Expr::H(a, b) | Expr::Bin(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Expr::Call(_, a) | Expr::Neg(a) | Expr::Pow(a, _) | Expr::Paren(a) => a.vars(out),
            _ => {}
        }
    }

    pub fn eval(&self, env: &Env, ambient: Option<&RankTwo>) -> Result<Value, ExprError> {
        use Value::{Scalar, Vector};
        let need = || ambient.ok_or_else(|| ExprError::Type(format!("{self} needs an ambient algebra")));
        Ok(match self {
            Expr::Num(s) => {
                let n: BigInt = s.parse().map_err(|_| ExprError::Type(s.clone()))?;
                Scalar(Surd::rational(Rational::normalize(n, BigInt::from(1))?))
            }
            Expr::Var(v) => Scalar(env.get(v).cloned().ok_or_else(|| ExprError::UnknownVar(v.clone()))?),
            Expr::Root { positive, m, n } => {
                let amb = need()?;
                let (m2, n2) = if *positive { (*m, *n) } else { (-*m, -*n) };
                if *m < 0 || *n < 0 {
                    return Err(ExprError::UnknownAtom(self.to_string()));
                }
                let idx = amb
                    .root_index(m2, n2)
                    .map_err(|_| ExprError::UnknownAtom(format!("{self} in {}", amb.ambient)))?;
                let mut v = vec![Surd::zero(); amb.dim()];
                v[idx] = Surd::int(1);
                Vector(v)
            }
            Expr::Ha | Expr::Hb => {
                let amb = need()?;
                let mut v = vec![Surd::zero(); amb.dim()];
                v[if *self == Expr::Ha { 0 } else { 1 }] = Surd::int(1);
                Vector(v)
            }
            Expr::T(a, b) => {
                let amb = need()?;
                if amb.ambient != crate::rank2::Ambient::C2 {
                    return Err(ExprError::UnknownAtom(format!("{self} in {}", amb.ambient)));
                }
                let (a, b) = (a.eval_scalar(env)?, b.eval_scalar(env)?);
                let mut v = vec![Surd::zero(); amb.dim()];
                v[0] = a.add(&b);
                v[1] = a;
                Vector(v)
            }
            Expr::H(c, d) => {
                let amb = need()?;
                let (c, d) = (c.eval_scalar(env)?, d.eval_scalar(env)?);
                let g: Vec<Surd> = amb.gram.iter().map(|r| Surd::rational(r.clone())).collect();
                let norm = c
                    .mul(&c)
                    .mul(&g[0])
                    .add(&Surd::int(2).mul(&c).mul(&d).mul(&g[1]))
                    .add(&d.mul(&d).mul(&g[2]));
                if norm.is_zero() {
                    return Err(ExprError::Division(format!("{self}: zero weight")));
                }
                let mut v = vec![Surd::zero(); amb.dim()];
                v[0] = c.mul(&g[0]).div(&norm)?;
                v[1] = d.mul(&g[2]).div(&norm)?;
                Vector(v)
            }
            Expr::Call(name, a) => {
                let x = a.eval_scalar(env)?;
                let r = x.need_rational(name)?;
                match name.as_str() {
                    "sqrt" => Scalar(Surd::sqrt(&r)?),
                    _ => Scalar(Surd::rational(r.abs())),
                }
            }
            Expr::Neg(a) => match a.eval(env, ambient)? {
                Scalar(s) => Scalar(s.neg()),
                Vector(v) => Vector(v.iter().map(Surd::neg).collect()),
            },
            Expr::Paren(a) => a.eval(env, ambient)?,
            Expr::Pow(a, e) => Scalar(a.eval_scalar(env)?.pow(*e)?),
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(env, ambient)?, b.eval(env, ambient)?);
                match (op, x, y) {
                    (BinOp::Add, Scalar(x), Scalar(y)) => Scalar(x.add(&y)),
                    (BinOp::Sub, Scalar(x), Scalar(y)) => Scalar(x.sub(&y)),
                    (BinOp::Mul, Scalar(x), Scalar(y)) => Scalar(x.mul(&y)),
                    (BinOp::Div, Scalar(x), Scalar(y)) => Scalar(x.div(&y)?),
                    (BinOp::Add, Vector(x), Vector(y)) => {
                        Vector(x.iter().zip(&y).map(|(p, q)| p.add(q)).collect())
                    }
                    (BinOp::Sub, Vector(x), Vector(y)) => {
                        Vector(x.iter().zip(&y).map(|(p, q)| p.sub(q)).collect())
                    }
                    (BinOp::Mul, Scalar(s), Vector(v)) | (BinOp::Mul, Vector(v), Scalar(s)) => {
                        Vector(v.iter().map(|p| p.mul(&s)).collect())
                    }
                    (BinOp::Div, Vector(v), Scalar(s)) => {
                        Vector(v.iter().map(|p| p.div(&s)).collect::<Result<_, _>>()?)
                    }
                    _ => return Err(ExprError::Type(format!("cannot combine operands of {self}"))),
                }
            }
        })
    }
}

fn order(x: &Surd, y: &Surd) -> Result<std::cmp::Ordering, ExprError> {
    Ok(x.need_rational("ordering")?.cmp(&y.need_rational("ordering")?))
}

impl Cond {
    pub fn eval(&self, env: &Env) -> Result<bool, ExprError> {
        match self {
            Cond::And(cs) => {
                for c in cs {
                    if !c.eval(env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Cond::Or(cs) => {
                for c in cs {
                    if c.eval(env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Cond::Rel(a, op, b) => {
                let side = |o: &Operand| -> Result<Vec<Surd>, ExprError> {
                    match o {
                        Operand::Expr(e) => Ok(vec![e.eval_scalar(env)?]),
                        Operand::Tuple(es) => es.iter().map(|e| e.eval_scalar(env)).collect(),
                    }
                };
                let (x, y) = (side(a)?, side(b)?);
                if x.len() != y.len() {
                    return Err(ExprError::Type(format!("arity mismatch in {self}")));
                }
                let equal = x == y;
                match op {
                    RelOp::Eq => Ok(equal),
                    RelOp::Ne => Ok(!equal),
                    _ if x.len() != 1 => Err(ExprError::Type(format!("ordering on tuples in {self}"))),
                    RelOp::Lt => Ok(order(&x[0], &y[0])?.is_lt()),
                    RelOp::Le => Ok(order(&x[0], &y[0])?.is_le()),
                    RelOp::Gt => Ok(order(&x[0], &y[0])?.is_gt()),
                    RelOp::Ge => Ok(order(&x[0], &y[0])?.is_ge()),
                }
            }
        }
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Cond::And(cs) | Cond::Or(cs) => cs.iter().for_each(|c| c.vars(out)),
            Cond::Rel(a, _, b) => {
                for o in [a, b] {
                    match o {
                        Operand::Expr(e) => e.vars(out),
                        Operand::Tuple(es) => es.iter().for_each(|e| e.vars(out)),
                    }
                }
            }
        }
    }
}

/// One summand of an evaluated class: a catalog id (or semisimple type) with
/// concrete parameter values, or a slot whose parameters are left free.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassTerm {
    pub id: String,
    pub params: Vec<(String, Surd)>,
    /// Parameters named in the claim but not given a value (only inside
    /// `any{...}`); they are to be recovered from the algebra.
    pub free: bool,
}

impl fmt::Display for ClassTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

/// A concrete direct sum of class terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassInstance(pub Vec<ClassTerm>);

impl fmt::Display for ClassInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.0, " (+) "))
    }
}

impl ClassSpec {
    /// Selects the clause that applies under `env` (after adding the `where`
    /// bindings) and expands it into its concrete alternatives. Also returns
    /// the index of the selected clause.
    pub fn resolve(&self, env: &Env) -> Result<(usize, Vec<ClassInstance>), ExprError> {
        let env = self.extend_env(env);
        for (i, c) in self.clauses.iter().enumerate() {
            let take = match &c.guard {
                Guard::Always | Guard::Else => true,
                Guard::If(cond) => cond.eval(&env)?,
            };
            if take {
                return Ok((i, c.target.expand(&env)?));
            }
        }
        Err(ExprError::Type("no class clause applies".into()))
    }

    /// `where` bindings are evaluated in order; a binding that fails to
    /// evaluate (say, a zero denominator at this sample) is simply left
    /// undefined, which is an error only if a selected clause uses it.
    pub fn extend_env(&self, env: &Env) -> Env {
        let mut env = env.clone();
        for (n, e) in &self.bindings {
            if let Ok(v) = e.eval_scalar(&env) {
                env.insert(n.clone(), v);
            }
        }
        env
    }

    /// Branch conditions, for targeted sampling.
    pub fn guards(&self) -> Vec<&Cond> {
        self.clauses
            .iter()
            .filter_map(|c| match &c.guard {
                Guard::If(cond) => Some(cond),
                _ => None,
            })
            .collect()
    }
}

impl Target {
    pub fn expand(&self, env: &Env) -> Result<Vec<ClassInstance>, ExprError> {
        match self {
            Target::One(s) => s.expand(env, false),
            Target::Any(ss) => {
                let mut out = Vec::new();
                for s in ss {
                    out.extend(s.expand(env, true)?);
                }
                Ok(out)
            }
        }
    }
}

fn cartesian(parts: Vec<Vec<ClassInstance>>) -> Vec<ClassInstance> {
    let mut acc = vec![ClassInstance(Vec::new())];
    for options in parts {
        let mut next = Vec::new();
        for a in &acc {
            for o in &options {
                let mut t = a.0.clone();
                t.extend(o.0.iter().cloned());
                next.push(ClassInstance(t));
            }
        }
        acc = next;
    }
    acc
}

impl ClassSum {
    pub fn expand(&self, env: &Env, allow_free: bool) -> Result<Vec<ClassInstance>, ExprError> {
        let mut parts = Vec::new();
        for s in &self.0 {
            let one = s.expand(env, allow_free)?;
            for _ in 0..s.mult.unwrap_or(1) {
                parts.push(one.clone());
            }
        }
        Ok(cartesian(parts))
    }
}

impl Summand {
    fn expand(&self, env: &Env, allow_free: bool) -> Result<Vec<ClassInstance>, ExprError> {
        match &self.base {
            ClassBase::Group(s) => s.expand(env, allow_free),
            ClassBase::Levi(radical) => {
                // Levi entries are catalogued under their radical's literal
                // name, so the radical must be fully determined.
                let rads = radical.expand(env, false)?;
                let mult = radical.mult.map(|m| m.to_string()).unwrap_or_default();
                Ok(rads
                    .into_iter()
                    .map(|r| {
                        let inner = match r.0.first() {
                            Some(t) => t.to_string(),
                            None => String::new(),
                        };
                        ClassInstance(vec![ClassTerm {
                            id: format!("A1+{mult}{inner}"),
                            params: Vec::new(),
                            free: false,
                        }])
                    })
                    .collect())
            }
            ClassBase::Entry { id, bindings } => {
                let mut options: Vec<Vec<(String, Surd)>> = vec![Vec::new()];
                for b in bindings {
                    let choices: Vec<Vec<(String, Surd)>> = match b {
                        Binding::Eq(n, e) => vec![vec![(n.clone(), e.eval_scalar(env)?)]],
                        Binding::Tuples(ns, ts) => ts
                            .iter()
                            .map(|t| {
                                ns.iter()
                                    .zip(t)
                                    .map(|(n, e)| Ok((n.clone(), e.eval_scalar(env)?)))
                                    .collect::<Result<Vec<_>, ExprError>>()
                            })
                            .collect::<Result<_, _>>()?,
                        Binding::Each(ns, es) => {
                            let vals: Vec<Surd> =
                                es.iter().map(|e| e.eval_scalar(env)).collect::<Result<_, _>>()?;
                            let mut acc: Vec<Vec<(String, Surd)>> = vec![Vec::new()];
                            for n in ns {
                                acc = acc
                                    .into_iter()
                                    .flat_map(|a| {
                                        vals.iter().map(move |v| {
                                            let mut a = a.clone();
                                            a.push((n.clone(), v.clone()));
                                            a
                                        })
                                    })
                                    .collect();
                            }
                            acc
                        }
                    };
                    options = options
                        .into_iter()
                        .flat_map(|o| {
                            choices.iter().map(move |c| {
                                let mut o = o.clone();
                                o.extend(c.iter().cloned());
                                o
                            })
                        })
                        .collect();
                }
                Ok(options
                    .into_iter()
                    .map(|params| {
                        ClassInstance(vec![ClassTerm {
                            id: id.clone(),
                            params,
                            free: allow_free && bindings.is_empty(),
                        }])
                    })
                    .collect())
            }
        }
    }
}

/// Rescales a vector by the inverse of its first nonzero coordinate and
/// converts it to a single quadratic field. Spans are unaffected, and mixed
/// radicands such as `sqrt(6), sqrt(10)` land in one field this way.
pub fn normalize_vector(v: &[Surd]) -> Result<Vec<QuadExt>, ExprError> {
    let lead = v.iter().find(|x| !x.is_zero()).cloned();
    let Some(lead) = lead else {
        return Ok(v.iter().map(|_| QuadExt::rational(Rational::zero())).collect());
    };
    v.iter().map(|x| x.div(&lead)?.to_quad()).collect()
}

/// Common radicand of a family of quadratic numbers (0 if all rational).
pub fn common_radicand<'a>(xs: impl IntoIterator<Item = &'a QuadExt>) -> Result<i64, ExprError> {
    let mut m = 0;
    for x in xs {
        let r = x.radicand();
        if r != 0 {
            if m != 0 && m != r {
                return Err(ExactError::MixedRadicands(m, r).into());
            }
            m = r;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank2::{Ambient, RankTwo};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn env(pairs: &[(&str, &str)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), Surd::rational(r(v)))).collect()
    }

    #[test]
    fn surd_products_reduce_radicands() {
        let s6 = Surd::sqrt(&r("6")).unwrap();
        let s10 = Surd::sqrt(&r("10")).unwrap();
        // sqrt(6) sqrt(10) = 2 sqrt(15)
        let p = s6.mul(&s10);
        assert_eq!(p.to_quad().unwrap().to_string(), "0+2*sqrt(15)");
        // sqrt(10) / sqrt(6) = sqrt(15)/3
        let q = s10.div(&s6).unwrap();
        assert_eq!(q.to_quad().unwrap().to_string(), "0+1/3*sqrt(15)");
        assert!(s6.add(&s10).to_quad().is_err());
    }

    #[test]
    fn precedence_and_unparse() {
        for src in [
            "X(1,0)+X(0,1)",
            "sqrt(1+4*a)*Ha",
            "-2*(a+1)/(a+3)^2",
            "(1+sqrt(1+4*a))*Ha+(1-sqrt(1+4*a))*Hb",
            "a-b-c",
            "a^-1",
            "sqrt(2)*(Y(0,1)+X(3,2))",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(token_texts(&e.to_string()).unwrap(), token_texts(src).unwrap(), "{src}");
        }
        let e = parse_expr("-2*(a+1)/(a+3)^2").unwrap();
        let v = e.eval_scalar(&env(&[("a", "2")])).unwrap();
        assert_eq!(v.as_rational().unwrap(), r("-6/25"));
        let e = parse_expr("a-b-c").unwrap();
        assert_eq!(e.eval_scalar(&env(&[("a", "1"), ("b", "2"), ("c", "3")])).unwrap(), Surd::int(-4));
    }

    #[test]
    fn generator_atoms() {
        let c2 = RankTwo::build(Ambient::C2);
        let v = parse_expr("X(1,0)+X(0,1)").unwrap().eval_vector(&Env::new(), &c2).unwrap();
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 2);
        let err = parse_expr("X(5,5)").unwrap().eval_vector(&Env::new(), &c2);
        assert!(matches!(err, Err(ExprError::UnknownAtom(_))));
        let t = parse_expr("T(1,0)").unwrap().eval_vector(&Env::new(), &c2).unwrap();
        assert_eq!((t[0].clone(), t[1].clone()), (Surd::int(1), Surd::int(1)));
        let g2 = RankTwo::build(Ambient::G2);
        let h = parse_expr("H(3,2)").unwrap().eval_vector(&Env::new(), &g2).unwrap();
        assert_eq!((h[0].clone(), h[1].clone()), (Surd::int(1), Surd::int(2)));
        let h = parse_expr("14*H(9,5)").unwrap().eval_vector(&Env::new(), &g2).unwrap();
        assert_eq!((h[0].clone(), h[1].clone()), (Surd::int(6), Surd::int(10)));
    }

    #[test]
    fn mixed_radicand_vector_normalizes_into_one_field() {
        let g2 = RankTwo::build(Ambient::G2);
        let v = parse_expr("sqrt(6)*X(1,0)+sqrt(10)*X(0,1)")
            .unwrap()
            .eval_vector(&Env::new(), &g2)
            .unwrap();
        let n = normalize_vector(&v).unwrap();
        assert_eq!(common_radicand(&n).unwrap(), 15);
    }

    #[test]
    fn conditions() {
        let c = parse_cond_list("(2*c-3*d)*(-c+2*d) >= 0, (c,d) != (0,0)").unwrap();
        assert_eq!(c.len(), 2);
        let e = env(&[("c", "3"), ("d", "2")]);
        assert!(c.iter().all(|c| c.eval(&e).unwrap()));
        let e = env(&[("c", "0"), ("d", "0")]);
        assert!(!c[1].eval(&e).unwrap());
        let c = parse_cond("2*c=3*d or c=d").unwrap();
        assert!(c.eval(&env(&[("c", "5"), ("d", "5")])).unwrap());
        assert!(parse_cond_list("").unwrap().is_empty());
    }

    #[test]
    fn class_specs() {
        let src = "if 2*c=3*d or c=d: n_1_1 (+) s_2_1; else: s_3_1(A in {(2*c-3*d)/(3*(c-d)), 3*(c-d)/(2*c-3*d)})";
        let spec = parse_class(src).unwrap();
        assert_eq!(token_texts(&spec.to_string()).unwrap(), token_texts(src).unwrap());
        let (i, alts) = spec.resolve(&env(&[("c", "1"), ("d", "2")])).unwrap();
        assert_eq!(i, 1);
        assert_eq!(alts.len(), 2);
        assert_eq!(alts[0].to_string(), "s_3_1(A=4/3)");
        let (_, alts) = spec.resolve(&env(&[("c", "3"), ("d", "2")])).unwrap();
        assert_eq!(alts[0].to_string(), "n_1_1 (+) s_2_1");

        let spec = parse_class("(A1+2n_1_1) (+) n_1_1").unwrap();
        let (_, alts) = spec.resolve(&Env::new()).unwrap();
        assert_eq!(alts[0].to_string(), "A1+2n_1_1 (+) n_1_1");
        let spec = parse_class("A1+s_4_3(A=1, B=2/3)").unwrap();
        let (_, alts) = spec.resolve(&Env::new()).unwrap();
        assert_eq!(alts[0].to_string(), "A1+s_4_3(A=1,B=2/3)");
        let spec = parse_class("3n_1_1").unwrap();
        assert_eq!(spec.resolve(&Env::new()).unwrap().1[0].0.len(), 3);

        let spec = parse_class(
            "s_3_1(A=(1+2*al+sqrt(1+4*al))/(-2*al)) where al=-2*(a+1)/(a+3)^2",
        )
        .unwrap();
        let (_, alts) = spec.resolve(&env(&[("a", "2")])).unwrap();
        // al = -6/25, sqrt(1+4 al) = 1/5, A = (1 - 12/25 + 1/5)/(12/25) = 3/2
        assert_eq!(alts[0].to_string(), "s_3_1(A=3/2)");

        let spec = parse_class("s_4_3((A,B) in {(1,2), (3,4)})").unwrap();
        assert_eq!(spec.resolve(&Env::new()).unwrap().1.len(), 2);
        let spec = parse_class("s_6_168(A,B in {1, 2, 3})").unwrap();
        assert_eq!(spec.resolve(&Env::new()).unwrap().1.len(), 9);
        let spec = parse_class("any{s_4_2, s_4_3, n_1_1 (+) s_3_2}").unwrap();
        let alts = spec.resolve(&Env::new()).unwrap().1;
        assert!(alts.iter().all(|a| a.0[0].free));
        assert!(!parse_class("s_4_3").unwrap().resolve(&Env::new()).unwrap().1[0].0[0].free);
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse_expr("X(1,0)+*Hb") {
            Err(ExprError::Syntax { col, .. }) => assert_eq!(col, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("2a").is_err());
    }
}
