//! Exact scalars: rationals with a machine-word fast path, and elements of a
//! quadratic extension `Q(sqrt m)`.
//!
//! Both implement [`Field`], which is what the linear algebra and the Lie
//! algebra engine are generic over.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is not square-free")]
    NotSquareFree(i64),
    #[error("mixed radicands sqrt({0}) and sqrt({1})")]
    MixedRadicands(i64, i64),
    #[error("radicand too large to factor: {0}")]
    RadicandTooLarge(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Rational

/// An exact rational number, always in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are stored inline;
/// everything else falls back to a big rational. The representation is
/// canonical, so derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_i128(v as i128, 1)
    }

    /// Builds `num/den` in lowest terms; rejects a zero denominator.
    pub fn normalize(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    pub fn new(num: i64, den: i64) -> Result<Self, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rational::zero();
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces; new_raw callers must pass reduced values.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) if a != i64::MIN => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        match &self.0 {
            Repr::Small(0, _) => Err(ExactError::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self.clone() * rhs.recip()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ExactError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Rational::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * &base;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Height `max(|p|, q)`, used to bound sampled parameter values.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom();
        if n > d {
            n
        } else {
            d
        }
    }

    /// Square root if this is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Self::from_big(BigRational::new_raw(rn, rd)))
        } else {
            None
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `p` or `p/q` with optional sign on `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let valid = |t: &str, signed: bool| {
            let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(n, true) || !valid(d, false) {
            return Err(bad());
        }
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rational::normalize(n, d)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn add_r(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(0, _), _) => y.clone(),
        (_, Repr::Small(0, _)) => x.clone(),
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                Rational::from_i128(a + c, b)
            } else {
                Rational::from_i128(a * d + c * b, b * d)
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_r(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            // Cross-cancel first so the products stay inside i128.
            let g1 = gcd_i128(a, d);
            let g2 = gcd_i128(c, b);
            Rational::from_i128((a / g1) * (c / g2), (b / g2) * (d / g1))
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_r(x: &Rational) -> Rational {
    match &x.0 {
        Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
        Repr::Big(r) => Rational::from_big(-r.clone()),
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                $body(&self, rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                $body(self, rhs)
            }
        }
    };
}

rational_binop!(Add, add, add_r);
rational_binop!(Sub, sub, |x: &Rational, y: &Rational| add_r(x, &neg_r(y)));
rational_binop!(Mul, mul, mul_r);
rational_binop!(Div, div, |x: &Rational, y: &Rational| x
    .checked_div(y)
    .expect("rational division by zero"));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_r(&self)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg_r(self)
    }
}

// ---------------------------------------------------------------------------
// Square-free parts

const FACTOR_LIMIT: u64 = 1 << 40;

/// Writes a non-zero integer as `s^2 * m` with `m` square-free (sign kept in `m`).
pub fn square_free_decompose(n: &BigInt) -> Result<(BigInt, i64), ExactError> {
    let sign: i64 = if n.is_negative() { -1 } else { 1 };
    let mag = n.abs();
    let v = mag
        .to_u64()
        .filter(|v| *v < FACTOR_LIMIT)
        .ok_or_else(|| ExactError::RadicandTooLarge(n.to_string()))?;
    let mut rest = v;
    let mut square: u64 = 1;
    let mut free: u64 = 1;
    let mut p = 2u64;
    while p * p <= rest {
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        square *= p.pow(k / 2);
        if k % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest;
    Ok((BigInt::from(square), sign * free as i64))
}

pub fn is_square_free(m: i64) -> bool {
    if m == 0 {
        return false;
    }
    matches!(square_free_decompose(&BigInt::from(m)), Ok((s, _)) if s.is_one())
}

// ---------------------------------------------------------------------------
// Quadratic extension

/// `a + b*sqrt(m)` with `m` square-free and `m != 0, 1`.
///
/// Elements with `b = 0` are stored with `m = 0` and combine with any radicand.
/// Negative `m` is allowed; it is needed for rotation-type weights such as
/// `1 +- i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    m: i64,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, m: i64) -> Result<Self, ExactError> {
        if b.is_zero() || m == 0 {
            return Ok(Self::rational(a));
        }
        if m == 1 {
            return Ok(Self::rational(a + b));
        }
        if !is_square_free(m) {
            return Err(ExactError::NotSquareFree(m));
        }
        Ok(QuadExt { m, a, b })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            m: 0,
            a,
            b: Rational::zero(),
        }
    }

    /// The square root of a rational, as an element of the matching extension.
    pub fn sqrt_of(r: &Rational) -> Result<Self, ExactError> {
        if r.is_zero() {
            return Ok(Self::rational(Rational::zero()));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = r.numer() * r.denom();
        let (s, m) = square_free_decompose(&pq)?;
        let coeff = Rational::normalize(s, r.denom())?;
        if m == 1 {
            Ok(Self::rational(coeff))
        } else {
            Self::new(Rational::zero(), coeff, m)
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common(&self, o: &Self) -> Result<i64, ExactError> {
        match (self.m, o.m) {
            (0, m) | (m, 0) => Ok(m),
            (m, n) if m == n => Ok(m),
            (m, n) => Err(ExactError::MixedRadicands(m, n)),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        let m = self.common(o)?;
        Self::new(&self.a + &o.a, &self.b + &o.b, m)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ExactError> {
        let m = self.common(o)?;
        Self::new(&self.a - &o.a, &self.b - &o.b, m)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let m = self.common(o)?;
        if m == 0 {
            return Ok(Self::rational(&self.a * &o.a));
        }
        let rm = Rational::from_int(m);
        let a = &self.a * &o.a + &(&self.b * &o.b) * &rm;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::new(a, b, m)
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            m: self.m,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a^2 - m b^2`; zero only for zero since `sqrt m` is irrational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &(&self.b * &self.b) * &Rational::from_int(self.m)
    }

    pub fn try_inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm().recip()?;
        Self::new(&self.a * &n, -(&self.b * &n), self.m)
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, ExactError> {
        self.try_mul(&o.try_inv()?)
    }

    /// Lift to the extension with radicand `m` (no-op on the value).
    pub fn radicand_compatible(&self, m: i64) -> bool {
        self.m == 0 || self.m == m
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.signum() < 0 { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.a, sign, self.b.abs(), self.m)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = ExactError;

    /// Accepts a plain rational or `a+b*sqrt(m)` / `a-b*sqrt(m)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ExactError::Parse(s.to_string());
        let Some(body) = t.strip_suffix(')') else {
            return Ok(QuadExt::rational(t.parse()?));
        };
        let (head, m) = body.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let m: i64 = m.parse().map_err(|_| bad())?;
        // split head into a and signed b at the last sign that is not leading
        let idx = head
            .char_indices()
            .skip(1)
            .filter(|(i, c)| (*c == '+' || *c == '-') && &head[i - 1..*i] != "/")
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a: Rational = head[..idx].parse()?;
        let b: Rational = head[idx + 1..].parse()?;
        let b = if &head[idx..idx + 1] == "-" { -b } else { b };
        if b.is_zero() || !is_square_free(m) || m == 1 {
            return Err(bad());
        }
        QuadExt::new(a, b, m)
    }
}

// ---------------------------------------------------------------------------
// Field abstraction

/// The operations the exact linear algebra needs.
///
/// Arithmetic on [`QuadExt`] panics on mixed radicands; callers that combine
/// user-supplied values validate compatibility first.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn from_quad(q: &QuadExt) -> Option<Self>;
    fn to_quad(&self) -> QuadExt;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_int(v))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Exact rank of a large system by a field-specific method, if one is
    /// faster than plain elimination.
    fn fast_rank(_rows: &[Vec<Self>], _ncols: usize) -> Option<usize> {
        None
    }

    /// Total order on representations. Not a field ordering; used only to
    /// build canonical forms.
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (x, y) = (self.to_quad(), other.to_quad());
        x.m.cmp(&y.m).then(x.a.cmp(&y.a)).then(x.b.cmp(&y.b))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_quad(q: &QuadExt) -> Option<Self> {
        q.as_rational().cloned()
    }
    fn to_quad(&self) -> QuadExt {
        QuadExt::rational(self.clone())
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn fast_rank(rows: &[Vec<Self>], ncols: usize) -> Option<usize> {
        Some(crate::modular::rank(rows, ncols))
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        QuadExt::rational(r.clone())
    }
    fn from_quad(q: &QuadExt) -> Option<Self> {
        Some(q.clone())
    }
    fn to_quad(&self) -> QuadExt {
        self.clone()
    }
}

macro_rules! quad_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$f(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'a QuadExt) -> QuadExt {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a, 'b> $tr<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &'b QuadExt) -> QuadExt {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

quad_binop!(Add, add, try_add);
quad_binop!(Sub, sub, try_sub);
quad_binop!(Mul, mul, try_mul);
quad_binop!(Div, div, try_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            m: self.m,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<'a> Neg for &'a QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

/// Parses a scalar string into any field, failing if the value does not live there.
pub fn parse_scalar<F: Field>(s: &str) -> Result<F, ExactError> {
    let q: QuadExt = s.parse()?;
    F::from_quad(&q).ok_or_else(|| ExactError::Parse(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let x = Rational::normalize(BigInt::from(6), BigInt::from(-4)).unwrap();
        assert_eq!(x.to_string(), "-3/2");
        let z = Rational::normalize(BigInt::from(0), BigInt::from(7)).unwrap();
        assert_eq!(z, Rational::zero());
        assert_eq!(z.denom(), BigInt::from(1));
        assert_eq!(
            Rational::normalize(BigInt::from(1), BigInt::from(0)),
            Err(ExactError::ZeroDenominator)
        );
    }

    #[test]
    fn small_big_boundary() {
        let big = Rational::from_int(i64::MAX) + Rational::one();
        assert!(matches!(big.0, Repr::Big(_)));
        let back = big - Rational::one();
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(back, Rational::from_int(i64::MAX));
        let huge = Rational::from_int(i64::MAX) * Rational::from_int(i64::MAX);
        let q = huge.checked_div(&Rational::from_int(i64::MAX)).unwrap();
        assert_eq!(q, Rational::from_int(i64::MAX));
        let min = Rational::from_int(i64::MIN + 1) - Rational::one();
        assert!(matches!(min.0, Repr::Big(_)));
        assert_eq!(min, r("-9223372036854775808"));
    }

    #[test]
    fn quad_identities() {
        let s2 = QuadExt::sqrt_of(&Rational::from_int(2)).unwrap();
        assert_eq!(&s2 * &s2, QuadExt::from(Rational::from_int(2)));
        let x = QuadExt::new(Rational::one(), Rational::one(), 2).unwrap();
        let y = QuadExt::new(Rational::one(), -Rational::one(), 2).unwrap();
        assert_eq!(&x * &y, QuadExt::from(-Rational::one()));
        let s3 = QuadExt::sqrt_of(&Rational::from_int(3)).unwrap();
        assert_eq!(s2.try_add(&s3), Err(ExactError::MixedRadicands(2, 3)));
        let s12 = QuadExt::sqrt_of(&Rational::from_int(12)).unwrap();
        assert_eq!(s12.to_string(), "0+2*sqrt(3)");
        let q = QuadExt::sqrt_of(&r("5/3")).unwrap();
        assert_eq!(q.to_string(), "0+1/3*sqrt(15)");
        assert_eq!(QuadExt::new(r("1"), r("2"), 4), Err(ExactError::NotSquareFree(4)));
        assert_eq!(QuadExt::new(r("1"), r("2"), 1).unwrap(), QuadExt::from(r("3")));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-3/2", "7", "1/2+3*sqrt(15)", "-1/3-2/5*sqrt(2)", "0+1*sqrt(-1)"] {
            let q: QuadExt = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1+0*sqrt(2)".parse::<QuadExt>().is_err());
        assert!("1+1*sqrt(8)".parse::<QuadExt>().is_err());
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_decompose(&BigInt::from(72)).unwrap(), (BigInt::from(6), 2));
        assert_eq!(square_free_decompose(&BigInt::from(-4)).unwrap(), (BigInt::from(2), -1));
        assert!(is_square_free(15) && !is_square_free(18) && is_square_free(-1));
    }
}
