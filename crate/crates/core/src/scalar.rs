//! Scalars: exact elements of a multiquadratic extension of the rationals, and `f64`.
//!
//! [`Surd`] stores a finite sum `Σ c_r √r` with rational `c_r` and square-free radicands `r`
//! (`r = 1` is the rational part). Every literal that shows up in the catalog (√2, √3, √(3/2))
//! lives in this ring, and the ring is closed under division, so the exact linear algebra in
//! [`crate::linalg`] runs over it unchanged.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GeodesyError;

/// Zero test used by float-mode scalars.
pub const FLOAT_ZERO_TOL: f64 = 1e-9;
/// Pivot threshold for float-mode Gauss–Jordan elimination.
pub const FLOAT_PIVOT_TOL: f64 = 1e-10;

/// Field operations shared by exact and float scalars.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Exact zero test, or `|x| <= FLOAT_ZERO_TOL` for floats.
    fn is_zero(&self) -> bool;
    /// Zero test used when choosing elimination pivots.
    fn is_pivot_zero(&self) -> bool {
        self.is_zero()
    }
    fn to_f64(&self) -> f64;
    /// Float scalars accept any `f64`; exact scalars return `None`.
    fn from_f64(v: f64) -> Option<Self>;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_ZERO_TOL
    }
    fn is_pivot_zero(&self) -> bool {
        self.abs() <= FLOAT_PIVOT_TOL
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Option<Self> {
        Some(v)
    }
}

/// Exact element of ℚ[√d₁, …, √dₘ].
///
/// Invariant: every key is square-free and every stored coefficient is nonzero, so structural
/// equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, BigRational>,
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Split `n` into `(k, s)` with `n = k² s` and `s` square-free.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (k, s * n)
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut p = 2u64;
    let mut best = 1;
    while p * p <= n {
        while n.is_multiple_of(p) {
            best = p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        n
    } else {
        best
    }
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_term(1, r);
        s
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(big(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `coeff · √radicand` for any radicand (not necessarily square-free).
    pub fn sqrt_term(coeff: BigRational, radicand: u64) -> Self {
        if radicand == 0 {
            return Self::zero();
        }
        let (k, s) = square_free_split(radicand);
        let mut out = Self::zero();
        out.add_term(s, coeff * BigRational::from_integer(BigInt::from(k)));
        out
    }

    /// `√radicand`.
    pub fn sqrt_int(radicand: u64) -> Self {
        Self::sqrt_term(BigRational::one(), radicand)
    }

    /// Square root of a nonnegative rational, `√(p/q) = √(pq)/q`.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self, GeodesyError> {
        if r.is_negative() {
            return Err(GeodesyError::Parse(format!("square root of negative rational {r}")));
        }
        let p = r.numer().to_u64();
        let q = r.denom().to_u64();
        match (p, q) {
            (Some(p), Some(q)) => {
                let pq = p.checked_mul(q).ok_or_else(|| {
                    GeodesyError::Parse(format!("radicand of √({r}) too large"))
                })?;
                Ok(Self::sqrt_term(
                    BigRational::new(BigInt::one(), BigInt::from(q)),
                    pq,
                ))
            }
            _ => Err(GeodesyError::Parse(format!("radicand of √({r}) too large"))),
        }
    }

    fn add_term(&mut self, radicand: u64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rational value if there are no radical terms.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// Iterate `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(r, c)| (*r, c))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt())
            .sum()
    }

    /// Sign of the value. Exact for zero; otherwise decided from a double evaluation, which is
    /// reliable for the small-height numbers this crate handles.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        self.to_f64().partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                let g = ra.gcd(rb);
                let radicand = (ra / g) * (rb / g);
                let coeff = ca * cb * BigRational::from_integer(BigInt::from(g));
                out.add_term(radicand, coeff);
            }
        }
        out
    }

    /// Multiplicative inverse via successive conjugation: with `p` the largest prime in any
    /// radicand, write `x = u + v√p` and use `1/x = (u − v√p)/(u² − p v²)`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let p = self
            .terms
            .keys()
            .map(|&r| largest_prime_factor(r))
            .max()
            .unwrap_or(1);
        let mut u = Self::zero();
        let mut v = Self::zero();
        for (r, c) in &self.terms {
            if r % p == 0 {
                v.add_term(r / p, c.clone());
            } else {
                u.add_term(*r, c.clone());
            }
        }
        let conj = &u - &(&v * &Self::sqrt_int(p));
        let norm = &(&u * &u) - &(&(&v * &v) * &Self::from_i64(p as i64));
        let norm_inv = norm.inverse()?;
        Some(&conj * &norm_inv)
    }

    /// Render in the scalar-string grammar:
    /// `term (('+'|'-') term)*`, `term := rational | rational '*' 'sqrt(' uint ')' | 'sqrt(' uint ')'`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (r, c)) in self.terms.iter().enumerate() {
            let magnitude = if i == 0 { c.clone() } else { c.abs() };
            if i > 0 {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            if *r == 1 {
                out.push_str(&render_rational(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&format!("sqrt({r})"));
            } else {
                out.push_str(&format!("{}*sqrt({r})", render_rational(&magnitude)));
            }
        }
        out
    }

    /// Parse the scalar-string grammar. Whitespace is ignored; radicands are normalized.
    pub fn parse(text: &str) -> Result<Self, GeodesyError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = ScalarParser { chars: &chars, pos: 0, source: text };
        parser.scalar()
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

struct ScalarParser<'a> {
    chars: &'a [char],
    pos: usize,
    source: &'a str,
}

impl ScalarParser<'_> {
    fn error(&self, what: &str) -> GeodesyError {
        GeodesyError::Parse(format!(
            "scalar {:?}: {what} at offset {}",
            self.source, self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn scalar(&mut self) -> Result<Surd, GeodesyError> {
        let mut total = self.term(true)?;
        while let Some(c) = self.peek() {
            let negate = match c {
                '+' => false,
                '-' => true,
                _ => return Err(self.error("expected '+' or '-'")),
            };
            self.pos += 1;
            let t = self.term(false)?;
            total = if negate { total - t } else { total + t };
        }
        Ok(total)
    }

    fn term(&mut self, allow_sign: bool) -> Result<Surd, GeodesyError> {
        if self.starts_with("sqrt(") {
            let r = self.radical()?;
            return Ok(Surd::sqrt_int(r));
        }
        let q = self.rational(allow_sign)?;
        if self.peek() == Some('*') {
            self.pos += 1;
            if !self.starts_with("sqrt(") {
                return Err(self.error("expected 'sqrt(' after '*'"));
            }
            let r = self.radical()?;
            return Ok(Surd::sqrt_term(q, r));
        }
        Ok(Surd::from_rational(q))
    }

    fn starts_with(&self, s: &str) -> bool {
        let needle: Vec<char> = s.chars().collect();
        self.chars[self.pos..].starts_with(&needle)
    }

    fn radical(&mut self) -> Result<u64, GeodesyError> {
        self.pos += "sqrt(".len();
        let digits = self.digits()?;
        if self.peek() != Some(')') {
            return Err(self.error("expected ')'"));
        }
        self.pos += 1;
        digits
            .parse::<u64>()
            .map_err(|_| self.error("radicand out of range"))
    }

    fn digits(&mut self) -> Result<String, GeodesyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self, allow_sign: bool) -> Result<BigRational, GeodesyError> {
        let negative = allow_sign && self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let num: BigInt = self.digits()?.parse().map_err(|_| self.error("bad integer"))?;
        let num = if negative { -num } else { num };
        if self.peek() == Some('/') {
            self.pos += 1;
            let den: BigInt = self.digits()?.parse().map_err(|_| self.error("bad integer"))?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }
}

impl FromStr for Surd {
    type Err = GeodesyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Surd::parse(s)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({})", self.render())
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(*r, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        self.mul_ref(rhs)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        &self + &rhs
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        self.mul_ref(&rhs)
    }
}

impl Div for Surd {
    type Output = Surd;
    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, rhs: Surd) -> Surd {
        let inv = rhs.inverse().expect("division of Surd by zero");
        self.mul_ref(&inv)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(mut self) -> Surd {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Scalar for Surd {
    const EXACT: bool = true;

    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::from_i64(1)
    }
    fn from_i64(v: i64) -> Self {
        Surd::from_i64(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Surd::ratio(num, den)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn to_f64(&self) -> f64 {
        Surd::to_f64(self)
    }
    fn from_f64(_: f64) -> Option<Self> {
        None
    }
}
