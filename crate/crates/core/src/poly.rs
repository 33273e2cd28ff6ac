//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are stored densely, constant term first, with no trailing
//! zeros; the zero polynomial has no coefficients at all. Real-root counting
//! is done with a Sturm chain of the square-free part, evaluated only through
//! leading-coefficient signs, so nothing here ever touches floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("target degree {m} is smaller than the polynomial degree {deg}")]
    DegreeTooSmall { m: usize, deg: usize },
    #[error("exact division left a nonzero remainder {0}")]
    NonzeroRemainder(RatPoly),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Builds the rational `n / 1`.
pub fn rat<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Builds the rational `n / d`. Panics if `d` is zero.
pub fn ratio<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `2^k` as a rational, with negative `k` allowed.
pub fn pow2(k: i64) -> BigRational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Renders `p/q` in lowest terms, or just `p` when the denominator is 1.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// Decimal rendering with `digits` significant digits. Display only.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Find exponent e with 10^e <= a < 10^(e+1).
    let ten = rat(10);
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let mut mantissa = scaled;
    for _ in 1..digits {
        mantissa *= &ten;
    }
    let mut m = mantissa.round().to_integer();
    let limit = num_traits::pow(BigInt::from(10), digits);
    if m >= limit {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let body = format!("{}.{}e{}", &s[..1], s[1..].trim_end_matches('0'), e);
    let body = body.replace(".e", "e");
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl TryFrom<Vec<String>> for RatPoly {
    type Error = PolyError;

    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map(RatPoly::new)
    }
}

impl From<RatPoly> for Vec<String> {
    fn from(p: RatPoly) -> Self {
        p.coeffs.iter().map(rational_to_string).collect()
    }
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints<T: Clone + Into<BigInt>>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().cloned().map(rat).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `a x + b` for integers.
    pub fn linear(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(vec![rat(b), rat(a)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients `0..len`, zero-padded. Panics if the degree is `>= len`.
    pub fn padded(&self, len: usize) -> Vec<BigRational> {
        assert!(self.coeffs.len() <= len, "polynomial {self} does not fit in {len} coefficients");
        (0..len).map(|k| self.coeff(k)).collect()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as u64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must be exact; a nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &RatPoly) -> Result<RatPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonzeroRemainder(r))
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, each with multiplicity one.
    pub fn square_free_part(&self) -> Result<RatPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` up to the last nonzero term.
    pub fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur).expect("cur is nonzero");
            prev = cur;
            cur = -r;
        }
        chain
    }

    /// Returns `(ax+b)^k (cx+e)^(m-k)` summed against the coefficients, i.e.
    /// `(cx+e)^m * p((ax+b)/(cx+e))` expanded.
    pub fn mobius_transform(
        &self,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        e: impl Into<BigInt>,
        m: usize,
    ) -> Result<RatPoly, PolyError> {
        let deg = self.degree().unwrap_or(0);
        if m < deg {
            return Err(PolyError::DegreeTooSmall { m, deg });
        }
        let num = RatPoly::linear(a, b);
        let den = RatPoly::linear(c, e);
        // Powers of the denominator, reused across terms.
        let mut den_pows = Vec::with_capacity(m + 1);
        den_pows.push(RatPoly::one());
        for k in 1..=m {
            den_pows.push(&den_pows[k - 1] * &den);
        }
        let mut acc = RatPoly::zero();
        let mut num_pow = RatPoly::one();
        for (k, ck) in self.coeffs.iter().enumerate() {
            if !ck.is_zero() {
                acc = &acc + &(&num_pow * &den_pows[m - k]).scale(ck);
            }
            num_pow = &num_pow * &num;
        }
        Ok(acc)
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots.
pub fn real_root_count(p: &RatPoly) -> Result<usize, PolyError> {
    let sf = p.square_free_part()?;
    let chain = sf.sturm_chain();
    let at_pos_inf = sign_variations(chain.iter().map(|q| sign_of(q.leading().expect("nonzero"))));
    let at_neg_inf = sign_variations(chain.iter().map(|q| {
        let s = sign_of(q.leading().expect("nonzero"));
        if q.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg_inf - at_pos_inf)
}

/// True iff every complex root of `p` is real. Constants qualify vacuously.
pub fn is_real_rooted(p: &RatPoly) -> Result<bool, PolyError> {
    let sf = p.square_free_part()?;
    Ok(real_root_count(&sf)? == sf.degree().unwrap_or(0))
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = rational_to_string(c);
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Nonnegativity, palindromicity and unimodality of a coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub nonnegative: bool,
    pub symmetric: bool,
    pub unimodal: bool,
}

pub fn shape_predicates<T: PartialOrd + Zero>(v: &[T]) -> Shape {
    let n = v.len();
    let zero = T::zero();
    let nonnegative = v.iter().all(|x| *x >= zero);
    let symmetric = (0..n / 2).all(|i| v[i] == v[n - 1 - i]);
    // Climb while non-decreasing, then require non-increasing to the end.
    let mut k = 0;
    while k + 1 < n && v[k] <= v[k + 1] {
        k += 1;
    }
    let unimodal = (k..n.saturating_sub(1)).all(|i| v[i] >= v[i + 1]);
    Shape { nonnegative, symmetric, unimodal }
}
