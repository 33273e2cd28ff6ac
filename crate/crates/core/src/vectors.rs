//! f-vectors, short and long cubical h-vectors, and the reduced Euler
//! characteristic. Everything is exact integer arithmetic.
//!
//! For a complex of dimension `d - 1`:
//!
//! * `h^sc(x) = sum_j f_j (2x)^j (1 - x)^(d-1-j)`,
//! * `h^c_0 = 2^(d-1)` and `h^sc_i = h^c_i + h^c_(i+1)`,
//! * `chi~ = -1 + sum_i (-1)^i f_i`.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::CubicalComplex;
use crate::poly::{rat, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VectorError {
    #[error("vector must have at least one entry")]
    Empty,
    #[error("f-vector entries must be nonnegative with a positive last entry")]
    BadFVector,
    #[error("long h-vector must start with 2^(d-1) = {expected}, found {found}")]
    BadLongStart { expected: BigInt, found: BigInt },
    #[error("not a short cubical h-vector: f_{index} would be {value}")]
    NotRealizable { index: usize, value: String },
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// Face counts `(f_0, ..., f_(d-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(Vec<BigInt>);

impl FVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, VectorError> {
        let last = entries.last().ok_or(VectorError::Empty)?;
        if entries.iter().any(Signed::is_negative) || !last.is_positive() {
            return Err(VectorError::BadFVector);
        }
        Ok(FVector(entries))
    }

    pub fn from_counts(counts: &[u64]) -> Result<Self, VectorError> {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn top(&self) -> &BigInt {
        self.0.last().expect("nonempty")
    }

    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_ints(&self.0)
    }
}

/// `(h^sc_0, ..., h^sc_(d-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortHVector(Vec<BigInt>);

impl ShortHVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, VectorError> {
        if entries.is_empty() {
            return Err(VectorError::Empty);
        }
        Ok(ShortHVector(entries))
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_ints(&self.0)
    }
}

/// `(h^c_0, ..., h^c_d)` with `h^c_0 = 2^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LongHVector(Vec<BigInt>);

impl LongHVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, VectorError> {
        if entries.len() < 2 {
            return Err(VectorError::Empty);
        }
        let expected = pow2(entries.len() - 2);
        if entries[0] != expected {
            return Err(VectorError::BadLongStart { expected, found: entries[0].clone() });
        }
        Ok(LongHVector(entries))
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_ints(&self.0)
    }

    /// The short vector it was built from: `h^sc_i = h^c_i + h^c_(i+1)`.
    pub fn to_short(&self) -> ShortHVector {
        ShortHVector(self.0.windows(2).map(|w| &w[0] + &w[1]).collect())
    }
}

pub fn f_vector(k: &CubicalComplex) -> FVector {
    FVector::from_counts(&k.face_counts()).expect("complexes are nonempty")
}

/// `h^sc_i = sum_(j<=i) C(d-1-j, d-1-i) (-1)^(i-j) 2^j f_j`.
pub fn hsc_from_f(f: &FVector) -> ShortHVector {
    let d = f.d();
    let h = (0..d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let term = big_binomial(d - 1 - j, d - 1 - i) * pow2(j) * &f.0[j];
                    if (i - j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    ShortHVector(h)
}

/// `f_j = 2^-j sum_(i<=j) C(d-1-i, d-1-j) h^sc_i`, rejecting vectors whose
/// preimage is not a nonnegative integer f-vector. The first bad index is
/// reported.
pub fn f_from_hsc(h: &ShortHVector) -> Result<FVector, VectorError> {
    let d = h.d();
    let mut f = Vec::with_capacity(d);
    for j in 0..d {
        let sum: BigInt = (0..=j).map(|i| big_binomial(d - 1 - i, d - 1 - j) * &h.0[i]).sum();
        let (q, r) = sum.div_rem(&pow2(j));
        let bad = !r.is_zero() || q.is_negative() || (j == d - 1 && q.is_zero());
        if bad {
            let value = if r.is_zero() {
                q.to_string()
            } else {
                crate::poly::rational_to_string(&num_rational::BigRational::new(sum, pow2(j)))
            };
            return Err(VectorError::NotRealizable { index: j, value });
        }
        f.push(q);
    }
    Ok(FVector(f))
}

/// Long h-vector by the recursion from `h^c_0 = 2^(d-1)`, cross-checked
/// against the closed form
/// `h^c_i = sum_(j<i) (-1)^(i+j-1) h^sc_j + (-1)^i 2^(d-1)`.
///
/// Panics if the two disagree; that can only be an arithmetic bug.
pub fn hc_from_hsc(h: &ShortHVector) -> LongHVector {
    let d = h.d();
    let mut hc = Vec::with_capacity(d + 1);
    hc.push(pow2(d - 1));
    for i in 0..d {
        let next = &h.0[i] - &hc[i];
        hc.push(next);
    }
    let closed = hc_closed_form(h);
    assert_eq!(hc, closed, "recursive and closed-form long h-vectors disagree");
    LongHVector(hc)
}

pub fn hc_closed_form(h: &ShortHVector) -> Vec<BigInt> {
    let d = h.d();
    let sign = |k: usize| if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    (0..=d)
        .map(|i| {
            let s: BigInt = (0..i).map(|j| sign(i + j + 1) * &h.0[j]).sum();
            s + sign(i) * pow2(d - 1)
        })
        .collect()
}

/// `chi~(K) = -1 + sum_i (-1)^i f_i`.
pub fn euler_reduced(f: &FVector) -> BigInt {
    f.0.iter()
        .enumerate()
        .fold(-BigInt::one(), |acc, (i, fi)| if i % 2 == 0 { acc + fi } else { acc - fi })
}

/// Compares `(1 + x) h^c(x)` with `2^(d-1) + x h^sc(x) + 2^(d-1) (-x)^(d+1) chi~`
/// as exact polynomials.
pub fn check_long_short_identity(f: &FVector) -> bool {
    let d = f.d();
    let hsc = hsc_from_f(f);
    let hc = hc_from_hsc(&hsc);
    let chi = euler_reduced(f);
    let lhs = &RatPoly::linear(1, 1) * &hc.polynomial();
    let top_sign = if (d + 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let rhs = &(&RatPoly::constant(rat(pow2(d - 1))) + &(&RatPoly::x() * &hsc.polynomial()))
        + &RatPoly::monomial(rat(pow2(d - 1) * top_sign * chi), d + 1);
    lhs == rhs
}

/// All vectors of a complex at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors {
    pub f: FVector,
    pub hsc: ShortHVector,
    pub hc: LongHVector,
    pub euler_reduced: BigInt,
}

impl Vectors {
    pub fn of_complex(k: &CubicalComplex) -> Self {
        Self::of_f(f_vector(k))
    }

    pub fn of_f(f: FVector) -> Self {
        let hsc = hsc_from_f(&f);
        let hc = hc_from_hsc(&hsc);
        let euler_reduced = euler_reduced(&f);
        Vectors { f, hsc, hc, euler_reduced }
    }
}
