//! Transformation matrices taking h-vectors of `K` to h-vectors of `sd(K)`,
//! the closed form for iterated subdivisions, and distances to the limits.
//!
//! Column `j` of `B(d)` holds the coefficients of
//! `(3x + 1)^j (x + 3)^(d-1-j) / 2^(d-1)`. `C(d)` is built three separate
//! ways (per-column closed forms, alternating sums of `B`, and the bivariate
//! generating function) and the results must agree exactly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{pow2, rat, rational_to_string, PolyError, RatPoly};
use crate::vectors::{LongHVector, ShortHVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("d must be at least {min}, got {d}")]
    BadDimension { d: usize, min: usize },
    #[error("C({d}) constructions disagree: {detail}")]
    CrossCheck { d: usize, detail: String },
    #[error("entry {index} of the transformed vector is {value}, not an integer")]
    NonIntegral { index: usize, value: String },
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    B,
    C,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::B => write!(f, "B"),
            MatrixKind::C => write!(f, "C"),
        }
    }
}

/// Exact rational matrix, `entries[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    pub kind: MatrixKind,
    pub d: usize,
    pub entries: Vec<Vec<BigRational>>,
}

/// Wire form with rationals as `"p/q"` strings, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffMatrixJson {
    pub kind: MatrixKind,
    pub d: usize,
    pub entries: Vec<Vec<String>>,
}

impl CoeffMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn to_json(&self) -> CoeffMatrixJson {
        CoeffMatrixJson {
            kind: self.kind,
            d: self.d,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(rational_to_string).collect())
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("matrix JSON serializes")
    }

    /// Exact matrix-vector product.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.size(), "vector length does not match {}({})", self.kind, self.d);
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn from_columns(kind: MatrixKind, d: usize, columns: Vec<Vec<BigRational>>) -> Self {
        let n = columns.len();
        let entries = (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect();
        CoeffMatrix { kind, d, entries }
    }
}

type MatrixCache = RwLock<HashMap<(MatrixKind, usize), Arc<CoeffMatrix>>>;

fn cache() -> &'static MatrixCache {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(
    kind: MatrixKind,
    d: usize,
    build: impl FnOnce() -> Result<CoeffMatrix, TransformError>,
) -> Result<Arc<CoeffMatrix>, TransformError> {
    if let Some(m) = cache().read().expect("matrix cache poisoned").get(&(kind, d)) {
        return Ok(Arc::clone(m));
    }
    // Built outside the lock; concurrent builders produce identical values.
    let m = Arc::new(build()?);
    let mut w = cache().write().expect("matrix cache poisoned");
    Ok(Arc::clone(w.entry((kind, d)).or_insert(m)))
}

fn check_d(d: usize, min: usize) -> Result<(), TransformError> {
    if d < min {
        Err(TransformError::BadDimension { d, min })
    } else {
        Ok(())
    }
}

/// `(3x+1)^a (x+3)^b`.
fn mixed_power(a: usize, b: usize) -> RatPoly {
    &RatPoly::linear(3, 1).pow(a) * &RatPoly::linear(1, 3).pow(b)
}

/// `B(d)`, cached per `d`.
pub fn b_matrix(d: usize) -> Result<Arc<CoeffMatrix>, TransformError> {
    check_d(d, 1)?;
    cached(MatrixKind::B, d, || {
        let scale = pow2(-(d as i64 - 1));
        let columns = (0..d).map(|j| mixed_power(j, d - 1 - j).scale(&scale).padded(d)).collect();
        Ok(CoeffMatrix::from_columns(MatrixKind::B, d, columns))
    })
}

/// `C(d)`, cached per `d`. Fails only if the three constructions disagree.
pub fn c_matrix(d: usize) -> Result<Arc<CoeffMatrix>, TransformError> {
    check_d(d, 1)?;
    cached(MatrixKind::C, d, || {
        let closed = c_matrix_closed_form(d)?;
        let alternating = c_matrix_alternating(d)?;
        let bivariate = c_matrix_bivariate(d)?;
        for (name, other) in [("alternating sums", &alternating), ("bivariate series", &bivariate)] {
            if let Some((i, j)) = first_difference(&closed, other) {
                return Err(TransformError::CrossCheck {
                    d,
                    detail: format!(
                        "entry ({i},{j}): closed form {} vs {name} {}",
                        rational_to_string(&closed.entries[i][j]),
                        rational_to_string(&other.entries[i][j])
                    ),
                });
            }
        }
        Ok(closed)
    })
}

fn first_difference(a: &CoeffMatrix, b: &CoeffMatrix) -> Option<(usize, usize)> {
    let n = a.size();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| a.entries[i][j] != b.entries[i][j])
}

/// Columns from the three per-column generating functions:
/// `j = 0`: `(x (x+3)^(d-1) / 2^(d-1) + 1) / (1 + x)`;
/// `0 < j < d`: `x (3x+1)^(j-1) (x+3)^(d-1-j) / 2^(d-3)`;
/// `j = d`: `(x (3x+1)^(d-1) / 2^(d-1) + x^(d+1)) / (1 + x)`.
pub fn c_matrix_closed_form(d: usize) -> Result<CoeffMatrix, TransformError> {
    check_d(d, 1)?;
    let one_plus_x = RatPoly::linear(1, 1);
    let x = RatPoly::x();
    let inv_top = pow2(-(d as i64 - 1));
    let mut columns = Vec::with_capacity(d + 1);
    let first = &(&x * &mixed_power(0, d - 1)).scale(&inv_top) + &RatPoly::one();
    columns.push(first.div_exact(&one_plus_x)?.padded(d + 1));
    let mid_scale = pow2(-(d as i64 - 3));
    for j in 1..d {
        columns.push((&x * &mixed_power(j - 1, d - 1 - j)).scale(&mid_scale).padded(d + 1));
    }
    let last = &(&x * &mixed_power(d - 1, 0)).scale(&inv_top) + &RatPoly::monomial(rat(1), d + 1);
    columns.push(last.div_exact(&one_plus_x)?.padded(d + 1));
    Ok(CoeffMatrix::from_columns(MatrixKind::C, d, columns))
}

/// `C(d,0,j) = [j = 0]`, and for `i >= 1`
/// `C(d,i,j) = sum_(k<i) (-1)^(i+k-1) (B(d,k,j) + B(d,k,j-1)) + [j = 0] (-1)^i`
/// with `B(d,k,-1) = B(d,k,d) = 0`.
pub fn c_matrix_alternating(d: usize) -> Result<CoeffMatrix, TransformError> {
    let b = b_matrix(d)?;
    let b_at = |k: usize, j: isize| -> BigRational {
        if j < 0 || j as usize >= d || k >= d {
            BigRational::zero()
        } else {
            b.entries[k][j as usize].clone()
        }
    };
    let sign = |e: usize| if e.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let mut entries = vec![vec![BigRational::zero(); d + 1]; d + 1];
    entries[0][0] = BigRational::one();
    for (i, row) in entries.iter_mut().enumerate().skip(1) {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut s: BigRational = (0..i)
                .map(|k| sign(i + k + 1) * (b_at(k, j as isize) + b_at(k, j as isize - 1)))
                .sum();
            if j == 0 {
                s += sign(i);
            }
            *cell = s;
        }
    }
    Ok(CoeffMatrix { kind: MatrixKind::C, d, entries })
}

/// Polynomial in `y` with coefficients in `Q[x]`, index = power of `y`.
type BiPoly = Vec<RatPoly>;

fn bi_trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(RatPoly::is_zero) {
        p.pop();
    }
    p
}

/// Exact division in `Q[x][y]`; every step's coefficient division in `Q[x]`
/// must be exact too.
fn bi_div_exact(num: &BiPoly, den: &BiPoly) -> Result<BiPoly, TransformError> {
    let den = bi_trim(den.clone());
    let lead = den.last().ok_or(PolyError::DivisionByZero)?.clone();
    let mut rem = bi_trim(num.clone());
    if rem.len() < den.len() {
        return if rem.is_empty() { Ok(Vec::new()) } else { Err(PolyError::NonzeroRemainder(rem[0].clone()).into()) };
    }
    let mut quot = vec![RatPoly::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + den.len() - 1].div_exact(&lead)?;
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &(&c * dc);
        }
        quot[k] = c;
    }
    if let Some(r) = bi_trim(rem).into_iter().next() {
        return Err(PolyError::NonzeroRemainder(r).into());
    }
    Ok(quot)
}

/// Coefficients of `x^i y^j` in
/// `(1 + x^(d+1) y^d) / (1+x)
///  + x y / 2^(d-3) * ((x+3)^(d-1) - (3x+1)^(d-1) y^(d-1)) / (x+3 - (3x+1) y)
///  + x / (2^(d-1) (1+x)) * ((x+3)^(d-1) + (3x+1)^(d-1) y^d)`.
pub fn c_matrix_bivariate(d: usize) -> Result<CoeffMatrix, TransformError> {
    check_d(d, 1)?;
    let x = RatPoly::x();
    let one_plus_x = RatPoly::linear(1, 1);
    let inv_top = pow2(-(d as i64 - 1));

    // Outer terms share the denominator 1 + x; combine per power of y.
    let mut outer: BiPoly = vec![RatPoly::zero(); d + 1];
    outer[0] = &RatPoly::one() + &(&x * &RatPoly::linear(1, 3).pow(d - 1)).scale(&inv_top);
    outer[d] = &outer[d]
        + &(&RatPoly::monomial(rat(1), d + 1) + &(&x * &RatPoly::linear(3, 1).pow(d - 1)).scale(&inv_top));
    let outer: BiPoly = outer.iter().map(|c| c.div_exact(&one_plus_x)).collect::<Result<_, _>>()?;

    let mut num: BiPoly = vec![RatPoly::zero(); d];
    num[0] = RatPoly::linear(1, 3).pow(d - 1);
    num[d - 1] = &num[d - 1] - &RatPoly::linear(3, 1).pow(d - 1);
    let den: BiPoly = vec![RatPoly::linear(1, 3), -RatPoly::linear(3, 1)];
    let geometric = bi_div_exact(&num, &den)?;
    let mid_scale = pow2(-(d as i64 - 3));

    let mut columns = vec![vec![BigRational::zero(); d + 1]; d + 1];
    for (j, col) in columns.iter_mut().enumerate() {
        let mut c = outer.get(j).cloned().unwrap_or_else(RatPoly::zero);
        // The middle term carries an extra factor of y.
        if j >= 1 {
            if let Some(g) = geometric.get(j - 1) {
                c = &c + &(&x * g).scale(&mid_scale);
            }
        }
        if c.degree().is_some_and(|deg| deg > d) {
            return Err(TransformError::CrossCheck { d, detail: format!("column {j} has degree above {d}") });
        }
        *col = c.padded(d + 1);
    }
    Ok(CoeffMatrix::from_columns(MatrixKind::C, d, columns))
}

fn to_rationals(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

fn to_integers(v: Vec<BigRational>) -> Result<Vec<BigInt>, TransformError> {
    v.into_iter()
        .enumerate()
        .map(|(index, r)| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(TransformError::NonIntegral { index, value: rational_to_string(&r) })
            }
        })
        .collect()
}

/// `B(d) h` over the rationals, with no integrality requirement.
pub fn hsc_of_subdivision_rational(h: &[BigRational]) -> Result<Vec<BigRational>, TransformError> {
    Ok(b_matrix(h.len())?.apply(h))
}

/// `C(d) h` over the rationals, `h` of length `d + 1`.
pub fn hc_of_subdivision_rational(h: &[BigRational]) -> Result<Vec<BigRational>, TransformError> {
    check_d(h.len(), 2)?;
    Ok(c_matrix(h.len() - 1)?.apply(h))
}

/// Short h-vector of `sd(K)` from that of `K`.
///
/// The product is always computed; a non-integer entry is returned as
/// [`TransformError::NonIntegral`] since an arbitrary integer vector need not
/// be the short h-vector of any complex.
pub fn hsc_of_subdivision(h: &ShortHVector) -> Result<ShortHVector, TransformError> {
    let out = hsc_of_subdivision_rational(&to_rationals(h.entries()))?;
    Ok(ShortHVector::new(to_integers(out)?).expect("length preserved"))
}

/// Long h-vector of `sd(K)` from that of `K`.
pub fn hc_of_subdivision(h: &LongHVector) -> Result<LongHVector, TransformError> {
    let out = hc_of_subdivision_rational(&to_rationals(h.entries()))?;
    LongHVector::new(to_integers(out)?).map_err(|e| TransformError::Inconsistent(e.to_string()))
}

/// Short h-polynomial of the `n`-th iterated subdivision:
/// `((2^n-1)x + 2^n+1)^(d-1) h((2^n+1)x + 2^n-1) / ((2^n-1)x + 2^n+1)) / 2^(d-1)`.
pub fn hsc_poly_of_iterate(h: &ShortHVector, n: u32) -> Result<RatPoly, TransformError> {
    iterate_short_poly(&h.polynomial(), h.d(), n)
}

/// Same substitution applied to an arbitrary polynomial of degree `< d`.
pub fn iterate_short_poly(p: &RatPoly, d: usize, n: u32) -> Result<RatPoly, TransformError> {
    check_d(d, 1)?;
    let two_n = BigInt::one() << n;
    let (plus, minus) = (&two_n + 1u32, &two_n - 1u32);
    let out = p.mobius_transform(plus.clone(), minus.clone(), minus, plus, d - 1)?;
    Ok(out.scale(&pow2(-(d as i64 - 1))))
}

fn max_abs_difference(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).max().unwrap_or_else(BigRational::zero)
}

/// `h^sc` of the `n`-th iterate divided by `2^(n(d-1))`, as a length-`d` vector.
pub fn normalized_hsc_of_iterate(h: &ShortHVector, n: u32) -> Result<Vec<BigRational>, TransformError> {
    let d = h.d();
    let p = hsc_poly_of_iterate(h, n)?;
    Ok(p.scale(&pow2(-(n as i64) * (d as i64 - 1))).padded(d))
}

/// The coefficientwise limit `f_(d-1) (x+1)^(d-1)`.
pub fn hsc_limit(d: usize, f_top: &BigInt) -> Vec<BigRational> {
    RatPoly::linear(1, 1).pow(d - 1).scale(&rat(f_top.clone())).padded(d)
}

/// Max-norm distance between the normalized short h-vector of the `n`-th
/// iterate and its limit.
pub fn limit_distance_hsc(h: &ShortHVector, f_top: &BigInt, n: u32) -> Result<BigRational, TransformError> {
    let d = h.d();
    let sum: BigInt = h.entries().iter().sum();
    let expected = (BigInt::one() << (d - 1)) * f_top;
    if sum != expected {
        return Err(TransformError::Inconsistent(format!(
            "entries sum to {sum}, but 2^(d-1) f_top = {expected}"
        )));
    }
    Ok(max_abs_difference(&normalized_hsc_of_iterate(h, n)?, &hsc_limit(d, f_top)))
}

/// Long h-polynomial of the `n`-th iterate, recovered exactly from
/// `(1+x) h^c(x) = 2^(d-1) + x h^sc(x) + 2^(d-1) (-x)^(d+1) chi~`.
pub fn hc_poly_of_iterate(h: &LongHVector, euler: &BigInt, n: u32) -> Result<RatPoly, TransformError> {
    let d = h.d();
    let short = hsc_poly_of_iterate(&h.to_short(), n)?;
    let top = pow2(d as i64 - 1);
    let sign = if (d + 1).is_multiple_of(2) { rat(1) } else { rat(-1) };
    let rhs = &(&RatPoly::constant(top.clone()) + &(&RatPoly::x() * &short))
        + &RatPoly::monomial(top * sign * rat(euler.clone()), d + 1);
    Ok(rhs.div_exact(&RatPoly::linear(1, 1))?)
}

/// `h^c` of the `n`-th iterate divided by `2^(n(d-1))`, length `d + 1`.
pub fn normalized_hc_of_iterate(h: &LongHVector, euler: &BigInt, n: u32) -> Result<Vec<BigRational>, TransformError> {
    let d = h.d();
    let p = hc_poly_of_iterate(h, euler, n)?;
    Ok(p.scale(&pow2(-(n as i64) * (d as i64 - 1))).padded(d + 1))
}

/// The coefficientwise limit `f_(d-1) x (x+1)^(d-2)`.
pub fn hc_limit(d: usize, f_top: &BigInt) -> Vec<BigRational> {
    (&RatPoly::x() * &RatPoly::linear(1, 1).pow(d - 2)).scale(&rat(f_top.clone())).padded(d + 1)
}

/// Max-norm distance between the normalized long h-vector of the `n`-th
/// iterate and its limit. Requires `d >= 2`.
pub fn limit_distance_hc(
    h: &LongHVector,
    f_top: &BigInt,
    euler: &BigInt,
    n: u32,
) -> Result<BigRational, TransformError> {
    let d = h.d();
    check_d(d, 2)?;
    let top_expected = {
        let p = BigInt::one() << (d - 1);
        let p = if (d - 1).is_multiple_of(2) { p } else { -p };
        p * euler
    };
    if h.entries()[d] != top_expected {
        return Err(TransformError::Inconsistent(format!(
            "last entry {} differs from (-2)^(d-1) chi~ = {top_expected}",
            h.entries()[d]
        )));
    }
    let short_sum: BigInt = h.to_short().entries().iter().sum();
    let expected = (BigInt::one() << (d - 1)) * f_top;
    if short_sum != expected {
        return Err(TransformError::Inconsistent(format!(
            "short entries sum to {short_sum}, but 2^(d-1) f_top = {expected}"
        )));
    }
    Ok(max_abs_difference(&normalized_hc_of_iterate(h, euler, n)?, &hc_limit(d, f_top)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sh(v: &[i64]) -> ShortHVector {
        ShortHVector::new(big(v)).unwrap()
    }

    fn lh(v: &[i64]) -> LongHVector {
        LongHVector::new(big(v)).unwrap()
    }

    fn column(m: &CoeffMatrix, j: usize) -> Vec<BigRational> {
        m.entries.iter().map(|row| row[j].clone()).collect()
    }

    #[test]
    fn b_small_cases() {
        assert_eq!(b_matrix(1).unwrap().entries, vec![vec![rat(1)]]);
        let b2 = b_matrix(2).unwrap();
        assert_eq!(column(&b2, 0), vec![ratio(3, 2), ratio(1, 2)]);
        assert_eq!(column(&b2, 1), vec![ratio(1, 2), ratio(3, 2)]);
        assert_eq!(column(&b_matrix(3).unwrap(), 0), vec![ratio(9, 4), ratio(3, 2), ratio(1, 4)]);
        assert_eq!(b_matrix(0), Err(TransformError::BadDimension { d: 0, min: 1 }));
    }

    #[test]
    fn c_small_cases() {
        let c3 = c_matrix(3).unwrap();
        assert_eq!(column(&c3, 0), vec![rat(1), ratio(5, 4), ratio(1, 4), rat(0)]);
        assert_eq!(column(&c3, 1), vec![rat(0), rat(3), rat(1), rat(0)]);
        for d in 1..=6 {
            let c = c_matrix(d).unwrap();
            assert_eq!(c.entries[0][0], rat(1));
            assert!(c.entries[0][1..].iter().all(Zero::is_zero));
        }
        // Frozen from an independent symbolic expansion of the bivariate series.
        let c2 = c_matrix(2).unwrap();
        assert_eq!(
            c2.entries,
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![ratio(1, 2), rat(2), ratio(1, 2)],
                vec![rat(0), rat(0), rat(1)],
            ]
        );
        assert_eq!(c_matrix(1).unwrap().entries, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn constructions_agree() {
        for d in 1..=10 {
            let a = c_matrix_closed_form(d).unwrap();
            assert_eq!(a, c_matrix_alternating(d).unwrap(), "d = {d}");
            assert_eq!(a, c_matrix_bivariate(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn short_transform_examples() {
        assert_eq!(hsc_of_subdivision(&sh(&[2, 0])).unwrap(), sh(&[3, 1]));
        assert_eq!(hsc_of_subdivision(&sh(&[4, 0, 0])).unwrap(), sh(&[9, 6, 1]));
        assert_eq!(hsc_of_subdivision(&sh(&[8, 8, 8])).unwrap(), sh(&[26, 44, 26]));
        assert_eq!(
            hsc_of_subdivision(&sh(&[1, 0])),
            Err(TransformError::NonIntegral { index: 0, value: "3/2".into() })
        );
    }

    #[test]
    fn long_transform_examples() {
        assert_eq!(hc_of_subdivision(&lh(&[4, 0, 0, 0])).unwrap(), lh(&[4, 5, 1, 0]));
        assert_eq!(hc_of_subdivision(&lh(&[4, 4, 4, 4])).unwrap(), lh(&[4, 22, 22, 4]));
        assert_eq!(hc_of_subdivision(&lh(&[2, 0, 0])).unwrap(), lh(&[2, 1, 0]));
    }

    #[test]
    fn iterate_examples() {
        for h in [sh(&[8, 8, 8]), sh(&[2, 0]), sh(&[5])] {
            assert_eq!(hsc_poly_of_iterate(&h, 0).unwrap(), h.polynomial());
        }
        assert_eq!(hsc_poly_of_iterate(&sh(&[4, 0, 0]), 1).unwrap(), RatPoly::from_ints(&[9, 6, 1]));
        assert_eq!(hsc_poly_of_iterate(&sh(&[2, 0]), 2).unwrap(), RatPoly::from_ints(&[5, 3]));
    }

    #[test]
    fn limit_examples() {
        let six = BigInt::from(6);
        assert_eq!(limit_distance_hsc(&sh(&[8, 8, 8]), &six, 0).unwrap(), rat(4));
        let mut prev = rat(4);
        for n in 1..=20 {
            let dist = limit_distance_hsc(&sh(&[8, 8, 8]), &six, n).unwrap();
            assert!(dist < prev, "n = {n}");
            prev = dist;
        }
        for n in 0..5 {
            assert!(limit_distance_hsc(&sh(&[3]), &BigInt::from(3), n).unwrap().is_zero());
        }
        assert!(matches!(
            limit_distance_hsc(&sh(&[8, 8, 8]), &BigInt::from(5), 0),
            Err(TransformError::Inconsistent(_))
        ));
    }

    #[test]
    fn long_limit_examples() {
        let (six, one, zero) = (BigInt::from(6), BigInt::from(1), BigInt::from(0));
        assert_eq!(limit_distance_hc(&lh(&[4, 4, 4, 4]), &six, &one, 0).unwrap(), rat(4));
        assert_eq!(limit_distance_hc(&lh(&[4, 0, 0, 0]), &one, &zero, 0).unwrap(), rat(4));
        let mut prev = rat(4);
        for n in 1..=20 {
            let dist = limit_distance_hc(&lh(&[4, 4, 4, 4]), &six, &one, n).unwrap();
            assert!(dist < prev, "n = {n}");
            prev = dist;
        }
        assert!(matches!(
            limit_distance_hc(&lh(&[4, 4, 4, 4]), &six, &zero, 0),
            Err(TransformError::Inconsistent(_))
        ));
        assert_eq!(
            limit_distance_hc(&lh(&[1, 2]), &one, &zero, 0),
            Err(TransformError::BadDimension { d: 1, min: 2 })
        );
    }

    #[test]
    fn matrix_json() {
        let j = b_matrix(2).unwrap().to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"kind":"B","d":2,"entries":[["3/2","1/2"],["1/2","3/2"]]}"#
        );
    }

    #[test]
    fn cache_returns_shared_matrices() {
        let a = b_matrix(4).unwrap();
        let b = b_matrix(4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let handles: Vec<_> = (0..4).map(|_| std::thread::spawn(|| c_matrix(7).unwrap())).collect();
        let ms: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(ms.windows(2).all(|w| w[0] == w[1]));
    }
}
