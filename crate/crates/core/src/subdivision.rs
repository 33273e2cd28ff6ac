//! Cubical barycentric subdivision on face posets.
//!
//! The faces of `sd(K)` are the closed intervals `[F, G]` of nonempty faces
//! of `K`, ordered by inclusion, with `dim [F, G] = dim G - dim F`. An
//! interval covers exactly the intervals obtained by shrinking one end by a
//! single step, so the cover relation is built directly:
//!
//! `[F', G'] ⋖ [F, G]  iff  (F' = F and G' ⋖ G) or (F ⋖ F' and G' = G)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{CubicalComplex, FaceId, FaceKey, Rows, Validation};

/// Default limit on the number of faces an iterated subdivision may produce.
pub const DEFAULT_FACE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("input is not a valid cubical complex: {0}")]
    Invalid(Validation),
    #[error("subdivision level {level} would have {projected} faces, over the budget of {budget}")]
    BudgetExceeded { level: u32, projected: BigInt, budget: u64 },
}

/// Face counts of the `n`-th iterated subdivision of a complex with face
/// counts `f`, without building anything. One subdivision sends the
/// f-polynomial `f(x)` to `f(1 + 2x)`, so `n` of them give
/// `f(2^n x + 2^n - 1)`.
pub fn projected_face_counts(f: &[u64], n: u32) -> Vec<BigInt> {
    let d = f.len();
    let mut out = vec![BigInt::zero(); d];
    // f_i(sd^n) = sum_j f_j C(j,i) (2^n)^i (2^n - 1)^(j-i)
    let scale = BigInt::one() << n;
    let shift = &scale - 1u32;
    for (j, fj) in f.iter().enumerate() {
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            let c = num_integer::binomial(BigInt::from(j), BigInt::from(i));
            *slot += c * BigInt::from(*fj) * num_traits::pow(scale.clone(), i) * num_traits::pow(shift.clone(), j - i);
        }
    }
    out
}

/// Subdivides a validated complex.
pub fn subdivide(k: &CubicalComplex) -> Result<CubicalComplex, SubdivisionError> {
    let v = k.validate();
    if !v.is_ok() {
        return Err(SubdivisionError::Invalid(v));
    }
    Ok(subdivide_unchecked(k))
}

/// `n`-fold subdivision. The input is validated once; the final face count
/// is projected up front and compared against `face_budget`.
pub fn subdivide_n(k: &CubicalComplex, n: u32, face_budget: u64) -> Result<CubicalComplex, SubdivisionError> {
    let v = k.validate();
    if !v.is_ok() {
        return Err(SubdivisionError::Invalid(v));
    }
    // Total face count grows with each level, so checking the last suffices.
    let projected: BigInt = projected_face_counts(&k.face_counts(), n).iter().sum();
    if projected > BigInt::from(face_budget) || projected >= BigInt::from(u32::MAX) {
        return Err(SubdivisionError::BudgetExceeded { level: n, projected, budget: face_budget });
    }
    let mut cur = k.clone();
    for _ in 0..n {
        cur = subdivide_unchecked(&cur);
    }
    Ok(cur)
}

/// Builds `sd(K)` assuming `K` is valid.
///
/// Intervals are first numbered by position inside the lower set of their
/// top face (`lower_start[G] + rank of F in lower(G)`), then sorted into
/// canonical order `(dim, F, G)`.
pub(crate) fn subdivide_unchecked(k: &CubicalComplex) -> CubicalComplex {
    let lower = k.lower_set_rows();
    let cofaces = k.coface_rows();
    let total = lower.total();

    let mut tops = Vec::with_capacity(total);
    for g in k.ids() {
        tops.extend(std::iter::repeat_n(g, lower.row(g.index()).len()));
    }
    let bottom = |idx: usize| lower.row(tops[idx].index())[idx - lower.row_start(tops[idx].index())];
    let interval_dim = |idx: usize| k.face_dim(tops[idx]) - k.face_dim(bottom(idx));

    let mut order: Vec<u32> = (0..total as u32).collect();
    order.sort_unstable_by_key(|&idx| {
        let idx = idx as usize;
        (interval_dim(idx), bottom(idx), tops[idx])
    });
    let mut new_id = vec![0u32; total];
    for (new, &idx) in order.iter().enumerate() {
        new_id[idx as usize] = new as u32;
    }
    // Id of [f, g]; f must lie in lower(g).
    let lookup = |f: FaceId, g: FaceId| -> Option<FaceId> {
        let row = lower.row(g.index());
        row.binary_search(&f).ok().map(|pos| FaceId(new_id[lower.row_start(g.index()) + pos]))
    };

    let mut dims = Vec::with_capacity(total);
    let mut keys = Vec::with_capacity(total);
    let mut lists = Vec::with_capacity(total);
    for &idx in &order {
        let idx = idx as usize;
        let (f, g) = (bottom(idx), tops[idx]);
        let mut cov = Vec::with_capacity(2 * interval_dim(idx));
        // Shrink the top: [f, g'] with g' covered by g and f <= g'.
        for &g2 in k.covered(g) {
            if let Some(id) = lookup(f, g2) {
                cov.push(id);
            }
        }
        // Raise the bottom: [f', g] with f' covering f and f' <= g.
        for &f2 in cofaces.row(f.index()) {
            if let Some(id) = lookup(f2, g) {
                cov.push(id);
            }
        }
        cov.sort_unstable();
        dims.push(interval_dim(idx) as u8);
        keys.push(FaceKey::Interval { lower: f.0, upper: g.0 });
        lists.push(cov);
    }
    CubicalComplex::from_canonical(dims, Rows::from_lists(lists), keys)
}

/// Total face count as a `u64`, if it fits.
pub fn total_faces(counts: &[BigInt]) -> Option<u64> {
    counts.iter().sum::<BigInt>().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VoxelSpec;

    /// Counts intervals by rank through pairwise reachability on the raw
    /// cover relation, without lower-set tables.
    fn brute_interval_counts(k: &CubicalComplex) -> Vec<u64> {
        fn reaches(k: &CubicalComplex, from: FaceId, to: FaceId) -> bool {
            from == to || k.covered(from).iter().any(|&c| reaches(k, c, to))
        }
        let mut counts = vec![0u64; k.d()];
        for g in k.ids() {
            for f in k.ids() {
                if reaches(k, g, f) {
                    counts[k.face_dim(g) - k.face_dim(f)] += 1;
                }
            }
        }
        counts
    }

    fn segment() -> CubicalComplex {
        CubicalComplex::gen_cube(1)
    }

    #[test]
    fn segment_and_square() {
        assert_eq!(brute_interval_counts(&segment()), vec![3, 2]);
        assert_eq!(subdivide(&segment()).unwrap().face_counts(), vec![3, 2]);
        let sq = CubicalComplex::gen_cube(2);
        assert_eq!(brute_interval_counts(&sq), vec![9, 12, 4]);
        let sd = subdivide(&sq).unwrap();
        assert_eq!(sd.face_counts(), vec![9, 12, 4]);
        assert!(sd.validate().is_ok());
        assert_eq!(sd.dim(), 2);
    }

    #[test]
    fn point_is_a_fixed_point() {
        let p = CubicalComplex::gen_cube(0);
        let sd = subdivide(&p).unwrap();
        assert_eq!(sd.face_counts(), vec![1]);
        assert_eq!(sd.key(FaceId(0)), &FaceKey::Interval { lower: 0, upper: 0 });
    }

    #[test]
    fn iterated() {
        let b3 = CubicalComplex::gen_cube_boundary(3).unwrap();
        let sd = subdivide_n(&b3, 1, DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(sd.face_counts(), vec![26, 48, 24]);
        assert_eq!(brute_interval_counts(&b3), vec![26, 48, 24]);
        assert_eq!(subdivide_n(&b3, 0, DEFAULT_FACE_BUDGET).unwrap(), b3);
        assert_eq!(subdivide_n(&segment(), 2, 100).unwrap().face_counts(), vec![5, 4]);
    }

    #[test]
    fn projection_matches_construction() {
        let b3 = CubicalComplex::gen_cube_boundary(3).unwrap();
        for n in 0..3 {
            let built = subdivide_n(&b3, n, DEFAULT_FACE_BUDGET).unwrap().face_counts();
            let proj: Vec<u64> =
                projected_face_counts(&b3.face_counts(), n).iter().map(|x| x.to_u64().unwrap()).collect();
            assert_eq!(built, proj);
        }
    }

    #[test]
    fn budget_is_enforced_before_building() {
        let b3 = CubicalComplex::gen_cube_boundary(3).unwrap();
        // Level 9 has 6,291,458 faces and fits; level 10 has 25,165,826.
        let p9: BigInt = projected_face_counts(&b3.face_counts(), 9).iter().sum();
        assert_eq!(p9, BigInt::from(6_291_458u64));
        let err = subdivide_n(&b3, 10, DEFAULT_FACE_BUDGET).unwrap_err();
        assert_eq!(
            err,
            SubdivisionError::BudgetExceeded {
                level: 10,
                projected: BigInt::from(25_165_826u64),
                budget: DEFAULT_FACE_BUDGET
            }
        );
        // Segment after three rounds: 9 vertices, 8 edges.
        assert_eq!(subdivide_n(&segment(), 3, 17).unwrap().len(), 17);
        assert!(matches!(subdivide_n(&segment(), 3, 16), Err(SubdivisionError::BudgetExceeded { .. })));
    }

    #[test]
    fn rejects_invalid_input() {
        use crate::complex::RawFace;
        let label = |s: &str| FaceKey::Label(s.into());
        let bad = CubicalComplex::from_faces(vec![
            RawFace { dim: 0, covered: vec![], key: label("a") },
            RawFace { dim: 1, covered: vec![0], key: label("e") },
        ])
        .unwrap();
        assert!(matches!(subdivide(&bad), Err(SubdivisionError::Invalid(_))));
        assert!(matches!(subdivide_n(&bad, 0, 10), Err(SubdivisionError::Invalid(_))));
    }

    #[test]
    fn voxel_complexes_subdivide_validly() {
        let spec = VoxelSpec::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let k = CubicalComplex::from_voxels(&spec).unwrap();
        let sd = subdivide(&k).unwrap();
        assert!(sd.validate().is_ok());
        assert_eq!(sd.face_counts(), brute_interval_counts(&k));
    }
}
