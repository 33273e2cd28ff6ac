//! Cubical complexes stored as graded face posets.
//!
//! Only nonempty faces are stored; the empty face is the implicit minimum.
//! Each face records its dimension, the codimension-one faces it covers and a
//! canonical key. Face ids are dense and assigned in canonical order, sorted
//! by `(dimension, key)`, so the same complex always gets the same ids no
//! matter how it was built or ingested.

mod json;
mod validate;
mod voxel;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use thiserror::Error;

pub use json::{ComplexJson, FaceJson};
pub use validate::{Validation, Violation};
pub use voxel::VoxelSpec;

/// Dense face index, `0..len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Axis-aligned cell `corner + [0,1]^free`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellKey {
    pub free: Vec<u16>,
    pub corner: Vec<i64>,
}

/// Canonical key of a face.
///
/// Cells come from voxel or cube generators. Intervals come from subdivision
/// and name the ids `(lower, upper)` of the interval's endpoints in the
/// subdivided complex; those ids are themselves canonical, so comparing the
/// pair is the same as comparing the endpoints' keys. Labels are free-form
/// keys from abstract input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceKey {
    Cell(Box<CellKey>),
    Interval { lower: u32, upper: u32 },
    Label(Box<str>),
}

impl fmt::Display for FaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<T: fmt::Display>(v: &[T]) -> String {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            FaceKey::Cell(c) => write!(f, "c:{}|{}", join(&c.free), join(&c.corner)),
            FaceKey::Interval { lower, upper } => write!(f, "p:{lower},{upper}"),
            FaceKey::Label(s) => write!(f, "{s}"),
        }
    }
}

impl FaceKey {
    /// Inverse of `Display`. Anything that is not a well-formed cell or
    /// interval key becomes a label.
    pub fn parse(s: &str) -> FaceKey {
        fn nums<T: std::str::FromStr>(s: &str) -> Option<Vec<T>> {
            if s.is_empty() {
                return Some(Vec::new());
            }
            s.split(',').map(|t| t.parse().ok()).collect()
        }
        let parsed = if let Some(rest) = s.strip_prefix("c:") {
            rest.split_once('|').and_then(|(free, corner)| {
                let key = CellKey { free: nums(free)?, corner: nums(corner)? };
                // Only the exact rendering round-trips to a cell.
                let k = FaceKey::Cell(Box::new(key));
                (k.to_string() == s).then_some(k)
            })
        } else if let Some(rest) = s.strip_prefix("p:") {
            rest.split_once(',').and_then(|(a, b)| {
                let k = FaceKey::Interval { lower: a.parse().ok()?, upper: b.parse().ok()? };
                (k.to_string() == s).then_some(k)
            })
        } else {
            None
        };
        parsed.unwrap_or_else(|| FaceKey::Label(s.into()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty complexes are not supported")]
    Empty,
    #[error("face {face} refers to nonexistent face id {id}")]
    InvalidId { face: usize, id: usize },
    #[error("face id {0} is out of range")]
    UnknownFace(usize),
    #[error("face ids must be exactly 0..{0}")]
    BadIdSet(usize),
    #[error("duplicate canonical key {0:?}")]
    DuplicateKey(String),
    #[error("declared dimension {declared} does not match the maximal face dimension {actual}")]
    DimMismatch { declared: usize, actual: usize },
    #[error("too many faces for 32-bit ids ({0})")]
    TooLarge(usize),
    #[error("voxel input: {0}")]
    Voxel(String),
    #[error("invalid complex JSON: {0}")]
    Json(String),
}

/// One face as handed to [`CubicalComplex::from_faces`]; `covered` indexes
/// into the same input list.
#[derive(Clone, Debug)]
pub struct RawFace {
    pub dim: usize,
    pub covered: Vec<usize>,
    pub key: FaceKey,
}

/// Compressed row storage of per-face id lists.
#[derive(Clone, Debug, Default)]
pub(crate) struct Rows {
    start: Vec<usize>,
    items: Vec<FaceId>,
}

impl Rows {
    pub(crate) fn from_lists<I: IntoIterator<Item = Vec<FaceId>>>(lists: I) -> Self {
        let mut rows = Rows { start: vec![0], items: Vec::new() };
        for l in lists {
            rows.items.extend(l);
            rows.start.push(rows.items.len());
        }
        rows
    }

    pub(crate) fn row(&self, i: usize) -> &[FaceId] {
        &self.items[self.start[i]..self.start[i + 1]]
    }

    pub(crate) fn row_start(&self, i: usize) -> usize {
        self.start[i]
    }

    pub(crate) fn total(&self) -> usize {
        self.items.len()
    }
}

/// An immutable cubical complex. Cheap to share across threads.
pub struct CubicalComplex {
    dims: Vec<u8>,
    covers: Rows,
    keys: Vec<FaceKey>,
    /// Ids of dimension `k` are `dim_start[k]..dim_start[k + 1]`.
    dim_start: Vec<usize>,
    lower_sets: OnceLock<Rows>,
    cofaces: OnceLock<Rows>,
}

impl Clone for CubicalComplex {
    fn clone(&self) -> Self {
        CubicalComplex {
            dims: self.dims.clone(),
            covers: self.covers.clone(),
            keys: self.keys.clone(),
            dim_start: self.dim_start.clone(),
            lower_sets: OnceLock::new(),
            cofaces: OnceLock::new(),
        }
    }
}

impl fmt::Debug for CubicalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubicalComplex")
            .field("dim", &self.dim())
            .field("f", &self.face_counts())
            .finish()
    }
}

impl PartialEq for CubicalComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
            && self.keys == other.keys
            && self.covers.start == other.covers.start
            && self.covers.items == other.covers.items
    }
}

impl Eq for CubicalComplex {}

impl CubicalComplex {
    /// Builds a complex from arbitrary faces, reordering them canonically.
    ///
    /// Only referential integrity and key uniqueness are checked here; the
    /// cubical axioms are left to [`CubicalComplex::validate`].
    pub fn from_faces(faces: Vec<RawFace>) -> Result<Self, ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::Empty);
        }
        if faces.len() >= u32::MAX as usize {
            return Err(ComplexError::TooLarge(faces.len()));
        }
        for (i, face) in faces.iter().enumerate() {
            if let Some(&id) = face.covered.iter().find(|&&c| c >= faces.len()) {
                return Err(ComplexError::InvalidId { face: i, id });
            }
            if face.dim > u8::MAX as usize {
                return Err(ComplexError::Json(format!("face {i} has dimension {}", face.dim)));
            }
        }
        let mut order: Vec<usize> = (0..faces.len()).collect();
        order.sort_by(|&a, &b| canonical_cmp(&faces[a], &faces[b]));
        for w in order.windows(2) {
            if faces[w[0]].dim == faces[w[1]].dim && faces[w[0]].key == faces[w[1]].key {
                return Err(ComplexError::DuplicateKey(faces[w[0]].key.to_string()));
            }
        }
        let mut new_id = vec![0u32; faces.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new as u32;
        }
        let mut slots: Vec<Option<RawFace>> = faces.into_iter().map(Some).collect();
        let mut dims = Vec::with_capacity(slots.len());
        let mut keys = Vec::with_capacity(slots.len());
        let mut lists = Vec::with_capacity(slots.len());
        for &old in &order {
            let face = slots[old].take().expect("each face is taken once");
            let mut cov: Vec<FaceId> = face.covered.iter().map(|&c| FaceId(new_id[c])).collect();
            cov.sort_unstable();
            dims.push(face.dim as u8);
            keys.push(face.key);
            lists.push(cov);
        }
        Ok(Self::from_canonical(dims, Rows::from_lists(lists), keys))
    }

    /// Assembles a complex whose faces are already in canonical order with
    /// sorted cover lists.
    pub(crate) fn from_canonical(dims: Vec<u8>, covers: Rows, keys: Vec<FaceKey>) -> Self {
        debug_assert!(!dims.is_empty());
        let top = *dims.last().expect("nonempty") as usize;
        let mut dim_start = vec![0usize; top + 2];
        for &d in &dims {
            dim_start[d as usize + 1] += 1;
        }
        for k in 0..=top {
            dim_start[k + 1] += dim_start[k];
        }
        CubicalComplex {
            dims,
            covers,
            keys,
            dim_start,
            lower_sets: OnceLock::new(),
            cofaces: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Maximal face dimension.
    pub fn dim(&self) -> usize {
        self.dim_start.len() - 2
    }

    /// `dim + 1`, the length of the f-vector.
    pub fn d(&self) -> usize {
        self.dim() + 1
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = FaceId> {
        (0..self.len() as u32).map(FaceId)
    }

    pub fn faces_of_dim(&self, k: usize) -> Range<usize> {
        if k > self.dim() {
            return self.len()..self.len();
        }
        self.dim_start[k]..self.dim_start[k + 1]
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn face_counts(&self) -> Vec<u64> {
        (0..=self.dim()).map(|k| self.faces_of_dim(k).len() as u64).collect()
    }

    pub fn face_dim(&self, id: FaceId) -> usize {
        self.dims[id.index()] as usize
    }

    pub fn covered(&self, id: FaceId) -> &[FaceId] {
        self.covers.row(id.index())
    }

    pub fn key(&self, id: FaceId) -> &FaceKey {
        &self.keys[id.index()]
    }

    fn check_id(&self, id: FaceId) -> Result<(), ComplexError> {
        if id.index() < self.len() {
            Ok(())
        } else {
            Err(ComplexError::UnknownFace(id.index()))
        }
    }

    /// Sorted lower sets `{F : F <= G}` of every face `G` (each contains `G`).
    pub(crate) fn lower_set_rows(&self) -> &Rows {
        self.lower_sets.get_or_init(|| {
            let n = self.len();
            let mut mark = vec![u32::MAX; n];
            let mut stack = Vec::new();
            let mut rows = Rows { start: Vec::with_capacity(n + 1), items: Vec::new() };
            rows.start.push(0);
            for g in 0..n {
                let begin = rows.items.len();
                stack.push(g);
                mark[g] = g as u32;
                while let Some(x) = stack.pop() {
                    rows.items.push(FaceId(x as u32));
                    for c in self.covers.row(x) {
                        if mark[c.index()] != g as u32 {
                            mark[c.index()] = g as u32;
                            stack.push(c.index());
                        }
                    }
                }
                rows.items[begin..].sort_unstable();
                rows.start.push(rows.items.len());
            }
            rows
        })
    }

    /// Faces covering each face (reverse of `covered`), sorted.
    pub(crate) fn coface_rows(&self) -> &Rows {
        self.cofaces.get_or_init(|| {
            let mut lists = vec![Vec::new(); self.len()];
            for g in self.ids() {
                for &f in self.covered(g) {
                    lists[f.index()].push(g);
                }
            }
            Rows::from_lists(lists)
        })
    }

    /// All faces contained in `id`, including itself, in id order.
    pub fn lower_set(&self, id: FaceId) -> Result<&[FaceId], ComplexError> {
        self.check_id(id)?;
        Ok(self.lower_set_rows().row(id.index()))
    }

    pub fn cofaces(&self, id: FaceId) -> Result<&[FaceId], ComplexError> {
        self.check_id(id)?;
        Ok(self.coface_rows().row(id.index()))
    }

    /// `a <= b` in the face poset.
    pub fn leq(&self, a: FaceId, b: FaceId) -> Result<bool, ComplexError> {
        self.check_id(a)?;
        self.check_id(b)?;
        Ok(self.lower_set_rows().row(b.index()).binary_search(&a).is_ok())
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<FaceId> {
        let co = self.coface_rows();
        self.ids().filter(|g| co.row(g.index()).is_empty()).collect()
    }

    /// The complex of all faces of the unit cube `[0,1]^d`.
    pub fn gen_cube(d: usize) -> Self {
        voxel::cells_of_cubes(d, &[vec![0; d]])
    }

    /// Boundary of `[0,1]^d`: the cube without its top face.
    pub fn gen_cube_boundary(d: usize) -> Result<Self, ComplexError> {
        if d == 0 {
            return Err(ComplexError::Empty);
        }
        let cube = Self::gen_cube(d);
        let n = cube.len() - 1;
        let lists = (0..n).map(|i| cube.covers.row(i).to_vec());
        Ok(Self::from_canonical(
            cube.dims[..n].to_vec(),
            Rows::from_lists(lists),
            cube.keys[..n].to_vec(),
        ))
    }

    /// Union of the unit cubes `[c, c + 1]` for each corner, closed under faces.
    pub fn from_voxels(spec: &VoxelSpec) -> Result<Self, ComplexError> {
        spec.check()?;
        Ok(voxel::cells_of_cubes(spec.ambient_dim, &spec.corners))
    }

    pub fn validate(&self) -> Validation {
        validate::validate(self)
    }
}

fn canonical_cmp(a: &RawFace, b: &RawFace) -> Ordering {
    a.dim.cmp(&b.dim).then_with(|| a.key.cmp(&b.key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_face_counts() {
        assert_eq!(CubicalComplex::gen_cube(0).face_counts(), vec![1]);
        assert_eq!(CubicalComplex::gen_cube(1).face_counts(), vec![2, 1]);
        assert_eq!(CubicalComplex::gen_cube(2).face_counts(), vec![4, 4, 1]);
        assert_eq!(CubicalComplex::gen_cube(3).face_counts(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn cube_counts_match_binomial_formula() {
        for d in 0..=6usize {
            let got = CubicalComplex::gen_cube(d).face_counts();
            let want: Vec<u64> = (0..=d)
                .map(|i| (1u64 << (d - i)) * num_integer::binomial(d as u64, i as u64))
                .collect();
            assert_eq!(got, want, "d = {d}");
        }
    }

    #[test]
    fn cube_boundary_counts() {
        let b = |d| CubicalComplex::gen_cube_boundary(d).unwrap().face_counts();
        assert_eq!(b(1), vec![2]);
        assert_eq!(b(2), vec![4, 4]);
        assert_eq!(b(3), vec![8, 12, 6]);
        assert_eq!(CubicalComplex::gen_cube_boundary(0), Err(ComplexError::Empty));
    }

    #[test]
    fn voxel_counts() {
        let v = |n, c: &[&[i64]]| {
            let spec = VoxelSpec::new(n, c.iter().map(|x| x.to_vec()).collect());
            CubicalComplex::from_voxels(&spec).unwrap().face_counts()
        };
        assert_eq!(v(1, &[&[0]]), vec![2, 1]);
        assert_eq!(v(1, &[&[0], &[1]]), vec![3, 2]);
        assert_eq!(v(2, &[&[0, 0]]), vec![4, 4, 1]);
        assert_eq!(v(2, &[&[0, 0], &[1, 0], &[0, 1]]), vec![8, 10, 3]);
    }

    #[test]
    fn leq_basics() {
        let seg = CubicalComplex::gen_cube(1);
        let (v0, v1, e) = (FaceId(0), FaceId(1), FaceId(2));
        assert!(seg.leq(v0, v0).unwrap());
        assert!(seg.leq(v0, e).unwrap());
        assert!(!seg.leq(e, v0).unwrap());
        assert!(!seg.leq(v0, v1).unwrap());
        assert_eq!(seg.leq(v0, FaceId(3)), Err(ComplexError::UnknownFace(3)));
    }

    #[test]
    fn leq_is_a_partial_order() {
        let spec = VoxelSpec::new(2, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        for k in [CubicalComplex::gen_cube(3), CubicalComplex::from_voxels(&spec).unwrap()] {
            assert!(k.len() <= 200);
            let ids: Vec<FaceId> = k.ids().collect();
            for &a in &ids {
                assert!(k.leq(a, a).unwrap());
                for &b in &ids {
                    let ab = k.leq(a, b).unwrap();
                    if a != b && ab {
                        assert!(!k.leq(b, a).unwrap());
                    }
                    for &c in &ids {
                        if ab && k.leq(b, c).unwrap() {
                            assert!(k.leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn key_rendering_round_trips() {
        for s in ["c:0,2|1,-3,0", "c:|", "p:4,17", "c:x|1", "p:1", "vertex A"] {
            assert_eq!(FaceKey::parse(s).to_string(), s);
        }
        assert!(matches!(FaceKey::parse("c:0|1,2"), FaceKey::Cell(_)));
        assert!(matches!(FaceKey::parse("p:01,2"), FaceKey::Label(_)));
        assert!(matches!(FaceKey::parse("p:1,2"), FaceKey::Interval { lower: 1, upper: 2 }));
    }

    #[test]
    fn from_faces_reorders_canonically() {
        let label = |s: &str| FaceKey::Label(s.into());
        let faces = vec![
            RawFace { dim: 1, covered: vec![1, 2], key: label("e") },
            RawFace { dim: 0, covered: vec![], key: label("b") },
            RawFace { dim: 0, covered: vec![], key: label("a") },
        ];
        let k = CubicalComplex::from_faces(faces).unwrap();
        assert_eq!(k.key(FaceId(0)), &label("a"));
        assert_eq!(k.covered(FaceId(2)), &[FaceId(0), FaceId(1)]);
        assert!(k.validate().is_ok());
    }

    #[test]
    fn from_faces_rejects_bad_input() {
        let label = |s: &str| FaceKey::Label(s.into());
        assert_eq!(CubicalComplex::from_faces(vec![]), Err(ComplexError::Empty));
        let dup = vec![
            RawFace { dim: 0, covered: vec![], key: label("a") },
            RawFace { dim: 0, covered: vec![], key: label("a") },
        ];
        assert!(matches!(CubicalComplex::from_faces(dup), Err(ComplexError::DuplicateKey(_))));
        let dangling = vec![RawFace { dim: 1, covered: vec![5], key: label("e") }];
        assert_eq!(
            CubicalComplex::from_faces(dangling),
            Err(ComplexError::InvalidId { face: 0, id: 5 })
        );
    }

    #[test]
    fn facets_of_a_path() {
        let spec = VoxelSpec::new(1, vec![vec![0], vec![1]]);
        let k = CubicalComplex::from_voxels(&spec).unwrap();
        let facets = k.facets();
        assert_eq!(facets.len(), 2);
        assert!(facets.iter().all(|&f| k.face_dim(f) == 1));
    }
}
