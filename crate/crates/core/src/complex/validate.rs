use std::fmt;

use num_integer::binomial;

use super::{CubicalComplex, FaceId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A covered face does not have dimension one less than the face.
    CoverDimension { face: FaceId, covered: FaceId },
    /// A face covers the same face twice.
    RepeatedCover { face: FaceId, covered: FaceId },
    /// A `j`-face must cover exactly `2j` faces.
    CoverCount { face: FaceId, expected: usize, found: usize },
    /// The lower set of a `j`-face must contain `2^(j-k) C(j,k)` faces of
    /// each dimension `k`.
    LowerSetCount { face: FaceId, dim: usize, expected: u64, found: u64 },
    /// Two faces share a vertex but their common subfaces have no unique
    /// maximal element.
    Intersection { a: FaceId, b: FaceId, maximal: Vec<FaceId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoverDimension { face, covered } => {
                write!(f, "face {face} covers face {covered} of the wrong dimension")
            }
            Violation::RepeatedCover { face, covered } => {
                write!(f, "face {face} lists face {covered} more than once")
            }
            Violation::CoverCount { face, expected, found } => {
                write!(f, "face {face} covers {found} faces, a cube of its dimension has {expected}")
            }
            Violation::LowerSetCount { face, dim, expected, found } => write!(
                f,
                "face {face} contains {found} faces of dimension {dim}, a cube has {expected}"
            ),
            Violation::Intersection { a, b, maximal } => {
                let m: Vec<String> = maximal.iter().map(ToString::to_string).collect();
                write!(f, "faces {a} and {b} intersect in several maximal faces [{}]", m.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Validation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(super) fn validate(k: &CubicalComplex) -> Validation {
    let mut out = Vec::new();
    check_covers(k, &mut out);
    // The lower-set checks assume the cover relation is graded.
    if out.is_empty() {
        check_lower_sets(k, &mut out);
    }
    if out.is_empty() {
        check_intersections(k, &mut out);
    }
    Validation { violations: out }
}

fn check_covers(k: &CubicalComplex, out: &mut Vec<Violation>) {
    for face in k.ids() {
        let j = k.face_dim(face);
        let cov = k.covered(face);
        for &c in cov {
            if j == 0 || k.face_dim(c) != j - 1 {
                out.push(Violation::CoverDimension { face, covered: c });
            }
        }
        // Cover lists are stored sorted.
        for w in cov.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::RepeatedCover { face, covered: w[0] });
            }
        }
        if cov.len() != 2 * j {
            out.push(Violation::CoverCount { face, expected: 2 * j, found: cov.len() });
        }
    }
}

fn check_lower_sets(k: &CubicalComplex, out: &mut Vec<Violation>) {
    let rows = k.lower_set_rows();
    let mut counts = vec![0u64; k.dim() + 1];
    for face in k.ids() {
        let j = k.face_dim(face);
        counts[..=j].fill(0);
        for &g in rows.row(face.index()) {
            counts[k.face_dim(g)] += 1;
        }
        for (dim, &found) in counts[..=j].iter().enumerate() {
            let expected = (1u64 << (j - dim)) * binomial(j as u64, dim as u64);
            if found != expected {
                out.push(Violation::LowerSetCount { face, dim, expected, found });
            }
        }
    }
}

fn intersect(a: &[FaceId], b: &[FaceId], out: &mut Vec<FaceId>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Faces that share no vertex have no common nonempty subface, so only pairs
/// inside a vertex star need checking. Each pair is examined from its
/// smallest common vertex only.
fn check_intersections(k: &CubicalComplex, out: &mut Vec<Violation>) {
    let rows = k.lower_set_rows();
    let vertices = k.faces_of_dim(0);
    let mut stars: Vec<Vec<FaceId>> = vec![Vec::new(); vertices.len()];
    for g in k.ids() {
        if k.face_dim(g) == 0 {
            continue;
        }
        for &v in rows.row(g.index()) {
            if k.face_dim(v) != 0 {
                break;
            }
            stars[v.index()].push(g);
        }
    }
    let mut common = Vec::new();
    for (v, star) in stars.iter().enumerate() {
        for (i, &a) in star.iter().enumerate() {
            let down_a = rows.row(a.index());
            for &b in &star[i + 1..] {
                let down_b = rows.row(b.index());
                // `a` precedes `b`, so `b <= a` is impossible unless equal.
                if down_b.binary_search(&a).is_ok() {
                    continue;
                }
                intersect(down_a, down_b, &mut common);
                if common[0].index() != v {
                    continue;
                }
                let top = common.iter().map(|&f| k.face_dim(f)).max().expect("contains v");
                let maximal: Vec<FaceId> =
                    common.iter().copied().filter(|&f| k.face_dim(f) == top).collect();
                let unique = maximal.len() == 1 && rows.row(maximal[0].index()).len() == common.len();
                if !unique {
                    let maximal = common
                        .iter()
                        .copied()
                        .filter(|&f| {
                            !common.iter().any(|&g| g != f && rows.row(g.index()).binary_search(&f).is_ok())
                        })
                        .collect();
                    out.push(Violation::Intersection { a, b, maximal });
                }
            }
        }
    }
}
