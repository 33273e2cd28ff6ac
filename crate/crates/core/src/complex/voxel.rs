use std::collections::{BTreeSet, HashMap};

use super::{CellKey, ComplexError, CubicalComplex, FaceId, FaceKey, Rows};

/// Unit cubes `[c, c + 1]` in `Z^ambient_dim`, given by their minimal corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoxelSpec {
    pub ambient_dim: usize,
    pub corners: Vec<Vec<i64>>,
}

/// Each voxel contributes `3^n` cells, so very high ambient dimensions are
/// refused up front.
const MAX_AMBIENT_DIM: usize = 12;

impl VoxelSpec {
    pub fn new(ambient_dim: usize, corners: Vec<Vec<i64>>) -> Self {
        VoxelSpec { ambient_dim, corners }
    }

    pub(crate) fn check(&self) -> Result<(), ComplexError> {
        if self.ambient_dim == 0 {
            return Err(ComplexError::Voxel("ambient dimension must be at least 1".into()));
        }
        if self.ambient_dim > MAX_AMBIENT_DIM {
            return Err(ComplexError::Voxel(format!(
                "ambient dimension {} exceeds {MAX_AMBIENT_DIM}",
                self.ambient_dim
            )));
        }
        if self.corners.is_empty() {
            return Err(ComplexError::Voxel("no corners given".into()));
        }
        let mut seen = BTreeSet::new();
        for c in &self.corners {
            if c.len() != self.ambient_dim {
                return Err(ComplexError::Voxel(format!(
                    "corner {c:?} has {} coordinates, expected {}",
                    c.len(),
                    self.ambient_dim
                )));
            }
            if !seen.insert(c) {
                return Err(ComplexError::Voxel(format!("duplicate corner {c:?}")));
            }
        }
        Ok(())
    }

    /// Parses the text format: a `dim <n>` header followed by one corner of
    /// `n` integers per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let err = |line: usize, msg: &str| ComplexError::Voxel(format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing `dim <n>` header"))?;
        let ambient_dim = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["dim", n] => n.parse::<usize>().map_err(|_| err(hl, "bad dimension"))?,
            _ => return Err(err(hl, "expected `dim <n>`")),
        };
        let mut corners = Vec::new();
        for (ln, line) in lines {
            let corner = line
                .split_whitespace()
                .map(str::parse::<i64>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err(ln, "expected integers"))?;
            if corner.len() != ambient_dim {
                return Err(err(ln, &format!("expected {ambient_dim} coordinates")));
            }
            corners.push(corner);
        }
        let spec = VoxelSpec { ambient_dim, corners };
        spec.check()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.ambient_dim);
        for c in &self.corners {
            let row: Vec<String> = c.iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// All cells of the given unit cubes, deduplicated, in canonical order.
/// Corners are assumed distinct and of length `n`.
pub(crate) fn cells_of_cubes(n: usize, corners: &[Vec<i64>]) -> CubicalComplex {
    let mut cells: BTreeSet<(usize, CellKey)> = BTreeSet::new();
    for c in corners {
        for free_mask in 0u32..(1 << n) {
            let free: Vec<u16> = (0..n).filter(|i| free_mask >> i & 1 == 1).map(|i| i as u16).collect();
            let fixed: Vec<usize> = (0..n).filter(|i| free_mask >> i & 1 == 0).collect();
            for offs in 0u32..(1 << fixed.len()) {
                let mut corner = c.clone();
                for (b, &i) in fixed.iter().enumerate() {
                    corner[i] += i64::from(offs >> b & 1);
                }
                cells.insert((free.len(), CellKey { free: free.clone(), corner }));
            }
        }
    }
    let index: HashMap<&CellKey, u32> =
        cells.iter().enumerate().map(|(i, (_, k))| (k, i as u32)).collect();
    let mut lists = Vec::with_capacity(cells.len());
    for (_, key) in &cells {
        let mut cov = Vec::with_capacity(2 * key.free.len());
        for (pos, &axis) in key.free.iter().enumerate() {
            let mut free = key.free.clone();
            free.remove(pos);
            let low = CellKey { free: free.clone(), corner: key.corner.clone() };
            let mut high = low.clone();
            high.corner[axis as usize] += 1;
            cov.push(FaceId(index[&low]));
            cov.push(FaceId(index[&high]));
        }
        cov.sort_unstable();
        lists.push(cov);
    }
    let dims = cells.iter().map(|(d, _)| *d as u8).collect();
    let keys = cells.into_iter().map(|(_, k)| FaceKey::Cell(Box::new(k))).collect();
    CubicalComplex::from_canonical(dims, Rows::from_lists(lists), keys)
}
