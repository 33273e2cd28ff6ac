//! Small named complexes used by `verify --corpus default` and the tests.

use crate::complex::{CubicalComplex, VoxelSpec};

pub struct CorpusItem {
    pub name: String,
    pub complex: CubicalComplex,
}

fn voxels(n: usize, corners: &[&[i64]]) -> CubicalComplex {
    let spec = VoxelSpec::new(n, corners.iter().map(|c| c.to_vec()).collect());
    CubicalComplex::from_voxels(&spec).expect("corpus voxel specs are well formed")
}

pub fn two_edge_path() -> CubicalComplex {
    voxels(1, &[&[0], &[1]])
}

pub fn grid_2x2() -> CubicalComplex {
    voxels(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

pub fn l_tromino() -> CubicalComplex {
    voxels(2, &[&[0, 0], &[1, 0], &[0, 1]])
}

pub fn block_2x2x2() -> CubicalComplex {
    let corners: Vec<Vec<i64>> = (0..8).map(|m| vec![m & 1, m >> 1 & 1, m >> 2 & 1]).collect();
    CubicalComplex::from_voxels(&VoxelSpec::new(3, corners)).expect("well formed")
}

/// Cubes and cube boundaries for `d = 1..=4`, single voxels for `d = 1..=3`,
/// the two-edge path, the 2x2 grid, the L tromino and the 2x2x2 block.
pub fn default_corpus() -> Vec<CorpusItem> {
    let mut items = Vec::new();
    let mut push = |name: String, complex| items.push(CorpusItem { name, complex });
    for d in 1..=4 {
        push(format!("cube-{d}"), CubicalComplex::gen_cube(d));
    }
    for d in 1..=4 {
        push(format!("cube-boundary-{d}"), CubicalComplex::gen_cube_boundary(d).expect("d >= 1"));
    }
    for d in 1..=3 {
        push(format!("voxel-{d}"), voxels(d, &[&vec![0; d]]));
    }
    push("path-2".into(), two_edge_path());
    push("grid-2x2".into(), grid_2x2());
    push("l-tromino".into(), l_tromino());
    push("block-2x2x2".into(), block_2x2x2());
    items
}
