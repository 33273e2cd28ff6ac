//! Random search for complexes whose subdivision breaks unimodality of the
//! short h-vector or real-rootedness of the long h-polynomial.
//!
//! Model: every unit cube of the grid `[0, side)^dim` is included
//! independently with probability 1/2; empty draws are redrawn. Trial `t`
//! uses its own ChaCha8 stream of the seed, so each trial is reproducible on
//! its own.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CubicalComplex, VoxelSpec};
use crate::poly::{is_real_rooted, shape_predicates};
use crate::transform::{hc_of_subdivision, hsc_of_subdivision};
use crate::vectors::Vectors;

pub const DEFAULT_SIDE: usize = 4;
pub const MAX_SIDE: usize = 4;
pub const MAX_DIM: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Unimodality,
    Realroot,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Unimodality => "unimodality",
            Target::Realroot => "realroot",
        })
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unimodality" => Ok(Target::Unimodality),
            "realroot" => Ok(Target::Realroot),
            _ => Err(format!("unknown target {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineConfig {
    pub target: Target,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub side: usize,
}

impl MineConfig {
    pub fn check(&self) -> Result<(), String> {
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(format!("--dim must be in 1..={MAX_DIM}, got {}", self.dim));
        }
        if !(1..=MAX_SIDE).contains(&self.side) {
            return Err(format!("--side must be in 1..={MAX_SIDE}, got {}", self.side));
        }
        Ok(())
    }
}

/// Bernoulli(1/2) voxels on `[0, side)^dim`, redrawn until nonempty.
/// Returns the spec and the number of empty draws discarded.
pub fn random_voxels(rng: &mut impl Rng, dim: usize, side: usize) -> (VoxelSpec, u64) {
    let cells = side.pow(dim as u32);
    let mut redraws = 0;
    loop {
        let corners: Vec<Vec<i64>> = (0..cells)
            .filter(|_| rng.gen_bool(0.5))
            .map(|mut c| {
                (0..dim)
                    .map(|_| {
                        let x = c % side;
                        c /= side;
                        x as i64
                    })
                    .collect()
            })
            .collect();
        if !corners.is_empty() {
            return (VoxelSpec::new(dim, corners), redraws);
        }
        redraws += 1;
    }
}

/// RNG for trial `t` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, t: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MineSummary {
    pub redraws: u64,
    pub filtered: u64,
    pub tested: u64,
    pub findings: u64,
}

fn fmt_ints(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

fn corners_inline(spec: &VoxelSpec) -> String {
    let rows: Vec<String> = spec
        .corners
        .iter()
        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    rows.join(";")
}

/// Outcome of one trial: `None` if filtered out, else the finding line if the
/// target property fails on the subdivision.
fn trial(cfg: &MineConfig, k: &CubicalComplex, spec: &VoxelSpec, t: u64) -> Option<Option<String>> {
    let v = Vectors::of_complex(k);
    match cfg.target {
        Target::Unimodality => {
            if v.hsc.entries().iter().any(Signed::is_negative) {
                return None;
            }
            let sd = hsc_of_subdivision(&v.hsc).expect("integral by construction");
            let ok = shape_predicates(sd.entries()).unimodal;
            Some((!ok).then(|| {
                format!(
                    "finding trial={t} hsc={} hsc_sd={} voxels={}",
                    fmt_ints(v.hsc.entries()),
                    fmt_ints(sd.entries()),
                    corners_inline(spec)
                )
            }))
        }
        Target::Realroot => {
            if v.hc.entries().iter().any(Signed::is_negative) {
                return None;
            }
            let sd = hc_of_subdivision(&v.hc).expect("integral by construction");
            let ok = is_real_rooted(&sd.polynomial()).expect("h^c(0) = 2^(d-1) is nonzero");
            Some((!ok).then(|| {
                format!(
                    "finding trial={t} hc={} hc_sd={} voxels={}",
                    fmt_ints(v.hc.entries()),
                    fmt_ints(sd.entries()),
                    corners_inline(spec)
                )
            }))
        }
    }
}

/// Runs the search and returns the text log and totals. The log depends only
/// on the configuration.
pub fn run(cfg: &MineConfig) -> Result<(String, MineSummary), String> {
    cfg.check()?;
    let mut log = String::new();
    let mut sum = MineSummary::default();
    writeln!(
        log,
        "mine target={} dim={} side={} trials={} seed={} model=bernoulli(1/2)",
        cfg.target, cfg.dim, cfg.side, cfg.trials, cfg.seed
    )
    .unwrap();
    for t in 0..cfg.trials {
        let (spec, redraws) = random_voxels(&mut trial_rng(cfg.seed, t), cfg.dim, cfg.side);
        sum.redraws += redraws;
        let k = CubicalComplex::from_voxels(&spec).expect("generated specs are well formed");
        match trial(cfg, &k, &spec, t) {
            None => sum.filtered += 1,
            Some(finding) => {
                sum.tested += 1;
                if let Some(line) = finding {
                    sum.findings += 1;
                    writeln!(log, "{line}").unwrap();
                }
            }
        }
    }
    writeln!(
        log,
        "summary trials={} redraws={} filtered={} tested={} findings={}",
        cfg.trials, sum.redraws, sum.filtered, sum.tested, sum.findings
    )
    .unwrap();
    Ok((log, sum))
}
