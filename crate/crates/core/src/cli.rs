//! Command-line front end. [`run`] takes argv and stdin and returns what the
//! binary should print and its exit code, so every command is testable
//! in-process.
//!
//! Exit codes: 0 ok, 1 I/O or parse error, 2 invalid complex, 3 face budget
//! exceeded, 4 internal cross-check failure, 5 verification failure.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{ComplexError, CubicalComplex, VoxelSpec};
use crate::corpus::{default_corpus, CorpusItem};
use crate::mine::{self, MineConfig, Target, DEFAULT_SIDE};
use crate::poly::{rational_to_decimal, rational_to_string, shape_predicates, Shape};
use crate::subdivision::{subdivide_n, SubdivisionError, DEFAULT_FACE_BUDGET};
use crate::transform::{
    b_matrix, c_matrix, limit_distance_hc, limit_distance_hsc, normalized_hc_of_iterate, normalized_hsc_of_iterate,
    TransformError,
};
use crate::vectors::Vectors;
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CROSS_CHECK: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "cubary", version, about = "Cubical complexes, their subdivisions and h-vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a generated complex as JSON.
    Gen(GenArgs),
    /// Read complex JSON on stdin and emit its n-th iterated subdivision.
    Subdivide {
        #[arg(short = 'n', value_name = "N")]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_FACE_BUDGET)]
        budget: u64,
    },
    /// Read complex JSON on stdin and emit f, h^sc, h^c, reduced Euler characteristic and shapes.
    Vectors,
    /// Emit the B(d) or C(d) transformation matrix.
    Coeffs {
        #[arg(long, value_enum)]
        matrix: MatrixArg,
        #[arg(short = 'd', value_name = "D")]
        d: usize,
    },
    /// Run a check suite over the built-in corpus or a complex read from stdin.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Use a built-in corpus instead of stdin. Only `default` exists.
        #[arg(long, value_enum)]
        corpus: Option<CorpusArg>,
    },
    /// Distances of normalized iterated h-vectors to their limits, for the complex on stdin.
    Limit {
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = Which::Hsc)]
        which: Which,
    },
    /// Random search for counterexamples.
    ///
    /// Random model: each unit cube of the grid [0, side)^dim is included
    /// independently with probability 1/2; empty draws are redrawn. Complexes
    /// with a negative h^sc (unimodality) or h^c (realroot) entry are skipped;
    /// the rest are tested on their subdivision. Output is a deterministic
    /// text log given the arguments.
    Mine {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SIDE)]
        side: usize,
    },
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
struct GenArgs {
    /// Solid cube of dimension D.
    #[arg(long, value_name = "D")]
    cube: Option<usize>,
    /// Boundary of the cube of dimension D (D >= 1).
    #[arg(long, value_name = "D")]
    cube_boundary: Option<usize>,
    /// Voxel file: a `dim <n>` line, then one corner of n integers per line.
    #[arg(long, value_name = "FILE")]
    voxels: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixArg {
    B,
    C,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorpusArg {
    Default,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Hsc,
    Hc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Unimodality,
    Realroot,
}

/// What a command printed and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code }
    }
}

/// Runs one command. `args[0]` is the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_IO }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Gen(g) => cmd_gen(g),
        Command::Subdivide { n, budget } => with_complex(stdin, |k| cmd_subdivide(&k, n, budget)),
        Command::Vectors => with_complex(stdin, |k| json_out(&vectors_json(&Vectors::of_complex(&k)))),
        Command::Coeffs { matrix, d } => cmd_coeffs(matrix, d),
        Command::Verify { suite, corpus } => match corpus {
            Some(CorpusArg::Default) => cmd_verify(suite, &default_corpus()),
            None => with_complex(stdin, |k| cmd_verify(suite, &[CorpusItem { name: "stdin".into(), complex: k }])),
        },
        Command::Limit { max_n, which } => with_complex(stdin, |k| cmd_limit(&k, max_n, which)),
        Command::Mine { target, dim, trials, seed, side } => {
            let target = match target {
                TargetArg::Unimodality => Target::Unimodality,
                TargetArg::Realroot => Target::Realroot,
            };
            match mine::run(&MineConfig { target, dim, trials, seed, side }) {
                Ok((log, _)) => Outcome::ok(log),
                Err(e) => Outcome::fail(EXIT_IO, e),
            }
        }
    }
}

fn json_out<T: Serialize>(v: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    Outcome::ok(s)
}

fn complex_error_code(e: &ComplexError) -> i32 {
    match e {
        ComplexError::Json(_) | ComplexError::Voxel(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

/// Reads and validates the complex on stdin, then hands it to `f`.
fn with_complex(stdin: &mut dyn Read, f: impl FnOnce(CubicalComplex) -> Outcome) -> Outcome {
    let mut text = String::new();
    if let Err(e) = stdin.read_to_string(&mut text) {
        return Outcome::fail(EXIT_IO, format!("reading stdin: {e}"));
    }
    let k = match CubicalComplex::from_json_str(&text) {
        Ok(k) => k,
        Err(e) => return Outcome::fail(complex_error_code(&e), e),
    };
    let v = k.validate();
    if !v.is_ok() {
        return Outcome::fail(EXIT_INVALID, format!("invalid cubical complex: {v}"));
    }
    f(k)
}

fn cmd_gen(g: GenArgs) -> Outcome {
    let k = if let Some(d) = g.cube {
        CubicalComplex::gen_cube(d)
    } else if let Some(d) = g.cube_boundary {
        match CubicalComplex::gen_cube_boundary(d) {
            Ok(k) => k,
            Err(_) => return Outcome::fail(EXIT_IO, "--cube-boundary needs D >= 1"),
        }
    } else {
        let path = g.voxels.expect("clap enforces one generator");
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return Outcome::fail(EXIT_IO, format!("reading {}: {e}", path.display())),
        };
        match VoxelSpec::parse(&text).and_then(|s| CubicalComplex::from_voxels(&s)) {
            Ok(k) => k,
            Err(e) => return Outcome::fail(complex_error_code(&e), e),
        }
    };
    let v = k.validate();
    if !v.is_ok() {
        return Outcome::fail(EXIT_INVALID, format!("generated complex is invalid: {v}"));
    }
    Outcome::ok(k.to_json_string() + "\n")
}

fn cmd_subdivide(k: &CubicalComplex, n: u32, budget: u64) -> Outcome {
    match subdivide_n(k, n, budget) {
        Ok(s) => Outcome::ok(s.to_json_string() + "\n"),
        Err(e @ SubdivisionError::BudgetExceeded { .. }) => Outcome::fail(EXIT_BUDGET, e),
        Err(e @ SubdivisionError::Invalid(_)) => Outcome::fail(EXIT_INVALID, e),
    }
}

/// Integers that fit in `i64` become JSON numbers; larger ones are emitted as
/// decimal strings so nothing is rounded.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn shape_json(s: Shape) -> Value {
    serde_json::to_value(s).expect("shape serializes")
}

pub fn vectors_json(v: &Vectors) -> Value {
    json!({
        "d": v.f.d(),
        "f": ints_json(v.f.entries()),
        "hsc": ints_json(v.hsc.entries()),
        "hc": ints_json(v.hc.entries()),
        "euler_reduced": int_json(&v.euler_reduced),
        "hsc_shape": shape_json(shape_predicates(v.hsc.entries())),
        "hc_shape": shape_json(shape_predicates(v.hc.entries())),
    })
}

fn cmd_coeffs(matrix: MatrixArg, d: usize) -> Outcome {
    let m = match matrix {
        MatrixArg::B => b_matrix(d),
        MatrixArg::C => c_matrix(d),
    };
    match m {
        Ok(m) => json_out(&m.to_json()),
        Err(e @ TransformError::CrossCheck { .. }) => Outcome::fail(EXIT_CROSS_CHECK, e),
        Err(e) => Outcome::fail(EXIT_IO, e),
    }
}

fn cmd_verify(suite: Suite, items: &[CorpusItem]) -> Outcome {
    let report = verify::run(suite, items);
    let mut out = json_out(&report);
    if let Some((item, c)) = report.first_failure() {
        out.code = EXIT_VERIFY;
        out.stderr = format!("verification failed: {item}: [{}] {}: {}\n", c.suite, c.check, c.detail);
    }
    out
}

#[derive(Serialize)]
struct LimitRow {
    n: u32,
    distance: String,
    decimal: String,
    nonnegative: bool,
    unimodal: bool,
}

fn cmd_limit(k: &CubicalComplex, max_n: u32, which: Which) -> Outcome {
    let v = Vectors::of_complex(k);
    let d = v.f.d();
    if which == Which::Hc && d < 2 {
        return Outcome::fail(EXIT_IO, format!("--which hc needs d >= 2, got d = {d}"));
    }
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let r: Result<(BigRational, Vec<BigRational>), TransformError> = match which {
            Which::Hsc => limit_distance_hsc(&v.hsc, v.f.top(), n)
                .and_then(|dist| Ok((dist, normalized_hsc_of_iterate(&v.hsc, n)?))),
            Which::Hc => limit_distance_hc(&v.hc, v.f.top(), &v.euler_reduced, n)
                .and_then(|dist| Ok((dist, normalized_hc_of_iterate(&v.hc, &v.euler_reduced, n)?))),
        };
        let (dist, vec) = match r {
            Ok(x) => x,
            Err(e) => return Outcome::fail(EXIT_CROSS_CHECK, e),
        };
        let shape = shape_predicates(&vec);
        rows.push(LimitRow {
            n,
            distance: rational_to_string(&dist),
            decimal: rational_to_decimal(&dist, 10),
            nonnegative: shape.nonnegative,
            unimodal: shape.unimodal,
        });
    }
    let which = match which {
        Which::Hsc => "hsc",
        Which::Hc => "hc",
    };
    json_out(&json!({ "which": which, "d": d, "rows": rows }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> Outcome {
        let argv = std::iter::once("cubary").chain(args.iter().copied());
        run(argv, &mut stdin.as_bytes())
    }

    fn gen(args: &[&str]) -> String {
        let o = call(args, "");
        assert_eq!(o.code, 0, "{}", o.stderr);
        o.stdout
    }

    fn parse(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn gen_counts() {
        let j: Value = serde_json::from_str(&gen(&["gen", "--cube-boundary", "3"])).unwrap();
        assert_eq!(j["faces"].as_array().unwrap().len(), 26);
        let j: Value = serde_json::from_str(&gen(&["gen", "--cube", "0"])).unwrap();
        assert_eq!(j["faces"].as_array().unwrap().len(), 1);
        assert_eq!(call(&["gen", "--cube-boundary", "0"], "").code, EXIT_IO);
        assert_eq!(call(&["gen"], "").code, EXIT_IO);
        assert_eq!(call(&["gen", "--cube", "1", "--cube-boundary", "2"], "").code, EXIT_IO);
    }

    #[test]
    fn gen_bad_voxels() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.txt");
        std::fs::write(&p, "dim 2\n0 0\n0 0\n").unwrap();
        let o = call(&["gen", "--voxels", p.to_str().unwrap()], "");
        assert_eq!(o.code, EXIT_IO);
        assert!(o.stderr.contains("duplicate corner"), "{}", o.stderr);
        let o = call(&["gen", "--voxels", dir.path().join("missing").to_str().unwrap()], "");
        assert_eq!(o.code, EXIT_IO);
    }

    #[test]
    fn subdivide_and_budget() {
        let b3 = gen(&["gen", "--cube-boundary", "3"]);
        let o = call(&["subdivide", "-n", "1"], &b3);
        assert_eq!(parse(&o)["faces"].as_array().unwrap().len(), 98);
        assert_eq!(call(&["subdivide", "-n", "0"], &b3).stdout, b3);
        let o = call(&["subdivide", "-n", "10"], &b3);
        assert_eq!(o.code, EXIT_BUDGET);
        assert!(o.stderr.contains("25165826"), "{}", o.stderr);
        let o = call(&["subdivide", "-n", "2", "--budget", "100"], &b3);
        assert_eq!(o.code, EXIT_BUDGET);
    }

    #[test]
    fn vectors_examples() {
        let cases = [
            (vec!["gen", "--cube-boundary", "3"], json!([8, 8, 8]), json!([4, 4, 4, 4]), 1),
            (vec!["gen", "--cube", "1"], json!([2, 0]), json!([2, 0, 0]), 0),
            (vec!["gen", "--cube", "2"], json!([4, 0, 0]), json!([4, 0, 0, 0]), 0),
        ];
        for (g, hsc, hc, e) in cases {
            let j = parse(&call(&["vectors"], &gen(&g)));
            assert_eq!(j["hsc"], hsc);
            assert_eq!(j["hc"], hc);
            assert_eq!(j["euler_reduced"], json!(e));
        }
    }

    #[test]
    fn invalid_stdin() {
        assert_eq!(call(&["vectors"], "not json").code, EXIT_IO);
        let bad = r#"{"dim":1,"faces":[{"id":0,"dim":0,"covered":[],"key":"a"},{"id":1,"dim":1,"covered":[0],"key":"e"}]}"#;
        let o = call(&["vectors"], bad);
        assert_eq!(o.code, EXIT_INVALID, "{}", o.stderr);
    }

    #[test]
    fn coeffs() {
        let j = parse(&call(&["coeffs", "--matrix", "b", "-d", "2"], ""));
        assert_eq!(j["entries"], json!([["3/2", "1/2"], ["1/2", "3/2"]]));
        let j = parse(&call(&["coeffs", "--matrix", "c", "-d", "3"], ""));
        assert_eq!(j["entries"][0], json!(["1", "0", "0", "0"]));
        assert_eq!(call(&["coeffs", "--matrix", "b", "-d", "0"], "").code, EXIT_IO);
    }

    #[test]
    fn verify_stdin_and_corpus() {
        let o = call(&["verify", "--suite", "hsc"], &gen(&["gen", "--cube-boundary", "3"]));
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("(26,44,26)"));
        let o = call(&["verify", "--suite", "fvec", "--corpus", "default"], "");
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(call(&["verify", "--suite", "nope"], "").code, EXIT_IO);
    }

    #[test]
    fn limit_examples() {
        let b3 = gen(&["gen", "--cube-boundary", "3"]);
        let j = parse(&call(&["limit", "--max-n", "3"], &b3));
        let rows = j["rows"].as_array().unwrap();
        assert_eq!(rows[0]["distance"], "4");
        assert_eq!(rows.len(), 4);
        let point = gen(&["gen", "--cube", "0"]);
        let j = parse(&call(&["limit", "--max-n", "3"], &point));
        assert!(j["rows"].as_array().unwrap().iter().all(|r| r["distance"] == "0"));
        assert_eq!(call(&["limit", "--max-n", "1", "--which", "hc"], &point).code, EXIT_IO);
        let sq = gen(&["gen", "--cube", "2"]);
        let j = parse(&call(&["limit", "--max-n", "0", "--which", "hc"], &sq));
        assert_eq!(j["rows"][0]["distance"], "4");
    }

    #[test]
    fn mine_is_deterministic() {
        let args = ["mine", "--target", "realroot", "--dim", "3", "--trials", "10", "--seed", "1"];
        let a = call(&args, "");
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, call(&args, ""));
        assert_eq!(call(&["mine", "--target", "realroot", "--dim", "9", "--trials", "1", "--seed", "1"], "").code, EXIT_IO);
    }

    #[test]
    fn help_exits_zero() {
        let o = call(&["--help"], "");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("mine"));
        let o = call(&["mine", "--help"], "");
        assert!(o.stdout.contains("probability 1/2"));
    }
}
