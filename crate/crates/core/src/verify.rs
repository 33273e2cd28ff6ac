//! Oracle-equivalence and identity checks over a set of complexes.
//!
//! Every check compares two independently computed quantities: the explicit
//! subdivision against the closed-form transforms, recursions against closed
//! forms, and polynomial identities through Möbius substitutions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::CubicalComplex;
use crate::corpus::CorpusItem;
use crate::poly::{is_real_rooted, pow2, rat, real_root_count, shape_predicates, RatPoly};
use crate::subdivision::{projected_face_counts, subdivide_n, subdivide_unchecked};
use crate::transform::{
    b_matrix, c_matrix, hc_of_subdivision, hsc_of_subdivision, hsc_of_subdivision_rational, hsc_poly_of_iterate,
    iterate_short_poly, CoeffMatrix,
};
use crate::vectors::{check_long_short_identity, f_from_hsc, hc_closed_form, Vectors};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fvec,
    Hsc,
    Hc,
    Euler,
    Symmetry,
    Realroot,
    Identity,
    Iterate,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Fvec,
        Suite::Hsc,
        Suite::Hc,
        Suite::Euler,
        Suite::Symmetry,
        Suite::Realroot,
        Suite::Identity,
        Suite::Iterate,
    ];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Fvec => "fvec",
            Suite::Hsc => "hsc",
            Suite::Hc => "hc",
            Suite::Euler => "euler",
            Suite::Symmetry => "symmetry",
            Suite::Realroot => "realroot",
            Suite::Identity => "identity",
            Suite::Iterate => "iterate",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemReport {
    pub item: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub checks_run: usize,
    pub items: Vec<ItemReport>,
}

impl Report {
    /// First failing check as `(item, check)`.
    pub fn first_failure(&self) -> Option<(&str, &Check)> {
        self.items
            .iter()
            .flat_map(|i| i.checks.iter().map(move |c| (i.item.as_str(), c)))
            .find(|(_, c)| !c.pass)
    }
}

fn fmt_ints(v: &[BigInt]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

/// Complexes whose second explicit subdivision would exceed this many faces
/// skip the level-2 construction check.
const EXPLICIT_LEVEL2_LIMIT: u64 = 200_000;

struct Recorder<'a> {
    suite: Suite,
    checks: &'a mut Vec<Check>,
}

impl Recorder<'_> {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite.to_string(),
            check: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Everything about `K` and its explicitly built subdivision.
struct Subject<'a> {
    k: &'a CubicalComplex,
    sd: CubicalComplex,
    v: Vectors,
    sv: Vectors,
}

impl<'a> Subject<'a> {
    fn new(k: &'a CubicalComplex) -> Self {
        let sd = subdivide_unchecked(k);
        let v = Vectors::of_complex(k);
        let sv = Vectors::of_complex(&sd);
        Subject { k, sd, v, sv }
    }

    fn d(&self) -> usize {
        self.v.f.d()
    }
}

/// Runs `suite` over the items, which must already be valid complexes.
pub fn run(suite: Suite, items: &[CorpusItem]) -> Report {
    let mut out = Vec::with_capacity(items.len() + 1);
    for item in items {
        let subject = Subject::new(&item.complex);
        let mut checks = Vec::new();
        for s in Suite::EACH {
            if suite.includes(s) {
                run_one(s, &subject, &mut Recorder { suite: s, checks: &mut checks });
            }
        }
        out.push(ItemReport { item: item.name.clone(), checks });
    }
    if suite.includes(Suite::Symmetry) {
        let mut checks = Vec::new();
        let mut rec = Recorder { suite: Suite::Symmetry, checks: &mut checks };
        for d in 1..=10 {
            for (name, pass, detail) in matrix_checks(d) {
                rec.check(&name, pass, detail);
            }
        }
        out.push(ItemReport { item: "coefficient-matrices".into(), checks });
    }
    let checks_run = out.iter().map(|i| i.checks.len()).sum();
    let pass = out.iter().all(|i| i.checks.iter().all(|c| c.pass));
    Report { suite: suite.to_string(), pass, checks_run, items: out }
}

fn run_one(suite: Suite, s: &Subject, rec: &mut Recorder) {
    match suite {
        Suite::Fvec => fvec_checks(s, rec),
        Suite::Hsc => hsc_checks(s, rec),
        Suite::Hc => hc_checks(s, rec),
        Suite::Euler => euler_checks(s, rec),
        Suite::Symmetry => symmetry_checks(s, rec),
        Suite::Realroot => realroot_checks(s, rec),
        Suite::Identity => {
            identity_checks("K", &s.v, rec);
            identity_checks("sd(K)", &s.sv, rec);
        }
        Suite::Iterate => iterate_checks(s, rec),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn fvec_checks(s: &Subject, rec: &mut Recorder) {
    let projected = projected_face_counts(&s.k.face_counts(), 1);
    let built = s.sv.f.entries();
    rec.check(
        "interval-count-formula",
        projected == built,
        format!("formula {} vs enumeration {}", fmt_ints(&projected), fmt_ints(built)),
    );
    // f_sd(x) = f_K(1 + 2x)
    let subst = s.v.f.polynomial().mobius_transform(2, 1, 0, 1, s.d() - 1).expect("m = deg bound");
    rec.check("f-polynomial-substitution", subst == s.sv.f.polynomial(), format!("f_K(1+2x) = {subst}"));
    let valid = s.sd.validate();
    rec.check(
        "subdivision-valid",
        valid.is_ok() && s.sd.dim() == s.k.dim(),
        format!("dim {} -> {}; {valid}", s.k.dim(), s.sd.dim()),
    );
}

fn hsc_checks(s: &Subject, rec: &mut Recorder) {
    let via_matrix = hsc_of_subdivision(&s.v.hsc);
    let explicit = &s.sv.hsc;
    match via_matrix {
        Ok(m) => rec.check(
            "short-transform-vs-explicit",
            &m == explicit,
            format!("{} -> {} (matrix) vs {} (explicit)", fmt_ints(s.v.hsc.entries()), fmt_ints(m.entries()), fmt_ints(explicit.entries())),
        ),
        Err(e) => rec.check("short-transform-vs-explicit", false, e.to_string()),
    }
    // 2^(d-1) h_sd(x) = (x+3)^(d-1) h_K((3x+1)/(x+3))
    let lhs = s.sv.hsc.polynomial().scale(&pow2(s.d() as i64 - 1));
    let rhs = s.v.hsc.polynomial().mobius_transform(3, 1, 1, 3, s.d() - 1).expect("m = deg bound");
    rec.check("short-polynomial-substitution", lhs == rhs, format!("{lhs} vs {rhs}"));
}

fn hc_checks(s: &Subject, rec: &mut Recorder) {
    let explicit = &s.sv.hc;
    match hc_of_subdivision(&s.v.hc) {
        Ok(m) => rec.check(
            "long-transform-vs-explicit",
            &m == explicit,
            format!("{} -> {} (matrix) vs {} (explicit)", fmt_ints(s.v.hc.entries()), fmt_ints(m.entries()), fmt_ints(explicit.entries())),
        ),
        Err(e) => rec.check("long-transform-vs-explicit", false, e.to_string()),
    }
}

fn euler_checks(s: &Subject, rec: &mut Recorder) {
    rec.check(
        "euler-invariant",
        s.v.euler_reduced == s.sv.euler_reduced,
        format!("{} vs {}", s.v.euler_reduced, s.sv.euler_reduced),
    );
    for (label, v) in [("K", &s.v), ("sd(K)", &s.sv)] {
        let d = v.f.d();
        let p = BigInt::one() << (d - 1);
        let expected = if (d - 1) % 2 == 0 { p } else { -p } * &v.euler_reduced;
        let last = &v.hc.entries()[d];
        rec.check(&format!("long-top-entry {label}"), *last == expected, format!("h^c_d = {last}, (-2)^(d-1) chi~ = {expected}"));
    }
}

fn symmetry_checks(s: &Subject, rec: &mut Recorder) {
    let pairs = [
        ("short", shape_predicates(s.v.hsc.entries()), shape_predicates(s.sv.hsc.entries())),
        ("long", shape_predicates(s.v.hc.entries()), shape_predicates(s.sv.hc.entries())),
    ];
    for (name, before, after) in pairs {
        rec.check(
            &format!("{name}-symmetry-preserved"),
            !before.symmetric || after.symmetric,
            format!("symmetric {} -> {}", before.symmetric, after.symmetric),
        );
        rec.check(
            &format!("{name}-nonnegativity-preserved"),
            !before.nonnegative || after.nonnegative,
            format!("nonnegative {} -> {}", before.nonnegative, after.nonnegative),
        );
    }
}

/// Nonnegativity and symmetry of `B(d)` and `C(d)`, column sums of `B`, and
/// the first row of `C`, as `(name, pass, detail)`. `c_matrix` itself
/// enforces agreement of its three constructions.
pub fn matrix_checks(d: usize) -> Vec<(String, bool, String)> {
    let mut out = Vec::new();
    let mut record = |name: String, pass: bool, detail: String| out.push((name, pass, detail));
    let b = b_matrix(d).expect("d >= 1");
    let nonneg = |m: &CoeffMatrix| m.entries.iter().flatten().all(|x| !x.is_negative());
    let b_sym = (0..d).all(|i| (0..d).all(|j| b.get(i, j) == b.get(d - 1 - i, d - 1 - j)));
    let col_sums = (0..d).all(|j| (0..d).map(|i| b.get(i, j)).sum::<BigRational>() == pow2(d as i64 - 1));
    record(format!("B({d}) nonnegative"), nonneg(&b), String::new());
    record(format!("B({d}) centrally symmetric"), b_sym, String::new());
    record(format!("B({d}) column sums 2^(d-1)"), col_sums, String::new());
    match c_matrix(d) {
        Ok(c) => {
            let c_sym = (0..=d).all(|i| (0..=d).all(|j| c.get(i, j) == c.get(d - i, d - j)));
            let row0 = c.get(0, 0).is_one() && (1..=d).all(|j| c.get(0, j).is_zero());
            record(format!("C({d}) constructions agree"), true, String::new());
            record(format!("C({d}) nonnegative"), nonneg(&c), String::new());
            record(format!("C({d}) centrally symmetric"), c_sym, String::new());
            record(format!("C({d}) first row (1,0,...,0)"), row0, String::new());
        }
        Err(e) => record(format!("C({d}) constructions agree"), false, e.to_string()),
    }
    out
}

fn realroot_checks(s: &Subject, rec: &mut Recorder) {
    let (p, q) = (s.v.hsc.polynomial(), s.sv.hsc.polynomial());
    let (rp, rq) = (is_real_rooted(&p).expect("nonzero"), is_real_rooted(&q).expect("nonzero"));
    rec.check("real-rootedness-agrees", rp == rq, format!("K: {rp} ({p}); sd(K): {rq} ({q})"));
    // With both degrees full, x -> (3x+1)/(x+3) matches real roots one to one.
    let full = s.d() - 1;
    if p.degree() == Some(full) && q.degree() == Some(full) {
        let (np, nq) = (real_root_count(&p).expect("nonzero"), real_root_count(&q).expect("nonzero"));
        rec.check("distinct-real-root-count-preserved", np == nq, format!("{np} vs {nq}"));
    }
    if q.degree() == Some(1) {
        let root = -q.coeff(0) / q.coeff(1);
        if root != rat(-3) {
            let image = (rat(3) * &root + rat(1)) / (&root + rat(3));
            let value = p.eval(&image);
            rec.check(
                "root-maps-to-root",
                value.is_zero(),
                format!("root {root} maps to {image}, h_K there = {value}"),
            );
        }
    }
}

fn identity_checks(label: &str, v: &Vectors, rec: &mut Recorder) {
    let d = v.f.d();
    let f = v.f.polynomial();
    let h = v.hsc.polynomial();
    // h(x) = (1-x)^(d-1) f(2x/(1-x))
    let eq2 = f.mobius_transform(2, 0, -1, 1, d - 1).expect("deg bound");
    rec.check(&format!("short-from-f-substitution {label}"), eq2 == h, format!("{eq2} vs {h}"));
    // 2^(d-1) f(x) = (x+2)^(d-1) h(x/(x+2))
    let eq3 = h.mobius_transform(1, 0, 1, 2, d - 1).expect("deg bound");
    let scaled = f.scale(&pow2(d as i64 - 1));
    rec.check(&format!("f-from-short-substitution {label}"), eq3 == scaled, format!("{eq3} vs {scaled}"));
    let closed = hc_closed_form(&v.hsc);
    rec.check(
        &format!("long-recursion-vs-closed-form {label}"),
        closed == v.hc.entries(),
        format!("{} vs {}", fmt_ints(v.hc.entries()), fmt_ints(&closed)),
    );
    rec.check(&format!("long-short-identity {label}"), check_long_short_identity(&v.f), String::new());
    let sum: BigInt = v.hsc.entries().iter().sum();
    let expected = (BigInt::one() << (d - 1)) * v.f.top();
    rec.check(&format!("short-sum {label}"), sum == expected, format!("{sum} vs 2^(d-1) f_top = {expected}"));
    let back = f_from_hsc(&v.hsc);
    rec.check(&format!("f-round-trip {label}"), back.as_ref() == Ok(&v.f), format!("{back:?}"));
}

fn iterate_checks(s: &Subject, rec: &mut Recorder) {
    let h = &s.v.hsc;
    let d = s.d();
    let mut stepped: Vec<BigRational> = h.entries().iter().cloned().map(BigRational::from_integer).collect();
    for n in 1..=3u32 {
        stepped = hsc_of_subdivision_rational(&stepped).expect("d >= 1");
        let closed = hsc_poly_of_iterate(h, n).expect("deg bound");
        let stepped_poly = RatPoly::new(stepped.clone());
        rec.check(&format!("closed-form-vs-{n}-fold-transform"), closed == stepped_poly, format!("{closed} vs {stepped_poly}"));
    }
    for (m, n) in [(1u32, 1u32), (1, 2), (2, 1)] {
        let inner = hsc_poly_of_iterate(h, n).expect("deg bound");
        let outer = iterate_short_poly(&inner, d, m).expect("deg bound");
        let direct = hsc_poly_of_iterate(h, m + n).expect("deg bound");
        rec.check(&format!("semigroup ({m},{n})"), outer == direct, format!("{outer} vs {direct}"));
    }
    let level2: BigInt = projected_face_counts(&s.k.face_counts(), 2).iter().sum();
    if level2 <= BigInt::from(EXPLICIT_LEVEL2_LIMIT) {
        let sd2 = subdivide_n(s.k, 2, EXPLICIT_LEVEL2_LIMIT).expect("within budget");
        let explicit = Vectors::of_complex(&sd2).hsc.polynomial();
        let closed = hsc_poly_of_iterate(h, 2).expect("deg bound");
        rec.check("closed-form-vs-explicit-level-2", closed == explicit, format!("{closed} vs {explicit}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{default_corpus, two_edge_path};

    #[test]
    fn suites_parse() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn default_corpus_passes_everything() {
        let report = run(Suite::All, &default_corpus());
        if let Some((item, c)) = report.first_failure() {
            panic!("{item}: {} failed: {}", c.check, c.detail);
        }
        assert!(report.pass);
        assert!(report.checks_run > 300);
    }

    #[test]
    fn path_realroot_maps_root() {
        let items = vec![CorpusItem { name: "path".into(), complex: two_edge_path() }];
        let report = run(Suite::Realroot, &items);
        assert!(report.pass);
        let c = report.items[0].checks.iter().find(|c| c.check == "root-maps-to-root").unwrap();
        assert_eq!(c.detail, "root -5/3 maps to -3, h_K there = 0");
    }
}
