//! Cross-check suites. Each suite recomputes a claim two ways (a construction
//! and an oracle that does not share its code path) and reports one row per
//! case.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{smith_invariant_factors, AbelianInvariants, Abelianization, IntMatrix};
use crate::error::{Error, Result};
use crate::finquot::{hom_count_signature_with, Battery, HomSearch};
use crate::fpgroup::Presentation;
use crate::knotio::{braid_closure_presentation, figure_eight_braid, trefoil_braid};
use crate::par::Execution;
use crate::spin::{
    central_quotient, eliminated_presentation, iterated_twist_spin, orbifold_presentation,
    torus_center_witness, twist_spin, CenterVerdict, SpinSequence,
};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Unit and zero twists, and coprime double spins, against the infinite
    /// cyclic group.
    TwistCollapse,
    /// Iterated vs. eliminated presentations; central quotient vs. orbifold.
    CentralQuotient,
    /// Torus-knot center witness: residue formula vs. Smith form.
    TorusCenter,
    /// Smith normal form properties on random matrices.
    Snf,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::TwistCollapse,
        Suite::CentralQuotient,
        Suite::TorusCenter,
        Suite::Snf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TwistCollapse => "twist-collapse",
            Suite::CentralQuotient => "central-quotient",
            Suite::TorusCenter => "torus-center",
            Suite::Snf => "snf",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub snf_matrices: usize,
    pub snf_operations: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            snf_matrices: 500,
            snf_operations: 100,
            execution: Execution::default(),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::TwistCollapse => twist_collapse(opts)?,
        Suite::CentralQuotient => central_quotient_suite(opts)?,
        Suite::TorusCenter => torus_center_suite(opts),
        Suite::Snf => snf_suite(opts),
    };
    Ok(SuiteReport { suite, cases })
}

/// The two test knots used throughout: trefoil and figure-eight braids.
pub fn test_knots() -> Vec<(&'static str, Presentation)> {
    vec![
        (
            "trefoil",
            braid_closure_presentation(&trefoil_braid()).expect("knot"),
        ),
        (
            "figure-eight",
            braid_closure_presentation(&figure_eight_braid()).expect("knot"),
        ),
    ]
}

fn infinite_cyclic() -> Presentation {
    Presentation::free(["t"]).expect("valid")
}

fn sig(p: &Presentation, battery: &Battery, exec: Execution) -> Result<Vec<u64>> {
    hom_count_signature_with(
        p,
        battery,
        HomSearch {
            execution: exec,
            ..HomSearch::default()
        },
    )
}

fn compare(label: String, lhs: Vec<u64>, rhs: Vec<u64>) -> CaseResult {
    CaseResult {
        pass: lhs == rhs,
        detail: format!("{lhs:?} vs {rhs:?}"),
        label,
    }
}

fn twist_collapse(opts: &VerifyOptions) -> Result<Vec<CaseResult>> {
    let battery = Battery::default_battery();
    let z = sig(&infinite_cyclic(), &battery, opts.execution)?;
    let mut out = Vec::new();
    for (name, knot) in test_knots() {
        let one = twist_spin(&knot, 1)?;
        out.push(compare(
            format!("{name} k=1 ~ Z"),
            sig(&one, &battery, opts.execution)?,
            z.clone(),
        ));
        let zero = twist_spin(&knot, 0)?;
        out.push(compare(
            format!("{name} k=0 ~ knot group"),
            sig(&zero, &battery, opts.execution)?,
            sig(&knot, &battery, opts.execution)?,
        ));
    }
    let (_, trefoil) = &test_knots()[0];
    for seq in [[2, 3], [3, 4]] {
        let s = SpinSequence::new(seq.to_vec())?;
        let spun = iterated_twist_spin(trefoil, &s)?;
        out.push(compare(
            format!("trefoil ({s}) ~ Z"),
            sig(&spun, &battery, opts.execution)?,
            z.clone(),
        ));
    }
    Ok(out)
}

/// Every `(m1, m2)` with `1 ≤ m1 ≤ m2 ≤ 6`.
pub fn central_quotient_sequences() -> Vec<[u64; 2]> {
    (1..=6).flat_map(|a| (a..=6).map(move |b| [a, b])).collect()
}

fn central_quotient_suite(opts: &VerifyOptions) -> Result<Vec<CaseResult>> {
    let small = Battery::parse("C2,C3,S3,D4")?;
    let mut out = Vec::new();
    for (name, knot) in test_knots() {
        for seq in central_quotient_sequences() {
            let s = SpinSequence::new(seq.to_vec())?;
            let iterated = iterated_twist_spin(&knot, &s)?;
            let eliminated = eliminated_presentation(&knot, &s)?;
            out.push(compare(
                format!("{name} ({s}) iterated ~ eliminated"),
                sig(&iterated, &small, opts.execution)?,
                sig(&eliminated, &small, opts.execution)?,
            ));
            let cq = central_quotient(&knot, &s)?;
            let orb = orbifold_presentation(&knot, cq.m)?;
            out.push(compare(
                format!("{name} ({s}) central quotient ~ orbifold m={}", cq.m),
                sig(&cq.presentation, &small, opts.execution)?,
                sig(&orb, &small, opts.execution)?,
            ));
            let inv = Abelianization::of(&cq.presentation).invariants().clone();
            let want = AbelianInvariants::cyclic(cq.m);
            out.push(CaseResult {
                label: format!("{name} ({s}) central quotient abelianization"),
                pass: inv == want,
                detail: format!("{inv} vs {want}"),
            });
        }
    }
    Ok(out)
}

/// Coprime `2 ≤ p < q ≤ 7`, `2 ≤ m ≤ 12`.
pub fn torus_sweep_parameters() -> Vec<(i64, i64, u64)> {
    let mut rows = Vec::new();
    for p in 2..=7i64 {
        for q in p + 1..=7 {
            if p.gcd(&q) != 1 {
                continue;
            }
            for m in 2..=12u64 {
                rows.push((p, q, m));
            }
        }
    }
    rows
}

fn torus_center_suite(opts: &VerifyOptions) -> Vec<CaseResult> {
    let rows = torus_sweep_parameters();
    opts.execution.map(&rows, |&(p, q, m)| {
        let label = format!("p={p} q={q} m={m}");
        match torus_center_witness(p, q, m) {
            Ok(r) => {
                let divides = (p * q) % m as i64 == 0;
                let verdict_ok = (r.verdict == CenterVerdict::NonTrivialCenter) == !divides;
                let snf = r
                    .snf_image
                    .as_ref()
                    .map_or("-".to_string(), ToString::to_string);
                CaseResult {
                    pass: verdict_ok && r.agree,
                    detail: format!(
                        "{} formula={} snf={} {}",
                        r.verdict,
                        r.formula_image,
                        snf,
                        if r.agree { "AGREE" } else { "DISAGREE" }
                    ),
                    label,
                }
            }
            Err(e) => CaseResult {
                label,
                pass: false,
                detail: e.to_string(),
            },
        }
    })
}

pub mod oracle {
    //! Exact integer oracles that share no code with the Smith form routine.

    use super::*;

    /// Determinant by cofactor expansion along the first row.
    pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        match n {
            0 => BigInt::from(1),
            1 => m[0][0].clone(),
            _ => {
                let mut total = BigInt::zero();
                for j in 0..n {
                    if m[0][j].is_zero() {
                        continue;
                    }
                    let minor: Vec<Vec<BigInt>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, v)| v.clone())
                                .collect()
                        })
                        .collect();
                    let term = &m[0][j] * cofactor_det(&minor);
                    if j % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                total
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Invariant factors as ratios of determinantal divisors
    /// `d_k = gcd of all k×k minors`. Exponential; for tiny matrices only.
    pub fn invariant_factors_by_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut factors = Vec::new();
        let mut prev = BigInt::from(1);
        for k in 1..=rows.min(cols) {
            let mut d = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                        .collect();
                    d = d.gcd(&cofactor_det(&minor));
                }
            }
            if d.is_zero() {
                break;
            }
            factors.push(&d / &prev);
            prev = d;
        }
        factors
    }
}

pub fn random_matrix(rng: &mut impl Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

/// Applies one random unimodular row or column operation.
pub fn random_elementary_op(m: &mut IntMatrix, rng: &mut impl Rng) {
    let by_rows = rng.gen_bool(0.5);
    let n = if by_rows { m.rows() } else { m.cols() };
    let kind = rng.gen_range(0..3);
    let i = rng.gen_range(0..n);
    let j = rng.gen_range(0..n);
    match (kind, by_rows) {
        (0, true) => m.swap_rows(i, j),
        (0, false) => m.swap_cols(i, j),
        (1, _) if i != j => {
            let k = BigInt::from(rng.gen_range(-3..=3));
            if by_rows {
                m.add_row_multiple(i, j, &k);
            } else {
                m.add_col_multiple(i, j, &k);
            }
        }
        (_, true) => m.negate_row(i),
        (_, false) => {
            for r in 0..m.rows() {
                let v = -&m[(r, i)];
                m[(r, i)] = v;
            }
        }
    }
}

fn snf_case(index: usize, seed: u64, ops: usize) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    let m = random_matrix(&mut rng);
    let (factors, rank) = smith_invariant_factors(&m);
    let mut problems = Vec::new();

    if factors.iter().any(|f| !f.is_positive()) || rank != factors.len() {
        problems.push("nonpositive factor or rank mismatch".to_string());
    }
    if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        problems.push("divisibility chain broken".to_string());
    }
    let rows = m.to_rows();
    if oracle::invariant_factors_by_minors(&rows) != factors {
        problems.push("differs from determinantal divisors".to_string());
    }
    if m.rows() == m.cols() {
        let det = oracle::cofactor_det(&rows);
        if !det.is_zero() {
            let product: BigInt = factors.iter().product();
            if product != det.abs() {
                problems.push(format!("product {product} != |det| {}", det.abs()));
            }
        }
    }
    let mut moved = m.clone();
    for _ in 0..ops {
        random_elementary_op(&mut moved, &mut rng);
    }
    if smith_invariant_factors(&moved) != (factors.clone(), rank) {
        problems.push("not invariant under elementary operations".to_string());
    }
    let factor_text: Vec<String> = factors.iter().map(ToString::to_string).collect();
    CaseResult {
        label: format!("matrix #{index} ({}x{})", m.rows(), m.cols()),
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("factors [{}]", factor_text.join(", "))
        } else {
            problems.join("; ")
        },
    }
}

fn snf_suite(opts: &VerifyOptions) -> Vec<CaseResult> {
    opts.execution.map_range(opts.snf_matrices, |i| {
        snf_case(i, opts.seed, opts.snf_operations)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn oracles_on_small_matrices() {
        assert_eq!(
            oracle::cofactor_det(&big(&[&[2, 0], &[0, 3]])),
            BigInt::from(6)
        );
        assert_eq!(
            oracle::cofactor_det(&big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(
            oracle::invariant_factors_by_minors(&big(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert!(oracle::invariant_factors_by_minors(&big(&[&[0]])).is_empty());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_snf_run_passes() {
        let opts = VerifyOptions {
            snf_matrices: 40,
            ..Default::default()
        };
        assert!(run_suite(Suite::Snf, &opts).unwrap().passed());
    }

    #[test]
    fn torus_sweep_size() {
        // coprime pairs with 2 <= p < q <= 7: 11 of them, times 11 values of m
        assert_eq!(torus_sweep_parameters().len(), 121);
    }
}
