//! Exact verification of the auxiliary LP dual certificates.
//!
//! Two LP families bound the probability that rounding breaks an edge,
//! relative to its LP value. Each case is a maximization `c·w + constant`
//! subject to `A w <= b`; a nonnegative `y` with `Aᵀy = c` proves the upper
//! bound `constant + bᵀy`.

mod tables;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{EccError, Result};
use crate::lp::{solve, LinearProgram, LpStatus, Relation, Sense};

pub use tables::{DUALS_A, DUALS_B1, DUALS_B2, TABLES_SHA256};

pub type Rational = BigRational;

/// Box used by the numeric cross-check. The exact check needs no bounds.
pub const AUX_VAR_BOUND: f64 = 16.0;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || EccError::InvalidArgument(format!("bad rational literal '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
}

/// Identifies one auxiliary LP. `p` is 0 for family A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseId {
    pub family: Family,
    pub p: u32,
    pub q: u32,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A q={}", self.q),
            Family::B => write!(f, "B p={} q={}", self.p, self.q),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuxLpCase {
    pub id: CaseId,
    /// `w1..wm` then `chi`.
    pub names: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
    pub constant: Rational,
}

impl AuxLpCase {
    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
}

fn var_names(m: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    names.push("chi".into());
    names
}

struct RowBuilder {
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl RowBuilder {
    fn new(n: usize) -> Self {
        RowBuilder {
            n,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn push(&mut self, terms: &[(usize, Rational)], b: Rational) {
        let mut row = vec![Rational::zero(); self.n];
        for (j, a) in terms {
            row[*j] += a;
        }
        self.rows.push(row);
        self.rhs.push(b);
    }
}

/// Family A, `1 <= q <= 6`: rows A1..A10 over `w1..w6, chi`.
pub fn build_lp_a(q: u32) -> Result<AuxLpCase> {
    if !(1..=6).contains(&q) {
        return Err(EccError::InvalidArgument(format!(
            "family A needs 1 <= q <= 6, got {q}"
        )));
    }
    let chi = 6;
    let w = |i: usize| i - 1;
    let mut rb = RowBuilder::new(7);
    for i in 1..=5 {
        rb.push(&[(w(i), int(1)), (w(i + 1), int(-1))], int(0));
    }
    rb.push(&[(chi, int(1)), (w(1), int(-1))], int(1));
    rb.push(&[(chi, int(2)), (w(2), int(-1)), (w(3), int(-1))], int(1));
    rb.push(&[(chi, int(3)), (w(5), int(-3))], int(1));
    rb.push(&[(chi, int(-1))], int(-2));
    rb.push(&[(w(q as usize), int(1)), (chi, rat(-7, 8))], int(0));

    let q = q as i64;
    let mut objective = vec![Rational::zero(); 7];
    objective[chi] = rat(7 * q, 8 * (q + 1));
    for j in 1..=q {
        objective[w(j as usize)] = -rat(1, j * (j + 1));
    }
    Ok(AuxLpCase {
        id: CaseId {
            family: Family::A,
            p: 0,
            q: q as u32,
        },
        names: var_names(6),
        rows: rb.rows,
        rhs: rb.rhs,
        objective,
        constant: Rational::zero(),
    })
}

/// Family B, `1 <= p <= 5`, `p <= q <= 10`: rows B1..B16 over
/// `w1..w10, chi`. Row B14 reads `w_{p-1} <= 1` and is `0 <= 1` for `p = 1`.
pub fn build_lp_b(p: u32, q: u32) -> Result<AuxLpCase> {
    if !(1..=5).contains(&p) || q < p || q > 10 {
        return Err(EccError::InvalidArgument(format!(
            "family B needs 1 <= p <= 5 and p <= q <= 10, got p={p} q={q}"
        )));
    }
    let chi = 10;
    let w = |i: usize| i - 1;
    let mut rb = RowBuilder::new(11);
    for i in 1..=9 {
        rb.push(&[(w(i), int(1)), (w(i + 1), int(-1))], int(0));
    }
    rb.push(&[(chi, int(1)), (w(1), int(-1))], int(1));
    rb.push(&[(chi, int(2)), (w(2), int(-1)), (w(3), int(-1))], int(1));
    rb.push(
        &[
            (chi, int(3)),
            (w(3), int(-1)),
            (w(4), int(-1)),
            (w(5), int(-1)),
        ],
        int(1),
    );
    rb.push(&[(chi, int(4)), (w(7), int(-4))], int(1));
    if p > 1 {
        rb.push(&[(w(p as usize - 1), int(1))], int(1));
    } else {
        rb.push(&[], int(1));
    }
    rb.push(&[(w(p as usize), int(-1))], int(-1));
    rb.push(&[(w(q as usize), int(1)), (chi, rat(-7, 8))], int(0));

    let (pi, qi) = (p as i64, q as i64);
    let mut objective = vec![Rational::zero(); 11];
    objective[chi] = rat(qi, qi + 1) * rat(7, 8) - rat(1, 2);
    for j in pi..=qi {
        objective[w(j as usize)] = -rat(1, j * (j + 1));
    }
    Ok(AuxLpCase {
        id: CaseId {
            family: Family::B,
            p,
            q,
        },
        names: var_names(10),
        rows: rb.rows,
        rhs: rb.rhs,
        objective,
        constant: rat(1, pi),
    })
}

/// All 6 family-A cases followed by the 40 family-B cases.
pub fn all_cases() -> Vec<AuxLpCase> {
    let mut out: Vec<AuxLpCase> = (1..=6).map(|q| build_lp_a(q).unwrap()).collect();
    for p in 1..=5 {
        for q in p..=10 {
            out.push(build_lp_b(p, q).unwrap());
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub id: CaseId,
    /// One value per constraint row.
    pub duals: Vec<Rational>,
    pub claimed: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub bound: Rational,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Exact weak-duality check of `cert` against `case`.
pub fn verify_certificate(case: &AuxLpCase, cert: &DualCertificate) -> Result<Verification> {
    if cert.duals.len() != case.num_rows() {
        return Err(EccError::DimensionMismatch(format!(
            "{}: {} duals for {} constraints",
            case.id,
            cert.duals.len(),
            case.num_rows()
        )));
    }
    let mut failures = Vec::new();
    if cert.id != case.id {
        failures.push(format!(
            "certificate is for {}, case is {}",
            cert.id, case.id
        ));
    }
    for (i, y) in cert.duals.iter().enumerate() {
        if y.is_negative() {
            failures.push(format!("dual {} is negative ({y})", i + 1));
        }
    }
    for j in 0..case.num_vars() {
        let aty: Rational = case
            .rows
            .iter()
            .zip(&cert.duals)
            .map(|(row, y)| &row[j] * y)
            .sum();
        if aty != case.objective[j] {
            failures.push(format!(
                "stationarity fails at {}: A^T y = {aty}, c = {}",
                case.names[j], case.objective[j]
            ));
        }
    }
    let bound: Rational = &case.constant
        + case
            .rhs
            .iter()
            .zip(&cert.duals)
            .map(|(b, y)| b * y)
            .sum::<Rational>();
    if bound > rat(1, 2) {
        failures.push(format!("bound {bound} exceeds 1/2"));
    }
    if bound != cert.claimed {
        failures.push(format!(
            "bound {bound} differs from claimed {}",
            cert.claimed
        ));
    }
    Ok(Verification {
        ok: failures.is_empty(),
        bound,
        failures,
    })
}

fn tables_digest() -> String {
    let mut h = Sha256::new();
    h.update(DUALS_A.as_bytes());
    h.update(DUALS_B1.as_bytes());
    h.update(DUALS_B2.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_table(
    text: &str,
    table: &str,
    head: usize,
    family: Family,
    rows: usize,
    cols: &[usize],
) -> Result<Vec<DualCertificate>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let fail = |m: &str| EccError::CertificateFailed(format!("{table} line {}: {m}", ln + 1));
        if toks.len() != head + cols.len() + 1 {
            return Err(fail("wrong number of fields"));
        }
        let nums: Vec<u32> = toks[..head]
            .iter()
            .map(|t| t.parse().map_err(|_| fail("bad case index")))
            .collect::<Result<_>>()?;
        let (p, q) = if head == 1 {
            (0, nums[0])
        } else {
            (nums[0], nums[1])
        };
        let mut duals = vec![Rational::zero(); rows];
        for (&c, t) in cols.iter().zip(&toks[head..]) {
            duals[c - 1] = parse_rational(t)?;
        }
        let claimed = parse_rational(toks[toks.len() - 1])?;
        out.push(DualCertificate {
            id: CaseId { family, p, q },
            duals,
            claimed,
        });
    }
    Ok(out)
}

/// Parses the embedded tables after checking their checksum. Duals the
/// tables omit are zero.
pub fn embedded_certificates() -> Result<Vec<DualCertificate>> {
    let digest = tables_digest();
    if digest != TABLES_SHA256 {
        return Err(EccError::CertificateFailed(format!(
            "table checksum {digest} does not match {TABLES_SHA256}"
        )));
    }
    let a_cols: Vec<usize> = (1..=10).collect();
    let b4_cols: Vec<usize> = (1..=16).filter(|&c| c != 6).collect();
    let b5_cols: Vec<usize> = (1..=16).filter(|&c| c != 1 && c != 10).collect();
    let mut out = parse_table(DUALS_A, "family A duals", 1, Family::A, 10, &a_cols)?;
    out.extend(parse_table(
        DUALS_B1,
        "first family B duals",
        2,
        Family::B,
        16,
        &b4_cols,
    )?);
    out.extend(parse_table(
        DUALS_B2,
        "second family B duals",
        2,
        Family::B,
        16,
        &b5_cols,
    )?);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: CaseId,
    /// Exact bound as `num/den`.
    pub bound: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub cases: Vec<CaseReport>,
    pub max_bound: String,
}

impl CertReport {
    pub fn verified(&self) -> usize {
        self.cases.iter().filter(|c| c.ok).count()
    }
}

/// Verifies every embedded certificate. The first failing case aborts with
/// its name and reasons.
pub fn verify_all() -> Result<CertReport> {
    let certs = embedded_certificates()?;
    let cases = all_cases();
    if certs.len() != cases.len() {
        return Err(EccError::CertificateFailed(format!(
            "{} certificates for {} cases",
            certs.len(),
            cases.len()
        )));
    }
    let results: Vec<Result<(CaseId, Rational)>> = cases
        .par_iter()
        .map(|case| {
            let cert = certs.iter().find(|c| c.id == case.id).ok_or_else(|| {
                EccError::CertificateFailed(format!("{}: no certificate", case.id))
            })?;
            let v = verify_certificate(case, cert)?;
            if !v.ok {
                return Err(EccError::CertificateFailed(format!(
                    "{}: {}",
                    case.id,
                    v.failures.join("; ")
                )));
            }
            Ok((case.id, v.bound))
        })
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut max = Rational::zero();
    for r in results {
        let (id, bound) = r?;
        if bound > max {
            max = bound.clone();
        }
        reports.push(CaseReport {
            id,
            bound: bound.to_string(),
            ok: true,
        });
    }
    Ok(CertReport {
        cases: reports,
        max_bound: max.to_string(),
    })
}

fn to_f64(r: &Rational) -> f64 {
    // numerators and denominators here are tiny
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// Floating-point copy of `case` with every variable boxed to
/// `[0, AUX_VAR_BOUND]`.
pub fn to_linear_program(case: &AuxLpCase) -> LinearProgram {
    let mut lp = LinearProgram::new(Sense::Maximize);
    for (name, c) in case.names.iter().zip(&case.objective) {
        lp.add_variable(name.clone(), 0.0, AUX_VAR_BOUND, to_f64(c));
    }
    lp.constant = to_f64(&case.constant);
    let label = match case.id.family {
        Family::A => "A",
        Family::B => "B",
    };
    for (i, (row, b)) in case.rows.iter().zip(&case.rhs).enumerate() {
        let coeffs = row
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, to_f64(a)))
            .collect();
        lp.add_constraint(format!("{label}{}", i + 1), coeffs, Relation::Le, to_f64(b));
    }
    lp
}

/// Primal optimum of the boxed case via the simplex.
pub fn solve_aux_numeric(case: &AuxLpCase) -> Result<f64> {
    let r = solve(&to_linear_program(case), 10_000);
    match r.status {
        LpStatus::Optimal => Ok(r.value),
        s => Err(EccError::NotOptimal(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert_for(id: CaseId) -> DualCertificate {
        embedded_certificates()
            .unwrap()
            .into_iter()
            .find(|c| c.id == id)
            .unwrap()
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("3/8").unwrap(), rat(3, 8));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lp_a_shape() {
        let a1 = build_lp_a(1).unwrap();
        assert_eq!((a1.num_rows(), a1.num_vars()), (10, 7));
        assert_eq!(a1.objective[6], rat(7, 16));
        assert_eq!(a1.objective[0], rat(-1, 2));
        assert_eq!(
            a1.rhs,
            [0, 0, 0, 0, 0, 1, 1, 1, -2, 0].map(|v| int(v)).to_vec()
        );
        assert_eq!(build_lp_a(6).unwrap().objective[6], rat(3, 4));
        assert!(build_lp_a(0).is_err());
        assert!(build_lp_a(7).is_err());
    }

    #[test]
    fn lp_b_shape() {
        let b = build_lp_b(1, 1).unwrap();
        assert_eq!((b.num_rows(), b.num_vars()), (16, 11));
        assert_eq!(b.constant, int(1));
        assert_eq!(b.objective[10], rat(-1, 16));
        assert_eq!(b.objective[0], rat(-1, 2));
        assert!(b.rows[13].iter().all(|a| a.is_zero()));
        let b13 = &build_lp_b(3, 5).unwrap().rows[12];
        assert_eq!(b13[10], int(4));
        assert_eq!(b13[6], int(-4));
        assert!(build_lp_b(6, 6).is_err());
        assert!(build_lp_b(3, 2).is_err());
        assert!(build_lp_b(1, 11).is_err());
        assert_eq!(all_cases().len(), 46);
    }

    #[test]
    fn first_a_certificate() {
        let case = build_lp_a(1).unwrap();
        let mut duals = vec![Rational::zero(); 10];
        duals[5] = rat(1, 2);
        duals[8] = rat(1, 16);
        let cert = DualCertificate {
            id: case.id,
            duals,
            claimed: rat(3, 8),
        };
        let v = verify_certificate(&case, &cert).unwrap();
        assert!(v.ok, "{:?}", v.failures);
        assert_eq!(v.bound, rat(3, 8));

        let mut bad = cert.clone();
        bad.duals[8] = rat(1, 8);
        let v = verify_certificate(&case, &bad).unwrap();
        assert!(!v.ok);
        assert!(v.failures.iter().any(|f| f.contains("stationarity")));
    }

    #[test]
    fn first_b_certificate() {
        let case = build_lp_b(1, 1).unwrap();
        let mut duals = vec![Rational::zero(); 16];
        duals[14] = rat(4, 7);
        duals[15] = rat(1, 14);
        let cert = DualCertificate {
            id: case.id,
            duals,
            claimed: rat(3, 7),
        };
        let v = verify_certificate(&case, &cert).unwrap();
        assert!(v.ok, "{:?}", v.failures);
        assert_eq!(v.bound, rat(3, 7));
    }

    #[test]
    fn dimension_mismatch() {
        let case = build_lp_a(2).unwrap();
        let cert = DualCertificate {
            id: case.id,
            duals: vec![],
            claimed: rat(1, 2),
        };
        assert!(matches!(
            verify_certificate(&case, &cert),
            Err(EccError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn negative_dual_rejected() {
        let case = build_lp_a(1).unwrap();
        let mut cert = cert_for(case.id);
        cert.duals[0] = rat(-1, 2);
        assert!(!verify_certificate(&case, &cert).unwrap().ok);
    }

    #[test]
    fn wrong_claim_rejected() {
        let case = build_lp_b(5, 10).unwrap();
        let mut cert = cert_for(case.id);
        cert.claimed = rat(1, 2);
        assert!(!verify_certificate(&case, &cert).unwrap().ok);
    }

    #[test]
    fn all_embedded() {
        let rep = verify_all().unwrap();
        assert_eq!(rep.cases.len(), 46);
        assert_eq!(rep.verified(), 46);
        assert_eq!(rep.max_bound, "1/2");
        let get = |s: &str| {
            rep.cases
                .iter()
                .find(|c| c.id.to_string() == s)
                .unwrap()
                .bound
                .clone()
        };
        assert_eq!(get("A q=1"), "3/8");
        assert_eq!(get("A q=6"), "29/63");
        assert_eq!(get("B p=1 q=1"), "3/7");
        assert_eq!(get("B p=5 q=10"), "851/1760");
    }

    #[test]
    fn checksum_matches() {
        assert_eq!(tables_digest(), TABLES_SHA256);
    }

    #[test]
    fn numeric_cross_check() {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-6;
        assert!(close(
            solve_aux_numeric(&build_lp_a(2).unwrap()).unwrap(),
            0.5
        ));
        assert!(close(
            solve_aux_numeric(&build_lp_a(1).unwrap()).unwrap(),
            0.375
        ));
        assert!(close(
            solve_aux_numeric(&build_lp_b(2, 4).unwrap()).unwrap(),
            0.5
        ));
    }
}
