//! The parameter table of the seven construction graphs, its closed forms,
//! and the strict g1/g2 inequality chains that disqualify every pair inside
//! each family. All comparisons are exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::construct::{build_member, validate_seed, ConstructionKind, TABLE_ORDER};
use crate::error::Result;
use crate::graph::LabeledGraph;
use crate::value::RationalJson;

#[derive(Debug, Clone)]
pub struct Table1Row {
    pub kind: ConstructionKind,
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub g1: BigRational,
    pub g2: BigRational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table1RowJson {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub g1: RationalJson,
    pub g2: RationalJson,
}

impl Table1Row {
    pub fn to_json(&self) -> Table1RowJson {
        Table1RowJson {
            name: self.name.clone(),
            n: self.n,
            m: self.m,
            b: self.b,
            g1: RationalJson::from_rational(&self.g1),
            g2: RationalJson::from_rational(&self.g2),
        }
    }
}

fn rat(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds all seven rows for the seed. Every (n, m) comes from the actual
/// construction and every b from an exact max-cut; `build_member` re-checks
/// each row against the closed forms internally.
pub fn table1(seed: &LabeledGraph) -> Result<Vec<Table1Row>> {
    validate_seed(seed)?;
    let mut rows = Vec::with_capacity(TABLE_ORDER.len());
    for kind in TABLE_ORDER {
        let member = build_member(kind, seed)?;
        let p = crate::params::graph_params(&member.graph)?;
        rows.push(Table1Row {
            kind,
            name: member.name,
            n: p.n,
            m: p.m,
            b: p.b,
            g1: p.g1.expect("members have edges"),
            g2: p.g2.expect("members have edges"),
        });
    }
    Ok(rows)
}

/// Fixed-width text rendering mirroring the table's column layout.
pub fn render_table(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<28} {:>5} {:>5} {:>5} {:>12} {:>12}\n",
        "graph", "n", "m", "b", "(n-1)/m", "b/m"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<28} {:>5} {:>5} {:>5} {:>12} {:>12}\n",
            r.name,
            r.n,
            r.m,
            r.b,
            r.g1.to_string(),
            r.g2.to_string()
        ));
    }
    out
}

/// One strict inequality between two named quantities, recorded exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: RationalJson,
    pub rhs: RationalJson,
    pub holds: bool,
}

fn strict(name: &str, lhs: BigRational, rhs: BigRational) -> InequalityCheck {
    InequalityCheck {
        name: name.into(),
        holds: lhs > rhs,
        lhs: RationalJson::from_rational(&lhs),
        rhs: RationalJson::from_rational(&rhs),
    }
}

/// The full strict inequality suite for a seed with parameters (N, M, B):
/// the four g1/g2 chains per family (with their intermediate steps) plus the
/// integer instantiation (M+1)(4N-1) > 4N^2 and the hypotheses N <= M,
/// B < M, N >= 3. Everything exact.
pub fn inequality_suite(seed: &LabeledGraph) -> Result<Vec<InequalityCheck>> {
    let (n, m, b) = validate_seed(seed)?;
    let one = BigRational::from_integer(BigInt::from(1));
    let mut checks = Vec::new();

    // seed hypotheses
    checks.push(InequalityCheck {
        name: "N <= M".into(),
        holds: n <= m,
        lhs: RationalJson::from_rational(&rat(n, 1)),
        rhs: RationalJson::from_rational(&rat(m, 1)),
    });
    checks.push(strict("M > B", rat(m, 1), rat(b, 1)));
    checks.push(InequalityCheck {
        name: "N >= 3".into(),
        holds: n >= 3,
        lhs: RationalJson::from_rational(&rat(n, 1)),
        rhs: RationalJson::from_rational(&rat(3, 1)),
    });

    // family 1 chains
    checks.push(strict(
        "g1(C_2N) > N/(N+1)",
        rat(2 * n - 1, 2 * n),
        rat(n, n + 1),
    ));
    checks.push(InequalityCheck {
        name: "N/(N+1) >= g1(T')".into(),
        holds: rat(n, n + 1) >= rat(n, m + 1),
        lhs: RationalJson::from_rational(&rat(n, n + 1)),
        rhs: RationalJson::from_rational(&rat(n, m + 1)),
    });
    checks.push(strict(
        "g1(T') > g1(db01(T'))",
        rat(n, m + 1),
        rat(2 * n - 1, 2 * m + 1),
    ));
    checks.push(strict("g2(C_2N) > g2(T')", one.clone(), rat(b + 1, m + 1)));
    checks.push(strict(
        "g2(T') > g2(db01(T'))",
        rat(b + 1, m + 1),
        rat(2 * b + 1, 2 * m + 1),
    ));

    // family 2 chains
    checks.push(strict("g1(e) > g1(T')", one.clone(), rat(n, m + 1)));
    checks.push(strict(
        "g1(T') > (8N-4)/(8M+4)",
        rat(n, m + 1),
        rat(8 * n - 4, 8 * m + 4),
    ));
    checks.push(strict(
        "(8N-4)/(8M+4) > g1(db12(db0^2(T)''))",
        rat(8 * n - 4, 8 * m + 4),
        rat(8 * n - 5, 8 * m + 4),
    ));
    checks.push(strict("g2(e) > g2(T')", one, rat(b + 1, m + 1)));
    checks.push(strict(
        "g2(T') > g2(db12(db0^2(T)''))",
        rat(b + 1, m + 1),
        rat(8 * b + 4, 8 * m + 4),
    ));

    // family 3 chains
    checks.push(strict(
        "g1(db12(db0(T^N)'')) > g1(T')",
        rat(8 * n - 1, 4 * m + 4 + 4 * n),
        rat(n, m + 1),
    ));
    checks.push(strict(
        "(M+1)(4N-1) > 4N^2",
        rat((m + 1) * (4 * n - 1), 1),
        rat(4 * n * n, 1),
    ));
    checks.push(strict("g1(T') > g1(T)", rat(n, m + 1), rat(n - 1, m)));
    checks.push(strict(
        "g2(db12(db0(T^N)'')) > g2(T')",
        rat(4 * b + 4 + 4 * n, 4 * m + 4 + 4 * n),
        rat(b + 1, m + 1),
    ));
    checks.push(strict("g2(T') > g2(T)", rat(b + 1, m + 1), rat(b, m)));

    Ok(checks)
}
