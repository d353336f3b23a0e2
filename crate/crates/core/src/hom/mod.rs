//! Exact homomorphism counting, rooted profiles and densities.
//!
//! Three engines, all exact:
//! - enumeration: brute force over vertex maps, the oracle (patterns up to 8
//!   vertices);
//! - elimination: sum-product variable elimination, exact for any pattern of
//!   bounded elimination width;
//! - composition: rooted-profile algebra along a construction expression,
//!   O(n^3) for the family members.

pub mod composition;
pub mod elimination;
pub mod enumeration;
pub mod host;
pub mod identities;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construct::ConstructionExpr;
use crate::error::{Error, Result};
use crate::graph::{Label, LabeledGraph};
use crate::value::{log_rational, RationalJson};

use composition::{expr_profile, expr_total};
use elimination::DEFAULT_WIDTH_CAP;
use enumeration::{hom_count_enumeration, ENUMERATION_PATTERN_LIMIT};
use host::{Host, IntHost};

/// An exact homomorphism count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCount(pub BigInt);

impl HomCount {
    pub fn to_decimal(&self) -> String {
        self.0.to_string()
    }
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for HomCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl<'de> Deserialize<'de> for HomCount {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let v: BigInt = s
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("bad count {s:?}")))?;
        Ok(HomCount(v))
    }
}

/// Engine selection for counting a plain pattern graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HomEngine {
    /// Elimination when the pattern's width allows, enumeration otherwise.
    #[default]
    Auto,
    Enumeration,
    Elimination,
}

impl std::str::FromStr for HomEngine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(HomEngine::Auto),
            "enumeration" | "oracle" | "brute" => Ok(HomEngine::Enumeration),
            "elimination" | "dp" => Ok(HomEngine::Elimination),
            other => Err(Error::InvalidParameter(format!("unknown engine {other:?}"))),
        }
    }
}

/// Exact number of homomorphisms pattern -> host. Pattern labels are ignored;
/// every edge-preserving vertex map counts.
pub fn hom_count(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<HomCount> {
    hom_count_with(HomEngine::Auto, pattern, host)
}

pub fn hom_count_with(
    engine: HomEngine,
    pattern: &LabeledGraph,
    host: &LabeledGraph,
) -> Result<HomCount> {
    if host.n() == 0 {
        return Err(Error::EmptyHost);
    }
    match engine {
        HomEngine::Enumeration => Ok(HomCount(hom_count_enumeration(pattern, host)?)),
        HomEngine::Elimination => hom_count_elimination(pattern, host),
        HomEngine::Auto => match hom_count_elimination(pattern, host) {
            // enumeration scales with host^pattern; it is the fallback, not
            // the default
            Err(Error::EliminationTooWide { .. })
                if pattern.n() <= ENUMERATION_PATTERN_LIMIT =>
            {
                Ok(HomCount(hom_count_enumeration(pattern, host)?))
            }
            other => other,
        },
    }
}

/// The elimination engine on a plain pattern graph.
pub fn hom_count_elimination(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<HomCount> {
    let adj = host.adjacency();
    let ih = IntHost { adj: &adj };
    let table = ih.base_table(pattern, &[], DEFAULT_WIDTH_CAP)?;
    Ok(HomCount(
        table.values.into_iter().next().expect("scalar table"),
    ))
}

/// Counts via the profile algebra along the construction expression.
pub fn hom_count_expr(expr: &ConstructionExpr, host: &LabeledGraph) -> Result<HomCount> {
    let adj = host.adjacency();
    Ok(HomCount(expr_total(expr, &IntHost { adj: &adj })?))
}

/// Extension counts for every placement of the rooted labels in the host.
#[derive(Debug, Clone, Serialize)]
pub struct RootedProfile {
    /// Rooted labels, ascending; assignment tuples follow this order.
    pub labels: Vec<Label>,
    pub counts: BTreeMap<Vec<usize>, HomCount>,
}

impl RootedProfile {
    pub fn total(&self) -> BigInt {
        self.counts.values().map(|c| &c.0).sum()
    }

    pub fn get(&self, assignment: &[usize]) -> Option<&BigInt> {
        self.counts.get(assignment).map(|c| &c.0)
    }

    fn from_table(table: composition::ProfileTable<BigInt>) -> Self {
        let h = table.host_size;
        let klen = table.labels.len();
        let mut counts = BTreeMap::new();
        for (idx, v) in table.values.into_iter().enumerate() {
            let mut digits = vec![0usize; klen];
            let mut rem = idx;
            for d in digits.iter_mut() {
                *d = rem % h;
                rem /= h;
            }
            counts.insert(digits, HomCount(v));
        }
        RootedProfile {
            labels: table.labels,
            counts,
        }
    }
}

/// Exact extension counts of `pattern` for every assignment of its
/// `labels`-labelled vertices into the host.
pub fn rooted_profile(
    pattern: &LabeledGraph,
    labels: &[Label],
    host: &LabeledGraph,
) -> Result<RootedProfile> {
    let roots: BTreeSet<Label> = labels.iter().copied().collect();
    let expr = ConstructionExpr::base(pattern.clone());
    rooted_profile_expr(&expr, &roots, host)
}

/// As `rooted_profile`, evaluated along a construction expression.
pub fn rooted_profile_expr(
    expr: &ConstructionExpr,
    roots: &BTreeSet<Label>,
    host: &LabeledGraph,
) -> Result<RootedProfile> {
    let adj = host.adjacency();
    let table = expr_profile(expr, roots, &IntHost { adj: &adj })?;
    Ok(RootedProfile::from_table(table))
}

/// Homomorphism density t = hom / n^|V(pattern)| as an exact rational, and
/// the per-edge normalisation f = t^(1/m) (absent when m = 0, zero when
/// t = 0).
#[derive(Debug, Clone)]
pub struct Density {
    pub hom: HomCount,
    pub t: BigRational,
    pub f: Option<f64>,
    pub pattern_n: usize,
    pub pattern_m: usize,
}

impl Density {
    pub fn to_json(&self) -> DensityJson {
        DensityJson {
            hom: self.hom.to_decimal(),
            t: RationalJson::from_rational(&self.t),
            f: self.f,
            pattern_n: self.pattern_n,
            pattern_m: self.pattern_m,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityJson {
    pub hom: String,
    pub t: RationalJson,
    pub f: Option<f64>,
    pub pattern_n: usize,
    pub pattern_m: usize,
}

pub(crate) fn density_from_parts(hom: BigInt, n: usize, m: usize, host_n: usize) -> Density {
    debug_assert!(!hom.is_negative());
    let denom = BigInt::from(host_n).pow(n as u32);
    let t = BigRational::new(hom.clone(), denom);
    let f = density_exponent(&t, m);
    Density {
        hom: HomCount(hom),
        t,
        f,
        pattern_n: n,
        pattern_m: m,
    }
}

/// f = t^(1/m), evaluated in the log domain; None when m = 0.
pub fn density_exponent(t: &BigRational, m: usize) -> Option<f64> {
    if m == 0 {
        return None;
    }
    if t.is_zero() {
        return Some(0.0);
    }
    Some((log_rational(t) / m as f64).exp())
}

/// t and f of a pattern in an unweighted host.
pub fn density(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<Density> {
    let hom = hom_count(pattern, host)?;
    Ok(density_from_parts(
        hom.0,
        pattern.n(),
        pattern.m(),
        host.n(),
    ))
}

/// t and f along a construction expression.
pub fn density_expr(expr: &ConstructionExpr, host: &LabeledGraph) -> Result<Density> {
    let realized = expr.realize()?;
    let hom = hom_count_expr(expr, host)?;
    Ok(density_from_parts(
        hom.0,
        realized.n(),
        realized.m(),
        host.n(),
    ))
}

/// Consistency guard used in tests and reports: a density must satisfy
/// 0 <= t <= 1.
pub fn density_in_unit_interval(d: &Density) -> bool {
    !d.t.is_negative() && d.t <= BigRational::one()
}

pub use identities::{verify_identities, IdentityCheck, IdentityReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, StandardKind};

    #[test]
    fn single_vertex_density_is_one() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let k4 = standard_graph(StandardKind::Complete, 4).unwrap();
        let d = density(&v, &k4).unwrap();
        assert_eq!(d.t, BigRational::one());
        assert!(d.f.is_none());
    }

    #[test]
    fn edge_density_in_k4() {
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let k4 = standard_graph(StandardKind::Complete, 4).unwrap();
        let d = density(&e, &k4).unwrap();
        assert_eq!(d.t, BigRational::new(3.into(), 4.into()));
        assert!((d.f.unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn c4_density_in_k3() {
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let d = density(&c4, &k3).unwrap();
        assert_eq!(d.hom.0, BigInt::from(18));
        assert_eq!(d.t, BigRational::new(2.into(), 9.into()));
        let f = d.f.unwrap();
        assert!((f - (2f64 / 9.0).powf(0.25)).abs() < 1e-14);
        assert!((f - 0.6866).abs() < 5e-4);
    }

    #[test]
    fn rooted_profile_of_edge_is_degree() {
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let p = rooted_profile(&e, &[0], &c5).unwrap();
        assert_eq!(p.labels, vec![0]);
        for u in 0..5 {
            assert_eq!(p.get(&[u]), Some(&BigInt::from(2)));
        }
        assert_eq!(p.total(), BigInt::from(10));
    }

    #[test]
    fn rooted_profile_of_path_center_is_degree_squared() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let p2 = crate::construct::pendant(&v, 2).unwrap();
        let host = standard_graph(StandardKind::Complete, 4).unwrap();
        let p = rooted_profile(&p2, &[0], &host).unwrap();
        for u in 0..4 {
            assert_eq!(p.get(&[u]), Some(&BigInt::from(9)));
        }
    }

    #[test]
    fn rooted_profile_of_triangle_in_k4() {
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let k4 = standard_graph(StandardKind::Complete, 4).unwrap();
        let p = rooted_profile(&k3, &[0], &k4).unwrap();
        for u in 0..4 {
            assert_eq!(p.get(&[u]), Some(&BigInt::from(6)));
        }
    }

    #[test]
    fn engines_dispatch_and_agree() {
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        for engine in [HomEngine::Auto, HomEngine::Enumeration, HomEngine::Elimination] {
            assert_eq!(hom_count_with(engine, &c4, &k3).unwrap().0, BigInt::from(18));
        }
    }

    #[test]
    fn profile_sums_to_total_count() {
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let host = standard_graph(StandardKind::Complete, 5).unwrap();
        let p = rooted_profile(&k3, &[0], &host).unwrap();
        assert_eq!(p.total(), hom_count(&k3, &host).unwrap().0);
        // every conditional count is bounded by host^(free vertices)
        let bound = BigInt::from(5).pow(2);
        assert!(p.counts.values().all(|c| c.0 <= bound));
    }

    #[test]
    fn densities_stay_in_the_unit_interval() {
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        for host_size in [1usize, 2, 5] {
            let host = standard_graph(StandardKind::Complete, host_size).unwrap();
            let d = density(&c4, &host).unwrap();
            assert!(density_in_unit_interval(&d));
        }
    }
}
