//! Weighted graphs with loops and exact weighted homomorphism densities.
//!
//! A weighted graph stands in for a limit object: t(F) sums the product of
//! edge weights over all vertex assignments, normalised by k^|V(F)|, and
//! f(F) = t(F)^(1/m) is the per-edge normalisation. Everything up to the
//! final f is exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construct::ConstructionExpr;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::hom::composition::expr_total;
use crate::hom::elimination::DEFAULT_WIDTH_CAP;
use crate::hom::host::{Host, RatHost};
use crate::value::{parse_rational, rational_to_f64, RationalJson};

/// A finite weighted graph with loops: symmetric weights in [0, 1], the
/// diagonal being the loop weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    k: usize,
    /// row-major k*k, symmetric
    w: Vec<BigRational>,
}

impl WeightedGraph {
    pub fn new(k: usize, entries: Vec<BigRational>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "weighted graph needs at least one vertex".into(),
            ));
        }
        if entries.len() != k * k {
            return Err(Error::InvalidParameter(format!(
                "expected {} weight entries, got {}",
                k * k,
                entries.len()
            )));
        }
        let g = WeightedGraph { k, w: entries };
        for u in 0..k {
            for v in 0..k {
                let x = g.get(u, v);
                if x.is_negative() || x > &BigRational::one() {
                    return Err(Error::WeightOutOfRange(u, v));
                }
                if g.get(u, v) != g.get(v, u) {
                    return Err(Error::WeightNotSymmetric(u, v));
                }
            }
        }
        Ok(g)
    }

    /// Constant-weight single vertex: samples from it are binomial random
    /// graphs of density p.
    pub fn constant(p: BigRational) -> Result<Self> {
        WeightedGraph::new(1, vec![p])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> &BigRational {
        &self.w[u * self.k + v]
    }

    pub fn row_sum(&self, u: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for v in 0..self.k {
            acc += self.get(u, v);
        }
        acc
    }

    /// Largest pairwise difference among the entries: zero exactly on the
    /// constant diagonal, i.e. for the weight functions whose samples are
    /// quasirandom.
    pub fn diagonal_distance(&self) -> f64 {
        let mut max = BigRational::zero();
        for a in &self.w {
            for b in &self.w {
                let d = (a - b).abs();
                if d > max {
                    max = d;
                }
            }
        }
        rational_to_f64(&max)
    }

    pub fn to_json(&self) -> WeightedGraphJson {
        WeightedGraphJson {
            vertices: self.k,
            weights: (0..self.k)
                .map(|u| {
                    (0..self.k)
                        .map(|v| RationalJson::from_rational(self.get(u, v)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// JSON form: `{"vertices": k, "weights": [[{num, den, value}, ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedGraphJson {
    pub vertices: usize,
    pub weights: Vec<Vec<RationalJson>>,
}

impl WeightedGraphJson {
    pub fn to_weighted_graph(&self) -> Result<WeightedGraph> {
        let k = self.vertices;
        let mut entries = Vec::with_capacity(k * k);
        if self.weights.len() != k {
            return Err(Error::InvalidParameter("weight row count mismatch".into()));
        }
        for row in &self.weights {
            if row.len() != k {
                return Err(Error::InvalidParameter("weight column count mismatch".into()));
            }
            for cell in row {
                entries.push(cell.to_rational()?);
            }
        }
        WeightedGraph::new(k, entries)
    }
}

/// A two-vertex weight function written as the array (w00, w01, w11).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoVertexWeights {
    pub w00: BigRational,
    pub w01: BigRational,
    pub w11: BigRational,
}

impl TwoVertexWeights {
    pub fn new(w00: BigRational, w01: BigRational, w11: BigRational) -> Self {
        TwoVertexWeights { w00, w01, w11 }
    }

    /// (1, 0, 1): two internally complete, mutually disconnected communities.
    pub fn clique_pair() -> Self {
        TwoVertexWeights::new(BigRational::one(), BigRational::zero(), BigRational::one())
    }

    /// (x, 1, x): near-bipartite, fully cross-wired communities.
    pub fn near_bipartite(x: BigRational) -> Self {
        TwoVertexWeights::new(x.clone(), BigRational::one(), x)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(
                "expected three comma-separated weights w00,w01,w11".into(),
            ));
        }
        Ok(TwoVertexWeights::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ))
    }

    pub fn to_weighted_graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(
            2,
            vec![
                self.w00.clone(),
                self.w01.clone(),
                self.w01.clone(),
                self.w11.clone(),
            ],
        )
    }
}

/// Exact weighted density and its per-edge normalisation.
#[derive(Debug, Clone)]
pub struct WeightedDensity {
    pub t: BigRational,
    pub f: Option<f64>,
    pub pattern_n: usize,
    pub pattern_m: usize,
}

impl WeightedDensity {
    fn from_mass(mass: BigRational, n: usize, m: usize, k: usize) -> Self {
        let t = mass / BigRational::from_integer(BigInt::from(k).pow(n as u32));
        let f = crate::hom::density_exponent(&t, m);
        WeightedDensity {
            t,
            f,
            pattern_n: n,
            pattern_m: m,
        }
    }
}

/// Work cap for the enumeration route: k^n assignments.
const WEIGHTED_ENUM_WORK_CAP: u128 = 1 << 22;

/// t and f of a pattern in a weighted host. Uses variable elimination, which
/// is exact for every pattern of bounded elimination width; falls back to
/// plain assignment enumeration when elimination would be too wide.
pub fn weighted_density(pattern: &LabeledGraph, host: &WeightedGraph) -> Result<WeightedDensity> {
    let rat = RatHost { weights: host };
    match rat.base_table(pattern, &[], DEFAULT_WIDTH_CAP) {
        Ok(table) => {
            let mass = table.values.into_iter().next().expect("scalar table");
            Ok(WeightedDensity::from_mass(
                mass,
                pattern.n(),
                pattern.m(),
                host.k(),
            ))
        }
        Err(Error::EliminationTooWide { .. }) => weighted_density_enumeration(pattern, host),
        Err(e) => Err(e),
    }
}

/// The independent enumeration route: sums the weight product over all k^n
/// assignments. Oracle for the other engines.
pub fn weighted_density_enumeration(
    pattern: &LabeledGraph,
    host: &WeightedGraph,
) -> Result<WeightedDensity> {
    let k = host.k();
    let n = pattern.n();
    let work = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if work > WEIGHTED_ENUM_WORK_CAP {
        return Err(Error::PatternTooLarge {
            n,
            limit: 22,
            engine: "weighted enumeration",
        });
    }
    let mut assignment = vec![0usize; n];
    let mut mass = BigRational::zero();
    for idx in 0..work {
        let mut rem = idx;
        for a in assignment.iter_mut() {
            *a = (rem % k as u128) as usize;
            rem /= k as u128;
        }
        let mut term = BigRational::one();
        let mut zero = false;
        for &(u, v) in pattern.edges() {
            let w = host.get(assignment[u], assignment[v]);
            if w.is_zero() {
                zero = true;
                break;
            }
            term *= w;
        }
        if !zero {
            mass += term;
        }
    }
    Ok(WeightedDensity::from_mass(mass, n, pattern.m(), k))
}

/// t and f along a construction expression; the route for family members,
/// whose realised graphs are far beyond enumeration.
pub fn weighted_density_expr(
    expr: &ConstructionExpr,
    host: &WeightedGraph,
) -> Result<WeightedDensity> {
    let realized = expr.realize()?;
    let mass = expr_total(expr, &RatHost { weights: host })?;
    Ok(WeightedDensity::from_mass(
        mass,
        realized.n(),
        realized.m(),
        host.k(),
    ))
}

/// The two weight families with closed-form behaviour.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    /// (1, 0, 1): for connected F, t = 2 (1/2)^n exactly and
    /// f = 2^(-(n-1)/m).
    CliquePair,
    /// (x, 1, x): t(F) is a polynomial in x with lowest degree m - b, so
    /// f(F) scales like x^(1 - b/m) as x -> 0.
    NearBipartite { x: BigRational },
}

/// Closed-form density data for a connected pattern under one of the two
/// families.
#[derive(Debug, Clone)]
pub enum ClosedFormF {
    CliquePair {
        /// (n-1)/m; f = 2^(-exponent).
        exponent: BigRational,
        f: f64,
        /// 2 (1/2)^n, exact.
        t: BigRational,
    },
    NearBipartite {
        /// lowest degree of t as a polynomial in x: m - b.
        t_degree: usize,
        /// growth exponent of f in x: 1 - b/m.
        f_exponent: BigRational,
    },
}

pub fn closed_form_f(pattern: &LabeledGraph, family: &WeightFamily) -> Result<ClosedFormF> {
    if !pattern.is_connected() {
        return Err(Error::NotConnected);
    }
    let params = crate::params::graph_params(pattern)?;
    let (n, m, b) = (params.n, params.m, params.b);
    if m == 0 {
        return Err(Error::InvalidParameter(
            "closed forms need at least one edge".into(),
        ));
    }
    Ok(match family {
        WeightFamily::CliquePair => {
            let exponent = BigRational::new(BigInt::from(n as i64 - 1), BigInt::from(m));
            let f = (-rational_to_f64(&exponent) * std::f64::consts::LN_2).exp();
            let t = BigRational::new(BigInt::from(2), BigInt::from(2).pow(n as u32));
            ClosedFormF::CliquePair { exponent, f, t }
        }
        WeightFamily::NearBipartite { .. } => {
            let f_exponent =
                BigRational::one() - BigRational::new(BigInt::from(b), BigInt::from(m));
            ClosedFormF::NearBipartite {
                t_degree: m - b,
                f_exponent,
            }
        }
    })
}
