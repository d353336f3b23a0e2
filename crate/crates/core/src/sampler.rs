//! Seeded sampling of random graphs from a weighted graph with loops.
//!
//! Each vertex of the sample is assigned a community uniformly at random,
//! then every unordered pair (u, v) with u < v gets an edge independently
//! with probability w(community(u), community(v)).
//!
//! Determinism: a single ChaCha12 stream seeded with `seed` draws first the
//! n community assignments (one `random_range(0..k)` each, in vertex order)
//! and then one `random::<f64>()` per pair in row-major order
//! (0,1), (0,2), ..., (0,n-1), (1,2), ...; identical configs therefore
//! reproduce identical edge sets bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, LabeledGraph};
use crate::value::{parse_rational, rational_to_f64};
use crate::weighted::WeightedGraph;

/// What to sample: host size, RNG seed and the source weights.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub n: usize,
    pub seed: u64,
    pub source: WeightedGraph,
}

/// A sampled graph together with the community assignment that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SampledGraph {
    pub graph: LabeledGraph,
    pub assignment: Vec<usize>,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledGraphJson {
    pub graph: LabeledGraph,
    pub assignment: Vec<usize>,
    pub n: usize,
    pub seed: u64,
}

/// Draws one sample. Same config, same graph.
pub fn sample_w_random(cfg: &SampleConfig) -> Result<SampledGraph> {
    if cfg.n == 0 {
        return Err(Error::InvalidParameter("sample size must be >= 1".into()));
    }
    let k = cfg.source.k();
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let assignment: Vec<usize> = (0..cfg.n).map(|_| rng.random_range(0..k)).collect();
    // probability table once, in f64
    let mut prob = vec![0.0f64; k * k];
    for a in 0..k {
        for b in 0..k {
            prob[a * k + b] = rational_to_f64(cfg.source.get(a, b));
        }
    }
    let mut edges = Vec::new();
    for u in 0..cfg.n {
        for v in u + 1..cfg.n {
            let p = prob[assignment[u] * k + assignment[v]];
            let r: f64 = rng.random();
            if r < p {
                edges.push((u, v));
            }
        }
    }
    let graph = build_graph(cfg.n, &edges, &[])?;
    Ok(SampledGraph {
        graph,
        assignment,
        n: cfg.n,
        seed: cfg.seed,
    })
}

/// Binomial random graph G(n, p) as a one-community special case.
pub fn sample_gnp(n: usize, p: &str, seed: u64) -> Result<SampledGraph> {
    let p = parse_rational(p)?;
    let source = WeightedGraph::constant(p)?;
    sample_w_random(&SampleConfig { n, seed, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighted::TwoVertexWeights;
    use num_rational::BigRational;

    #[test]
    fn same_config_same_graph() {
        let source = TwoVertexWeights::clique_pair().to_weighted_graph().unwrap();
        let cfg = SampleConfig {
            n: 60,
            seed: 7,
            source,
        };
        let a = sample_w_random(&cfg).unwrap();
        let b = sample_w_random(&cfg).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.assignment, b.assignment);
        let cfg2 = SampleConfig { seed: 8, ..cfg };
        let c = sample_w_random(&cfg2).unwrap();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn clique_pair_samples_are_two_cliques() {
        let source = TwoVertexWeights::clique_pair().to_weighted_graph().unwrap();
        let cfg = SampleConfig {
            n: 120,
            seed: 42,
            source,
        };
        let s = sample_w_random(&cfg).unwrap();
        for u in 0..cfg.n {
            for v in u + 1..cfg.n {
                let same = s.assignment[u] == s.assignment[v];
                assert_eq!(s.graph.has_edge(u, v), same);
            }
        }
        // edge density near 1/2: both communities hold about half the vertices
        let t_e = 2.0 * s.graph.m() as f64 / (cfg.n * cfg.n) as f64;
        assert!((t_e - 0.5).abs() < 0.08, "t(e) = {t_e}");
    }

    #[test]
    fn gnp_density_within_three_sigma() {
        let n = 400usize;
        let s = sample_gnp(n, "1/2", 3).unwrap();
        let pairs = (n * (n - 1) / 2) as f64;
        let sigma = (0.25 * pairs).sqrt();
        let dev = (s.graph.m() as f64 - 0.5 * pairs).abs();
        assert!(dev < 3.0 * sigma, "deviation {dev} vs sigma {sigma}");
    }

    #[test]
    fn invalid_config_is_rejected() {
        let source = WeightedGraph::constant(BigRational::new(1.into(), 2.into())).unwrap();
        assert!(sample_w_random(&SampleConfig {
            n: 0,
            seed: 0,
            source
        })
        .is_err());
    }
}
