//! The quasirandomness test battery: subset edge densities, adjacency
//! spectrum, and the edge/4-cycle count comparison.
//!
//! A sequence of graphs of density p is quasirandom exactly when (any of)
//! these hold asymptotically; at a fixed finite n the battery reports the
//! raw statistics and leaves thresholds to the caller.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Cap on the dense eigendecomposition.
pub const SPECTRUM_SIZE_LIMIT: usize = 2000;

/// Raw battery output. `p_hat` is the measured hom(e)/n^2; `p1_max_dev` is
/// the worst edge-count deviation of an induced subgraph from p * C(|U|, 2),
/// scaled by n^2, over the
/// sampled subsets; the lambda fields are the top eigenvalue and the largest
/// remaining absolute eigenvalue over n; `c4_gap` compares the exact 4-cycle
/// density against p_hat^4.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiReport {
    pub n: usize,
    pub p: f64,
    pub p_hat: f64,
    pub subset_trials: usize,
    pub subset_size: usize,
    pub p1_max_dev: f64,
    pub lambda1_over_n: f64,
    pub lambda2_abs_over_n: f64,
    pub t_c4: f64,
    pub c4_gap: f64,
    /// exact counts, decimal
    pub hom_e: String,
    pub hom_c4: String,
}

/// Runs the battery: P1 by sampling `subset_trials` uniform subsets of size
/// floor(n/2), P2 by full symmetric eigendecomposition, P4 by exact counts
/// of the edge and the 4-cycle.
pub fn quasirandom_battery(
    g: &LabeledGraph,
    p: f64,
    subset_trials: usize,
    seed: u64,
) -> Result<QuasiReport> {
    let n = g.n();
    if n < 4 {
        return Err(Error::InvalidParameter(
            "battery needs a host with at least 4 vertices".into(),
        ));
    }
    if n > SPECTRUM_SIZE_LIMIT {
        return Err(Error::HostTooLarge {
            n,
            limit: SPECTRUM_SIZE_LIMIT,
            engine: "spectrum",
        });
    }
    let adj = g.adjacency();

    // exact hom counts of the edge and the 4-cycle: hom(e) = sum of degrees,
    // hom(C4) = sum over ordered pairs of squared codegrees
    let hom_e: u128 = (0..n).map(|u| adj.degree(u) as u128).sum();
    let mut hom_c4: u128 = 0;
    for u in 0..n {
        for v in 0..n {
            let common = adj.degree_into(u, adj.row(v)) as u128;
            hom_c4 += common * common;
        }
    }
    let nf = n as f64;
    let p_hat = hom_e as f64 / (nf * nf);
    let t_c4 = hom_c4 as f64 / (nf * nf * nf * nf);
    let c4_gap = (t_c4 - p_hat.powi(4)).abs();

    // P1: sampled subsets of size floor(n/2)
    let subset_size = n / 2;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut vertices: Vec<usize> = (0..n).collect();
    let words = adj.words();
    let mut p1_max_dev: f64 = 0.0;
    let expected = p * (subset_size * (subset_size - 1)) as f64 / 2.0;
    for _ in 0..subset_trials {
        let (subset, _) = vertices.partial_shuffle(&mut rng, subset_size);
        let mut mask = vec![0u64; words];
        for &v in subset.iter() {
            mask[v / 64] |= 1 << (v % 64);
        }
        let inside: usize = subset.iter().map(|&v| adj.degree_into(v, &mask)).sum();
        let dev = (inside as f64 / 2.0 - expected).abs() / (nf * nf);
        p1_max_dev = p1_max_dev.max(dev);
    }

    // P2: full symmetric spectrum
    let mut mat = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        mat[(u, v)] = 1.0;
        mat[(v, u)] = 1.0;
    }
    let eigen = SymmetricEigen::new(mat);
    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailed);
    }
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let lambda1 = eigenvalues[0];
    let lambda2_abs = eigenvalues[1].abs().max(eigenvalues[n - 1].abs());

    Ok(QuasiReport {
        n,
        p,
        p_hat,
        subset_trials,
        subset_size,
        p1_max_dev,
        lambda1_over_n: lambda1 / nf,
        lambda2_abs_over_n: lambda2_abs / nf,
        t_c4,
        c4_gap,
        hom_e: BigInt::from(hom_e).to_string(),
        hom_c4: BigInt::from(hom_c4).to_string(),
    })
}
