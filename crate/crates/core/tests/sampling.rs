//! Statistical agreement between sampled graphs and their source weights:
//! empirical densities of the construction graphs concentrate on the exact
//! weighted densities.

use quasiforce_core::construct::{build_member, ConstructionKind, TABLE_ORDER};
use quasiforce_core::crossing::{crossing_search, CrossingConfig, Subject};
use quasiforce_core::graph::{standard_graph, StandardKind};
use quasiforce_core::hom::density_expr;
use quasiforce_core::sampler::{sample_w_random, SampleConfig};
use quasiforce_core::value::{log_rational, rational_to_f64};
use quasiforce_core::weighted::weighted_density_expr;

/// For the witness weights of the {e, T'} pair (a genuinely non-constant
/// source), each construction graph's empirical density over several seeds
/// must match the exact weighted density within three estimated standard
/// errors plus a deterministic k(k-1)/n floor: densities over all maps
/// include the collapsing maps, whose share at finite n is of exactly that
/// order, so the sampled value sits that far above the limit value even
/// with zero sampling noise.
#[test]
fn member_densities_concentrate_on_the_exact_values() {
    let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
    let e = Subject::from_graph("e", standard_graph(StandardKind::Edge, 2).unwrap());
    let tp = Subject::from_member(&build_member(ConstructionKind::SeedPendant, &k3).unwrap());
    let witness = crossing_search(&e, &tp, &CrossingConfig::default()).unwrap();
    let source = witness.weights;

    let n = 400usize;
    let seeds = [11u64, 12, 13];
    let members: Vec<_> = TABLE_ORDER
        .iter()
        .map(|&k| build_member(k, &k3).unwrap())
        .collect();

    let samples: Vec<_> = seeds
        .iter()
        .map(|&seed| {
            sample_w_random(&SampleConfig {
                n,
                seed,
                source: source.clone(),
            })
            .unwrap()
            .graph
        })
        .collect();

    for member in &members {
        let exact_t = weighted_density_expr(&member.expr, &source).unwrap().t;
        let exact_log = log_rational(&exact_t);
        let logs: Vec<f64> = samples
            .iter()
            .map(|g| {
                let t = density_expr(&member.expr, g).unwrap().t;
                log_rational(&t)
            })
            .collect();
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        let var = logs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (logs.len() - 1) as f64;
        let se = (var / logs.len() as f64).sqrt();
        let k = member.graph.n() as f64;
        let tol = 3.0 * se + k * (k - 1.0) / n as f64 + 1e-9;
        let dev = (mean - exact_log).abs();
        println!(
            "{}: exact log t = {exact_log:.6}, sampled mean = {mean:.6}, dev = {dev:.6}, tol = {tol:.6} (se = {se:.6}, t = {:.3e})",
            member.name,
            rational_to_f64(&exact_t),
        );
        assert!(
            dev <= tol,
            "{}: empirical log t {mean} vs exact {exact_log}, tolerance {tol}",
            member.name
        );
    }
}
