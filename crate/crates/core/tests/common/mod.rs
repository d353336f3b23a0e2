//! Shared generators for the integration suites.

use quasiforce_core::construct::ConstructionExpr;
use quasiforce_core::graph::{build_graph, LabeledGraph};
use rand::rngs::StdRng;
use rand::Rng;

/// Binomial random graph, unlabelled.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> LabeledGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges, &[]).expect("random graph is valid")
}

/// Random connected non-bipartite graph on n vertices with vertex 0
/// labelled 0: retries binomial samples until the hypotheses hold.
pub fn random_seed(rng: &mut StdRng, n: usize) -> LabeledGraph {
    assert!(n >= 3);
    loop {
        let p = rng.random_range(0.3..0.9);
        let g = random_graph(rng, n, p);
        if g.is_connected() && !g.is_bipartite() {
            let edges = g.edges().to_vec();
            return build_graph(n, &edges, &[(0, 0)]).expect("valid");
        }
    }
}

/// Random base graph on up to `max_n` vertices carrying labels 0..=L for a
/// random L, plus possibly no labels at all beyond 0.
fn random_base(rng: &mut StdRng, max_n: usize) -> LabeledGraph {
    let n = rng.random_range(1..=max_n);
    let g = random_graph(rng, n, 0.5);
    let edges = g.edges().to_vec();
    let n_labels = rng.random_range(1..=n.min(3));
    let labels: Vec<(u32, usize)> = (0..n_labels).map(|i| (i as u32, i)).collect();
    build_graph(n, &edges, &labels).expect("valid")
}

/// Random construction expression whose realised graph has at most `max_n`
/// vertices; always applies at least one operator.
pub fn random_expr(rng: &mut StdRng, max_n: usize) -> ConstructionExpr {
    loop {
        let base = random_base(rng, 4);
        let mut expr = ConstructionExpr::base(base);
        let ops = rng.random_range(1..=3);
        let mut ok = true;
        for _ in 0..ops {
            let realized = match expr.realize() {
                Ok(g) => g,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let labels: Vec<u32> = realized.labels().keys().copied().collect();
            if rng.random_bool(0.5) && realized.label_vertex(0).is_some() {
                let k = rng.random_range(1..=2);
                expr = expr.pendant(k);
            } else if !labels.is_empty() {
                // double over a random nonempty subset of the labels
                let mut over = Vec::new();
                for &l in &labels {
                    if rng.random_bool(0.6) {
                        over.push(l);
                    }
                }
                if over.is_empty() {
                    over.push(labels[rng.random_range(0..labels.len())]);
                }
                expr = expr.double(over);
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        match expr.realize() {
            Ok(g) if g.n() <= max_n && g.n() >= 1 => return expr,
            _ => continue,
        }
    }
}
