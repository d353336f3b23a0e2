//! Exact structural parameters: vertex/edge counts, max-cut, and the derived
//! ratios g1 = (n-1)/m and g2 = b/m as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Largest biconnected block we will enumerate bipartitions for. Max-cut is
/// additive over blocks, so this bounds the per-block work at 2^(limit-1).
pub const MAX_CUT_BLOCK_LIMIT: usize = 26;

/// Exact parameters of a graph. `g1` and `g2` are absent when `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphParams {
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub g1: Option<BigRational>,
    pub g2: Option<BigRational>,
    pub connected: bool,
    pub bipartite: bool,
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Computes (n, m, b, g1, g2, connected, bipartite). The max-cut is exact; it
/// errors only when some biconnected block exceeds the enumeration limit.
pub fn graph_params(g: &LabeledGraph) -> Result<GraphParams> {
    let n = g.n();
    let m = g.m();
    let b = max_cut(g)?;
    let g1 = (m > 0).then(|| ratio(n as i64 - 1, m as i64));
    let g2 = (m > 0).then(|| ratio(b as i64, m as i64));
    Ok(GraphParams {
        n,
        m,
        b,
        g1,
        g2,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
    })
}

/// Exact max-cut. The cut decomposes over biconnected blocks (blocks overlap
/// in at most one vertex and either side of a cut may be flipped), so each
/// block is solved by exhaustive bipartition enumeration on its own.
pub fn max_cut(g: &LabeledGraph) -> Result<usize> {
    let mut total = 0usize;
    for block in biconnected_blocks(g) {
        total += block_max_cut(&block)?;
    }
    Ok(total)
}

/// Whole-graph enumeration over 2^(n-1) bipartitions; the independent oracle
/// for `max_cut`. Practical only for small n.
pub fn max_cut_exhaustive(g: &LabeledGraph) -> Result<usize> {
    let n = g.n();
    if n > MAX_CUT_BLOCK_LIMIT {
        return Err(Error::MaxCutTooLarge {
            block: n,
            limit: MAX_CUT_BLOCK_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(best_cut(&adj))
}

/// Max cut of a single edge list, by enumeration with one vertex pinned.
fn block_max_cut(edges: &[(usize, usize)]) -> Result<usize> {
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let k = vertices.len();
    if k > MAX_CUT_BLOCK_LIMIT {
        return Err(Error::MaxCutTooLarge {
            block: k,
            limit: MAX_CUT_BLOCK_LIMIT,
        });
    }
    let index = |v: usize| vertices.binary_search(&v).unwrap();
    let mut adj = vec![0u32; k];
    for &(u, v) in edges {
        let (a, b) = (index(u), index(v));
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok(best_cut(&adj))
}

fn best_cut(adj: &[u32]) -> usize {
    let k = adj.len();
    if k <= 1 {
        return 0;
    }
    let mut best = 0;
    // Vertex k-1 stays on side 0; sides are symmetric.
    for mask in 0u32..1 << (k - 1) {
        let mut cut = 0usize;
        for v in 0..k {
            if mask >> v & 1 == 1 {
                cut += (adj[v] & !mask).count_ones() as usize;
            }
        }
        best = best.max(cut);
    }
    best
}

/// Biconnected components as edge lists (Hopcroft–Tarjan, iterative).
/// Bridges come out as single-edge blocks; isolated vertices produce none.
pub fn biconnected_blocks(g: &LabeledGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        // frame: (vertex, parent, next child index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // everything above and including (u, v) is one block
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, standard_graph, StandardKind};

    #[test]
    fn triangle_params() {
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let p = graph_params(&k3).unwrap();
        assert_eq!((p.n, p.m, p.b), (3, 3, 2));
        assert_eq!(p.g1, Some(ratio(2, 3)));
        assert_eq!(p.g2, Some(ratio(2, 3)));
        assert!(p.connected && !p.bipartite);
    }

    #[test]
    fn cycle_params() {
        let c6 = standard_graph(StandardKind::Cycle, 6).unwrap();
        let p = graph_params(&c6).unwrap();
        assert_eq!((p.n, p.m, p.b), (6, 6, 6));
        assert!(p.bipartite);
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        assert_eq!(max_cut(&c5).unwrap(), 4);
    }

    #[test]
    fn edgeless_params_have_no_ratios() {
        let g = build_graph(3, &[], &[]).unwrap();
        let p = graph_params(&g).unwrap();
        assert_eq!((p.n, p.m, p.b), (3, 0, 0));
        assert!(p.g1.is_none() && p.g2.is_none());
        assert!(p.bipartite && !p.connected);
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        // bowtie: triangles {0,1,2} and {2,3,4}
        let g = build_graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)], &[]).unwrap();
        let blocks = biconnected_blocks(&g);
        assert_eq!(blocks.len(), 2);
        assert_eq!(max_cut(&g).unwrap(), 4);
        assert_eq!(max_cut_exhaustive(&g).unwrap(), 4);
    }

    #[test]
    fn block_decomposition_matches_exhaustive_on_randoms() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(20_250_101);
        for _ in 0..300 {
            let n = rng.random_range(1..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges, &[]).unwrap();
            assert_eq!(
                max_cut(&g).unwrap(),
                max_cut_exhaustive(&g).unwrap(),
                "mismatch on {g}"
            );
        }
    }

    #[test]
    fn connected_nonbipartite_has_at_least_as_many_edges_as_vertices() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(77);
        let mut seen = 0;
        while seen < 60 {
            let n = rng.random_range(3..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = build_graph(n, &edges, &[]).unwrap();
            let p = graph_params(&g).unwrap();
            if p.connected && !p.bipartite {
                assert!(p.n <= p.m, "{g}");
                seen += 1;
            }
        }
    }

    #[test]
    fn bipartite_iff_cut_is_m() {
        let c6 = standard_graph(StandardKind::Cycle, 6).unwrap();
        assert_eq!(max_cut(&c6).unwrap(), c6.m());
        let c7 = standard_graph(StandardKind::Cycle, 7).unwrap();
        assert!(max_cut(&c7).unwrap() < c7.m());
    }
}
