//! Brute-force homomorphism counting: the oracle engine. Enumerates vertex
//! maps with incremental edge checks; exact and independent of the other
//! engines, but limited to small patterns.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{AdjMatrix, LabeledGraph};

pub const ENUMERATION_PATTERN_LIMIT: usize = 8;
const ENUMERATION_HOST_LIMIT: usize = 1000;

/// Order pattern vertices so each one (after the first of its component) has
/// an already-placed neighbour; this lets the search prune early.
fn search_order(pattern: &LabeledGraph) -> Vec<usize> {
    let n = pattern.n();
    let adj = pattern.adjacency_lists();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for start in 0..n {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        order.push(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn check_limits(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<()> {
    if host.n() == 0 {
        return Err(Error::EmptyHost);
    }
    if pattern.n() > ENUMERATION_PATTERN_LIMIT {
        return Err(Error::PatternTooLarge {
            n: pattern.n(),
            limit: ENUMERATION_PATTERN_LIMIT,
            engine: "enumeration",
        });
    }
    if host.n() > ENUMERATION_HOST_LIMIT {
        return Err(Error::HostTooLarge {
            n: host.n(),
            limit: ENUMERATION_HOST_LIMIT,
            engine: "enumeration",
        });
    }
    Ok(())
}

/// Counts all homomorphisms pattern -> host (labels on the pattern are
/// ignored; every edge-preserving vertex map is counted).
pub fn hom_count_enumeration(pattern: &LabeledGraph, host: &LabeledGraph) -> Result<BigInt> {
    check_limits(pattern, host)?;
    let order = search_order(pattern);
    let counts = count_extensions(pattern, &order, 0, &[], host)?;
    Ok(BigInt::from(counts[0]))
}

/// Extension counts with the first `fixed.len()` vertices of `order` pinned;
/// one count per assignment is produced by the caller loop. Exposed for the
/// rooted-profile oracle used in tests.
pub fn rooted_counts_enumeration(
    pattern: &LabeledGraph,
    roots: &[usize],
    host: &LabeledGraph,
) -> Result<Vec<u128>> {
    check_limits(pattern, host)?;
    // roots first (in the given order), remaining vertices in a pruning order
    let mut order: Vec<usize> = roots.to_vec();
    for v in search_order(pattern) {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    let h = host.n();
    let total = h.pow(roots.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut assignment = vec![0usize; roots.len()];
    for idx in 0..total {
        let mut rem = idx;
        // row-major: the last root varies fastest
        for i in (0..roots.len()).rev() {
            assignment[i] = rem % h;
            rem /= h;
        }
        let counts = count_extensions(pattern, &order, roots.len(), &assignment, host)?;
        out.push(counts[0]);
    }
    Ok(out)
}

fn count_extensions(
    pattern: &LabeledGraph,
    order: &[usize],
    n_fixed: usize,
    fixed: &[usize],
    host: &LabeledGraph,
) -> Result<Vec<u128>> {
    let pn = pattern.n();
    let h = host.n();
    // overflow guard: the count is bounded by h^(free vertices)
    let bits = (usize::BITS - h.leading_zeros()) as usize;
    if bits * pn >= 127 {
        return Err(Error::HostTooLarge {
            n: h,
            limit: ENUMERATION_HOST_LIMIT,
            engine: "enumeration",
        });
    }
    let host_adj = AdjMatrix::from_graph(host);
    let pat_adj = pattern.adjacency();
    // for each position, the earlier positions it must respect edges with
    let mut constraints: Vec<Vec<usize>> = vec![Vec::new(); pn];
    for i in 0..pn {
        for j in 0..i {
            if pat_adj.get(order[i], order[j]) {
                constraints[i].push(j);
            }
        }
    }
    let mut image = vec![0usize; pn];
    for (i, &v) in fixed.iter().enumerate() {
        if v >= h {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: h,
            });
        }
        image[i] = v;
    }
    // fixed prefix must satisfy its own constraints
    for i in 0..n_fixed {
        for &j in &constraints[i] {
            if !host_adj.get(image[i], image[j]) {
                return Ok(vec![0]);
            }
        }
    }
    let mut count: u128 = 0;
    dfs(
        n_fixed,
        pn,
        h,
        &constraints,
        &host_adj,
        &mut image,
        &mut count,
    );
    Ok(vec![count])
}

fn dfs(
    depth: usize,
    pn: usize,
    h: usize,
    constraints: &[Vec<usize>],
    host_adj: &AdjMatrix,
    image: &mut [usize],
    count: &mut u128,
) {
    if depth == pn {
        *count += 1;
        return;
    }
    'candidates: for cand in 0..h {
        for &j in &constraints[depth] {
            if !host_adj.get(cand, image[j]) {
                continue 'candidates;
            }
        }
        image[depth] = cand;
        dfs(depth + 1, pn, h, constraints, host_adj, image, count);
    }
}
