//! Sum-product variable elimination over the pattern graph: the generic
//! exact engine. One 0/1 (or rational) factor per pattern edge; unkept
//! pattern vertices are summed out along a greedy min-scope order. Exact for
//! any pattern whose elimination width stays within the cap, which makes it
//! the cross-check engine for construction graphs far beyond the reach of
//! plain enumeration.

use crate::error::{Error, Result};
use crate::hom::host::Host;
use crate::value::CountValue;
use num_traits::{One, Zero};

/// Width cap: a merge may touch at most this many pattern vertices at once.
pub const DEFAULT_WIDTH_CAP: usize = 7;
/// Cap on intermediate table entries (per factor): bounds memory.
const TABLE_ENTRY_CAP: usize = 1 << 24;
/// Cap on per-merge iteration count: bounds time.
const WORK_CAP: u128 = 1 << 32;

/// A factor over a sorted scope of pattern vertices. `values` is indexed in
/// mixed radix: `sum_i assignment[scope[i]] * h^i`.
#[derive(Debug, Clone)]
pub struct FactorTable<V> {
    pub scope: Vec<usize>,
    pub host_size: usize,
    pub values: Vec<V>,
}

impl<V: CountValue> FactorTable<V> {
    pub fn value_at(&self, assignment: &[usize]) -> &V {
        debug_assert_eq!(assignment.len(), self.scope.len());
        let mut idx = 0usize;
        for &a in assignment.iter().rev() {
            idx = idx * self.host_size + a;
        }
        &self.values[idx]
    }
}

fn table_len(h: usize, scope_len: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..scope_len {
        len = len
            .checked_mul(h)
            .filter(|&l| l <= TABLE_ENTRY_CAP)
            .ok_or(Error::EliminationTooWide {
                width: scope_len,
                limit: DEFAULT_WIDTH_CAP,
            })?;
    }
    Ok(len)
}

/// Sums out every pattern vertex not in `keep`, returning a factor over the
/// kept vertices (sorted). With `keep` empty the single value is the total
/// homomorphism mass of the pattern in the host.
pub fn eliminate<H: Host>(
    pattern_n: usize,
    edges: &[(usize, usize)],
    keep: &[usize],
    host: &H,
    width_cap: usize,
) -> Result<FactorTable<H::V>> {
    let h = host.size();
    if h == 0 {
        return Err(Error::EmptyHost);
    }
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    let kept = |v: usize| keep_sorted.binary_search(&v).is_ok();

    // one factor per pattern edge
    let mut factors: Vec<FactorTable<H::V>> = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let (a, b) = (u.min(v), u.max(v));
        let mut values = Vec::with_capacity(h * h);
        for y in 0..h {
            for x in 0..h {
                values.push(host.weight(x, y));
            }
        }
        factors.push(FactorTable {
            scope: vec![a, b],
            host_size: h,
            values,
        });
    }

    let mut scalar = H::V::one();
    let mut remaining: Vec<usize> = (0..pattern_n).filter(|&v| !kept(v)).collect();

    while !remaining.is_empty() {
        // pick the vertex whose merge scope is smallest (ties: lowest id)
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                let mut scope: Vec<usize> = vec![v];
                for f in &factors {
                    if f.scope.contains(&v) {
                        scope.extend(f.scope.iter().copied());
                    }
                }
                scope.sort_unstable();
                scope.dedup();
                (pos, scope.len())
            })
            .min_by_key(|&(pos, len)| (len, remaining[pos]))
            .expect("nonempty remaining");
        let v = remaining.swap_remove(pos);

        let (touching, rest): (Vec<FactorTable<H::V>>, Vec<FactorTable<H::V>>) =
            factors.into_iter().partition(|f| f.scope.contains(&v));
        factors = rest;
        if touching.is_empty() {
            // free vertex: contributes a factor of the host size
            scalar = scalar.mul_ref(&H::V::from_usize(h));
            continue;
        }
        let mut union: Vec<usize> = touching.iter().flat_map(|f| f.scope.clone()).collect();
        union.sort_unstable();
        union.dedup();
        if union.len() > width_cap {
            return Err(Error::EliminationTooWide {
                width: union.len(),
                limit: width_cap,
            });
        }
        let new_scope: Vec<usize> = union.iter().copied().filter(|&u| u != v).collect();
        let len = table_len(h, new_scope.len())?;
        if (len as u128) * h as u128 > WORK_CAP {
            return Err(Error::EliminationTooWide {
                width: union.len(),
                limit: width_cap,
            });
        }

        // positions of each factor's scope variables within (new_scope, v)
        let digit_pos = |u: usize| -> usize {
            new_scope
                .iter()
                .position(|&s| s == u)
                .unwrap_or(new_scope.len()) // v itself goes last
        };
        let factor_positions: Vec<Vec<usize>> = touching
            .iter()
            .map(|f| f.scope.iter().map(|&u| digit_pos(u)).collect())
            .collect();

        let mut digits = vec![0usize; new_scope.len() + 1];
        let mut values: Vec<H::V> = Vec::with_capacity(len);
        for idx in 0..len {
            let mut rem = idx;
            for d in digits.iter_mut().take(new_scope.len()) {
                *d = rem % h;
                rem /= h;
            }
            let mut acc = H::V::zero();
            for xv in 0..h {
                digits[new_scope.len()] = xv;
                let mut term = H::V::one();
                let mut zero = false;
                for (f, positions) in touching.iter().zip(&factor_positions) {
                    let mut fidx = 0usize;
                    for &p in positions.iter().rev() {
                        fidx = fidx * h + digits[p];
                    }
                    let val = &f.values[fidx];
                    if val.is_zero() {
                        zero = true;
                        break;
                    }
                    term = term.mul_ref(val);
                }
                if !zero {
                    acc.add_ref(&term);
                }
            }
            values.push(acc);
        }
        factors.push(FactorTable {
            scope: new_scope,
            host_size: h,
            values,
        });
    }

    // combine what is left into a single factor over the kept vertices
    let len = table_len(h, keep_sorted.len())?;
    let factor_positions: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            f.scope
                .iter()
                .map(|&u| {
                    keep_sorted
                        .iter()
                        .position(|&s| s == u)
                        .expect("remaining factor scopes lie inside keep")
                })
                .collect()
        })
        .collect();
    let mut digits = vec![0usize; keep_sorted.len()];
    let mut values: Vec<H::V> = Vec::with_capacity(len);
    for idx in 0..len {
        let mut rem = idx;
        for d in digits.iter_mut() {
            *d = rem % h;
            rem /= h;
        }
        let mut term = scalar.clone();
        for (f, positions) in factors.iter().zip(&factor_positions) {
            let mut fidx = 0usize;
            for &p in positions.iter().rev() {
                fidx = fidx * h + digits[p];
            }
            term = term.mul_ref(&f.values[fidx]);
        }
        values.push(term);
    }
    Ok(FactorTable {
        scope: keep_sorted,
        host_size: h,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, StandardKind};
    use crate::hom::host::IntHost;
    use num_bigint::BigInt;

    #[test]
    fn matches_enumeration_on_c4_into_k3() {
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let adj = k3.adjacency();
        let host = IntHost { adj: &adj };
        let f = eliminate(c4.n(), c4.edges(), &[], &host, DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(f.values, vec![BigInt::from(18)]);
    }

    #[test]
    fn rooted_table_is_the_degree_for_an_edge() {
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let adj = c5.adjacency();
        let host = IntHost { adj: &adj };
        let f = eliminate(e.n(), e.edges(), &[0], &host, DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(f.values, vec![BigInt::from(2); 5]);
    }

    #[test]
    fn free_vertices_multiply_host_size() {
        let ebar = standard_graph(StandardKind::IsolatedPair, 2).unwrap();
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let adj = k3.adjacency();
        let host = IntHost { adj: &adj };
        let f = eliminate(ebar.n(), ebar.edges(), &[], &host, DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(f.values, vec![BigInt::from(9)]);
    }
}
