//! Rooted-profile composition along construction expressions.
//!
//! A profile maps each placement of the rooted labels into the host to the
//! exact extension mass. The operators compose profiles without ever touching
//! the realised graph: a pendant step multiplies by row-sum powers (degree
//! powers on 0/1 hosts), a doubling step squares the profile and sums out the
//! identified labels. Edges lying inside the identified label set appear once
//! in the doubled graph but twice in the square, so their weight is divided
//! back out (on 0/1 hosts that weight is 1 whenever the term is nonzero).
//!
//! Counting a member of one of the construction families in an n-vertex host
//! costs O(n^3) arithmetic operations this way, against the hopeless
//! n^|V(member)| of direct enumeration.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::construct::ConstructionExpr;
use crate::error::{Error, Result};
use crate::graph::{Label, LabeledGraph};
use crate::hom::elimination::{FactorTable, DEFAULT_WIDTH_CAP};
use crate::hom::host::Host;
use crate::value::CountValue;
use num_traits::{One, Zero};

/// Minimum table length before the assignment loops are parallelised.
const PAR_THRESHOLD: usize = 1 << 12;

/// Exact extension mass per assignment of the rooted labels. `labels` is
/// sorted ascending; `values` is mixed-radix indexed by the assignment,
/// first label least significant.
#[derive(Debug, Clone)]
pub struct ProfileTable<V> {
    pub labels: Vec<Label>,
    pub host_size: usize,
    pub values: Vec<V>,
}

impl<V: CountValue> ProfileTable<V> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Total mass: the profile summed over all assignments.
    pub fn total(&self) -> V {
        let mut acc = V::zero();
        for v in &self.values {
            acc.add_ref(v);
        }
        acc
    }

    pub fn value_at(&self, assignment: &[usize]) -> &V {
        debug_assert_eq!(assignment.len(), self.labels.len());
        let mut idx = 0usize;
        for &a in assignment.iter().rev() {
            idx = idx * self.host_size + a;
        }
        &self.values[idx]
    }
}

/// Total homomorphism mass of the expression in the host.
pub fn expr_total<H: Host>(expr: &ConstructionExpr, host: &H) -> Result<H::V> {
    let profile = expr_profile(expr, &BTreeSet::new(), host)?;
    Ok(profile.values.into_iter().next().expect("scalar profile"))
}

/// Profile of the expression rooted at `roots` (which must survive to the
/// expression's outermost level).
pub fn expr_profile<H: Host>(
    expr: &ConstructionExpr,
    roots: &BTreeSet<Label>,
    host: &H,
) -> Result<ProfileTable<H::V>> {
    if host.size() == 0 {
        return Err(Error::EmptyHost);
    }
    match expr {
        ConstructionExpr::Base(g) => base_profile(g, roots, host),
        ConstructionExpr::Pendant { inner, k } => pendant_profile(inner, *k, roots, host),
        ConstructionExpr::Double { inner, over } => double_profile(inner, over, roots, host),
    }
}

fn base_profile<H: Host>(
    g: &LabeledGraph,
    roots: &BTreeSet<Label>,
    host: &H,
) -> Result<ProfileTable<H::V>> {
    let labels: Vec<Label> = roots.iter().copied().collect();
    let mut keep = Vec::with_capacity(labels.len());
    for &l in &labels {
        keep.push(g.label_vertex(l).ok_or(Error::MissingLabel(l))?);
    }
    let table = host.base_table(g, &keep, DEFAULT_WIDTH_CAP)?;
    Ok(reorder_to_labels(table, &keep, labels))
}

/// The elimination engine returns factors over sorted vertex ids; profiles
/// are indexed by sorted labels, whose vertices may come in another order.
fn reorder_to_labels<V: CountValue>(
    table: FactorTable<V>,
    keep_in_label_order: &[usize],
    labels: Vec<Label>,
) -> ProfileTable<V> {
    let h = table.host_size;
    if table.scope == keep_in_label_order {
        return ProfileTable {
            labels,
            host_size: h,
            values: table.values,
        };
    }
    let positions: Vec<usize> = keep_in_label_order
        .iter()
        .map(|v| {
            table
                .scope
                .iter()
                .position(|s| s == v)
                .expect("kept vertex present in scope")
        })
        .collect();
    let strides: Vec<usize> = positions
        .iter()
        .map(|&p| h.checked_pow(p as u32).expect("table fits"))
        .collect();
    let len = table.values.len();
    let mut digits = vec![0usize; labels.len()];
    let mut values = Vec::with_capacity(len);
    for idx in 0..len {
        let mut rem = idx;
        for d in digits.iter_mut() {
            *d = rem % h;
            rem /= h;
        }
        let src: usize = digits.iter().zip(&strides).map(|(d, s)| d * s).sum();
        values.push(table.values[src].clone());
    }
    ProfileTable {
        labels,
        host_size: h,
        values,
    }
}

fn pendant_profile<H: Host>(
    inner: &ConstructionExpr,
    k: usize,
    roots: &BTreeSet<Label>,
    host: &H,
) -> Result<ProfileTable<H::V>> {
    let pendant_labels: BTreeSet<Label> = (1..=k as Label).collect();
    let new_roots: Vec<Label> = roots.intersection(&pendant_labels).copied().collect();
    let old_roots: BTreeSet<Label> = roots.difference(&pendant_labels).copied().collect();
    let mut inner_roots = old_roots.clone();
    inner_roots.insert(0);
    let inner_table = expr_profile(inner, &inner_roots, host)?;

    let h = host.size();
    let labels: Vec<Label> = roots.iter().copied().collect();
    let root_is_pinned = roots.contains(&0);
    let zero_pos_in_inner = inner_table
        .labels
        .iter()
        .position(|&l| l == 0)
        .expect("inner profile keeps label 0");
    let zero_stride = h.pow(zero_pos_in_inner as u32);

    // digit sources for the inner index: each inner label other than 0 is
    // also a result label; label 0 is either a result label or the summed u
    let inner_strides: Vec<(usize, usize)> = inner_table
        .labels
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l != 0)
        .map(|(pos, &l)| {
            let result_pos = labels.binary_search(&l).expect("inner root is a result root");
            (result_pos, h.pow(pos as u32))
        })
        .collect();
    let new_root_positions: Vec<usize> = new_roots
        .iter()
        .map(|l| labels.binary_search(l).expect("pendant root is a result root"))
        .collect();

    let spare = k - new_roots.len();
    let row_pow: Vec<H::V> = (0..h)
        .map(|u| {
            if spare == 0 {
                H::V::one()
            } else {
                host.row_sum(u).pow_usize(spare)
            }
        })
        .collect();

    let len = h.pow(labels.len() as u32);
    let compute = |idx: usize| -> H::V {
        let mut digits = vec![0usize; labels.len()];
        let mut rem = idx;
        for d in digits.iter_mut() {
            *d = rem % h;
            rem /= h;
        }
        let base_idx: usize = inner_strides
            .iter()
            .map(|&(rp, stride)| digits[rp] * stride)
            .sum();
        let mut acc = H::V::zero();
        let us: Box<dyn Iterator<Item = usize>> = if root_is_pinned {
            let zero_result_pos = labels.binary_search(&0).expect("label 0 in result");
            Box::new(std::iter::once(digits[zero_result_pos]))
        } else {
            Box::new(0..h)
        };
        'us: for u in us {
            let val = &inner_table.values[base_idx + u * zero_stride];
            if val.is_zero() {
                continue;
            }
            // multiply only by non-unit factors; plain adds stay allocation-free
            let mut term: Option<H::V> = None;
            for &pos in &new_root_positions {
                let a = digits[pos];
                if host.weight_is_zero(u, a) {
                    continue 'us;
                }
                if !host.weight_is_one(u, a) {
                    let w = host.weight(u, a);
                    term = Some(match term {
                        None => val.mul_ref(&w),
                        Some(t) => t.mul_ref(&w),
                    });
                }
            }
            if spare > 0 {
                term = Some(match term {
                    None => val.mul_ref(&row_pow[u]),
                    Some(t) => t.mul_ref(&row_pow[u]),
                });
            }
            match term {
                None => acc.add_ref(val),
                Some(t) => acc.add_ref(&t),
            }
        }
        acc
    };
    let values: Vec<H::V> = if len >= PAR_THRESHOLD {
        (0..len).into_par_iter().map(compute).collect()
    } else {
        (0..len).map(compute).collect()
    };
    Ok(ProfileTable {
        labels,
        host_size: h,
        values,
    })
}

fn double_profile<H: Host>(
    inner: &ConstructionExpr,
    over: &BTreeSet<Label>,
    roots: &BTreeSet<Label>,
    host: &H,
) -> Result<ProfileTable<H::V>> {
    if !roots.is_subset(over) {
        return Err(Error::LabelsNotRetained {
            requested: roots.iter().copied().collect(),
            kept: over.iter().copied().collect(),
        });
    }
    let inner_table = expr_profile(inner, over, host)?;
    let h = host.size();
    let over_labels: Vec<Label> = over.iter().copied().collect();

    // edges of the inner graph running between identified labels appear only
    // once after doubling; divide their weight back out of the square
    let inner_graph = inner.realize()?;
    let mut internal_edges: Vec<(usize, usize)> = Vec::new();
    for (i, &la) in over_labels.iter().enumerate() {
        for (j, &lb) in over_labels.iter().enumerate().skip(i + 1) {
            let va = inner_graph.label_vertex(la).expect("validated");
            let vb = inner_graph.label_vertex(lb).expect("validated");
            if inner_graph.has_edge(va, vb) {
                internal_edges.push((i, j));
            }
        }
    }

    let labels: Vec<Label> = roots.iter().copied().collect();
    let root_positions: Vec<usize> = over_labels
        .iter()
        .enumerate()
        .filter(|&(_, l)| roots.contains(l))
        .map(|(pos, _)| pos)
        .collect();
    let free_positions: Vec<usize> = over_labels
        .iter()
        .enumerate()
        .filter(|&(_, l)| !roots.contains(l))
        .map(|(pos, _)| pos)
        .collect();
    let over_strides: Vec<usize> = (0..over_labels.len()).map(|p| h.pow(p as u32)).collect();

    let len = h.pow(labels.len() as u32);
    let free_len = h.pow(free_positions.len() as u32);
    let compute = |idx: usize| -> H::V {
        let mut over_digits = vec![0usize; over_labels.len()];
        let mut rem = idx;
        for &pos in &root_positions {
            over_digits[pos] = rem % h;
            rem /= h;
        }
        let mut acc = H::V::zero();
        for free_idx in 0..free_len {
            let mut rem = free_idx;
            for &pos in &free_positions {
                over_digits[pos] = rem % h;
                rem /= h;
            }
            let full_idx: usize = over_digits
                .iter()
                .zip(&over_strides)
                .map(|(d, s)| d * s)
                .sum();
            let val = &inner_table.values[full_idx];
            if val.is_zero() {
                continue;
            }
            let mut sq = val.mul_ref(val);
            for &(i, j) in &internal_edges {
                let (a, b) = (over_digits[i], over_digits[j]);
                if host.weight_is_one(a, b) {
                    continue;
                }
                debug_assert!(
                    !host.weight_is_zero(a, b),
                    "nonzero profile across a zero-weight identified edge"
                );
                sq = sq.div_exact(&host.weight(a, b));
            }
            acc.add_ref(&sq);
        }
        acc
    };
    let values: Vec<H::V> = if len >= PAR_THRESHOLD {
        (0..len).into_par_iter().map(compute).collect()
    } else {
        (0..len).map(compute).collect()
    };
    Ok(ProfileTable {
        labels,
        host_size: h,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, StandardKind};
    use crate::hom::enumeration::hom_count_enumeration;
    use crate::hom::host::IntHost;
    use num_bigint::BigInt;

    fn total_on(expr: &ConstructionExpr, host: &LabeledGraph) -> BigInt {
        let adj = host.adjacency();
        expr_total(expr, &IntHost { adj: &adj }).unwrap()
    }

    #[test]
    fn c4_as_doubled_path_matches_enumeration() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let expr = ConstructionExpr::base(v).pendant(2).double([1, 2]);
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        assert_eq!(total_on(&expr, &k3), BigInt::from(18));
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let c4 = expr.realize().unwrap();
        assert_eq!(
            total_on(&expr, &c5),
            hom_count_enumeration(&c4, &c5).unwrap()
        );
    }

    #[test]
    fn doubling_with_identified_edge() {
        // db_{0,1}(e) = e: the shared edge must be counted once
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let expr = ConstructionExpr::base(e.clone()).double([0, 1]);
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        assert_eq!(total_on(&expr, &k3), BigInt::from(6));
    }

    #[test]
    fn pendant_profile_multiplies_degrees() {
        // (v)': profile over {0} on C5 is the degree, total 10
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let expr = ConstructionExpr::base(v).pendant(1);
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        assert_eq!(total_on(&expr, &c5), BigInt::from(10));
    }

    #[test]
    fn empty_doubling_is_a_product() {
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let expr = ConstructionExpr::base(k3.clone()).double([]);
        let c7 = standard_graph(StandardKind::Cycle, 7).unwrap();
        assert_eq!(total_on(&expr, &c7), BigInt::from(0));
        let k4 = standard_graph(StandardKind::Complete, 4).unwrap();
        let single = hom_count_enumeration(&k3, &k4).unwrap();
        assert_eq!(total_on(&expr, &k4), &single * &single);
    }

    #[test]
    fn roots_must_survive_doubling() {
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let expr = ConstructionExpr::base(e).double([0]);
        let k3 = standard_graph(StandardKind::Complete, 3).unwrap();
        let adj = k3.adjacency();
        let res = expr_profile(&expr, &BTreeSet::from([1]), &IntHost { adj: &adj });
        assert!(matches!(res, Err(Error::LabelsNotRetained { .. })));
    }
}
