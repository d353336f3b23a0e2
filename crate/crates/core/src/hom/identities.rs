//! Exact counting identities relating a pattern, a fully labelled sub-pattern
//! and their doubled/pendant derivatives, checked with integer arithmetic:
//!
//! 1. total probability: #F equals the profile of F summed over the copies of
//!    the sub-pattern H;
//! 2. doubling: #db_I(F) equals the sum of squared conditional counts;
//! 3. pendant root: fixing the 0-labelled root at u multiplies the count of
//!    F^(k) by deg(u)^k.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::construct::{double, pendant, ConstructionExpr};
use crate::error::{Error, Result};
use crate::graph::{Label, LabeledGraph};
use crate::hom::{hom_count, rooted_profile, rooted_profile_expr};

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    /// First offending assignment, when a pointwise identity fails.
    pub counterexample: Option<Vec<usize>>,
}

impl IdentityCheck {
    fn of(name: &str, lhs: BigInt, rhs: BigInt) -> Self {
        IdentityCheck {
            name: name.into(),
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            counterexample: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub all_hold: bool,
}

/// Validates that `sub` is a fully labelled sub-pattern of `f`: every vertex
/// of `sub` carries a label, each of those labels appears in `f`, and every
/// edge of `sub` joins the same labels in `f`.
fn validate_subpattern(f: &LabeledGraph, sub: &LabeledGraph) -> Result<Vec<Label>> {
    if sub.labels().len() != sub.n() {
        return Err(Error::InvalidParameter(
            "sub-pattern must have every vertex labelled".into(),
        ));
    }
    let mut labels = Vec::new();
    for (&l, &v) in sub.labels() {
        if f.label_vertex(l).is_none() {
            return Err(Error::MissingLabel(l));
        }
        labels.push(l);
        let _ = v;
    }
    for &(u, v) in sub.edges() {
        let lu = sub.vertex_label(u).expect("fully labelled");
        let lv = sub.vertex_label(v).expect("fully labelled");
        let fu = f.label_vertex(lu).expect("checked");
        let fv = f.label_vertex(lv).expect("checked");
        if !f.has_edge(fu, fv) {
            return Err(Error::InvalidParameter(format!(
                "sub-pattern edge between labels {lu} and {lv} is missing from the pattern"
            )));
        }
    }
    labels.sort_unstable();
    Ok(labels)
}

/// Checks the three identities for pattern `f`, fully labelled sub-pattern
/// `sub` (its labels form the set I) and the given host. `pendant_k` selects
/// the pendant count for the third identity, which needs a 0-labelled vertex
/// in `f` and is skipped otherwise.
pub fn verify_identities(
    f: &LabeledGraph,
    sub: &LabeledGraph,
    host: &LabeledGraph,
    pendant_k: usize,
) -> Result<IdentityReport> {
    let labels = validate_subpattern(f, sub)?;
    let mut checks = Vec::new();

    let total = hom_count(f, host)?.0;
    let profile = rooted_profile(f, &labels, host)?;

    // assignments that are actual copies of the sub-pattern in the host
    let sub_roots: Vec<Label> = labels.clone();
    let sub_profile = rooted_profile(sub, &sub_roots, host)?;

    let mut over_copies = BigInt::from(0u32);
    let mut squares = BigInt::from(0u32);
    for (assignment, count) in &profile.counts {
        let is_copy = sub_profile
            .get(assignment)
            .map(|c| *c != BigInt::from(0u32))
            .unwrap_or(false);
        if is_copy {
            over_copies += &count.0;
            squares += &count.0 * &count.0;
        } else if count.0 != BigInt::from(0u32) {
            // a sub-pattern edge is missing: cannot happen when sub ⊆ f
            return Err(Error::InvalidParameter(format!(
                "profile mass {} outside the sub-pattern copies at {assignment:?}",
                count.0
            )));
        }
    }
    checks.push(IdentityCheck::of("total_probability", total.clone(), over_copies));

    let doubled = double(f, &labels.iter().copied().collect::<BTreeSet<_>>())?;
    let doubled_count = hom_count(&doubled, host)?.0;
    checks.push(IdentityCheck::of("doubling_squares", doubled_count, squares));

    if f.label_vertex(0).is_some() && pendant_k >= 1 {
        let extended = pendant(f, pendant_k)?;
        let ext_profile = rooted_profile_expr(
            &ConstructionExpr::base(extended),
            &BTreeSet::from([0]),
            host,
        )?;
        let root_profile = rooted_profile(f, &[0], host)?;
        let mut check = IdentityCheck {
            name: format!("pendant_root_k{pendant_k}"),
            holds: true,
            lhs: String::new(),
            rhs: String::new(),
            counterexample: None,
        };
        for u in 0..host.n() {
            let lhs = ext_profile.get(&[u]).cloned().unwrap_or_default();
            let deg = BigInt::from(host.degree(u));
            let rhs = root_profile.get(&[u]).cloned().unwrap_or_default() * deg.pow(pendant_k as u32);
            if lhs != rhs {
                check.holds = false;
                check.lhs = lhs.to_string();
                check.rhs = rhs.to_string();
                check.counterexample = Some(vec![u]);
                break;
            }
        }
        checks.push(check);
    }

    let all_hold = checks.iter().all(|c| c.holds);
    Ok(IdentityReport { checks, all_hold })
}
