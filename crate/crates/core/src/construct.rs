//! The construction operators (pendant extension and doubling), construction
//! expressions, and the three-member families built from a seed graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Label, LabeledGraph};
use crate::params::max_cut;

/// F^(k): a copy of F plus k new vertices labelled 1..k, each joined to the
/// vertex labelled 0. The 0 label survives; labels 1..k on F are erased first
/// (the new pendant vertices take them over), all other labels survive.
pub fn pendant(f: &LabeledGraph, k: usize) -> Result<LabeledGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("pendant count must be >= 1".into()));
    }
    let root = f.label_vertex(0).ok_or(Error::MissingRoot)?;
    let n = f.n();
    let mut edges = f.edges().to_vec();
    let mut labels: BTreeMap<Label, usize> = f
        .labels()
        .iter()
        .filter(|&(&l, _)| !(1..=k as Label).contains(&l))
        .map(|(&l, &v)| (l, v))
        .collect();
    for i in 0..k {
        edges.push((root, n + i));
        labels.insert((i + 1) as Label, n + i);
    }
    let labels_vec: Vec<(Label, usize)> = labels.into_iter().collect();
    build_graph(n + k, &edges, &labels_vec)
}

/// db_I(F): two disjoint copies of F with the I-labelled vertices identified.
/// Identified vertices keep their labels; every other label is erased, which
/// keeps the relabelling deterministic.
pub fn double(f: &LabeledGraph, over: &BTreeSet<Label>) -> Result<LabeledGraph> {
    for &l in over {
        if f.label_vertex(l).is_none() {
            return Err(Error::MissingLabel(l));
        }
    }
    let n = f.n();
    let glued: BTreeMap<usize, Label> = over
        .iter()
        .map(|&l| (f.label_vertex(l).unwrap(), l))
        .collect();
    // Copy A keeps its vertex ids; copy B's non-identified vertices are
    // appended in increasing original order.
    let mut map_b = vec![usize::MAX; n];
    let mut next = n;
    for v in 0..n {
        if glued.contains_key(&v) {
            map_b[v] = v;
        } else {
            map_b[v] = next;
            next += 1;
        }
    }
    let mut edges: BTreeSet<(usize, usize)> = f.edges().iter().copied().collect();
    for &(u, v) in f.edges() {
        let (a, b) = (map_b[u], map_b[v]);
        edges.insert((a.min(b), a.max(b)));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let labels: Vec<(Label, usize)> = glued.iter().map(|(&v, &l)| (l, v)).collect();
    build_graph(next, &edges, &labels)
}

/// A term over the construction operators; the counting engines evaluate
/// profiles along this structure instead of the realised graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionExpr {
    Base(LabeledGraph),
    Pendant {
        inner: Box<ConstructionExpr>,
        k: usize,
    },
    Double {
        inner: Box<ConstructionExpr>,
        over: BTreeSet<Label>,
    },
}

impl ConstructionExpr {
    pub fn base(g: LabeledGraph) -> Self {
        ConstructionExpr::Base(g)
    }

    pub fn pendant(self, k: usize) -> Self {
        ConstructionExpr::Pendant {
            inner: Box::new(self),
            k,
        }
    }

    pub fn double<I: IntoIterator<Item = Label>>(self, over: I) -> Self {
        ConstructionExpr::Double {
            inner: Box::new(self),
            over: over.into_iter().collect(),
        }
    }

    /// Builds the graph the expression denotes.
    pub fn realize(&self) -> Result<LabeledGraph> {
        match self {
            ConstructionExpr::Base(g) => Ok(g.clone()),
            ConstructionExpr::Pendant { inner, k } => pendant(&inner.realize()?, *k),
            ConstructionExpr::Double { inner, over } => double(&inner.realize()?, over),
        }
    }
}

impl fmt::Display for ConstructionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionExpr::Base(g) => write!(f, "base({g})"),
            ConstructionExpr::Pendant { inner, k } => match k {
                1 => write!(f, "({inner})'"),
                2 => write!(f, "({inner})''"),
                k => write!(f, "({inner})^({k})"),
            },
            ConstructionExpr::Double { inner, over } => {
                let labels: Vec<String> = over.iter().map(|l| l.to_string()).collect();
                write!(f, "db_{{{}}}({inner})", labels.join(","))
            }
        }
    }
}

/// The seven construction graphs derived from a seed, in the order the
/// parameter table lists them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionKind {
    /// e: a single edge.
    Edge,
    /// C_{2N}: the even cycle on twice the seed's vertex count.
    EvenCycle,
    /// T: the seed itself.
    Seed,
    /// T': the seed with one pendant vertex at its 0-labelled vertex.
    SeedPendant,
    /// db_{0,1}(T').
    DoubledSeedPendant,
    /// db_{1,2}(db_0(T^(N))'').
    ThirdH3,
    /// db_{1,2}(db_0^2(T)'').
    ThirdH2,
}

pub const TABLE_ORDER: [ConstructionKind; 7] = [
    ConstructionKind::Edge,
    ConstructionKind::EvenCycle,
    ConstructionKind::Seed,
    ConstructionKind::SeedPendant,
    ConstructionKind::DoubledSeedPendant,
    ConstructionKind::ThirdH3,
    ConstructionKind::ThirdH2,
];

impl ConstructionKind {
    pub fn display_name(self, seed_n: usize) -> String {
        match self {
            ConstructionKind::Edge => "e".into(),
            ConstructionKind::EvenCycle => format!("C_{}", 2 * seed_n),
            ConstructionKind::Seed => "T".into(),
            ConstructionKind::SeedPendant => "T'".into(),
            ConstructionKind::DoubledSeedPendant => "db_{0,1}(T')".into(),
            ConstructionKind::ThirdH3 => format!("db_{{1,2}}(db_0(T^({seed_n}))'')"),
            ConstructionKind::ThirdH2 => "db_{1,2}(db_0^2(T)'')".into(),
        }
    }

    /// Closed forms for (n, m, b) in terms of the seed's (N, M, B).
    pub fn expected_params(self, seed: (usize, usize, usize)) -> (usize, usize, usize) {
        let (n, m, b) = seed;
        match self {
            ConstructionKind::Edge => (2, 1, 1),
            ConstructionKind::EvenCycle => (2 * n, 2 * n, 2 * n),
            ConstructionKind::Seed => (n, m, b),
            ConstructionKind::SeedPendant => (n + 1, m + 1, b + 1),
            ConstructionKind::DoubledSeedPendant => (2 * n, 2 * m + 1, 2 * b + 1),
            ConstructionKind::ThirdH3 => (8 * n, 4 * m + 4 + 4 * n, 4 * b + 4 + 4 * n),
            ConstructionKind::ThirdH2 => (8 * n - 4, 8 * m + 4, 8 * b + 4),
        }
    }

    /// The construction term for this kind over the given seed.
    pub fn expr(self, seed: &LabeledGraph) -> Result<ConstructionExpr> {
        let n = seed.n();
        let base = ConstructionExpr::base(seed.clone());
        Ok(match self {
            ConstructionKind::Edge => {
                ConstructionExpr::base(crate::graph::standard_graph(crate::graph::StandardKind::Edge, 2)?)
            }
            // C_{2N} is two paths of length N glued at both ends.
            ConstructionKind::EvenCycle => {
                ConstructionExpr::base(end_labeled_path(n)?).double([1, 2])
            }
            ConstructionKind::Seed => base,
            ConstructionKind::SeedPendant => base.pendant(1),
            ConstructionKind::DoubledSeedPendant => base.pendant(1).double([0, 1]),
            ConstructionKind::ThirdH3 => base.pendant(n).double([0]).pendant(2).double([1, 2]),
            ConstructionKind::ThirdH2 => base.double([0]).double([0]).pendant(2).double([1, 2]),
        })
    }
}

/// Path with `len` edges whose endpoints are labelled 1 and 2.
pub fn end_labeled_path(len: usize) -> Result<LabeledGraph> {
    if len < 1 {
        return Err(Error::InvalidParameter("path length must be >= 1".into()));
    }
    let edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
    build_graph(len + 1, &edges, &[(1, 0), (2, len)])
}

/// Which of the three families to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    H1,
    H2,
    H3,
}

impl FamilyId {
    pub fn members(self) -> [ConstructionKind; 3] {
        match self {
            FamilyId::H1 => [
                ConstructionKind::SeedPendant,
                ConstructionKind::DoubledSeedPendant,
                ConstructionKind::EvenCycle,
            ],
            FamilyId::H2 => [
                ConstructionKind::Edge,
                ConstructionKind::SeedPendant,
                ConstructionKind::ThirdH2,
            ],
            FamilyId::H3 => [
                ConstructionKind::Seed,
                ConstructionKind::SeedPendant,
                ConstructionKind::ThirdH3,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::H1 => "H1",
            FamilyId::H2 => "H2",
            FamilyId::H3 => "H3",
        }
    }
}

impl std::str::FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H1" | "1" => Ok(FamilyId::H1),
            "H2" | "2" => Ok(FamilyId::H2),
            "H3" | "3" => Ok(FamilyId::H3),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?} (expected H1, H2 or H3)"
            ))),
        }
    }
}

/// One member of a constructed triple: the realised graph together with the
/// construction term that produced it.
#[derive(Debug, Clone)]
pub struct TripleMember {
    pub kind: ConstructionKind,
    pub name: String,
    pub expr: ConstructionExpr,
    pub graph: LabeledGraph,
}

/// A constructed triple, validated against the closed-form parameter table.
#[derive(Debug, Clone)]
pub struct TripleFamily {
    pub family: FamilyId,
    pub seed: LabeledGraph,
    pub members: Vec<TripleMember>,
}

/// Checks the seed hypotheses (connected, non-bipartite, 0-labelled).
pub fn validate_seed(seed: &LabeledGraph) -> Result<(usize, usize, usize)> {
    if !seed.is_connected() {
        return Err(Error::SeedNotConnected);
    }
    if seed.is_bipartite() {
        return Err(Error::SeedBipartite);
    }
    if seed.label_vertex(0).is_none() {
        return Err(Error::MissingRoot);
    }
    Ok((seed.n(), seed.m(), max_cut(seed)?))
}

/// Builds one construction graph and checks its (n, m, b) against the closed
/// forms; the max-cut side of the check is recomputed exactly.
pub fn build_member(kind: ConstructionKind, seed: &LabeledGraph) -> Result<TripleMember> {
    let seed_params = validate_seed(seed)?;
    let expr = kind.expr(seed)?;
    let graph = expr.realize()?;
    let (en, em, eb) = kind.expected_params(seed_params);
    let (n, m, b) = (graph.n(), graph.m(), max_cut(&graph)?);
    let name = kind.display_name(seed.n());
    if (n, m, b) != (en, em, eb) {
        return Err(Error::ParameterMismatch {
            name,
            n,
            m,
            b,
            en,
            em,
            eb,
        });
    }
    if kind == ConstructionKind::EvenCycle {
        // the doubled path must actually be the even cycle
        let is_cycle = graph.is_connected() && (0..n).all(|v| graph.degree(v) == 2);
        if !is_cycle {
            return Err(Error::ParameterMismatch {
                name,
                n,
                m,
                b,
                en,
                em,
                eb,
            });
        }
    }
    Ok(TripleMember {
        kind,
        name,
        expr,
        graph,
    })
}

/// Constructs one of the three families from a connected non-bipartite seed
/// with a 0-labelled vertex. Member parameters are validated internally.
pub fn construct_triple(family: FamilyId, seed: &LabeledGraph) -> Result<TripleFamily> {
    validate_seed(seed)?;
    let members = family
        .members()
        .iter()
        .map(|&k| build_member(k, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(TripleFamily {
        family,
        seed: seed.clone(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{standard_graph, StandardKind};

    fn k3() -> LabeledGraph {
        standard_graph(StandardKind::Complete, 3).unwrap()
    }

    #[test]
    fn pendant_of_single_vertex_is_edge() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let e = pendant(&v, 1).unwrap();
        assert_eq!((e.n(), e.m()), (2, 1));
        assert_eq!(e.label_vertex(0), Some(0));
        assert_eq!(e.label_vertex(1), Some(1));
    }

    #[test]
    fn pendant_twice_is_path() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let p2 = pendant(&v, 2).unwrap();
        assert_eq!((p2.n(), p2.m()), (3, 2));
        assert_eq!(p2.degree(0), 2);
        assert_eq!(p2.labels().len(), 3);
    }

    #[test]
    fn pendant_of_triangle() {
        let t = pendant(&k3(), 1).unwrap();
        assert_eq!((t.n(), t.m()), (4, 4));
        assert!(pendant(&build_graph(2, &[(0, 1)], &[]).unwrap(), 1).is_err());
    }

    #[test]
    fn doubling_path_over_ends_gives_c4() {
        let v = standard_graph(StandardKind::SingleVertex, 1).unwrap();
        let p2 = pendant(&v, 2).unwrap();
        let c4 = double(&p2, &BTreeSet::from([1, 2])).unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!((0..4).all(|u| c4.degree(u) == 2));
        assert!(c4.is_bipartite() && c4.is_connected());
        // only the identified labels survive
        assert_eq!(c4.labels().len(), 2);
    }

    #[test]
    fn doubling_pendant_triangle() {
        let t1 = pendant(&k3(), 1).unwrap();
        let d = double(&t1, &BTreeSet::from([0, 1])).unwrap();
        assert_eq!((d.n(), d.m()), (6, 7));
    }

    #[test]
    fn doubling_over_all_labels_is_identity_on_the_edge() {
        let e = standard_graph(StandardKind::Edge, 2).unwrap();
        let d = double(&e, &BTreeSet::from([0, 1])).unwrap();
        assert_eq!((d.n(), d.m()), (2, 1));
        assert_eq!(d.edges(), e.edges());
    }

    #[test]
    fn doubling_over_missing_label_fails() {
        assert!(matches!(
            double(&k3(), &BTreeSet::from([7])),
            Err(Error::MissingLabel(7))
        ));
    }

    #[test]
    fn doubling_over_empty_set_is_disjoint_union() {
        let d = double(&k3(), &BTreeSet::new()).unwrap();
        assert_eq!((d.n(), d.m()), (6, 6));
        assert!(!d.is_connected());
    }

    #[test]
    fn triple_h1_for_triangle() {
        let t = construct_triple(FamilyId::H1, &k3()).unwrap();
        let sizes: Vec<(usize, usize)> =
            t.members.iter().map(|m| (m.graph.n(), m.graph.m())).collect();
        assert_eq!(sizes, vec![(4, 4), (6, 7), (6, 6)]);
    }

    #[test]
    fn triple_h2_and_h3_for_triangle() {
        let t2 = construct_triple(FamilyId::H2, &k3()).unwrap();
        let sizes: Vec<(usize, usize)> =
            t2.members.iter().map(|m| (m.graph.n(), m.graph.m())).collect();
        assert_eq!(sizes, vec![(2, 1), (4, 4), (20, 28)]);

        let t3 = construct_triple(FamilyId::H3, &k3()).unwrap();
        let sizes: Vec<(usize, usize)> =
            t3.members.iter().map(|m| (m.graph.n(), m.graph.m())).collect();
        assert_eq!(sizes, vec![(3, 3), (4, 4), (24, 28)]);
        // max-cut closed forms for the big members
        assert_eq!(max_cut(&t3.members[2].graph).unwrap(), 24);
        assert_eq!(max_cut(&t2.members[2].graph).unwrap(), 20);
    }

    #[test]
    fn bipartite_seed_is_rejected() {
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        assert!(matches!(
            construct_triple(FamilyId::H1, &c4),
            Err(Error::SeedBipartite)
        ));
    }

    #[test]
    fn disconnected_and_unlabeled_seeds_are_rejected() {
        let two = build_graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)], &[(0, 0)]).unwrap();
        assert!(matches!(
            construct_triple(FamilyId::H2, &two),
            Err(Error::SeedNotConnected)
        ));
        let unlabeled = build_graph(3, &[(0, 1), (0, 2), (1, 2)], &[]).unwrap();
        assert!(matches!(
            construct_triple(FamilyId::H3, &unlabeled),
            Err(Error::MissingRoot)
        ));
    }
}
