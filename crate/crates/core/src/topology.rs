//! Topology labels, classification, and constructors for the labeled families.
//!
//! Classification precedence when labels overlap:
//! Complete > Star > BipartiteTuran > KStar > Other, with Null and SingleNode
//! reserved for the 0- and 1-node graphs.

use crate::graph::{Graph, GraphError};
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TopologyLabel {
    Null,
    SingleNode,
    Star,
    Complete,
    BipartiteTuran(usize, usize),
    KStar(usize, Vec<usize>),
    Other,
}

impl fmt::Display for TopologyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyLabel::Null => write!(f, "null"),
            TopologyLabel::SingleNode => write!(f, "single_node"),
            TopologyLabel::Star => write!(f, "star"),
            TopologyLabel::Complete => write!(f, "complete"),
            TopologyLabel::BipartiteTuran(p1, p2) => write!(f, "turan({p1};{p2})"),
            TopologyLabel::KStar(k, counts) => {
                write!(f, "kstar({k}")?;
                for c in counts {
                    write!(f, ";{c}")?;
                }
                write!(f, ")")
            }
            TopologyLabel::Other => write!(f, "other"),
        }
    }
}

/// Topology family without instance sizes; the form taken by prediction
/// targets (`KStar(3)` matches any balanced 3-star).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TopologyClass {
    Null,
    SingleNode,
    Star,
    Complete,
    BipartiteTuran,
    KStar(usize),
    Other,
}

impl TopologyClass {
    pub fn matches(&self, label: &TopologyLabel) -> bool {
        match (self, label) {
            (TopologyClass::Null, TopologyLabel::Null) => true,
            (TopologyClass::SingleNode, TopologyLabel::SingleNode) => true,
            (TopologyClass::Star, TopologyLabel::Star) => true,
            (TopologyClass::Complete, TopologyLabel::Complete) => true,
            (TopologyClass::BipartiteTuran, TopologyLabel::BipartiteTuran(_, _)) => true,
            (TopologyClass::KStar(k), TopologyLabel::KStar(kk, _)) => k == kk,
            (TopologyClass::Other, TopologyLabel::Other) => true,
            _ => false,
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyClass::Null => write!(f, "null"),
            TopologyClass::SingleNode => write!(f, "single_node"),
            TopologyClass::Star => write!(f, "star"),
            TopologyClass::Complete => write!(f, "complete"),
            TopologyClass::BipartiteTuran => write!(f, "turan"),
            TopologyClass::KStar(k) => write!(f, "kstar({k})"),
            TopologyClass::Other => write!(f, "other"),
        }
    }
}

impl FromStr for TopologyClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "null" => return Ok(TopologyClass::Null),
            "single_node" | "singlenode" => return Ok(TopologyClass::SingleNode),
            "star" => return Ok(TopologyClass::Star),
            "complete" => return Ok(TopologyClass::Complete),
            "turan" | "bipartite_turan" | "bipartite" => return Ok(TopologyClass::BipartiteTuran),
            "other" => return Ok(TopologyClass::Other),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("kstar") {
            let inner = rest.trim_matches(|c| c == '(' || c == ')');
            if let Ok(k) = inner.parse::<usize>() {
                return Ok(TopologyClass::KStar(k));
            }
        }
        Err(format!("unknown topology label `{s}`"))
    }
}

fn is_complete(g: &Graph) -> bool {
    let n = g.node_count();
    g.edge_count() == n * (n - 1) / 2
}

fn is_star(g: &Graph) -> bool {
    let n = g.node_count();
    if n < 3 || g.edge_count() != n - 1 {
        return false;
    }
    let mut center = 0;
    let mut found = false;
    for v in 0..n {
        if g.degree(v) == n - 1 {
            center = v;
            found = true;
            break;
        }
    }
    found && (0..n).all(|v| v == center || g.degree(v) == 1)
}

/// Complete bipartite with near-equal sides; returns the partition sizes.
fn as_bipartite_turan(g: &Graph) -> Option<(usize, usize)> {
    let n = g.node_count();
    if n < 2 || g.edge_count() == 0 {
        return None;
    }
    // 2-color; complete bipartite graphs are connected.
    let mut color = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    color[0] = 0;
    queue.push_back(0);
    let mut seen = 1;
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if color[w] == u8::MAX {
                color[w] = 1 - color[u];
                seen += 1;
                queue.push_back(w);
            } else if color[w] == color[u] {
                return None;
            }
        }
    }
    if seen != n {
        return None;
    }
    let p1 = color.iter().filter(|&&c| c == 0).count();
    let p2 = n - p1;
    if g.edge_count() != p1 * p2 || p1.abs_diff(p2) > 1 {
        return None;
    }
    Some((p1.min(p2), p1.max(p2)))
}

/// k mutually adjacent centers, every leaf attached to exactly one center,
/// leaf counts balanced within one; returns (k, sorted leaf counts).
fn as_k_star(g: &Graph) -> Option<(usize, Vec<usize>)> {
    let n = g.node_count();
    let centers: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 1).collect();
    let k = centers.len();
    if k < 2 {
        return None;
    }
    for (i, &a) in centers.iter().enumerate() {
        for &b in &centers[i + 1..] {
            if !g.has_edge(a, b) {
                return None;
            }
        }
    }
    let mut leaf_counts = vec![0usize; k];
    for v in 0..n {
        if g.degree(v) > 1 {
            continue;
        }
        if g.degree(v) != 1 {
            return None;
        }
        let owner = g.neighbors(v).next().unwrap();
        match centers.iter().position(|&c| c == owner) {
            Some(idx) => leaf_counts[idx] += 1,
            None => return None,
        }
    }
    // Every center's degree must be exactly (k-1) + its leaves: no extra links.
    for (idx, &c) in centers.iter().enumerate() {
        if g.degree(c) != k - 1 + leaf_counts[idx] {
            return None;
        }
    }
    if leaf_counts.iter().any(|&m| m == 0) {
        return None;
    }
    let max = *leaf_counts.iter().max().unwrap();
    let min = *leaf_counts.iter().min().unwrap();
    if max - min > 1 {
        return None;
    }
    leaf_counts.sort_unstable_by(|a, b| b.cmp(a));
    Some((k, leaf_counts))
}

/// Deterministic classification under the fixed precedence order.
pub fn classify_topology(g: &Graph) -> TopologyLabel {
    let n = g.node_count();
    if n == 0 {
        return TopologyLabel::Null;
    }
    if n == 1 {
        return TopologyLabel::SingleNode;
    }
    if is_complete(g) {
        return TopologyLabel::Complete;
    }
    if is_star(g) {
        return TopologyLabel::Star;
    }
    if let Some((p1, p2)) = as_bipartite_turan(g) {
        return TopologyLabel::BipartiteTuran(p1, p2);
    }
    if let Some((k, counts)) = as_k_star(g) {
        return TopologyLabel::KStar(k, counts);
    }
    TopologyLabel::Other
}

pub fn build_star(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(0, v).unwrap();
    }
    g
}

pub fn build_complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Complete bipartite graph with sides `ceil(n/2)` and `floor(n/2)`.
pub fn build_turan(n: usize) -> Graph {
    let mut g = Graph::new(n);
    let p1 = n.div_ceil(2);
    for u in 0..p1 {
        for v in p1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Balanced k-star on `total` nodes: centers 0..k pairwise adjacent, leaves
/// distributed round-robin. Requires `total >= 2k` so every center keeps at
/// least one leaf.
pub fn build_k_star(k: usize, total: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidArguments(
            "k-star requires at least 2 centers".into(),
        ));
    }
    if total < 2 * k {
        return Err(GraphError::InvalidArguments(format!(
            "k-star with {k} centers needs at least {} nodes, got {total}",
            2 * k
        )));
    }
    let mut g = Graph::new(total);
    for u in 0..k {
        for v in (u + 1)..k {
            g.add_edge(u, v).unwrap();
        }
    }
    for (i, leaf) in (k..total).enumerate() {
        g.add_edge(i % k, leaf).unwrap();
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let mut h = Graph::new(g.node_count());
        for (u, v) in g.edges() {
            h.add_edge(perm[u], perm[v]).unwrap();
        }
        h
    }

    #[test]
    fn classifies_named_families() {
        assert_eq!(classify_topology(&build_complete(4)), TopologyLabel::Complete);
        assert_eq!(classify_topology(&build_star(6)), TopologyLabel::Star);
        let ks = build_k_star(3, 9).unwrap();
        assert_eq!(
            classify_topology(&ks),
            TopologyLabel::KStar(3, vec![2, 2, 2])
        );
        assert_eq!(
            classify_topology(&build_turan(5)),
            TopologyLabel::BipartiteTuran(2, 3)
        );
        assert_eq!(classify_topology(&Graph::new(0)), TopologyLabel::Null);
        assert_eq!(classify_topology(&Graph::new(1)), TopologyLabel::SingleNode);
    }

    #[test]
    fn precedence_on_overlapping_labels() {
        // K2 is complete, star-like, and Turan(1,1): Complete wins.
        let k2 = build_complete(2);
        assert_eq!(classify_topology(&k2), TopologyLabel::Complete);
        // P3 = K(1,2): Star wins over Turan.
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(classify_topology(&p3), TopologyLabel::Star);
        // C4 = K(2,2).
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(classify_topology(&c4), TopologyLabel::BipartiteTuran(2, 2));
        // P4 is the minimal 2-star.
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(classify_topology(&p4), TopologyLabel::KStar(2, vec![1, 1]));
    }

    #[test]
    fn unbalanced_instances_fall_to_other() {
        // K(1,3) with an extra isolated node is not a star on 5 nodes.
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classify_topology(&g), TopologyLabel::Other);
        // Unbalanced complete bipartite K(1,3) is a star, but K(2,4) is Other.
        let mut k24 = Graph::new(6);
        for u in 0..2 {
            for v in 2..6 {
                k24.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(classify_topology(&k24), TopologyLabel::Other);
        // 2-star with leaf counts [3,1] is unbalanced.
        let mut g = Graph::from_edges(6, &[(0, 1)]).unwrap();
        for leaf in 2..5 {
            g.add_edge(0, leaf).unwrap();
        }
        g.add_edge(1, 5).unwrap();
        assert_eq!(classify_topology(&g), TopologyLabel::Other);
        // Edgeless graph on 3 nodes has no assigned family.
        assert_eq!(classify_topology(&Graph::new(3)), TopologyLabel::Other);
    }

    #[test]
    fn classification_is_isomorphism_invariant() {
        let graphs = [
            build_star(5),
            build_complete(4),
            build_turan(6),
            build_k_star(2, 6).unwrap(),
            build_k_star(3, 7).unwrap(),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            let n = g.node_count();
            let label = classify_topology(g);
            let mut perm: Vec<usize> = (0..n).collect();
            // Exhaustive relabeling via Heap's algorithm.
            let mut c = vec![0usize; n];
            assert_eq!(classify_topology(&relabel(g, &perm)), label);
            let mut i = 0;
            while i < n {
                if c[i] < i {
                    if i % 2 == 0 {
                        perm.swap(0, i);
                    } else {
                        perm.swap(c[i], i);
                    }
                    assert_eq!(classify_topology(&relabel(g, &perm)), label);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn class_matching_and_parsing() {
        assert!(TopologyClass::KStar(3).matches(&TopologyLabel::KStar(3, vec![2, 2, 2])));
        assert!(!TopologyClass::KStar(2).matches(&TopologyLabel::KStar(3, vec![1, 1, 1])));
        assert!(TopologyClass::BipartiteTuran.matches(&TopologyLabel::BipartiteTuran(3, 3)));
        assert_eq!("star".parse::<TopologyClass>().unwrap(), TopologyClass::Star);
        assert_eq!(
            "kstar(2)".parse::<TopologyClass>().unwrap(),
            TopologyClass::KStar(2)
        );
        assert_eq!(
            "turan".parse::<TopologyClass>().unwrap(),
            TopologyClass::BipartiteTuran
        );
        assert!("frob".parse::<TopologyClass>().is_err());
    }

    #[test]
    fn k_star_builder_distributes_leaves() {
        let g = build_k_star(4, 10).unwrap();
        assert_eq!(classify_topology(&g), TopologyLabel::KStar(4, vec![2, 2, 1, 1]));
        assert!(build_k_star(3, 5).is_err());
    }
}
