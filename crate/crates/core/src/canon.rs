//! Canonical forms and automorphism orbits for small graphs (n <= 9).
//!
//! The canonical form is the minimal upper-triangle adjacency bitstring over
//! all node relabelings, found by branch-and-bound over partial label
//! assignments; pruning only discards relabelings whose completed bitstring
//! provably cannot undercut the current minimum, so the result equals the
//! plain minimum over all n! permutations.

use crate::graph::{Graph, GraphError};

/// Hard cap: relabeling enumeration beyond this is a non-goal.
pub const CANONICAL_NODE_LIMIT: usize = 9;

/// Canonical representative of an isomorphism class: node count plus the
/// relabeled edge set, minimal under a fixed total order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.node_count, &self.edges).expect("canonical edges are valid")
    }
}

/// Pair index in the order (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),...: all pairs
/// among labels 0..=m occupy a contiguous prefix.
fn pair_index(lo: usize, hi: usize) -> usize {
    hi * (hi - 1) / 2 + lo
}

fn check_size(g: &Graph) -> Result<(), GraphError> {
    if g.node_count() > CANONICAL_NODE_LIMIT {
        return Err(GraphError::SizeLimit {
            actual: g.node_count(),
            limit: CANONICAL_NODE_LIMIT,
        });
    }
    Ok(())
}

struct CanonSearch<'g> {
    g: &'g Graph,
    n: usize,
    total_pairs: usize,
    assigned: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl<'g> CanonSearch<'g> {
    fn run(g: &'g Graph) -> u64 {
        let n = g.node_count();
        if n < 2 {
            return 0;
        }
        let mut s = CanonSearch {
            g,
            n,
            total_pairs: n * (n - 1) / 2,
            assigned: Vec::with_capacity(n),
            used: vec![false; n],
            best: None,
        };
        s.descend(0);
        s.best.unwrap()
    }

    fn descend(&mut self, partial: u64) {
        let level = self.assigned.len();
        if level == self.n {
            if self.best.map_or(true, |b| partial < b) {
                self.best = Some(partial);
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            let mut next = partial;
            for (label, &node) in self.assigned.iter().enumerate() {
                if self.g.has_edge(node, v) {
                    next |= 1u64 << (self.total_pairs - 1 - pair_index(label, level));
                }
            }
            // Bits among the first level+1 labels are final; compare that
            // prefix against the best complete value.
            if let Some(best) = self.best {
                let shift = self.total_pairs - (level + 1) * level / 2;
                if (next >> shift) > (best >> shift) {
                    continue;
                }
            }
            self.used[v] = true;
            self.assigned.push(v);
            self.descend(next);
            self.assigned.pop();
            self.used[v] = false;
        }
    }
}

/// Canonical adjacency bits; identical for isomorphic graphs of equal size.
pub fn canonical_bits(g: &Graph) -> Result<u64, GraphError> {
    check_size(g)?;
    Ok(CanonSearch::run(g))
}

fn bits_to_edges(n: usize, bits: u64) -> Vec<(usize, usize)> {
    let total = n * (n - 1) / 2;
    let mut edges = Vec::new();
    for hi in 1..n {
        for lo in 0..hi {
            if bits & (1u64 << (total - 1 - pair_index(lo, hi))) != 0 {
                edges.push((lo, hi));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Minimal edge set under a fixed total order over all node relabelings.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let bits = canonical_bits(g)?;
    Ok(CanonicalForm {
        node_count: g.node_count(),
        edges: bits_to_edges(g.node_count(), bits),
    })
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Partition of node ids: two nodes share a block iff some automorphism maps
/// one to the other. Blocks are sorted and ordered by smallest member.
pub fn node_orbits(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    check_size(g)?;
    let n = g.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for_each_permutation(n, |perm| {
        if is_automorphism(g, perm) {
            for v in 0..n {
                let a = find(&mut parent, v);
                let b = find(&mut parent, perm[v]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    });
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        match root_of[r] {
            Some(idx) => blocks[idx].push(v),
            None => {
                root_of[r] = Some(blocks.len());
                blocks.push(vec![v]);
            }
        }
    }
    Ok(blocks)
}
