//! Shortest distances and essential nodes.
//!
//! A node j is essential for a pair (y, z) when it lies on every path joining
//! y and z; equivalently, removing j disconnects them. Disconnected pairs have
//! no essential nodes (the defining condition is vacuous).

use crate::graph::{Graph, GraphError};
use std::collections::{BTreeSet, VecDeque};

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs shortest distances. `get` returns `None` for pairs in different
/// components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let v = self.d[i * self.n + j];
        if v == UNREACHABLE {
            None
        } else {
            Some(v)
        }
    }
}

fn bfs_from(g: &Graph, src: usize, skip: Option<usize>, dist: &mut [u32], queue: &mut VecDeque<usize>) {
    dist.fill(UNREACHABLE);
    queue.clear();
    if Some(src) == skip {
        return;
    }
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for w in g.neighbors(u) {
            if Some(w) == skip || dist[w] != UNREACHABLE {
                continue;
            }
            dist[w] = du + 1;
            queue.push_back(w);
        }
    }
}

/// Breadth-first search from every node.
pub fn shortest_distances(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let mut d = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        bfs_from(g, src, None, &mut d[src * n..(src + 1) * n], &mut queue);
    }
    DistanceMatrix { n, d }
}

/// Nodes lying on every y–z path, computed by per-node removal and a
/// reachability check. Returns the empty set for adjacent, biconnected, or
/// disconnected pairs.
pub fn essential_nodes(g: &Graph, y: usize, z: usize) -> Result<BTreeSet<usize>, GraphError> {
    let n = g.node_count();
    if y >= n {
        return Err(GraphError::NodeOutOfRange(y, n));
    }
    if z >= n {
        return Err(GraphError::NodeOutOfRange(z, n));
    }
    if y == z {
        return Err(GraphError::InvalidArguments(
            "essential_nodes requires two distinct nodes".into(),
        ));
    }
    let mut dist = vec![UNREACHABLE; n];
    let mut queue = VecDeque::new();
    bfs_from(g, y, None, &mut dist, &mut queue);
    let mut out = BTreeSet::new();
    if dist[z] == UNREACHABLE {
        return Ok(out);
    }
    for j in 0..n {
        if j == y || j == z {
            continue;
        }
        bfs_from(g, y, Some(j), &mut dist, &mut queue);
        if dist[z] == UNREACHABLE {
            out.insert(j);
        }
    }
    Ok(out)
}

/// Distances plus essential-node sets for every pair, shared by all utility
/// evaluations on the same graph. Essential membership is a bitset per pair.
pub struct GraphMetrics {
    pub dist: DistanceMatrix,
    n: usize,
    words: usize,
    ess: Vec<u64>,
    ess_count: Vec<u32>,
}

impl GraphMetrics {
    pub fn compute(g: &Graph) -> Self {
        let n = g.node_count();
        let dist = shortest_distances(g);
        let words = n.div_ceil(64).max(1);
        let mut ess = vec![0u64; n * n * words];
        let mut ess_count = vec![0u32; n * n];
        let mut comp = vec![UNREACHABLE; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            // Component labels of g with v removed.
            comp.fill(UNREACHABLE);
            let mut label = 0u32;
            for start in 0..n {
                if start == v || comp[start] != UNREACHABLE {
                    continue;
                }
                comp[start] = label;
                queue.clear();
                queue.push_back(start);
                while let Some(u) = queue.pop_front() {
                    for w in g.neighbors(u) {
                        if w != v && comp[w] == UNREACHABLE {
                            comp[w] = label;
                            queue.push_back(w);
                        }
                    }
                }
                label += 1;
            }
            for y in 0..n {
                if y == v {
                    continue;
                }
                for z in (y + 1)..n {
                    if z == v || dist.get(y, z).is_none() || comp[y] == comp[z] {
                        continue;
                    }
                    for &(a, b) in &[(y, z), (z, y)] {
                        let base = (a * n + b) * words;
                        ess[base + v / 64] |= 1u64 << (v % 64);
                        ess_count[a * n + b] += 1;
                    }
                }
            }
        }
        GraphMetrics {
            dist,
            n,
            words,
            ess,
            ess_count,
        }
    }

    pub fn essential_count(&self, y: usize, z: usize) -> u32 {
        self.ess_count[y * self.n + z]
    }

    pub fn is_essential(&self, j: usize, y: usize, z: usize) -> bool {
        let base = (y * self.n + z) * self.words;
        self.ess[base + j / 64] & (1u64 << (j % 64)) != 0
    }
}
