//! Undirected simple graphs over node ids `0..node_count`, plus the edge-list
//! and DOT text formats.

use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} out of range for graph with {1} nodes")]
    NodeOutOfRange(usize, usize),
    #[error("self-loop on node {0} not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("graph with {actual} nodes exceeds limit {limit}")]
    SizeLimit { actual: usize, limit: usize },
    #[error("edge-list parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Simple undirected graph backed by an adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    pub fn new(node_count: usize) -> Self {
        Graph {
            n: node_count,
            adj: vec![false; node_count * node_count],
            degrees: vec![0; node_count],
            edge_count: 0,
        }
    }

    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(node_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_node(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::NodeOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && u != v && self.adj[u * self.n + v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u * self.n + v] {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v || !self.adj[u * self.n + v] {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.adj[u * self.n + v] = false;
        self.adj[v * self.n + u] = false;
        self.degrees[u] -= 1;
        self.degrees[v] -= 1;
        self.edge_count -= 1;
        Ok(())
    }

    /// Appends an isolated node and returns its id.
    pub fn add_node(&mut self) -> usize {
        let old = self.n;
        let new = old + 1;
        let mut adj = vec![false; new * new];
        for u in 0..old {
            for v in 0..old {
                adj[u * new + v] = self.adj[u * old + v];
            }
        }
        self.adj = adj;
        self.n = new;
        self.degrees.push(0);
        old
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter().enumerate().filter(|(_, &a)| a).map(|(w, _)| w)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n)
                .filter(move |&v| self.adj[u * self.n + v])
                .map(move |v| (u, v))
        })
    }

    /// Parses the edge-list format: first line `n <node_count>`, then one
    /// `u v` pair per line. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut g: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match g {
                None => {
                    if parts.next() != Some("n") {
                        return Err(GraphError::Parse {
                            line: idx + 1,
                            reason: "expected header `n <node_count>`".into(),
                        });
                    }
                    let count = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(GraphError::Parse {
                            line: idx + 1,
                            reason: "invalid node count".into(),
                        })?;
                    g = Some(Graph::new(count));
                }
                Some(ref mut graph) => {
                    let u = parts.next().and_then(|t| t.parse::<usize>().ok());
                    let v = parts.next().and_then(|t| t.parse::<usize>().ok());
                    match (u, v) {
                        (Some(u), Some(v)) if parts.next().is_none() => {
                            graph.add_edge(u, v).map_err(|e| GraphError::Parse {
                                line: idx + 1,
                                reason: e.to_string(),
                            })?;
                        }
                        _ => {
                            return Err(GraphError::Parse {
                                line: idx + 1,
                                reason: "expected `u v`".into(),
                            })
                        }
                    }
                }
            }
        }
        g.ok_or(GraphError::Parse {
            line: 0,
            reason: "missing header".into(),
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    /// DOT export, undirected and unstyled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {};", v);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", u, v);
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency bits of the upper triangle packed into words; a cheap
    /// label-sensitive state key for cycle detection.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        let pairs = self.n * (self.n.saturating_sub(1)) / 2;
        let mut words = vec![0u64; pairs.div_ceil(64).max(1)];
        let mut idx = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj[u * self.n + v] {
                    words[idx / 64] |= 1u64 << (idx % 64);
                }
                idx += 1;
            }
        }
        words
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
