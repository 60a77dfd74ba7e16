//! Immutable node-indexed graphs.
//!
//! Nodes carry external string identifiers and a dense index in `[0, n)`
//! assigned in first-occurrence order. Edges are stored once; undirected
//! graphs keep each pair as `(min, max)` and answer neighbor queries
//! symmetrically.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed graph: a process-unique id plus a size stamp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphToken {
    id: u64,
    nodes: usize,
    edges: usize,
}

impl GraphToken {
    pub fn id(&self) -> u64 {
        self.id
    }
}

#[derive(Debug)]
pub struct Graph {
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    directed: bool,
    // out-neighbors (all neighbors when undirected)
    out_offsets: Vec<usize>,
    out_targets: Vec<usize>,
    in_offsets: Vec<usize>,
    in_sources: Vec<usize>,
    token: GraphToken,
}

impl Graph {
    /// Parses an edge list: one edge per record, two whitespace-separated
    /// node ids, `#` lines are comments, blank lines are skipped.
    pub fn from_edge_list<I, S>(lines: I, directed: bool) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut builder = GraphBuilder::new(directed);
        for (lineno, line) in lines.into_iter().enumerate() {
            let line = line.as_ref().trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 2 node ids, found {}", tokens.len()),
                });
            }
            if tokens[0] == tokens[1] {
                return Err(Error::SelfLoop {
                    line: lineno + 1,
                    node: tokens[0].to_string(),
                });
            }
            builder.add_edge(tokens[0], tokens[1])?;
        }
        Ok(builder.build())
    }

    pub fn read_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Graph::from_edge_list(text.lines(), directed)
    }

    /// Builds a graph over nodes named `"0"..n` from index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)], directed: bool) -> Result<Graph> {
        let mut builder = GraphBuilder::new(directed);
        for i in 0..n {
            builder.add_node(&i.to_string());
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            builder.add_edge(&u.to_string(), &v.to_string())?;
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn token(&self) -> GraphToken {
        self.token
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_id(&self, index: usize) -> &str {
        &self.node_ids[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    /// Stored edges, sorted. Undirected pairs are `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors; all neighbors for undirected graphs.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    /// In-neighbors; same as [`Graph::neighbors`] for undirected graphs.
    pub fn predecessors(&self, u: usize) -> &[usize] {
        if self.directed {
            &self.in_sources[self.in_offsets[u]..self.in_offsets[u + 1]]
        } else {
            self.neighbors(u)
        }
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.predecessors(u).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }
}

/// Incremental graph construction. Duplicate edges collapse; self-loops are
/// rejected.
#[derive(Debug)]
pub struct GraphBuilder {
    directed: bool,
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: HashSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(directed: bool) -> Self {
        GraphBuilder {
            directed,
            node_ids: Vec::new(),
            index: HashMap::new(),
            edges: HashSet::new(),
        }
    }

    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.node_ids.len();
        self.node_ids.push(id.to_string());
        self.index.insert(id.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, from: &str, to: &str) -> Result<()> {
        if from == to {
            return Err(Error::SelfLoop {
                line: 0,
                node: from.to_string(),
            });
        }
        let u = self.add_node(from);
        let v = self.add_node(to);
        let key = if self.directed || u < v { (u, v) } else { (v, u) };
        self.edges.insert(key);
        Ok(())
    }

    pub fn build(self) -> Graph {
        let n = self.node_ids.len();
        let mut edges: Vec<(usize, usize)> = self.edges.into_iter().collect();
        edges.sort_unstable();

        let mut out_lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_lists: Vec<Vec<usize>> = vec![Vec::new(); if self.directed { n } else { 0 }];
        for &(u, v) in &edges {
            out_lists[u].push(v);
            if self.directed {
                in_lists[v].push(u);
            } else {
                out_lists[v].push(u);
            }
        }
        let (out_offsets, out_targets) = flatten(out_lists);
        let (in_offsets, in_sources) = flatten(in_lists);

        let token = GraphToken {
            id: NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed),
            nodes: n,
            edges: edges.len(),
        };
        Graph {
            node_ids: self.node_ids,
            index: self.index,
            edges,
            directed: self.directed,
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            token,
        }
    }
}

fn flatten(mut lists: Vec<Vec<usize>>) -> (Vec<usize>, Vec<usize>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    let mut flat = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    offsets.push(0);
    for list in &mut lists {
        list.sort_unstable();
        flat.extend_from_slice(list);
        offsets.push(flat.len());
    }
    (offsets, flat)
}
