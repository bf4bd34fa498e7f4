//! Compact immutable graph representation and distance/cycle metrics.
//!
//! Graphs are stored in offset-array (CSR) form: one flat neighbor array plus
//! an offset per vertex. Neighbor lists are strictly ascending, symmetric,
//! loop-free and duplicate-free; every constructor enforces this.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicU32, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

/// Distance sentinel for vertices a BFS never reached.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph of order {1}")]
    VertexOutOfRange(u32, usize),
    #[error("graph is disconnected: vertex {witness} is unreachable from vertex {start}")]
    Disconnected { start: u32, witness: u32 },
    #[error("invalid graph structure: {0}")]
    Invalid(String),
    #[error("adjacency file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable undirected graph in compressed adjacency form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl CompactGraph {
    /// Builds a graph from per-vertex neighbor lists, checking all invariants.
    pub fn from_neighbor_lists(lists: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let n = lists.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for (u, list) in lists.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if (v as usize) >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
                if v as usize == u {
                    return Err(GraphError::Invalid(format!("self-loop at vertex {u}")));
                }
                if i > 0 && list[i - 1] >= v {
                    return Err(GraphError::Invalid(format!(
                        "neighbor list of vertex {u} is not strictly ascending"
                    )));
                }
            }
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let g = CompactGraph { offsets, neighbors };
        // Symmetry: u in adj(v) iff v in adj(u).
        for u in 0..n as u32 {
            for &v in g.neighbors(u) {
                if g.neighbors(v).binary_search(&u).is_err() {
                    return Err(GraphError::Invalid(format!(
                        "asymmetric edge: {v} lists {u} but not vice versa"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph of order `n` from an unordered edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if (u as usize) >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if (v as usize) >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::Invalid(format!("self-loop at vertex {u}")));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        for (u, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Invalid(format!(
                    "duplicate edge at vertex {u}"
                )));
            }
        }
        Self::from_neighbor_lists(lists)
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of unordered edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order() as u32).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order() as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.order() == 0 || self.min_degree() == self.max_degree()
    }

    /// Canonical edge enumeration: edges ordered lexicographically by
    /// (min endpoint, max endpoint); the position is the edge id.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.order() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// BFS from `source`: returns (eccentricity over reached vertices, distances).
    /// Unreached vertices hold [`UNREACHED`].
    pub fn bfs_eccentricity(&self, source: u32) -> Result<(u32, Vec<u32>), GraphError> {
        let n = self.order();
        if source as usize >= n {
            return Err(GraphError::VertexOutOfRange(source, n));
        }
        let mut dist = vec![UNREACHED; n];
        let mut frontier = vec![source];
        let mut next = Vec::new();
        dist[source as usize] = 0;
        let mut level = 0u32;
        let mut ecc = 0u32;
        while !frontier.is_empty() {
            ecc = level;
            level += 1;
            for &u in &frontier {
                for &v in self.neighbors(u) {
                    if dist[v as usize] == UNREACHED {
                        dist[v as usize] = level;
                        next.push(v);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
        }
        Ok((ecc, dist))
    }

    /// Connectivity check; on failure returns the disconnected-witness error.
    pub fn check_connected(&self) -> Result<(), GraphError> {
        if self.order() == 0 {
            return Err(GraphError::Invalid("empty graph has no diameter".into()));
        }
        let (_, dist) = self.bfs_eccentricity(0)?;
        if let Some(w) = dist.iter().position(|&d| d == UNREACHED) {
            return Err(GraphError::Disconnected { start: 0, witness: w as u32 });
        }
        Ok(())
    }

    /// Diameter of a connected graph. With `assume_vertex_transitive` a single
    /// BFS from vertex 0 suffices; otherwise the maximum eccentricity over all
    /// sources is taken (parallel over sources).
    pub fn diameter(&self, assume_vertex_transitive: bool) -> Result<u32, GraphError> {
        self.check_connected()?;
        if assume_vertex_transitive {
            return Ok(self.bfs_eccentricity(0)?.0);
        }
        let diam = (0..self.order() as u32)
            .into_par_iter()
            .map(|v| self.bfs_eccentricity(v).map(|(e, _)| e))
            .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;
        Ok(diam)
    }

    /// Length of the shortest cycle, or `None` for acyclic graphs.
    ///
    /// Truncated BFS from every source: each non-tree edge (u,w) seen from a
    /// source closes a cycle of length at most dist(u)+dist(w)+1, and the
    /// minimum over all sources is exact. Expansion stops once it can no
    /// longer beat the best cycle found so far.
    pub fn girth(&self) -> Option<u32> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let best = AtomicU32::new(UNREACHED);
        (0..n as u32).into_par_iter().for_each_init(
            || (vec![UNREACHED; n], vec![UNREACHED; n]),
            |(dist, parent), src| {
                for d in dist.iter_mut() {
                    *d = UNREACHED;
                }
                dist[src as usize] = 0;
                parent[src as usize] = UNREACHED;
                let mut queue = std::collections::VecDeque::new();
                queue.push_back(src);
                let mut cutoff = best.load(Ordering::Relaxed);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u as usize];
                    // Any cycle still discoverable through u has length >= 2*du.
                    if 2 * du >= cutoff {
                        break;
                    }
                    for &w in self.neighbors(u) {
                        if w == parent[u as usize] {
                            continue;
                        }
                        let dw = dist[w as usize];
                        if dw == UNREACHED {
                            dist[w as usize] = du + 1;
                            parent[w as usize] = u;
                            queue.push_back(w);
                        } else {
                            let cand = du + dw + 1;
                            if cand < cutoff {
                                cutoff = cand;
                                best.fetch_min(cand, Ordering::Relaxed);
                            }
                        }
                    }
                }
            },
        );
        match best.into_inner() {
            UNREACHED => None,
            g => Some(g),
        }
    }

    /// Mean distance over ordered pairs of distinct vertices, as an exact
    /// rational. Errors on disconnected input or order < 2.
    pub fn average_distance(&self) -> Result<Ratio<u64>, GraphError> {
        let n = self.order();
        if n < 2 {
            return Err(GraphError::Invalid(
                "average distance requires at least two vertices".into(),
            ));
        }
        self.check_connected()?;
        let total: u64 = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                let (_, dist) = self.bfs_eccentricity(v).expect("source in range");
                dist.iter().map(|&d| d as u64).sum::<u64>()
            })
            .sum();
        Ok(Ratio::new(total, (n as u64) * (n as u64 - 1)))
    }

    /// Two-colorability via BFS.
    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        for start in 0..n as u32 {
            if color[start as usize] != u8::MAX {
                continue;
            }
            color[start as usize] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == u8::MAX {
                        color[v as usize] = 1 - color[u as usize];
                        queue.push_back(v);
                    } else if color[v as usize] == color[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn stats(&self) -> GraphStats {
        let connected = self.check_connected().is_ok();
        GraphStats {
            order: self.order(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            is_regular: self.is_regular(),
            diameter: if connected { self.diameter(false).ok() } else { None },
            girth: self.girth(),
            average_distance: if connected && self.order() >= 2 {
                self.average_distance().ok()
            } else {
                None
            },
        }
    }

    /// Canonical adjacency-list text: line 1 is n, then one ascending
    /// space-separated neighbor line per vertex. LF endings, ASCII decimal.
    pub fn to_adjacency_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order().to_string());
        out.push('\n');
        for v in 0..self.order() as u32 {
            let mut first = true;
            for &w in self.neighbors(v) {
                if !first {
                    out.push(' ');
                }
                out.push_str(&w.to_string());
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_adjacency_str(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines();
        let first = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| GraphError::Parse {
            line: 1,
            msg: format!("invalid vertex count '{first}'"),
        })?;
        let mut lists = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or(GraphError::Parse {
                line: i + 2,
                msg: format!("missing neighbor line for vertex {i}"),
            })?;
            let mut list = Vec::new();
            for tok in line.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| GraphError::Parse {
                    line: i + 2,
                    msg: format!("invalid vertex id '{tok}'"),
                })?;
                list.push(v);
            }
            lists.push(list);
        }
        Self::from_neighbor_lists(lists)
    }

    pub fn write_adjacency_file(&self, path: &Path) -> Result<(), GraphError> {
        std::fs::write(path, self.to_adjacency_string())?;
        Ok(())
    }

    pub fn read_adjacency_file(path: &Path) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_adjacency_str(&text)
    }
}

/// Aggregate metrics of a graph. `diameter` and `average_distance` are `None`
/// for disconnected graphs; `girth` is `None` for acyclic graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub order: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub is_regular: bool,
    pub diameter: Option<u32>,
    pub girth: Option<u32>,
    pub average_distance: Option<Ratio<u64>>,
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order            {}", self.order)?;
        if self.is_regular {
            writeln!(f, "degree           {} (regular)", self.max_degree)?;
        } else {
            writeln!(f, "degree           min {} max {}", self.min_degree, self.max_degree)?;
        }
        match self.diameter {
            Some(d) => writeln!(f, "diameter         {d}")?,
            None => writeln!(f, "diameter         infinite (disconnected)")?,
        }
        match self.girth {
            Some(g) => writeln!(f, "girth            {g}")?,
            None => writeln!(f, "girth            infinite (acyclic)")?,
        }
        match &self.average_distance {
            Some(r) => writeln!(f, "average distance {} ({})", decimal6(r), r)?,
            None => writeln!(f, "average distance undefined")?,
        }
        Ok(())
    }
}

/// Renders a rational to 6 decimal places, rounding half to even.
pub fn decimal6(r: &Ratio<u64>) -> String {
    let num = *r.numer() as u128;
    let den = *r.denom() as u128;
    let scaled = num * 1_000_000;
    let mut q = scaled / den;
    let rem = scaled % den;
    match (2 * rem).cmp(&den) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal => {
            if q % 2 == 1 {
                q += 1;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    format!("{}.{:06}", q / 1_000_000, q % 1_000_000)
}
