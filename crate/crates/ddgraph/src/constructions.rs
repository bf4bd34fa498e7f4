//! Non-Cayley constructions: the Moore bound, LCF-notation cubic graphs
//! (the Foster graph in particular), and the vertex-union-edge pairing
//! construction that turns a cubic host into a larger cubic graph.

use thiserror::Error;

use crate::graph::{CompactGraph, GraphError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("Moore bound requires degree >= 2 and diameter >= 1 (got degree {delta}, diameter {d})")]
    BadMooreQuery { delta: u64, d: u64 },
    #[error("LCF shift list must be non-empty")]
    EmptyShifts,
    #[error("LCF graph needs at least 3 vertices (got {0})")]
    TooFewVertices(usize),
    #[error("LCF chord at vertex {vertex} (shift {shift}) collides with a cycle edge or itself")]
    ChordCollision { vertex: usize, shift: i64 },
    #[error("LCF chords are inconsistent: partner of {vertex} is {partner}, whose own chord leads to {back}")]
    ChordMismatch { vertex: usize, partner: usize, back: usize },
    #[error("pairing covers {covered} edge ids but the host has {expected} edges")]
    WrongEdgeCount { covered: usize, expected: usize },
    #[error("edge id {0} out of range ({1} host edges)")]
    EdgeIdOutOfRange(usize, usize),
    #[error("edge id {0} appears more than once in the pairing")]
    DuplicateEdge(usize),
    #[error("edge id {0} is paired with itself")]
    SelfPair(usize),
    #[error("a perfect matching needs an even edge count, host has {0} edges")]
    OddEdgeCount(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Moore bound n(delta, D): 1 + delta * ((delta-1)^D - 1) / (delta - 2) for
/// delta >= 3, and 2D + 1 for delta = 2 (the cycle C_{2D+1}).
pub fn moore_bound(delta: u64, d: u64) -> Result<u64, ConstructionError> {
    if delta < 2 || d < 1 {
        return Err(ConstructionError::BadMooreQuery { delta, d });
    }
    if delta == 2 {
        return Ok(2 * d + 1);
    }
    // 1 + delta + delta(delta-1) + ... + delta(delta-1)^(D-1)
    let mut total: u64 = 1;
    let mut layer: u64 = delta;
    for _ in 0..d {
        total += layer;
        layer *= delta - 1;
    }
    Ok(total)
}

/// Builds the cubic Hamiltonian graph described by an LCF shift sequence:
/// a cycle on `repeats * shifts.len()` vertices plus the chord
/// i -> i + shifts[i mod k] (mod n). The chord relation must be a perfect
/// matching disjoint from the cycle.
pub fn lcf_graph(shifts: &[i64], repeats: usize) -> Result<CompactGraph, ConstructionError> {
    if shifts.is_empty() {
        return Err(ConstructionError::EmptyShifts);
    }
    let n = shifts.len() * repeats;
    if n < 3 {
        return Err(ConstructionError::TooFewVertices(n));
    }
    let n_i = n as i64;
    let partner: Vec<usize> = (0..n)
        .map(|i| {
            let shift = shifts[i % shifts.len()];
            (((i as i64 + shift) % n_i + n_i) % n_i) as usize
        })
        .collect();
    for i in 0..n {
        let p = partner[i];
        if p == i || p == (i + 1) % n || p == (i + n - 1) % n {
            return Err(ConstructionError::ChordCollision {
                vertex: i,
                shift: shifts[i % shifts.len()],
            });
        }
        if partner[p] != i {
            return Err(ConstructionError::ChordMismatch {
                vertex: i,
                partner: p,
                back: partner[p],
            });
        }
    }
    let mut edges: Vec<(u32, u32)> = (0..n)
        .map(|i| (i as u32, ((i + 1) % n) as u32))
        .collect();
    for i in 0..n {
        if i < partner[i] {
            edges.push((i as u32, partner[i] as u32));
        }
    }
    Ok(CompactGraph::from_edges(n, &edges)?)
}

/// An LCF shift sequence realizing the Foster graph on 144 vertices.
/// Accepted as repository data because the built graph verifies as order
/// 144, cubic, bipartite, girth 8, diameter 7.
pub const FOSTER_SHIFTS: [i64; 6] = [13, -13, -59, 59, -35, 35];
pub const FOSTER_REPEATS: usize = 24;

pub fn foster_graph() -> CompactGraph {
    lcf_graph(&FOSTER_SHIFTS, FOSTER_REPEATS).expect("the Foster LCF sequence is well-formed")
}

/// A perfect matching on the edge ids of a host graph, in the host's
/// canonical (lexicographic) edge enumeration.
#[derive(Debug, Clone)]
pub struct PairingMap<'a> {
    host: &'a CompactGraph,
    pairs: Vec<(usize, usize)>,
    shared_endpoint_pairs: usize,
}

impl<'a> PairingMap<'a> {
    pub fn host(&self) -> &CompactGraph {
        self.host
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs whose two edges share a host endpoint. Each such pair
    /// forces a triangle in the derived graph; reported as an advisory
    /// statistic, never enforced.
    pub fn shared_endpoint_pairs(&self) -> usize {
        self.shared_endpoint_pairs
    }
}

/// Checks that `pairs` is a perfect matching on the host's edge ids.
pub fn validate_pairing<'a>(
    host: &'a CompactGraph,
    pairs: &[(usize, usize)],
) -> Result<PairingMap<'a>, ConstructionError> {
    let m = host.edge_count();
    if m % 2 != 0 {
        return Err(ConstructionError::OddEdgeCount(m));
    }
    if pairs.len() * 2 != m {
        return Err(ConstructionError::WrongEdgeCount { covered: pairs.len() * 2, expected: m });
    }
    let mut seen = vec![false; m];
    for &(a, b) in pairs {
        if a >= m {
            return Err(ConstructionError::EdgeIdOutOfRange(a, m));
        }
        if b >= m {
            return Err(ConstructionError::EdgeIdOutOfRange(b, m));
        }
        if a == b {
            return Err(ConstructionError::SelfPair(a));
        }
        for id in [a, b] {
            if seen[id] {
                return Err(ConstructionError::DuplicateEdge(id));
            }
            seen[id] = true;
        }
    }
    let edges: Vec<(u32, u32)> = host.edges().collect();
    let shared = pairs
        .iter()
        .filter(|&&(a, b)| {
            let (u1, v1) = edges[a];
            let (u2, v2) = edges[b];
            u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2
        })
        .count();
    Ok(PairingMap { host, pairs: pairs.to_vec(), shared_endpoint_pairs: shared })
}

/// Derived graph on V(F) u E(F): vertices 0..n-1 are the host vertices,
/// n..n+m-1 its edges. No vertex-vertex edges; vertex-edge adjacency is
/// incidence in the host; edge-edge adjacency is the pairing relation.
pub fn edge_pairing_graph(p: &PairingMap<'_>) -> Result<CompactGraph, ConstructionError> {
    let host = p.host();
    let n = host.order();
    let m = host.edge_count();
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(2 * m + m / 2);
    for (id, (u, v)) in host.edges().enumerate() {
        let ev = (n + id) as u32;
        edges.push((u, ev));
        edges.push((v, ev));
    }
    for &(a, b) in p.pairs() {
        edges.push(((n + a) as u32, (n + b) as u32));
    }
    Ok(CompactGraph::from_edges(n + m, &edges)?)
}

/// Pairing file format: line 1 = m (edge count of the host), then m/2 lines
/// of two space-separated edge ids.
pub fn read_pairing_file(path: &std::path::Path) -> Result<Vec<(usize, usize)>, ConstructionError> {
    let text = std::fs::read_to_string(path).map_err(GraphError::from)?;
    parse_pairing(&text)
}

pub fn parse_pairing(text: &str) -> Result<Vec<(usize, usize)>, ConstructionError> {
    let mut lines = text.lines();
    let first = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing edge count".into() })?;
    let m: usize = first.trim().parse().map_err(|_| GraphError::Parse {
        line: 1,
        msg: format!("invalid edge count '{first}'"),
    })?;
    if m % 2 != 0 {
        return Err(ConstructionError::OddEdgeCount(m));
    }
    let mut pairs = Vec::with_capacity(m / 2);
    for i in 0..m / 2 {
        let line = lines.next().ok_or(GraphError::Parse {
            line: i + 2,
            msg: "missing pair line".into(),
        })?;
        let mut toks = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, ConstructionError> {
            let tok = tok.ok_or(GraphError::Parse { line: i + 2, msg: "expected two edge ids".into() })?;
            tok.parse().map_err(|_| {
                GraphError::Parse { line: i + 2, msg: format!("invalid edge id '{tok}'") }.into()
            })
        };
        let a = parse(toks.next())?;
        let b = parse(toks.next())?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

pub fn pairing_to_string(m: usize, pairs: &[(usize, usize)]) -> String {
    let mut out = format!("{m}\n");
    for &(a, b) in pairs {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

pub fn write_pairing_file(
    path: &std::path::Path,
    m: usize,
    pairs: &[(usize, usize)],
) -> Result<(), ConstructionError> {
    std::fs::write(path, pairing_to_string(m, pairs)).map_err(GraphError::from)?;
    Ok(())
}
