//! Connection-set closure and Cayley graph realization.
//!
//! Small orders are materialized as explicit [`CompactGraph`]s; large orders
//! are explored by an implicit BFS from the identity that generates neighbors
//! on the fly and never stores an edge list.

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{CompactGraph, GraphError};
use crate::groups::Group;

/// Default vertex cap for explicit materialization.
pub const EXPLICIT_BUILD_CAP: usize = 2_000_000;

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("connection set is empty")]
    EmptySet,
    #[error("identity element is not allowed in a connection set")]
    IdentityInSet,
    #[error("generator index {0} out of range for group of order {1}")]
    ElementOutOfRange(usize, usize),
    #[error("group order {order} exceeds the explicit-build cap {cap}; use the implicit BFS path")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("generators do not generate the group: reached {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Inverse-closed, deduplicated connection set; its size is the degree of the
/// Cayley graph it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    elements: Vec<usize>,
    involutions: Vec<usize>,
}

impl ConnectionSet {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Members equal to their own inverse; each contributes one to the degree.
    pub fn involutions(&self) -> &[usize] {
        &self.involutions
    }

    pub fn degree(&self) -> usize {
        self.elements.len()
    }
}

/// Closes a generator list under inversion and deduplicates.
pub fn close_connection_set<G: Group + ?Sized>(
    group: &G,
    generators: &[usize],
) -> Result<ConnectionSet, CayleyError> {
    if generators.is_empty() {
        return Err(CayleyError::EmptySet);
    }
    let mut elements = Vec::with_capacity(generators.len() * 2);
    for &g in generators {
        if g >= group.order() {
            return Err(CayleyError::ElementOutOfRange(g, group.order()));
        }
        if g == group.identity() {
            return Err(CayleyError::IdentityInSet);
        }
        elements.push(g);
        elements.push(group.inv(g));
    }
    elements.sort_unstable();
    elements.dedup();
    let involutions = elements
        .iter()
        .copied()
        .filter(|&g| group.inv(g) == g)
        .collect();
    Ok(ConnectionSet { elements, involutions })
}

/// Materializes Cay(G, S) with the right-multiplication convention: vertex g
/// is adjacent to g*s for every s in the connection set.
pub fn build_cayley_explicit<G: Group + ?Sized>(
    group: &G,
    conn: &ConnectionSet,
) -> Result<CompactGraph, CayleyError> {
    build_cayley_explicit_capped(group, conn, EXPLICIT_BUILD_CAP)
}

pub fn build_cayley_explicit_capped<G: Group + ?Sized>(
    group: &G,
    conn: &ConnectionSet,
    cap: usize,
) -> Result<CompactGraph, CayleyError> {
    let order = group.order();
    if order > cap {
        return Err(CayleyError::OrderExceedsCap { order, cap });
    }
    let mut lists = Vec::with_capacity(order);
    for g in 0..order {
        let mut list: Vec<u32> = conn
            .elements()
            .iter()
            .map(|&s| group.mul(g, s) as u32)
            .collect();
        list.sort_unstable();
        lists.push(list);
    }
    Ok(CompactGraph::from_neighbor_lists(lists)?)
}

/// Result of the implicit identity-rooted BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitBfs {
    /// Eccentricity of the identity; equals the diameter when the graph is
    /// vertex-transitive and connected.
    pub diameter: u32,
    /// Number of distinct elements reached; equals the group order iff the
    /// connection set generates the group.
    pub reached: usize,
    /// histogram[d] = number of elements at distance d from the identity.
    pub histogram: Vec<u64>,
}

impl ImplicitBfs {
    /// Mean distance over ordered pairs, valid for vertex-transitive graphs:
    /// the per-source distance sum is the same from every source.
    pub fn average_distance(&self) -> Option<Ratio<u64>> {
        if self.reached < 2 {
            return None;
        }
        let sum: u64 = self
            .histogram
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c)
            .sum();
        Some(Ratio::new(sum, self.reached as u64 - 1))
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn test_and_set(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let was = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        was
    }
}

/// BFS from the identity generating neighbors on the fly. Memory footprint is
/// one bit per element plus two frontier queues.
pub fn implicit_bfs<G: Group + ?Sized>(group: &G, conn: &ConnectionSet) -> ImplicitBfs {
    let order = group.order();
    let mut visited = BitSet::new(order);
    let id = group.identity();
    visited.test_and_set(id);
    let mut frontier: Vec<u32> = vec![id as u32];
    let mut next: Vec<u32> = Vec::new();
    let mut histogram = vec![1u64];
    let mut reached = 1usize;
    let mut diameter = 0u32;
    while !frontier.is_empty() {
        for &g in &frontier {
            for &s in conn.elements() {
                let h = group.mul(g as usize, s);
                if !visited.test_and_set(h) {
                    next.push(h as u32);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        diameter += 1;
        reached += next.len();
        histogram.push(next.len() as u64);
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    ImplicitBfs { diameter, reached, histogram }
}

/// Diameter of Cay(G, S) by identity-rooted implicit BFS. Errors when the
/// connection set does not generate the whole group.
pub fn cayley_diameter_implicit<G: Group + ?Sized>(
    group: &G,
    conn: &ConnectionSet,
) -> Result<(u32, usize), CayleyError> {
    let bfs = implicit_bfs(group, conn);
    if bfs.reached < group.order() {
        return Err(CayleyError::NotGenerating { reached: bfs.reached, order: group.order() });
    }
    Ok((bfs.diameter, bfs.reached))
}
