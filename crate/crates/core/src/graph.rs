//! Simple undirected graphs in compressed adjacency form, and Cayley graphs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::table::ElementTable;

/// A simple undirected graph on `0..n` with sorted neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    adj: Vec<u32>,
}

impl Graph {
    /// Build from an edge list; duplicate edges are merged, loops rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::OutOfRange(format!("edge ({u}, {v}) on {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidConnectionSet(format!("loop at vertex {u}")));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        Ok(Graph::from_lists(lists))
    }

    fn from_lists(mut lists: Vec<Vec<u32>>) -> Graph {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut adj = Vec::new();
        offsets.push(0);
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
            adj.extend_from_slice(l);
            offsets.push(adj.len() as u32);
        }
        Graph { offsets, adj }
    }

    /// Build from neighbour lists, which must describe a symmetric loop-free relation.
    pub fn from_adjacency(lists: Vec<Vec<u32>>) -> Result<Graph> {
        let n = lists.len();
        let g = Graph::from_lists(lists);
        for u in 0..n as u32 {
            for &v in g.neighbors(u) {
                if v as usize >= n || v == u || !g.has_edge(v, u) {
                    return Err(Error::Mismatch(format!("adjacency is not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0u32];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Whether `perm` (vertex v ↦ perm[v]) is an automorphism.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        let n = self.vertex_count();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p as usize >= n || core::mem::replace(&mut seen[p as usize], true) {
                return false;
            }
        }
        (0..n as u32).all(|u| {
            let pu = perm[u as usize];
            self.degree(u) == self.degree(pu) && self.neighbors(u).iter().all(|&v| self.has_edge(pu, perm[v as usize]))
        })
    }

    /// The image graph under v ↦ perm[v].
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        let mut lists = vec![Vec::new(); self.vertex_count()];
        for u in 0..self.vertex_count() as u32 {
            lists[perm[u as usize] as usize] = self.neighbors(u).iter().map(|&v| perm[v as usize]).collect();
        }
        Graph::from_lists(lists)
    }

    /// DIMACS-style text: a `p edge V E` header and one `e u v` line per edge, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p edge {} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }

    /// Parse the format written by [`to_dimacs`](Self::to_dimacs); `c` lines are comments.
    pub fn from_dimacs(text: &str) -> Result<Graph> {
        let mut n = None;
        let mut edges = Vec::new();
        for line in text.lines() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                [] | ["c", ..] => {}
                ["p", "edge", v, _] => {
                    n = Some(
                        v.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad header {line:?}")))?,
                    )
                }
                ["e", u, v] => {
                    let u: u32 = u.parse().map_err(|_| Error::Parse(format!("bad edge {line:?}")))?;
                    let v: u32 = v.parse().map_err(|_| Error::Parse(format!("bad edge {line:?}")))?;
                    if u == 0 || v == 0 {
                        return Err(Error::Parse(format!("vertices are 1-based: {line:?}")));
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(Error::Parse(format!("unrecognised line {line:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing p edge header".into()))?;
        Graph::from_edges(n, &edges)
    }
}

/// Cay(G, S): vertex g is adjacent to s·g for s ∈ S.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// Element indices of the connection set.
    pub connection: Vec<u32>,
}

/// Build Cay(G, S) over an enumerated group; S must be inverse-closed and avoid the identity.
pub fn build_cayley(table: &ElementTable, s: &[u32]) -> Result<CayleyGraph> {
    let n = table.len();
    let mut set: Vec<u32> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != s.len() {
        return Err(Error::InvalidConnectionSet("repeated element".into()));
    }
    for &x in &set {
        if x as usize >= n {
            return Err(Error::NotInGroup);
        }
        if x == 0 {
            return Err(Error::InvalidConnectionSet("identity in connection set".into()));
        }
        if set.binary_search(&table.inv(x)).is_err() {
            return Err(Error::InvalidConnectionSet(format!("inverse of element {x} missing")));
        }
    }
    let translations: Vec<Vec<u32>> = set.iter().map(|&x| table.left_translation(x)).collect();
    let lists = (0..n).map(|g| translations.iter().map(|t| t[g]).collect()).collect();
    Ok(CayleyGraph {
        graph: Graph::from_lists(lists),
        connection: set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::{Family, GroupSpec};
    use crate::table::DEFAULT_CAP;

    #[test]
    fn dimacs_roundtrip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        let text = g.to_dimacs();
        assert!(text.starts_with("p edge 4 4\n"));
        assert_eq!(Graph::from_dimacs(&text).unwrap(), g);
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_dimacs("e 1 2").is_err());
    }

    #[test]
    fn cayley_of_s3_with_all_involutions_is_k33() {
        let spec = GroupSpec::matrix(Family::SL, 2, Field::binary(1).unwrap()).unwrap();
        let t = ElementTable::enumerate(&spec, DEFAULT_CAP).unwrap();
        let c = build_cayley(&t, t.involutions()).unwrap();
        let g = &c.graph;
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        // bipartite with every cross pair adjacent
        let side: Vec<bool> = (0..6).map(|v| t.involutions().contains(&v)).collect();
        for u in 0..6 {
            for v in 0..6 {
                assert_eq!(g.has_edge(u, v), side[u as usize] != side[v as usize]);
            }
        }
        assert!(build_cayley(&t, &[0, t.involutions()[0]]).is_err());
    }

    #[test]
    fn cycles_from_a_single_pair() {
        let spec = GroupSpec::matrix(Family::SL, 3, Field::binary(1).unwrap()).unwrap();
        let t = ElementTable::enumerate(&spec, DEFAULT_CAP).unwrap();
        let x = (1..t.len() as u32).find(|&i| t.order_of(i) == 7).unwrap();
        let c = build_cayley(&t, &[x, t.inv(x)]).unwrap();
        assert!((0..168).all(|v| c.graph.degree(v) == 2));
        assert!(!c.graph.is_connected());
        assert!(build_cayley(&t, &[x]).is_err());
    }
}
