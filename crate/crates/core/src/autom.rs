//! Automorphism group order by individualization and refinement.
//!
//! The search follows one path of individualizations down to a discrete
//! partition. At level i the stabilizer of the first i chosen vertices acts on
//! the target cell; the orbit of the chosen vertex is found by testing every
//! other candidate for a leaf equivalent to the first leaf, skipping candidates
//! already joined to it by known automorphisms. |Aut| is the product of the
//! orbit lengths.
//!
//! Refinement is the usual equitable refinement with a splitter queue
//! ("all but the largest" rule). Each refinement produces a trace hash and a
//! cell count; a node whose trace differs from the first path at the same depth
//! cannot be the image of the first path under an automorphism and is pruned.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Radius of the distance signature used to colour the root partition.
pub const SIGNATURE_RADIUS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutResult {
    pub order: BigUint,
    /// Automorphisms found during the search (known automorphisms excluded).
    pub generators: Vec<Vec<u32>>,
    /// Orbit lengths along the first path, root first.
    pub orbit_lengths: Vec<u64>,
    /// Search nodes visited.
    pub nodes: u64,
}

#[derive(Debug, Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// vertex -> start of its cell
    cell: Vec<u32>,
    /// cell start -> cell end (exclusive); meaningful at cell starts only
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    /// Cells ordered by the given colour key (ascending).
    fn from_colours(colours: &[u64]) -> Partition {
        let n = colours.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colours[v as usize], v));
        let mut p = Partition {
            pos: vec![0; n],
            cell: vec![0; n],
            end: vec![0; n],
            lab,
            cells: 0,
        };
        let mut start = 0;
        while start < n {
            let c = colours[p.lab[start] as usize];
            let mut end = start;
            while end < n && colours[p.lab[end] as usize] == c {
                end += 1;
            }
            for i in start..end {
                let v = p.lab[i] as usize;
                p.pos[v] = i as u32;
                p.cell[v] = start as u32;
            }
            p.end[start] = end as u32;
            p.cells += 1;
            start = end;
        }
        p
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.lab.len() as u32;
        let mut s = 0u32;
        core::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s = self.end[s as usize];
            Some(cur)
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for s in self.cell_starts() {
            let size = self.end[s as usize] - s;
            if size > 1 && best.map_or(true, |(_, b)| size < b) {
                best = Some((s, size));
            }
        }
        best.map(|(s, _)| s)
    }

    fn cell_members(&self, start: u32) -> &[u32] {
        &self.lab[start as usize..self.end[start as usize] as usize]
    }

    /// Split `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: u32) -> u32 {
        let c = self.cell[v as usize];
        let end = self.end[c as usize];
        let pv = self.pos[v as usize];
        let first = self.lab[c as usize];
        self.lab.swap(c as usize, pv as usize);
        self.pos[first as usize] = pv;
        self.pos[v as usize] = c;
        self.end[c as usize] = c + 1;
        self.end[c as usize + 1] = end;
        for i in c + 1..end {
            self.cell[self.lab[i as usize] as usize] = c + 1;
        }
        self.cells += 1;
        c
    }
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17) ^ (x >> 7)
}

struct Refiner<'g> {
    g: &'g Graph,
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        Refiner {
            g,
            count: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn push(&mut self, cell: u32) {
        if !self.in_queue[cell as usize] {
            self.in_queue[cell as usize] = true;
            self.queue.push_back(cell);
        }
    }

    /// Refine to the coarsest equitable partition finer than `p`; returns the trace.
    fn refine(&mut self, p: &mut Partition, seed: u64) -> u64 {
        let mut trace = seed;
        let mut cells: Vec<u32> = Vec::new();
        while let Some(w) = self.queue.pop_front() {
            self.in_queue[w as usize] = false;
            self.touched.clear();
            for i in w..p.end[w as usize] {
                let v = p.lab[i as usize];
                for &u in self.g.neighbors(v) {
                    if self.count[u as usize] == 0 {
                        self.touched.push(u);
                    }
                    self.count[u as usize] += 1;
                }
            }
            cells.clear();
            cells.extend(self.touched.iter().map(|&u| p.cell[u as usize]));
            cells.sort_unstable();
            cells.dedup();
            trace = mix(trace, w as u64 | (self.touched.len() as u64) << 32);
            for &c in &cells {
                let (cs, ce) = (c as usize, p.end[c as usize] as usize);
                let count = &self.count;
                let k0 = count[p.lab[cs] as usize];
                if p.lab[cs..ce].iter().all(|&v| count[v as usize] == k0) {
                    trace = mix(trace, (c as u64) << 20 ^ k0 as u64);
                    continue;
                }
                p.lab[cs..ce].sort_unstable_by_key(|&v| (count[v as usize], v));
                let mut pieces: Vec<(usize, usize)> = Vec::new();
                let mut s = cs;
                while s < ce {
                    let k = count[p.lab[s] as usize];
                    let mut e = s;
                    while e < ce && count[p.lab[e] as usize] == k {
                        e += 1;
                    }
                    trace = mix(trace, (s as u64) << 40 ^ (k as u64) << 20 ^ (e - s) as u64);
                    pieces.push((s, e));
                    s = e;
                }
                for &(s, e) in &pieces {
                    p.end[s] = e as u32;
                    for i in s..e {
                        let v = p.lab[i] as usize;
                        p.pos[v] = i as u32;
                        p.cell[v] = s as u32;
                    }
                }
                p.cells += pieces.len() - 1;
                if self.in_queue[c as usize] {
                    for &(s, _) in &pieces[1..] {
                        self.push(s as u32);
                    }
                } else {
                    let largest = pieces.iter().enumerate().fold(0, |best, (i, &(s, e))| {
                        if e - s > pieces[best].1 - pieces[best].0 {
                            i
                        } else {
                            best
                        }
                    });
                    for (i, &(s, _)) in pieces.iter().enumerate() {
                        if i != largest {
                            self.push(s as u32);
                        }
                    }
                }
            }
            for &u in &self.touched {
                self.count[u as usize] = 0;
            }
        }
        mix(trace, p.cells as u64)
    }
}

/// Number of vertices at distance 1..=radius from each vertex, packed into a colour.
fn distance_signatures(g: &Graph, radius: usize) -> Vec<u64> {
    let n = g.vertex_count();
    let mut stamp = vec![u32::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    (0..n as u32)
        .map(|v| {
            stamp[v as usize] = v;
            frontier.clear();
            frontier.push(v);
            let mut sig = g.degree(v) as u64;
            for _ in 0..radius {
                next.clear();
                for &u in &frontier {
                    for &w in g.neighbors(u) {
                        if stamp[w as usize] != v {
                            stamp[w as usize] = v;
                            next.push(w);
                        }
                    }
                }
                sig = mix(sig, next.len() as u64);
                core::mem::swap(&mut frontier, &mut next);
                if frontier.is_empty() {
                    break;
                }
            }
            sig
        })
        .collect()
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }

    fn absorb(&mut self, perm: &[u32]) {
        for (v, &w) in perm.iter().enumerate() {
            self.union(v as u32, w);
        }
    }
}

struct Search<'g, 'b, B: Budget> {
    g: &'g Graph,
    refiner: Refiner<'g>,
    budget: &'b mut B,
    nodes: u64,
    /// (trace, cells) per depth along the first path
    first: Vec<(u64, usize)>,
    first_leaf: Vec<u32>,
}

impl<'g, 'b, B: Budget> Search<'g, 'b, B> {
    fn charge(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.budget.charge(1) {
            Ok(())
        } else {
            Err(Error::BudgetExceeded(alloc::format!(
                "automorphism search stopped after {} nodes",
                self.nodes
            )))
        }
    }
}

/// |Aut(g)| with no prior knowledge and no budget.
pub fn aut_order(g: &Graph) -> BigUint {
    automorphism_group(g, &[], &mut crate::budget::NodeBudget::unlimited())
        .expect("unlimited budget")
        .order
}

/// |Aut(g)| together with the automorphisms found.
///
/// `known` may list automorphisms the caller already has (for a Cayley graph,
/// the right translations by generators); each is verified before use.
pub fn automorphism_group<B: Budget>(g: &Graph, known: &[Vec<u32>], budget: &mut B) -> Result<AutResult> {
    let n = g.vertex_count();
    for k in known {
        if !g.is_automorphism(k) {
            return Err(Error::Mismatch("supplied permutation is not an automorphism".into()));
        }
    }
    if n == 0 {
        return Ok(AutResult {
            order: BigUint::one(),
            generators: Vec::new(),
            orbit_lengths: Vec::new(),
            nodes: 0,
        });
    }
    let mut refiner = Refiner::new(g);
    let mut root = Partition::from_colours(&distance_signatures(g, SIGNATURE_RADIUS));
    for s in root.cell_starts().collect::<Vec<_>>() {
        refiner.push(s);
    }
    let root_trace = refiner.refine(&mut root, 0);

    // first path
    let mut path: Vec<Partition> = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    let mut first = vec![(root_trace, root.cells)];
    let mut p = root;
    let mut nodes = 1u64;
    if !budget.charge(1) {
        return Err(Error::BudgetExceeded("automorphism search stopped at the root".into()));
    }
    while let Some(t) = p.target_cell() {
        let v = p.lab[t as usize];
        let mut q = p.clone();
        let s = q.individualize(v);
        refiner.push(s);
        let trace = refiner.refine(&mut q, path.len() as u64 + 1);
        first.push((trace, q.cells));
        path.push(p);
        chosen.push(v);
        p = q;
        nodes += 1;
        if !budget.charge(1) {
            return Err(Error::BudgetExceeded(
                "automorphism search stopped on the first path".into(),
            ));
        }
    }
    let first_leaf = p.lab.clone();

    let mut search = Search {
        g,
        refiner,
        budget,
        nodes,
        first,
        first_leaf,
    };
    let mut generators: Vec<Vec<u32>> = Vec::new();
    let mut orbit_lengths = vec![1u64; path.len()];
    for level in (0..path.len()).rev() {
        let prefix = &chosen[..level];
        let mut uf = UnionFind::new(n);
        for a in known.iter().chain(generators.iter()) {
            if prefix.iter().all(|&v| a[v as usize] == v) {
                uf.absorb(a);
            }
        }
        let v = chosen[level];
        let cell: Vec<u32> = path[level].cell_members(path[level].cell[v as usize]).to_vec();
        let mut failed: Vec<u32> = Vec::new();
        for &w in &cell {
            let rw = uf.find(w);
            if rw == uf.find(v) || failed.iter().any(|&f| uf.find(f) == rw) {
                continue;
            }
            match search.probe(&path[level], w, level)? {
                Some(aut) => {
                    uf.absorb(&aut);
                    generators.push(aut);
                }
                None => failed.push(w),
            }
        }
        let root_v = uf.find(v);
        orbit_lengths[level] = cell.iter().filter(|&&w| uf.find(w) == root_v).count() as u64;
    }
    let order = orbit_lengths.iter().fold(BigUint::one(), |acc, &o| acc * o);
    Ok(AutResult {
        order,
        generators,
        orbit_lengths,
        nodes: search.nodes,
    })
}

impl<'g, 'b, B: Budget> Search<'g, 'b, B> {
    /// An automorphism fixing the level's prefix and mapping the first path's choice to `w`, if any.
    fn probe(&mut self, parent: &Partition, w: u32, level: usize) -> Result<Option<Vec<u32>>> {
        self.descend(parent, w, level)
    }

    fn descend(&mut self, parent: &Partition, w: u32, depth: usize) -> Result<Option<Vec<u32>>> {
        self.charge()?;
        let mut q = parent.clone();
        let s = q.individualize(w);
        self.refiner.push(s);
        let trace = self.refiner.refine(&mut q, depth as u64 + 1);
        if (trace, q.cells) != self.first[depth + 1] {
            return Ok(None);
        }
        if q.is_discrete() {
            let mut perm = vec![0u32; q.lab.len()];
            for (i, &a) in self.first_leaf.iter().enumerate() {
                perm[a as usize] = q.lab[i];
            }
            return Ok(if self.g.is_automorphism(&perm) {
                Some(perm)
            } else {
                None
            });
        }
        let t = q.target_cell().expect("non-discrete partition has a target");
        let members = q.cell_members(t).to_vec();
        for u in members {
            if let Some(a) = self.descend(&q, u, depth + 1)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::NodeBudget;

    fn cycle(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn classic_graphs() {
        assert_eq!(aut_order(&cycle(6)), BigUint::from(12u32));
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert_eq!(aut_order(&Graph::from_edges(6, &k33).unwrap()), BigUint::from(72u32));
        assert_eq!(aut_order(&petersen()), BigUint::from(120u32));
        assert_eq!(aut_order(&Graph::from_edges(4, &[]).unwrap()), BigUint::from(24u32));
        assert_eq!(aut_order(&Graph::from_edges(0, &[]).unwrap()), BigUint::one());
        // two disjoint triangles: (3!)^2 * 2
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(aut_order(&tt), BigUint::from(72u32));
    }

    #[test]
    fn path_has_a_flip() {
        let p = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = automorphism_group(&p, &[], &mut NodeBudget::unlimited()).unwrap();
        assert_eq!(r.order, BigUint::from(2u32));
        for a in &r.generators {
            assert!(p.is_automorphism(a));
        }
    }

    #[test]
    fn known_automorphisms_are_checked_and_used() {
        let c = cycle(8);
        let rot: Vec<u32> = (0..8).map(|i| (i + 1) % 8).collect();
        let r = automorphism_group(&c, &[rot.clone()], &mut NodeBudget::unlimited()).unwrap();
        assert_eq!(r.order, BigUint::from(16u32));
        let bad: Vec<u32> = vec![1, 0, 2, 3, 4, 5, 6, 7];
        assert!(automorphism_group(&c, &[bad], &mut NodeBudget::unlimited()).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let r = automorphism_group(&petersen(), &[], &mut NodeBudget::new(2));
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }
}
