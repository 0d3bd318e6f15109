//! Extreme point generators.
//!
//! Each generator splits its work at the first recursion level so callers
//! can hand prefixes to different threads.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeIndexer, Family};
use crate::error::{invalid, Error};

/// Streaming extreme point generator for one polytope.
#[derive(Clone, Debug)]
pub struct Enumerator {
    indexer: EdgeIndexer,
    /// Set partitions of every mask below 2^n, blocks as masks (hypertrees only).
    partitions: Vec<Vec<Vec<u32>>>,
}

impl Enumerator {
    pub fn new(family: Family, n: usize, allow_large: bool) -> Result<Self, Error> {
        if n < family.min_n() {
            return Err(invalid(format!("{family} needs n >= {}", family.min_n())));
        }
        if n > family.ceiling() || (n > family.guard() && !allow_large) {
            return Err(Error::ResourceGuard(format!(
                "{family} enumeration at n = {n} exceeds the guard n <= {}",
                family.guard()
            )));
        }
        let indexer = EdgeIndexer::new(family, n)?;
        let partitions = if family == Family::Sthgp { all_partitions(n) } else { Vec::new() };
        Ok(Enumerator { indexer, partitions })
    }

    pub fn indexer(&self) -> &EdgeIndexer {
        &self.indexer
    }

    pub fn family(&self) -> Family {
        self.indexer.family()
    }

    pub fn n(&self) -> usize {
        self.indexer.n()
    }

    /// Number of independent work units.
    pub fn prefixes(&self) -> usize {
        let n = self.n();
        match self.family() {
            Family::Tsp => n - 1,
            Family::Stgp => {
                if n <= 2 {
                    1
                } else {
                    n
                }
            }
            Family::Sthgp => self.partitions[((1u32 << n) - 2) as usize].len(),
        }
    }

    /// Visit every point, one prefix after another.
    pub fn visit(&self, f: &mut dyn FnMut(&[u64])) {
        for p in 0..self.prefixes() {
            self.visit_prefix(p, f);
        }
    }

    /// Visit the points belonging to one work unit.
    pub fn visit_prefix(&self, prefix: usize, f: &mut dyn FnMut(&[u64])) {
        let mut bits = vec![0u64; self.indexer.words()];
        match self.family() {
            Family::Tsp => self.tours(prefix, &mut bits, f),
            Family::Stgp => self.cayley(prefix, &mut bits, f),
            Family::Sthgp => self.hypertrees(prefix, &mut bits, f),
        }
    }

    fn tours(&self, prefix: usize, bits: &mut [u64], f: &mut dyn FnMut(&[u64])) {
        let n = self.n();
        let second = prefix + 1;
        if second == n - 1 {
            // the last vertex must exceed the second
            return;
        }
        let mut path = vec![0usize, second];
        let used = 1u32 | 1 << second;
        toggle(&self.indexer, bits, 0, second);
        self.extend_tour(&mut path, used, bits, f);
    }

    fn extend_tour(&self, path: &mut Vec<usize>, used: u32, bits: &mut [u64], f: &mut dyn FnMut(&[u64])) {
        let n = self.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            if last > path[1] {
                toggle(&self.indexer, bits, last, 0);
                f(bits);
                toggle(&self.indexer, bits, last, 0);
            }
            return;
        }
        for v in 1..n {
            if used >> v & 1 == 1 {
                continue;
            }
            if path.len() == n - 1 && v < path[1] {
                continue;
            }
            toggle(&self.indexer, bits, last, v);
            path.push(v);
            self.extend_tour(path, used | 1 << v, bits, f);
            path.pop();
            toggle(&self.indexer, bits, last, v);
        }
    }

    fn cayley(&self, prefix: usize, bits: &mut [u64], f: &mut dyn FnMut(&[u64])) {
        let n = self.n();
        if n == 2 {
            self.indexer.encode(&[0b11], bits);
            f(bits);
            return;
        }
        let len = n - 2;
        let mut seq = vec![0usize; len];
        seq[0] = prefix;
        let mut edges = Vec::with_capacity(n - 1);
        let mut degree = vec![0usize; n];
        loop {
            prufer_decode(&seq, n, &mut degree, &mut edges);
            self.indexer.encode(&edges, bits);
            f(bits);
            // odometer over positions 1..len
            let mut pos = len;
            loop {
                if pos == 1 {
                    return;
                }
                pos -= 1;
                seq[pos] += 1;
                if seq[pos] < n {
                    break;
                }
                seq[pos] = 0;
            }
        }
    }

    fn hypertrees(&self, prefix: usize, bits: &mut [u64], f: &mut dyn FnMut(&[u64])) {
        let n = self.n();
        let full = (1u32 << n) - 1;
        let mut pending = Vec::new();
        let mut edges = Vec::new();
        let mut emit = |edges: &[u32]| {
            self.indexer.encode(edges, bits);
            f(bits);
        };
        let blocks = &self.partitions[(full & !1) as usize][prefix];
        self.attach_blocks(1, blocks, &mut pending, &mut edges, &mut emit);
    }

    /// Trees spanning every pending vertex set; the current set is rooted at its minimum.
    fn span(&self, pending: &mut Vec<u32>, edges: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
        let Some(u) = pending.pop() else {
            emit(edges);
            return;
        };
        if u.count_ones() == 1 {
            self.span(pending, edges, emit);
        } else {
            let root = u & u.wrapping_neg();
            for blocks in &self.partitions[(u ^ root) as usize] {
                self.attach_blocks(root, blocks, pending, edges, emit);
            }
        }
        pending.push(u);
    }

    /// Components left after deleting `root`: choose the vertex of each block
    /// that meets a root edge, then group blocks into root edges.
    fn attach_blocks(
        &self,
        root: u32,
        blocks: &[u32],
        pending: &mut Vec<u32>,
        edges: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        let j = blocks.len();
        let mut choice: Vec<u32> = blocks.iter().map(|b| b & b.wrapping_neg()).collect();
        loop {
            for groups in &self.partitions[((1u32 << j) - 1) as usize] {
                let edge_base = edges.len();
                for &g in groups {
                    let mut e = root;
                    let mut rest = g;
                    while rest != 0 {
                        e |= choice[rest.trailing_zeros() as usize];
                        rest &= rest - 1;
                    }
                    edges.push(e);
                }
                let pending_base = pending.len();
                pending.extend_from_slice(blocks);
                self.span(pending, edges, emit);
                pending.truncate(pending_base);
                edges.truncate(edge_base);
            }
            if !next_choice(&mut choice, blocks) {
                break;
            }
        }
    }
}

fn toggle(indexer: &EdgeIndexer, bits: &mut [u64], u: usize, v: usize) {
    let i = indexer.index_of(1 << u | 1 << v).unwrap();
    bits[i / 64] ^= 1 << (i % 64);
}

/// Advance a per-block vertex choice to the next higher set bit, odometer style.
fn next_choice(choice: &mut [u32], blocks: &[u32]) -> bool {
    for (c, &b) in choice.iter_mut().zip(blocks) {
        let higher = b & !((*c << 1) - 1);
        if higher != 0 {
            *c = higher & higher.wrapping_neg();
            return true;
        }
        *c = b & b.wrapping_neg();
    }
    false
}

fn prufer_decode(seq: &[usize], n: usize, degree: &mut [usize], edges: &mut Vec<u32>) {
    edges.clear();
    degree.fill(1);
    for &s in seq {
        degree[s] += 1;
    }
    for &s in seq {
        let leaf = degree.iter().position(|&d| d == 1).unwrap();
        edges.push(1 << leaf | 1 << s);
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let (a, b) = (last.next().unwrap(), last.next().unwrap());
    edges.push(1 << a | 1 << b);
}

/// Set partitions (as block masks) of every mask below 2^n.
fn all_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    let size = 1usize << n;
    let mut out: Vec<Vec<Vec<u32>>> = Vec::with_capacity(size);
    out.push(vec![Vec::new()]);
    for mask in 1..size as u32 {
        // block holding the lowest element, then a partition of what remains
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut parts = Vec::new();
        let mut sub = rest;
        loop {
            let block = low | sub;
            for p in &out[(rest ^ sub) as usize] {
                let mut v = Vec::with_capacity(p.len() + 1);
                v.push(block);
                v.extend_from_slice(p);
                parts.push(v);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out.push(parts);
    }
    out
}

/// Connected and acyclic: union-find over edge vertices plus the edge-material count.
pub fn is_hypertree(n: usize, edges: &[u32]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut material = 0;
    for &e in edges {
        if e.count_ones() < 2 || e >> n != 0 {
            return false;
        }
        material += e.count_ones() as usize - 1;
        let first = e.trailing_zeros() as usize;
        let mut rest = e & (e - 1);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = (find(&mut parent, first), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    material == n - 1 && (1..n).all(|v| find(&mut parent, v) == root)
}
