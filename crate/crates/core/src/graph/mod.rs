//! Simple undirected graphs on a packed triangular bit matrix.
//!
//! The pair `{i, j}` with `i < j` lives at bit `j(j-1)/2 + i`, i.e. the upper
//! triangle in column-major order. This is the same bit order graph6 uses,
//! and it keeps each column `j` (the neighbours of `j` below `j`) contiguous,
//! so vertex deletion is a handful of range copies.

mod bits;
pub mod canon;
pub mod generate;
pub mod graph6;

pub use canon::{canonical_form, CanonicalForm, MAX_CANON_ORDER};
pub use generate::{gen_graph, Model};

use crate::error::{Error, Result};
use std::fmt;

#[inline]
fn column_base(j: usize) -> usize {
    j * j.saturating_sub(1) / 2
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (i, j) = if u < v { (u, v) } else { (v, u) };
    column_base(j) + i
}

/// Number of vertex pairs of a graph of order `n`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    column_base(n)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(order: usize) -> Self {
        Graph { order, bits: vec![0; bits::words_for(pair_count(order))] }
    }

    pub fn complete(order: usize) -> Self {
        Graph::empty(order).complement()
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(order: usize) -> Self {
        let mut g = Graph::empty(order);
        for v in 1..order {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; needs `order >= 3`.
    pub fn cycle(order: usize) -> Self {
        let mut g = Graph::path(order);
        if order >= 3 {
            g.set_edge(0, order - 1, true);
        }
        g
    }

    /// Star with centre 0.
    pub fn star(order: usize) -> Self {
        let mut g = Graph::empty(order);
        for v in 1..order {
            g.set_edge(0, v, true);
        }
        g
    }

    /// Disjoint union of cliques of the given sizes, vertices numbered part by part.
    pub fn clique_union(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut g = Graph::empty(n);
        let mut start = 0;
        for &p in parts {
            for j in start..start + p {
                for i in start..j {
                    g.set_edge(i, j, true);
                }
            }
            start += p;
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.order {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.order });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && bits::get(&self.bits, pair_index(u, v))
    }

    /// Panics on a self-loop or an out-of-range vertex.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.order && v < self.order, "vertex out of range");
        bits::set(&mut self.bits, pair_index(u, v), present);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        let present = self.has_edge(u, v);
        self.set_edge(u, v, !present);
    }

    pub fn edge_count(&self) -> u64 {
        self.bits.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!(v < self.order);
        let below = bits::count_range(&self.bits, column_base(v), v) as usize;
        let above = (v + 1..self.order).filter(|&u| bits::get(&self.bits, column_base(u) + v)).count();
        below + above
    }

    /// All vertex degrees in one pass over the set bits.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.order];
        for j in 1..self.order {
            let mut col = 0;
            bits::for_each_set(&self.bits, column_base(j), j, |i| {
                deg[i] += 1;
                col += 1;
            });
            deg[j] += col;
        }
        deg
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order).filter(|&u| self.has_edge(u, v)).collect()
    }

    /// Edges `(i, j)` with `i < j`, in storage order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.order {
            bits::for_each_set(&self.bits, column_base(j), j, |i| out.push((i, j)));
        }
        out
    }

    pub fn degree_spectrum(&self) -> DegreeSpectrum {
        DegreeSpectrum::from_degrees(self.order, &self.degrees())
    }

    pub fn complement(&self) -> Graph {
        let total = pair_count(self.order);
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        let tail = total & 63;
        if tail != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Graph { order: self.order, bits }
    }

    /// The card `G - v`: vertex `v` and its edges removed, the remaining
    /// vertices renumbered in their original relative order.
    pub fn card(&self, v: usize) -> Result<Graph> {
        if v >= self.order {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order });
        }
        let n = self.order;
        let mut out = Graph::empty(n - 1);
        // Columns 0..v are untouched and form a prefix of the storage.
        bits::copy_range(&self.bits, 0, &mut out.bits, 0, column_base(v));
        for j in v + 1..n {
            let src = column_base(j);
            let dst = column_base(j - 1);
            bits::copy_range(&self.bits, src, &mut out.bits, dst, v);
            bits::copy_range(&self.bits, src + v + 1, &mut out.bits, dst + v, j - v - 1);
        }
        Ok(out)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut out = Graph::empty(self.order);
        for (i, j) in self.edges() {
            out.set_edge(perm[i], perm[j], true);
        }
        out
    }

    /// Adjacency rows as bitmasks; only for `order <= 64`.
    pub(crate) fn rows64(&self) -> Vec<u64> {
        assert!(self.order <= 64);
        let mut rows = vec![0u64; self.order];
        for (i, j) in self.edges() {
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        rows
    }

    pub(crate) fn from_rows64(rows: &[u64]) -> Graph {
        let mut g = Graph::empty(rows.len());
        for j in 1..rows.len() {
            for i in 0..j {
                if rows[j] >> i & 1 == 1 {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Raw pair bits in graph6 order.
    pub(crate) fn pair_bit(&self, index: usize) -> bool {
        bits::get(&self.bits, index)
    }

    pub(crate) fn set_pair_bit(&mut self, index: usize) {
        bits::set(&mut self.bits, index, true);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.order, self.edges())
    }
}

/// `counts[t]` is the number of vertices of degree `t`, for `t` in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSpectrum {
    counts: Vec<u64>,
}

impl DegreeSpectrum {
    pub fn from_degrees(order: usize, degrees: &[usize]) -> Self {
        let mut counts = vec![0u64; order];
        for &d in degrees {
            counts[d] += 1;
        }
        DegreeSpectrum { counts }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        DegreeSpectrum { counts }
    }

    pub fn order(&self) -> usize {
        self.counts.len()
    }

    /// `d_t`, zero outside `0..n` (so `d_n = 0` and `d_{-1}` is never asked for).
    pub fn get(&self, t: usize) -> u64 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Twice the edge count: `sum t * d_t`.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().enumerate().map(|(t, &c)| t as u64 * c).sum()
    }

    /// Spectrum of the complement: index `t` maps to `n - 1 - t`.
    pub fn reflected(&self) -> DegreeSpectrum {
        let mut counts = self.counts.clone();
        counts.reverse();
        DegreeSpectrum { counts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_empty_is_complete() {
        let k5 = Graph::empty(5).complement();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5, Graph::complete(5));
    }

    #[test]
    fn complement_of_c4_is_perfect_matching() {
        // C_4 on 1-2-3-4 as 0-1-2-3
        let c4 = Graph::cycle(4);
        let m = c4.complement();
        assert_eq!(m.edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn p4_is_self_complementary_spectrum() {
        let p4 = Graph::path(4);
        assert_eq!(p4.degree_spectrum().counts(), &[0, 2, 2, 0]);
        assert_eq!(p4.complement().degree_spectrum().counts(), &[0, 2, 2, 0]);
        assert_eq!(p4.complement().degree_spectrum(), p4.degree_spectrum().reflected());
    }

    #[test]
    fn cards_of_small_graphs() {
        assert_eq!(Graph::complete(6).card(2).unwrap(), Graph::complete(5));
        // P_4 = 1-2-3-4, delete vertex 2 (index 1): K_1 + K_2
        let c = Graph::path(4).card(1).unwrap();
        assert_eq!(c.edges(), vec![(1, 2)]);
        assert_eq!(Graph::star(5).card(0).unwrap(), Graph::empty(4));
        assert!(matches!(Graph::path(3).card(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn spectra() {
        assert_eq!(Graph::complete(4).degree_spectrum().counts(), &[0, 0, 0, 4]);
        assert_eq!(Graph::empty(6).degree_spectrum().counts(), &[6, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn from_edges_rejects_bad_pairs() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn degree_agrees_with_degrees() {
        let g = Graph::from_edges(70, &[(0, 69), (3, 64), (64, 65), (1, 2), (0, 1)]).unwrap();
        let all = g.degrees();
        for v in 0..70 {
            assert_eq!(g.degree(v), all[v]);
        }
    }

    #[test]
    fn clique_union_counts() {
        assert_eq!(Graph::clique_union(&[4, 4, 2]).edge_count(), 13);
    }
}
