//! Canonical forms by individualization-refinement.
//!
//! Each search node holds an ordered partition of the vertices, refined to
//! be equitable. A node that is not discrete individualizes each vertex of
//! its first non-singleton cell in turn. At a leaf (a discrete partition),
//! the certificate is the graph relabelled by cell position. The canonical
//! form is the largest certificate.
//!
//! Pruning uses the automorphisms found when two leaves give the same
//! certificate:
//!
//! * a leaf equivalent to the first or the best leaf makes the search jump
//!   back to the depth where the two paths diverge, because the automorphism
//!   maps the earlier subtree onto the current one;
//! * children of a node are skipped when they share an orbit, under the
//!   automorphisms that fix the node's individualized vertices, with a child
//!   already explored.
//!
//! Both prunings only discard subtrees whose certificates already occur, so
//! the result is exact. Orders up to [`MAX_CANON_ORDER`] are supported
//! (vertex sets are `u64` masks).

use super::{graph6, Graph};
use crate::error::{Error, Result};

pub const MAX_CANON_ORDER: usize = 64;

/// graph6 bytes of the canonically relabelled graph. Equal iff isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical representative as a graph6 string.
    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(self.as_graph6()).expect("canonical form holds valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// Canonical form plus the labeling `lab` (position -> vertex) that produced it.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::Unsupported { what: "canonical form", order: n, limit: MAX_CANON_ORDER });
    }
    if n == 0 {
        return Ok((CanonicalForm(graph6::encode(g).into_bytes()), vec![]));
    }
    let rows = g.rows64();
    let mut search = Search { rows: &rows, n, first: None, best: None, generators: Vec::new() };
    let root = if n == 64 { vec![u64::MAX] } else { vec![(1u64 << n) - 1] };
    let mut path = Vec::new();
    search.descend(root, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    let graph = Graph::from_rows64(&best.cert);
    Ok((CanonicalForm(graph6::encode(&graph).into_bytes()), best.lab))
}

struct Leaf {
    path: Vec<usize>,
    lab: Vec<usize>,
    cert: Vec<u64>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as vertex maps.
    generators: Vec<Vec<usize>>,
}

fn cell_members(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Refines `cells` to the coarsest equitable partition below it. Fragments of
/// a split cell are ordered by their neighbour count into the splitter, which
/// keeps the procedure label-invariant.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter = cells[w];
            let mut next = Vec::with_capacity(cells.len() + 1);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in cell_members(cell) {
                    let c = (rows[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(k, _)| *k == c) {
                        Some((_, m)) => *m |= 1 << v,
                        None => groups.push((c, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    changed = true;
                    groups.sort_unstable_by_key(|&(k, _)| k);
                }
                next.extend(groups.into_iter().map(|(_, m)| m));
            }
            *cells = next;
            w += 1;
        }
        if !changed {
            break;
        }
    }
}

fn certificate(rows: &[u64], lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    lab.iter()
        .map(|&v| cell_members(rows[v]).fold(0u64, |acc, u| acc | 1 << pos[u]))
        .collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    /// Returns `Some(depth)` when the caller chain should unwind to `depth`.
    fn descend(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.rows, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for v in cell_members(cells[target]) {
            if !explored.is_empty() && self.same_orbit_as_explored(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cells[target] & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn same_orbit_as_explored(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..self.n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = certificate(self.rows, &lab);
        let leaf = Leaf { path: path.to_vec(), lab, cert };
        let Some(first) = &self.first else {
            self.first = Some(Leaf { path: leaf.path.clone(), lab: leaf.lab.clone(), cert: leaf.cert.clone() });
            self.best = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let jump = common_prefix(&leaf.path, &first.path);
            let gamma = automorphism(&first.lab, &leaf.lab);
            self.generators.push(gamma);
            return Some(jump);
        }
        let best = self.best.as_ref().expect("best is set with first");
        if leaf.cert == best.cert {
            let jump = common_prefix(&leaf.path, &best.path);
            let gamma = automorphism(&best.lab, &leaf.lab);
            self.generators.push(gamma);
            return Some(jump);
        }
        if leaf.cert > best.cert {
            self.best = Some(leaf);
        }
        None
    }
}

/// Vertex map sending `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}
