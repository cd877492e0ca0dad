//! Subgraph counts from a full deck, and degree completion from star counts.
//!
//! Counts are of subgraphs, not induced subgraphs: a copy of `H` in `G` is a
//! vertex subset together with an edge subset forming a graph isomorphic to `H`.

use crate::deck::PartialDeck;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_PATTERN_ORDER: usize = 5;

/// Number of injective maps `V(h) -> V(g)` sending edges to edges.
fn embeddings(g: &Graph, h: &Graph) -> u64 {
    fn go(g: &Graph, h: &Graph, placed: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let i = placed.len();
        if i == h.order() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.order() {
            if used[v] || !(0..i).all(|j| !h.has_edge(i, j) || g.has_edge(v, placed[j])) {
                continue;
            }
            used[v] = true;
            placed.push(v);
            total += go(g, h, placed, used);
            placed.pop();
            used[v] = false;
        }
        total
    }
    go(g, h, &mut Vec::with_capacity(h.order()), &mut vec![false; g.order()])
}

/// Number of subgraphs of `g` isomorphic to `h`, for `h` on at most five vertices.
pub fn subgraph_count(g: &Graph, h: &Graph) -> Result<u64> {
    if h.order() > MAX_PATTERN_ORDER {
        return Err(Error::Unsupported { what: "subgraph pattern", order: h.order(), limit: MAX_PATTERN_ORDER });
    }
    Ok(embeddings(g, h) / embeddings(h, h))
}

/// Kelly's count: every copy of `h` avoids exactly `n - |V(h)|` vertices, so
/// it appears on that many cards.
pub fn kelly_count(deck: &PartialDeck, h: &Graph) -> Result<u64> {
    let n = deck.original_order();
    if deck.missing() != 0 {
        return Err(Error::InvalidParameter(format!("Kelly count needs the full deck, {} cards missing", deck.missing())));
    }
    if h.order() >= n {
        return Err(Error::InvalidParameter(format!("pattern order {} not below n = {n}", h.order())));
    }
    let mut total = 0;
    for card in deck.graphs() {
        total += subgraph_count(card, h)?;
    }
    let divisor = (n - h.order()) as u64;
    if total % divisor != 0 {
        return Err(Error::InconsistentDeck(format!("card total {total} not divisible by {divisor}")));
    }
    Ok(total / divisor)
}

fn binomial(x: u64, j: u64) -> u64 {
    if x < j {
        return 0;
    }
    (0..j).fold(1u64, |acc, i| acc * (x - i) / (i + 1))
}

pub const MAX_UNKNOWN_DEGREES: usize = 3;

/// Completes a degree multiset with up to three unknown entries.
///
/// The star `K_{1,j}` has `sum_v C(d(v), j)` copies for `j >= 2`, and half of
/// that for `j = 1` since `K_{1,1} = K_2` is counted once per edge rather than
/// once per endpoint. Star counts for `j = 1..=u+1`, less the known vertices'
/// share, pin down the `u` unknown degrees.
pub fn complete_degrees_via_stars(deck: &PartialDeck, known: &[usize], m: u64) -> Result<Vec<usize>> {
    let n = deck.original_order();
    if known.len() > n {
        return Err(Error::InvalidParameter(format!("{} known degrees for n = {n}", known.len())));
    }
    let unknown = n - known.len();
    if unknown > MAX_UNKNOWN_DEGREES {
        return Err(Error::InvalidParameter(format!("{unknown} unknown degrees, at most {MAX_UNKNOWN_DEGREES} supported")));
    }
    let mut residual = Vec::with_capacity(unknown + 1);
    for j in 1..=unknown as u64 + 1 {
        if j as usize + 1 >= n {
            // The star does not fit on a card; fewer equations remain.
            break;
        }
        let copies = kelly_count(deck, &Graph::star(j as usize + 1))?;
        let target = if j == 1 {
            if copies != m {
                return Err(Error::InconsistentDeck(format!("deck has {copies} edges, expected {m}")));
            }
            2 * m
        } else {
            copies
        };
        let known_part: u64 = known.iter().map(|&d| binomial(d as u64, j)).sum();
        let r = target
            .checked_sub(known_part)
            .ok_or_else(|| Error::InconsistentDeck(format!("known degrees exceed the star count for j = {j}")))?;
        residual.push((j, r));
    }
    let mut solutions = Vec::new();
    let mut tuple = Vec::with_capacity(unknown);
    search(n, unknown, 0, &mut tuple, &residual, &mut solutions);
    match solutions.len() {
        0 => Err(Error::InconsistentDeck("no degrees fit the star counts".into())),
        1 => {
            let mut out: Vec<usize> = known.iter().copied().chain(solutions.pop().unwrap()).collect();
            out.sort_unstable();
            Ok(out)
        }
        _ => Err(Error::Ambiguous(format!("{} degree completions fit the star counts", solutions.len()))),
    }
}

/// Nondecreasing tuples in `0..n` whose binomial sums match `residual`.
fn search(n: usize, len: usize, from: usize, tuple: &mut Vec<usize>, residual: &[(u64, u64)], out: &mut Vec<Vec<usize>>) {
    if tuple.len() == len {
        let fits = residual.iter().all(|&(j, r)| tuple.iter().map(|&d| binomial(d as u64, j)).sum::<u64>() == r);
        if fits {
            out.push(tuple.clone());
        }
        return;
    }
    for d in from..n {
        tuple.push(d);
        search(n, len, d, tuple, residual, out);
        tuple.pop();
    }
}
