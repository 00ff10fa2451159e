//! Minimal hitting sets of a hypergraph on at most 64 vertices.
//!
//! Berge's incremental scheme: process edges one at a time, extending every
//! current transversal that misses the new edge by each vertex of that edge,
//! and prune anything that contains another transversal.

use crate::algebra::{Event, HistorySpace};
use crate::error::{Error, Result};

fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Keeps only the inclusion-minimal masks, deduplicated, sorted by popcount.
fn minimal_only(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|m| (m.count_ones(), *m));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| is_subset(k, s)) {
            kept.push(s);
        }
    }
    kept
}

pub(crate) fn minimal_transversal_masks(edges: &[u64]) -> Result<Vec<u64>> {
    if edges.contains(&0) {
        return Err(Error::EmptyEdge);
    }
    // Supersets of another edge are hit automatically.
    let edges = minimal_only(edges.to_vec());
    let mut current = vec![0u64];
    for &edge in &edges {
        let (hit, miss): (Vec<u64>, Vec<u64>) = current.into_iter().partition(|t| t & edge != 0);
        let mut next = hit.clone();
        for t in miss {
            let mut bits = edge;
            while bits != 0 {
                let candidate = t | (bits & bits.wrapping_neg());
                bits &= bits - 1;
                if !hit.iter().any(|&h| is_subset(h, candidate)) {
                    next.push(candidate);
                }
            }
        }
        current = minimal_only(next);
    }
    Ok(current)
}

/// All inclusion-minimal events meeting every edge, in canonical order.
///
/// An empty edge list yields `[∅]`; an empty edge is an error.
pub fn minimal_transversals(space: &HistorySpace, edges: &[Event]) -> Result<Vec<Event>> {
    if space.len() > 64 {
        return Err(Error::CapExceeded {
            what: "transversal search",
            size: space.len(),
            cap: 64,
        });
    }
    for e in edges {
        space.ensure_same(e.space())?;
    }
    let masks: Vec<u64> = edges.iter().map(|e| e.mask().expect("n <= 64")).collect();
    let mut out: Vec<Event> = minimal_transversal_masks(&masks)?
        .into_iter()
        .map(|m| Event::from_mask(space, m))
        .collect();
    out.sort();
    Ok(out)
}
