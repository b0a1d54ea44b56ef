//! Exhaustive generation of small graphs with loops, one representative per
//! isomorphism class.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap};
use crate::guard::SizeGuard;
use crate::search::HomSearch;

/// Largest vertex count [`graphs_on`] will enumerate.
pub const MAX_ENUMERATED_ORDER: usize = 5;

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut index = vec![vec![0; n]; n];
    let mut next = 0;
    for i in 0..n {
        for j in i..n {
            index[i][j] = next;
            index[j][i] = next;
            next += 1;
        }
    }
    index
}

/// All graphs on exactly `n` vertices (labelled `0..n`), loops allowed, one per
/// isomorphism class. Each representative is the labelling whose edge bitmask
/// is smallest.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATED_ORDER {
        return Err(Error::GuardExceeded {
            bound: format!("all graphs on {n} vertices"),
            cap: MAX_ENUMERATED_ORDER as u128,
        });
    }
    let index = pair_index(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    // For each permutation, where each pair bit moves to.
    let moves: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|perm| pairs.iter().map(|&(i, j)| index[perm[i]][perm[j]]).collect())
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let canonical = moves.iter().all(|mv| {
            let mut image = 0u32;
            for (bit, &to) in mv.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    image |= 1 << to;
                }
            }
            image >= mask
        });
        if canonical {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &p)| p);
            out.push(Graph::assemble((0..n).map(|i| i.to_string()).collect(), edges).0);
        }
    }
    Ok(out)
}

/// All graphs on at most `max` vertices, including the empty graph.
pub fn graphs_up_to(max: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 0..=max {
        out.extend(graphs_on(n)?);
    }
    Ok(out)
}

pub fn connected_graphs_up_to(max: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to(max)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// Every graph map `a → b`, in lexicographic order of image vectors.
pub fn homomorphisms(a: &Arc<Graph>, b: &Arc<Graph>, guard: &SizeGuard) -> Result<Vec<GraphMap>> {
    guard.check_power(b.order(), a.order())?;
    Ok(HomSearch::new(a, b)
        .all()
        .into_iter()
        .map(|images| GraphMap::from_images_unchecked(a.clone(), b.clone(), images))
        .collect())
}
