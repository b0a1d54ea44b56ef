use std::sync::Arc;

use super::{Graph, GraphMap};

fn profile(g: &Graph, v: usize) -> (usize, bool) {
    (g.neighbors(v).len(), g.is_looped(v))
}

/// Finds an isomorphism `g → h` by backtracking over vertices in canonical
/// order, pruning on (degree, looped) profiles.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<GraphMap> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() || g.loop_count() != h.loop_count() {
        return None;
    }
    let mut pg: Vec<_> = (0..n).map(|v| profile(g, v)).collect();
    let mut ph: Vec<_> = (0..n).map(|v| profile(h, v)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| pg[v] == ph[w]).collect())
        .collect();
    pg.sort_unstable();
    ph.sort_unstable();
    if pg != ph {
        return None;
    }

    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &candidates, 0, &mut images, &mut used) {
        Some(GraphMap::from_images_unchecked(
            Arc::new(g.clone()),
            Arc::new(h.clone()),
            images,
        ))
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    h: &Graph,
    candidates: &[Vec<usize>],
    v: usize,
    images: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == g.order() {
        return true;
    }
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = (0..v).all(|u| g.adjacent(u, v) == h.adjacent(images[u], w));
        if !consistent {
            continue;
        }
        images[v] = w;
        used[w] = true;
        if extend(g, h, candidates, v + 1, images, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
