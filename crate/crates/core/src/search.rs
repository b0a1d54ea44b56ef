//! Backtracking enumeration of graph homomorphisms under per-vertex
//! candidate restrictions.
//!
//! Domain vertices are assigned in canonical order and candidates are tried
//! in ascending order, so the first solution found is the lexicographically
//! smallest one.

use std::ops::ControlFlow;

use crate::graph::Graph;

pub(crate) struct HomSearch<'a> {
    domain: &'a Graph,
    codomain: &'a Graph,
    candidates: Vec<Vec<usize>>,
    back_edges: Vec<Vec<usize>>,
}

fn back_edges(domain: &Graph) -> Vec<Vec<usize>> {
    (0..domain.order())
        .map(|v| domain.neighbors(v).iter().copied().take_while(|&u| u <= v).collect())
        .collect()
}

impl<'a> HomSearch<'a> {
    /// Every codomain vertex is a candidate for every domain vertex.
    pub fn new(domain: &'a Graph, codomain: &'a Graph) -> Self {
        let all: Vec<usize> = (0..codomain.order()).collect();
        Self {
            domain,
            codomain,
            candidates: vec![all; domain.order()],
            back_edges: back_edges(domain),
        }
    }

    pub fn with_candidates(domain: &'a Graph, codomain: &'a Graph, candidates: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(candidates.len(), domain.order());
        Self {
            domain,
            codomain,
            candidates,
            back_edges: back_edges(domain),
        }
    }

    pub fn fix(&mut self, v: usize, image: usize) {
        self.candidates[v] = vec![image];
    }

    /// Drops candidates not adjacent to the forced image of a neighbour.
    /// Repeats until no list shrinks to a new singleton.
    pub fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for v in 0..self.domain.order() {
                if self.candidates[v].len() != 1 {
                    continue;
                }
                let w = self.candidates[v][0];
                for &u in self.domain.neighbors(v) {
                    let before = self.candidates[u].len();
                    let codomain = self.codomain;
                    self.candidates[u].retain(|&x| codomain.adjacent(w, x));
                    let after = self.candidates[u].len();
                    if after == 1 && before > 1 {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn candidate_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.candidates.iter().map(Vec::len)
    }

    pub fn for_each<B>(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<B>) -> Option<B> {
        if self.candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let mut images = vec![usize::MAX; self.domain.order()];
        match self.descend(0, &mut images, &mut visit) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn descend<B>(
        &self,
        v: usize,
        images: &mut [usize],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if v == images.len() {
            return visit(images);
        }
        for &w in &self.candidates[v] {
            images[v] = w;
            let ok = self.back_edges[v].iter().all(|&u| self.codomain.adjacent(images[u], w));
            if ok {
                self.descend(v + 1, images, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<Vec<usize>> {
        self.for_each(|images| ControlFlow::Break(images.to_vec()))
    }

    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each::<()>(|images| {
            out.push(images.to_vec());
            ControlFlow::Continue(())
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_homomorphisms() {
        // Proper 3-colourings of C5: 2^5 - 2 = 30.
        let maps = HomSearch::new(&Graph::cycle(5), &Graph::complete(3)).all();
        assert_eq!(maps.len(), 30);
        // Nothing maps an odd cycle to K2.
        assert!(HomSearch::new(&Graph::cycle(5), &Graph::complete(2)).first().is_none());
        // Anything maps to the looped vertex, exactly once.
        assert_eq!(HomSearch::new(&Graph::cycle(5), &Graph::looped_vertex()).all().len(), 1);
    }

    #[test]
    fn first_is_lexicographically_smallest() {
        let maps = HomSearch::new(&Graph::path(3), &Graph::complete(3)).all();
        let first = HomSearch::new(&Graph::path(3), &Graph::complete(3)).first().unwrap();
        assert_eq!(Some(&first), maps.iter().min());
    }
}
