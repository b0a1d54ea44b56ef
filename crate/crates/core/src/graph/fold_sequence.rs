use std::sync::Arc;

use super::{Graph, GraphMap};
use crate::error::{Error, Result};

/// A recorded reduction by folds: each step removes a vertex whose
/// neighbourhood, at that moment, lies inside the neighbourhood of the
/// absorbing vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldSequence {
    start: Graph,
    steps: Vec<(String, String)>,
    end: Graph,
}

impl FoldSequence {
    /// Replays `steps` from `start` and rejects the sequence if any step is
    /// not a fold.
    pub fn new(start: Graph, steps: Vec<(String, String)>) -> Result<Self> {
        let end = replay(&start, &steps)?;
        Ok(Self { start, steps, end })
    }

    pub(crate) fn from_parts(start: Graph, steps: Vec<(String, String)>, end: Graph) -> Self {
        debug_assert_eq!(replay(&start, &steps).as_ref(), Ok(&end));
        Self { start, steps, end }
    }

    pub fn start(&self) -> &Graph {
        &self.start
    }

    pub fn end(&self) -> &Graph {
        &self.end
    }

    pub fn steps(&self) -> &[(String, String)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-checks every step and that the replay lands on `end`.
    pub fn verify(&self) -> Result<()> {
        let end = replay(&self.start, &self.steps)?;
        if end != self.end {
            return Err(Error::Precondition("fold sequence does not end at its recorded graph".into()));
        }
        Ok(())
    }

    /// The composite of all fold maps, `start → end`.
    pub fn retraction(&self) -> GraphMap {
        let start = &self.start;
        let mut target: Vec<usize> = (0..start.order()).collect();
        for (removed, absorbing) in &self.steps {
            let r = start.index_of(removed).unwrap();
            let a = start.index_of(absorbing).unwrap();
            for t in target.iter_mut() {
                if *t == r {
                    *t = a;
                }
            }
        }
        let images = target
            .into_iter()
            .map(|t| self.end.index_of(start.label(t)).unwrap())
            .collect();
        GraphMap::from_images_unchecked(
            Arc::new(self.start.clone()),
            Arc::new(self.end.clone()),
            images,
        )
    }

    /// The inclusion of `end` as an induced subgraph of `start`.
    pub fn inclusion(&self) -> GraphMap {
        let images = self
            .end
            .labels()
            .iter()
            .map(|l| self.start.index_of(l).unwrap())
            .collect();
        GraphMap::from_images_unchecked(
            Arc::new(self.end.clone()),
            Arc::new(self.start.clone()),
            images,
        )
    }
}

fn replay(start: &Graph, steps: &[(String, String)]) -> Result<Graph> {
    let mut current = start.clone();
    for (removed, absorbing) in steps {
        let r = current.require(removed)?;
        let a = current.require(absorbing)?;
        if r == a || !current.neighborhood_within(r, a) {
            return Err(Error::NotAFold {
                v: removed.clone(),
                target: absorbing.clone(),
            });
        }
        current = current.without_vertex(r);
    }
    Ok(current)
}
