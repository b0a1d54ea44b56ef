use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::Graph;
use crate::error::{Error, Result};

/// A graph homomorphism: a vertex assignment sending every edge (loops
/// included) to an edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphMap {
    domain: Arc<Graph>,
    codomain: Arc<Graph>,
    images: Vec<usize>,
}

impl GraphMap {
    /// Validates a label-to-label assignment.
    pub fn new<I, K, V>(
        domain: impl Into<Arc<Graph>>,
        codomain: impl Into<Arc<Graph>>,
        assignment: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let domain = domain.into();
        let codomain = codomain.into();
        let mut images = vec![None; domain.order()];
        for (k, v) in assignment {
            let from = domain.require(k.as_ref())?;
            let to = codomain.require(v.as_ref())?;
            images[from] = Some(to);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or_else(|| Error::MissingAssignment(domain.label(i).into())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(domain, codomain, images)
    }

    /// Validates an assignment given as codomain indices, one per domain vertex.
    pub fn from_images(
        domain: impl Into<Arc<Graph>>,
        codomain: impl Into<Arc<Graph>>,
        images: Vec<usize>,
    ) -> Result<Self> {
        let domain = domain.into();
        let codomain = codomain.into();
        if images.len() != domain.order() {
            return Err(Error::DomainMismatch("assignment length differs from domain order"));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= codomain.order()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        for (a, b) in domain.edges() {
            if !codomain.adjacent(images[a], images[b]) {
                return Err(Error::NotEdgePreserving(
                    domain.label(a).into(),
                    domain.label(b).into(),
                    codomain.label(images[a]).into(),
                    codomain.label(images[b]).into(),
                ));
            }
        }
        Ok(Self {
            domain,
            codomain,
            images,
        })
    }

    /// Caller guarantees the assignment preserves edges.
    pub(crate) fn from_images_unchecked(
        domain: Arc<Graph>,
        codomain: Arc<Graph>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert!(is_homomorphism(&domain, &codomain, &images));
        Self {
            domain,
            codomain,
            images,
        }
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<Graph> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<Graph> {
        &self.codomain
    }

    /// Image indices, one per domain vertex in canonical order.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn apply(&self, label: &str) -> Option<&str> {
        let v = self.domain.index_of(label)?;
        Some(self.codomain.label(self.images[v]))
    }

    pub fn assignment(&self) -> BTreeMap<&str, &str> {
        self.images
            .iter()
            .enumerate()
            .map(|(v, &w)| (self.domain.label(v), self.codomain.label(w)))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        self.images.iter().all(|&w| !std::mem::replace(&mut hit[w], true))
    }

    pub fn is_vertex_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        for &w in &self.images {
            hit[w] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Every codomain edge is the image of some domain edge.
    pub fn is_edge_surjective(&self) -> bool {
        let n = self.codomain.order();
        let mut hit = vec![false; n * n];
        for (a, b) in self.domain.edges() {
            let (x, y) = (self.images[a], self.images[b]);
            hit[x.min(y) * n + x.max(y)] = true;
        }
        self.codomain.edges().into_iter().all(|(x, y)| hit[x * n + y])
    }

    /// Injective, and non-adjacent domain vertices stay non-adjacent.
    pub fn is_induced_inclusion(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        let n = self.domain.order();
        (0..n).all(|a| {
            (a..n).all(|b| {
                self.domain.adjacent(a, b) || !self.codomain.adjacent(self.images[a], self.images[b])
            })
        })
    }

    /// Bijective with an edge-preserving inverse.
    pub fn is_isomorphism(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_induced_inclusion()
    }

    /// Indices of the image, ascending and deduplicated.
    pub fn image_set(&self) -> Vec<usize> {
        let mut image = self.images.clone();
        image.sort_unstable();
        image.dedup();
        image
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GraphMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[w] = v;
        }
        Some(GraphMap::from_images_unchecked(
            self.codomain.clone(),
            self.domain.clone(),
            inv,
        ))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GraphMap) -> Result<GraphMap> {
        compose(self, first)
    }
}

pub(crate) fn is_homomorphism(domain: &Graph, codomain: &Graph, images: &[usize]) -> bool {
    images.len() == domain.order()
        && domain
            .edges()
            .into_iter()
            .all(|(a, b)| codomain.adjacent(images[a], images[b]))
}

pub fn identity(graph: impl Into<Arc<Graph>>) -> GraphMap {
    let graph = graph.into();
    let images = (0..graph.order()).collect();
    GraphMap::from_images_unchecked(graph.clone(), graph, images)
}

/// `g ∘ f`; the codomain of `f` must equal the domain of `g`.
pub fn compose(g: &GraphMap, f: &GraphMap) -> Result<GraphMap> {
    if f.codomain() != g.domain() {
        return Err(Error::DomainMismatch("codomain of the first map is not the domain of the second"));
    }
    let images = f.images.iter().map(|&x| g.images[x]).collect();
    Ok(GraphMap::from_images_unchecked(
        f.domain.clone(),
        g.codomain.clone(),
        images,
    ))
}

impl fmt::Debug for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphMap")
            .field("domain", &*self.domain)
            .field("codomain", &*self.codomain)
            .field("assignment", &self.assignment())
            .finish()
    }
}
