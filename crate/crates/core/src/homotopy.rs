//! Folds, stiff cores, and ×-homotopies of graph maps.
//!
//! Two maps `f, g: A → B` are exponentially adjacent when `f(x)g(y)` is an
//! edge for every edge `xy` of `A`. A ×-homotopy of length `n` is the same
//! thing as a walk of length `n` in this relation through graph maps, since
//! every vertex of `Iₙ` is looped.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::colimits::product_indexed;
use crate::error::{Error, Result};
use crate::graph::{compose, identity, is_isomorphic, FoldSequence, Graph, GraphMap};
use crate::guard::SizeGuard;
use crate::search::HomSearch;

/// The lexicographically smallest `(v, v')` with `v != v'` and `N(v) ⊆ N(v')`.
pub fn find_fold(g: &Graph) -> Option<(String, String)> {
    find_fold_index(g).map(|(v, w)| (g.label(v).to_owned(), g.label(w).to_owned()))
}

pub(crate) fn find_fold_index(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    (0..n).find_map(|v| {
        (0..n)
            .find(|&w| w != v && g.neighborhood_within(v, w))
            .map(|w| (v, w))
    })
}

/// The smallest `w != v` with `N(v) ⊆ N(w)`, if `v` folds at all.
pub fn fold_target(g: &Graph, v: usize) -> Option<usize> {
    (0..g.order()).find(|&w| w != v && g.neighborhood_within(v, w))
}

pub fn is_stiff(g: &Graph) -> bool {
    find_fold_index(g).is_none()
}

/// Folds `v` onto `target`, returning `G - v` and the fold map `G → G - v`.
pub fn fold(g: &Graph, v: &str, target: &str) -> Result<(Graph, GraphMap)> {
    let vi = g.require(v)?;
    let ti = g.require(target)?;
    if vi == ti || !g.neighborhood_within(vi, ti) {
        return Err(Error::NotAFold {
            v: v.to_owned(),
            target: target.to_owned(),
        });
    }
    let smaller = Arc::new(g.without_vertex(vi));
    let shift = |u: usize| if u > vi { u - 1 } else { u };
    let images = (0..g.order())
        .map(|u| if u == vi { shift(ti) } else { shift(u) })
        .collect();
    // Validated rather than trusted: a looped `v` must force a looped target.
    let map = GraphMap::from_images(Arc::new(g.clone()), smaller.clone(), images)?;
    Ok(((*smaller).clone(), map))
}

/// An induced inclusion adding exactly one vertex `v` with `N(v) ⊆ N(v')` for
/// some `v'` in the image, neighbourhoods taken in the codomain.
pub fn is_unfold(i: &GraphMap) -> bool {
    unfold_vertex(i).is_some()
}

/// The added vertex and a vertex it folds onto, when `i` is an unfold.
pub fn unfold_vertex(i: &GraphMap) -> Option<(usize, usize)> {
    let b = i.codomain();
    if b.order() != i.domain().order() + 1 || !i.is_induced_inclusion() {
        return None;
    }
    let image = i.image_set();
    let extra = (0..b.order()).find(|v| image.binary_search(v).is_err())?;
    image
        .iter()
        .copied()
        .find(|&w| b.neighborhood_within(extra, w))
        .map(|w| (extra, w))
}

/// Folds greedily, always taking [`find_fold`]'s choice, until stiff.
pub fn stiff_core(g: &Graph) -> (Graph, FoldSequence) {
    let mut current = g.clone();
    let mut steps = Vec::new();
    while let Some((v, w)) = find_fold_index(&current) {
        steps.push((current.label(v).to_owned(), current.label(w).to_owned()));
        current = current.without_vertex(v);
    }
    let seq = FoldSequence::from_parts(g.clone(), steps, current.clone());
    (current, seq)
}

/// A ×-homotopy `A × Iₙ → B`, stored as its stages `f₀, …, fₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    stages: Vec<GraphMap>,
}

pub(crate) fn exponentially_adjacent(a: &Graph, b: &Graph, f: &[usize], g: &[usize]) -> bool {
    a.edges()
        .into_iter()
        .all(|(x, y)| b.adjacent(f[x], g[y]) && b.adjacent(f[y], g[x]))
}

impl Homotopy {
    pub fn new(stages: Vec<GraphMap>) -> Result<Self> {
        let first = stages
            .first()
            .ok_or_else(|| Error::Precondition("a homotopy needs at least one stage".into()))?;
        for w in stages.windows(2) {
            if w[1].domain() != first.domain() || w[1].codomain() != first.codomain() {
                return Err(Error::DomainMismatch("homotopy stages disagree on domain or codomain"));
            }
            if !exponentially_adjacent(w[0].domain(), w[0].codomain(), w[0].images(), w[1].images()) {
                return Err(Error::Precondition("consecutive stages are not exponentially adjacent".into()));
            }
        }
        Ok(Self { stages })
    }

    pub fn constant(f: GraphMap) -> Self {
        Self { stages: vec![f] }
    }

    /// The `n` of `A × Iₙ`.
    pub fn length(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[GraphMap] {
        &self.stages
    }

    pub fn start(&self) -> &GraphMap {
        &self.stages[0]
    }

    pub fn end(&self) -> &GraphMap {
        self.stages.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut stages = self.stages.clone();
        stages.reverse();
        Self { stages }
    }

    /// `self` followed by `next`; `next` must start where `self` ends.
    pub fn concat(&self, next: &Homotopy) -> Result<Self> {
        if self.end() != next.start() {
            return Err(Error::Precondition("homotopies do not meet".into()));
        }
        let mut stages = self.stages.clone();
        stages.extend(next.stages[1..].iter().cloned());
        Ok(Self { stages })
    }

    /// The homotopy as a single graph map `A × Iₙ → B`.
    pub fn as_product_map(&self) -> Result<GraphMap> {
        let a = self.start().domain();
        let n = self.length();
        let interval = Graph::interval(n);
        let (cylinder, index) = product_indexed(a, &interval);
        let mut images = vec![0; cylinder.order()];
        for (t, stage) in self.stages.iter().enumerate() {
            let ti = interval.index_of(&t.to_string()).unwrap();
            for x in 0..a.order() {
                images[index[x][ti]] = stage.image(x);
            }
        }
        GraphMap::from_images(cylinder, self.start().codomain().clone(), images)
    }
}

/// Maps exponentially adjacent to `f` (graph maps only), in lexicographic order.
fn adjacent_maps(a: &Graph, b: &Graph, f: &[usize]) -> Vec<Vec<usize>> {
    let candidates = (0..a.order())
        .map(|y| {
            (0..b.order())
                .filter(|&w| a.neighbors(y).iter().all(|&x| b.adjacent(f[x], w)))
                .collect()
        })
        .collect();
    HomSearch::with_candidates(a, b, candidates).all()
}

/// Breadth-first search from `f` in the exponential adjacency relation.
/// Returns the parent table of everything reached within `max_depth`.
fn explore(
    a: &Graph,
    b: &Graph,
    f: &[usize],
    max_depth: Option<usize>,
    mut stop: impl FnMut(&[usize]) -> bool,
) -> (HashMap<Vec<usize>, Option<Vec<usize>>>, Option<Vec<usize>>) {
    let mut parent: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    parent.insert(f.to_vec(), None);
    if stop(f) {
        return (parent, Some(f.to_vec()));
    }
    let mut queue = VecDeque::from([(f.to_vec(), 0usize)]);
    while let Some((current, depth)) = queue.pop_front() {
        if max_depth.is_some_and(|m| depth >= m) {
            continue;
        }
        for next in adjacent_maps(a, b, &current) {
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some(current.clone()));
            if stop(&next) {
                return (parent, Some(next));
            }
            queue.push_back((next, depth + 1));
        }
    }
    (parent, None)
}

/// The ×-homotopy class of `f` as a set of assignments.
pub(crate) fn homotopy_class(a: &Graph, b: &Graph, f: &[usize]) -> HashSet<Vec<usize>> {
    explore(a, b, f, None, |_| false).0.into_keys().collect()
}

/// Searches for a shortest ×-homotopy from `f` to `g` of length at most
/// `max_n` (unbounded when `None`). An absent result with no bound is a
/// definitive negative.
pub fn are_homotopic(
    f: &GraphMap,
    g: &GraphMap,
    max_n: Option<usize>,
    guard: &SizeGuard,
) -> Result<Option<Homotopy>> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch("maps do not share domain and codomain"));
    }
    let (a, b) = (f.domain(), f.codomain());
    guard.check_power(b.order(), a.order())?;
    let target = g.images();
    let (parent, found) = explore(a, b, f.images(), max_n, |m| m == target);
    let Some(found) = found else {
        return Ok(None);
    };
    let mut path = vec![found];
    while let Some(Some(prev)) = parent.get(path.last().unwrap()) {
        path.push(prev.clone());
    }
    path.reverse();
    let stages = path
        .into_iter()
        .map(|images| {
            GraphMap::from_images_unchecked(f.domain_arc().clone(), f.codomain_arc().clone(), images)
        })
        .collect();
    Ok(Some(Homotopy { stages }))
}

/// Exhaustive search for a homotopy inverse `g: B → A` with `gf ≃ 1_A` and
/// `fg ≃ 1_B`.
pub fn x_equivalence_inverse(f: &GraphMap, guard: &SizeGuard) -> Result<Option<GraphMap>> {
    let (a, b) = (f.domain(), f.codomain());
    guard.check_power(a.order(), a.order())?;
    guard.check_power(b.order(), b.order())?;
    guard.check_power(a.order(), b.order())?;
    let id_a: Vec<usize> = (0..a.order()).collect();
    let id_b: Vec<usize> = (0..b.order()).collect();
    let class_a = homotopy_class(a, a, &id_a);
    let class_b = homotopy_class(b, b, &id_b);
    let found = HomSearch::new(b, a).for_each(|g| {
        let gf: Vec<usize> = f.images().iter().map(|&x| g[x]).collect();
        let fg: Vec<usize> = g.iter().map(|&y| f.image(y)).collect();
        if class_a.contains(&gf) && class_b.contains(&fg) {
            ControlFlow::Break(g.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found.map(|images| {
        GraphMap::from_images_unchecked(f.codomain_arc().clone(), f.domain_arc().clone(), images)
    }))
}

/// Decides whether `f` is a ×-homotopy equivalence by exhaustive search.
pub fn is_x_equivalence(f: &GraphMap, guard: &SizeGuard) -> Result<bool> {
    Ok(x_equivalence_inverse(f, guard)?.is_some())
}

/// Decides whether `f` is a ×-homotopy equivalence through stiff cores:
/// with `s: A₀ ↪ A` and `r: B → B₀` the core inclusion and fold retraction,
/// `f` is an equivalence iff `r ∘ f ∘ s` is an isomorphism. In a stiff graph
/// the identity is the only map exponentially adjacent to the identity, so an
/// equivalence between stiff graphs is an isomorphism.
pub fn is_x_equivalence_by_cores(f: &GraphMap) -> bool {
    let (_, seq_a) = stiff_core(f.domain());
    let (_, seq_b) = stiff_core(f.codomain());
    let restricted = compose(f, &seq_a.inclusion()).unwrap();
    let through = compose(&seq_b.retraction(), &restricted).unwrap();
    through.is_isomorphism()
}

/// Maps `G → H` and `H → G` built from fold retractions, core inclusions and
/// a core isomorphism.
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    pub forward: GraphMap,
    pub backward: GraphMap,
}

/// Whether the stiff cores of `g` and `h` are isomorphic.
pub fn are_x_equivalent(g: &Graph, h: &Graph) -> bool {
    x_equivalence_witness(g, h).is_some()
}

pub fn x_equivalence_witness(g: &Graph, h: &Graph) -> Option<EquivalenceWitness> {
    let (core_g, seq_g) = stiff_core(g);
    let (core_h, seq_h) = stiff_core(h);
    let iso = is_isomorphic(&core_g, &core_h)?;
    let inv = iso.inverse().unwrap();
    let forward = compose(&seq_h.inclusion(), &compose(&iso, &seq_g.retraction()).unwrap()).unwrap();
    let backward = compose(&seq_g.inclusion(), &compose(&inv, &seq_h.retraction()).unwrap()).unwrap();
    Some(EquivalenceWitness { forward, backward })
}

/// A sequence of folds of vertices outside the image of `i` reducing the
/// codomain to the image. Every fold order is explored before giving up.
pub fn relative_fold_sequence(i: &GraphMap) -> Result<Option<FoldSequence>> {
    if !i.is_induced_inclusion() {
        return Err(Error::NotInducedInclusion);
    }
    let b = i.codomain();
    let mut protected = vec![false; b.order()];
    for &v in i.images() {
        protected[v] = true;
    }
    let mut alive = vec![true; b.order()];
    let mut failed = HashSet::new();
    let mut steps = Vec::new();
    if !search_relative(b, &protected, &mut alive, &mut failed, &mut steps) {
        return Ok(None);
    }
    let steps = steps
        .into_iter()
        .map(|(v, w)| (b.label(v).to_owned(), b.label(w).to_owned()))
        .collect();
    FoldSequence::new(b.clone(), steps).map(Some)
}

/// Removes relative folds one at a time, always the smallest foldable vertex
/// outside the image, until none is left. Returns the inclusion into what
/// remains and the folds performed.
pub fn strip_relative_folds(i: &GraphMap) -> Result<(GraphMap, Vec<(String, String)>)> {
    if !i.is_induced_inclusion() {
        return Err(Error::NotInducedInclusion);
    }
    let b = i.codomain();
    let mut keep: Vec<usize> = (0..b.order()).collect();
    let mut steps = Vec::new();
    loop {
        let current = b.induced_subgraph(&keep);
        let outside = (0..keep.len())
            .filter(|&k| !i.images().contains(&keep[k]))
            .find_map(|k| fold_target(&current, k).map(|w| (k, w)));
        let Some((k, w)) = outside else { break };
        steps.push((b.label(keep[k]).to_owned(), b.label(keep[w]).to_owned()));
        keep.remove(k);
    }
    let reduced = Arc::new(b.induced_subgraph(&keep));
    let images = i
        .images()
        .iter()
        .map(|v| keep.binary_search(v).expect("image vertices are never removed"))
        .collect();
    Ok((GraphMap::from_images(i.domain_arc().clone(), reduced, images)?, steps))
}

fn search_relative(
    b: &Graph,
    protected: &[bool],
    alive: &mut Vec<bool>,
    failed: &mut HashSet<Vec<bool>>,
    steps: &mut Vec<(usize, usize)>,
) -> bool {
    let n = b.order();
    if (0..n).all(|v| protected[v] || !alive[v]) {
        return true;
    }
    if failed.contains(alive) {
        return false;
    }
    let removable: Vec<usize> = (0..n).filter(|&v| alive[v] && !protected[v]).collect();
    for v in removable {
        let found = {
            let live: &[bool] = alive;
            let inside = |w: usize| b.neighbors(v).iter().all(|&x| !live[x] || b.adjacent(w, x));
            (0..n).find(|&w| w != v && live[w] && inside(w))
        };
        let Some(w) = found else {
            continue;
        };
        alive[v] = false;
        steps.push((v, w));
        if search_relative(b, protected, alive, failed, steps) {
            return true;
        }
        steps.pop();
        alive[v] = true;
    }
    failed.insert(alive.clone());
    false
}

/// Identity as a one-stage homotopy, for convenience.
pub fn constant_homotopy(g: &Graph) -> Homotopy {
    Homotopy::constant(identity(g.clone()))
}
