//! Retractions, the homotopy extension property, and lifting problems.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::colimits::glue_into_cylinder;
use crate::enumerate::{graphs_up_to, MAX_ENUMERATED_ORDER};
use crate::error::{Error, Result};
use crate::graph::{compose, is_isomorphic, FoldSequence, Graph, GraphMap};
use crate::guard::SizeGuard;
use crate::homotopy::{fold_target, is_x_equivalence};
use crate::search::HomSearch;

/// Searches for `r: T → S` with `r ∘ j = 1_S`. The first retraction in
/// canonical order is returned.
pub fn find_retraction(j: &GraphMap, guard: &SizeGuard) -> Result<Option<GraphMap>> {
    if !j.is_injective() {
        return Err(Error::NotInjective);
    }
    let (s, t) = (j.domain(), j.codomain());
    let mut search = HomSearch::new(t, s);
    for (x, &y) in j.images().iter().enumerate() {
        search.fix(y, x);
    }
    search.propagate();
    guard.check_product(search.candidate_sizes(), "retraction search")?;
    Ok(search
        .first()
        .map(|images| GraphMap::from_images_unchecked(j.codomain_arc().clone(), j.domain_arc().clone(), images)))
}

/// Whether `i` has the homotopy extension property for homotopies of length
/// `n`, decided by looking for a retraction of `B × Iₙ` onto the glue.
pub fn has_hep(i: &GraphMap, n: usize, guard: &SizeGuard) -> Result<bool> {
    if !i.is_injective() {
        return Err(Error::NotInjective);
    }
    let into_cylinder = glue_into_cylinder(i, n)?;
    Ok(find_retraction(&into_cylinder, guard)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HepClass {
    Isomorphism,
    /// `B` is the disjoint union of the image of `A` and the rest of `B`.
    DisjointSummand,
    NoHEP,
}

/// Structural classification of an injective map. `B` splits as `A ⊔ (B − A)`
/// exactly when the map is an induced inclusion with no edge leaving its image.
pub fn hep_classify(i: &GraphMap) -> Result<HepClass> {
    if !i.is_injective() {
        return Err(Error::NotInjective);
    }
    if i.is_isomorphism() {
        return Ok(HepClass::Isomorphism);
    }
    let b = i.codomain();
    let mut in_image = vec![false; b.order()];
    for &v in i.images() {
        in_image[v] = true;
    }
    let crossing = (0..b.order())
        .filter(|&v| !in_image[v])
        .any(|v| b.neighbors(v).iter().any(|&u| in_image[u]));
    if i.is_induced_inclusion() && !crossing {
        Ok(HepClass::DisjointSummand)
    } else {
        Ok(HepClass::NoHEP)
    }
}

/// A commuting square
///
/// ```text
///   A --f--> X
///   |        |
///   i        p
///   v        v
///   B --g--> Y
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingSquare {
    left: GraphMap,
    top: GraphMap,
    bottom: GraphMap,
    right: GraphMap,
}

impl LiftingSquare {
    pub fn new(left: GraphMap, top: GraphMap, bottom: GraphMap, right: GraphMap) -> Result<Self> {
        if left.domain() != top.domain()
            || left.codomain() != bottom.domain()
            || top.codomain() != right.domain()
            || bottom.codomain() != right.codomain()
        {
            return Err(Error::DomainMismatch("square sides do not line up"));
        }
        for a in 0..left.domain().order() {
            let via_top = right.image(top.image(a));
            let via_bottom = bottom.image(left.image(a));
            if via_top != via_bottom {
                let y = right.codomain();
                return Err(Error::SquareDoesNotCommute(format!(
                    "p(f({a})) = {} but g(i({a})) = {}",
                    y.label(via_top),
                    y.label(via_bottom),
                    a = left.domain().label(a),
                )));
            }
        }
        Ok(Self {
            left,
            top,
            bottom,
            right,
        })
    }

    pub fn left(&self) -> &GraphMap {
        &self.left
    }

    pub fn top(&self) -> &GraphMap {
        &self.top
    }

    pub fn bottom(&self) -> &GraphMap {
        &self.bottom
    }

    pub fn right(&self) -> &GraphMap {
        &self.right
    }
}

/// Searches for `F: B → X` with `F ∘ i = f` and `p ∘ F = g`, returning the
/// lexicographically first one.
pub fn find_lift(sq: &LiftingSquare, guard: &SizeGuard) -> Result<Option<GraphMap>> {
    let (b, x) = (sq.left.codomain(), sq.right.domain());
    let mut forced: Vec<Option<usize>> = vec![None; b.order()];
    for a in 0..sq.left.domain().order() {
        let (v, target) = (sq.left.image(a), sq.top.image(a));
        match forced[v] {
            Some(t) if t != target => return Ok(None),
            _ => forced[v] = Some(target),
        }
    }
    let candidates = (0..b.order())
        .map(|v| match forced[v] {
            Some(t) => vec![t],
            None => (0..x.order())
                .filter(|&w| sq.right.image(w) == sq.bottom.image(v))
                .collect(),
        })
        .collect();
    let mut search = HomSearch::with_candidates(b, x, candidates);
    search.propagate();
    guard.check_product(search.candidate_sizes(), "lift search")?;
    Ok(search.first().map(|images| {
        GraphMap::from_images_unchecked(sq.left.codomain_arc().clone(), sq.right.domain_arc().clone(), images)
    }))
}

/// Every commuting square with left side `i` and right side `p`.
pub fn commuting_squares(i: &GraphMap, p: &GraphMap, guard: &SizeGuard) -> Result<Vec<LiftingSquare>> {
    let (a, b) = (i.domain(), i.codomain());
    let (x, y) = (p.domain(), p.codomain());
    guard.check_power(x.order(), a.order())?;
    let mut squares = Vec::new();
    for f in HomSearch::new(a, x).all() {
        let mut forced: Vec<Option<usize>> = vec![None; b.order()];
        let mut consistent = true;
        for v in 0..a.order() {
            let target = p.image(f[v]);
            match forced[i.image(v)] {
                Some(t) if t != target => consistent = false,
                _ => forced[i.image(v)] = Some(target),
            }
        }
        if !consistent {
            continue;
        }
        let candidates = forced
            .iter()
            .map(|c| match c {
                Some(t) => vec![*t],
                None => (0..y.order()).collect(),
            })
            .collect();
        let top = GraphMap::from_images_unchecked(i.domain_arc().clone(), p.domain_arc().clone(), f);
        for g in HomSearch::with_candidates(b, y, candidates).all() {
            let bottom = GraphMap::from_images_unchecked(i.codomain_arc().clone(), p.codomain_arc().clone(), g);
            squares.push(LiftingSquare {
                left: i.clone(),
                top: top.clone(),
                bottom,
                right: p.clone(),
            });
        }
    }
    Ok(squares)
}

/// What a lift over an unfold has to satisfy at the new vertex `v`: it must
/// be adjacent to the images of `v`'s old neighbours, and looped if `v` is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Demand {
    neighbors: Vec<usize>,
    looped: bool,
}

struct Unfold {
    codomain: Arc<Graph>,
    domain: Arc<Graph>,
    extra: usize,
    /// Old neighbours of the new vertex, as domain indices.
    old_neighbors: Vec<usize>,
}

/// Brute-force right-lifting test against every unfold `A → A ∪ {v}` with
/// `|V(A)| ≤ cap`. Since a lift is already fixed on `A`, only the image of
/// the new vertex is free; which demands can arise depends only on `X`, so
/// they are computed once per domain graph and cached.
pub struct UnfoldOracle {
    unfolds: Vec<Unfold>,
    cache: HashMap<Graph, BTreeMap<Demand, (usize, Vec<usize>)>>,
}

fn unfold_shapes(cap: usize) -> Result<Vec<Unfold>> {
    if cap + 1 > MAX_ENUMERATED_ORDER {
        return Err(Error::GuardExceeded {
            bound: format!("unfolds with domains of up to {cap} vertices"),
            cap: (MAX_ENUMERATED_ORDER - 1) as u128,
        });
    }
    let mut unfolds = Vec::new();
    for b in graphs_up_to(cap + 1)? {
        let b = Arc::new(b);
        for v in 0..b.order() {
            if fold_target(&b, v).is_none() {
                continue;
            }
            let keep: Vec<usize> = (0..b.order()).filter(|&u| u != v).collect();
            let domain = Arc::new(b.induced_subgraph(&keep));
            let old_neighbors = b
                .neighbors(v)
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| if u > v { u - 1 } else { u })
                .collect();
            unfolds.push(Unfold {
                codomain: b.clone(),
                domain,
                extra: v,
                old_neighbors,
            });
        }
    }
    Ok(unfolds)
}

/// Every unfold `A → A ∪ {v}` with `|V(A)| ≤ cap`, one codomain per
/// isomorphism class and one map per choice of new vertex.
pub fn unfolds_up_to(cap: usize) -> Result<Vec<GraphMap>> {
    Ok(unfold_shapes(cap)?
        .into_iter()
        .map(|u| {
            let images = (0..u.domain.order())
                .map(|a| if a >= u.extra { a + 1 } else { a })
                .collect();
            GraphMap::from_images_unchecked(u.domain, u.codomain, images)
        })
        .collect())
}

impl UnfoldOracle {
    pub fn new(cap: usize) -> Result<Self> {
        Ok(Self {
            unfolds: unfold_shapes(cap)?,
            cache: HashMap::new(),
        })
    }

    pub fn unfold_count(&self) -> usize {
        self.unfolds.len()
    }

    fn demands(&mut self, x: &Graph) -> &BTreeMap<Demand, (usize, Vec<usize>)> {
        if !self.cache.contains_key(x) {
            let mut found = BTreeMap::new();
            for (k, u) in self.unfolds.iter().enumerate() {
                let looped = u.codomain.is_looped(u.extra);
                HomSearch::new(&u.domain, x).for_each::<()>(|f| {
                    let mut neighbors: Vec<usize> = u.old_neighbors.iter().map(|&a| f[a]).collect();
                    neighbors.sort_unstable();
                    neighbors.dedup();
                    found
                        .entry(Demand { neighbors, looped })
                        .or_insert_with(|| (k, f.to_vec()));
                    std::ops::ControlFlow::Continue(())
                });
            }
            self.cache.insert(x.clone(), found);
        }
        &self.cache[x]
    }

    /// A commuting square against an unfold that `p` cannot lift, if any.
    pub fn failing_square(&mut self, p: &GraphMap) -> Option<LiftingSquare> {
        let (x, y) = (p.domain().clone(), p.codomain().clone());
        let demands: Vec<(Demand, (usize, Vec<usize>))> =
            self.demands(&x).iter().map(|(d, w)| (d.clone(), w.clone())).collect();
        for (demand, (k, f)) in demands {
            for target in 0..y.order() {
                let square_exists = (!demand.looped || y.is_looped(target))
                    && demand.neighbors.iter().all(|&s| y.adjacent(target, p.image(s)));
                if !square_exists {
                    continue;
                }
                let liftable = (0..x.order()).any(|c| {
                    p.image(c) == target
                        && (!demand.looped || x.is_looped(c))
                        && demand.neighbors.iter().all(|&s| x.adjacent(c, s))
                });
                if !liftable {
                    return Some(self.square(k, f, target, p));
                }
            }
        }
        None
    }

    fn square(&self, k: usize, f: Vec<usize>, target: usize, p: &GraphMap) -> LiftingSquare {
        let u = &self.unfolds[k];
        let shift = |a: usize| if a >= u.extra { a + 1 } else { a };
        let left_images = (0..u.domain.order()).map(shift).collect();
        let left = GraphMap::from_images_unchecked(u.domain.clone(), u.codomain.clone(), left_images);
        let mut bottom_images = vec![target; u.codomain.order()];
        for (a, &fx) in f.iter().enumerate() {
            bottom_images[shift(a)] = p.image(fx);
        }
        let top = GraphMap::from_images_unchecked(u.domain.clone(), p.domain_arc().clone(), f);
        let bottom = GraphMap::from_images(u.codomain.clone(), p.codomain_arc().clone(), bottom_images)
            .expect("bottom map satisfies the demand by construction");
        LiftingSquare::new(left, top, bottom, p.clone()).expect("square commutes by construction")
    }

    pub fn has_rlp(&mut self, p: &GraphMap) -> bool {
        self.failing_square(p).is_none()
    }
}

/// Whether `p` lifts against every unfold whose domain has at most `cap`
/// vertices.
pub fn has_rlp_against_unfolds(p: &GraphMap, cap: usize) -> Result<bool> {
    Ok(UnfoldOracle::new(cap)?.has_rlp(p))
}

/// `(onto vertices, onto edges)`.
pub fn edge_vertex_surjectivity(p: &GraphMap) -> (bool, bool) {
    (p.is_vertex_surjective(), p.is_edge_surjective())
}

/// Closed-form membership in the class of maps with the right lifting
/// property against unfolds, for connected graphs.
///
/// Non-edge-surjective maps are rejected. When `Y` is `K₂` or a looped
/// vertex every remaining map qualifies; otherwise every non-loop edge must
/// pull back to a complete bipartite graph, every loop to a clique, and the
/// fibre over a looped `y` must contain a looped vertex when `y` has a looped
/// neighbour other than itself.
pub fn in_class_f(p: &GraphMap) -> Result<bool> {
    let (x, y) = (p.domain(), p.codomain());
    if !x.is_connected() {
        return Err(Error::Disconnected("domain"));
    }
    if !y.is_connected() {
        return Err(Error::Disconnected("codomain"));
    }
    if !p.is_edge_surjective() {
        return Ok(false);
    }
    if y == &Graph::looped_vertex() || is_isomorphic(y, &Graph::complete(2)).is_some() {
        return Ok(true);
    }
    let fibers = fibers(p);
    for (y1, y2) in y.edges() {
        if y1 != y2 {
            let complete = fibers[y1]
                .iter()
                .all(|&a| fibers[y2].iter().all(|&b| x.adjacent(a, b)));
            if !complete {
                return Ok(false);
            }
            continue;
        }
        let fiber = &fibers[y1];
        let clique = fiber
            .iter()
            .all(|&a| fiber.iter().all(|&b| a == b || x.adjacent(a, b)));
        if !clique {
            return Ok(false);
        }
        let looped_neighbor = y.neighbors(y1).iter().any(|&w| w != y1 && y.is_looped(w));
        if looped_neighbor && !fiber.iter().any(|&a| x.is_looped(a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fibers(p: &GraphMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); p.codomain().order()];
    for (v, &w) in p.images().iter().enumerate() {
        out[w].push(v);
    }
    out
}

/// A section `s` of an acyclic fibration: the smallest fibre point over a
/// non-looped vertex, the smallest looped fibre point over a looped one.
pub fn section_of(p: &GraphMap, guard: &SizeGuard) -> Result<GraphMap> {
    if !in_class_f(p)? {
        return Err(Error::Precondition("map is not in the fibration class".into()));
    }
    if !is_x_equivalence(p, guard)? {
        return Err(Error::Precondition("map is not a ×-homotopy equivalence".into()));
    }
    let (x, y) = (p.domain(), p.codomain());
    let fibers = fibers(p);
    let mut images = Vec::with_capacity(y.order());
    for v in 0..y.order() {
        let choice = if y.is_looped(v) {
            fibers[v].iter().copied().find(|&a| x.is_looped(a))
        } else {
            fibers[v].first().copied()
        };
        let choice = choice.ok_or_else(|| {
            Error::Precondition(format!("no eligible fibre point over {}", y.label(v)))
        })?;
        images.push(choice);
    }
    let s = GraphMap::from_images(p.codomain_arc().clone(), p.domain_arc().clone(), images)?;
    let round = compose(p, &s)?;
    if !round.images().iter().enumerate().all(|(v, &w)| v == w) {
        return Err(Error::Precondition("constructed section is not a right inverse".into()));
    }
    Ok(s)
}

/// Folds `X` down fibre by fibre: a vertex is removed when its neighbourhood
/// lies in that of another vertex of the same fibre. Returns the sequence
/// when each fibre ends as a single vertex and `p` restricts to an
/// isomorphism onto `Y`.
pub fn fiber_fold_sequence(p: &GraphMap) -> Option<FoldSequence> {
    let x = p.domain();
    let mut alive: Vec<usize> = (0..x.order()).collect();
    let mut current = x.clone();
    let mut steps = Vec::new();
    'outer: loop {
        for (i, &a) in alive.iter().enumerate() {
            for (j, &b) in alive.iter().enumerate() {
                if i != j && p.image(a) == p.image(b) && current.neighborhood_within(i, j) {
                    steps.push((x.label(a).to_owned(), x.label(b).to_owned()));
                    current = current.without_vertex(i);
                    alive.remove(i);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let restricted = alive.iter().map(|&a| p.image(a)).collect();
    let restricted = GraphMap::from_images(Arc::new(current), p.codomain_arc().clone(), restricted).ok()?;
    if !restricted.is_isomorphism() {
        return None;
    }
    FoldSequence::new(x.clone(), steps).ok()
}

/// Membership in the class of maps lifting on the left of acyclic
/// fibrations: exactly the induced inclusions.
pub fn in_class_c(i: &GraphMap) -> bool {
    i.is_induced_inclusion()
}
