//! Products, quotients, disjoint unions, pushouts and the mapping-cylinder glue.
//!
//! Vertex labels of derived graphs are built deterministically: products use
//! `(g,h)`, disjoint unions tag the two sides with `0:` and `1:`, and quotient
//! classes are written as the sorted member list in brackets, `[x,y]`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap};

/// Categorical product: `(g,h) ~ (g',h')` iff `gg' ∈ E(G)` and `hh' ∈ E(H)`.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    product_indexed(g, h).0
}

/// The product together with `index[x][y]`, the position of `(x,y)`.
pub(crate) fn product_indexed(g: &Graph, h: &Graph) -> (Graph, Vec<Vec<usize>>) {
    let (n, m) = (g.order(), h.order());
    let mut labels = Vec::with_capacity(n * m);
    for x in 0..n {
        for y in 0..m {
            labels.push(format!("({},{})", g.label(x), h.label(y)));
        }
    }
    let mut edges = Vec::new();
    for (x1, x2) in g.edges() {
        for (y1, y2) in h.edges() {
            edges.push((x1 * m + y1, x2 * m + y2));
            edges.push((x1 * m + y2, x2 * m + y1));
        }
    }
    let (graph, position) = Graph::assemble(labels, edges);
    let index = (0..n)
        .map(|x| (0..m).map(|y| position[x * m + y]).collect())
        .collect();
    (graph, index)
}

/// Tagged union; `G`'s vertices become `0:v`, `H`'s become `1:w`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    coproduct(g, h).0
}

/// The disjoint union with both injections as index tables.
pub(crate) fn coproduct(g: &Graph, h: &Graph) -> (Graph, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let labels = g
        .labels()
        .iter()
        .map(|l| format!("0:{l}"))
        .chain(h.labels().iter().map(|l| format!("1:{l}")))
        .collect();
    let edges = g
        .edges()
        .into_iter()
        .chain(h.edges().into_iter().map(|(a, b)| (a + n, b + n)));
    let (graph, position) = Graph::assemble(labels, edges);
    let left = position[..n].to_vec();
    let right = position[n..].to_vec();
    (graph, left, right)
}

/// Quotient by a partition given as lists of labels.
pub fn quotient(g: &Graph, classes: &[Vec<String>]) -> Result<(Graph, GraphMap)> {
    let mut class_of = vec![usize::MAX; g.order()];
    for (c, members) in classes.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::NotAPartition("empty class".into()));
        }
        for m in members {
            let v = g
                .index_of(m)
                .ok_or_else(|| Error::NotAPartition(format!("`{m}` is not a vertex")))?;
            if class_of[v] != usize::MAX {
                return Err(Error::NotAPartition(format!("`{m}` appears in two classes")));
            }
            class_of[v] = c;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::NotAPartition(format!("`{}` is not covered", g.label(v))));
    }
    let (q, projection) = quotient_by_ids(g, &class_of);
    let q = Arc::new(q);
    let map = GraphMap::from_images_unchecked(Arc::new(g.clone()), q.clone(), projection);
    Ok(((*q).clone(), map))
}

/// Quotient by a class id per vertex. Two classes are adjacent when some pair
/// of representatives is; a class is looped when two of its members are
/// adjacent or one is looped. Returns the quotient and the projection.
pub(crate) fn quotient_by_ids(g: &Graph, class_of: &[usize]) -> (Graph, Vec<usize>) {
    // Renumber classes densely in order of first appearance.
    let mut dense = std::collections::HashMap::new();
    let ids: Vec<usize> = class_of
        .iter()
        .map(|&c| {
            let next = dense.len();
            *dense.entry(c).or_insert(next)
        })
        .collect();
    let count = dense.len();
    let mut members: Vec<Vec<&str>> = vec![Vec::new(); count];
    for (v, &c) in ids.iter().enumerate() {
        members[c].push(g.label(v));
    }
    let labels = unique_labels(
        members
            .iter()
            .map(|ms| format!("[{}]", ms.join(",")))
            .collect(),
    );
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (ids[a], ids[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    let (graph, position) = Graph::assemble(labels, edges);
    let projection = ids.into_iter().map(|c| position[c]).collect();
    (graph, projection)
}

fn unique_labels(mut labels: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    for l in labels.iter_mut() {
        while !seen.insert(l.clone()) {
            l.push('\'');
        }
    }
    labels
}

/// A pushout square `C → G ← B` over the span `C ← A → B`.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub object: Arc<Graph>,
    /// The cobase change `i': C → G` of `i`.
    pub left_leg: GraphMap,
    /// The cobase change `f': B → G` of `f`.
    pub right_leg: GraphMap,
}

impl PushoutResult {
    /// The unique map `G → Z` through which a cocone `(u: B → Z, w: C → Z)`
    /// factors.
    pub fn mediate(&self, u: &GraphMap, w: &GraphMap) -> Result<GraphMap> {
        if u.domain() != self.right_leg.domain()
            || w.domain() != self.left_leg.domain()
            || u.codomain() != w.codomain()
        {
            return Err(Error::DomainMismatch("cocone does not match the pushout span"));
        }
        let mut images = vec![None; self.object.order()];
        let legs = [(&self.left_leg, w), (&self.right_leg, u)];
        for (leg, target) in legs {
            for (v, &class) in leg.images().iter().enumerate() {
                let image = target.image(v);
                match images[class] {
                    None => images[class] = Some(image),
                    Some(prev) if prev == image => {}
                    Some(_) => {
                        return Err(Error::SquareDoesNotCommute(self.object.label(class).into()))
                    }
                }
            }
        }
        let images = images.into_iter().map(Option::unwrap).collect();
        GraphMap::from_images(self.object.clone(), u.codomain_arc().clone(), images)
    }
}

/// Pushout of `f: A → C` and `i: A → B`: the quotient of `C ⊔ B` by the
/// equivalence generated by `f(a) ~ i(a)`.
pub fn pushout(f: &GraphMap, i: &GraphMap) -> Result<PushoutResult> {
    if f.domain() != i.domain() {
        return Err(Error::DomainMismatch("pushout legs have different domains"));
    }
    let c = f.codomain();
    let b = i.codomain();
    let (union, inj_c, inj_b) = coproduct(c, b);
    let mut classes = UnionFind::new(union.order());
    for a in 0..f.domain().order() {
        classes.union(inj_c[f.image(a)], inj_b[i.image(a)]);
    }
    let class_of: Vec<usize> = (0..union.order()).map(|v| classes.find(v)).collect();
    let (object, projection) = quotient_by_ids(&union, &class_of);
    let object = Arc::new(object);
    let left_leg = GraphMap::from_images_unchecked(
        f.codomain_arc().clone(),
        object.clone(),
        inj_c.iter().map(|&v| projection[v]).collect(),
    );
    let right_leg = GraphMap::from_images_unchecked(
        i.codomain_arc().clone(),
        object.clone(),
        inj_b.iter().map(|&v| projection[v]).collect(),
    );
    Ok(PushoutResult {
        object,
        left_leg,
        right_leg,
    })
}

/// The glue `(A × Iₙ) ⊔ᵢ B`: the quotient of `(A × Iₙ) ⊔ B` identifying
/// `(a,0)` with `i(a)`. Returns the glued graph and the map `j: B → glue`.
pub fn glue(i: &GraphMap, n: usize) -> Result<(Graph, GraphMap)> {
    let parts = glue_parts(i, n);
    let j = GraphMap::from_images_unchecked(
        i.codomain_arc().clone(),
        parts.graph.clone(),
        parts.from_base.clone(),
    );
    Ok(((*parts.graph).clone(), j))
}

pub(crate) struct GlueParts {
    pub graph: Arc<Graph>,
    /// `from_cylinder[a][t]` is the class of `(a,t)`.
    pub from_cylinder: Vec<Vec<usize>>,
    /// `from_base[b]` is the class of `b`.
    pub from_base: Vec<usize>,
}

pub(crate) fn glue_parts(i: &GraphMap, n: usize) -> GlueParts {
    let a = i.domain();
    let b = i.codomain();
    let interval = Graph::interval(n);
    let (cylinder, cyl_index) = product_indexed(a, &interval);
    let (union, inj_cyl, inj_base) = coproduct(&cylinder, b);
    // Interval labels sort lexicographically, so look `t` up by label.
    let t_index: Vec<usize> = (0..=n)
        .map(|t| interval.index_of(&t.to_string()).unwrap())
        .collect();
    let mut classes = UnionFind::new(union.order());
    for v in 0..a.order() {
        classes.union(inj_cyl[cyl_index[v][t_index[0]]], inj_base[i.image(v)]);
    }
    let class_of: Vec<usize> = (0..union.order()).map(|v| classes.find(v)).collect();
    let (graph, projection) = quotient_by_ids(&union, &class_of);
    let from_cylinder = (0..a.order())
        .map(|v| {
            (0..=n)
                .map(|t| projection[inj_cyl[cyl_index[v][t_index[t]]]])
                .collect()
        })
        .collect();
    let from_base = inj_base.iter().map(|&v| projection[v]).collect();
    GlueParts {
        graph: Arc::new(graph),
        from_cylinder,
        from_base,
    }
}

/// The canonical map `(A × Iₙ) ⊔ᵢ B → B × Iₙ`, `(a,t) ↦ (i(a),t)` and
/// `b ↦ (b,0)`. It is an embedding when `i` is injective.
pub fn glue_into_cylinder(i: &GraphMap, n: usize) -> Result<GraphMap> {
    let parts = glue_parts(i, n);
    let interval = Graph::interval(n);
    let (cylinder, index) = product_indexed(i.codomain(), &interval);
    let t_index: Vec<usize> = (0..=n)
        .map(|t| interval.index_of(&t.to_string()).unwrap())
        .collect();
    let mut images = vec![usize::MAX; parts.graph.order()];
    for (v, row) in parts.from_cylinder.iter().enumerate() {
        for (t, &class) in row.iter().enumerate() {
            images[class] = index[i.image(v)][t_index[t]];
        }
    }
    for (b, &class) in parts.from_base.iter().enumerate() {
        images[class] = index[b][t_index[0]];
    }
    GraphMap::from_images(parts.graph, Arc::new(cylinder), images)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{identity, is_isomorphic};

    fn classes(groups: &[&[&str]]) -> Vec<Vec<String>> {
        groups
            .iter()
            .map(|g| g.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    /// Definitional oracle: every pair of vertex pairs, tested against both factors.
    fn brute_product_edges(g: &Graph, h: &Graph) -> usize {
        let mut count = 0;
        let verts: Vec<(usize, usize)> = (0..g.order())
            .flat_map(|x| (0..h.order()).map(move |y| (x, y)))
            .collect();
        for (p, &(x1, y1)) in verts.iter().enumerate() {
            for &(x2, y2) in &verts[p..] {
                if g.adjacent(x1, x2) && h.adjacent(y1, y2) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn looped_vertex_is_product_unit() {
        for g in [Graph::cycle(5), Graph::interval(2), Graph::complete(3)] {
            assert!(is_isomorphic(&product(&Graph::looped_vertex(), &g), &g).is_some());
        }
    }

    #[test]
    fn k2_squared_is_two_edges() {
        let p = product(&Graph::complete(2), &Graph::complete(2));
        assert_eq!(p.order(), 4);
        assert_eq!(p.edge_count(), brute_product_edges(&Graph::complete(2), &Graph::complete(2)));
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.components().len(), 2);
        assert!(p.adjacent(p.index_of("(1,1)").unwrap(), p.index_of("(2,2)").unwrap()));
        assert!(p.adjacent(p.index_of("(1,2)").unwrap(), p.index_of("(2,1)").unwrap()));
    }

    #[test]
    fn interval_times_edge_is_four_cycle() {
        let (i1, k2) = (Graph::interval(1), Graph::complete(2));
        let p = product(&i1, &k2);
        assert_eq!(p.edge_count(), brute_product_edges(&i1, &k2));
        assert_eq!(p.edge_count(), 4);
        assert!(is_isomorphic(&p, &Graph::cycle(4)).is_some());
    }

    #[test]
    fn discrete_quotient_is_isomorphic() {
        let g = Graph::cycle(5);
        let singletons: Vec<Vec<String>> = g.labels().iter().map(|l| vec![l.clone()]).collect();
        let (q, proj) = quotient(&g, &singletons).unwrap();
        assert!(is_isomorphic(&q, &g).is_some());
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn path_with_ends_merged_is_an_edge() {
        let (q, proj) = quotient(&Graph::path(3), &classes(&[&["1", "3"], &["2"]])).unwrap();
        assert_eq!(q, Graph::new(["[1,3]", "[2]"], [("[1,3]", "[2]")]).unwrap());
        assert_eq!(proj.apply("3"), Some("[1,3]"));
    }

    #[test]
    fn collapsing_an_edge_makes_a_loop() {
        let (q, _) = quotient(&Graph::complete(2), &classes(&[&["1", "2"]])).unwrap();
        assert!(is_isomorphic(&q, &Graph::looped_vertex()).is_some());
    }

    #[test]
    fn quotient_rejects_non_partitions() {
        let g = Graph::path(3);
        assert!(matches!(quotient(&g, &classes(&[&["1", "2"]])), Err(Error::NotAPartition(_))));
        assert!(matches!(
            quotient(&g, &classes(&[&["1", "2"], &["2", "3"]])),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            quotient(&g, &classes(&[&["1", "2", "3", "9"]])),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn disjoint_unions() {
        let g = Graph::cycle(5);
        assert!(is_isomorphic(&disjoint_union(&g, &Graph::empty()), &g).is_some());
        let loops = disjoint_union(&Graph::looped_vertex(), &Graph::looped_vertex());
        assert_eq!((loops.loop_count(), loops.edge_count()), (2, 2));
        let u = disjoint_union(&Graph::complete(2), &Graph::complete(3));
        assert_eq!((u.order(), u.edge_count()), (5, 4));
    }

    #[test]
    fn pushout_along_identity() {
        let a = Graph::complete(2);
        let i = GraphMap::new(a.clone(), Graph::path(3), [("1", "1"), ("2", "2")]).unwrap();
        let po = pushout(&identity(a), &i).unwrap();
        assert!(is_isomorphic(&po.object, &Graph::path(3)).is_some());
        assert!(po.right_leg.is_isomorphism());
        assert_eq!(po.left_leg.after(&identity(Graph::complete(2))).unwrap().images().len(), 2);
    }

    #[test]
    fn pushout_commutes() {
        let a = Graph::complete(2);
        let f = GraphMap::new(a.clone(), Graph::cycle(5), [("1", "0"), ("2", "1")]).unwrap();
        let i = GraphMap::new(a, Graph::path(3), [("1", "2"), ("2", "3")]).unwrap();
        let po = pushout(&f, &i).unwrap();
        assert_eq!(po.left_leg.after(&f).unwrap(), po.right_leg.after(&i).unwrap());
        assert_eq!(po.object.order(), 6);
    }

    #[test]
    fn pushout_domain_mismatch() {
        let f = identity(Graph::complete(2));
        let i = identity(Graph::complete(3));
        assert!(matches!(pushout(&f, &i), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn zero_length_glue_is_base() {
        let i = GraphMap::new(Graph::complete(2), Graph::path(3), [("1", "1"), ("2", "2")]).unwrap();
        let (g, j) = glue(&i, 0).unwrap();
        assert!(is_isomorphic(&g, &Graph::path(3)).is_some());
        assert!(j.is_isomorphism());
    }

    #[test]
    fn glue_vertex_count() {
        let i = GraphMap::new(Graph::complete(2), Graph::path(3), [("1", "1"), ("2", "2")]).unwrap();
        let (g, j) = glue(&i, 1).unwrap();
        assert_eq!(g.order(), 2 * 2 + 3 - 2);
        assert!(j.is_induced_inclusion());
        // (3,0) and (2,1) are adjacent in P3 x I1 but not in the glue.
        let e = glue_into_cylinder(&i, 1).unwrap();
        assert!(e.is_injective());
        assert!(!e.is_induced_inclusion());
    }
}
