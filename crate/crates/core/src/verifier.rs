//! Named checks that rebuild specific constructions and record every fact
//! they rely on, each compared against the value the argument needs.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::colimits::pushout;
use crate::enumerate::graphs_up_to;
use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, Graph, GraphMap};
use crate::guard::SizeGuard;
use crate::homotopy::{
    are_x_equivalent, fold_target, is_stiff, is_x_equivalence, is_x_equivalence_by_cores,
    relative_fold_sequence, stiff_core, strip_relative_folds, unfold_vertex,
};
use crate::lifting::{
    find_lift, has_hep, has_rlp_against_unfolds, hep_classify, in_class_f, unfolds_up_to, HepClass,
    LiftingSquare,
};
use crate::search::HomSearch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranscriptLine {
    pub claim: String,
    pub computed: String,
    pub expected: String,
    /// How the computed value was obtained.
    pub basis: String,
}

impl TranscriptLine {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub verdict: Verdict,
    pub transcript: Vec<TranscriptLine>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        Self {
            check_name: name.into(),
            verdict: Verdict::Pass,
            transcript: Vec::new(),
        }
    }

    fn record(&mut self, claim: impl Into<String>, computed: impl ToString, expected: impl ToString, basis: &str) {
        let line = TranscriptLine {
            claim: claim.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            basis: basis.to_owned(),
        };
        if !line.matches() {
            self.verdict = Verdict::Fail;
        }
        self.transcript.push(line);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = self.transcript.iter().filter(|l| l.matches()).count();
        writeln!(f, "{} {} ({ok}/{} lines)", self.verdict, self.check_name, self.transcript.len())?;
        for line in &self.transcript {
            let mark = if line.matches() { "ok" } else { "MISMATCH" };
            writeln!(
                f,
                "  [{mark}] {}: computed {}, expected {} ({})",
                line.claim, line.computed, line.expected, line.basis
            )?;
        }
        Ok(())
    }
}

/// Decides whether `f` is a ×-homotopy equivalence exhaustively when the
/// guard allows it, and through stiff cores otherwise.
fn decide_equivalence(f: &GraphMap, guard: &SizeGuard) -> Result<(bool, &'static str)> {
    match is_x_equivalence(f, guard) {
        Ok(v) => Ok((v, "exhaustive search")),
        Err(Error::GuardExceeded { .. }) => Ok((is_x_equivalence_by_cores(f), "stiff cores")),
        Err(e) => Err(e),
    }
}

fn to_point(g: &Graph) -> GraphMap {
    GraphMap::from_images(Arc::new(g.clone()), Arc::new(Graph::looped_vertex()), vec![0; g.order()])
        .expect("every vertex is adjacent to itself in the looped vertex")
}

/// The graphs and maps of the induced-inclusion-and-fold counterexample.
#[derive(Debug, Clone)]
pub struct FigureInstance {
    pub a: Graph,
    pub b: Graph,
    pub c: Graph,
    /// `A → B`, folding `p` onto `a`.
    pub fold: GraphMap,
    /// `A ↪ C`.
    pub inclusion: GraphMap,
}

pub fn figure_instance() -> FigureInstance {
    let a = Graph::new(["a", "b", "c", "p"], [("a", "b"), ("a", "c"), ("b", "c"), ("b", "p")]).unwrap();
    let b = Graph::new(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
    let c = Graph::new(
        ["a", "b", "c", "p", "q"],
        [("a", "b"), ("a", "c"), ("b", "c"), ("b", "p"), ("b", "q"), ("c", "q"), ("p", "q")],
    )
    .unwrap();
    let fold = GraphMap::new(a.clone(), b.clone(), [("a", "a"), ("b", "b"), ("c", "c"), ("p", "a")]).unwrap();
    let inclusion = GraphMap::new(a.clone(), c.clone(), [("a", "a"), ("b", "b"), ("c", "c"), ("p", "p")]).unwrap();
    FigureInstance {
        a,
        b,
        c,
        fold,
        inclusion,
    }
}

/// Pushes the induced inclusion `A ↪ C` out along the fold `A → K₃` and
/// confirms that the resulting map out of `C` is not an equivalence.
pub fn check_figure_cobase(guard: &SizeGuard) -> Result<CheckReport> {
    let mut r = CheckReport::new("figure_cobase");
    let fig = figure_instance();
    r.record("A ↪ C is an induced inclusion", fig.inclusion.is_induced_inclusion(), true, "definition");
    let (eq, basis) = decide_equivalence(&fig.inclusion, guard)?;
    r.record("A ↪ C is a ×-homotopy equivalence", eq, true, basis);
    let p = fig.a.index_of("p").unwrap();
    let a = fig.a.index_of("a").unwrap();
    r.record("p folds onto a in A", fig.a.neighborhood_within(p, a), true, "neighbourhoods");

    let po = pushout(&fig.fold, &fig.inclusion)?;
    let k4 = Graph::complete(4);
    r.record("pushout object ≅ K₄", is_isomorphic(&po.object, &k4).is_some(), true, "isomorphism search");
    let ap = po.right_leg.image(fig.c.index_of("a").unwrap());
    r.record(
        "class of a and p is unlooped",
        po.right_leg.image(fig.c.index_of("p").unwrap()) == ap && !po.object.is_looped(ap),
        true,
        "quotient rule",
    );

    let (core, _) = stiff_core(&fig.c);
    r.record("stiff core of C ≅ K₃", is_isomorphic(&core, &fig.b).is_some(), true, "folding");
    r.record("C ≃× K₃", are_x_equivalent(&fig.c, &fig.b), true, "stiff cores");

    let (eq, basis) = decide_equivalence(&po.right_leg, guard)?;
    r.record("cobase change C → K₄ is a ×-homotopy equivalence", eq, false, basis);
    let (eq, basis) = decide_equivalence(&po.left_leg, guard)?;
    r.record("cobase change K₃ → K₄ is a ×-homotopy equivalence", eq, false, basis);
    Ok(r)
}

/// `A` with a fresh 5-cycle glued at each vertex of `A'`.
#[derive(Debug, Clone)]
pub struct C5Gadget {
    pub graph: Graph,
    /// The inclusion `A ↪ C`.
    pub inclusion: GraphMap,
    /// `A'`: vertices of `A` whose images fold in `B`.
    pub attached: Vec<String>,
    /// The four new vertices of the cycle at each attached vertex, in cycle order.
    pub cycles: Vec<Vec<String>>,
}

fn cycle_labels(x: &str, taken: &[String]) -> Vec<String> {
    (2..=5)
        .map(|k| {
            let mut label = format!("{x}.{k}");
            while taken.contains(&label) {
                label.push('\'');
            }
            label
        })
        .collect()
}

fn gadget_preconditions(i: &GraphMap, guard: &SizeGuard) -> Result<()> {
    if !i.is_induced_inclusion() {
        return Err(Error::NotInducedInclusion);
    }
    if i.domain().order() >= i.codomain().order() {
        return Err(Error::Precondition("domain is not smaller than codomain".into()));
    }
    if relative_fold_sequence(i)?.is_some() {
        return Err(Error::Precondition("codomain folds onto the image by relative folds".into()));
    }
    if !is_x_equivalence(i, guard)? {
        return Err(Error::Precondition("inclusion is not a ×-homotopy equivalence".into()));
    }
    Ok(())
}

pub fn build_c5_gadget(i: &GraphMap, guard: &SizeGuard) -> Result<C5Gadget> {
    gadget_preconditions(i, guard)?;
    let (a, b) = (i.domain(), i.codomain());
    let attached: Vec<usize> = (0..a.order()).filter(|&x| fold_target(b, i.image(x)).is_some()).collect();

    let mut vertices: Vec<String> = a.labels().to_vec();
    let mut edges: Vec<(String, String)> = a
        .labeled_edges()
        .into_iter()
        .map(|(u, v)| (u.to_owned(), v.to_owned()))
        .collect();
    let mut cycles = Vec::new();
    for &x in &attached {
        let x = a.label(x).to_owned();
        let fresh = cycle_labels(&x, &vertices);
        cycles.push(fresh.clone());
        let mut cycle = vec![x.clone()];
        cycle.extend(fresh.iter().cloned());
        for k in 0..5 {
            edges.push((cycle[k].clone(), cycle[(k + 1) % 5].clone()));
        }
        vertices.extend(fresh);
    }
    let graph = Graph::new(vertices, edges)?;
    let pairs: Vec<(&str, &str)> = a.labels().iter().map(|l| (l.as_str(), l.as_str())).collect();
    let inclusion = GraphMap::new(a.clone(), graph.clone(), pairs)?;
    Ok(C5Gadget {
        graph,
        inclusion,
        attached: attached.into_iter().map(|x| a.label(x).to_owned()).collect(),
        cycles,
    })
}

/// Builds the gadget for `i` and verifies the stiffness argument on the
/// pushout. Relative folds are stripped first, so the gadget is attached for
/// an inclusion `i': A ↪ B'` with none left; the cobase change of the
/// original `i` along the same gadget is checked as well.
pub fn check_gadget_breaks_cobase(i: &GraphMap, guard: &SizeGuard) -> Result<CheckReport> {
    gadget_preconditions(i, guard)?;
    let (reduced, stripped) = strip_relative_folds(i)?;
    let gadget = build_c5_gadget(&reduced, guard)?;
    let mut r = CheckReport::new("gadget_breaks_cobase");
    r.record(
        format!("relative folds stripped before attaching cycles: {}", stripped.len()),
        is_stiff_relative(&reduced),
        true,
        "fold search",
    );
    let c5 = Graph::cycle(5);
    r.record("C₅ is stiff", is_stiff(&c5), true, "fold search");
    let mut looped_edges = c5.labeled_edges();
    looped_edges.push(("0", "0"));
    let c5_loop = Graph::new(c5.labels().to_vec(), looped_edges)?;
    r.record("C₅ with a loop is stiff", is_stiff(&c5_loop), true, "fold search");

    let po = pushout(&gadget.inclusion, &reduced)?;
    let g = &po.object;
    let (a, c) = (reduced.domain(), &gadget.graph);
    let mut cycle_vertices = Vec::new();
    let mut points = Vec::new();
    for (x, cycle) in gadget.attached.iter().zip(&gadget.cycles) {
        points.push(po.left_leg.image(c.index_of(x).unwrap()));
        for label in cycle {
            cycle_vertices.push(po.left_leg.image(c.index_of(label).unwrap()));
        }
    }
    let folding = |vs: &[usize]| vs.iter().filter(|&&v| fold_target(g, v).is_some()).count();
    r.record("cycle vertices that fold in the pushout", folding(&cycle_vertices), 0, "fold search");
    r.record("attachment points that fold in the pushout", folding(&points), 0, "fold search");
    let attached_in_b: Vec<usize> = gadget
        .attached
        .iter()
        .map(|x| reduced.image(a.index_of(x).unwrap()))
        .collect();
    let rest: Vec<usize> = (0..reduced.codomain().order())
        .filter(|v| !attached_in_b.contains(v))
        .map(|v| po.right_leg.image(v))
        .collect();
    r.record("vertices of B' outside A' that fold in the pushout", folding(&rest), 0, "fold search");
    r.record("pushout is stiff", is_stiff(g), true, "fold search");

    let core_c = stiff_core(c).0.order();
    let core_g = stiff_core(g).0.order();
    r.record(
        format!("stiff core of C ({core_c} vertices) is smaller than that of the pushout ({core_g})"),
        core_c < core_g,
        true,
        "folding",
    );
    let (eq, basis) = decide_equivalence(&po.left_leg, guard)?;
    r.record("cobase change of A ↪ B' is a ×-homotopy equivalence", eq, false, basis);
    let original = pushout(&gadget.inclusion, i)?;
    let (eq, basis) = decide_equivalence(&original.left_leg, guard)?;
    r.record("cobase change of A ↪ B is a ×-homotopy equivalence", eq, false, basis);
    Ok(r)
}

fn is_stiff_relative(i: &GraphMap) -> bool {
    let b = i.codomain();
    (0..b.order()).all(|v| i.images().contains(&v) || fold_target(b, v).is_none())
}

/// Induced inclusions `A ↪ B`, `|V(B)| ≤ max_order`, that are ×-homotopy
/// equivalences with `|V(A)| < |V(B)|` and no relative fold sequence: the
/// inputs [`check_gadget_breaks_cobase`] accepts. One `B` per isomorphism
/// class; every proper non-empty vertex subset for `A`.
pub fn gadget_instances(max_order: usize, guard: &SizeGuard) -> Result<Vec<GraphMap>> {
    let mut out = Vec::new();
    for b in graphs_up_to(max_order)? {
        let b = Arc::new(b);
        let n = b.order();
        for mask in 1u32..(1 << n) - 1 {
            let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let a = Arc::new(b.induced_subgraph(&keep));
            let i = GraphMap::from_images(a.clone(), b.clone(), keep)?;
            if relative_fold_sequence(&i)?.is_some() || !are_x_equivalent(&a, &b) {
                continue;
            }
            if is_x_equivalence(&i, guard)? {
                out.push(i);
            }
        }
    }
    Ok(out)
}

/// Compares the cobase changes of `i: A ↪ B` and of `j: A ↪ B − v` along
/// every map from `A` into a graph with at most three vertices.
pub fn check_relative_fold_transfer(i: &GraphMap, v: &str, guard: &SizeGuard) -> Result<CheckReport> {
    if !i.is_induced_inclusion() {
        return Err(Error::NotInducedInclusion);
    }
    let b = i.codomain();
    let vi = b.require(v)?;
    if i.images().contains(&vi) {
        return Err(Error::Precondition(format!("the image of A is not contained in B − {v}")));
    }
    let Some(target) = fold_target(b, vi) else {
        return Err(Error::NotAFold {
            v: v.to_owned(),
            target: "any vertex".to_owned(),
        });
    };
    let mut r = CheckReport::new("relative_fold_transfer");
    r.record(format!("{v} folds onto {} in B", b.label(target)), true, true, "neighbourhoods");

    let smaller = Arc::new(b.without_vertex(vi));
    let j_images = i.images().iter().map(|&w| if w > vi { w - 1 } else { w }).collect();
    let j = GraphMap::from_images(i.domain_arc().clone(), smaller, j_images)?;
    let (mut tested, mut agree) = (0usize, 0usize);
    let mut first_disagreement = None;
    for x in graphs_up_to(3)? {
        let x = Arc::new(x);
        guard.check_power(x.order(), i.domain().order())?;
        for alpha in HomSearch::new(i.domain(), &x).all() {
            let alpha = GraphMap::from_images(i.domain_arc().clone(), x.clone(), alpha)?;
            let via_i = decide_equivalence(&pushout(&alpha, i)?.left_leg, guard)?.0;
            let via_j = decide_equivalence(&pushout(&alpha, &j)?.left_leg, guard)?.0;
            tested += 1;
            if via_i == via_j {
                agree += 1;
            } else if first_disagreement.is_none() {
                first_disagreement = Some(format!("{:?}", alpha.assignment()));
            }
        }
    }
    r.record(
        format!("maps A → X (|V(X)| ≤ 3) where both cobase changes agree, out of {tested}"),
        agree,
        tested,
        "pushouts and equivalence tests",
    );
    if let Some(alpha) = first_disagreement {
        r.record(format!("first disagreement at {alpha}"), "disagree", "agree", "pushouts");
    }
    Ok(r)
}

/// `pₙ: Lₙ → I₀` is a ×-homotopy equivalence with the right lifting property
/// against unfolds, the lift extending `f` by `F(v) = f(v')`.
pub fn check_pn_family(n: usize, unfold_cap: usize, guard: &SizeGuard) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("pn_family(n={n}, cap={unfold_cap})"));
    let l = Graph::looped_tail(n);
    let p = to_point(&l);
    let core = stiff_core(&l).0;
    r.record("stiff core of Lₙ ≅ I₀", core == Graph::looped_vertex(), true, "folding");
    let (eq, basis) = decide_equivalence(&p, guard)?;
    r.record("pₙ is a ×-homotopy equivalence", eq, true, basis);
    r.record("pₙ is in the fibration class", in_class_f(&p)?, true, "fibre characterisation");
    r.record(
        "pₙ lifts against every unfold up to the cap",
        has_rlp_against_unfolds(&p, unfold_cap)?,
        true,
        "exhaustive square enumeration",
    );

    let (mut squares, mut lifted) = (0usize, 0usize);
    for i in unfolds_up_to(unfold_cap)? {
        let (extra, from) = unfold_vertex(&i).expect("enumerated maps are unfolds");
        let from_in_a = i.images().iter().position(|&w| w == from).unwrap();
        guard.check_power(l.order(), i.domain().order())?;
        for f in HomSearch::new(i.domain(), &l).all() {
            squares += 1;
            let mut lift = vec![0; i.codomain().order()];
            for (a, &w) in i.images().iter().enumerate() {
                lift[w] = f[a];
            }
            lift[extra] = f[from_in_a];
            if GraphMap::from_images(i.codomain_arc().clone(), p.domain_arc().clone(), lift).is_ok() {
                lifted += 1;
            }
        }
    }
    r.record(
        "squares where F(v) = f(v') is a lift",
        lifted,
        squares,
        "explicit construction",
    );
    Ok(r)
}

/// The square `K₂ ↪ C_k`, `K₂ → L_t`, `C_k → I₀`, `p_t` with
/// `t = diam(C_k) + 2` has no lift, while its bipartite analogue does.
pub fn check_no_factorization(k: usize, guard: &SizeGuard) -> Result<CheckReport> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Precondition(format!("cycle length must be odd and at least 3, got {k}")));
    }
    let mut r = CheckReport::new(format!("no_factorization(k={k})"));
    let cycle = Graph::cycle(k);
    r.record("odd girth of C_k", cycle.odd_girth().map_or("none".into(), |g| g.to_string()), k, "BFS parity");
    r.record("C_k is stiff", is_stiff(&cycle), true, "fold search");
    let diameter = cycle.diameter().expect("cycles are connected");
    let t = diameter + 2;
    r.record("t = diam(C_k) + 2", t, (k - 1) / 2 + 2, "BFS");

    let square_into = |b: Graph, first: &str, second: &str| -> Result<LiftingSquare> {
        let lt = Graph::looped_tail(t);
        let k2 = Graph::complete(2);
        let i = GraphMap::new(k2.clone(), b.clone(), [("1", first), ("2", second)])?;
        let f = GraphMap::new(k2, lt.clone(), [("1", t.to_string()), ("2", (t - 1).to_string())])?;
        let g = to_point(&b);
        LiftingSquare::new(i, f, g, to_point(&lt))
    };
    let square = square_into(cycle, "0", "1")?;
    r.record("square commutes", true, true, "construction");
    r.record("a lift C_k → L_t exists", find_lift(&square, guard)?.is_some(), false, "exhaustive lift search");
    let bipartite = square_into(Graph::path(3), "1", "2")?;
    r.record("a lift P₃ → L_t exists", find_lift(&bipartite, guard)?.is_some(), true, "exhaustive lift search");
    Ok(r)
}

/// Every injective map between graphs with at most `max_vertices` vertices
/// has the homotopy extension property (lengths 1 and 2) exactly when it is
/// an isomorphism or the inclusion of a disjoint summand.
pub fn check_hep_rigidity(max_vertices: usize, guard: &SizeGuard) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("hep_rigidity(max_vertices={max_vertices})"));
    let graphs: Vec<Arc<Graph>> = graphs_up_to(max_vertices)?.into_iter().map(Arc::new).collect();
    let mut examined = 0usize;
    let mut disagreements = [0usize; 2];
    let mut first = None;
    for a in &graphs {
        for b in graphs.iter().filter(|b| b.order() >= a.order()) {
            for images in HomSearch::new(a, b).all() {
                let i = GraphMap::from_images(a.clone(), b.clone(), images)?;
                if !i.is_injective() {
                    continue;
                }
                examined += 1;
                let structural = hep_classify(&i)? != HepClass::NoHEP;
                for (slot, n) in [1usize, 2].into_iter().enumerate() {
                    if has_hep(&i, n, guard)? != structural {
                        disagreements[slot] += 1;
                        first.get_or_insert_with(|| format!("{:?} with n = {n}", i.assignment()));
                    }
                }
            }
        }
    }
    for (slot, n) in [1, 2].into_iter().enumerate() {
        r.record(
            format!("injective maps (of {examined}) where HEP for n = {n} disagrees with the classification"),
            disagreements[slot],
            0,
            "retraction search",
        );
    }
    if let Some(first) = first {
        r.record(format!("first disagreement: {first}"), "disagree", "agree", "retraction search");
    }
    if max_vertices >= 3 {
        let i = GraphMap::new(Graph::complete(2), Graph::path(3), [("1", "1"), ("2", "2")])?;
        r.record("K₂ ↪ P₃ has HEP for n = 1", has_hep(&i, 1, guard)?, false, "retraction search");
        r.record("K₂ ↪ P₃ classification", format!("{:?}", hep_classify(&i)?), "NoHEP", "structure");
    }
    Ok(r)
}

/// The fixed bundle of checks run by `xgraph verify`.
pub fn conformance_suite(guard: &SizeGuard) -> Result<Vec<CheckReport>> {
    let mut out = vec![check_figure_cobase(guard)?];
    for n in 0..=5 {
        out.push(check_pn_family(n, 3, guard)?);
    }
    for k in [3, 5, 7] {
        out.push(check_no_factorization(k, guard)?);
    }
    out.push(check_hep_rigidity(4, guard)?);
    Ok(out)
}
