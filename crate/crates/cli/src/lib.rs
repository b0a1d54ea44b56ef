//! The `xgraph` command line: every subcommand runs one library operation and
//! prints its result as JSON. Decision subcommands also report their verdict
//! through the exit status.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use xgraph_core::colimits::glue_into_cylinder;
use xgraph_core::homotopy::{x_equivalence_inverse, x_equivalence_witness};
use xgraph_core::io::{
    fold_sequence_value, graph_value, homotopy_value, map_value, parse_graph, parse_map, read_graph,
    read_map, to_pretty,
};
use xgraph_core::lifting::{
    edge_vertex_surjectivity, find_retraction, has_hep, hep_classify, in_class_c, in_class_f,
    section_of, UnfoldOracle,
};
use xgraph_core::verifier::conformance_suite;
use xgraph_core::{
    are_homotopic, find_lift, glue, product, pushout, quotient, stiff_core, Error, Graph, GraphMap,
    LiftingSquare, SizeGuard,
};

pub const EXIT_TRUE: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "xgraph", version, about = "Exact ×-homotopy computations on finite graphs with loops")]
pub struct Cli {
    /// Refuse exhaustive searches over more than this many candidates.
    #[arg(long, global = true, env = "XGRAPH_CAP")]
    pub cap: Option<u64>,

    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Include witnesses (inverses, homotopies, retractions, failing squares).
    #[arg(long, global = true)]
    pub witness: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Graph and map arguments are file paths, or inline JSON documents when
/// they start with `{`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold a graph down to its stiff core.
    Core { graph: String },
    /// Decide ×-homotopy equivalence of two graphs, or of a single map.
    Equiv { first: String, second: Option<String> },
    /// Search for a ×-homotopy between two maps.
    Homotopic {
        f: String,
        g: String,
        /// Longest homotopy to look for; unbounded by default.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Categorical product of two graphs.
    Product { g: String, h: String },
    /// Quotient of a graph by a partition given as a JSON list of label lists.
    Quotient { graph: String, partition: String },
    /// Pushout of `f: A → C` along `i: A → B`.
    Pushout { f: String, i: String },
    /// The glue (A × Iₙ) ⊔ᵢ B and its inclusion of B.
    Glue { map: String, n: usize },
    /// Decide the homotopy extension property of an injective map.
    Hep {
        map: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Solve a lifting square given as `{left, top, bottom, right}` maps.
    Lift { square: String },
    /// Closed-form membership in the class of maps lifting against unfolds.
    ClassifyF {
        map: String,
        /// Also run the exhaustive unfold oracle with domains up to this size.
        #[arg(long)]
        unfold_cap: Option<usize>,
    },
    /// Membership in the class of maps lifting on the left of acyclic fibrations.
    ClassifyC { map: String },
    /// A section of an acyclic fibration.
    Section { map: String },
    /// Run the built-in conformance checks, one line per check.
    Verify,
}

/// Exit status and the text destined for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Answer {
    verdict: Option<bool>,
    value: Value,
    /// Replaces the pretty JSON on standard output when set.
    text: Option<String>,
}

impl Answer {
    fn value(value: Value) -> Self {
        Self { verdict: None, value, text: None }
    }

    fn verdict(verdict: bool, value: Value) -> Self {
        Self { verdict: Some(verdict), value, text: None }
    }
}

pub fn status_for(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        _ => EXIT_INPUT,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let guard = cli.cap.map_or_else(SizeGuard::default, |c| SizeGuard::new(c.into()));
    let answer = match execute(cli, &guard) {
        Ok(a) => a,
        Err(e) => {
            return Outcome {
                status: status_for(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let status = match answer.verdict {
        Some(false) => EXIT_FALSE,
        _ => EXIT_TRUE,
    };
    let json = to_pretty(&answer.value) + "\n";
    let stdout = match (&cli.out, answer.text) {
        (Some(path), text) => {
            if let Err(e) = fs::write(path, &json) {
                return Outcome {
                    status: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                };
            }
            text.unwrap_or_default()
        }
        (None, Some(text)) => text,
        (None, None) => json,
    };
    Outcome { status, stdout, stderr: String::new() }
}

fn is_inline(arg: &str) -> bool {
    arg.trim_start().starts_with('{') || arg.trim_start().starts_with('[')
}

fn load_graph(arg: &str) -> Result<Graph, Error> {
    if is_inline(arg) {
        parse_graph(arg)
    } else {
        read_graph(Path::new(arg))
    }
}

fn load_map(arg: &str) -> Result<GraphMap, Error> {
    if is_inline(arg) {
        parse_map(arg, None)
    } else {
        read_map(Path::new(arg))
    }
}

fn load_text(arg: &str, field: &str) -> Result<(String, Option<PathBuf>), Error> {
    if is_inline(arg) {
        return Ok((arg.to_owned(), None));
    }
    let path = Path::new(arg);
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        field: field.into(),
        message: format!("cannot read {arg}: {e}"),
    })?;
    Ok((text, path.parent().map(Path::to_path_buf)))
}

fn load_square(arg: &str) -> Result<LiftingSquare, Error> {
    let (text, base) = load_text(arg, "square")?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        field: "square".into(),
        message: e.to_string(),
    })?;
    let side = |name: &str| -> Result<GraphMap, Error> {
        let missing = || Error::Parse { field: name.into(), message: "missing".into() };
        match doc.get(name).ok_or_else(missing)? {
            Value::String(file) => {
                let path = base.as_deref().map_or_else(|| PathBuf::from(file), |b| b.join(file));
                read_map(&path)
            }
            inline => parse_map(&inline.to_string(), base.as_deref()),
        }
        .map_err(|e| Error::Parse { field: name.into(), message: e.to_string() })
    };
    LiftingSquare::new(side("left")?, side("top")?, side("bottom")?, side("right")?)
}

fn square_value(sq: &LiftingSquare) -> Value {
    json!({
        "left": map_value(sq.left()),
        "top": map_value(sq.top()),
        "bottom": map_value(sq.bottom()),
        "right": map_value(sq.right()),
    })
}

fn execute(cli: &Cli, guard: &SizeGuard) -> Result<Answer, Error> {
    let witness = cli.witness;
    Ok(match &cli.command {
        Command::Core { graph } => {
            let g = load_graph(graph)?;
            let (core, seq) = stiff_core(&g);
            Answer::value(json!({
                "core": graph_value(&core),
                "fold_sequence": fold_sequence_value(&seq),
            }))
        }
        Command::Equiv { first, second: Some(second) } => {
            let (g, h) = (load_graph(first)?, load_graph(second)?);
            let found = x_equivalence_witness(&g, &h);
            let mut value = json!({ "verdict": found.is_some() });
            if let (true, Some(w)) = (witness, &found) {
                value["forward"] = map_value(&w.forward);
                value["backward"] = map_value(&w.backward);
            }
            Answer::verdict(found.is_some(), value)
        }
        Command::Equiv { first, second: None } => {
            let f = load_map(first)?;
            let inverse = x_equivalence_inverse(&f, guard)?;
            let mut value = json!({ "verdict": inverse.is_some() });
            if let (true, Some(g)) = (witness, &inverse) {
                value["inverse"] = map_value(g);
            }
            Answer::verdict(inverse.is_some(), value)
        }
        Command::Homotopic { f, g, max_n } => {
            let (f, g) = (load_map(f)?, load_map(g)?);
            let found = are_homotopic(&f, &g, *max_n, guard)?;
            let mut value = json!({ "verdict": found.is_some(), "max_n": max_n });
            if let (true, Some(h)) = (witness, &found) {
                value["homotopy"] = homotopy_value(h);
            }
            Answer::verdict(found.is_some(), value)
        }
        Command::Product { g, h } => {
            Answer::value(graph_value(&product(&load_graph(g)?, &load_graph(h)?)))
        }
        Command::Quotient { graph, partition } => {
            let g = load_graph(graph)?;
            let (text, _) = load_text(partition, "partition")?;
            let classes: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| Error::Parse {
                field: "partition".into(),
                message: e.to_string(),
            })?;
            let (q, projection) = quotient(&g, &classes)?;
            Answer::value(json!({ "quotient": graph_value(&q), "projection": map_value(&projection) }))
        }
        Command::Pushout { f, i } => {
            let po = pushout(&load_map(f)?, &load_map(i)?)?;
            Answer::value(json!({
                "object": graph_value(&po.object),
                "left_leg": map_value(&po.left_leg),
                "right_leg": map_value(&po.right_leg),
            }))
        }
        Command::Glue { map, n } => {
            let (g, j) = glue(&load_map(map)?, *n)?;
            Answer::value(json!({ "glue": graph_value(&g), "inclusion": map_value(&j) }))
        }
        Command::Hep { map, n } => {
            let i = load_map(map)?;
            let class = hep_classify(&i)?;
            let verdict = has_hep(&i, *n, guard)?;
            let mut value = json!({ "verdict": verdict, "n": n, "class": format!("{class:?}") });
            if witness && verdict {
                let embedding = glue_into_cylinder(&i, *n)?;
                if let Some(r) = find_retraction(&embedding, guard)? {
                    value["retraction"] = map_value(&r);
                }
            }
            Answer::verdict(verdict, value)
        }
        Command::Lift { square } => {
            let sq = load_square(square)?;
            let lift = find_lift(&sq, guard)?;
            let mut value = json!({ "verdict": lift.is_some() });
            if let Some(l) = &lift {
                value["lift"] = map_value(l);
            }
            Answer::verdict(lift.is_some(), value)
        }
        Command::ClassifyF { map, unfold_cap } => {
            let p = load_map(map)?;
            let verdict = in_class_f(&p)?;
            let (edges, vertices) = edge_vertex_surjectivity(&p);
            let mut value = json!({
                "verdict": verdict,
                "edge_surjective": edges,
                "vertex_surjective": vertices,
            });
            if let Some(cap) = unfold_cap {
                let mut oracle = UnfoldOracle::new(*cap)?;
                let failing = oracle.failing_square(&p);
                value["unfold_oracle"] = json!({ "cap": cap, "lifts": failing.is_none() });
                if let (true, Some(sq)) = (witness, &failing) {
                    value["unfold_oracle"]["failing_square"] = square_value(sq);
                }
            }
            Answer::verdict(verdict, value)
        }
        Command::ClassifyC { map } => {
            let verdict = in_class_c(&load_map(map)?);
            Answer::verdict(verdict, json!({ "verdict": verdict }))
        }
        Command::Section { map } => {
            let p = load_map(map)?;
            match section_of(&p, guard) {
                Ok(s) => Answer::verdict(true, json!({ "verdict": true, "section": map_value(&s) })),
                Err(Error::Precondition(reason)) => {
                    Answer::verdict(false, json!({ "verdict": false, "reason": reason }))
                }
                Err(e) => return Err(e),
            }
        }
        Command::Verify => {
            let reports = conformance_suite(guard)?;
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                if witness {
                    text.push_str(&r.to_string());
                } else {
                    let ok = r.transcript.iter().filter(|l| l.matches()).count();
                    text.push_str(&format!("{} {} ({ok}/{} lines)\n", r.verdict, r.check_name, r.transcript.len()));
                }
            }
            let value = serde_json::to_value(&reports).expect("reports serialize");
            Answer { verdict: Some(passed), value, text: Some(text) }
        }
    })
}

