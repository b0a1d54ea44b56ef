use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families.
///
/// | family        | vertices   | edges                         |
/// |---------------|------------|-------------------------------|
/// | `PathI`       | `0..=n`    | `ij` for `|i-j| <= 1` (loops everywhere) |
/// | `PathP`       | `1..=n`    | `i(i+1)`                      |
/// | `CompleteK`   | `1..=n`    | all `ij`, `i != j`            |
/// | `CycleC`      | `0..n`     | `i(i+1 mod n)`, `n >= 3`      |
/// | `LoopedTailL` | `0..=n`    | `i(i+1)` plus the loop `00`   |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    PathI,
    PathP,
    CompleteK,
    CycleC,
    LoopedTailL,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PathI => "path_I",
            Family::PathP => "path_P",
            Family::CompleteK => "complete_K",
            Family::CycleC => "cycle_C",
            Family::LoopedTailL => "looped_tail_L",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path_I" | "I" => Family::PathI,
            "path_P" | "P" => Family::PathP,
            "complete_K" | "K" => Family::CompleteK,
            "cycle_C" | "C" => Family::CycleC,
            "looped_tail_L" | "L" => Family::LoopedTailL,
            other => return Err(Error::parse("family", format!("unknown family `{other}`"))),
        })
    }
}

fn numbered(range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| i.to_string()).collect()
}

pub fn family(family: Family, n: usize) -> Result<Graph> {
    let (labels, edges): (Vec<String>, Vec<(usize, usize)>) = match family {
        Family::PathI => {
            let edges = (0..=n)
                .flat_map(|i| [(i, i)].into_iter().chain((i < n).then_some((i, i + 1))))
                .collect();
            (numbered(0..=n), edges)
        }
        Family::PathP => (
            numbered(1..=n),
            (1..n).map(|i| (i - 1, i)).collect(),
        ),
        Family::CompleteK => {
            let edges = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            (numbered(1..=n), edges)
        }
        Family::CycleC => {
            if n < 3 {
                return Err(Error::InvalidFamilySize {
                    family: family.name(),
                    n,
                });
            }
            (numbered(0..n), (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        Family::LoopedTailL => {
            let mut edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
            edges.push((0, 0));
            (numbered(0..=n), edges)
        }
    };
    Ok(Graph::assemble(labels, edges).0)
}

impl Graph {
    pub fn interval(n: usize) -> Graph {
        family(Family::PathI, n).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        family(Family::PathP, n).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        family(Family::CompleteK, n).unwrap()
    }

    /// Panics for `n < 3`; use [`family`] for a checked constructor.
    pub fn cycle(n: usize) -> Graph {
        family(Family::CycleC, n).expect("cycles need at least three vertices")
    }

    pub fn looped_tail(n: usize) -> Graph {
        family(Family::LoopedTailL, n).unwrap()
    }
}
