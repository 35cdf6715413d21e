//! Named examples, JSON inputs and the verdict ladder.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{build_coxeter, CoxeterError, CoxeterGroup, CoxeterMatrix, ROOT_BOUND};
use crate::graphs::{graph_protorootoid, GraphError, GraphRootoid, Protomesh};
use crate::groupoid::{perm_group, GroupoidError, SimpleGraph, System, DEFAULT_MORPHISM_BOUND};
use crate::order::{
    n_complete_check, preprincipal_unchecked, rootoid_check_with, VerdictReport, DEFAULT_JOP_WIDTH,
};
use crate::proto::{build_from_c0, HalfSpaces, ProtoError, Protorootoid};
use crate::ring::Universe;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("unknown corpus entry `{0}`")]
    Unknown(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("bad input: {0}")]
    Bad(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
}

/// Expected value of one verdict field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pin {
    pub key: &'static str,
    pub expected: bool,
}

const fn pin(key: &'static str, expected: bool) -> Pin {
    Pin { key, expected }
}

#[derive(Debug, Clone)]
pub enum Source {
    Coxeter(Box<CoxeterGroup>),
    Group(Box<HalfSpaces>),
    Graph(Box<GraphRootoid>),
    Mesh(Protomesh),
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub recipe: String,
    pub pins: Vec<Pin>,
    pub source: Source,
    pr: Protorootoid,
    halves: Option<HalfSpaces>,
}

pub const CORPUS_NAMES: &[&str] = &[
    "A1",
    "A2",
    "A3",
    "B3",
    "D4",
    "H3",
    "I2(2)",
    "I2(3)",
    "I2(4)",
    "I2(6)",
    "cyclic4",
    "dihedral8",
    "k23",
    "cube-minus-vertex",
    "hexagon",
    "pentagon",
    "cube",
    "tree",
    "mesh-xyz",
];

fn coxeter_pins() -> Vec<Pin> {
    [
        "faithful",
        "wec",
        "rootoid",
        "complete",
        "preprincipal",
        "even",
        "principal",
    ]
    .iter()
    .map(|k| pin(k, true))
    .collect()
}

fn named_graph(vertices: &[&str], edges: &[(&str, &str)]) -> Result<SimpleGraph, InputError> {
    Ok(SimpleGraph::from_names(vertices, edges)?)
}

fn letters_cycle(n: usize) -> Result<SimpleGraph, InputError> {
    let names = ["p", "q", "r", "s", "t", "u", "v", "w"];
    let edges: Vec<(&str, &str)> = (0..n).map(|i| (names[i], names[(i + 1) % n])).collect();
    named_graph(&names[..n], &edges)
}

fn permutation_system(gens: &[(&str, Vec<u32>)]) -> Result<System, InputError> {
    let g = perm_group(gens, DEFAULT_MORPHISM_BOUND)?;
    let s = gens
        .iter()
        .map(|(name, _)| {
            g.morphism_by_name(name)
                .ok_or_else(|| InputError::Bad(format!("generator {name} lost")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(System::new(g, s)?)
}

/// Builds a named corpus entry.
pub fn corpus(name: &str) -> Result<CorpusEntry, InputError> {
    let name = name.strip_prefix("corpus:").unwrap_or(name);
    let entry = match name {
        "cyclic4" => CorpusEntry::group(
            "cyclic4",
            "cyclic group of order 4 with S = {x, x*}",
            permutation_system(&[("x", vec![1, 2, 3, 0]), ("x*", vec![3, 0, 1, 2])])?,
            vec![
                pin("wec", true),
                pin("rootoid", true),
                pin("complete", true),
                pin("even", true),
            ],
        )?,
        "dihedral8" => {
            let r = vec![0, 3, 2, 1];
            let s = vec![1, 0, 3, 2];
            let t: Vec<u32> = (0..4).map(|i| r[s[r[i] as usize] as usize]).collect();
            CorpusEntry::group(
                "dihedral8",
                "dihedral group of order 8 with S = {r, s, t = rsr}",
                permutation_system(&[("r", r), ("s", s), ("t", t)])?,
                vec![
                    pin("wec", true),
                    pin("rootoid", true),
                    pin("complete", true),
                    pin("even", true),
                ],
            )?
        }
        "k23" => CorpusEntry::from_graph(
            "k23",
            "5-vertex graph p-q, p-r, p-s, q-t, r-t, s-t",
            named_graph(
                &["p", "q", "r", "s", "t"],
                &[
                    ("p", "q"),
                    ("p", "s"),
                    ("p", "r"),
                    ("q", "t"),
                    ("r", "t"),
                    ("s", "t"),
                ],
            )?,
            vec![pin("wec", false)],
        )?,
        "cube-minus-vertex" => CorpusEntry::from_graph(
            "cube-minus-vertex",
            "cube graph with one vertex deleted",
            named_graph(
                &["p", "q", "r", "s", "t", "u", "v"],
                &[
                    ("p", "q"),
                    ("q", "r"),
                    ("r", "v"),
                    ("s", "p"),
                    ("s", "u"),
                    ("s", "t"),
                    ("t", "q"),
                    ("t", "v"),
                    ("u", "v"),
                ],
            )?,
            vec![
                pin("wec", true),
                pin("meet_semilattice", true),
                pin("jop", false),
                pin("rootoid", false),
            ],
        )?,
        "hexagon" => CorpusEntry::from_graph(
            "hexagon",
            "6-cycle",
            letters_cycle(6)?,
            vec![
                pin("rootoid", true),
                pin("complete", true),
                pin("preprincipal", true),
            ],
        )?,
        "pentagon" => CorpusEntry::from_graph(
            "pentagon",
            "5-cycle",
            letters_cycle(5)?,
            vec![
                pin("rootoid", true),
                pin("complete", false),
                pin("preprincipal", false),
            ],
        )?,
        "cube" => {
            let names: Vec<String> = (0..8).map(|i| format!("{i:03b}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut edges = Vec::new();
            for a in 0..8usize {
                for bit in 0..3 {
                    let b = a ^ 1 << bit;
                    if a < b {
                        edges.push((refs[a], refs[b]));
                    }
                }
            }
            CorpusEntry::from_graph(
                "cube",
                "edge graph of the 3-cube",
                named_graph(&refs, &edges)?,
                vec![
                    pin("rootoid", true),
                    pin("complete", true),
                    pin("even", true),
                ],
            )?
        }
        "tree" => CorpusEntry::from_graph(
            "tree",
            "tree a-b, b-c, b-d",
            named_graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")])?,
            vec![pin("rootoid", true), pin("complete", false)],
        )?,
        "mesh-xyz" => {
            let u = Universe::new(["x", "y", "z"]).map_err(|e| InputError::Bad(e.to_string()))?;
            let family = [vec![], vec![0], vec![1], vec![2]]
                .into_iter()
                .map(|on: Vec<usize>| {
                    let mut b = FixedBitSet::with_capacity(3);
                    on.into_iter().for_each(|i| b.insert(i));
                    b
                })
                .collect();
            CorpusEntry::mesh(
                "mesh-xyz",
                "mesh {∅, {x}, {y}, {z}} in the subsets of {x, y, z}",
                u,
                family,
            )?
        }
        other => match CoxeterMatrix::preset(other) {
            Ok(m) => CorpusEntry::from_coxeter(other, &m)?,
            Err(_) => return Err(InputError::Unknown(other.to_string())),
        },
    };
    Ok(entry)
}

/// JSON input formats.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputSpec {
    Coxeter {
        matrix: CoxeterMatrix,
    },
    Graph {
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
    },
    Group {
        generators: Vec<(String, Vec<u32>)>,
    },
    Mesh {
        universe: Vec<String>,
        family: Vec<Vec<String>>,
    },
}

/// `corpus:NAME`, a bare corpus name, or JSON text.
pub fn parse_input(text: &str) -> Result<CorpusEntry, InputError> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return corpus(trimmed);
    }
    let spec: InputSpec = serde_json::from_str(trimmed).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    match spec {
        InputSpec::Coxeter { matrix } => {
            let m = CoxeterMatrix::new(matrix.gens, matrix.m)?;
            CorpusEntry::from_coxeter("input", &m)
        }
        InputSpec::Graph { vertices, edges } => {
            let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let e: Vec<(&str, &str)> = edges
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            CorpusEntry::from_graph("input", "graph from JSON", named_graph(&v, &e)?, vec![])
        }
        InputSpec::Group { generators } => {
            let gens: Vec<(&str, Vec<u32>)> = generators
                .iter()
                .map(|(n, p)| (n.as_str(), p.clone()))
                .collect();
            CorpusEntry::group(
                "input",
                "permutation group from JSON",
                permutation_system(&gens)?,
                vec![],
            )
        }
        InputSpec::Mesh { universe, family } => {
            let u = Universe::new(universe).map_err(|e| InputError::Bad(e.to_string()))?;
            let fam = family
                .iter()
                .map(|member| {
                    let mut b = FixedBitSet::with_capacity(u.len());
                    for label in member {
                        b.insert(
                            u.position(label)
                                .ok_or_else(|| InputError::Bad(format!("unknown label {label}")))?,
                        );
                    }
                    Ok(b)
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            CorpusEntry::mesh("input", "mesh from JSON", u, fam)
        }
    }
}

impl CorpusEntry {
    fn from_coxeter(name: &str, m: &CoxeterMatrix) -> Result<Self, InputError> {
        let cg = build_coxeter(m, ROOT_BOUND)?;
        let pr = cg.reflection_cocycle()?;
        let halves = build_from_c0(cg.system())?;
        Ok(CorpusEntry {
            name: name.into(),
            recipe: format!("Coxeter system on {}", m.gens.join(",")),
            pins: coxeter_pins(),
            source: Source::Coxeter(Box::new(cg)),
            pr,
            halves: Some(halves),
        })
    }

    fn group(name: &str, recipe: &str, sys: System, pins: Vec<Pin>) -> Result<Self, InputError> {
        let halves = build_from_c0(&sys)?;
        let pr = if sys.is_even() {
            halves.even_variant()?.pr
        } else {
            halves.pr.clone()
        };
        Ok(CorpusEntry {
            name: name.into(),
            recipe: recipe.into(),
            pins,
            source: Source::Group(Box::new(halves.clone())),
            pr,
            halves: Some(halves),
        })
    }

    fn from_graph(
        name: &str,
        recipe: &str,
        graph: SimpleGraph,
        pins: Vec<Pin>,
    ) -> Result<Self, InputError> {
        let gr = graph_protorootoid(&graph)?;
        Ok(CorpusEntry {
            name: name.into(),
            recipe: recipe.into(),
            pins,
            pr: gr.preferred().clone(),
            halves: Some(gr.half_spaces.clone()),
            source: Source::Graph(Box::new(gr)),
        })
    }

    fn mesh(
        name: &str,
        recipe: &str,
        u: Arc<Universe>,
        family: Vec<FixedBitSet>,
    ) -> Result<Self, InputError> {
        let mesh = Protomesh::new(u, family)?;
        let pr = mesh.protorootoid()?;
        Ok(CorpusEntry {
            name: name.into(),
            recipe: recipe.into(),
            pins: vec![pin("rootoid", true)],
            source: Source::Mesh(mesh),
            pr,
            halves: None,
        })
    }

    /// The protorootoid the verdicts are computed on.
    pub fn pr(&self) -> &Protorootoid {
        &self.pr
    }

    pub fn system(&self) -> Option<&System> {
        self.halves.as_ref().map(|h| &h.system)
    }

    pub fn half_spaces(&self) -> Option<&HalfSpaces> {
        self.halves.as_ref()
    }

    pub fn coxeter(&self) -> Option<&CoxeterGroup> {
        match &self.source {
            Source::Coxeter(cg) => Some(cg),
            _ => None,
        }
    }

    pub fn graph(&self) -> Option<&GraphRootoid> {
        match &self.source {
            Source::Graph(g) => Some(g),
            _ => None,
        }
    }
}

/// Verdicts from faithfulness up to principality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub faithful: bool,
    /// Weak exchange condition; needs a generating set.
    pub wec: Option<bool>,
    pub meet_semilattice: bool,
    pub jop: bool,
    pub rootoid: bool,
    pub complete: bool,
    pub preprincipal: bool,
    pub two_complete: bool,
    pub even: Option<bool>,
    /// Preprincipal rootoid whose atoms are exactly the generators.
    pub principal: Option<bool>,
    pub report: VerdictReport,
}

impl Ladder {
    pub fn field(&self, key: &str) -> Option<bool> {
        match key {
            "faithful" => Some(self.faithful),
            "wec" => self.wec,
            "meet_semilattice" => Some(self.meet_semilattice),
            "jop" => Some(self.jop),
            "rootoid" => Some(self.rootoid),
            "complete" => Some(self.complete),
            "preprincipal" => Some(self.preprincipal),
            "two_complete" => Some(self.two_complete),
            "even" => self.even,
            "principal" => self.principal,
            _ => None,
        }
    }
}

pub fn ladder(entry: &CorpusEntry, jop_width: usize) -> Ladder {
    let pr = entry.pr();
    let report = rootoid_check_with(pr, jop_width);
    let pre = preprincipal_unchecked(pr);
    let preprincipal = report.rootoid && pre.holds;
    let wec = entry.half_spaces().map(|h| h.wec_check().holds);
    let even = entry.system().map(System::is_even);
    let principal = entry.system().map(|sys| {
        let mut gens = sys.gens().to_vec();
        gens.sort();
        preprincipal && pre.all_atoms() == gens
    });
    Ladder {
        faithful: report.faithful,
        wec,
        meet_semilattice: report.meet_semilattice,
        jop: report.jop,
        rootoid: report.rootoid,
        complete: report.complete,
        preprincipal,
        two_complete: n_complete_check(pr, 2),
        even,
        principal,
        report,
    }
}

pub fn default_ladder(entry: &CorpusEntry) -> Ladder {
    ladder(entry, DEFAULT_JOP_WIDTH)
}

/// Pins paired with the recomputed values.
pub fn pin_results(entry: &CorpusEntry, lad: &Ladder) -> Vec<(Pin, Option<bool>)> {
    entry
        .pins
        .iter()
        .map(|p| (p.clone(), lad.field(p.key)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_meets_its_pins() {
        for name in CORPUS_NAMES {
            if *name == "D4" || *name == "H3" {
                continue;
            }
            let e = corpus(name).unwrap();
            let lad = default_ladder(&e);
            for (p, got) in pin_results(&e, &lad) {
                assert_eq!(Some(p.expected), got, "{name} {}", p.key);
            }
        }
    }

    #[test]
    fn json_inputs() {
        let e =
            parse_input(r#"{"kind":"graph","vertices":["a","b"],"edges":[["a","b"]]}"#).unwrap();
        assert!(default_ladder(&e).rootoid);
        let e = parse_input(r#"{"kind":"group","generators":[["x",[1,0]]]}"#).unwrap();
        assert_eq!(e.pr().groupoid().morphism_count(), 2);
        assert!(matches!(
            parse_input("{\"kind\":\n 3}"),
            Err(InputError::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_input("nope"), Err(InputError::Unknown(_))));
    }
}
