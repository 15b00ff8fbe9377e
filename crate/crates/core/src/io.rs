//! JSON interchange for solutions, construction results, solver outcomes and
//! designs. Output is canonical: blocks and arcs come out in the order the
//! solution normalizer fixed, and maps serialize in field order.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::constructions::{Certificate, ConstructionResult};
use crate::designs::BlockDesign;
use crate::error::{GroomingError, Result};
use crate::ring::{Block, GroomingSolution, HalfArcRule, RingInstance};
use crate::solver::{SolveOutcome, SolveStatus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub vertices: Vec<usize>,
    pub arcs: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub n: usize,
    pub c: u32,
    pub half_arc_rule: String,
    /// Present for the explicit rule: `orientation[i]` is true when `(i, i + N/2)` is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<bool>>,
    pub blocks: Vec<BlockJson>,
    pub adm: u64,
    pub provenance: String,
}

/// A construction's solution with its bound comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    #[serde(flatten)]
    pub solution: SolutionJson,
    pub predicted_adm: Option<u64>,
    pub lower_bound: u64,
    pub lower_bound_name: String,
    pub gap: u64,
    pub certificate: Certificate,
}

/// A solver run: the witness plus the search summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    #[serde(flatten)]
    pub solution: SolutionJson,
    pub status: SolveStatus,
    pub lower_bound: u64,
    pub nodes_explored: u64,
    pub orientations: usize,
}

/// A lower bound with its exact value written as a fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundJson {
    pub name: String,
    pub c: u32,
    pub n: usize,
    pub value: String,
    pub ceiling: u64,
    pub k: u64,
    pub r: u64,
    pub alpha: Option<i64>,
}

/// Design file layout, shared with the design cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub points: usize,
    pub groups: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    pub construction_name: String,
}

impl From<&GroomingSolution> for SolutionJson {
    fn from(sol: &GroomingSolution) -> Self {
        let inst = sol.instance();
        let orientation = match inst.rule() {
            HalfArcRule::AllForward => None,
            HalfArcRule::Explicit(v) => Some(v.clone()),
        };
        SolutionJson {
            n: inst.n(),
            c: inst.c(),
            half_arc_rule: inst.rule().name().to_string(),
            orientation,
            blocks: sol
                .blocks()
                .iter()
                .map(|b| BlockJson {
                    vertices: b.vertices().to_vec(),
                    arcs: b.arcs().iter().map(|&(u, v)| [u, v]).collect(),
                })
                .collect(),
            adm: sol.adm() as u64,
            provenance: sol.provenance().to_string(),
        }
    }
}

impl From<&ConstructionResult> for ConstructionJson {
    fn from(r: &ConstructionResult) -> Self {
        ConstructionJson {
            solution: SolutionJson::from(&r.solution),
            predicted_adm: r.predicted_adm,
            lower_bound: r.lower_bound.ceiling,
            lower_bound_name: r.lower_bound.name.to_string(),
            gap: r.optimality.gap(),
            certificate: r.optimality.certificate(),
        }
    }
}

impl From<&SolveOutcome> for OutcomeJson {
    fn from(o: &SolveOutcome) -> Self {
        OutcomeJson {
            solution: SolutionJson::from(&o.solution),
            status: o.status,
            lower_bound: o.bound_used,
            nodes_explored: o.nodes_explored,
            orientations: o.orientations,
        }
    }
}

impl From<&BoundReport> for BoundJson {
    fn from(b: &BoundReport) -> Self {
        BoundJson {
            name: b.name.as_str().to_string(),
            c: b.c,
            n: b.n,
            value: b.value.to_string(),
            ceiling: b.ceiling,
            k: b.k,
            r: b.r,
            alpha: b.alpha,
        }
    }
}

impl DesignJson {
    pub fn new(kind: impl Into<String>, design: &BlockDesign) -> Self {
        DesignJson {
            kind: kind.into(),
            points: design.points(),
            groups: design.groups().to_vec(),
            blocks: design.blocks().to_vec(),
            construction_name: design.construction().to_string(),
        }
    }

    pub fn to_design(&self) -> BlockDesign {
        let block_size = self.blocks.first().map_or(0, Vec::len);
        BlockDesign::new(self.points, self.groups.clone(), self.blocks.clone(), block_size, self.construction_name.clone())
    }
}

impl SolutionJson {
    /// Rebuilds the solution. The recorded vertex lists and ADM total must
    /// agree with the arcs; admissibility is left to validation.
    pub fn to_solution(&self) -> Result<GroomingSolution> {
        let rule = match (self.half_arc_rule.as_str(), &self.orientation) {
            ("all-forward", None) => HalfArcRule::AllForward,
            ("explicit", Some(v)) => HalfArcRule::Explicit(v.clone()),
            ("explicit", None) => return Err(schema("explicit rule without an orientation vector")),
            ("all-forward", Some(_)) => return Err(schema("orientation vector given with the all-forward rule")),
            (other, _) => return Err(schema(format!("unknown half_arc_rule {other:?}"))),
        };
        let instance = RingInstance::with_rule(self.n, self.c, rule).map_err(|e| schema(e.to_string()))?;
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let block = Block::new(b.arcs.iter().map(|&[u, v]| (u, v)));
            let mut listed = b.vertices.clone();
            listed.sort_unstable();
            listed.dedup();
            if listed.len() != b.vertices.len() || listed != block.vertices() {
                return Err(schema(format!("block {i}: vertices {:?} do not match its arcs", b.vertices)));
            }
            blocks.push(block);
        }
        let provenance = self.provenance.parse()?;
        let sol = GroomingSolution::new(instance, blocks, provenance);
        if sol.adm() as u64 != self.adm {
            return Err(schema(format!("adm is {} but the blocks have {} vertices", self.adm, sol.adm())));
        }
        Ok(sol)
    }
}

fn schema(msg: impl Into<String>) -> GroomingError {
    GroomingError::Schema(msg.into())
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn solution_to_json(sol: &GroomingSolution) -> Result<String> {
    to_json_string(&SolutionJson::from(sol))
}

/// Parses a solution document; construction and solver extras are ignored.
pub fn parse_solution(text: &str) -> Result<GroomingSolution> {
    let doc: SolutionJson = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    doc.to_solution()
}

pub fn read_solution(path: &Path) -> Result<GroomingSolution> {
    parse_solution(&fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_best, construct_c2_recursive};

    #[test]
    fn round_trip() {
        for r in [construct_best(3, 13).unwrap(), construct_c2_recursive(8).unwrap()] {
            let text = solution_to_json(&r.solution).unwrap();
            let back = parse_solution(&text).unwrap();
            assert_eq!(back, r.solution);
            assert_eq!(solution_to_json(&back).unwrap(), text);
        }
    }

    #[test]
    fn construction_extras_parse_as_a_solution() {
        let r = construct_best(3, 13).unwrap();
        let text = to_json_string(&ConstructionJson::from(&r)).unwrap();
        assert!(text.contains("\"certificate\": \"optimal\""));
        assert_eq!(parse_solution(&text).unwrap(), r.solution);
    }

    #[test]
    fn schema_violations() {
        let good = solution_to_json(&construct_best(1, 3).unwrap().solution).unwrap();
        let bad_adm = good.replace("\"adm\": 3", "\"adm\": 4");
        assert!(matches!(parse_solution(&bad_adm), Err(GroomingError::Schema(_))));
        assert!(matches!(parse_solution("{\"n\": 3}"), Err(GroomingError::Schema(_))));
        let bad_rule = good.replace("all-forward", "sideways");
        assert!(matches!(parse_solution(&bad_rule), Err(GroomingError::Schema(_))));
    }
}
