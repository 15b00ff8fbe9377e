//! Constructive upper bounds: gadget templates, vertex doubling and the
//! per-`C` families. Every result is validated before it is returned.

mod best;
mod c1;
mod c2;
mod c3;
pub mod gadgets;
mod triangular;

use serde::{Deserialize, Serialize};

use crate::bounds::{lb_best, BoundReport, Rational};
use crate::designs::BlockDesign;
use crate::error::{GroomingError, Result};
use crate::ring::{validate_block, Block, GroomingSolution, HalfArcRule, Node, Provenance, RingInstance};

pub use best::{construct_best, construct_named, CONSTRUCTION_NAMES};
pub use c1::{c1_formula, construct_c1};
pub use c2::{c2_recursive_formula, c2_tripartite_formula, construct_c2_recursive, construct_c2_tripartite};
pub use c3::{c3_formula, c3_small_decomposition, construct_c3};
pub use gadgets::{instantiate_gadget, Gadget, GadgetName};
pub use triangular::construct_triangular;

/// How a construction compares with the best lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimality {
    /// The ADM count meets the lower bound.
    Optimal,
    /// `achieved - bound` and `achieved / bound`.
    Gap { gap: u64, ratio: Rational },
    /// A gap, for a family with a proven asymptotic approximation ratio `claim`.
    Approximation { gap: u64, ratio: Rational, claim: Rational },
}

impl Optimality {
    fn new(achieved: u64, bound: u64, claim: Option<Rational>) -> Self {
        if achieved <= bound {
            return Optimality::Optimal;
        }
        let gap = achieved - bound;
        let ratio = Rational::new(achieved as i128, bound.max(1) as i128);
        match claim {
            Some(claim) => Optimality::Approximation { gap, ratio, claim },
            None => Optimality::Gap { gap, ratio },
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, Optimality::Optimal)
    }

    pub fn gap(&self) -> u64 {
        match self {
            Optimality::Optimal => 0,
            Optimality::Gap { gap, .. } | Optimality::Approximation { gap, .. } => *gap,
        }
    }

    pub fn certificate(&self) -> Certificate {
        match self {
            Optimality::Optimal => Certificate::Optimal,
            Optimality::Gap { .. } => Certificate::Gap,
            Optimality::Approximation { .. } => Certificate::Approximation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Optimal,
    Gap,
    Approximation,
}

/// A validated solution with its predicted and achieved cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub name: String,
    pub solution: GroomingSolution,
    /// Closed-form cost on the construction's declared residue classes.
    pub predicted_adm: Option<u64>,
    pub achieved_adm: u64,
    pub lower_bound: BoundReport,
    pub optimality: Optimality,
}

impl ConstructionResult {
    /// Validates `blocks` on `instance` and attaches the bound comparison.
    fn finish(
        name: &str,
        instance: RingInstance,
        blocks: Vec<Block>,
        predicted_adm: Option<u64>,
        claim: Option<Rational>,
    ) -> Result<Self> {
        let solution = GroomingSolution::new(instance, blocks, Provenance::Construction(name.to_string()));
        solution.validate()?;
        let achieved_adm = solution.adm() as u64;
        let lower_bound = lb_best(solution.instance().c(), solution.instance().n())?;
        let optimality = Optimality::new(achieved_adm, lower_bound.ceiling, claim);
        Ok(ConstructionResult { name: name.to_string(), solution, predicted_adm, achieved_adm, lower_bound, optimality })
    }

    /// The same blocks offered for a larger grooming factor.
    fn lifted(&self, c: u32) -> Result<Self> {
        if self.solution.instance().c() == c {
            return Ok(self.clone());
        }
        let instance = self.solution.instance().with_c(c)?;
        let claim = match &self.optimality {
            Optimality::Approximation { claim, .. } => Some(*claim),
            _ => None,
        };
        Self::finish(&self.name, instance, self.solution.blocks().to_vec(), None, claim)
    }
}

fn not_applicable(name: &str, reason: impl Into<String>) -> GroomingError {
    GroomingError::NotApplicable { name: name.to_string(), reason: reason.into() }
}

/// Labels for a doubled point set: optional `inf` at 0, then `0A..(m-1)A`,
/// then `0B..(m-1)B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubledLayout {
    pub points: usize,
    pub infinity: bool,
}

impl DoubledLayout {
    pub fn new(points: usize, infinity: bool) -> Self {
        DoubledLayout { points, infinity }
    }

    pub fn n(&self) -> usize {
        2 * self.points + usize::from(self.infinity)
    }

    pub fn a(&self, x: usize) -> Node {
        usize::from(self.infinity) + x
    }

    pub fn b(&self, x: usize) -> Node {
        usize::from(self.infinity) + self.points + x
    }

    pub fn infinity(&self) -> Option<Node> {
        self.infinity.then_some(0)
    }

    /// Maps a block on the relative doubled layout of `group` (same
    /// `infinity`, `group.len()` points) into this layout.
    fn embed(&self, block: &Block, group: &[usize]) -> Block {
        let inner = DoubledLayout::new(group.len(), self.infinity);
        let u = group.len();
        block.filter_map_nodes(|r| {
            Some(if self.infinity && r == 0 {
                0
            } else if r < inner.b(0) {
                self.a(group[r - inner.a(0)])
            } else {
                debug_assert!(r < inner.b(0) + u);
                self.b(group[r - inner.b(0)])
            })
        })
    }
}

/// Replaces each triple `{i, j, k}` of `design` with a doubled triangle on
/// `iA, jA, kA, iB, jB, kB`, or with `T_5` on `inf, iA, jA, iB, jB` when the
/// triple contains `infinity_point`.
///
/// The remaining points are relabelled in increasing order; the layout is
/// returned alongside the blocks.
pub fn double_vertices(
    design: &BlockDesign,
    infinity_point: Option<usize>,
    c: u32,
) -> Result<(DoubledLayout, Vec<Block>)> {
    crate::designs::validate_design(design).map_err(|e| GroomingError::InvalidDesign(e.to_string()))?;
    if design.block_size() != 3 && !design.blocks().is_empty() {
        return Err(GroomingError::InvalidDesign("vertex doubling needs triples".into()));
    }
    if infinity_point.is_some_and(|p| p >= design.points()) {
        return Err(GroomingError::InvalidParameter("infinity point is not in the design".into()));
    }
    let layout = DoubledLayout::new(design.points() - usize::from(infinity_point.is_some()), infinity_point.is_some());
    let relabel = |x: usize| match infinity_point {
        Some(p) if x > p => x - 1,
        _ => x,
    };
    let instance = RingInstance::new(layout.n().max(2), c)?;
    let mut blocks = Vec::with_capacity(design.blocks().len());
    for t in design.blocks() {
        let block = match infinity_point {
            Some(p) if t.contains(&p) => {
                let rest: Vec<usize> = t.iter().filter(|&&x| x != p).map(|&x| relabel(x)).collect();
                let labels = [0, layout.a(rest[0]), layout.a(rest[1]), layout.b(rest[0]), layout.b(rest[1])];
                instantiate_gadget(GadgetName::T5Infty, &labels, &instance)?
            }
            _ => doubled_triangle(&layout, [relabel(t[0]), relabel(t[1]), relabel(t[2])], &instance)?,
        };
        blocks.push(block);
    }
    Ok((layout, blocks))
}

/// Doubled triangle on the copies of the points `i < j < k`.
fn doubled_triangle(layout: &DoubledLayout, [i, j, k]: [usize; 3], instance: &RingInstance) -> Result<Block> {
    let labels = [layout.a(i), layout.a(j), layout.a(k), layout.b(i), layout.b(j), layout.b(k)];
    instantiate_gadget(GadgetName::K222, &labels, instance)
}

/// Deletes `deleted` from a solution on `n` nodes and relabels the survivors
/// `0..n'` in order. Arcs at deleted nodes disappear and emptied blocks are
/// dropped. Loads never increase, but orientations may no longer match `T_n'`.
fn delete_vertices(blocks: &[Block], n: usize, deleted: &[Node]) -> (Vec<Block>, usize) {
    let mut map = vec![None; n];
    let mut next = 0;
    for (x, slot) in map.iter_mut().enumerate() {
        if !deleted.contains(&x) {
            *slot = Some(next);
            next += 1;
        }
    }
    let blocks = blocks.iter().map(|b| b.filter_map_nodes(|x| map[x])).filter(|b| !b.is_empty()).collect();
    (blocks, next)
}

/// Makes a partition of some tournament on `n` nodes valid for `T_n`.
///
/// Diameter pairs keep the orientation the blocks already use. Any other arc
/// pointing the wrong way is removed from its block and its reverse becomes a
/// block of its own. Blocks still over capacity are split into single arcs.
fn repair(blocks: Vec<Block>, n: usize, c: u32) -> Result<(RingInstance, Vec<Block>)> {
    let rule = if n % 2 == 0 {
        let h = n / 2;
        let mut forward = vec![true; h];
        for &(u, v) in blocks.iter().flat_map(|b| b.arcs()) {
            if (u + h) % n == v {
                forward[u.min(v)] = u < v;
            }
        }
        HalfArcRule::Explicit(forward)
    } else {
        HalfArcRule::AllForward
    };
    let instance = RingInstance::with_rule(n, c, rule)?;
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let (keep, flip): (Vec<_>, Vec<_>) = block.arcs().iter().partition(|&&(u, v)| instance.has_arc(u, v));
        out.extend(flip.into_iter().map(|&(u, v)| Block::new([(v, u)])));
        let kept = Block::new(keep.into_iter().copied());
        if validate_block(&kept, &instance).is_ok() {
            out.push(kept);
        } else {
            out.extend(kept.arcs().iter().map(|&a| Block::new([a])));
        }
    }
    Ok((instance, out))
}

/// Whether every diameter arc in `instance` goes forward.
fn is_all_forward(instance: &RingInstance) -> bool {
    instance.diameter_arcs().iter().all(|&(u, v)| u < v)
}

/// Normalizes an explicit all-forward rule to the default spelling.
fn canonical_rule(instance: RingInstance) -> Result<RingInstance> {
    if is_all_forward(&instance) {
        RingInstance::new(instance.n(), instance.c())
    } else {
        Ok(instance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{gdd3, steiner_triple_system, GroupType};

    #[test]
    fn doubling_a_triangle() {
        let d = BlockDesign::pairwise_balanced(3, vec![vec![0, 1, 2]], 3, "triangle");
        let (layout, blocks) = double_vertices(&d, None, 3).unwrap();
        assert_eq!(layout.n(), 6);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].adm(), 6);
    }

    #[test]
    fn doubling_a_gdd_of_type_2_4() {
        let d = gdd3(&GroupType::uniform(2, 4).unwrap()).unwrap();
        let (_, blocks) = double_vertices(&d, None, 3).unwrap();
        assert_eq!(blocks.len(), 8);
        assert_eq!(blocks.iter().map(Block::adm).sum::<usize>(), 48);
    }

    #[test]
    fn doubling_with_infinity_covers_the_whole_tournament() {
        // STS(7) with point 6 as infinity: a decomposition of T_13.
        let sts = steiner_triple_system(7).unwrap();
        let (layout, blocks) = double_vertices(&sts, Some(6), 3).unwrap();
        assert_eq!(layout.n(), 13);
        let sol = GroomingSolution::new(RingInstance::new(13, 3).unwrap(), blocks, Provenance::External);
        sol.validate().unwrap();
    }

    #[test]
    fn doubling_the_empty_design() {
        let d = BlockDesign::new(2, vec![vec![0, 1]], vec![], 3, "one group");
        assert!(double_vertices(&d, None, 3).unwrap().1.is_empty());
    }

    #[test]
    fn deletion_then_repair_yields_a_valid_partition() {
        let full = construct_c1(9).unwrap();
        let (blocks, n) = delete_vertices(full.solution.blocks(), 9, &[8]);
        assert_eq!(n, 8);
        let (inst, blocks) = repair(blocks, n, 1).unwrap();
        GroomingSolution::new(inst, blocks, Provenance::External).validate().unwrap();
    }
}
