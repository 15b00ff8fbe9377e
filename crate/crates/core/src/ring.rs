//! Ring instances, shortest-path tournaments, blocks and load accounting.
//!
//! Nodes are labelled `0..N` clockwise. A request `(u, v)` is routed along the
//! clockwise path `u, u+1, ..., v` and loads every ring arc `(e, e+1)` it
//! traverses. Ring arc `e` is identified by its tail `e`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{GroomingError, Result};

pub type Node = usize;
pub type Arc = (Node, Node);

/// Orientation policy for the diameter pairs `{i, i + N/2}` of an even ring.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum HalfArcRule {
    /// Arcs `(i, i + N/2)` for `0 <= i < N/2`.
    #[default]
    AllForward,
    /// `forward[i]` selects `(i, i + N/2)` when true and `(i + N/2, i)` otherwise.
    Explicit(Vec<bool>),
}

impl HalfArcRule {
    pub fn name(&self) -> &'static str {
        match self {
            HalfArcRule::AllForward => "all-forward",
            HalfArcRule::Explicit(_) => "explicit",
        }
    }

    fn forward(&self, i: usize) -> bool {
        match self {
            HalfArcRule::AllForward => true,
            HalfArcRule::Explicit(v) => v[i],
        }
    }
}

/// A ring of `N` nodes with grooming factor `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingInstance {
    n: usize,
    c: u32,
    rule: HalfArcRule,
}

impl RingInstance {
    /// Instance with the default all-forward diameter rule.
    pub fn new(n: usize, c: u32) -> Result<Self> {
        Self::with_rule(n, c, HalfArcRule::AllForward)
    }

    pub fn with_rule(n: usize, c: u32, rule: HalfArcRule) -> Result<Self> {
        if n < 2 {
            return Err(GroomingError::InvalidInstance(format!("ring needs at least 2 nodes, got {n}")));
        }
        if c < 1 {
            return Err(GroomingError::InvalidInstance("grooming factor must be at least 1".into()));
        }
        let rule = if n % 2 == 1 { HalfArcRule::AllForward } else { rule };
        if let HalfArcRule::Explicit(v) = &rule {
            if v.len() != n / 2 {
                return Err(GroomingError::InvalidInstance(format!(
                    "explicit rule needs {} choices, got {}",
                    n / 2,
                    v.len()
                )));
            }
        }
        Ok(RingInstance { n, c, rule })
    }

    /// Instance whose diameter arcs are exactly `arcs` (one per pair).
    pub fn from_diameter_arcs(n: usize, c: u32, arcs: &[Arc]) -> Result<Self> {
        if n % 2 == 1 {
            if arcs.is_empty() {
                return Self::new(n, c);
            }
            return Err(GroomingError::InvalidInstance("odd rings have no diameter arcs".into()));
        }
        let h = n / 2;
        let mut choice: Vec<Option<bool>> = vec![None; h];
        for &(u, v) in arcs {
            if u >= n || v >= n || (u + h) % n != v {
                return Err(GroomingError::InvalidInstance(format!("({u},{v}) is not a diameter arc")));
            }
            let i = u.min(v);
            if choice[i].replace(u < v).is_some() {
                return Err(GroomingError::InvalidInstance(format!("diameter pair {{{i},{}}} given twice", i + h)));
            }
        }
        let forward = choice
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| GroomingError::InvalidInstance(format!("diameter pair {{{i},{}}} missing", i + h))))
            .collect::<Result<Vec<_>>>()?;
        Self::with_rule(n, c, HalfArcRule::Explicit(forward))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn rule(&self) -> &HalfArcRule {
        &self.rule
    }

    /// Same ring and orientation with another grooming factor.
    pub fn with_c(&self, c: u32) -> Result<Self> {
        Self::with_rule(self.n, c, self.rule.clone())
    }

    /// Whether `(u, v)` is an arc of this instance's tournament.
    pub fn has_arc(&self, u: Node, v: Node) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        let d = arc_length(self.n, u, v);
        match (2 * d).cmp(&self.n) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.rule.forward(u.min(v)) == (u < v),
        }
    }

    /// The diameter arcs selected by the rule, ordered by their smaller endpoint.
    pub fn diameter_arcs(&self) -> Vec<Arc> {
        if self.n % 2 == 1 {
            return Vec::new();
        }
        let h = self.n / 2;
        (0..h)
            .map(|i| if self.rule.forward(i) { (i, i + h) } else { (i + h, i) })
            .collect()
    }

    /// Whether both instances induce the same tournament.
    pub fn same_tournament(&self, other: &RingInstance) -> bool {
        self.n == other.n && self.diameter_arcs() == other.diameter_arcs()
    }

    pub fn tournament(&self) -> Tournament {
        let mut arcs = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    arcs.push((u, v));
                }
            }
        }
        Tournament { n: self.n, arcs }
    }

    /// The instance seen from the counterclockwise fibre, relabelled by `x -> -x mod N`.
    pub fn mirrored(&self) -> RingInstance {
        let arcs: Vec<Arc> = self
            .diameter_arcs()
            .into_iter()
            .map(|(u, v)| (mirror_node(self.n, v), mirror_node(self.n, u)))
            .collect();
        RingInstance::from_diameter_arcs(self.n, self.c, &arcs).expect("mirror of a valid rule is valid")
    }
}

/// Clockwise length of the request `(u, v)`.
pub fn arc_length(n: usize, u: Node, v: Node) -> usize {
    (v + n - u) % n
}

fn mirror_node(n: usize, x: Node) -> Node {
    (n - x) % n
}

/// The shortest-path tournament `T_N` of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    arcs: Vec<Arc>,
}

impl Tournament {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.arcs.binary_search(&arc).is_ok()
    }
}

pub fn build_tournament(instance: &RingInstance) -> Tournament {
    instance.tournament()
}

/// A set of requests groomed on one wavelength.
///
/// Vertices are always the endpoints of the arcs, so no isolated vertex is
/// ever counted as an ADM.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Block {
    vertices: Vec<Node>,
    arcs: Vec<Arc>,
}

impl Block {
    /// Normalizes the arcs (sorted; duplicates are kept so validation can see them).
    pub fn new(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        let mut vertices: Vec<Node> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Block { vertices, arcs }
    }

    pub fn vertices(&self) -> &[Node] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn adm(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn min_vertex(&self) -> Option<Node> {
        self.vertices.first().copied()
    }

    /// Applies `f` to every endpoint; arcs mapped to `None` are dropped.
    pub fn filter_map_nodes(&self, f: impl Fn(Node) -> Option<Node>) -> Block {
        Block::new(self.arcs.iter().filter_map(|&(u, v)| Some((f(u)?, f(v)?))))
    }

    fn canonical_key(&self) -> (Option<Node>, usize, &[Arc]) {
        (self.min_vertex(), self.adm(), &self.arcs)
    }
}

/// Per-ring-arc load of a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadProfile(Vec<u32>);

impl LoadProfile {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// First ring arc whose load exceeds `c`.
    pub fn first_over(&self, c: u32) -> Option<(usize, u32)> {
        self.0.iter().copied().enumerate().find(|&(_, l)| l > c)
    }
}

/// Load profile of `block` on a ring of `n` nodes.
pub fn block_load(block: &Block, n: usize) -> Result<LoadProfile> {
    let mut diff = vec![0i64; n + 1];
    for &(u, v) in block.arcs() {
        for x in [u, v] {
            if x >= n {
                return Err(GroomingError::NodeOutOfRange { node: x, n });
            }
        }
        if u == v {
            return Err(GroomingError::SelfLoop(u));
        }
        if u < v {
            diff[u] += 1;
            diff[v] -= 1;
        } else {
            diff[u] += 1;
            diff[n] -= 1;
            diff[0] += 1;
            diff[v] -= 1;
        }
    }
    let mut acc = 0i64;
    let loads = diff[..n]
        .iter()
        .map(|d| {
            acc += d;
            acc as u32
        })
        .collect();
    Ok(LoadProfile(loads))
}

/// Why a block is not admissible.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BlockViolation {
    #[error("arc ({}, {}) has an endpoint outside the ring", .0.0, .0.1)]
    NodeOutOfRange(Arc),
    #[error("arc ({}, {}) is a self loop", .0.0, .0.1)]
    SelfLoop(Arc),
    #[error("arc ({}, {}) is not in the tournament", .0.0, .0.1)]
    ForeignArc(Arc),
    #[error("arc ({}, {}) appears twice in the block", .0.0, .0.1)]
    RepeatedArc(Arc),
    #[error("ring arc {ring_arc} carries load {load} > {capacity}")]
    Overloaded { ring_arc: usize, load: u32, capacity: u32 },
}

/// Accepts iff every arc is in the instance tournament and the load never exceeds `C`.
pub fn validate_block(block: &Block, instance: &RingInstance) -> Result<(), BlockViolation> {
    let n = instance.n();
    for &arc in block.arcs() {
        if arc.0 >= n || arc.1 >= n {
            return Err(BlockViolation::NodeOutOfRange(arc));
        }
        if arc.0 == arc.1 {
            return Err(BlockViolation::SelfLoop(arc));
        }
        if !instance.has_arc(arc.0, arc.1) {
            return Err(BlockViolation::ForeignArc(arc));
        }
    }
    if let Some(w) = block.arcs().windows(2).find(|w| w[0] == w[1]) {
        return Err(BlockViolation::RepeatedArc(w[0]));
    }
    let load = block_load(block, n).expect("endpoints checked above");
    match load.first_over(instance.c()) {
        Some((ring_arc, load)) => Err(BlockViolation::Overloaded { ring_arc, load, capacity: instance.c() }),
        None => Ok(()),
    }
}

/// Where a solution came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Construction(String),
    ExactSolver,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Construction(name) => write!(f, "construction:{name}"),
            Provenance::ExactSolver => f.write_str("exact-solver"),
            Provenance::External => f.write_str("external"),
        }
    }
}

impl FromStr for Provenance {
    type Err = GroomingError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-solver" => Ok(Provenance::ExactSolver),
            "external" => Ok(Provenance::External),
            _ => match s.strip_prefix("construction:") {
                Some(name) if !name.is_empty() => Ok(Provenance::Construction(name.to_string())),
                _ => Err(GroomingError::Schema(format!("unknown provenance {s:?}"))),
            },
        }
    }
}

/// A proposed partition of `T_N` into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroomingSolution {
    instance: RingInstance,
    blocks: Vec<Block>,
    provenance: Provenance,
}

impl GroomingSolution {
    /// Drops empty blocks and puts the rest in canonical order.
    pub fn new(instance: RingInstance, blocks: Vec<Block>, provenance: Provenance) -> Self {
        let mut blocks: Vec<Block> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        GroomingSolution { instance, blocks, provenance }
    }

    pub fn instance(&self) -> &RingInstance {
        &self.instance
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Same blocks read against another grooming factor.
    pub fn with_c(&self, c: u32) -> Result<Self> {
        Ok(GroomingSolution { instance: self.instance.with_c(c)?, ..self.clone() })
    }

    pub fn adm(&self) -> usize {
        self.blocks.iter().map(Block::adm).sum()
    }

    /// Number of wavelengths (blocks).
    pub fn wavelengths(&self) -> usize {
        self.blocks.len()
    }

    pub fn validate(&self) -> Result<(), InvalidSolution> {
        validate_solution(self)
    }
}

pub fn adm_count(solution: &GroomingSolution) -> usize {
    solution.adm()
}

/// One reason a solution is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolutionViolation {
    #[error("block {index}: {violation}")]
    Block { index: usize, violation: BlockViolation },
    #[error("arc ({}, {}) is covered by blocks {} and {}", .arc.0, .arc.1, .blocks.0, .blocks.1)]
    DuplicateArc { arc: Arc, blocks: (usize, usize) },
    #[error("arc ({}, {}) is not covered", .0.0, .0.1)]
    UncoveredArc(Arc),
}

/// Every violation found in a rejected solution.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{} violation(s); first: {}", .violations.len(), .violations[0])]
pub struct InvalidSolution {
    pub violations: Vec<SolutionViolation>,
}

/// Accepts iff the blocks partition the tournament and each block is admissible.
pub fn validate_solution(solution: &GroomingSolution) -> Result<(), InvalidSolution> {
    let instance = solution.instance();
    let n = instance.n();
    let mut violations = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; n * n];
    for (index, block) in solution.blocks().iter().enumerate() {
        if let Err(violation) = validate_block(block, instance) {
            violations.push(SolutionViolation::Block { index, violation });
        }
        for &(u, v) in block.arcs() {
            if u >= n || v >= n || !instance.has_arc(u, v) {
                continue;
            }
            match owner[u * n + v] {
                Some(first) if first != index => {
                    violations.push(SolutionViolation::DuplicateArc { arc: (u, v), blocks: (first, index) })
                }
                Some(_) => {}
                None => owner[u * n + v] = Some(index),
            }
        }
    }
    for &(u, v) in instance.tournament().arcs() {
        if owner[u * n + v].is_none() {
            violations.push(SolutionViolation::UncoveredArc((u, v)));
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(InvalidSolution { violations })
    }
}

/// Both fibres of a bidirectional ring.
///
/// The counterclockwise half is stored relabelled by `x -> -x mod N`, which
/// turns counterclockwise routing into clockwise routing on its own instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidirectionalSolution {
    pub clockwise: GroomingSolution,
    pub counterclockwise: GroomingSolution,
}

impl BidirectionalSolution {
    pub fn total_adm(&self) -> usize {
        self.clockwise.adm() + self.counterclockwise.adm()
    }
}

/// Pairs a valid solution with its mirror image for the opposite fibre.
pub fn double_solution(solution: &GroomingSolution) -> Result<BidirectionalSolution, InvalidSolution> {
    solution.validate()?;
    let n = solution.instance().n();
    let blocks = solution
        .blocks()
        .iter()
        .map(|b| Block::new(b.arcs().iter().map(|&(u, v)| (mirror_node(n, v), mirror_node(n, u)))))
        .collect();
    let counterclockwise =
        GroomingSolution::new(solution.instance().mirrored(), blocks, solution.provenance().clone());
    Ok(BidirectionalSolution { clockwise: solution.clone(), counterclockwise })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_tournament_is_unique() {
        let t = RingInstance::new(5, 1).unwrap().tournament();
        assert_eq!(t.len(), 10);
        for arc in [(0, 1), (0, 2), (1, 3), (3, 0), (4, 1)] {
            assert!(t.contains(arc));
        }
        let t3 = RingInstance::new(3, 1).unwrap().tournament();
        assert_eq!(t3.arcs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn all_forward_diameters() {
        let inst = RingInstance::new(4, 1).unwrap();
        let t = inst.tournament();
        assert_eq!(t.len(), 6);
        assert!(t.contains((0, 2)) && t.contains((1, 3)));
        assert_eq!(inst.diameter_arcs(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn explicit_rule_round_trips_through_diameter_arcs() {
        let inst = RingInstance::with_rule(6, 2, HalfArcRule::Explicit(vec![true, false, true])).unwrap();
        assert_eq!(inst.diameter_arcs(), vec![(0, 3), (4, 1), (2, 5)]);
        let back = RingInstance::from_diameter_arcs(6, 2, &inst.diameter_arcs()).unwrap();
        assert_eq!(back, inst);
        assert!(RingInstance::with_rule(6, 2, HalfArcRule::Explicit(vec![true])).is_err());
    }

    #[test]
    fn odd_rings_normalize_the_rule() {
        let inst = RingInstance::with_rule(5, 1, HalfArcRule::Explicit(vec![false, false])).unwrap();
        assert_eq!(inst.rule(), &HalfArcRule::AllForward);
    }

    #[test]
    fn rejects_degenerate_instances() {
        assert!(RingInstance::new(1, 1).is_err());
        assert!(RingInstance::new(4, 0).is_err());
    }

    #[test]
    fn load_of_wrapping_arc() {
        let b = Block::new([(1, 3), (3, 4), (4, 1)]);
        assert_eq!(block_load(&b, 5).unwrap().as_slice(), &[1, 1, 1, 1, 1]);
        let path = Block::new([(1, 3), (3, 4)]);
        assert_eq!(block_load(&path, 5).unwrap().as_slice(), &[0, 1, 1, 1, 0]);
        let tri = Block::new([(0, 1), (1, 2), (2, 0)]);
        assert_eq!(block_load(&tri, 3).unwrap().as_slice(), &[1, 1, 1]);
        assert!(block_load(&Block::new([(0, 7)]), 5).is_err());
    }

    #[test]
    fn empty_block_is_admissible() {
        let inst = RingInstance::new(6, 1).unwrap();
        assert_eq!(validate_block(&Block::default(), &inst), Ok(()));
    }

    #[test]
    fn first_violation_is_reported() {
        let inst = RingInstance::new(5, 1).unwrap();
        let b = Block::new([(0, 1), (1, 2), (2, 0)]);
        assert_eq!(validate_block(&b, &inst), Err(BlockViolation::ForeignArc((2, 0))));
        let b = Block::new([(0, 1), (0, 2)]);
        assert!(matches!(validate_block(&b, &inst), Err(BlockViolation::Overloaded { ring_arc: 0, load: 2, .. })));
    }

    #[test]
    fn provenance_parses() {
        for p in [Provenance::ExactSolver, Provenance::External, Provenance::Construction("c1".into())] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
        assert!("construction:".parse::<Provenance>().is_err());
    }

    #[test]
    fn mirror_of_all_forward() {
        let inst = RingInstance::new(6, 1).unwrap();
        let m = inst.mirrored();
        // (i, i+3) reversed and relabelled becomes (-(i+3), -i).
        assert_eq!(m.diameter_arcs(), vec![(3, 0), (1, 4), (2, 5)]);
    }
}
