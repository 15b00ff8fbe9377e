//! Exact branch and bound: each tournament arc is assigned to an open block
//! or to a new one, longest arcs first.
//!
//! The completion bound is the largest of three admissible estimates:
//! - per vertex, the out- and in-arcs still to place beyond the spare
//!   capacity of the blocks already holding that vertex need one new vertex
//!   slot per `C` arcs;
//! - every added vertex raises some block's arc capacity `gamma(C, p)` by at
//!   most the largest step of `gamma`;
//! - the whole partition costs at least `M / rho(C)` for `M` arcs.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{gamma, rho};
use crate::constructions::construct_best;
use crate::error::{GroomingError, Result};
use crate::ring::{arc_length, Arc, Block, GroomingSolution, HalfArcRule, Provenance, RingInstance};

/// Largest ring the bitmask representation supports.
pub const MAX_SOLVER_N: usize = 64;

/// How much block symmetry the search removes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryBreaking {
    /// Blocks are ordered by their first arc; a new block is always the last one.
    BlockOrder,
    /// Also skips a block whose vertex set and load profile equal those of a
    /// block already tried for the same arc.
    #[default]
    Interchangeable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Search nodes per orientation before giving up.
    pub node_budget: u64,
    /// Wall-clock cap per orientation. Outcomes are deterministic only when it is not hit.
    pub time_budget: Option<Duration>,
    /// Minimise over all diameter orientations (even `N` only).
    pub optimize_orientation: bool,
    pub symmetry_breaking: SymmetryBreaking,
    /// Solve orientation classes on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            node_budget: 500_000_000,
            time_budget: Some(Duration::from_secs(600)),
            optimize_orientation: false,
            symmetry_breaking: SymmetryBreaking::default(),
            parallel: false,
        }
    }
}

impl SolverOptions {
    fn check(&self, instance: &RingInstance) -> Result<()> {
        if self.node_budget == 0 {
            return Err(GroomingError::InvalidParameter("node budget must be positive".into()));
        }
        if self.time_budget == Some(Duration::ZERO) {
            return Err(GroomingError::InvalidParameter("time budget must be positive".into()));
        }
        if self.optimize_orientation && instance.n() % 2 == 1 {
            return Err(GroomingError::InvalidParameter("orientation optimisation needs an even ring".into()));
        }
        if instance.n() > MAX_SOLVER_N {
            return Err(GroomingError::InvalidParameter(format!(
                "the exact solver handles N <= {MAX_SOLVER_N}, got {}",
                instance.n()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// The search space was exhausted or the incumbent met the root bound.
    ProvedOptimal,
    /// A budget ran out after a nontrivial solution was known.
    BestFound,
    /// A budget ran out and only the one-arc-per-block fallback is known.
    BudgetExhausted,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::ProvedOptimal => "proved-optimal",
            SolveStatus::BestFound => "best-found",
            SolveStatus::BudgetExhausted => "budget-exhausted",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub best_adm: u64,
    /// Validated witness; its instance carries the orientation used.
    pub solution: GroomingSolution,
    pub status: SolveStatus,
    pub nodes_explored: u64,
    /// Proven lower bound: the root bound, or `best_adm` once proved.
    pub bound_used: u64,
    /// Orientation classes searched (1 unless orientations are optimised).
    pub orientations: usize,
}

/// Minimum-ADM partition of the instance's tournament.
pub fn solve_exact(instance: &RingInstance, options: &SolverOptions) -> Result<SolveOutcome> {
    options.check(instance)?;
    if options.optimize_orientation {
        return solve_over_orientations(instance, options);
    }
    solve_one(instance, options)
}

/// Minimum of [`solve_exact`] over every diameter orientation, one
/// representative per class of rotations and mirror images. Budgets apply
/// per class.
pub fn solve_over_orientations(instance: &RingInstance, options: &SolverOptions) -> Result<SolveOutcome> {
    let n = instance.n();
    if n % 2 == 1 {
        return Err(GroomingError::InvalidParameter("orientation search needs an even ring".into()));
    }
    SolverOptions { optimize_orientation: false, ..options.clone() }.check(instance)?;
    let reps = orientation_classes(n)?;
    let solve = |f: &Vec<bool>| -> Result<SolveOutcome> {
        let inst = RingInstance::with_rule(n, instance.c(), HalfArcRule::Explicit(f.clone()))?;
        solve_one(&inst, options)
    };
    let outcomes: Vec<SolveOutcome> = if options.parallel {
        reps.par_iter().map(solve).collect::<Result<_>>()?
    } else {
        reps.iter().map(solve).collect::<Result<_>>()?
    };
    let nodes = outcomes.iter().map(|o| o.nodes_explored).sum();
    let lower = outcomes.iter().map(|o| o.bound_used).min().expect("at least one orientation");
    let best = outcomes.into_iter().min_by_key(|o| o.best_adm).expect("at least one orientation");
    let status = if lower >= best.best_adm {
        SolveStatus::ProvedOptimal
    } else if best.status == SolveStatus::BudgetExhausted {
        SolveStatus::BudgetExhausted
    } else {
        SolveStatus::BestFound
    };
    Ok(SolveOutcome {
        bound_used: lower.min(best.best_adm),
        status,
        nodes_explored: nodes,
        orientations: reps.len(),
        ..best
    })
}

/// Orientation vectors that are lexicographically least in their class
/// under rotation and mirroring of the ring.
pub fn orientation_classes(n: usize) -> Result<Vec<Vec<bool>>> {
    let h = n / 2;
    if h > 20 {
        return Err(GroomingError::InvalidParameter(format!("2^{h} orientations is too many")));
    }
    let mut reps = Vec::new();
    for bits in 0u32..(1 << h) {
        let f: Vec<bool> = (0..h).map(|i| bits >> (h - 1 - i) & 1 == 0).collect();
        let inst = RingInstance::with_rule(n, 1, HalfArcRule::Explicit(f.clone()))?;
        let key = rule_key(&inst);
        let canonical = [inst.diameter_arcs(), inst.mirrored().diameter_arcs()].iter().all(|arcs| {
            (0..n).all(|r| {
                let rotated: Vec<Arc> = arcs.iter().map(|&(u, v)| ((u + r) % n, (v + r) % n)).collect();
                let image = RingInstance::from_diameter_arcs(n, 1, &rotated).expect("rotation keeps diameters");
                rule_key(&image) >= key
            })
        });
        if canonical {
            reps.push(f);
        }
    }
    Ok(reps)
}

/// `false` marks a forward diameter, so the all-forward rule is least.
fn rule_key(inst: &RingInstance) -> Vec<bool> {
    inst.diameter_arcs().iter().map(|&(u, v)| u > v).collect()
}

#[derive(Clone, Debug)]
struct OpenBlock {
    mask: u64,
    load: Vec<u32>,
    arcs: u64,
}

struct Search {
    n: usize,
    c: u32,
    arcs: Vec<Arc>,
    paths: Vec<Vec<usize>>,
    gamma: Vec<u64>,
    max_step: u64,
    global: u64,
    /// Bound at the root; reaching it ends the search.
    floor: u64,
    symmetry: SymmetryBreaking,
    blocks: Vec<OpenBlock>,
    assign: Vec<usize>,
    out_rem: Vec<u32>,
    in_rem: Vec<u32>,
    cost: u64,
    best: u64,
    best_assign: Option<Vec<usize>>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    stopped: bool,
}

impl Search {
    fn new(instance: &RingInstance, options: &SolverOptions, best: u64) -> Result<Self> {
        let n = instance.n();
        let c = instance.c();
        let mut arcs: Vec<Arc> = instance.tournament().arcs().to_vec();
        arcs.sort_by_key(|&(u, v)| (std::cmp::Reverse(arc_length(n, u, v)), u, v));
        let paths = arcs.iter().map(|&(u, v)| (0..arc_length(n, u, v)).map(|s| (u + s) % n).collect()).collect();
        let mut g = vec![0u64; n + 2];
        for (p, slot) in g.iter_mut().enumerate().skip(2) {
            *slot = gamma(c, p)?;
        }
        let max_step = g.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(1).max(1);
        let r = rho(c)?;
        let m = arcs.len() as i128;
        let global = ((m * r.denom() + r.numer() - 1) / r.numer()) as u64;
        let mut out_rem = vec![0; n];
        let mut in_rem = vec![0; n];
        for &(u, v) in &arcs {
            out_rem[u] += 1;
            in_rem[v] += 1;
        }
        let mut search = Search {
            n,
            c,
            assign: vec![usize::MAX; arcs.len()],
            arcs,
            paths,
            gamma: g,
            max_step,
            global,
            floor: global,
            symmetry: options.symmetry_breaking,
            blocks: Vec::new(),
            out_rem,
            in_rem,
            cost: 0,
            best,
            best_assign: None,
            nodes: 0,
            node_budget: options.node_budget,
            deadline: options.time_budget.map(|d| Instant::now() + d),
            stopped: false,
        };
        search.floor = search.bound(0);
        Ok(search)
    }

    fn bound(&self, placed: usize) -> u64 {
        let c = u64::from(self.c);
        let mut per_vertex = 0u64;
        for v in 0..self.n {
            let (out, inn) = (u64::from(self.out_rem[v]), u64::from(self.in_rem[v]));
            if out == 0 && inn == 0 {
                continue;
            }
            let prev = (v + self.n - 1) % self.n;
            let (mut spare_out, mut spare_in) = (0u64, 0u64);
            for b in self.blocks.iter().filter(|b| b.mask >> v & 1 == 1) {
                spare_out += u64::from(self.c - b.load[v]);
                spare_in += u64::from(self.c - b.load[prev]);
            }
            let need_out = out.saturating_sub(spare_out).div_ceil(c);
            let need_in = inn.saturating_sub(spare_in).div_ceil(c);
            per_vertex += need_out.max(need_in);
        }
        let slack: u64 = self.blocks.iter().map(|b| self.gamma[b.mask.count_ones() as usize] - b.arcs).sum();
        let remaining = (self.arcs.len() - placed) as u64;
        let capacity = remaining.saturating_sub(slack).div_ceil(self.max_step);
        (self.cost + per_vertex.max(capacity)).max(self.global)
    }

    fn fits(&self, b: &OpenBlock, i: usize) -> bool {
        self.paths[i].iter().all(|&e| b.load[e] < self.c)
    }

    fn place(&mut self, i: usize, b: usize) {
        let (u, v) = self.arcs[i];
        if b == self.blocks.len() {
            self.blocks.push(OpenBlock { mask: 0, load: vec![0; self.n], arcs: 0 });
        }
        let block = &mut self.blocks[b];
        let before = block.mask.count_ones();
        block.mask |= 1 << u | 1 << v;
        self.cost += u64::from(block.mask.count_ones() - before);
        block.arcs += 1;
        for &e in &self.paths[i] {
            block.load[e] += 1;
        }
        self.out_rem[u] -= 1;
        self.in_rem[v] -= 1;
        self.assign[i] = b;
    }

    fn unplace(&mut self, i: usize, b: usize, mask_before: u64) {
        let (u, v) = self.arcs[i];
        let block = &mut self.blocks[b];
        self.cost -= u64::from(block.mask.count_ones() - mask_before.count_ones());
        block.mask = mask_before;
        block.arcs -= 1;
        for &e in &self.paths[i] {
            block.load[e] -= 1;
        }
        if block.arcs == 0 {
            self.blocks.pop();
        }
        self.out_rem[u] += 1;
        self.in_rem[v] += 1;
        self.assign[i] = usize::MAX;
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.node_budget {
            self.stopped = true;
        } else if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stopped = true;
                }
            }
        }
        self.stopped
    }

    /// Returns true once the incumbent is known to be optimal.
    fn dfs(&mut self, i: usize) -> bool {
        self.nodes += 1;
        if self.out_of_budget() {
            return false;
        }
        if i == self.arcs.len() {
            if self.cost < self.best {
                self.best = self.cost;
                self.best_assign = Some(self.assign.clone());
            }
            return self.best <= self.floor;
        }
        if self.bound(i) >= self.best {
            return false;
        }
        let (u, v) = self.arcs[i];
        let mut options: Vec<(u32, usize)> = Vec::with_capacity(self.blocks.len() + 1);
        for (b, block) in self.blocks.iter().enumerate() {
            if !self.fits(block, i) {
                continue;
            }
            if self.symmetry == SymmetryBreaking::Interchangeable
                && options.iter().any(|&(_, o)| self.blocks[o].mask == block.mask && self.blocks[o].load == block.load)
            {
                continue;
            }
            let added = u32::from(block.mask >> u & 1 == 0) + u32::from(block.mask >> v & 1 == 0);
            options.push((added, b));
        }
        options.sort_by_key(|&(added, _)| added);
        options.push((2, self.blocks.len()));
        for (added, b) in options {
            if self.cost + u64::from(added) >= self.best {
                continue;
            }
            let mask_before = self.blocks.get(b).map_or(0, |blk| blk.mask);
            self.place(i, b);
            let done = self.dfs(i + 1);
            self.unplace(i, b, mask_before);
            if done || self.stopped {
                return done;
            }
        }
        false
    }

    fn witness(&self, assign: &[usize]) -> Vec<Block> {
        let count = assign.iter().max().map_or(0, |&b| b + 1);
        let mut groups: Vec<Vec<Arc>> = vec![Vec::new(); count];
        for (i, &b) in assign.iter().enumerate() {
            groups[b].push(self.arcs[i]);
        }
        groups.into_iter().map(Block::new).collect()
    }
}

/// Best known starting solution: the best construction when it uses this
/// tournament, otherwise one block per arc.
fn seed(instance: &RingInstance) -> (GroomingSolution, bool) {
    if let Ok(r) = construct_best(instance.c(), instance.n()) {
        if r.solution.instance().same_tournament(instance) {
            let sol = GroomingSolution::new(instance.clone(), r.solution.blocks().to_vec(), Provenance::ExactSolver);
            return (sol, true);
        }
    }
    let blocks = instance.tournament().arcs().iter().map(|&a| Block::new([a])).collect();
    (GroomingSolution::new(instance.clone(), blocks, Provenance::ExactSolver), false)
}

fn solve_one(instance: &RingInstance, options: &SolverOptions) -> Result<SolveOutcome> {
    let (seeded, nontrivial) = seed(instance);
    let mut search = Search::new(instance, options, seeded.adm() as u64)?;
    let proved_at_root = search.best <= search.floor;
    if !proved_at_root {
        search.dfs(0);
    }
    let found = search.best_assign.is_some();
    let solution = match &search.best_assign {
        Some(assign) => GroomingSolution::new(instance.clone(), search.witness(assign), Provenance::ExactSolver),
        None => seeded,
    };
    solution.validate()?;
    let best_adm = solution.adm() as u64;
    let proved = !search.stopped || best_adm <= search.floor;
    let status = if proved {
        SolveStatus::ProvedOptimal
    } else if found || nontrivial {
        SolveStatus::BestFound
    } else {
        SolveStatus::BudgetExhausted
    };
    let bound_used = if proved { best_adm } else { search.floor };
    Ok(SolveOutcome { best_adm, solution, status, nodes_explored: search.nodes, bound_used, orientations: 1 })
}
