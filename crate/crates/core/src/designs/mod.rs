//! Block designs: Steiner triple systems, transversal designs, 3-GDDs,
//! projective and affine planes, and `(v, k, 1)`-BIBDs.
//!
//! Every generator validates its output with [`validate_design`] before
//! returning it.

pub mod cache;
pub mod gf;
pub mod search;
mod classical;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{GroomingError, Result};

pub use cache::DesignCache;
pub use classical::{affine_plane, projective_plane, steiner_triple_system, transversal_design_3};
pub use search::SearchOptions;

/// Points `0..v`, a partition into groups, and uniform-size blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDesign {
    points: usize,
    groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
    block_size: usize,
    construction: String,
}

impl BlockDesign {
    /// Sorts every group and block; does not validate.
    pub fn new(
        points: usize,
        groups: Vec<Vec<usize>>,
        blocks: Vec<Vec<usize>>,
        block_size: usize,
        construction: impl Into<String>,
    ) -> Self {
        let mut groups = groups;
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_by_key(|g| g.first().copied());
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        BlockDesign { points, groups, blocks, block_size, construction: construction.into() }
    }

    /// A design whose groups are all singletons.
    pub fn pairwise_balanced(points: usize, blocks: Vec<Vec<usize>>, block_size: usize, construction: &str) -> Self {
        Self::new(points, (0..points).map(|x| vec![x]).collect(), blocks, block_size, construction)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    pub fn is_bibd(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// Group sizes in group order.
    pub fn group_type(&self) -> GroupType {
        GroupType::from_sizes(self.groups.iter().map(Vec::len))
    }

    /// Number of point pairs lying in different groups.
    pub fn cross_pairs(&self) -> usize {
        let v = self.points;
        let within: usize = self.groups.iter().map(|g| g.len() * g.len().saturating_sub(1) / 2).sum();
        v * v.saturating_sub(1) / 2 - within
    }
}

/// Why a design fails the pair-coverage check.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DesignViolation {
    #[error("point {0} is out of range")]
    PointOutOfRange(usize),
    #[error("groups do not partition the points (point {0})")]
    GroupsNotPartition(usize),
    #[error("block {0} has the wrong size")]
    BlockSize(usize),
    #[error("block {0} repeats a point")]
    RepeatedPoint(usize),
    #[error("block {block} meets a group twice at points {} and {}", .pair.0, .pair.1)]
    SameGroup { block: usize, pair: (usize, usize) },
    #[error("pair ({}, {}) is covered twice", .0.0, .0.1)]
    PairCoveredTwice((usize, usize)),
    #[error("pair ({}, {}) is not covered", .0.0, .0.1)]
    PairUncovered((usize, usize)),
}

/// Accepts iff every cross-group pair lies in exactly one block and no block
/// meets a group twice.
pub fn validate_design(design: &BlockDesign) -> Result<(), DesignViolation> {
    let v = design.points();
    let mut group_of = vec![usize::MAX; v];
    for (gi, g) in design.groups().iter().enumerate() {
        for &x in g {
            if x >= v {
                return Err(DesignViolation::PointOutOfRange(x));
            }
            if group_of[x] != usize::MAX {
                return Err(DesignViolation::GroupsNotPartition(x));
            }
            group_of[x] = gi;
        }
    }
    if let Some(x) = group_of.iter().position(|&g| g == usize::MAX) {
        return Err(DesignViolation::GroupsNotPartition(x));
    }
    let mut covered = vec![false; v * v];
    for (bi, block) in design.blocks().iter().enumerate() {
        if block.len() != design.block_size() {
            return Err(DesignViolation::BlockSize(bi));
        }
        for (i, &x) in block.iter().enumerate() {
            if x >= v {
                return Err(DesignViolation::PointOutOfRange(x));
            }
            for &y in &block[..i] {
                if x == y {
                    return Err(DesignViolation::RepeatedPoint(bi));
                }
                let pair = (x.min(y), x.max(y));
                if group_of[x] == group_of[y] {
                    return Err(DesignViolation::SameGroup { block: bi, pair });
                }
                let cell = &mut covered[pair.0 * v + pair.1];
                if *cell {
                    return Err(DesignViolation::PairCoveredTwice(pair));
                }
                *cell = true;
            }
        }
    }
    for x in 0..v {
        for y in x + 1..v {
            if group_of[x] != group_of[y] && !covered[x * v + y] {
                return Err(DesignViolation::PairUncovered((x, y)));
            }
        }
    }
    Ok(())
}

pub(crate) fn checked(design: BlockDesign) -> Result<BlockDesign> {
    validate_design(&design)
        .map_err(|e| GroomingError::InvalidDesign(format!("{} produced an invalid design: {e}", design.construction())))?;
    Ok(design)
}

/// Multiset of group sizes, e.g. `3^6 11^1`.
///
/// Parts are kept in canonical order: larger multiplicity first, then smaller
/// size. Points are labelled group by group in that order, so the odd group
/// of a `3^(q-1) u^1` type comes last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupType {
    parts: Vec<(usize, usize)>,
}

impl GroupType {
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
        for (size, mult) in parts {
            if size == 0 {
                return Err(GroomingError::InvalidParameter("group sizes must be positive".into()));
            }
            if mult > 0 {
                *merged.entry(size).or_default() += mult;
            }
        }
        let mut parts: Vec<(usize, usize)> = merged.into_iter().collect();
        parts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        Ok(GroupType { parts })
    }

    /// `g^q`.
    pub fn uniform(g: usize, q: usize) -> Result<Self> {
        Self::new([(g, q)])
    }

    fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        Self::new(sizes.into_iter().map(|s| (s, 1))).expect("group sizes are positive")
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn points(&self) -> usize {
        self.parts.iter().map(|(s, m)| s * m).sum()
    }

    /// Expanded group sizes in labelling order.
    pub fn group_sizes(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(s, m)| std::iter::repeat(s).take(m)).collect()
    }

    /// Groups as consecutive label ranges.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        self.group_sizes()
            .into_iter()
            .map(|s| {
                let g = (next..next + s).collect();
                next += s;
                g
            })
            .collect()
    }

    pub fn family(&self) -> Option<Gdd3Family> {
        let get = |s: usize| self.parts.iter().find(|p| p.0 == s).map(|p| p.1);
        match self.parts.len() {
            1 => match self.parts[0] {
                (2, q) => Some(Gdd3Family::Pairs { q }),
                (3, q) => Some(Gdd3Family::Triples { q }),
                _ => None,
            },
            2 => {
                if let (Some(m), Some(1)) = (get(2), get(4)) {
                    return Some(Gdd3Family::PairsWithFour { q: m + 1 });
                }
                let m = get(3)?;
                let &(u, mu) = self.parts.iter().find(|p| p.0 != 3)?;
                (mu == 1 && matches!(u, 1 | 5 | 11)).then_some(Gdd3Family::TriplesWithOne { q: m + 1, u })
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|(s, m)| format!("{s}^{m}")).collect();
        f.write_str(&s.join(" "))
    }
}

impl FromStr for GroupType {
    type Err = GroomingError;

    /// Accepts forms like `3^6 11^1`, `3^6 11`, or `2^3*4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || GroomingError::InvalidParameter(format!("cannot parse group type {s:?}"));
        let parts = s
            .split(|c: char| c.is_whitespace() || c == '*' || c == '·' || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let (size, mult) = t.split_once('^').unwrap_or((t, "1"));
                Ok((size.parse().map_err(|_| bad())?, mult.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(usize, usize)>>>()?;
        if parts.is_empty() {
            return Err(bad());
        }
        Self::new(parts)
    }
}

/// The 3-GDD families whose existence is tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gdd3Family {
    /// `2^q`.
    Pairs { q: usize },
    /// `2^(q-1) 4^1`.
    PairsWithFour { q: usize },
    /// `3^q`.
    Triples { q: usize },
    /// `3^(q-1) u^1` for `u` in {1, 5, 11}.
    TriplesWithOne { q: usize, u: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Existence {
    Exists,
    DoesNotExist,
    Unknown,
}

/// Existence of a 3-GDD, decided only inside the tabulated families.
pub fn gdd3_exists(t: &GroupType) -> Existence {
    let verdict = |ok: bool| if ok { Existence::Exists } else { Existence::DoesNotExist };
    match t.family() {
        Some(Gdd3Family::Pairs { q }) if q >= 3 => verdict(q % 3 != 2),
        Some(Gdd3Family::PairsWithFour { q }) if q >= 4 => verdict(q % 3 == 1),
        Some(Gdd3Family::Triples { q }) if q >= 3 => verdict(q % 2 == 1),
        // 3^2 1^1: all 5 triples would need the lone point, which lies in only 3.
        Some(Gdd3Family::TriplesWithOne { q: 3, u: 1 }) => Existence::DoesNotExist,
        Some(Gdd3Family::TriplesWithOne { q, u }) => {
            let min_q = match u {
                1 => 5,
                5 => 5,
                _ => 7,
            };
            if q >= min_q {
                verdict(q % 2 == 1)
            } else {
                Existence::Unknown
            }
        }
        _ => Existence::Unknown,
    }
}

/// Design generator with optional on-disk cache and search budgets.
#[derive(Clone, Debug, Default)]
pub struct DesignProvider {
    pub cache: Option<DesignCache>,
    pub options: SearchOptions,
}

impl DesignProvider {
    /// Provider whose cache directory comes from `GROOMING_DESIGN_CACHE`, if set.
    pub fn from_env() -> Self {
        DesignProvider { cache: DesignCache::from_env(), options: SearchOptions::default() }
    }

    fn cached(&self, key: &str, build: impl FnOnce() -> Result<BlockDesign>) -> Result<BlockDesign> {
        match &self.cache {
            Some(cache) => cache.get_or_build(key, build),
            None => build(),
        }
    }

    pub fn gdd3(&self, t: &GroupType) -> Result<BlockDesign> {
        let existence = gdd3_exists(t);
        if existence == Existence::DoesNotExist {
            return Err(GroomingError::DesignNonexistent(format!("3-GDD of type {t}")));
        }
        self.cached(&format!("gdd3 {t}"), || build_gdd3(t, &self.options))
    }

    pub fn bibd(&self, v: usize, k: usize) -> Result<BlockDesign> {
        bibd_precheck(v, k)?;
        self.cached(&format!("bibd {v} {k}"), || build_bibd(v, k, &self.options))
    }
}

/// A 3-GDD of the requested type, cached when `GROOMING_DESIGN_CACHE` is set.
pub fn gdd3(t: &GroupType) -> Result<BlockDesign> {
    DesignProvider::from_env().gdd3(t)
}

/// A `(v, k, 1)`-BIBD, cached when `GROOMING_DESIGN_CACHE` is set.
pub fn bibd(v: usize, k: usize) -> Result<BlockDesign> {
    DesignProvider::from_env().bibd(v, k)
}

fn build_gdd3(t: &GroupType, options: &SearchOptions) -> Result<BlockDesign> {
    let label = format!("3-GDD of type {t}");
    match t.family() {
        Some(Gdd3Family::Pairs { q }) if q >= 3 && q % 3 != 2 => {
            let sts = steiner_triple_system(2 * q + 1)?;
            let g = gdd_from_bibd(&sts, 2 * q)?;
            Ok(BlockDesign { construction: format!("{} minus a point", sts.construction()), ..g })
        }
        Some(Gdd3Family::Triples { q }) if q >= 3 && q % 2 == 1 => classical::gdd3_triples(q),
        _ => {
            let groups = t.groups();
            if t.points() <= options.exact_point_limit {
                match search::exact_cover(t.points(), &groups, 3, options.node_budget) {
                    search::SearchOutcome::Found(blocks) => {
                        return checked(BlockDesign::new(t.points(), groups, blocks, 3, "exact-cover search"))
                    }
                    search::SearchOutcome::Exhausted => return Err(GroomingError::DesignNonexistent(label)),
                    search::SearchOutcome::BudgetExceeded => {}
                }
            }
            match search::hill_climb_triples(t.points(), &groups, options) {
                Some(blocks) => checked(BlockDesign::new(t.points(), groups, blocks, 3, "hill-climbing")),
                None => Err(GroomingError::DesignUnknown(label)),
            }
        }
    }
}

fn bibd_precheck(v: usize, k: usize) -> Result<()> {
    let label = format!("({v}, {k}, 1)-BIBD");
    if k < 2 || v < k {
        return Err(GroomingError::InvalidParameter(format!("{label}: need 2 <= k <= v")));
    }
    if (v - 1) % (k - 1) != 0 || (v * (v - 1)) % (k * (k - 1)) != 0 {
        return Err(GroomingError::DesignNonexistent(format!("{label} (divisibility)")));
    }
    let b = v * (v - 1) / (k * (k - 1));
    if k < v && b < v {
        return Err(GroomingError::DesignNonexistent(format!("{label} (Fisher's inequality)")));
    }
    Ok(())
}

fn build_bibd(v: usize, k: usize, options: &SearchOptions) -> Result<BlockDesign> {
    if k == v {
        return checked(BlockDesign::pairwise_balanced(v, vec![(0..v).collect()], k, "single block"));
    }
    if k == 2 {
        let blocks = (0..v).flat_map(|x| (x + 1..v).map(move |y| vec![x, y])).collect();
        return checked(BlockDesign::pairwise_balanced(v, blocks, 2, "all pairs"));
    }
    if k == 3 {
        return steiner_triple_system(v);
    }
    let q = k - 1;
    if v == q * q + q + 1 && gf::prime_power(q).is_some() {
        return projective_plane(q);
    }
    if v == k * k && gf::prime_power(k).is_some() {
        return affine_plane(k);
    }
    if (v - 1) % (k * (k - 1)) == 0 {
        // Z_v first, then Z_a x Z_b with b | a.
        for b in (1..v).filter(|&b| v % b == 0 && b * b <= v && (v / b) % b == 0) {
            if let Some(blocks) = search::abelian_difference_family(v / b, b, k, options.node_budget) {
                let name = if b == 1 { "cyclic difference family".to_string() } else { format!("difference family over Z_{} x Z_{b}", v / b) };
                return checked(BlockDesign::pairwise_balanced(v, blocks, k, &name));
            }
        }
    }
    for m in (3..v).rev().filter(|m| m % 2 == 1 && v % m == 0) {
        if let Some(blocks) = search::orbit_difference_family(m, v / m, k, options.node_budget) {
            return checked(BlockDesign::pairwise_balanced(v, blocks, k, &format!("difference family over Z_{m} x {}", v / m)));
        }
    }
    let label = format!("({v}, {k}, 1)-BIBD");
    if v <= options.exact_point_limit {
        let groups: Vec<Vec<usize>> = (0..v).map(|x| vec![x]).collect();
        match search::exact_cover(v, &groups, k, options.node_budget) {
            search::SearchOutcome::Found(blocks) => {
                return checked(BlockDesign::pairwise_balanced(v, blocks, k, "exact-cover search"))
            }
            search::SearchOutcome::Exhausted => return Err(GroomingError::DesignNonexistent(label)),
            search::SearchOutcome::BudgetExceeded => {}
        }
    }
    Err(GroomingError::DesignUnknown(label))
}

/// Deletes a point of a BIBD: the blocks through it become the groups.
///
/// Groups are ordered by their smallest original label and points are
/// relabelled group by group.
pub fn gdd_from_bibd(design: &BlockDesign, deleted_point: usize) -> Result<BlockDesign> {
    if !design.is_bibd() {
        return Err(GroomingError::InvalidDesign("point deletion needs a BIBD".into()));
    }
    validate_design(design).map_err(|e| GroomingError::InvalidDesign(format!("input is not a BIBD: {e}")))?;
    if deleted_point >= design.points() {
        return Err(GroomingError::InvalidParameter(format!("point {deleted_point} is not in the design")));
    }
    let mut groups: Vec<Vec<usize>> = design
        .blocks()
        .iter()
        .filter(|b| b.contains(&deleted_point))
        .map(|b| b.iter().copied().filter(|&x| x != deleted_point).collect())
        .collect();
    groups.sort();
    let mut relabel = vec![usize::MAX; design.points()];
    let mut next = 0;
    for g in &groups {
        for &x in g {
            relabel[x] = next;
            next += 1;
        }
    }
    let new_groups = groups.iter().map(|g| g.iter().map(|&x| relabel[x]).collect()).collect();
    let blocks = design
        .blocks()
        .iter()
        .filter(|b| !b.contains(&deleted_point))
        .map(|b| b.iter().map(|&x| relabel[x]).collect())
        .collect();
    checked(BlockDesign::new(
        design.points() - 1,
        new_groups,
        blocks,
        design.block_size(),
        format!("{} minus a point", design.construction()),
    ))
}

/// Adds a new point joined to every group, turning each group into a block.
///
/// Inverse of [`gdd_from_bibd`] when every group has size `block_size - 1`.
pub fn complete_groups(design: &BlockDesign) -> Result<BlockDesign> {
    let inf = design.points();
    let mut blocks = design.blocks().to_vec();
    for g in design.groups() {
        if g.len() + 1 != design.block_size() {
            return Err(GroomingError::InvalidDesign("group sizes must be one less than the block size".into()));
        }
        let mut b = g.clone();
        b.push(inf);
        blocks.push(b);
    }
    checked(BlockDesign::pairwise_balanced(inf + 1, blocks, design.block_size(), "groups completed by a new point"))
}
