//! `C = 3`: vertex doubling of 3-GDDs, with the groups filled by explicit
//! small decompositions.

use super::{delete_vertices, doubled_triangle, instantiate_gadget, not_applicable, ConstructionResult, DoubledLayout, GadgetName};
use crate::designs::{gdd3, GroupType};
use crate::error::Result;
use crate::ring::{Block, RingInstance};

const NAME: &str = "c3-gdd";

/// The 19 triangles completing the `K_12` decomposition behind `T_23`;
/// `None` stands for `inf`.
const K12_TRIANGLES: [[Option<usize>; 3]; 19] = {
    const I: Option<usize> = None;
    const fn s(x: usize) -> Option<usize> {
        Some(x)
    }
    [
        [s(0), s(10), s(3)],
        [s(0), s(4), s(5)],
        [s(0), s(6), s(7)],
        [s(0), s(8), s(9)],
        [s(1), s(10), s(2)],
        [s(1), s(3), s(7)],
        [s(1), s(4), s(6)],
        [s(1), s(5), s(8)],
        [s(1), s(9), I],
        [s(10), s(4), s(9)],
        [s(10), s(5), I],
        [s(10), s(6), s(8)],
        [s(2), s(3), s(9)],
        [s(2), s(4), s(8)],
        [s(2), s(5), s(7)],
        [s(2), s(6), I],
        [s(8), s(3), I],
        [s(4), s(7), I],
        [s(5), s(6), s(9)],
    ]
};

struct Small {
    lay: DoubledLayout,
    instance: RingInstance,
    blocks: Vec<Block>,
}

impl Small {
    fn new(u: usize) -> Result<Self> {
        let lay = DoubledLayout::new(u, true);
        Ok(Small { lay, instance: RingInstance::new(lay.n(), 3)?, blocks: Vec::new() })
    }

    fn put(&mut self, name: GadgetName, labels: &[usize]) -> Result<()> {
        self.blocks.push(instantiate_gadget(name, labels, &self.instance)?);
        Ok(())
    }

    /// `T_5` on `inf` and the doubled pair `{i, j}`.
    fn t5(&mut self, i: usize, j: usize) -> Result<()> {
        let l = self.lay;
        self.put(GadgetName::T5Infty, &[0, l.a(i), l.a(j), l.b(i), l.b(j)])
    }

    fn k222(&mut self, mut t: [usize; 3]) -> Result<()> {
        t.sort_unstable();
        self.blocks.push(doubled_triangle(&self.lay, t, &self.instance)?);
        Ok(())
    }

    /// Doubled star with centre `i` and leaves `inf, j, k`, or with leaves
    /// `j, k, l` when no `inf` is involved.
    fn star(&mut self, centre: usize, leaves: &[usize]) -> Result<()> {
        let l = self.lay;
        let mut pts = vec![centre];
        pts.extend_from_slice(leaves);
        let mut labels: Vec<usize> = pts.iter().map(|&x| l.a(x)).chain(pts.iter().map(|&x| l.b(x))).collect();
        if leaves.len() == 2 {
            labels.insert(0, 0);
            self.put(GadgetName::StarB, &labels)
        } else {
            self.put(GadgetName::StarC, &labels)
        }
    }

    fn finish(self) -> Vec<Block> {
        self.blocks
    }
}

/// Decomposition of `T_p` for `p` in `{3, 5, 7, 9, 11, 23}` on the doubled
/// layout with `inf` at 0.
fn small_odd(p: usize) -> Result<Vec<Block>> {
    let u = p / 2;
    let mut s = Small::new(u)?;
    let l = s.lay;
    match p {
        3 => s.put(GadgetName::T3, &[0, l.a(0), l.b(0)])?,
        5 => s.t5(0, 1)?,
        7 => {
            s.t5(1, 2)?;
            s.star(0, &[1, 2])?;
        }
        9 => {
            s.t5(1, 3)?;
            s.k222([0, 2, 3])?;
            s.put(GadgetName::C4Gadget, &[0, l.a(0), l.a(1), l.a(2), l.b(0), l.b(1), l.b(2)])?;
            s.put(GadgetName::T3, &[l.a(1), l.a(2), l.b(2)])?;
        }
        11 => {
            s.t5(1, 3)?;
            s.t5(2, 4)?;
            s.k222([0, 1, 4])?;
            s.star(0, &[2, 3])?;
            let path: Vec<usize> = (1..5).map(|x| l.a(x)).chain((1..5).map(|x| l.b(x))).collect();
            s.put(GadgetName::Path8, &path)?;
        }
        23 => {
            s.star(0, &[1, 2])?;
            s.star(3, &[4, 5, 6])?;
            s.star(7, &[8, 9, 10])?;
            for t in K12_TRIANGLES {
                let pts: Vec<usize> = t.iter().flatten().copied().collect();
                match pts[..] {
                    [i, j] => s.t5(i.min(j), i.max(j))?,
                    [i, j, k] => s.k222([i, j, k])?,
                    _ => unreachable!("triangles have three vertices"),
                }
            }
        }
        _ => return Err(not_applicable(NAME, format!("no explicit decomposition of T_{p}"))),
    }
    Ok(s.finish())
}

/// Even cases drop one vertex of the next odd case and rotate so the
/// survivors start at 0; the result is the all-forward `T_p`.
fn small_even(p: usize) -> Result<Vec<Block>> {
    let odd = small_odd(p + 1)?;
    // Dropping `1A` of T_9 removes three blocks' worth of ADMs; elsewhere `inf` is best.
    let drop = if p == 8 { 2 } else { 0 };
    let (blocks, _) = delete_vertices(&odd, p + 1, &[drop]);
    let shift = p - drop;
    Ok(blocks.iter().map(|b| b.filter_map_nodes(|x| Some((x + shift) % p))).collect())
}

/// Explicit decomposition of `T_p`, `p` in `{2..=11, 22, 23}`, all-forward
/// when `p` is even.
pub fn c3_small_decomposition(p: usize) -> Result<Vec<Block>> {
    if p % 2 == 1 {
        small_odd(p)
    } else {
        small_even(p)
    }
}

/// Group type of the 3-GDD used for `N`, or `None` when `N` is handled by
/// an explicit decomposition.
fn plan(n: usize) -> Result<Option<GroupType>> {
    let m = n | 1;
    let t = match m % 12 {
        1 | 5 if m >= 13 => GroupType::uniform(2, (m - 1) / 4)?,
        9 if m >= 21 => GroupType::new([(2, (m - 5) / 4 - 1), (4, 1)])?,
        3 if m >= 27 => GroupType::new([(3, (m + 3) / 6 - 1), (1, 1)])?,
        // Type 3^2 1^1 does not exist; a triple of STS(7) kept whole is the next best.
        3 if m == 15 => GroupType::new([(3, 1), (1, 4)])?,
        7 if m >= 19 => GroupType::uniform(3, (m - 1) / 6)?,
        11 if m >= 59 => GroupType::new([(3, (m - 17) / 6 - 1), (11, 1)])?,
        11 if m >= 35 => GroupType::new([(3, (m - 5) / 6 - 1), (5, 1)])?,
        _ => return Ok(None),
    };
    Ok(Some(t))
}

/// Closed form by `N mod 12`. Class 9 is an upper bound, not a proven value.
/// Not reached at `N = 14, 15, 47`, where the required design does not exist.
pub fn c3_formula(n: usize) -> u64 {
    let nn = n as u64;
    let sq = nn * nn;
    match n % 12 {
        0 | 4 => sq / 4,
        1 | 5 => nn * (nn - 1) / 4,
        8 => sq / 4 + 2,
        9 => nn * (nn - 1) / 4 + 3,
        2 => sq / 4 + (nn + 4) / 6,
        3 => (sq + 3) / 4,
        6 => sq / 4 + nn / 6,
        7 => (sq - 1) / 4,
        10 => sq / 4 + (nn + 8) / 6,
        _ => (sq - 1) / 4 + u64::from(matches!(n, 11 | 35)),
    }
}

/// Dispatch on `N mod 12`: explicit decompositions for small `N`, otherwise
/// a doubled 3-GDD whose groups are filled with small decompositions.
pub fn construct_c3(n: usize) -> Result<ConstructionResult> {
    let instance = RingInstance::new(n, 3)?;
    let blocks = match plan(n)? {
        None => c3_small_decomposition(n)?,
        Some(t) => {
            let design = gdd3(&t)?;
            let lay = DoubledLayout::new(design.points(), n % 2 == 1);
            let mut blocks = Vec::new();
            for g in design.groups() {
                for b in c3_small_decomposition(2 * g.len() + n % 2)? {
                    blocks.push(lay.embed(&b, g));
                }
            }
            for t in design.blocks() {
                blocks.push(doubled_triangle(&lay, [t[0], t[1], t[2]], &instance)?);
            }
            blocks
        }
    };
    ConstructionResult::finish(NAME, instance, blocks, Some(c3_formula(n)), None)
}
