//! `C = 1`: directed cycles built by inserting one pair of antipodal
//! vertices at a time.

use super::{ConstructionResult, DoubledLayout};
use crate::error::Result;
use crate::ring::{Arc, Block, Node, RingInstance};

/// Vertex pairs inserted one at a time, each new `xA` just after `inf` and
/// each new `xB` just after the last `A` vertex. Point `t` is the `t`-th one
/// inserted, so later points sit earlier on the ring.
#[derive(Clone, Copy, Debug)]
pub(super) struct InsertionLayout {
    layout: DoubledLayout,
}

impl InsertionLayout {
    pub(super) fn new(n: usize) -> Self {
        InsertionLayout { layout: DoubledLayout::new(n / 2, n % 2 == 1) }
    }

    pub(super) fn points(&self) -> usize {
        self.layout.points
    }

    pub(super) fn a(&self, t: usize) -> Node {
        self.layout.a(self.layout.points - 1 - t)
    }

    pub(super) fn b(&self, t: usize) -> Node {
        self.layout.b(self.layout.points - 1 - t)
    }

    pub(super) fn infinity(&self) -> Option<Node> {
        self.layout.infinity()
    }

    /// The `l`-th existing point in ring order when `p` points are present.
    pub(super) fn existing(&self, p: usize, l: usize) -> usize {
        p - 1 - l
    }

    /// `xA -> xB`, closed into a triangle through `inf` on odd rings.
    pub(super) fn closing_arcs(&self, x: usize) -> Vec<Arc> {
        let (xa, xb) = (self.a(x), self.b(x));
        match self.infinity() {
            Some(inf) => vec![(xa, xb), (xb, inf), (inf, xa)],
            None => vec![(xa, xb)],
        }
    }
}

/// `N(N-1)/2` for odd `N`, `N^2/2` for even `N`.
pub fn c1_formula(n: usize) -> u64 {
    let n = n as u64;
    if n % 2 == 1 {
        n * (n - 1) / 2
    } else {
        n * n / 2
    }
}

fn c1_blocks(n: usize) -> Vec<Block> {
    let lay = InsertionLayout::new(n);
    let mut blocks = Vec::new();
    for x in 0..lay.points() {
        for i in 0..x {
            let (xa, ia, xb, ib) = (lay.a(x), lay.a(i), lay.b(x), lay.b(i));
            blocks.push(Block::new([(xa, ia), (ia, xb), (xb, ib), (ib, xa)]));
        }
        blocks.push(Block::new(lay.closing_arcs(x)));
    }
    blocks
}

/// Partition of `T_N` into 4-cycles plus one triangle or arc per inserted pair.
pub fn construct_c1(n: usize) -> Result<ConstructionResult> {
    let instance = RingInstance::new(n, 1)?;
    ConstructionResult::finish("c1-cycles", instance, c1_blocks(n), Some(c1_formula(n)), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rings() {
        for (n, adm) in [(2, 2), (3, 3), (4, 8), (5, 10), (6, 18), (7, 21)] {
            let r = construct_c1(n).unwrap();
            assert_eq!(r.achieved_adm, adm, "N={n}");
            assert!(r.optimality.is_optimal(), "N={n}");
        }
    }

    #[test]
    fn four_ring_is_a_square_and_two_arcs() {
        let r = construct_c1(4).unwrap();
        let mut sizes: Vec<usize> = r.solution.blocks().iter().map(|b| b.arcs().len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 4]);
    }
}
