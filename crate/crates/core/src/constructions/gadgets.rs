//! Fixed arc templates over ordered slots.
//!
//! A template arc `(a, b)` joins the labels placed in slots `a` and `b`.
//! Unless stated otherwise, slots are listed in ring order: instantiating
//! with labels that increase cyclically preserves the associated cyclic
//! order, so the block has the template's load.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GroomingError, Result};
use crate::ring::{validate_block, Block, Node, RingInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetName {
    /// Directed triangle.
    T3,
    /// The whole of `T_4`, on `[iA, jA, iB, jB]`.
    T4,
    /// `T_5` on `[inf, iA, jA, iB, jB]`.
    T5Infty,
    /// Doubled triangle on `[iA, jA, kA, iB, jB, kB]`.
    K222,
    /// Five-vertex piece of the `K_{4,4,4}` cover, slots in listing order.
    G5,
    /// Six-vertex piece of the `K_{4,4,4}` cover.
    G6,
    /// Seven-vertex, thirteen-arc digraph of load 3.
    G7,
    /// Doubled 4-cycle through `inf`, on `[inf, iA, jA, kA, iB, jB, kB]`.
    C4Gadget,
    /// Doubled star with centre `i`, on `[inf, iA, jA, kA, iB, jB, kB]`.
    StarB,
    /// Doubled star with centre `i`, on `[iA, jA, kA, lA, iB, jB, kB, lB]`.
    StarC,
    /// Doubled path `1-2-3-4` plus chords, on `[1A..4A, 1B..4B]`.
    Path8,
    /// Doubled clique `K_m` with no arc inside a pair, on `[y1A..ymA, y1B..ymB]`.
    DoubledClique(usize),
}

impl fmt::Display for GadgetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetName::T3 => f.write_str("T3"),
            GadgetName::T4 => f.write_str("T4"),
            GadgetName::T5Infty => f.write_str("T5-infty"),
            GadgetName::K222 => f.write_str("K222"),
            GadgetName::G5 => f.write_str("G5"),
            GadgetName::G6 => f.write_str("G6"),
            GadgetName::G7 => f.write_str("G7"),
            GadgetName::C4Gadget => f.write_str("C4-gadget"),
            GadgetName::StarB => f.write_str("star-b"),
            GadgetName::StarC => f.write_str("star-c"),
            GadgetName::Path8 => f.write_str("path8"),
            GadgetName::DoubledClique(m) => write!(f, "T2x{m}"),
        }
    }
}

const T3: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 0)];
const T4: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)];
const T5: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 0), (3, 4), (4, 0), (4, 1)];
const K222: &[(usize, usize)] =
    &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 0), (4, 5), (5, 0), (5, 1)];
const G5: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 4), (2, 3), (3, 0), (4, 0)];
const G6: &[(usize, usize)] = &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 0), (4, 5), (5, 0)];
const G7: &[(usize, usize)] =
    &[(0, 1), (0, 2), (0, 3), (4, 0), (5, 0), (6, 0), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (5, 6)];
const C4: &[(usize, usize)] =
    &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 4), (3, 5), (4, 0), (4, 5), (5, 1), (5, 6), (6, 0)];
const STAR_B: &[(usize, usize)] =
    &[(0, 1), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (4, 0), (4, 5), (4, 6), (5, 1), (6, 1)];
const STAR_C: &[(usize, usize)] =
    &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5), (4, 6), (4, 7), (5, 0), (6, 0), (7, 0)];
const PATH8: &[(usize, usize)] =
    &[(0, 1), (1, 2), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (5, 0), (5, 6), (6, 1), (6, 7), (7, 2)];

/// An arc template with the grooming factor it is admissible for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    name: GadgetName,
    slots: usize,
    arcs: Vec<(usize, usize)>,
    capacity: u32,
    ring_ordered: bool,
}

impl Gadget {
    pub fn get(name: GadgetName) -> Result<Gadget> {
        let fixed = |slots, arcs: &[(usize, usize)], capacity, ring_ordered| Gadget {
            name,
            slots,
            arcs: arcs.to_vec(),
            capacity,
            ring_ordered,
        };
        Ok(match name {
            GadgetName::T3 => fixed(3, T3, 1, true),
            GadgetName::T4 => fixed(4, T4, 3, true),
            GadgetName::T5Infty => fixed(5, T5, 3, true),
            GadgetName::K222 => fixed(6, K222, 3, true),
            GadgetName::G5 => fixed(5, G5, 2, false),
            GadgetName::G6 => fixed(6, G6, 2, true),
            GadgetName::G7 => fixed(7, G7, 3, true),
            GadgetName::C4Gadget => fixed(7, C4, 3, true),
            GadgetName::StarB => fixed(7, STAR_B, 3, true),
            GadgetName::StarC => fixed(8, STAR_C, 3, true),
            GadgetName::Path8 => fixed(8, PATH8, 3, true),
            GadgetName::DoubledClique(m) => doubled_clique(m)?,
        })
    }

    pub fn name(&self) -> GadgetName {
        self.name
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Grooming factor the template is admissible for.
    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Whether labels must increase cyclically in slot order.
    pub fn ring_ordered(&self) -> bool {
        self.ring_ordered
    }
}

/// Inside a side, arcs go from the earlier slot to the later one; across
/// sides, `yA -> zB` iff `z < y` and `zB -> yA` iff `z > y`.
fn doubled_clique(m: usize) -> Result<Gadget> {
    if m < 2 {
        return Err(GroomingError::Gadget { gadget: format!("T2x{m}"), reason: "needs at least 2 points".into() });
    }
    let mut arcs = Vec::with_capacity(2 * m * (m - 1));
    for a in 0..m {
        for b in a + 1..m {
            arcs.push((a, b));
            arcs.push((m + a, m + b));
        }
    }
    for y in 0..m {
        for z in 0..m {
            match z.cmp(&y) {
                std::cmp::Ordering::Less => arcs.push((y, m + z)),
                std::cmp::Ordering::Greater => arcs.push((m + z, y)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    let k = (m - 1) as u32;
    Ok(Gadget { name: GadgetName::DoubledClique(m), slots: 2 * m, arcs, capacity: k * (k + 1) / 2, ring_ordered: true })
}

/// Whether the labels are distinct and increase around the ring starting
/// from some slot (at most one descent, and it wraps).
fn cyclically_increasing(labels: &[Node]) -> bool {
    let descents = labels.windows(2).filter(|w| w[1] <= w[0]).count();
    match descents {
        0 => true,
        1 => labels.last() < labels.first(),
        _ => false,
    }
}

/// Places `labels` into the gadget's slots and checks the result against `instance`.
pub fn instantiate_gadget(name: GadgetName, labels: &[Node], instance: &RingInstance) -> Result<Block> {
    let gadget = Gadget::get(name)?;
    let fail = |reason: String| GroomingError::Gadget { gadget: name.to_string(), reason };
    if labels.len() != gadget.slots {
        return Err(fail(format!("expected {} labels, got {}", gadget.slots, labels.len())));
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(fail("labels must be distinct".into()));
    }
    if gadget.ring_ordered && !cyclically_increasing(labels) {
        return Err(fail(format!("labels {labels:?} are not in ring order")));
    }
    let block = Block::new(gadget.arcs.iter().map(|&(a, b)| (labels[a], labels[b])));
    validate_block(&block, instance).map_err(|e| fail(e.to_string()))?;
    Ok(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::block_load;

    const FIXED: [GadgetName; 11] = [
        GadgetName::T3,
        GadgetName::T4,
        GadgetName::T5Infty,
        GadgetName::K222,
        GadgetName::G5,
        GadgetName::G6,
        GadgetName::G7,
        GadgetName::C4Gadget,
        GadgetName::StarB,
        GadgetName::StarC,
        GadgetName::Path8,
    ];

    #[test]
    fn templates_have_no_repeated_or_opposite_arcs() {
        for name in FIXED.into_iter().chain((2..6).map(GadgetName::DoubledClique)) {
            let g = Gadget::get(name).unwrap();
            let mut seen = std::collections::HashSet::new();
            for &(a, b) in g.arcs() {
                assert!(a < g.slots() && b < g.slots() && a != b, "{name}");
                assert!(seen.insert((a.min(b), a.max(b))), "{name} repeats pair ({a},{b})");
            }
            let used: std::collections::HashSet<usize> = g.arcs().iter().flat_map(|&(a, b)| [a, b]).collect();
            assert_eq!(used.len(), g.slots(), "{name} has an unused slot");
        }
    }

    #[test]
    fn ring_ordered_templates_load_within_capacity() {
        for name in FIXED.into_iter().chain((2..6).map(GadgetName::DoubledClique)) {
            let g = Gadget::get(name).unwrap();
            if !g.ring_ordered() {
                continue;
            }
            let block = Block::new(g.arcs().iter().copied());
            let load = block_load(&block, g.slots()).unwrap();
            assert!(load.max() <= g.capacity(), "{name}: load {}", load.max());
        }
    }

    #[test]
    fn k222_on_a_ten_ring() {
        let inst = RingInstance::new(10, 3).unwrap();
        let b = instantiate_gadget(GadgetName::K222, &[1, 2, 3, 6, 7, 8], &inst).unwrap();
        assert_eq!(b.arcs().len(), 12);
        assert_eq!(block_load(&b, 10).unwrap().max(), 3);
    }

    #[test]
    fn t5_is_the_whole_five_tournament() {
        let inst = RingInstance::new(5, 3).unwrap();
        let b = instantiate_gadget(GadgetName::T5Infty, &[0, 1, 2, 3, 4], &inst).unwrap();
        assert_eq!(b.arcs(), inst.tournament().arcs());
    }

    #[test]
    fn ordering_and_count_errors() {
        let inst = RingInstance::new(10, 3).unwrap();
        assert!(instantiate_gadget(GadgetName::K222, &[1, 3, 2, 6, 7, 8], &inst).is_err());
        assert!(instantiate_gadget(GadgetName::K222, &[1, 2, 3], &inst).is_err());
        assert!(instantiate_gadget(GadgetName::K222, &[1, 1, 3, 6, 7, 8], &inst).is_err());
        // A rotation of a valid labelling is still in ring order.
        assert!(instantiate_gadget(GadgetName::K222, &[6, 7, 8, 1, 2, 3], &inst).is_ok());
    }

    #[test]
    fn capacity_violation_is_reported() {
        let inst = RingInstance::new(10, 2).unwrap();
        assert!(instantiate_gadget(GadgetName::K222, &[1, 2, 3, 6, 7, 8], &inst).is_err());
    }

    #[test]
    fn doubled_clique_sizes() {
        for m in 2..7 {
            let g = Gadget::get(GadgetName::DoubledClique(m)).unwrap();
            assert_eq!(g.arcs().len(), 2 * m * (m - 1));
        }
        assert!(Gadget::get(GadgetName::DoubledClique(1)).is_err());
    }
}
