//! `C = 2`: the recursive insertion scheme and the tripartite scheme built
//! from Steiner triple systems.

use super::c1::InsertionLayout;
use super::{delete_vertices, instantiate_gadget, not_applicable, repair, ConstructionResult, GadgetName};
use crate::bounds::Rational;
use crate::designs::steiner_triple_system;
use crate::error::Result;
use crate::ring::{Block, HalfArcRule, Node, RingInstance};

/// `A_{4q} = 6q^2`, `A_{4q+1} = 6q^2+2q`, `A_{4q+2} = 6q^2+6q+2`, `A_{4q+3} = 6q^2+8q+3`.
pub fn c2_recursive_formula(n: usize) -> u64 {
    let q = (n / 4) as u64;
    match n % 4 {
        0 => 6 * q * q,
        1 => 6 * q * q + 2 * q,
        2 => 6 * q * q + 6 * q + 2,
        _ => 6 * q * q + 8 * q + 3,
    }
}

fn c2_recursive_blocks(n: usize) -> Vec<Block> {
    let lay = InsertionLayout::new(n);
    let mut blocks = Vec::new();
    for x in 0..lay.points() {
        let p = x;
        let h = p / 2;
        let (xa, xb) = (lay.a(x), lay.b(x));
        for l in 0..h {
            let (i, j) = (lay.existing(p, l), lay.existing(p, l + h));
            let (ia, ja, ib, jb) = (lay.a(i), lay.a(j), lay.b(i), lay.b(j));
            blocks.push(Block::new([
                (xa, ia),
                (xa, ja),
                (ia, xb),
                (ja, xb),
                (xb, ib),
                (xb, jb),
                (ib, xa),
                (jb, xa),
            ]));
        }
        let mut last = lay.closing_arcs(x);
        if p % 2 == 1 {
            let j = lay.existing(p, p - 1);
            let (ja, jb) = (lay.a(j), lay.b(j));
            last.extend([(xa, ja), (ja, xb), (xb, jb), (jb, xa)]);
        }
        blocks.push(Block::new(last));
    }
    blocks
}

/// The recursive scheme. On even rings the diameter orientation it induces
/// is recorded as an explicit rule.
pub fn construct_c2_recursive(n: usize) -> Result<ConstructionResult> {
    let rule = if n % 2 == 0 { HalfArcRule::Explicit(vec![true; n / 2]) } else { HalfArcRule::AllForward };
    let instance = RingInstance::with_rule(n, 2, rule)?;
    let claim = Rational::new(12, 11);
    ConstructionResult::finish("c2-recursive", instance, c2_recursive_blocks(n), Some(c2_recursive_formula(n)), Some(claim))
}

/// `K_{4,4,4}` on classes `1, 2, 3` and copies `A..D`: four `G6` and two `G5`.
/// Each entry is `(class, copy)` in slot order.
const K444: [&[(usize, usize)]; 6] = [
    &[(0, 0), (1, 0), (2, 1), (0, 2), (1, 2), (2, 3)],
    &[(0, 1), (1, 1), (2, 1), (0, 3), (1, 3), (2, 3)],
    &[(0, 1), (1, 2), (2, 2), (0, 3), (1, 0), (2, 0)],
    &[(0, 0), (2, 0), (1, 1), (0, 2), (2, 2), (1, 3)],
    &[(2, 0), (0, 2), (1, 2), (0, 3), (1, 3)],
    &[(2, 3), (1, 0), (1, 1), (0, 3), (0, 2)],
];

/// Splits of the relative `T_4` and `T_5` on one point's copies (and `inf`).
const T4_SPLIT: [&[(usize, usize)]; 2] = [&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], &[(1, 3)]];
const T5_SPLIT: [&[(usize, usize)]; 2] =
    [&[(1, 3), (3, 4), (4, 1)], &[(0, 1), (1, 2), (0, 2), (2, 3), (2, 4), (3, 0), (4, 0)]];

/// `(34N^2 + 8N)/96` for `N = 4p`, `(34N^2 - 12N - 22)/96` for `N = 4p+1`,
/// when `p = 1 or 3 (mod 6)`.
pub fn c2_tripartite_formula(n: usize) -> Option<u64> {
    let p = n / 4;
    if p < 3 || !matches!(p % 6, 1 | 3) {
        return None;
    }
    let nn = n as u64;
    match n % 4 {
        0 => Some((34 * nn * nn + 8 * nn) / 96),
        1 => Some((34 * nn * nn - 12 * nn - 22) / 96),
        _ => None,
    }
}

/// Copies of `p` points laid out as `A` block, `B` block, `C` block, `D`
/// block, with `inf` in front on odd rings.
fn tripartite_blocks(p: usize, odd: bool) -> Result<Vec<Block>> {
    let off = usize::from(odd);
    let n = 4 * p + off;
    let pos = |copy: usize, point: usize| -> Node { off + copy * p + point };
    let instance = RingInstance::new(n, 2)?;
    let mut blocks = Vec::new();
    for l in 0..p {
        let mut vertices: Vec<Node> = (0..4).map(|x| pos(x, l)).collect();
        let split: &[&[(usize, usize)]] = if odd {
            vertices.insert(0, 0);
            &T5_SPLIT
        } else {
            &T4_SPLIT
        };
        for part in split {
            blocks.push(Block::new(part.iter().map(|&(a, b)| (vertices[a], vertices[b]))));
        }
    }
    let sts = steiner_triple_system(p)?;
    for t in sts.blocks() {
        for part in K444 {
            let labels: Vec<Node> = part.iter().map(|&(class, copy)| pos(copy, t[class])).collect();
            let name = if labels.len() == 6 { GadgetName::G6 } else { GadgetName::G5 };
            blocks.push(instantiate_gadget(name, &labels, &instance)?);
        }
    }
    Ok(blocks)
}

/// Tripartite scheme for `N = 4p` or `4p+1`, padding `p` up to the next
/// value `1 or 3 (mod 6)` and deleting the extra points. Other residues are
/// built on the next multiple of 4 and repaired after deleting vertices.
pub fn construct_c2_tripartite(n: usize) -> Result<ConstructionResult> {
    const NAME: &str = "c2-tripartite";
    if n < 12 {
        return Err(not_applicable(NAME, format!("needs N >= 12, got {n}")));
    }
    let (base_n, odd) = match n % 4 {
        0 | 1 => (n, n % 4 == 1),
        _ => (4 * (n / 4 + 1), false),
    };
    let p = base_n / 4;
    let padded = (p..).find(|q| matches!(q % 6, 1 | 3)).expect("residues 1 and 3 recur");
    let blocks = tripartite_blocks(padded, odd)?;
    let off = usize::from(odd);
    let full_n = 4 * padded + off;
    let dummies: Vec<Node> =
        (0..4).flat_map(|copy| (p..padded).map(move |l| off + copy * padded + l)).collect();
    let (blocks, m) = delete_vertices(&blocks, full_n, &dummies);
    debug_assert_eq!(m, base_n);
    let extra: Vec<Node> = (n..base_n).collect();
    let (blocks, m) = delete_vertices(&blocks, base_n, &extra);
    let (instance, blocks) = repair(blocks, m, 2)?;
    let instance = super::canonical_rule(instance)?;
    ConstructionResult::finish(NAME, instance, blocks, c2_tripartite_formula(n), Some(Rational::new(34, 33)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursive_small_values() {
        for (n, adm) in [(2, 2), (3, 3), (4, 6), (5, 8), (8, 24)] {
            assert_eq!(construct_c2_recursive(n).unwrap().achieved_adm, adm, "N={n}");
        }
    }

    #[test]
    fn recursive_even_rule_is_explicit() {
        let r = construct_c2_recursive(8).unwrap();
        assert_eq!(r.solution.instance().rule(), &HalfArcRule::Explicit(vec![true; 4]));
    }

    #[test]
    fn tripartite_base_cases() {
        assert_eq!(construct_c2_tripartite(12).unwrap().achieved_adm, 52);
        assert_eq!(construct_c2_tripartite(13).unwrap().achieved_adm, 58);
        assert!(construct_c2_tripartite(11).is_err());
    }

    #[test]
    fn tripartite_other_residues_validate() {
        for n in [14, 15, 16, 17, 18, 19, 22] {
            let r = construct_c2_tripartite(n).unwrap();
            assert_eq!(r.solution.instance().n(), n);
        }
    }
}
