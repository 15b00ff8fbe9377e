//! Triangular `C = k(k+1)/2`: one whole `T_{2k+1}` (or `T_{2k}`) per group
//! of a `(k+1)`-GDD of type `k^q`, and a doubled `K_{k+1}` per block.

use super::{instantiate_gadget, not_applicable, ConstructionResult, DoubledLayout, GadgetName};
use crate::bounds::GroomingDecomposition;
use crate::designs::{bibd, gdd_from_bibd, BlockDesign};
use crate::error::Result;
use crate::ring::{Block, RingInstance};

/// `N(N-1)/(2k)` for `N = 2kq+1`, `N^2/(2k)` for `N = 2kq`.
pub fn triangular_formula(k: usize, n: usize) -> u64 {
    let (k, n) = (k as u64, n as u64);
    if n % 2 == 1 {
        n * (n - 1) / (2 * k)
    } else {
        n * n / (2 * k)
    }
}

fn group_design(k: usize, q: usize) -> Result<BlockDesign> {
    if q == 1 {
        return Ok(BlockDesign::new(k, vec![(0..k).collect()], Vec::new(), k + 1, "single group"));
    }
    gdd_from_bibd(&bibd(k * q + 1, k + 1)?, k * q)
}

pub fn construct_triangular(c: u32, n: usize) -> Result<ConstructionResult> {
    let name = "triangular";
    let d = GroomingDecomposition::new(c)?;
    if !d.is_triangular() {
        return Err(not_applicable(name, format!("C={c} is not of the form k(k+1)/2")));
    }
    let k = d.k as usize;
    let odd = n % 2 == 1;
    if (n - usize::from(odd)) % (2 * k) != 0 || n < 2 * k {
        return Err(not_applicable(name, format!("N={n} is not 2kq or 2kq+1 for k={k}")));
    }
    let q = n / (2 * k);
    let design = group_design(k, q)?;
    let lay = DoubledLayout::new(k * q, odd);
    let instance = RingInstance::new(n, c)?;
    let group_instance = RingInstance::new(2 * k + usize::from(odd), c)?;
    let mut blocks = Vec::with_capacity(design.groups().len() + design.blocks().len());
    for g in design.groups() {
        let whole = Block::new(group_instance.tournament().arcs().iter().copied());
        blocks.push(lay.embed(&whole, g));
    }
    for b in design.blocks() {
        let labels: Vec<usize> = b.iter().map(|&x| lay.a(x)).chain(b.iter().map(|&x| lay.b(x))).collect();
        blocks.push(instantiate_gadget(GadgetName::DoubledClique(k + 1), &labels, &instance)?);
    }
    ConstructionResult::finish(name, instance, blocks, Some(triangular_formula(k, n)), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c6_n25() {
        let r = construct_triangular(6, 25).unwrap();
        assert_eq!(r.achieved_adm, 100);
        assert!(r.optimality.is_optimal());
    }

    #[test]
    fn c3_agrees_with_the_gdd_route() {
        assert_eq!(construct_triangular(3, 13).unwrap().achieved_adm, 39);
        assert_eq!(construct_triangular(3, 12).unwrap().achieved_adm, 36);
    }

    #[test]
    fn c1_is_covered_too() {
        assert_eq!(construct_triangular(1, 7).unwrap().achieved_adm, 21);
        assert_eq!(construct_triangular(1, 6).unwrap().achieved_adm, 18);
    }

    #[test]
    fn inapplicable_parameters() {
        assert!(construct_triangular(4, 25).is_err());
        assert!(construct_triangular(6, 24).is_ok());
        assert!(construct_triangular(6, 23).is_err());
    }
}
