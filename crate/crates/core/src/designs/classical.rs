//! Direct constructions: Bose and Skolem triple systems, Latin-square
//! transversal designs, finite planes, and 3-GDDs of type `3^q`.

use super::gf::{prime_power, FiniteField};
use super::{checked, BlockDesign};
use crate::error::{GroomingError, Result};

/// A Steiner triple system on `v` points, `v = 1 or 3 (mod 6)`.
pub fn steiner_triple_system(v: usize) -> Result<BlockDesign> {
    match v % 6 {
        3 => bose(v),
        1 => skolem(v),
        _ => Err(GroomingError::DesignNonexistent(format!("STS({v}): v must be 1 or 3 mod 6"))),
    }
}

/// Bose: idempotent commutative quasigroup on `Z_m`, `m = v/3` odd.
fn bose(v: usize) -> Result<BlockDesign> {
    let m = v / 3;
    let half = (m + 1) / 2;
    let op = |x: usize, y: usize| ((x + y) * half) % m;
    let pt = |x: usize, i: usize| (i % 3) * m + x;
    let mut blocks: Vec<Vec<usize>> = (0..m).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    checked(BlockDesign::pairwise_balanced(v, blocks, 3, "Bose triple system"))
}

/// Skolem: half-idempotent commutative quasigroup on `Z_2n`, plus a point at infinity.
fn skolem(v: usize) -> Result<BlockDesign> {
    let n = v / 6;
    let m = 2 * n;
    let op = |x: usize, y: usize| {
        let s = (x + y) % m;
        if s % 2 == 0 {
            s / 2
        } else {
            (s - 1) / 2 + n
        }
    };
    let pt = |x: usize, i: usize| (i % 3) * m + x;
    let inf = 3 * m;
    let mut blocks: Vec<Vec<usize>> = (0..n).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    for i in 0..3 {
        for x in 0..n {
            blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
        }
        for x in 0..m {
            for y in x + 1..m {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    checked(BlockDesign::pairwise_balanced(v, blocks, 3, "Skolem triple system"))
}

/// TD(3, n) from the cyclic Latin square `L(r, c) = r + c mod n`.
pub fn transversal_design_3(n: usize) -> Result<BlockDesign> {
    if n == 0 {
        return Err(GroomingError::InvalidParameter("transversal design needs n >= 1".into()));
    }
    let groups = (0..3).map(|g| (g * n..(g + 1) * n).collect()).collect();
    let blocks = (0..n)
        .flat_map(|r| (0..n).map(move |c| vec![r, n + c, 2 * n + (r + c) % n]))
        .collect();
    checked(BlockDesign::new(3 * n, groups, blocks, 3, "cyclic Latin square"))
}

/// 3-GDD of type `3^q`, `q` odd: points `Z_q x Z_3`, groups `{x} x Z_3`,
/// blocks `{(x,i), (y,i), ((x+y)/2, i+1)}`.
pub(crate) fn gdd3_triples(q: usize) -> Result<BlockDesign> {
    let half = (q + 1) / 2;
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let groups = (0..q).map(|x| vec![pt(x, 0), pt(x, 1), pt(x, 2)]).collect();
    let mut blocks = Vec::with_capacity(3 * q * (q - 1) / 2);
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                blocks.push(vec![pt(x, i), pt(y, i), pt(((x + y) * half) % q, i + 1)]);
            }
        }
    }
    checked(BlockDesign::new(3 * q, groups, blocks, 3, "midpoint quasigroup on Z_q x Z_3"))
}

/// `PG(2, q)`: a `(q^2+q+1, q+1, 1)`-BIBD for a prime power `q`.
pub fn projective_plane(q: usize) -> Result<BlockDesign> {
    let field = field_for(q)?;
    // Normalized homogeneous coordinates: first nonzero entry is 1.
    let mut points: Vec<[usize; 3]> = Vec::new();
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    for z in 0..q {
        points.push([0, 1, z]);
    }
    points.push([0, 0, 1]);
    let dot = |a: &[usize; 3], b: &[usize; 3]| {
        (0..3).fold(0, |acc, i| field.add(acc, field.mul(a[i], b[i])))
    };
    let blocks = points
        .iter()
        .map(|line| (0..points.len()).filter(|&i| dot(line, &points[i]) == 0).collect())
        .collect();
    checked(BlockDesign::pairwise_balanced(points.len(), blocks, q + 1, "projective plane"))
}

/// `AG(2, q)`: a `(q^2, q, 1)`-BIBD for a prime power `q`.
pub fn affine_plane(q: usize) -> Result<BlockDesign> {
    let field = field_for(q)?;
    let pt = |x: usize, y: usize| x * q + y;
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(q * q + q);
    for slope in 0..q {
        for icpt in 0..q {
            blocks.push((0..q).map(|x| pt(x, field.add(field.mul(slope, x), icpt))).collect());
        }
    }
    for x in 0..q {
        blocks.push((0..q).map(|y| pt(x, y)).collect());
    }
    checked(BlockDesign::pairwise_balanced(q * q, blocks, q, "affine plane"))
}

fn field_for(q: usize) -> Result<FiniteField> {
    if prime_power(q).is_none() {
        return Err(GroomingError::InvalidParameter(format!("plane order {q} is not a prime power")));
    }
    FiniteField::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_systems() {
        for v in [1, 3, 7, 9, 13, 15, 19, 21, 25, 27, 31] {
            let d = steiner_triple_system(v).unwrap();
            assert_eq!(d.blocks().len(), v * (v - 1) / 6, "STS({v})");
        }
        assert!(steiner_triple_system(8).is_err());
    }

    #[test]
    fn transversal_designs() {
        for n in 1..=6 {
            assert_eq!(transversal_design_3(n).unwrap().blocks().len(), n * n);
        }
    }

    #[test]
    fn planes() {
        assert_eq!(projective_plane(2).unwrap().blocks().len(), 7);
        assert_eq!(projective_plane(3).unwrap().blocks().len(), 13);
        assert_eq!(projective_plane(5).unwrap().blocks().len(), 31);
        assert_eq!(projective_plane(4).unwrap().blocks().len(), 21);
        assert_eq!(affine_plane(4).unwrap().blocks().len(), 20);
        assert!(projective_plane(6).is_err());
    }

    #[test]
    fn triples_gdd() {
        for q in [3, 5, 7, 9] {
            assert_eq!(gdd3_triples(q).unwrap().blocks().len(), 3 * q * (q - 1) / 2);
        }
    }
}
