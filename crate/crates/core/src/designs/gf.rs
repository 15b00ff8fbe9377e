//! Small finite fields `GF(p^m)` with table arithmetic.

use crate::error::{GroomingError, Result};

/// `Some((p, m))` when `q = p^m` for a prime `p` and `m >= 1`.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn is_prime(q: usize) -> bool {
    matches!(prime_power(q), Some((_, 1)))
}

/// Field elements are `0..q`, read as base-`p` coefficient vectors.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| GroomingError::InvalidParameter(format!("{q} is not a prime power")))?;
        let modulus = irreducible(p, m);
        let digits = |x: usize| -> Vec<usize> { (0..m).scan(x, |s, _| { let d = *s % p; *s /= p; Some(d) }).collect() };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);
                let mut prod = vec![0; 2 * m];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                poly_reduce(&mut prod, &modulus, p);
                mul[a * q + b] = encode(&prod[..m]);
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse exists")
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }
}

/// Reduces `poly` (low degree first) modulo the monic `modulus` in place.
fn poly_reduce(poly: &mut [usize], modulus: &[usize], p: usize) {
    let m = modulus.len() - 1;
    for deg in (m..poly.len()).rev() {
        let lead = poly[deg];
        if lead == 0 {
            continue;
        }
        for (i, &c) in modulus.iter().enumerate() {
            let idx = deg - m + i;
            poly[idx] = (poly[idx] + p * p - (lead * c) % p) % p;
        }
    }
}

/// Lowest monic irreducible polynomial of degree `m` over `Z_p`, low degree first.
fn irreducible(p: usize, m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m as u32);
    (0..count)
        .map(|x| {
            let mut v: Vec<usize> = (0..m).scan(x, |s, _| { let d = *s % p; *s /= p; Some(d) }).collect();
            v.push(1);
            v
        })
        .find(|f| f[0] != 0 && !has_factor(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn has_factor(f: &[usize], p: usize) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for x in 0..p.pow(d as u32) {
            let mut g: Vec<usize> = (0..d).scan(x, |s, _| { let c = *s % p; *s /= p; Some(c) }).collect();
            g.push(1);
            let mut r = f.to_vec();
            poly_reduce(&mut r, &g, p);
            if r[..d].iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    let inv = f.inv(a).expect("nonzero elements are invertible");
                    assert_eq!(f.mul(a, inv), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
