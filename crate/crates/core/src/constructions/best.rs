//! Picks the cheapest applicable construction.

use super::{
    construct_c1, construct_c2_recursive, construct_c2_tripartite, construct_c3, construct_triangular, not_applicable,
    ConstructionResult,
};
use crate::error::{GroomingError, Result};
use crate::ring::RingInstance;

/// Names accepted by [`construct_named`].
pub const CONSTRUCTION_NAMES: [&str; 5] = ["c1-cycles", "c2-recursive", "c2-tripartite", "c3-gdd", "triangular"];

/// Grooming factor a named family is built for.
fn native_c(name: &str, c: u32) -> Option<u32> {
    match name {
        "c1-cycles" => Some(1),
        "c2-recursive" | "c2-tripartite" => Some(2),
        "c3-gdd" => Some(3),
        "triangular" => Some(c),
        _ => None,
    }
}

/// Runs one construction family and reads its blocks against `C = c`.
pub fn construct_named(name: &str, c: u32, n: usize) -> Result<ConstructionResult> {
    RingInstance::new(n, c)?;
    let native = native_c(name, c).ok_or_else(|| {
        GroomingError::InvalidParameter(format!("unknown construction {name:?}; expected one of {CONSTRUCTION_NAMES:?}"))
    })?;
    if native > c {
        return Err(not_applicable(name, format!("built for C={native}, asked for C={c}")));
    }
    let result = match name {
        "c1-cycles" => construct_c1(n)?,
        "c2-recursive" => construct_c2_recursive(n)?,
        "c2-tripartite" => construct_c2_tripartite(n)?,
        "c3-gdd" => construct_c3(n)?,
        _ => construct_triangular(c, n)?,
    };
    result.lifted(c)
}

/// Every family that applies to `(c, n)`, all read against `C = c`.
/// Families that do not apply or whose design is unavailable are skipped.
fn candidates(c: u32, n: usize) -> Result<Vec<ConstructionResult>> {
    let mut out = vec![construct_c1(n)?.lifted(c)?];
    let mut offer = |r: Result<ConstructionResult>| {
        if let Ok(r) = r.and_then(|r| r.lifted(c)) {
            out.push(r);
        }
    };
    if c >= 2 {
        offer(construct_c2_recursive(n));
        if n >= 12 {
            offer(construct_c2_tripartite(n));
        }
    }
    if c >= 3 {
        offer(construct_c3(n));
    }
    // k = 1, 2 are the c1 and c3 families.
    for k in 3u32.. {
        let t = k * (k + 1) / 2;
        if t > c {
            break;
        }
        let k = k as usize;
        if n >= 2 * k && (n - n % 2) % (2 * k) == 0 {
            offer(construct_triangular(t, n));
        }
    }
    Ok(out)
}

/// The cheapest valid construction. Ties go to a certified-optimal result,
/// then to the lexicographically first name.
pub fn construct_best(c: u32, n: usize) -> Result<ConstructionResult> {
    RingInstance::new(n, c)?;
    let best = candidates(c, n)?
        .into_iter()
        .min_by(|a, b| {
            a.achieved_adm
                .cmp(&b.achieved_adm)
                .then(b.optimality.is_optimal().cmp(&a.optimality.is_optimal()))
                .then(a.name.cmp(&b.name))
        })
        .expect("the cycle cover always applies");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_cases() {
        let r = construct_best(2, 5).unwrap();
        assert_eq!(r.achieved_adm, 8);
        assert!(r.optimality.is_optimal());
        let r = construct_best(1, 6).unwrap();
        assert_eq!(r.achieved_adm, 18);
        assert!(r.optimality.is_optimal());
        let r = construct_best(4, 5).unwrap();
        assert!(r.achieved_adm <= 8);
        assert_eq!(r.solution.instance().c(), 4);
    }

    #[test]
    fn named_constructions() {
        assert_eq!(construct_named("c3-gdd", 3, 13).unwrap().achieved_adm, 39);
        assert!(construct_named("c3-gdd", 2, 13).is_err());
        assert!(construct_named("nope", 2, 13).is_err());
        assert_eq!(construct_named("c1-cycles", 3, 5).unwrap().solution.instance().c(), 3);
    }
}
