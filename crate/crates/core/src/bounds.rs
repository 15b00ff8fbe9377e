//! Closed-form quantities: `gamma(C, p)`, `rho(C)`, wavelength and ADM lower
//! bounds, and the unidirectional comparison.
//!
//! Everything except the Chow-Lin figure is exact rational arithmetic;
//! ceilings are taken only when a report is built.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{GroomingError, Result};

pub type Rational = Ratio<i128>;

fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn ceil_u64(x: &Rational) -> u64 {
    x.ceil().to_integer().max(0) as u64
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(GroomingError::InvalidParameter(format!("ring size must be at least 2, got {n}")));
    }
    Ok(())
}

/// `C = k(k+1)/2 + r` with `0 <= r <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroomingDecomposition {
    pub c: u64,
    pub k: u64,
    pub r: u64,
}

impl GroomingDecomposition {
    pub fn new(c: u32) -> Result<Self> {
        if c < 1 {
            return Err(GroomingError::InvalidParameter("grooming factor must be at least 1".into()));
        }
        let c = u64::from(c);
        let mut k = ((2.0 * c as f64).sqrt() as u64).saturating_sub(1);
        while (k + 1) * (k + 2) / 2 <= c {
            k += 1;
        }
        while k * (k + 1) / 2 > c {
            k -= 1;
        }
        Ok(GroomingDecomposition { c, k, r: c - k * (k + 1) / 2 })
    }

    /// Whether `C` is a triangular number.
    pub fn is_triangular(&self) -> bool {
        self.r == 0
    }
}

/// Largest number of arcs of an admissible digraph on `p` vertices.
pub fn gamma(c: u32, p: usize) -> Result<u64> {
    let d = GroomingDecomposition::new(c)?;
    if p < 2 {
        return Err(GroomingError::InvalidParameter(format!("gamma needs p >= 2, got {p}")));
    }
    let (k, r, p) = (d.k, d.r, p as u64);
    let complete = p * (p - 1) / 2;
    Ok(if p <= 2 * k + 1 || (p == 2 * k + 2 && 2 * r >= k + 2) {
        complete
    } else if p == 2 * k + 2 && r >= 1 {
        k * p + 2 * r - 1
    } else {
        k * p + r * p / (k + 1)
    })
}

/// Best arcs-per-vertex ratio `k + r/(k+1)`.
pub fn rho(c: u32) -> Result<Rational> {
    let d = GroomingDecomposition::new(c)?;
    Ok(Rational::from_integer(d.k as i128) + rat(d.r as i128, d.k as i128 + 1))
}

/// Correction term of the wavelength bound, by `N mod 4`.
pub fn alpha(n: usize) -> i64 {
    match n % 4 {
        1 | 3 => -1,
        2 => 4,
        _ => 8,
    }
}

/// Lower bound on the number of wavelengths, `ceil((N^2 + alpha) / 8C)`.
pub fn min_wavelengths(c: u32, n: usize) -> Result<u64> {
    Ok(wavelength_report(c, n)?.ceiling)
}

/// Which closed form a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundName {
    General,
    Wavelengths,
    C1Parity,
    TighterC2,
    C3Parity,
    C4,
    C5,
    ChowLin,
    Unidirectional,
}

impl BoundName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::General => "general",
            BoundName::Wavelengths => "wavelengths",
            BoundName::C1Parity => "c1-parity",
            BoundName::TighterC2 => "tighter-c2",
            BoundName::C3Parity => "c3-parity",
            BoundName::C4 => "c4",
            BoundName::C5 => "c5",
            BoundName::ChowLin => "chow-lin",
            BoundName::Unidirectional => "unidirectional",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named lower bound with its exact value and integer ceiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: BoundName,
    pub c: u32,
    pub n: usize,
    pub value: Rational,
    pub ceiling: u64,
    pub k: u64,
    pub r: u64,
    pub alpha: Option<i64>,
}

impl BoundReport {
    fn new(name: BoundName, c: u32, n: usize, value: Rational) -> Result<Self> {
        let d = GroomingDecomposition::new(c)?;
        Ok(BoundReport { name, c, n, ceiling: ceil_u64(&value), value, k: d.k, r: d.r, alpha: None })
    }
}

fn wavelength_report(c: u32, n: usize) -> Result<BoundReport> {
    check_n(n)?;
    let a = alpha(n);
    let nn = n as i128;
    let value = rat(nn * nn + a as i128, 8 * i128::from(c.max(1)));
    let mut report = BoundReport::new(BoundName::Wavelengths, c, n, value)?;
    report.alpha = Some(a);
    Ok(report)
}

/// `ceil(N(N-1)/2 * (k+1)/(k(k+1)+r))`, valid for every `C` and `N`.
pub fn lb_general(c: u32, n: usize) -> Result<BoundReport> {
    check_n(n)?;
    let d = GroomingDecomposition::new(c)?;
    let (k, r) = (d.k as i128, d.r as i128);
    let nn = n as i128;
    let value = rat(nn * (nn - 1), 2) * rat(k + 1, k * (k + 1) + r);
    BoundReport::new(BoundName::General, c, n, value)
}

/// The specialised bounds for small `C` that apply to this `N`.
fn special_bounds(c: u32, n: usize) -> Result<Vec<BoundReport>> {
    let nn = n as i128;
    let m = nn * (nn - 1);
    let mut out = Vec::new();
    match c {
        1 if n % 2 == 0 => out.push(BoundReport::new(BoundName::C1Parity, c, n, rat(nn * nn, 2))?),
        2 => out.push(BoundReport::new(BoundName::TighterC2, c, n, rat(11 * nn * nn - 8 * nn - 3, 32))?),
        3 if n % 4 == 3 => out.push(BoundReport::new(BoundName::C3Parity, c, n, rat(3 * nn * nn - nn, 12))?),
        3 if n % 2 == 0 => out.push(BoundReport::new(BoundName::C3Parity, c, n, rat(nn * nn, 4))?),
        4 => out.push(BoundReport::new(BoundName::C4, c, n, rat(7 * m, 32) + rat(3 * (nn - 1), 160))?),
        5 => out.push(BoundReport::new(BoundName::C5, c, n, rat(23 * m, 120) + rat(nn - 1, 40))?),
        _ => {}
    }
    Ok(out)
}

/// Every ADM lower bound that applies, general bound first.
pub fn applicable_bounds(c: u32, n: usize) -> Result<Vec<BoundReport>> {
    let mut out = vec![lb_general(c, n)?];
    out.extend(special_bounds(c, n)?);
    Ok(out)
}

/// All bound reports for display: ADM bounds followed by the wavelength bound.
pub fn all_bounds(c: u32, n: usize) -> Result<Vec<BoundReport>> {
    let mut out = applicable_bounds(c, n)?;
    out.push(wavelength_report(c, n)?);
    Ok(out)
}

/// Strongest applicable ADM lower bound; ties keep the general bound.
pub fn lb_best(c: u32, n: usize) -> Result<BoundReport> {
    let mut best = lb_general(c, n)?;
    for b in special_bounds(c, n)? {
        if b.ceiling > best.ceiling {
            best = b;
        }
    }
    Ok(best)
}

/// Routing-independent bound, comparison only. Double precision.
pub fn lb_chow_lin(c: u32, n: usize) -> Result<f64> {
    check_n(n)?;
    GroomingDecomposition::new(c)?;
    let m = (n as f64) * (n as f64 - 1.0);
    Ok((m * m / 2.0 - m).max(0.0).sqrt() / (2.0 * f64::from(c).sqrt()))
}

/// Unidirectional efficiency `eta(C)`.
pub fn eta(c: u32) -> Result<Rational> {
    let d = GroomingDecomposition::new(c)?;
    Ok(if 2 * d.r <= d.k { rat(d.k as i128, 2) } else { rat(d.c as i128, d.k as i128 + 2) })
}

/// Bidirectional versus unidirectional lower bounds for one `(C, N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RoutingComparison {
    pub c: u32,
    pub n: usize,
    pub k: u64,
    pub r: u64,
    pub rho: Rational,
    pub eta: Rational,
    /// Twice the general bound, before ceiling.
    pub lb_bi: Rational,
    pub lb_uni: Rational,
    /// `lb_uni / lb_bi = rho / (2 eta)`.
    pub ratio: Rational,
    /// `1 + 1/(2(k+1))`.
    pub ratio_upper: Rational,
    pub chow_lin: f64,
}

pub fn compare_routings(c: u32, n: usize) -> Result<RoutingComparison> {
    check_n(n)?;
    let d = GroomingDecomposition::new(c)?;
    let rho = rho(c)?;
    let eta = eta(c)?;
    let nn = n as i128;
    let m = Rational::from_integer(nn * (nn - 1));
    Ok(RoutingComparison {
        c,
        n,
        k: d.k,
        r: d.r,
        lb_bi: m / rho,
        lb_uni: m / 2 / eta,
        ratio: rho / (eta * 2),
        ratio_upper: Rational::from_integer(1) + rat(1, 2 * (d.k as i128 + 1)),
        rho,
        eta,
        chow_lin: lb_chow_lin(c, n)?,
    })
}

/// One cell of the gamma table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCell {
    pub p: usize,
    pub gamma: u64,
    pub achieves_rho: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRow {
    pub c: u32,
    /// Reduced fraction, e.g. `7/2`.
    pub rho: String,
    pub cells: Vec<GammaCell>,
}

/// `gamma(C, p)` over a grid, rows indexed by `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTable {
    pub p_values: Vec<usize>,
    pub rows: Vec<GammaRow>,
}

impl GammaTable {
    pub fn new(c_values: impl IntoIterator<Item = u32>, p_values: impl IntoIterator<Item = usize>) -> Result<Self> {
        let p_values: Vec<usize> = p_values.into_iter().collect();
        let rows = c_values
            .into_iter()
            .map(|c| {
                let rho = rho(c)?;
                let cells = p_values
                    .iter()
                    .map(|&p| {
                        let g = gamma(c, p)?;
                        Ok(GammaCell { p, gamma: g, achieves_rho: rat(g as i128, p as i128) == rho })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GammaRow { c, rho: rho.to_string(), cells })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaTable { p_values, rows })
    }

    /// Rows are `C`, columns are `p`, with a final `rho` column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("C");
        for p in &self.p_values {
            out.push_str(&format!(",{p}"));
        }
        out.push_str(",rho\n");
        for row in &self.rows {
            out.push_str(&row.c.to_string());
            for cell in &row.cells {
                out.push_str(&format!(",{}", cell.gamma));
            }
            out.push_str(&format!(",{}\n", row.rho));
        }
        out
    }
}

/// Lossy conversion for display.
pub fn to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition() {
        let cases = [(1, 1, 0), (2, 1, 1), (3, 2, 0), (5, 2, 2), (6, 3, 0), (9, 3, 3), (10, 4, 0)];
        for (c, k, r) in cases {
            let d = GroomingDecomposition::new(c).unwrap();
            assert_eq!((d.k, d.r), (k, r), "C={c}");
        }
        assert!(GroomingDecomposition::new(0).is_err());
    }

    #[test]
    fn gamma_spot_values() {
        assert_eq!(gamma(2, 4).unwrap(), 5);
        assert_eq!(gamma(3, 5).unwrap(), 10);
        assert_eq!(gamma(7, 16).unwrap(), 52);
        assert!(gamma(2, 1).is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(4).unwrap(), rat(7, 3));
        assert_eq!(rho(1).unwrap(), rat(1, 1));
        assert_eq!(rho(10).unwrap(), rat(4, 1));
    }

    #[test]
    fn wavelengths() {
        assert_eq!(min_wavelengths(2, 5).unwrap(), 2);
        assert_eq!(min_wavelengths(1, 4).unwrap(), 3);
        assert_eq!(min_wavelengths(3, 3).unwrap(), 1);
    }

    #[test]
    fn general_and_best() {
        assert_eq!(lb_general(2, 5).unwrap().ceiling, 7);
        assert_eq!(lb_general(3, 13).unwrap().ceiling, 39);
        assert_eq!(lb_general(1, 5).unwrap().ceiling, 10);
        let b = lb_best(2, 5).unwrap();
        assert_eq!((b.ceiling, b.name), (8, BoundName::TighterC2));
        let b = lb_best(3, 7).unwrap();
        assert_eq!((b.ceiling, b.name), (12, BoundName::C3Parity));
        let b = lb_best(3, 12).unwrap();
        assert_eq!((b.ceiling, b.name), (36, BoundName::C3Parity));
        assert_eq!(lb_best(3, 13).unwrap().name, BoundName::General);
    }

    #[test]
    fn chow_lin_values() {
        assert_eq!(lb_chow_lin(2, 2).unwrap(), 0.0);
        let v = lb_chow_lin(1, 5).unwrap();
        assert!((v - 180f64.sqrt() / 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn comparison_for_c2() {
        let cmp = compare_routings(2, 10).unwrap();
        assert_eq!(cmp.ratio, rat(9, 8));
        assert_eq!(cmp.ratio_upper, rat(5, 4));
        assert_eq!(compare_routings(6, 10).unwrap().ratio, rat(1, 1));
    }

    #[test]
    fn csv_layout() {
        let t = GammaTable::new([1, 8], 2..=4).unwrap();
        assert_eq!(t.to_csv(), "C,2,3,4,rho\n1,1,3,4,1\n8,1,3,6,7/2\n");
    }
}
