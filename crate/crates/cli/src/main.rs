//! `grooming`: batch front end for the ring-grooming library.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ring_grooming::bounds::{all_bounds, compare_routings, to_f64, GammaTable};
use ring_grooming::constructions::{construct_best, construct_named, CONSTRUCTION_NAMES};
use ring_grooming::designs::{
    affine_plane, bibd, gdd3, gdd3_exists, projective_plane, steiner_triple_system, transversal_design_3,
    validate_design, BlockDesign, GroupType,
};
use ring_grooming::io::{read_solution, to_json_string, BoundJson, ConstructionJson, DesignJson, OutcomeJson};
use ring_grooming::solver::{solve_exact, SolveStatus, SolverOptions, SymmetryBreaking};
use ring_grooming::{GroomingError, HalfArcRule, RingInstance};

/// Exit statuses.
mod code {
    pub const INVALID_SOLUTION: u8 = 1;
    pub const BAD_PARAMETER: u8 = 2;
    pub const DESIGN_UNAVAILABLE: u8 = 3;
    pub const BUDGET_EXHAUSTED: u8 = 4;
    pub const BAD_INPUT: u8 = 5;
}

#[derive(Parser)]
#[command(name = "grooming", version, about = "Traffic grooming on bidirectional WDM rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Table of gamma(C, p) with a final rho(C) column.
    GammaTable {
        #[arg(long, value_parser = parse_range)]
        c: RangeInclusive<u64>,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Every applicable ADM lower bound and the wavelength bound.
    Bound {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Best construction, or a named one, as solution JSON.
    Construct {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: usize,
        /// One of c1-cycles, c2-recursive, c2-tripartite, c3-gdd, triangular.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact branch and bound.
    Solve {
        #[arg(long)]
        c: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = SolverOptions::default().node_budget)]
        node_budget: u64,
        /// Seconds of wall clock per orientation.
        #[arg(long, default_value_t = 600)]
        time_budget: u64,
        /// Minimise over all diameter orientations (even N).
        #[arg(long)]
        optimize_orientation: bool,
        /// Diameter orientation for even N as a 0/1 string, 1 meaning (i, i+N/2).
        #[arg(long, conflicts_with = "optimize_orientation")]
        orientation: Option<String>,
        #[arg(long, value_enum, default_value = "interchangeable")]
        symmetry: Symmetry,
        /// Search orientation classes in parallel.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file.
    Validate { file: PathBuf },
    /// Bidirectional and unidirectional bounds side by side.
    Compare {
        #[arg(long, value_parser = parse_range)]
        c: RangeInclusive<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate or check block designs.
    Designs {
        #[command(subcommand)]
        action: DesignAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Symmetry {
    BlockOrder,
    Interchangeable,
}

#[derive(Subcommand)]
enum DesignAction {
    /// Steiner triple system on v points.
    Sts {
        #[arg(long)]
        v: usize,
    },
    /// (v, k, 1)-BIBD.
    Bibd {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
    },
    /// 3-GDD of a group type such as "2^6" or "3^6 5^1".
    Gdd3 {
        #[arg(long = "type")]
        group_type: String,
    },
    /// Transversal design TD(3, n).
    Td {
        #[arg(long)]
        n: usize,
    },
    /// Projective plane of order q.
    Projective {
        #[arg(long)]
        q: usize,
    },
    /// Affine plane of order q.
    Affine {
        #[arg(long)]
        q: usize,
    },
    /// Tabulated existence of a 3-GDD type.
    Exists {
        #[arg(long = "type")]
        group_type: String,
    },
    /// Check a design file.
    Validate { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<GroomingError> for Failure {
    fn from(e: GroomingError) -> Self {
        let code = match &e {
            GroomingError::InvalidSolution(_) => code::INVALID_SOLUTION,
            GroomingError::DesignNonexistent(_) | GroomingError::DesignUnknown(_) => code::DESIGN_UNAVAILABLE,
            GroomingError::Schema(_) | GroomingError::Io(_) | GroomingError::Json(_) => code::BAD_INPUT,
            _ => code::BAD_PARAMETER,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

/// `a..b` and `a..=b` are inclusive; a bare number is a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a number: {t:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    if hi - lo > 100_000 {
        return Err(format!("range {s} is too long"));
    }
    Ok(lo..=hi)
}

fn to_u32(range: &RangeInclusive<u64>) -> Result<Vec<u32>, Failure> {
    range
        .clone()
        .map(|x| u32::try_from(x).map_err(|_| fail(code::BAD_PARAMETER, format!("{x} is out of range"))))
        .collect()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| fail(code::BAD_INPUT, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(value: &impl serde::Serialize) -> Result<String, Failure> {
    Ok(to_json_string(value)?)
}

fn gamma_table(c: &RangeInclusive<u64>, p: &RangeInclusive<u64>, format: Format) -> Result<String, Failure> {
    let ps: Vec<usize> = p.clone().map(|x| x as usize).collect();
    let table = GammaTable::new(to_u32(c)?, ps)?;
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => json_text(&table)?,
        Format::Text => {
            let width = table.rows.iter().flat_map(|r| r.cells.iter().map(|c| c.gamma.to_string().len())).max().unwrap_or(1).max(3);
            let mut s = format!("{:>4} |", "C\\p");
            for p in &table.p_values {
                let _ = write!(s, " {p:>width$}");
            }
            s.push_str(" | rho\n");
            for row in &table.rows {
                let _ = write!(s, "{:>4} |", row.c);
                for cell in &row.cells {
                    let mark = if cell.achieves_rho { format!("{}*", cell.gamma) } else { cell.gamma.to_string() };
                    let _ = write!(s, " {mark:>width$}");
                }
                let _ = writeln!(s, " | {}", row.rho);
            }
            s.push_str("* achieves rho(C)\n");
            s
        }
    })
}

fn bounds(c: u32, n: usize, format: Format) -> Result<String, Failure> {
    let reports = all_bounds(c, n)?;
    Ok(match format {
        Format::Json => json_text(&reports.iter().map(BoundJson::from).collect::<Vec<_>>())?,
        Format::Csv => {
            let mut s = String::from("name,c,n,value,ceiling\n");
            for b in &reports {
                let _ = writeln!(s, "{},{},{},{},{}", b.name, b.c, b.n, b.value, b.ceiling);
            }
            s
        }
        Format::Text => {
            let mut s = format!("C={c} N={n}\n");
            for b in &reports {
                let unit = if b.name.as_str() == "wavelengths" { "wavelengths" } else { "ADMs" };
                let _ = writeln!(s, "  {:<12} >= {} {unit} (exact {})", b.name.as_str(), b.ceiling, b.value);
            }
            s
        }
    })
}

fn compare(c: &RangeInclusive<u64>, n: usize, format: Format) -> Result<String, Failure> {
    let rows = to_u32(c)?.into_iter().map(|c| compare_routings(c, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Json => json_text(
            &rows
                .iter()
                .map(|r| {
                    json!({
                        "c": r.c, "n": r.n, "k": r.k, "r": r.r,
                        "rho": r.rho.to_string(), "eta": r.eta.to_string(),
                        "restricted_bidirectional_lb": r.lb_bi.to_string(),
                        "unidirectional_lb": r.lb_uni.to_string(),
                        "ratio": r.ratio.to_string(),
                        "ratio_upper": r.ratio_upper.to_string(),
                        "chow_lin_any_routing_lb": format!("{:.6}", r.chow_lin),
                    })
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut s = String::from(
                "c,n,rho,eta,restricted_bidirectional_lb,unidirectional_lb,ratio,ratio_upper,chow_lin_any_routing_lb\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{:.6}",
                    r.c, r.n, r.rho, r.eta, r.lb_bi, r.lb_uni, r.ratio, r.ratio_upper, r.chow_lin
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "C={} N={} (k={}, r={})", r.c, r.n, r.k, r.r);
                let _ = writeln!(s, "  rho = {}  eta = {}", r.rho, r.eta);
                let _ = writeln!(s, "  restricted-routing bidirectional LB = {} ({:.3})", r.lb_bi, to_f64(&r.lb_bi));
                let _ = writeln!(s, "  unidirectional LB                   = {} ({:.3})", r.lb_uni, to_f64(&r.lb_uni));
                let _ = writeln!(s, "  ratio uni/bi = {} ({:.4}), at most {}", r.ratio, to_f64(&r.ratio), r.ratio_upper);
                let _ = writeln!(s, "  Chow-Lin any-routing LB (not comparable) = {:.3}", r.chow_lin);
            }
            s
        }
    })
}

fn parse_orientation(s: &str, n: usize) -> Result<HalfArcRule, Failure> {
    let v = s
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '1' => Ok(true),
            '0' => Ok(false),
            _ => Err(fail(code::BAD_PARAMETER, format!("orientation must be 0/1 digits, got {s:?}"))),
        })
        .collect::<Result<Vec<bool>, _>>()?;
    if v.len() != n / 2 || n % 2 == 1 {
        return Err(fail(code::BAD_PARAMETER, format!("orientation needs {} digits on an even ring", n / 2)));
    }
    Ok(HalfArcRule::Explicit(v))
}

fn design_output(kind: String, design: Result<BlockDesign, GroomingError>) -> Result<String, Failure> {
    let design = design?;
    json_text(&DesignJson::new(kind, &design))
}

fn designs(action: DesignAction) -> Result<String, Failure> {
    match action {
        DesignAction::Sts { v } => design_output(format!("sts {v}"), steiner_triple_system(v)),
        DesignAction::Bibd { v, k } => design_output(format!("bibd {v} {k}"), bibd(v, k)),
        DesignAction::Gdd3 { group_type } => {
            let t: GroupType = group_type.parse()?;
            design_output(format!("gdd3 {t}"), gdd3(&t))
        }
        DesignAction::Td { n } => design_output(format!("td 3 {n}"), transversal_design_3(n)),
        DesignAction::Projective { q } => design_output(format!("projective {q}"), projective_plane(q)),
        DesignAction::Affine { q } => design_output(format!("affine {q}"), affine_plane(q)),
        DesignAction::Exists { group_type } => {
            let t: GroupType = group_type.parse()?;
            let verdict = gdd3_exists(&t);
            let text = json_text(&json!({ "type": t.to_string(), "existence": verdict }))?;
            match verdict {
                ring_grooming::designs::Existence::Exists => Ok(text),
                _ => {
                    print!("{text}");
                    Err(fail(code::DESIGN_UNAVAILABLE, format!("3-GDD of type {t}: {verdict:?}")))
                }
            }
        }
        DesignAction::Validate { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| fail(code::BAD_INPUT, format!("{}: {e}", file.display())))?;
            let doc: DesignJson = serde_json::from_str(&text).map_err(|e| fail(code::BAD_INPUT, format!("schema violation: {e}")))?;
            let design = doc.to_design();
            validate_design(&design).map_err(|e| fail(code::INVALID_SOLUTION, format!("invalid design: {e}")))?;
            Ok(format!(
                "valid {}: {} points, {} groups, {} blocks of size {}\n",
                doc.kind,
                design.points(),
                design.groups().len(),
                design.blocks().len(),
                design.block_size()
            ))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GammaTable { c, p, format } => emit(&gamma_table(&c, &p, format)?, None),
        Command::Bound { c, n, format } => emit(&bounds(c, n, format)?, None),
        Command::Compare { c, n, format } => emit(&compare(&c, n, format)?, None),
        Command::Construct { c, n, name, out } => {
            let result = match name {
                Some(name) if !CONSTRUCTION_NAMES.contains(&name.as_str()) => {
                    return Err(fail(
                        code::BAD_PARAMETER,
                        format!("unknown construction {name:?}; expected one of {}", CONSTRUCTION_NAMES.join(", ")),
                    ))
                }
                Some(name) => construct_named(&name, c, n)?,
                None => construct_best(c, n)?,
            };
            emit(&json_text(&ConstructionJson::from(&result))?, out.as_ref())
        }
        Command::Solve { c, n, node_budget, time_budget, optimize_orientation, orientation, symmetry, parallel, out } => {
            let rule = match orientation {
                Some(s) => parse_orientation(&s, n)?,
                None => HalfArcRule::AllForward,
            };
            let instance = RingInstance::with_rule(n, c, rule)?;
            let options = SolverOptions {
                node_budget,
                time_budget: Some(Duration::from_secs(time_budget.max(1))),
                optimize_orientation,
                symmetry_breaking: match symmetry {
                    Symmetry::BlockOrder => SymmetryBreaking::BlockOrder,
                    Symmetry::Interchangeable => SymmetryBreaking::Interchangeable,
                },
                parallel,
            };
            let outcome = solve_exact(&instance, &options)?;
            emit(&json_text(&OutcomeJson::from(&outcome))?, out.as_ref())?;
            if outcome.status != SolveStatus::ProvedOptimal {
                return Err(fail(
                    code::BUDGET_EXHAUSTED,
                    format!("budget exhausted: best {} ADMs, lower bound {}", outcome.best_adm, outcome.bound_used),
                ));
            }
            Ok(())
        }
        Command::Validate { file } => {
            let solution = read_solution(&file)?;
            if let Err(e) = solution.validate() {
                let mut msg = format!("{}: invalid solution", file.display());
                for v in &e.violations {
                    let _ = write!(msg, "\n  {v}");
                }
                return Err(fail(code::INVALID_SOLUTION, msg));
            }
            let inst = solution.instance();
            emit(
                &format!(
                    "valid: N={} C={} rule={} blocks={} adm={}\n",
                    inst.n(),
                    inst.c(),
                    inst.rule().name(),
                    solution.wavelengths(),
                    solution.adm()
                ),
                None,
            )
        }
        Command::Designs { action } => emit(&designs(action)?, None),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
