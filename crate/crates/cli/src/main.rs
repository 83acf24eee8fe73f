//! Command line front end: parse equations, run the solver or the closure
//! tools, and emit roots, certificates and verification reports.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use puiseux_core::newton::SolveConfig;
use puiseux_core::rational::format_rational;
use puiseux_core::{
    is_integral_over_formal, minimal_polynomial, parse_rational, parse_series, parse_vector,
    parse_zpoly, principalize, Cone, Error, LatticeSet,
};
use report::{Report, SCHEMA_VERSION};
use std::io::Read;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_UNSPLITTABLE: u8 = 2;
const EXIT_MULTIPLE_ROOT: u8 = 3;
const EXIT_CAP_EXCEEDED: u8 = 4;
const EXIT_PRECONDITION: u8 = 5;
const EXIT_NEGATIVE: u8 = 10;

#[derive(Parser)]
#[command(
    name = "puiseux",
    about = "Puiseux-series roots of monic equations over multivariate power series",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Total-degree precision bound T (rational, e.g. 8 or 13/2)
    #[arg(long, global = true, default_value = "8")]
    precision: String,

    /// Cap on Newton steps per branch
    #[arg(long, global = true, default_value_t = 64)]
    max_steps: usize,

    /// Do not offer the vertical segment at the first step
    #[arg(long, global = true)]
    no_vertical_first: bool,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed echoed into the report (reports are deterministic per
    /// input/config/seed)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a monic equation in z for its Puiseux-series roots
    Solve {
        /// Equation like "z^2 - x1 - x2"; read from stdin when omitted
        equation: Option<String>,
    },
    /// Decide whether the cone spanned by the given generators is an S-cone
    ConeCheck {
        /// Generators like "(0,1);(1,-1)"; read from stdin when omitted
        generators: Option<String>,
    },
    /// Principalize finite sets of lattice points
    Principalize {
        /// Sets like "(2,0),(0,3);(1,1)"; read from stdin when omitted
        sets: Option<String>,
    },
    /// Minimal polynomial of a finite Puiseux element over k[[x]]
    Minpoly {
        /// Series like "x1^(1/2)*x2^(1/2)"; read from stdin when omitted
        series: Option<String>,
    },
    /// Check whether a monic polynomial has coefficients in k[[x]]
    Integrality {
        /// Equation like "z^2 - x1*(1 - x1/x2)"; read from stdin when omitted
        equation: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(code)
        }
    }
}

type Outcome = Result<u8, (u8, String)>;

fn run(cli: Cli) -> Outcome {
    let precision = parse_rational(&cli.precision)
        .map_err(|e| (EXIT_USAGE, format!("bad --precision: {}", e)))?;
    let cfg = SolveConfig {
        precision,
        max_steps: cli.max_steps,
        first_vertical: !cli.no_vertical_first,
        ..SolveConfig::default()
    };
    let config_echo = report::ConfigEcho {
        precision: report::rational_pair(&cfg.precision).map_err(|m| (EXIT_USAGE, m))?,
        max_steps: cfg.max_steps,
        first_vertical: cfg.first_vertical,
        seed: cli.seed,
    };
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: String::new(),
        input: String::new(),
        config: config_echo,
        roots: None,
        cone_check: None,
        principalization: None,
        minimal_polynomial: None,
        integrality: None,
    };

    let (code, text_lines) = match &cli.command {
        Command::Solve { equation } => {
            let input = read_input(equation)?;
            report.command = "solve".into();
            report.input = input.clone();
            let poly = parse_zpoly(&input).map_err(to_exit)?;
            let roots = puiseux_core::solve(&poly, &cfg).map_err(to_exit)?;
            let mut lines = vec![format!("{} root(s) of {}", roots.len(), poly)];
            for (i, r) in roots.iter().enumerate() {
                lines.push(format!("root {}: {}", i + 1, r.series));
                lines.push(format!("  external: {}", r.external_series()));
                lines.push(format!("  certificate rows: {:?}", r.certificate));
                lines.push(format!("  denominator: {}", r.denominator));
                lines.push(format!("  residual floor: {}", r.residual_floor));
                lines.push(format!("  branch: {}", describe_log(&r.branch_log)));
            }
            report.roots = Some(
                roots
                    .iter()
                    .map(report::root_report)
                    .collect::<Result<_, _>>()
                    .map_err(|m| (EXIT_USAGE, m))?,
            );
            (EXIT_OK, lines)
        }
        Command::ConeCheck { generators } => {
            let input = read_input(generators)?;
            report.command = "cone-check".into();
            report.input = input.clone();
            let gens = input
                .split(';')
                .map(|part| parse_vector(part).map_err(to_exit))
                .collect::<Result<Vec<_>, _>>()?;
            let cone = Cone::new(gens).map_err(to_exit)?;
            let s_cone = cone.is_s_cone().map_err(to_exit)?;
            let witness = cone
                .generators()
                .iter()
                .find(|g| g.first_nonzero_sign() != 1)
                .cloned();
            let reduction = if s_cone {
                Some(
                    cone.bring_to_first_quadrant(cfg.principalization_cap)
                        .map_err(to_exit)?
                        .reduction,
                )
            } else {
                None
            };
            let mut lines = vec![if s_cone {
                "S-cone: every generator is lexicographically positive".to_string()
            } else {
                format!(
                    "not an S-cone: witness generator {:?}",
                    witness.as_ref().expect("witness exists")
                )
            }];
            if let Some(red) = &reduction {
                lines.push(format!("first-quadrant reduction: {:?}", red));
            }
            report.cone_check = Some(report::ConeCheckReport {
                s_cone,
                witness: match &witness {
                    Some(w) => Some(
                        w.coords()
                            .iter()
                            .map(report::rational_pair)
                            .collect::<Result<_, _>>()
                            .map_err(|m| (EXIT_USAGE, m))?,
                    ),
                    None => None,
                },
                reduction: reduction.as_ref().map(|r| r.to_row_vecs()),
            });
            (if s_cone { EXIT_OK } else { EXIT_NEGATIVE }, lines)
        }
        Command::Principalize { sets } => {
            let input = read_input(sets)?;
            report.command = "principalize".into();
            report.input = input.clone();
            let mut parsed = Vec::new();
            for group in input.split(';') {
                let vectors = split_vectors(group)
                    .into_iter()
                    .map(|v| parse_vector(&v).map_err(to_exit))
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push(LatticeSet::new(vectors).map_err(to_exit)?);
            }
            let result = principalize(&parsed, cfg.principalization_cap).map_err(to_exit)?;
            let mut lines = vec![format!("map: {:?}", result.map)];
            for (i, apex) in result.apexes.iter().enumerate() {
                lines.push(format!("set {}: apex {:?}", i + 1, apex));
            }
            report.principalization = Some(report::PrincipalizationReport {
                map: result.map.to_row_vecs(),
                apexes: result
                    .apexes
                    .iter()
                    .map(|a| {
                        a.coords()
                            .iter()
                            .map(report::rational_pair)
                            .collect::<Result<_, _>>()
                    })
                    .collect::<Result<_, _>>()
                    .map_err(|m| (EXIT_USAGE, m))?,
            });
            (EXIT_OK, lines)
        }
        Command::Minpoly { series } => {
            let input = read_input(series)?;
            report.command = "minpoly".into();
            report.input = input.clone();
            let f = parse_series(&input).map_err(to_exit)?;
            let p = minimal_polynomial(&f).map_err(to_exit)?;
            let lines = vec![format!("minimal polynomial: {}", p)];
            report.minimal_polynomial =
                Some(report::minpoly_report(&p).map_err(|m| (EXIT_USAGE, m))?);
            (EXIT_OK, lines)
        }
        Command::Integrality { equation } => {
            let input = read_input(equation)?;
            report.command = "integrality".into();
            report.input = input.clone();
            let p = parse_zpoly(&input).map_err(to_exit)?;
            if !p.is_monic() {
                return Err((EXIT_PRECONDITION, "equation is not monic in z".into()));
            }
            let (integral, witness) = is_integral_over_formal(&p);
            let lines = vec![if integral {
                "integral: every coefficient lies in k[[x]]".to_string()
            } else {
                format!(
                    "not integral: witness exponent {:?}",
                    witness.as_ref().expect("witness exists")
                )
            }];
            report.integrality = Some(report::IntegralityReport {
                integral,
                witness: match &witness {
                    Some(w) => Some(
                        w.coords()
                            .iter()
                            .map(report::rational_pair)
                            .collect::<Result<_, _>>()
                            .map_err(|m| (EXIT_USAGE, m))?,
                    ),
                    None => None,
                },
            });
            (if integral { EXIT_OK } else { EXIT_NEGATIVE }, lines)
        }
    };

    match cli.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Format::Text => {
            for line in text_lines {
                println!("{}", line);
            }
        }
    }
    Ok(code)
}

fn read_input(arg: &Option<String>) -> Result<String, (u8, String)> {
    match arg {
        Some(s) => Ok(s.clone()),
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| (EXIT_USAGE, format!("cannot read stdin: {}", e)))?;
            let trimmed = buffer.trim().to_string();
            if trimmed.is_empty() {
                Err((EXIT_USAGE, "empty input".into()))
            } else {
                Ok(trimmed)
            }
        }
    }
}

/// Split "(2,0),(0,3)" or "(2,0) (0,3)" into vector strings.
fn split_vectors(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                current.push(c);
                if depth == 0 {
                    out.push(current.trim().to_string());
                    current.clear();
                }
            }
            _ if depth > 0 => current.push(c),
            _ => {}
        }
    }
    out
}

fn describe_log(log: &[puiseux_core::newton::BranchEvent]) -> String {
    use puiseux_core::newton::BranchEvent as E;
    log.iter()
        .map(|ev| match ev {
            E::Vertical => "vertical".to_string(),
            E::Segment { gamma, .. } => format!("segment(gamma={})", format_rational(gamma)),
            E::Prepared { map, e } => match e {
                Some(e) => format!("prepared({:?}, e={})", map, e),
                None => format!("prepared({:?})", map),
            },
            E::LiftedBlowups { map } => format!("lifted({:?})", map),
            E::CharacteristicRoot { alpha } => format!("alpha={}", alpha),
            E::RegularNormalized { map, .. } => format!("regular-normalized({:?})", map),
            E::Regular { gammas } => format!("regular({} forced steps)", gammas.len()),
            E::ExactRoot => "exact".to_string(),
            E::PrecisionReached => "precision-reached".to_string(),
            E::DataExhausted => "data-exhausted".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" -> ")
}

fn to_exit(err: Error) -> (u8, String) {
    let code = match &err {
        Error::Unsplittable { .. } => EXIT_UNSPLITTABLE,
        Error::MultipleRoot { .. } => EXIT_MULTIPLE_ROOT,
        Error::IterationCapExceeded { .. } | Error::MaxStepsExceeded(_) => EXIT_CAP_EXCEEDED,
        Error::NotMonic
        | Error::ZeroConstantTerm
        | Error::NegativeSupport { .. }
        | Error::NotInvertibleLead
        | Error::NonPositivePrecision => EXIT_PRECONDITION,
        _ => EXIT_USAGE,
    };
    (code, err.to_string())
}
