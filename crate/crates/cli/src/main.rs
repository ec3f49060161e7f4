//! `hodgecalc`: exact calculator for Hodge ideals, microlocal ideals,
//! generating levels, Newton polyhedra, and Bernstein–Sato polynomials of
//! an isolated quasi-homogeneous (or Newton non-degenerate) singularity.
//!
//! Pure argv-to-stdout: reports go to stdout, diagnostics to stderr, and
//! the exit code classifies failures — 0 success, 2 invalid input, 3 failed
//! mathematical precondition, 4 internal assertion breach (always a bug).

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_core::bernstein::{assemble_bs, bs_polynomial, jump_data, microlocal_jumps_check};
use hodge_core::hodge::{
    generating_level_empirical, generating_level_formula, hodge_ideal_direct,
    hodge_ideal_recursive, Mode, QDivisor, JACOBIAN_SWEEP_CAP,
};
use hodge_core::localring::{jacobian_data, Relation};
use hodge_core::microlocal::{compare_chains, conjecture_sweep, ConjectureVerdict, SweepItem};
use hodge_core::newton::NewtonPolyhedron;
use hodge_core::parse::{parse_polynomial, parse_rational, VariableContext};
use hodge_core::poly::{rational_int, render_rational};
use hodge_core::weights::{check_weighted_homogeneous, detect_weights, WeightData};
use hodge_core::{Error, Polynomial, Rational};

#[derive(Parser)]
#[command(
    name = "hodgecalc",
    version,
    about = "Exact invariants of isolated quasi-homogeneous hypersurface singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// The defining polynomial, e.g. "x^2 + y^3"
    #[arg(long)]
    f: String,

    /// Comma-separated variable names fixing the coordinate order
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,

    /// Explicit weights (comma-separated rationals) when the support does
    /// not determine them
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<String>>,

    /// Where the filtration comes from
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    /// Weighted homogeneous if possible, Newton polyhedron otherwise
    Auto,
    Weighted,
    Newton,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, Milnor data, and the generating level as a function of alpha
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Also run the one-step regeneration sweep at this alpha
        #[arg(long)]
        alpha: Option<String>,
    },
    /// The chain of Hodge ideals I_0 down to I_k, by both constructions
    Hodge {
        #[command(flatten)]
        input: InputArgs,
        /// Coefficient of the divisor D = alpha * Z, in (0, 1]
        #[arg(long)]
        alpha: String,
        /// Depth of the chain
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// The chain of microlocal ideals
    Microlocal {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Level-by-level comparison of the Hodge and microlocal towers
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// The Bernstein-Sato polynomial, computed three independent ways
    Bernstein {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Newton polyhedron report: facets, faces, non-degeneracy
    Newton {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Equality experiment between the towers over a grid of alphas
    Conjecture {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated alphas; defaults to all fractions with
        /// denominator at most 12
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<String>>,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
}

impl Command {
    fn input(&self) -> &InputArgs {
        match self {
            Command::Analyze { input, .. }
            | Command::Hodge { input, .. }
            | Command::Microlocal { input, .. }
            | Command::Compare { input, .. }
            | Command::Bernstein { input }
            | Command::Newton { input }
            | Command::Conjecture { input, .. } => input,
        }
    }
}

/// Prints to stdout, exiting quietly when the reading end of a pipe has
/// already closed (`cmd | head` must not panic).
fn emit(rendered: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = writeln!(out, "{rendered}").and_then(|()| out.flush());
    if let Err(err) = result {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}

fn main() {
    let cli = Cli::parse();
    let format = cli.command.input().format;
    match run(&cli.command) {
        Ok(rendered) => emit(&rendered),
        Err(err) => {
            match format {
                FormatArg::Text => eprintln!("error: {err}"),
                FormatArg::Json => eprintln!(
                    "{}",
                    serde_json::json!({
                        "error": { "kind": error_kind(&err), "message": err.to_string() }
                    })
                ),
            }
            std::process::exit(exit_code(&err));
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    if err.is_input_error() {
        "input"
    } else if err.is_precondition_error() {
        "precondition"
    } else {
        "assertion"
    }
}

fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        2
    } else if err.is_precondition_error() {
        3
    } else {
        4
    }
}

/// Validated common input: the parsed polynomial, its variable names, and
/// any explicitly supplied weights.
struct Input {
    f: Polynomial,
    names: Vec<String>,
    weights: Option<WeightData>,
    mode: ModeArg,
    format: FormatArg,
}

fn parse_input(args: &InputArgs) -> Result<Input, Error> {
    let ctx = VariableContext::new(args.vars.clone())?;
    let f = parse_polynomial(&args.f, &ctx)?;
    let weights = match &args.weights {
        Some(entries) => {
            if args.mode == ModeArg::Newton {
                return Err(Error::Invalid(
                    "explicit weights apply to weighted mode only".into(),
                ));
            }
            let parsed: Result<Vec<Rational>, Error> =
                entries.iter().map(|s| parse_rational(s)).collect();
            Some(WeightData::new(parsed?)?)
        }
        None => None,
    };
    Ok(Input {
        f,
        names: ctx.names().to_vec(),
        weights,
        mode: args.mode,
        format: args.format,
    })
}

impl Input {
    /// Weight data for the weighted-only commands: explicit weights when
    /// given, detected from the support otherwise.
    fn weight_data(&self) -> Result<WeightData, Error> {
        if self.mode == ModeArg::Newton {
            return Err(Error::WeightedModeOnly);
        }
        match &self.weights {
            Some(w) => {
                check_weighted_homogeneous(&self.f, w)?;
                Ok(w.clone())
            }
            None => detect_weights(&self.f),
        }
    }

    /// Divisor for the chain commands, resolving `auto` to weighted when
    /// possible and to the Newton polyhedron otherwise.
    fn divisor(&self, alpha: Rational) -> Result<(QDivisor, &'static str), Error> {
        if let Some(w) = &self.weights {
            let d = QDivisor::with_weights(self.f.clone(), alpha, w.clone())?;
            return Ok((d, "weighted"));
        }
        match self.mode {
            ModeArg::Weighted => {
                Ok((QDivisor::new(self.f.clone(), alpha, Mode::Weighted)?, "weighted"))
            }
            ModeArg::Newton => {
                Ok((QDivisor::new(self.f.clone(), alpha, Mode::Newton)?, "newton"))
            }
            ModeArg::Auto => match QDivisor::new(self.f.clone(), alpha.clone(), Mode::Weighted) {
                Ok(d) => Ok((d, "weighted")),
                Err(Error::NotWeightedHomogeneous(_) | Error::UnderdeterminedWeights) => {
                    Ok((QDivisor::new(self.f.clone(), alpha, Mode::Newton)?, "newton"))
                }
                Err(other) => Err(other),
            },
        }
    }

    fn rendered_f(&self) -> String {
        self.f.render(&self.names)
    }

    fn render_all(&self, polys: &[Polynomial]) -> Vec<String> {
        polys.iter().map(|p| p.render(&self.names)).collect()
    }
}

fn render(format: FormatArg, json: impl serde::Serialize, text: String) -> String {
    match format {
        FormatArg::Text => text,
        FormatArg::Json => {
            serde_json::to_string_pretty(&json).expect("report types always serialize")
        }
    }
}

fn run(command: &Command) -> Result<String, Error> {
    let input = parse_input(command.input())?;
    match command {
        Command::Analyze { alpha, .. } => {
            let alpha = alpha.as_ref().map(|a| parse_rational(a)).transpose()?;
            analyze(&input, alpha)
        }
        Command::Hodge { alpha, k, .. } => hodge(&input, parse_rational(alpha)?, *k),
        Command::Microlocal { alpha, k, .. } => microlocal(&input, parse_rational(alpha)?, *k),
        Command::Compare { alpha, k, .. } => compare(&input, parse_rational(alpha)?, *k),
        Command::Bernstein { .. } => bernstein(&input),
        Command::Newton { .. } => newton(&input),
        Command::Conjecture { alpha_grid, k, .. } => {
            let alphas = match alpha_grid {
                Some(entries) => entries
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
                None => default_grid(12),
            };
            conjecture(&input, &alphas, *k)
        }
    }
}

/// Every reduced fraction in `(0, 1]` with denominator at most `max_den`,
/// ascending.
fn default_grid(max_den: i64) -> Vec<Rational> {
    let mut grid = std::collections::BTreeSet::new();
    for den in 1..=max_den {
        for num in 1..=den {
            grid.insert(Rational::new(num.into(), den.into()));
        }
    }
    grid.into_iter().collect()
}

/// `⌊n − σ − α⌋` is constant on one or two alpha intervals inside `(0, 1]`;
/// the breakpoint, when interior, is the unique `n − σ − m` in `(0, 1)`.
fn level_intervals(n: usize, sigma: &Rational) -> Vec<report::LevelInterval> {
    let top = Rational::from_integer(n.into()) - sigma;
    let one = rational_int(1);
    let level_at = |alpha: &Rational| -> i64 {
        i64::try_from((&top - alpha).floor().to_integer()).expect("level fits in i64")
    };
    let breakpoint = &top - (top.ceil() - &one);
    if breakpoint == one {
        vec![report::LevelInterval {
            interval: "0 < alpha <= 1".into(),
            level: level_at(&one),
        }]
    } else {
        vec![
            report::LevelInterval {
                interval: format!("0 < alpha <= {}", render_rational(&breakpoint)),
                level: level_at(&breakpoint),
            },
            report::LevelInterval {
                interval: format!("{} < alpha <= 1", render_rational(&breakpoint)),
                level: level_at(&one),
            },
        ]
    }
}

fn analyze(input: &Input, alpha: Option<Rational>) -> Result<String, Error> {
    let w = input.weight_data()?;
    let data = jacobian_data(&input.f, Some(&w), JACOBIAN_SWEEP_CAP)?;
    let rho = data
        .basis_rho
        .as_ref()
        .expect("weight data was supplied to jacobian_data");
    let basis = data
        .basis
        .iter()
        .zip(rho)
        .map(|(e, r)| report::BasisEntry {
            monomial: Polynomial::monomial(input.f.vars(), e.clone(), rational_int(1))
                .render(&input.names),
            weight: render_rational(r),
        })
        .collect();

    let empirical = match alpha {
        Some(alpha) => {
            let d = QDivisor::with_weights(input.f.clone(), alpha.clone(), w.clone())?;
            let formula = generating_level_formula(&d)?;
            let sweep_to = u32::try_from(formula).unwrap_or(0) + 2;
            let table = generating_level_empirical(&d, sweep_to)?;
            Some(report::EmpiricalLevel {
                alpha: render_rational(&alpha),
                formula_level: formula,
                observed_level: table.level,
                steps: table
                    .steps
                    .iter()
                    .map(|s| report::RegenerationStep {
                        k: s.k,
                        regenerates: s.relation == Relation::Equal,
                    })
                    .collect(),
            })
        }
        None => None,
    };

    let report = report::AnalyzeReport {
        command: "analyze",
        f: input.rendered_f(),
        vars: input.names.clone(),
        weights: w.weights().iter().map(render_rational).collect(),
        minimal_exponent: render_rational(w.sigma()),
        milnor_number: data.milnor_number,
        jacobian_exponent: data.exponent,
        basis,
        level_by_alpha: level_intervals(input.f.vars(), w.sigma()),
        empirical,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn hodge(input: &Input, alpha: Rational, k: u32) -> Result<String, Error> {
    let (d, mode) = input.divisor(alpha.clone())?;
    let (chain, methods_agree) = if mode == "weighted" {
        let recursive = hodge_ideal_recursive(&d, k)?;
        let direct = hodge_ideal_direct(&d, k)?;
        let mut agree = true;
        for level in 0..=k as usize {
            agree &=
                recursive.ideals[level].compare(&direct.ideals[level])? == Relation::Equal;
        }
        (recursive, Some(agree))
    } else {
        (hodge_ideal_direct(&d, k)?, None)
    };

    let report = report::HodgeReport {
        command: "hodge",
        f: input.rendered_f(),
        vars: input.names.clone(),
        alpha: render_rational(&alpha),
        k,
        mode,
        truncation_degree: chain.truncation,
        levels: chain
            .generators
            .iter()
            .enumerate()
            .map(|(level, gens)| report::ChainLevel {
                k: level as u32,
                generators: input.render_all(gens),
            })
            .collect(),
        methods_agree,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn microlocal(input: &Input, alpha: Rational, k: u32) -> Result<String, Error> {
    let (d, _) = input.divisor(alpha.clone())?;
    let chain = hodge_core::microlocal::microlocal_chain(&d, k)?;
    let report = report::MicrolocalReport {
        command: "microlocal",
        f: input.rendered_f(),
        vars: input.names.clone(),
        alpha: render_rational(&alpha),
        k,
        truncation_degree: chain.truncation,
        levels: chain
            .generators
            .iter()
            .enumerate()
            .map(|(level, gens)| report::ChainLevel {
                k: level as u32,
                generators: input.render_all(gens),
            })
            .collect(),
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn relation_label(relation: Relation) -> &'static str {
    match relation {
        Relation::Equal => "equal",
        Relation::LeftInRight => "left-in-right",
        Relation::RightInLeft => "right-in-left",
        Relation::Incomparable => "incomparable",
    }
}

fn verdict_label(verdict: ConjectureVerdict) -> &'static str {
    match verdict {
        ConjectureVerdict::Consistent => "consistent",
        ConjectureVerdict::Counterexample => "counterexample",
    }
}

fn compare(input: &Input, alpha: Rational, k: u32) -> Result<String, Error> {
    let (d, _) = input.divisor(alpha.clone())?;
    let comparison = compare_chains(&d, k)?;
    let levels = comparison
        .levels
        .iter()
        .enumerate()
        .map(|(idx, level)| report::CompareLevel {
            k: level.k,
            relation: relation_label(level.relation),
            maximal_ideal_power: level.hodge_power,
            mod_f_equal: level.mod_f_equal,
            criterion_fired: level.criterion_fired,
            next_level_verdict: level.conjecture.map(verdict_label),
            hodge_generators: input.render_all(&comparison.hodge_generators[idx]),
            microlocal_generators: input.render_all(&comparison.microlocal_generators[idx]),
        })
        .collect();
    let report = report::CompareReport {
        command: "compare",
        f: input.rendered_f(),
        vars: input.names.clone(),
        alpha: render_rational(&alpha),
        k,
        levels,
        counterexample: comparison.counterexample,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn bernstein(input: &Input) -> Result<String, Error> {
    let w = input.weight_data()?;
    let bs = bs_polynomial(&input.f, &w)?;
    let jd = jump_data(&input.f, &w)?;
    let routes_agree =
        assemble_bs(&jd) == bs && microlocal_jumps_check(&jd, &w, input.f.vars(), &bs);
    if !routes_agree {
        return Err(Error::Assertion(
            "the three Bernstein-Sato routes disagree".into(),
        ));
    }

    let report = report::BernsteinReport {
        command: "bernstein",
        f: input.rendered_f(),
        vars: input.names.clone(),
        weights: w.weights().iter().map(render_rational).collect(),
        minimal_exponent: render_rational(w.sigma()),
        bernstein_sato: report::FactoredPolynomial {
            rendered: bs.render(),
            factors: bs
                .factors()
                .iter()
                .map(|(root, mult)| report::Factor {
                    root: render_rational(root),
                    multiplicity: *mult,
                })
                .collect(),
        },
        distinct_weights: jd.distinct_weights.iter().map(render_rational).collect(),
        jumping_numbers: jd
            .jumping_numbers
            .iter()
            .enumerate()
            .map(|(level, values)| report::JumpLevel {
                level: level as u32,
                values: values.iter().map(render_rational).collect(),
            })
            .collect(),
        jumping_coefficients: jd.jumping_coefficients.clone(),
        microlocal_jumps: jd.microlocal_jumps.iter().map(render_rational).collect(),
        routes_agree,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn newton(input: &Input) -> Result<String, Error> {
    let np = NewtonPolyhedron::build(&input.f)?;
    let checks = np.nondegeneracy_report();
    let exponents = |indices: &[usize]| -> Vec<Vec<u32>> {
        indices
            .iter()
            .map(|&i| np.support_points()[i].entries().to_vec())
            .collect()
    };
    let report = report::NewtonReport {
        command: "newton",
        f: input.rendered_f(),
        vars: input.names.clone(),
        support: np
            .support_points()
            .iter()
            .map(|e| e.entries().to_vec())
            .collect(),
        convenient: np.is_convenient(),
        has_compact_facets: np.has_compact_facets(),
        facets: np
            .facets()
            .iter()
            .map(|facet| report::FacetRow {
                normal: facet.normal().iter().map(render_rational).collect(),
                weight_sum: render_rational(&facet.normal_sum()),
                support: exponents(facet.support()),
            })
            .collect(),
        faces: np
            .faces()
            .iter()
            .zip(&checks.checks)
            .map(|(face, check)| report::FaceRow {
                dimension: face.dimension(),
                points: exponents(face.points()),
                face_polynomial: np.face_polynomial(check.face).render(&input.names),
                nondegenerate: check.nondegenerate,
            })
            .collect(),
        nondegenerate: checks.nondegenerate,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}

fn conjecture(input: &Input, alphas: &[Rational], k: u32) -> Result<String, Error> {
    if input.mode == ModeArg::Newton {
        return Err(Error::WeightedModeOnly);
    }
    let items: Vec<SweepItem> = match &input.weights {
        None => conjecture_sweep(&input.f, alphas, k),
        Some(w) => alphas
            .iter()
            .map(|alpha| {
                let outcome =
                    QDivisor::with_weights(input.f.clone(), alpha.clone(), w.clone())
                        .and_then(|d| compare_chains(&d, k));
                SweepItem { alpha: alpha.clone(), outcome }
            })
            .collect(),
    };
    let rows: Vec<report::SweepRow> = items
        .iter()
        .map(|item| match &item.outcome {
            Ok(rep) => report::SweepRow {
                alpha: render_rational(&item.alpha),
                relations: Some(rep.levels.iter().map(|l| relation_label(l.relation)).collect()),
                counterexample: Some(rep.counterexample),
                error: None,
            },
            Err(err) => report::SweepRow {
                alpha: render_rational(&item.alpha),
                relations: None,
                counterexample: None,
                error: Some(err.to_string()),
            },
        })
        .collect();
    let counterexamples = rows
        .iter()
        .filter(|r| r.counterexample == Some(true))
        .count();
    let report = report::ConjectureReport {
        command: "conjecture",
        f: input.rendered_f(),
        vars: input.names.clone(),
        k,
        items: rows,
        counterexamples,
    };
    let text = report.text();
    Ok(render(input.format, report, text))
}
