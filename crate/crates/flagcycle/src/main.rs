//! Command-line front end: enumeration, membership checks, intersection
//! points, homology decompositions, measurable models, and the verification
//! sweep, all as reproducible batch commands writing to stdout.
//!
//! Exit codes: 0 success (and verification PASS), 1 verification failure,
//! 2 usage error, 3 precondition violated.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use flagcycle::conditions::{double_box, generalized_double_box, generalized_spacing, spacing};
use flagcycle::enumerate::{
    enumerate_fullflag, enumerate_measurable, enumerate_nonmeasurable, measurable_model,
};
use flagcycle::flags::Flag;
use flagcycle::geometry::{expected_schubert_dim, homology_class};
use flagcycle::intersect::{intersection_points_labeled, verify_intersection, VerifyReport};
use flagcycle::oracle::{brute_fullflag, brute_measurable, check_genericity_dichotomy};
use flagcycle::perm::{block_decompose, Classification, DimensionSequence, Permutation};
use flagcycle::Error;

#[derive(Parser)]
#[command(
    name = "flagcycle",
    version,
    about = "Schubert varieties dual to the base cycle in SL(n,R) flag domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the permutations whose Schubert varieties are dual to the base cycle
    Enumerate {
        /// Ambient dimension (full flags when --dims is absent)
        #[arg(long)]
        n: Option<usize>,
        /// Dimension sequence, e.g. 1,4,1
        #[arg(long)]
        dims: Option<String>,
        /// Output format (default: text, one permutation per line)
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate the membership conditions for one permutation
    Check {
        /// Permutation in one-line notation, e.g. 2,5,6,3,4,1
        #[arg(long)]
        perm: String,
        /// Dimension sequence for partial flags (default: full flag)
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Construct the intersection points of S_w with the base cycle
    Intersect {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Decompose the base cycle's homology class into Schubert classes
    Homology {
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Compute the measurable model of a non-symmetric dimension sequence
    Model {
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Verify one member end to end (--perm) or sweep every cross-module
    /// invariant at a given size (--n); exit 0 iff everything passes
    Verify {
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Sampled cell points per non-spacing permutation in the dichotomy
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Base seed for the cell-point sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidInput(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

/// FLAGCYCLE_THREADS caps the parallel sweeps; unset means one thread per
/// core.  Errors are ignored: the pool can only be configured once.
fn init_threads() {
    if let Some(k) = std::env::var("FLAGCYCLE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Enumerate { n, dims, format } => {
            cmd_enumerate(n, dims, format.unwrap_or(Format::Text))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { perm, dims, format } => {
            cmd_check(&perm, dims, format.unwrap_or(Format::Json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Intersect { perm, dims, format } => {
            cmd_intersect(&perm, dims, format.unwrap_or(Format::Json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { dims, format } => {
            cmd_homology(&dims, format.unwrap_or(Format::Json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Model { dims, format } => {
            cmd_model(&dims, format.unwrap_or(Format::Json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            perm,
            dims,
            n,
            trials,
            seed,
            format,
        } => cmd_verify(perm, dims, n, trials, seed, format.unwrap_or(Format::Json)),
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn parse_dims(s: &str) -> Result<DimensionSequence, Error> {
    s.parse()
}

/// Resolves the --n/--dims pair every command shares: --dims wins, --n alone
/// means a full flag, and a contradictory pair is a usage error.
fn resolve_dims(n: Option<usize>, dims: Option<String>) -> Result<DimensionSequence, Error> {
    match (n, dims) {
        (_, Some(dims)) => {
            let d = parse_dims(&dims)?;
            if let Some(n) = n {
                if d.n() != n {
                    return Err(Error::InvalidInput(format!(
                        "--dims ({d}) sums to {}, not --n {n}",
                        d.n()
                    )));
                }
            }
            Ok(d)
        }
        (Some(n), None) => {
            if n == 0 {
                return Err(Error::InvalidInput("--n must be positive".into()));
            }
            Ok(DimensionSequence::full_flag(n))
        }
        (None, None) => Err(Error::InvalidInput(
            "one of --n or --dims is required".into(),
        )),
    }
}

/// Block form of a permutation, e.g. (2)(13456) for 2,1,3,4,5,6 of type
/// (1,5).  Values are concatenated when they are all single digits and
/// space-separated otherwise.
fn grouped(w: &Permutation, d: &DimensionSequence) -> Result<String, Error> {
    let blocks = block_decompose(w, d)?;
    let mut out = String::new();
    for block in blocks {
        out.push('(');
        if w.n() <= 9 {
            for v in block {
                out.push_str(&v.to_string());
            }
        } else {
            let parts: Vec<String> = block.iter().map(|v| v.to_string()).collect();
            out.push_str(&parts.join(" "));
        }
        out.push(')');
    }
    Ok(out)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serialization cannot fail")
    );
}

#[derive(Serialize)]
struct EnumerateFullFlagOut {
    n: usize,
    count: usize,
    members: Vec<Permutation>,
}

#[derive(Serialize)]
struct MeasurableMemberOut {
    w: Permutation,
    grouped: String,
    lift: Permutation,
}

#[derive(Serialize)]
struct NonMeasurableMemberOut {
    w: Permutation,
    grouped: String,
    model_w: Permutation,
    lift: Permutation,
}

#[derive(Serialize)]
struct EnumeratePartialOut<M: Serialize> {
    n: usize,
    dims: Vec<usize>,
    count: usize,
    members: Vec<M>,
}

fn cmd_enumerate(n: Option<usize>, dims: Option<String>, format: Format) -> Result<(), Error> {
    let d = resolve_dims(n, dims)?;
    match d.classification() {
        Classification::FullFlag => {
            let members = enumerate_fullflag(d.n())?;
            match format {
                Format::Text => {
                    for w in &members {
                        println!("{w}");
                    }
                }
                Format::Json => print_json(&EnumerateFullFlagOut {
                    n: d.n(),
                    count: members.len(),
                    members,
                }),
            }
        }
        Classification::SymmetricD { .. } | Classification::SymmetricE { .. } => {
            let members = enumerate_measurable(&d)?;
            match format {
                Format::Text => {
                    for member in &members {
                        println!("{}", grouped(&member.w, &d)?);
                    }
                }
                Format::Json => {
                    let members = members
                        .into_iter()
                        .map(|m| {
                            Ok(MeasurableMemberOut {
                                grouped: grouped(&m.w, &d)?,
                                w: m.w,
                                lift: m.lift,
                            })
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    print_json(&EnumeratePartialOut {
                        n: d.n(),
                        dims: d.parts().to_vec(),
                        count: members.len(),
                        members,
                    });
                }
            }
        }
        Classification::NonSymmetric => {
            let members = enumerate_nonmeasurable(&d)?;
            match format {
                Format::Text => {
                    for member in &members {
                        println!("{}", grouped(&member.w, &d)?);
                    }
                }
                Format::Json => {
                    let members = members
                        .into_iter()
                        .map(|m| {
                            Ok(NonMeasurableMemberOut {
                                grouped: grouped(&m.w, &d)?,
                                w: m.w,
                                model_w: m.model.w,
                                lift: m.model.lift,
                            })
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    print_json(&EnumeratePartialOut {
                        n: d.n(),
                        dims: d.parts().to_vec(),
                        count: members.len(),
                        members,
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOut {
    spacing: bool,
    double_box: bool,
    length: usize,
    critical_length: usize,
}

fn cmd_check(perm: &str, dims: Option<String>, format: Format) -> Result<(), Error> {
    let w = parse_perm(perm)?;
    let d = resolve_dims(Some(w.n()), dims)?;
    let out = match d.classification() {
        Classification::FullFlag => CheckOut {
            spacing: spacing(&w),
            double_box: double_box(&w),
            length: w.length(),
            critical_length: expected_schubert_dim(&d)?,
        },
        _ => CheckOut {
            spacing: generalized_spacing(&w, &d)?,
            double_box: generalized_double_box(&w, &d)?,
            length: w.length(),
            critical_length: expected_schubert_dim(&d)?,
        },
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("spacing: {}", out.spacing);
            println!("double_box: {}", out.double_box);
            println!("length: {}", out.length);
            println!("critical_length: {}", out.critical_length);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct IntersectOut {
    w: Permutation,
    dims: Vec<usize>,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    plus_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minus_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientations: Option<Vec<i32>>,
    points: Vec<Flag>,
}

fn cmd_intersect(perm: &str, dims: Option<String>, format: Format) -> Result<(), Error> {
    let w = parse_perm(perm)?;
    let d = resolve_dims(Some(w.n()), dims)?;
    let labeled = intersection_points_labeled(&w, &d)?;
    let even = d.n() % 2 == 0;
    let orientations: Option<Vec<i32>> = even
        .then(|| labeled.iter().filter_map(|p| p.orientation).collect());
    let (plus, minus) = match &orientations {
        Some(labels) => {
            let plus = labels.iter().filter(|&&s| s > 0).count();
            (Some(plus), Some(labels.len() - plus))
        }
        None => (None, None),
    };
    let points: Vec<Flag> = labeled.into_iter().map(|p| p.flag).collect();
    let out = IntersectOut {
        w,
        dims: d.parts().to_vec(),
        count: points.len(),
        plus_points: plus,
        minus_points: minus,
        orientations,
        points,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("w: {}", out.w);
            println!("count: {}", out.count);
            if let (Some(p), Some(m)) = (out.plus_points, out.minus_points) {
                println!("orientation split: +{p} / -{m}");
            }
            for (idx, flag) in out.points.iter().enumerate() {
                let label = out
                    .orientations
                    .as_ref()
                    .and_then(|o| o.get(idx))
                    .map(|s| if *s > 0 { " (+)" } else { " (-)" })
                    .unwrap_or("");
                println!("point {idx}{label}:");
                let basis = flag.basis();
                for c in 0..basis.cols() {
                    let col: Vec<String> =
                        basis.column(c).iter().map(|e| e.to_string()).collect();
                    println!("  [{}]", col.join(", "));
                }
            }
        }
    }
    Ok(())
}

fn cmd_homology(dims: &str, format: Format) -> Result<(), Error> {
    let d = parse_dims(dims)?;
    let decomposition = homology_class(&d)?;
    match format {
        Format::Json => print_json(&decomposition),
        Format::Text => {
            println!("coefficient: {}", decomposition.coefficient);
            for w in &decomposition.classes {
                println!("{w}");
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ModelOut {
    model: Vec<usize>,
    t: Vec<usize>,
    delta: Vec<usize>,
    dim_drop: usize,
}

fn cmd_model(dims: &str, format: Format) -> Result<(), Error> {
    let d = parse_dims(dims)?;
    let model = measurable_model(&d);
    let out = ModelOut {
        model: model.model.parts().to_vec(),
        t: model.t,
        delta: model.delta,
        dim_drop: model.dim_drop,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            let show = |xs: &[usize]| {
                xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            };
            println!("model: {}", show(&out.model));
            println!("t: {}", show(&out.t));
            println!("delta: {}", show(&out.delta));
            println!("dim_drop: {}", out.dim_drop);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepCheck {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct SweepReport {
    pass: bool,
    n: usize,
    checks: Vec<SweepCheck>,
}

fn cmd_verify(
    perm: Option<String>,
    dims: Option<String>,
    n: Option<usize>,
    trials: usize,
    seed: u64,
    format: Format,
) -> Result<ExitCode, Error> {
    match (perm, n) {
        (Some(perm), _) => {
            let w = parse_perm(&perm)?;
            let d = resolve_dims(Some(w.n()), dims)?;
            let report = verify_intersection(&w, &d);
            print_verify_report(&report, format);
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        (None, Some(n)) => {
            let report = sweep(n, trials, seed)?;
            match format {
                Format::Json => print_json(&report),
                Format::Text => {
                    for check in &report.checks {
                        let status = if check.pass { "PASS" } else { "FAIL" };
                        println!("{status} {} — {}", check.name, check.detail);
                    }
                    println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        (None, None) => Err(Error::InvalidInput(
            "verify needs --perm (single member) or --n (full sweep)".into(),
        )),
    }
}

fn print_verify_report(report: &VerifyReport, format: Format) {
    match format {
        Format::Json => print_json(report),
        Format::Text => {
            println!("w: {}", report.w);
            println!("dims: {}", report.dims);
            println!("spacing: {}", report.spacing);
            println!("double_box: {}", report.double_box);
            println!(
                "length: {} (expected {})",
                report.length,
                report
                    .expected_length
                    .map(|l| l.to_string())
                    .unwrap_or_else(|| "undefined".into())
            );
            println!(
                "points: {} constructed, {} distinct",
                report.constructed, report.distinct
            );
            if let (Some(p), Some(m)) = (report.plus_points, report.minus_points) {
                println!("orientation split: +{p} / -{m}");
            }
            for failure in &report.failures {
                println!("failure: {failure}");
            }
            println!("overall: {}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
}

/// All palindromic dimension sequences of total n with at least two blocks.
fn symmetric_types(n: usize) -> Vec<DimensionSequence> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    compositions(n)
        .into_iter()
        .filter(|parts| parts.len() > 1 && parts.iter().eq(parts.iter().rev()))
        .map(|parts| DimensionSequence::new(parts).expect("composition parts are positive"))
        .collect()
}

/// The cross-module sweep behind `verify --n`: enumeration against brute
/// force, every member's intersection report, homology coefficients against
/// per-orbit counts, the same for every symmetric type of the size, and the
/// genericity dichotomy.
fn sweep(n: usize, trials: usize, seed: u64) -> Result<SweepReport, Error> {
    use rayon::prelude::*;

    if n < 2 {
        return Err(Error::Precondition(format!(
            "the sweep needs n >= 2, got {n}"
        )));
    }
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(SweepCheck {
            name: name.into(),
            pass,
            detail,
        });
    };

    let full = DimensionSequence::full_flag(n);
    let members = enumerate_fullflag(n)?;
    let brute = brute_fullflag(n)?;
    push(
        "enumeration equals brute force",
        members == brute,
        format!("{} members", members.len()),
    );

    let reports: Vec<VerifyReport> = members
        .par_iter()
        .map(|w| verify_intersection(w, &full))
        .collect();
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.w.to_string())
        .collect();
    push(
        "every member verifies end to end",
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} intersection reports", reports.len())
        } else {
            format!("failing members: {}", failed.join(" | "))
        },
    );

    let decomposition = homology_class(&full)?;
    let coefficient_ok = decomposition.classes == members
        && reports
            .iter()
            .all(|r| r.expected_per_orbit == Some(decomposition.coefficient))
        && reports.iter().all(|r| match r.plus_points {
            Some(plus) => plus == decomposition.coefficient,
            None => r.distinct == decomposition.coefficient,
        });
    push(
        "homology coefficient equals per-orbit point count",
        coefficient_ok,
        format!("coefficient {}", decomposition.coefficient),
    );

    for d in symmetric_types(n) {
        let enumerated: Vec<Permutation> = enumerate_measurable(&d)?
            .into_iter()
            .map(|m| m.w)
            .collect();
        let brute = brute_measurable(&d)?;
        let name = format!("measurable type ({d}) matches brute force");
        push(&name, enumerated == brute, format!("{} members", enumerated.len()));

        let failing: Vec<String> = enumerated
            .par_iter()
            .map(|w| verify_intersection(w, &d))
            .filter(|r| !r.pass)
            .map(|r| format!("{} [{}]", r.w, r.failures.join("; ")))
            .collect();
        let name = format!("type ({d}) members verify end to end");
        push(
            &name,
            failing.is_empty(),
            if failing.is_empty() {
                format!("{} reports", enumerated.len())
            } else {
                failing.join(" | ")
            },
        );
    }

    if n <= 8 {
        let dichotomy = check_genericity_dichotomy(n, trials, seed)?;
        push(
            "genericity dichotomy",
            dichotomy.pass,
            format!(
                "{} spacing / {} non-spacing permutations at length {}, {} trials",
                dichotomy.spacing_checked,
                dichotomy.non_spacing_checked,
                dichotomy.critical_length,
                dichotomy.trials
            ),
        );
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(SweepReport { pass, n, checks })
}
