use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use permpath::bell::triptych;
use permpath::census::{
    census, check_all, mobius_brute_force, mobius_count, parse_sources, table2_row, table2_series, MobiusFamily,
};
use permpath::fraction::DEFAULT_ORDER;
use permpath::invert::{invert_jfraction, parse_terms, RecoveryReport};
use permpath::oracle::OracleConfig;
use permpath::perm::DiagonalSequence;
use permpath::{scheme_for, theta, theta_inv, ColoredMotzkinPath, Marks, Permutation, SubsetId};

#[derive(Parser)]
#[command(
    name = "permpath",
    version,
    about = "Permutations, colored Motzkin paths and continued fractions"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for brute-force enumeration.
    #[arg(long, global = true, env = "PERMPATH_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colored Motzkin path of a permutation.
    Map { perm: String },
    /// Permutation of a colored Motzkin path such as "U L1 D0".
    Unmap { path: String },
    /// Statistics, diagonal word and family memberships of a permutation.
    Stats { perm: String },
    /// Per-n counts of a family from enumeration, fraction and formula.
    Census {
        #[arg(long)]
        subset: SubsetId,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Variables to keep, from xvwtq.
        #[arg(long, default_value = "")]
        marks: String,
        #[arg(long, default_value = "bf,cf,closed")]
        sources: String,
        /// Write the table as CSV.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Expand a family's continued fraction, or a reference sequence's.
    Cf {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value = "")]
        marks: String,
    },
    /// Recover J-fraction weights from the first terms of a sequence.
    Invert {
        /// Comma-separated integers or fractions p/q, starting with 1.
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
    },
    /// Path, phi image and set partition of a cyclic permutation with
    /// increasing excedances.
    Bell {
        #[arg(long)]
        perm: String,
    },
    /// Count of cyclic permutations avoiding a pattern family.
    Mobius {
        #[arg(long)]
        family: MobiusFamily,
        #[arg(long)]
        n: usize,
        /// Also count by enumeration.
        #[arg(long)]
        brute_force: bool,
    },
    /// Run every cross-check; exits nonzero if any fails.
    Check {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> io::Result<()> {
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::other)?;
        writeln!(out)
    } else {
        writeln!(out, "{}", text())
    }
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let mut config = OracleConfig::default();
    if let Some(w) = cli.workers.filter(|&w| w > 0) {
        config.workers = w;
    }
    let json = cli.json;
    match cli.command {
        Command::Map { perm } => {
            let p: Permutation = perm.parse()?;
            let path = theta(&p);
            emit(json, &json!({ "perm": p, "path": path }), || path.to_string())?;
        }
        Command::Unmap { path } => {
            let m: ColoredMotzkinPath = path.parse()?;
            let p = theta_inv(&m)?;
            emit(json, &json!({ "path": m, "perm": p }), || p.to_string())?;
        }
        Command::Stats { perm } => {
            let p: Permutation = perm.parse()?;
            let stats = p.stats();
            let diagonal = DiagonalSequence::of(&p).word();
            let families: Vec<SubsetId> = SubsetId::ALL.into_iter().filter(|s| s.contains(&p)).collect();
            let value = json!({ "perm": p, "stats": stats, "diagonal": diagonal, "families": families });
            emit(json, &value, || {
                format!(
                    "fp: {}\nexc: {}\ndexc: {}\ncyc: {}\ninv: {}\ndiagonal: {diagonal}\nfamilies: {}",
                    stats.fp,
                    stats.exc,
                    stats.dexc,
                    stats.cyc,
                    stats.inv,
                    joined(&families)
                )
            })?;
        }
        Command::Census {
            subset,
            n_max,
            marks,
            sources,
            csv,
        } => {
            let marks: Marks = marks.parse()?;
            let report = census(subset, n_max, marks, &parse_sources(&sources)?, &config)?;
            if csv {
                report.write_csv(io::stdout().lock())?;
            } else {
                emit(json, &report, || report.to_string())?;
            }
            return Ok(report.passed);
        }
        Command::Cf { scheme, order, marks } => {
            let marks: Marks = marks.parse()?;
            let coefficients: Vec<String> = match scheme.parse::<SubsetId>() {
                Ok(subset) => scheme_for(subset, marks)?
                    .series(order)
                    .coeffs()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                Err(_) => {
                    if marks != Marks::NONE {
                        return Err("reference sequences carry no marks".into());
                    }
                    let row = table2_row(&scheme)?;
                    table2_series(row, order)
                        .coeffs()
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                }
            };
            let value =
                json!({ "scheme": scheme, "marks": marks.to_string(), "order": order, "coefficients": coefficients });
            emit(json, &value, || {
                let lines: Vec<String> = coefficients
                    .iter()
                    .enumerate()
                    .map(|(n, c)| format!("{n}: {c}"))
                    .collect();
                lines.join("\n")
            })?;
        }
        Command::Invert { terms } => {
            let r = invert_jfraction(&parse_terms(&terms)?)?;
            let report = RecoveryReport::from(&r);
            emit(json, &report, || {
                let class = report.classification.map_or("none".to_string(), |c| c.to_string());
                format!(
                    "ell: {}\ndee: {}\nstatus: {}\nclassification: {class}",
                    report.ell.join(", "),
                    report.dee.join(", "),
                    report.status
                )
            })?;
        }
        Command::Bell { perm } => {
            let t = triptych(&perm.parse()?)?;
            emit(json, &t, || {
                format!("perm: {}\npath: {}\nphi: {}\n{}", t.perm, t.path, t.phi, t.partition)
            })?;
        }
        Command::Mobius { family, n, brute_force } => {
            let count = mobius_count(family, n)?;
            let bf = if brute_force {
                Some(mobius_brute_force(family, n, &config)?)
            } else {
                None
            };
            let agree = bf.as_ref().is_none_or(|b| *b == count);
            let value = json!({
                "family": family,
                "n": n,
                "count": count.to_string(),
                "brute_force": bf.as_ref().map(ToString::to_string),
            });
            emit(json, &value, || match &bf {
                Some(b) => format!("{count}\nbrute force: {b}"),
                None => count.to_string(),
            })?;
            return Ok(agree);
        }
        Command::Check { max_n, seed } => {
            let outcomes = check_all(max_n, seed)?;
            let passed = outcomes.iter().all(|o| o.passed);
            emit(json, &outcomes, || {
                let failed = outcomes.iter().filter(|o| !o.passed).count();
                let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
                lines.push(format!("{} checks, {failed} failed", outcomes.len()));
                lines.join("\n")
            })?;
            return Ok(passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
