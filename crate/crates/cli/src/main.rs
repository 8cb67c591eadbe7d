//! `mackey`: homology tables of representation spheres, Mackey functor
//! checks and top-level recovery from the command line.

mod homology;
mod oracle;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mackey_core::groups::GroupFamily;
use mackey_core::mackey::{check_cohomological, check_mackey_axioms, from_json_str, to_json_string, CheckReport};
use mackey_core::recover::{complete, SylowData};
use mackey_core::spheres::VirtualRep;
use mackey_core::Error;

#[derive(Parser)]
#[command(name = "mackey", version, about = "Cohomological Mackey functors over small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the representation sphere S^V, degree by degree.
    Homology {
        /// Group specifier: cyclic:N, pq-ab:P,Q, pq-nonab:P,Q,K or a4.
        #[arg(long)]
        group: String,
        /// Virtual representation, e.g. "-4 +7*V1 -2*W1".
        #[arg(long, allow_hyphen_values = true)]
        rep: String,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the Mackey axioms and the cohomological condition.
    Check { file: PathBuf },
    /// Recover the top level of a truncated functor.
    Recover {
        file: PathBuf,
        /// Write the completed functor here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare closed forms with brute-force computations on a grid.
    Oracle {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pq,
    Abelian,
    Actions,
}

/// A failed command with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Schema { .. } | Error::Parameter(_) | Error::Unsupported(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn emit(table: &render::Table, format: Format) {
    let out = match format {
        Format::Text => render::text(table),
        Format::Json => render::json(table),
        Format::Latex => render::latex(table),
    };
    print!("{out}");
}

fn cmd_homology(group: &str, rep: &str, mode: Mode, format: Format) -> Outcome {
    let family: GroupFamily = group.parse()?;
    let v = VirtualRep::parse(&family, rep).map_err(|e| match e {
        Error::Parse { position, message } => Failure {
            code: 2,
            message: format!("{message}\n  {rep}\n  {}^", " ".repeat(position)),
        },
        other => other.into(),
    })?;
    match mode {
        Mode::Closed => emit(&homology::closed(&v)?, format),
        Mode::Brute => emit(&homology::brute(&v)?, format),
        Mode::Both => {
            let closed = homology::closed(&v)?;
            let brute = homology::brute(&v)?;
            emit(&closed, format);
            let (cn, bn) = (closed.names(), brute.names());
            if cn != bn {
                let n = cn.keys().chain(bn.keys()).find(|n| cn.get(n) != bn.get(n)).expect("tables differ");
                return Err(mismatch(format!(
                    "closed and brute-force tables differ in degree {n}: {:?} vs {:?}",
                    cn.get(n),
                    bn.get(n)
                )));
            }
            eprintln!("closed and brute-force tables agree in all {} degrees", cn.len());
        }
    }
    Ok(())
}

fn print_report(title: &str, r: &CheckReport) {
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    println!("{title}: {verdict} ({} identities checked)", r.checked);
    for v in &r.violations {
        println!("  {}: {}", v.identity, v.detail);
    }
}

fn cmd_check(file: &PathBuf) -> Outcome {
    let m = from_json_str(&read(file)?)?;
    if !m.has_top() {
        return Err(Failure {
            code: 2,
            message: format!(
                "{} has no top level; this is a truncated functor, run `mackey recover {}` to complete it",
                file.display(),
                file.display()
            ),
        });
    }
    let axioms = check_mackey_axioms(&m);
    let cohomological = check_cohomological(&m);
    print_report("Mackey axioms", &axioms);
    print_report("cohomological", &cohomological);
    if axioms.passed() && cohomological.passed() {
        Ok(())
    } else {
        Err(mismatch("check failed"))
    }
}

fn cmd_recover(file: &PathBuf, output: Option<&PathBuf>) -> Outcome {
    let mut m = from_json_str(&read(file)?)?;
    if m.has_top() {
        eprintln!("note: discarding the stored top level and recovering it");
        m = m.truncate();
    }
    let report = check_cohomological(&m);
    if let Some(v) = report.violations.first() {
        return Err(mismatch(format!("input is not cohomological: {} ({})", v.identity, v.detail)));
    }
    let full = complete(&SylowData::new(&m)?)?;
    let top = full.level(full.ambient().top())?;
    let factors: Vec<String> = top.torsion().iter().map(ToString::to_string).collect();
    let summary = format!(
        "top level {top}: free rank {}, invariant factors [{}]",
        top.free_rank(),
        factors.join(", ")
    );
    let json = to_json_string(&full);
    match output {
        Some(path) => {
            fs::write(path, json).map_err(|e| Failure {
                code: 2,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            println!("{summary}");
        }
        None => {
            print!("{json}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_oracle(suite: Suite) -> Outcome {
    let report = match suite {
        Suite::Pq => oracle::pq_suite()?,
        Suite::Abelian => oracle::abelian_suite()?,
        Suite::Actions => oracle::actions_suite()?,
    };
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        let first = report.cases.iter().find(|c| c.detail.is_some()).expect("a failed case");
        Err(mismatch(format!(
            "first mismatch in {}: {}",
            first.id,
            first.detail.as_deref().unwrap_or("")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Homology { group, rep, mode, format } => cmd_homology(group, rep, *mode, *format),
        Command::Check { file } => cmd_check(file),
        Command::Recover { file, output } => cmd_recover(file, output.as_ref()),
        Command::Oracle { suite } => cmd_oracle(*suite),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
