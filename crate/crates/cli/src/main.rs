mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use twistspin_core::abelian::Abelianization;
use twistspin_core::decide::decide;
use twistspin_core::finquot::{
    hom_count_signature_with, Battery, HomSearch, DEFAULT_BATTERY, DEFAULT_HOM_BUDGET,
};
use twistspin_core::fpgroup::{tietze_simplify, DEFAULT_TIETZE_BUDGET};
use twistspin_core::knotio::{parse_braid, parse_presentation, KnotClass, KnotInput, KnotSource};
use twistspin_core::spin::{
    eliminated_presentation, iterated_twist_spin, orbifold_presentation, SpinSequence,
};
use twistspin_core::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};
use twistspin_core::{Error, Execution, Presentation};

use report::Report;

#[derive(Parser)]
#[command(
    name = "twistspin",
    version,
    about = "Twist-spun knot groups, orbifold groups and their invariants"
)]
struct Cli {
    /// Emit a single JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the output.
    #[arg(long, global = true)]
    timing: bool,
    /// Run enumeration and sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the knot group presentation and meridian.
    Present {
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Iterated twist spin of a knot group.
    Twistspin {
        #[command(flatten)]
        knot: KnotArgs,
        /// Twist sequence, e.g. 2,3
        #[arg(long)]
        m: SpinSequence,
        /// Use the presentation with the spin generators eliminated.
        #[arg(long)]
        eliminate: bool,
        /// Tietze-simplify the result.
        #[arg(long)]
        simplify: bool,
    },
    /// Knot group with the m-th power of the meridian killed.
    Orbifold {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        abelianize: bool,
    },
    /// Exact homomorphism counts into a battery of finite groups.
    Homcount {
        #[command(flatten)]
        knot: KnotArgs,
        /// Comma-separated groups: Cn, Dn, Sn, An.
        #[arg(long, default_value = DEFAULT_BATTERY)]
        groups: String,
        /// Search step budget per group.
        #[arg(long, default_value_t = DEFAULT_HOM_BUDGET)]
        budget: u64,
    },
    /// Decide triviality of a twist spin from the declared knot class.
    Decide {
        /// trivial, torus:p,q, hyperbolic, prime-satellite or unknown
        #[arg(long)]
        class: KnotClass,
        #[arg(long)]
        m: SpinSequence,
        /// Optional knot, used to compute the central-quotient witness.
        #[command(flatten)]
        knot: KnotArgs,
    },
    /// Run a cross-check suite.
    Verify {
        /// twist-collapse, central-quotient, torus-center, snf or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct KnotArgs {
    /// Braid word as Artin indices, e.g. "1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Number of strands; defaults to one more than the largest index.
    #[arg(long, requires = "braid")]
    strands: Option<usize>,
    /// Torus knot parameters p,q.
    #[arg(long, value_parser = parse_pair)]
    torus: Option<(i64, i64)>,
    /// Presentation file.
    #[arg(long)]
    pres: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|e| format!("{p}: {e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{q}: {e}"))?;
    Ok((p, q))
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T> = Result<T, Failure>;

impl KnotArgs {
    fn given(&self) -> bool {
        self.braid.is_some() || self.torus.is_some() || self.pres.is_some()
    }

    /// Records the source flags and reads the knot group. A declared class is
    /// checked against the source; without one, explicit presentations need
    /// no meridian.
    fn load(&self, report: &mut Report, class: Option<KnotClass>) -> Outcome<Presentation> {
        let n = [
            self.braid.is_some(),
            self.torus.is_some(),
            self.pres.is_some(),
        ]
        .into_iter()
        .filter(|&b| b)
        .count();
        if n != 1 {
            return Err(Failure::Usage(if n == 0 {
                "one of --braid, --torus or --pres is required".into()
            } else {
                "--braid, --torus and --pres are mutually exclusive".into()
            }));
        }
        let source = if let Some(text) = &self.braid {
            report.input("braid", text.as_str());
            if let Some(s) = self.strands {
                report.input("strands", s);
            }
            KnotSource::Braid(parse_braid(text, self.strands)?)
        } else if let Some((p, q)) = self.torus {
            report.input("torus", format!("{p},{q}"));
            KnotSource::Torus { p, q }
        } else {
            let path = self.pres.as_ref().expect("counted above");
            report.input("pres", path.display().to_string());
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            report.digest_extra.extend_from_slice(text.as_bytes());
            KnotSource::Explicit(parse_presentation(&text)?)
        };
        match (source, class) {
            (KnotSource::Explicit(p), None) => Ok(p),
            (source, class) => {
                Ok(KnotInput::new(source, class.unwrap_or(KnotClass::Unknown))?.presentation()?)
            }
        }
    }
}

fn run(cli: &Cli) -> Outcome<Report> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Present { knot } => {
            let mut r = Report::new("present");
            let p = knot.load(&mut r, None)?;
            r.presentation = Some(p.to_text());
            r
        }
        Command::Twistspin {
            knot,
            m,
            eliminate,
            simplify,
        } => {
            let mut r = Report::new("twistspin");
            let p = knot.load(&mut r, None)?;
            r.input("m", m.to_string());
            r.input("eliminate", *eliminate);
            r.input("simplify", *simplify);
            let mut out = if *eliminate {
                eliminated_presentation(&p, m)?
            } else {
                iterated_twist_spin(&p, m)?
            };
            if *simplify {
                out = tietze_simplify(&out, DEFAULT_TIETZE_BUDGET).presentation;
            }
            r.presentation = Some(out.to_text());
            r
        }
        Command::Orbifold {
            knot,
            m,
            abelianize,
        } => {
            let mut r = Report::new("orbifold");
            let p = knot.load(&mut r, None)?;
            r.input("m", *m);
            let orb = orbifold_presentation(&p, *m)?;
            if *abelianize {
                r.abelianization = Some(Abelianization::of(&orb).invariants().to_string());
            }
            r.presentation = Some(orb.to_text());
            r
        }
        Command::Homcount {
            knot,
            groups,
            budget,
        } => {
            let mut r = Report::new("homcount");
            let p = knot.load(&mut r, None)?;
            r.input("groups", groups.as_str());
            r.input("budget", *budget);
            let battery = Battery::parse(groups)?;
            let counts = hom_count_signature_with(
                &p,
                &battery,
                HomSearch {
                    budget: *budget,
                    execution,
                },
            )?;
            r.hom_counts = Some(battery.names().into_iter().zip(counts).collect());
            r
        }
        Command::Decide { class, m, knot } => {
            let mut r = Report::new("decide");
            r.input("class", class.to_string());
            r.input("m", m.to_string());
            let p = if knot.given() {
                Some(knot.load(&mut r, Some(*class))?)
            } else {
                None
            };
            let verdict = decide(*class, m, p.as_ref())?;
            r.witness = verdict.witness.clone();
            r.verdict = Some(verdict);
            r
        }
        Command::Verify { suite, seed } => {
            let mut r = Report::new("verify");
            r.input("suite", suite.as_str());
            r.input("seed", *seed);
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let opts = VerifyOptions {
                seed: *seed,
                execution,
                ..VerifyOptions::default()
            };
            for s in suites {
                r.suites.push(run_suite(s, &opts)?);
            }
            r
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.suites.iter().all(|s| s.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
