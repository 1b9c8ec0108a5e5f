//! `golodkit SESSION COMMAND`: homological invariants of the ring described
//! by a session file, reported as JSON or text.

mod commands;
mod report;
mod session;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use golodkit::homology::ResolveOptions;
use golodkit::series::DEFAULT_ORDER;

use commands::{ClassArgs, Ctx, Failure, VALIDATION};
use report::{Format, Report};

const MAX_MATRIX_ENV: &str = "GOLODKIT_MAX_MATRIX";

#[derive(Parser, Debug)]
#[command(name = "golodkit", version, about = "Resolutions, Poincaré series and Tor-vanishing certificates for graded Artinian rings")]
struct Cli {
    /// session file
    session: std::path::PathBuf,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct ClassOpts {
    /// golod, compressed, stretched, kustin or pade
    #[arg(long, default_value = "pade")]
    class: String,
    /// kustin: number of variables of the ambient ring (default: edim)
    #[arg(long)]
    n: Option<usize>,
    /// kustin: characteristic (default: that of the session field)
    #[arg(long)]
    c: Option<u64>,
    /// fixed truncation order for reconstruction
    #[arg(long)]
    order: Option<usize>,
}

impl ClassOpts {
    fn args(&self) -> ClassArgs {
        ClassArgs {
            class: self.class.clone(),
            n: self.n,
            c: self.c,
            order: self.order,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Embedding dimension, length, Hilbert function, socle, Gorenstein flag
    Invariants,
    /// Hilbert function of the ring or of a module
    Hilbert {
        #[arg(long)]
        module: Option<String>,
    },
    /// Minimal graded free resolution
    Resolve {
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        steps: usize,
    },
    /// Betti numbers β_0..β_order and a rational fit
    Poincare {
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Koszul homology ranks
    Koszul,
    /// dim Tor_i(left, right) for i <= max
    Tor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        max: usize,
    },
    /// Denominator of the Poincaré series of k
    Denominator {
        #[command(flatten)]
        class: ClassOpts,
        /// compare a class formula with Betti numbers to this order (0 skips)
        #[arg(long)]
        check_order: Option<usize>,
    },
    /// Curvature of a module from its reconstructed denominator
    Curvature {
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Tor-vanishing certificate from the common denominator
    Certify {
        #[command(flatten)]
        class: ClassOpts,
        #[arg(long)]
        assert_generalized_golod: bool,
    },
    /// Build a ring from named session rings
    Construct {
        /// tensor, fiber, connsum or teter (default: the session's [construct] block)
        op: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
    },
    /// Property checks: m4, m5, sign, sandwich, montano-lyle
    Check {
        #[arg(long)]
        lemma: String,
        #[command(flatten)]
        class: ClassOpts,
        #[arg(long)]
        module: Option<String>,
    },
}

fn max_columns() -> Result<ResolveOptions, Failure> {
    let mut opts = ResolveOptions::default();
    if let Ok(v) = std::env::var(MAX_MATRIX_ENV) {
        opts.max_columns = v
            .trim()
            .parse()
            .map_err(|_| commands::invalid(format!("{MAX_MATRIX_ENV} must be a positive integer, got '{v}'")))?;
    }
    Ok(opts)
}

fn echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn run(cli: &Cli) -> Result<Report, (Failure, Option<Report>)> {
    let text = std::fs::read_to_string(&cli.session)
        .map_err(|e| (commands::invalid(format!("{}: {e}", cli.session.display())), None))?;
    let session = session::parse_session(&text)
        .map_err(|e| (commands::invalid(format!("{}: {e}", cli.session.display())), None))?;
    let opts = max_columns().map_err(|f| (f, None))?;
    let mut report = Report::new(echo());
    report.ring = Some(session.ring.presentation());
    if let golodkit::exactmath::Field::Prime(p) = session.field {
        report.warn(format!(
            "computed over GF({p}); ranks can drop modulo p, so treat the numbers as advisory until confirmed over QQ"
        ));
    }
    let mut ctx = Ctx {
        session: &session,
        opts,
        report,
    };
    let res = match &cli.command {
        Command::Invariants => commands::invariants(&mut ctx),
        Command::Hilbert { module } => commands::hilbert(&mut ctx, module.as_deref()),
        Command::Resolve { module, steps } => commands::resolve(&mut ctx, module, *steps),
        Command::Poincare { module, order } => commands::poincare(&mut ctx, module, *order),
        Command::Koszul => commands::koszul(&mut ctx),
        Command::Tor { left, right, max } => commands::tor(&mut ctx, left, right, *max),
        Command::Denominator { class, check_order } => commands::denominator(&mut ctx, &class.args(), *check_order),
        Command::Curvature { module, order } => commands::curvature(&mut ctx, module, *order),
        Command::Certify {
            class,
            assert_generalized_golod,
        } => commands::certify(&mut ctx, &class.args(), *assert_generalized_golod),
        Command::Construct { op, left, right } => {
            commands::construct(&mut ctx, op.as_deref(), left.as_deref(), right.as_deref())
        }
        Command::Check { lemma, class, module } => commands::check(&mut ctx, lemma, &class.args(), module.as_deref()),
    };
    match res {
        Ok(()) => Ok(ctx.report),
        Err(f) => Err((f, Some(ctx.report))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(VALIDATION),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.partial {
                ExitCode::from(commands::BUDGET)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err((f, report)) => {
            if let Some(mut r) = report {
                r.partial = true;
                r.set("error", f.msg.clone());
                print!("{}", r.render(cli.format));
            }
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
