use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use brace8p::example::example_one;
use brace8p::report::{self, Format};
use brace8p::{AbelianGroup, Classification, Error, ResidueClass, DEFAULT_ALLOWLIST};

const THREADS_ENV: &str = "BRACE8P_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "brace8p",
    version,
    about = "Count and describe left braces of size 8p"
)]
struct Cli {
    /// Print timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brace counts per (E, F) cell for one residue class of p mod 8.
    Classify {
        /// p mod 8 (1, 3, 5 or 7).
        #[arg(long, conflicts_with = "prime", required_unless_present = "prime")]
        residue: Option<u64>,
        /// An explicit prime; its residue class is used.
        #[arg(long)]
        prime: Option<u64>,
        /// Emit (E, F, kernel order, residue, count) rows instead of the grid.
        #[arg(long)]
        kernels: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
    /// Conjugacy classes of regular subgroups of Hol(E).
    Holomorph {
        #[arg(long)]
        group: String,
        /// Also print the members of every class representative.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
    /// Pair orbits (F, τ) of one E admitted for a residue class.
    Pairs {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        residue: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
    /// Brute-force classification in Hol(Z_p x E), compared with the table.
    Oracle {
        #[arg(long = "p")]
        p: u64,
        /// Comma-separated groups; 2x2x2 must be requested explicitly.
        #[arg(long, default_value = "8,4x2")]
        groups: String,
        /// Primes the oracle may run on.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ALLOWLIST)]
        allow: Vec<u64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Builds the two semidirect products over Z8 with C4 x C2 and checks
    /// that they are not conjugate.
    Example1 {
        #[arg(long = "p", default_value_t = 5)]
        p: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Table,
    Markdown,
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Table => Format::Table,
            OutFormat::Markdown => Format::Markdown,
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_group(text: &str) -> Result<AbelianGroup, Failure> {
    let g: AbelianGroup = text.parse()?;
    if g.order() != 8 {
        return Err(Failure::Usage(format!("{g} does not have order 8")));
    }
    Ok(g)
}

fn classification(verbose: bool) -> Result<Classification, Failure> {
    let start = Instant::now();
    let c = Classification::compute()?;
    if verbose {
        eprintln!("classification computed in {:.3?}", start.elapsed());
    }
    Ok(c)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Classify {
            residue,
            prime,
            kernels,
            format,
        } => {
            let residue = match (residue, prime) {
                (Some(r), _) => ResidueClass::from_residue(r)?,
                (None, Some(p)) => ResidueClass::from_prime(p)?,
                (None, None) => return Err(Failure::Usage("need --residue or --prime".into())),
            };
            let c = classification(cli.verbose)?;
            if kernels {
                let rows = report::report_rows(&c, residue);
                return Ok(match format {
                    OutFormat::Json => report::to_json(&rows)? + "\n",
                    _ => report::rows_to_csv(&rows),
                });
            }
            Ok(report::render_brace_table(
                &c.brace_table(residue),
                format.into(),
            )?)
        }
        Command::Holomorph {
            group,
            dump,
            format,
        } => {
            let e = parse_group(&group)?;
            let c = classification(cli.verbose)?;
            let rep = report::holomorph_report(&c, &e)?;
            Ok(match format {
                OutFormat::Json => report::to_json(&rep)? + "\n",
                _ => {
                    let mut out = report::render_holomorph(&rep);
                    if dump {
                        for (i, class) in rep.classes.iter().enumerate() {
                            out.push_str(&format!("# class {} ({})\n", i + 1, class.iso_type));
                            for m in &class.members {
                                out.push_str(m);
                                out.push('\n');
                            }
                        }
                    }
                    out
                }
            })
        }
        Command::Pairs {
            group,
            residue,
            format,
        } => {
            let e = parse_group(&group)?;
            let residue = ResidueClass::from_residue(residue)?;
            let c = classification(cli.verbose)?;
            let entries = report::pair_entries(&c, &e, residue)?;
            Ok(match format {
                OutFormat::Json => report::to_json(&entries)? + "\n",
                _ => report::render_pairs(&e, residue, &entries),
            })
        }
        Command::Oracle {
            p,
            groups,
            allow,
            format,
        } => {
            brace8p::error::reject_excluded_prime(p)?;
            let groups = groups
                .split(',')
                .map(parse_group)
                .collect::<Result<Vec<_>, _>>()?;
            let c = classification(cli.verbose)?;
            let start = Instant::now();
            let rep = brace8p::cross_check(p, &groups, &allow, &c)?;
            if cli.verbose {
                eprintln!("oracle finished in {:.3?}", start.elapsed());
            }
            let out = match format {
                OutFormat::Json => report::to_json(&rep.entries)? + "\n",
                _ => {
                    let mut out = String::new();
                    for e in &rep.entries {
                        out.push_str(&format!(
                            "p={} E={}: oracle {} predicted {} {}\n",
                            e.p,
                            e.group,
                            e.oracle_classes,
                            e.predicted,
                            if e.matches { "match" } else { "MISMATCH" }
                        ));
                    }
                    out
                }
            };
            if rep.all_match {
                Ok(out)
            } else {
                Err(Failure::Mismatch(format!(
                    "{out}mismatched cells: {}",
                    rep.mismatches().join("; ")
                )))
            }
        }
        Command::Example1 { p, format } => {
            let ex = example_one(p)?;
            let out = match format {
                OutFormat::Json => report::to_json(&ex)? + "\n",
                _ => format!(
                    "p = {}\nG1 = {{ {} }}\nG2 = {{ {} }}\nG1 regular: {}, G2 regular: {}\nG1 and G2 conjugate: {}\n",
                    ex.p,
                    ex.g1.join(", "),
                    ex.g2.join(", "),
                    ex.g1_regular,
                    ex.g2_regular,
                    ex.conjugate
                ),
            };
            if ex.conjugate || !ex.g1_regular || !ex.g2_regular {
                Err(Failure::Mismatch(out))
            } else {
                Ok(out)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
