use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use octcover_cli::format::IntervalFamily;
use octcover_cli::*;

/// Two-colorings of points against quadrants, octants, triangles and
/// intervals, with exact verification.
#[derive(Parser)]
#[command(name = "octcover", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArg {
    /// Write here instead of standard output.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        /// points2-ordered, points3, octants+points3, intervals or triangle+points2.
        kind: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform, antichain, clustered or a script name for points2-ordered;
        /// uniform or lowerbound for triangle+points2.
        #[arg(long)]
        distribution: Option<String>,
        /// Minimum coverage of every point, for octants+points3.
        #[arg(long, default_value_t = 9)]
        fold: usize,
        #[arg(long, value_enum, default_value_t = IntervalFamily::Ibi)]
        family: IntervalFamily,
        #[command(flatten)]
        out: OutArg,
    },
    /// Color an instance; `-` reads standard input.
    Color {
        instance: PathBuf,
        /// Include the operation trace and forest edges.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check a coloring. Exits 1 if some large range is monochromatic.
    Verify {
        instance: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value_t = 9)]
        m: usize,
        /// Raise the size bound for exhaustive interval checks.
        #[arg(long)]
        guard_override: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Map an instance to another kind and certify the map on small inputs.
    Reduce {
        instance: PathBuf,
        #[arg(long)]
        to: String,
        /// Raise the size bound for certification.
        #[arg(long)]
        guard_override: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Emit the 63-point lower-bound construction.
    Lowerbound {
        /// The abstract hypergraph with its search report.
        #[arg(long, conflicts_with = "realize", required_unless_present = "realize")]
        r#abstract: bool,
        /// Realize with translates of this triangle: canonical, unit-right,
        /// or `[[x,y],[x,y],[x,y]]`.
        #[arg(long)]
        realize: Option<String>,
        /// Also lift the realization to octants.
        #[arg(long, requires = "realize")]
        lift: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Midriff of a hypergraph file `{n, edges, order}`, or known family bounds.
    Midriff {
        #[arg(conflicts_with = "family")]
        hypergraph: Option<PathBuf>,
        /// Family tag; `all` lists every family.
        #[arg(long)]
        family: Option<String>,
        /// Attach the octant witness for the octant and quadrant families.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        guard_override: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
}

fn read(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<(Output, OutArg)> {
    Ok(match cli.command {
        Command::Gen { kind, n, seed, distribution, fold, family, out } => {
            (cmd_gen(&GenArgs { kind, n, seed, distribution, fold, family })?, out)
        }
        Command::Color { instance, trace, out } => (cmd_color(&parse_instance(&read(&instance)?)?, trace)?, out),
        Command::Verify { instance, coloring, m, guard_override, out } => {
            let inst = parse_instance(&read(&instance)?)?;
            let col = parse_coloring(&read(&coloring)?)?;
            (cmd_verify(&inst, &col, m, guard_override.unwrap_or(GUARD))?, out)
        }
        Command::Reduce { instance, to, guard_override, out } => {
            let inst = parse_instance(&read(&instance)?)?;
            (cmd_reduce(&inst, &to, guard_override.unwrap_or(GUARD))?, out)
        }
        Command::Lowerbound { r#abstract, realize, lift, out } => {
            if r#abstract {
                (cmd_lowerbound_abstract()?, out)
            } else {
                let shape = parse_triangle(realize.as_deref().expect("required by clap"))?;
                (cmd_lowerbound_realize(&shape, lift)?, out)
            }
        }
        Command::Midriff { hypergraph, family, witness, guard_override, out } => match (hypergraph, family) {
            (Some(path), _) => (cmd_midriff_measure(&read(&path)?, guard_override)?, out),
            (None, Some(f)) if f != "all" => (cmd_midriff_family(Some(&f), witness)?, out),
            (None, _) => (cmd_midriff_family(None, witness)?, out),
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok((output, out)) => {
            let written = match &out.out {
                Some(path) => fs::write(path, &output.json),
                None => io::stdout().write_all(output.json.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
