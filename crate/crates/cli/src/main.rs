use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use origami_kz::Origami;
use origami_kz_cli::commands::{self, parse_direction, parse_directions, parse_matrices, small_directions};
use origami_kz_cli::{properties, read_origami, Caps, Report, Status};

#[derive(Parser)]
#[command(name = "origami", version, about = "Cylinder decompositions, multitwists and SL2(Z) indices for origamis")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cap on live cosets and on orbit sizes.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for the randomized property driver.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// An origami given by file or as an L-shape.
#[derive(Args)]
struct Input {
    /// File with `h=` and `v=` lines (`-` for standard input).
    file: Option<PathBuf>,
    /// Use L(n,m) instead of a file, e.g. `--l-shape 2,4`.
    #[arg(long, value_name = "N,M", conflicts_with = "file")]
    l_shape: Option<String>,
}

impl Input {
    fn load(&self) -> anyhow::Result<Origami> {
        match (&self.file, &self.l_shape) {
            (Some(path), _) => read_origami(path),
            (None, Some(spec)) => {
                let (n, m) = parse_pair(spec)?;
                Ok(Origami::l_shape(n, m)?)
            }
            (None, None) => bail!("give an origami file or --l-shape N,M"),
        }
    }
}

fn parse_pair(s: &str) -> anyhow::Result<(usize, usize)> {
    let Some((a, b)) = s.split_once(',') else { bail!("expected N,M, got {s:?}") };
    Ok((a.trim().parse()?, b.trim().parse()?))
}

#[derive(Subcommand)]
enum Command {
    /// Cylinders and saddle connections in one direction.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
        dir: String,
    },
    /// Intersection matrix of a basis of core curves.
    Homology {
        #[command(flatten)]
        input: Input,
    },
    /// Multitwist matrices and the index of the group they generate.
    Monodromy {
        #[command(flatten)]
        input: Input,
        /// Directions `p1,q1;p2,q2;...`.
        #[arg(long, allow_hyphen_values = true)]
        dirs: String,
    },
    /// Index in SL2(Z) of the subgroup generated by matrices `a,b,c,d;...`.
    Index {
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// SL2(Z) orbit of an origami.
    Orbit {
        #[command(flatten)]
        input: Input,
    },
    /// Orbits of the primitive origamis of degree d in H(2).
    Census { degree: usize },
    /// Checks the families L(2,2n) and L(2,2n+1) for n = 1..n_max.
    VerifyFamilies {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Indices for L(n,m) with n, m odd.
    Conjecture {
        /// Shapes `n,m;n,m;...`.
        #[arg(long, default_value = "3,3;3,5;5,5")]
        reps: String,
        /// Twist directions; defaults to all with |p|, |q| <= --bound.
        #[arg(long, allow_hyphen_values = true)]
        dirs: Option<String>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Randomized invariant checks.
    Properties {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let caps = cli.cap.map(Caps::uniform).unwrap_or_default();
    Ok(match &cli.command {
        Command::Decompose { input, dir } => commands::decompose(&input.load()?, parse_direction(dir)?),
        Command::Homology { input } => commands::homology(&input.load()?, caps),
        Command::Monodromy { input, dirs } => commands::monodromy(&input.load()?, &parse_directions(dirs)?, caps),
        Command::Index { gens } => commands::index(&parse_matrices(gens)?, caps),
        Command::Orbit { input } => commands::orbit(&input.load()?, caps),
        Command::Census { degree } => commands::census(*degree, caps)?,
        Command::VerifyFamilies { n_max } => commands::verify_families(*n_max, caps)?,
        Command::Conjecture { reps, dirs, bound } => {
            let reps =
                reps.split(';').filter(|t| !t.trim().is_empty()).map(parse_pair).collect::<anyhow::Result<Vec<_>>>()?;
            let dirs = match dirs {
                Some(d) => parse_directions(d)?,
                None => small_directions(*bound),
            };
            commands::conjecture(&reps, &dirs, caps)
        }
        Command::Properties { cases, max_degree } => {
            if !(3..=12).contains(max_degree) {
                bail!("--max-degree must lie in 3..=12");
            }
            properties::run(cli.seed.unwrap_or(properties::DEFAULT_SEED), *cases, *max_degree)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    let statuses: Vec<Status> = report.records.iter().map(|r| r.status()).collect();
    if report.passed.is_none() || report.passed == Some(true) {
        ExitCode::SUCCESS
    } else if statuses.contains(&Status::CapExceeded)
        && !statuses.iter().any(|s| matches!(s, Status::Mismatch | Status::Error))
    {
        ExitCode::from(EXIT_CAP)
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
