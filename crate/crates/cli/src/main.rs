use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use bsteiner_core::bench::{bench, to_csv, MIN_REPETITIONS};
use bsteiner_core::decision::decide;
use bsteiner_core::io::{emit_solution, parse_json_instance, parse_text_instance, InstanceDocument, ParseError};
use bsteiner_core::svg::render_svg;
use bsteiner_core::testkit::{
    gen_maxgap_instance, gen_membership_instance, gen_random_instance, grid_point, Perturbation,
};
use bsteiner_core::{brute_force_optimum, solve, Instance64, Point64, SolverContext64, SquaredLength};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(
    name = "bsteiner",
    version,
    about = "Optimal bottleneck full Steiner trees in the plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution JSON.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// Read the `n m` text format instead of JSON.
        #[arg(long)]
        text: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write the solution JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the threshold test at a given length.
    Decide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        text: bool,
        /// A length, not a squared length.
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Brute-force optimum, for cross-checking small instances.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        text: bool,
    },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Time the solver over a range of sizes and print CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = MIN_REPETITIONS)]
        repetitions: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Collinear instance whose optimum is the largest gap of random values.
    Maxgap {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Grid instance encoding a random map f: [n] -> [m].
    Membership {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Move terminal p_J off its grid point.
        #[arg(long, value_name = "J")]
        perturb: Option<usize>,
    },
    /// Uniform points in a square.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000.0)]
        extent: f64,
    },
}

/// Problems with the user's input map to exit code 2, everything else to 1.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<bsteiner_core::Error> for Failure {
    fn from(e: bsteiner_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn input_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Input(e.into())
}

fn read_instance(path: &Path, text: bool) -> Result<Instance64, Failure> {
    let contents = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_error)?;
    let parsed: Result<_, ParseError> = if text {
        parse_text_instance(&contents)
    } else {
        parse_json_instance(&contents)
    };
    parsed
        .with_context(|| format!("invalid instance {}", path.display()))
        .map_err(input_error)
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { input, text, svg, json } => {
            let instance = read_instance(&input, text)?;
            let report = solve(instance.terminals().to_vec(), instance.steiner().to_vec())?;
            let solution = emit_solution(&report);
            println!("{solution}");
            if let Some(path) = json {
                write(&path, &solution)?;
            }
            if let Some(path) = svg {
                write(
                    &path,
                    &render_svg(instance.terminals(), instance.steiner(), &report.tree),
                )?;
            }
        }
        Command::Decide { input, text, lambda } => {
            if !(lambda.is_finite() && lambda > 0.0) {
                return Err(input_error(anyhow!("--lambda must be a positive finite length")));
            }
            let instance = read_instance(&input, text)?;
            let ctx = SolverContext64::from_instance(instance);
            let (_, j) = decide(&ctx, SquaredLength::from_length(lambda))?;
            println!("J = {:?}", j.as_slice());
            if j.is_empty() {
                println!("lambda* >= lambda");
            } else {
                println!("lambda* < lambda");
            }
        }
        Command::Oracle { input, text } => {
            let instance = read_instance(&input, text)?;
            let (lambda, _) = brute_force_optimum(instance.terminals(), instance.steiner())?;
            println!("{}", lambda.length());
        }
        Command::Gen { kind, seed, out } => {
            let doc = generate(kind, seed)?;
            let json = doc.to_json();
            match out {
                Some(path) => write(&path, &json)?,
                None => println!("{json}"),
            }
        }
        Command::Bench {
            sizes,
            seed,
            repetitions,
        } => {
            if sizes.is_empty() || sizes.iter().any(|&n| n < 2) {
                return Err(input_error(anyhow!("--sizes must list sizes of at least 2")));
            }
            if repetitions < MIN_REPETITIONS {
                return Err(input_error(anyhow!("--repetitions must be at least {MIN_REPETITIONS}")));
            }
            let rows = bench(&sizes, seed, repetitions)?;
            print!("{}", to_csv(&rows));
        }
    }
    Ok(())
}

fn generate(kind: GenKind, seed: u64) -> Result<InstanceDocument, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc = match kind {
        GenKind::Maxgap { m, n } => {
            let values: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1000.0)).collect();
            let inst = gen_maxgap_instance(&values, n, rng.gen()).map_err(input_error)?;
            let mut doc = InstanceDocument::from_instance(&inst.instance);
            doc.expected_bottleneck = Some(inst.expected);
            doc.name = Some(format!("maxgap m={m} n={n}"));
            doc
        }
        GenKind::Membership { m, n, perturb } => {
            if m == 0 {
                return Err(input_error(anyhow!("--m must be positive")));
            }
            let f: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
            let perturbation = match perturb {
                Some(j) if j == 0 || j > n => {
                    return Err(input_error(anyhow!("--perturb must be in 1..={n}")));
                }
                Some(j) => {
                    let c: Point64 = grid_point(f[j - 1]);
                    Some(Perturbation {
                        terminal: j,
                        to: Point64::new(c.x + 0.25, c.y + 0.25),
                    })
                }
                None => None,
            };
            let inst = gen_membership_instance(&f, m, perturbation).map_err(input_error)?;
            let mut doc = InstanceDocument::from_instance(&inst.instance);
            let mapping: Vec<String> = f.iter().map(usize::to_string).collect();
            doc.name = Some(match perturb {
                Some(j) => format!("membership m={m} f=[{}] perturbed={j}", mapping.join(",")),
                None => format!("membership m={m} f=[{}]", mapping.join(",")),
            });
            doc
        }
        GenKind::Random { n, m, extent } => {
            if !(extent.is_finite() && extent > 0.0) {
                return Err(input_error(anyhow!("--extent must be positive")));
            }
            let inst = gen_random_instance(n, m, extent, rng.gen()).map_err(input_error)?;
            let mut doc = InstanceDocument::from_instance(&inst);
            doc.name = Some(format!("random n={n} m={m} extent={extent}"));
            doc
        }
    };
    doc.seed = Some(seed);
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
