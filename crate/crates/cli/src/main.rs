use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qvolume_cli::{run, run_batch, Command, Format, Request};

/// Spectrum, polynomials and semiclassics of the four-valent volume operator.
#[derive(Parser)]
#[command(name = "qvolume", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Diagonal grid, dimension, Regge conjugate and frame.
    Info(Input),
    /// Eigenvalues, optional eigenvectors and symmetry checks.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Include eigenvectors.
        #[arg(long)]
        eigenvectors: bool,
        /// Restrict eigenvector output to one eigenvalue (ascending index).
        #[arg(long)]
        k_index: Option<usize>,
    },
    /// Sampled potentials U± with eigenvalue levels and turning points.
    Caustics {
        #[command(flatten)]
        input: Input,
        /// Number of samples along the continuous domain [default: 513].
        #[arg(long)]
        samples: Option<usize>,
        /// Scan resolution for maxima and turning points [default: 2048].
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Orthogonal polynomial table, normalization and consistency harness.
    Poly {
        #[command(flatten)]
        input: Input,
        /// Recursion convention: consistent or as-printed [default: consistent].
        #[arg(long)]
        convention: Option<String>,
        /// Emit the polynomial for one eigenvalue only (ascending index).
        #[arg(long)]
        k_index: Option<usize>,
    },
    /// Classical trajectory of H = 2 alpha(l + 1/2) cos(phi).
    Dynamics {
        #[command(flatten)]
        input: Input,
        /// Initial diagonal [default: middle of the grid].
        #[arg(long, allow_hyphen_values = true)]
        l0: Option<f64>,
        /// Initial torsion angle in radians [default: 0].
        #[arg(long, allow_hyphen_values = true)]
        phi0: Option<f64>,
        /// Time step [default: 1e-3 / max alpha].
        #[arg(long)]
        dt: Option<f64>,
        /// Number of RK4 steps [default: 10000].
        #[arg(long)]
        steps: Option<usize>,
        /// Record every n-th step [default: 10].
        #[arg(long)]
        every: Option<usize>,
    },
    /// Newline-delimited JSON requests from a file, or `-` for stdin.
    Batch {
        path: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// j1,j2,j3,j4 as decimals ending in .0 or .5, e.g. 8.5,10.5,13.5,14.5
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
    j: Option<String>,
    /// fig3-left, fig3-right, fig4-left or fig4-right
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Input {
    fn request(self, command: Command) -> (Request, Option<PathBuf>) {
        let req = Request { command: Some(command), j: self.j, preset: self.preset, format: self.format, ..Request::default() };
        (req, self.output)
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (req, output) = match cli.command {
        Sub::Batch { path, output } => {
            let mut input = String::new();
            let read = if path.as_os_str() == "-" {
                io::stdin().read_to_string(&mut input).map(|_| ())
            } else {
                std::fs::read_to_string(&path).map(|s| input = s)
            };
            if let Err(e) = read {
                eprintln!("qvolume: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
            let (text, code) = run_batch(&input);
            if let Err(e) = write_out(output.as_ref(), &text) {
                eprintln!("qvolume: cannot write output: {e}");
                return ExitCode::from(1);
            }
            return ExitCode::from(code as u8);
        }
        Sub::Info(input) => input.request(Command::Info),
        Sub::Spectrum { input, eigenvectors, k_index } => {
            let (mut r, o) = input.request(Command::Spectrum);
            r.eigenvectors = eigenvectors;
            r.k_index = k_index;
            (r, o)
        }
        Sub::Caustics { input, samples, scan } => {
            let (mut r, o) = input.request(Command::Caustics);
            r.samples = samples;
            r.scan = scan;
            (r, o)
        }
        Sub::Poly { input, convention, k_index } => {
            let (mut r, o) = input.request(Command::Poly);
            r.convention = convention;
            r.k_index = k_index;
            (r, o)
        }
        Sub::Dynamics { input, l0, phi0, dt, steps, every } => {
            let (mut r, o) = input.request(Command::Dynamics);
            r.l0 = l0;
            r.phi0 = phi0;
            r.dt = dt;
            r.steps = steps;
            r.every = every;
            (r, o)
        }
    };

    let outcome = run(&req);
    if outcome.exit_code != 0 {
        let err = &outcome.document["payload"]["error"];
        eprintln!("qvolume: {}: {}", err["reason"].as_str().unwrap_or("error"), err["message"].as_str().unwrap_or(""));
    }
    if let Err(e) = write_out(output.as_ref(), &outcome.render(req.format)) {
        eprintln!("qvolume: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}
