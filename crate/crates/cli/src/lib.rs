pub mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsl_core::classifier::{
    construct_parallel_section, enumerate_solutions, verify_surface, verify_torus, QuadRecord, Report,
};
use hsl_core::format::to_json;
use hsl_core::mesh::export_mesh;
use hsl_core::spectral::spectral_scan;
use hsl_core::surface::homogeneous_torus;
use hsl_core::{
    AngleMap, ConstructedTorus, Covering, Error, Field64, Lattice64, Pole, SolutionQuad, SurfaceGrid, TolProfile,
};
use num_complex::Complex64;
use serde_json::json;

use input::{lattice, parse_complex, parse_grid, Number};

#[derive(Parser)]
#[command(name = "hsl", version, about = "Hamiltonian stationary Lagrangian tori in S^3: classify, construct, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the integer solutions (m, n) of the classification constraint.
    Enumerate {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        winding: Winding,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample a torus and write psi as CSV.
    Construct {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check sphere containment, the Lagrangian condition, homogeneity and parallelism.
    Verify {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample the holonomy traces on the unit circle and locate the zeros of g0^2 - 4.
    Scan {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        winding: Winding,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        /// Also write the zero report as JSON here.
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write a stereographic OBJ mesh of psi/|psi|.
    Export {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "w", allow_hyphen_values = true)]
        pole: Pole,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// Real part of delta, as `p/q` or a real.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    delta0: Number,
    /// Imaginary part of delta (default 1).
    #[arg(long)]
    delta1: Option<Number>,
    /// Square of the imaginary part of delta.
    #[arg(long)]
    delta1sq: Option<Number>,
}

impl LatticeArgs {
    fn build(&self) -> Result<Lattice64, Failure> {
        lattice(&self.delta0, self.delta1.as_ref(), self.delta1sq.as_ref()).map_err(Failure::Usage)
    }
}

#[derive(Args)]
struct Winding {
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    r: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    s: i64,
}

#[derive(Args)]
struct SourceArgs {
    #[command(flatten)]
    winding: Winding,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    /// Select the solution by its eta, `a+bi`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    eta: Option<Complex64>,
    /// Search bound when selecting by --eta.
    #[arg(long, default_value_t = 6)]
    bound: i64,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    f00: Complex64,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    f30: Complex64,
    /// Use the homogeneous torus r(e^{2 pi x i} + j delta1 e^{2 pi y i / delta1}) instead.
    #[arg(long)]
    homogeneous: bool,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Read psi from a CSV file instead.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Covering degree of the CSV grid (1 or 2).
    #[arg(long, default_value_t = 1)]
    covering: usize,
    #[arg(long, default_value = "256", value_parser = parse_grid)]
    grid: usize,
    #[arg(long, default_value = "paper", value_parser = parse_profile)]
    tol_profile: TolProfile,
}

#[derive(Args)]
struct OutArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Obj,
}

impl OutArgs {
    fn format(&self, allowed: &[Format]) -> Result<Format, Failure> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(_) => Err(Failure::Usage("this command does not produce that format".into())),
        }
    }

    fn write(
        &self,
        stdout: &mut dyn Write,
        f: impl FnOnce(&mut dyn Write) -> hsl_core::Result<()>,
    ) -> Result<(), Failure> {
        match &self.out {
            Some(p) => {
                let mut w = BufWriter::new(File::create(p).map_err(|e| Failure::Io(e.to_string()))?);
                f(&mut w)?;
                w.flush().map_err(|e| Failure::Io(e.to_string()))
            }
            None => {
                f(stdout)?;
                stdout.flush().map_err(|e| Failure::Io(e.to_string()))
            }
        }
    }

    fn write_str(&self, stdout: &mut dyn Write, s: &str) -> Result<(), Failure> {
        self.write(stdout, |w| Ok(writeln!(w, "{s}")?))
    }
}

fn parse_profile(s: &str) -> Result<TolProfile, String> {
    TolProfile::by_name(s).ok_or_else(|| format!("unknown tolerance profile `{s}` (paper, strict)"))
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSpherical(_) => Failure::Verify(e.to_string()),
            Error::Io(e) => Failure::Io(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

enum Source {
    Torus(Box<ConstructedTorus<f64>>),
    Surface(Box<SurfaceGrid<f64>>, &'static str),
}

impl Source {
    fn surface(&self) -> &SurfaceGrid<f64> {
        match self {
            Source::Torus(t) => &t.surface,
            Source::Surface(s, _) => s,
        }
    }
}

fn select_quad(am: &AngleMap<f64>, a: &SourceArgs) -> Result<SolutionQuad<f64>, Failure> {
    let bound = match (a.m, a.n) {
        (Some(m), Some(n)) => m.abs().max(n.abs()).max(1),
        (None, None) if a.eta.is_some() => a.bound,
        _ => return Err(Failure::Usage("give both --m and --n, or --eta".into())),
    };
    let quads = enumerate_solutions(am, bound)?;
    let found = quads.into_iter().find(|q| match (a.m, a.n, a.eta) {
        (Some(m), Some(n), _) => (q.m, q.n) == (m, n),
        (_, _, Some(eta)) => !q.excluded && (q.eta - eta).norm() <= 1e-9,
        _ => false,
    });
    let q =
        found.ok_or_else(|| Failure::Usage("no solution of the constraint matches the given (m, n) or eta".into()))?;
    if let Some(eta) = a.eta {
        if (q.eta - eta).norm() > 1e-9 {
            return Err(Failure::Usage(format!("--eta does not match eta = {} of ({}, {})", q.eta, q.m, q.n)));
        }
    }
    Ok(q)
}

fn source(lat: Lattice64, a: &SourceArgs) -> Result<Source, Failure> {
    if let Some(path) = &a.input {
        let cov =
            Covering::from_factor(a.covering).ok_or_else(|| Failure::Usage("--covering must be 1 or 2".into()))?;
        let file = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let psi = Field64::read_csv(io::BufReader::new(file), lat, cov)?;
        return Ok(Source::Surface(Box::new(SurfaceGrid::new(psi)), "csv"));
    }
    if a.homogeneous {
        return Ok(Source::Surface(Box::new(homogeneous_torus(lat, a.scale, a.grid)?), "homogeneous"));
    }
    let am = AngleMap::new(lat, a.winding.r, a.winding.s)?;
    let q = select_quad(&am, a)?;
    Ok(Source::Torus(Box::new(construct_parallel_section(&q, a.f00, a.f30, a.grid)?)))
}

fn report_json(src: &Source, report: &Report, tol: &TolProfile) -> serde_json::Value {
    let mut v = json!({ "tol_profile": tol.name, "report": report });
    match src {
        Source::Torus(t) => {
            v["source"] = json!("classifier");
            v["quad"] = json!(QuadRecord::new(&t.quad, t.quad.closed_form_checks(tol)));
            v["f00"] = json!([t.f00.re, t.f00.im]);
            v["f30"] = json!([t.f30.re, t.f30.im]);
        }
        Source::Surface(_, name) => v["source"] = json!(name),
    }
    v
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { lattice, winding, bound, out } => {
            out.format(&[Format::Json])?;
            let am = AngleMap::new(lattice.build()?, winding.r, winding.s)?;
            let quads = enumerate_solutions(&am, bound)?;
            let tol = TolProfile::PAPER;
            let records: Vec<QuadRecord> =
                quads.iter().map(|q| QuadRecord::new(q, q.closed_form_checks(&tol))).collect();
            out.write_str(stdout, &to_json(&records).expect("plain data"))
        }
        Command::Construct { lattice, source: a, out } => {
            out.format(&[Format::Csv])?;
            let src = source(lattice.build()?, &a)?;
            out.write(stdout, |w| src.surface().psi().write_csv(w))
        }
        Command::Verify { lattice, source: a, out } => {
            out.format(&[Format::Json])?;
            let src = source(lattice.build()?, &a)?;
            let tol = a.tol_profile;
            let report = match &src {
                Source::Torus(t) => verify_torus(t, &tol)?,
                Source::Surface(s, _) => verify_surface(s, &tol)?,
            };
            out.write_str(stdout, &to_json(&report_json(&src, &report, &tol)).expect("plain data"))?;
            if report.pass {
                Ok(())
            } else {
                let failed: Vec<_> = report.residuals.iter().filter(|(_, c)| !c.pass).map(|(k, _)| *k).collect();
                Err(Failure::Verify(format!("failed: {}", failed.join(", "))))
            }
        }
        Command::Scan { lattice, winding, samples, zeros, out } => {
            let format = out.format(&[Format::Csv, Format::Json])?;
            let am = AngleMap::new(lattice.build()?, winding.r, winding.s)?;
            let scan = spectral_scan(&am, samples)?;
            if let Some(path) = zeros {
                let mut f = File::create(&path).map_err(|e| Failure::Io(e.to_string()))?;
                writeln!(f, "{}", scan.zeros_json()).map_err(|e| Failure::Io(e.to_string()))?;
            }
            match format {
                Format::Json => out.write_str(stdout, &scan.zeros_json()),
                _ => out.write(stdout, |w| scan.write_csv(w)),
            }
        }
        Command::Export { lattice, source: a, pole, out } => {
            out.format(&[Format::Obj])?;
            let src = source(lattice.build()?, &a)?;
            let mesh = export_mesh(src.surface(), pole, &a.tol_profile)?;
            if !mesh.clamped.is_empty() {
                eprintln!("warning: {} vertices near the pole were clamped", mesh.clamped.len());
            }
            if !mesh.degenerate.is_empty() {
                eprintln!("warning: {} faces have zero area", mesh.degenerate.len());
            }
            out.write(stdout, |w| mesh.write_obj(w))
        }
    }
}

/// Runs one command line, writing results to `stdout` (or `--out`) and
/// diagnostics to `stderr`. Returns the exit status: 0 success, 1 failed
/// verification, 2 usage error.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let (code, msg) = match execute(cli, stdout) {
        Ok(()) => return 0,
        Err(Failure::Usage(m)) => (2, format!("error: {m}")),
        Err(Failure::Verify(m)) => (1, format!("verification failed: {m}")),
        Err(Failure::Io(m)) => (1, format!("error: {m}")),
    };
    let _ = writeln!(stderr, "{msg}");
    code
}
