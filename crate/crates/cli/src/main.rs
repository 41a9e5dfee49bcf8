use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use realplane::bell::{
    self, baby_bell_check, linspace, quantum_correlation, singlet_classical_correlation, summarize,
    write_scan_csv, CosineSign, HalfAngleProjection, HiddenVariableModel,
};
use realplane::iso::{bell_basis_matrix, cat, coherent_to_tensor, conjugation, flip, RealRep4};
use realplane::measurement::{outcome_probability, sample_outcomes, split_seed, Orientation};
use realplane::quantization::{
    fourier_coefficients, identity_residual, quantize, FourierSeries, MIN_SAMPLES,
};
use realplane::{DensityParams, Mat2, Mat4};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "realplane",
    version,
    about = "Quantum angles in the real plane: quantization, measurement, Bell scans"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Quadrature nodes (at least 8).
    #[arg(long, global = true, default_value_t = 1024)]
    samples: usize,
    /// Base seed for Monte-Carlo columns.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Pass threshold for checks.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format; tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Read and print angles in degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Quantize a Fourier series given as inline JSON or a file path.
    Quantize {
        fourier: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi0: f64,
    },
    /// Residual of the resolution of the identity.
    IdentityCheck {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi0: f64,
    },
    /// Malus-law table over polarizer angles in [0, π].
    Malus {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        r0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi0: f64,
        #[arg(long, default_value_t = 181)]
        steps: usize,
        /// Add a Monte-Carlo frequency column with this many draws per row.
        #[arg(long)]
        mc_n: Option<u64>,
    },
    /// Scan the sin² inequality over a (ζ, η) grid.
    BellScan {
        #[arg(long, default_value_t = 91)]
        zeta_steps: usize,
        #[arg(long, default_value_t = 91)]
        eta_steps: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        zeta_min: f64,
        /// Defaults to π/2.
        #[arg(long, allow_hyphen_values = true)]
        zeta_max: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        eta_min: f64,
        /// Defaults to π/2.
        #[arg(long, allow_hyphen_values = true)]
        eta_max: Option<f64>,
        /// Only the diagonal ζ = η, on the η grid.
        #[arg(long)]
        diagonal: bool,
    },
    /// Quantum and classical correlations at given angles.
    Correlate {
        #[arg(long, allow_hyphen_values = true)]
        phi_a: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi_b: f64,
        /// Third angle: also evaluate the baby Bell inequality.
        #[arg(long, allow_hyphen_values = true)]
        phi_c: Option<f64>,
    },
    /// A spin-½ coherent state as two entangled angles.
    Coherent {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
    },
    /// Bell matrix and the action of conjugation, flip and cat.
    IsoDemo,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<realplane::Error> for Failure {
    fn from(e: realplane::Error) -> Self {
        Self {
            code: if e.is_parse() {
                EXIT_PARSE
            } else {
                EXIT_DOMAIN
            },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::domain(format!("i/o: {e}"))
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx<'a> {
    config: &'a RunConfig,
    out: Box<dyn Write>,
}

impl Ctx<'_> {
    fn angle_in(&self, a: f64) -> f64 {
        if self.config.degrees {
            a.to_radians()
        } else {
            a
        }
    }

    fn angle_out(&self, a: f64) -> f64 {
        if self.config.degrees {
            a.to_degrees()
        } else {
            a
        }
    }

    fn angle_scale(&self) -> f64 {
        self.angle_out(1.0)
    }

    fn format(&self, table: bool) -> Format {
        self.config
            .format
            .unwrap_or(if table { Format::Csv } else { Format::Json })
    }

    fn json(&mut self, v: &Value) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut self.out, v)?;
        writeln!(self.out)
    }
}

fn mat2_json(m: &Mat2) -> Value {
    json!([[m.a11(), m.a12()], [m.a21(), m.a22()]])
}

fn mat4_json(m: &Mat4) -> Value {
    json!(m.0)
}

fn read_series(arg: &str) -> Result<FourierSeries, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("cannot read {arg}: {e}"),
        })?
    };
    Ok(FourierSeries::from_json(&text)?)
}

fn steps_at_least(name: &str, steps: usize, min: usize) -> Result<(), Failure> {
    if steps < min {
        return Err(Failure::domain(format!(
            "{name} must be at least {min}, got {steps}"
        )));
    }
    Ok(())
}

fn cmd_quantize(ctx: &mut Ctx, fourier: &str, r: f64, phi0: f64) -> Outcome {
    let series = read_series(fourier)?;
    let phi0 = ctx.angle_in(phi0);
    let f = series.into();
    let a = quantize(&f, r, phi0)?;
    let d = fourier_coefficients(&f, ctx.config.samples)?;
    match ctx.format(false) {
        Format::Json => ctx.json(&json!({
            "matrix": mat2_json(&a),
            "mean": d.mean,
            "cc": d.cc,
            "cs": d.cs,
        }))?,
        Format::Csv => {
            writeln!(ctx.out, "a11,a12,a21,a22,mean,cc,cs")?;
            writeln!(
                ctx.out,
                "{},{},{},{},{},{},{}",
                a.a11(),
                a.a12(),
                a.a21(),
                a.a22(),
                d.mean,
                d.cc,
                d.cs
            )?;
        }
    }
    Ok(true)
}

fn cmd_identity_check(ctx: &mut Ctx, r: f64, phi0: f64) -> Outcome {
    let residual = identity_residual(r, ctx.angle_in(phi0), ctx.config.samples)?;
    let pass = residual < ctx.config.tolerance;
    match ctx.format(false) {
        Format::Json => ctx.json(&json!({
            "residual": residual,
            "tolerance": ctx.config.tolerance,
            "pass": pass,
        }))?,
        Format::Csv => {
            writeln!(ctx.out, "residual,tolerance,pass")?;
            writeln!(ctx.out, "{residual},{},{pass}", ctx.config.tolerance)?;
        }
    }
    Ok(pass)
}

fn cmd_malus(ctx: &mut Ctx, r0: f64, phi0: f64, steps: usize, mc_n: Option<u64>) -> Outcome {
    steps_at_least("steps", steps, 2)?;
    let light = DensityParams::new(r0, ctx.angle_in(phi0))?;
    let mut rows = Vec::with_capacity(steps);
    for (i, phi) in linspace(0.0, std::f64::consts::PI, steps)
        .into_iter()
        .enumerate()
    {
        let p = outcome_probability(light, phi, Orientation::Parallel);
        let q = outcome_probability(light, phi, Orientation::Perpendicular);
        let freq = match mc_n {
            Some(n) if n > 0 => {
                let (hits, _) = sample_outcomes(p, n, split_seed(ctx.config.seed, i as u64))?;
                Some(hits as f64 / n as f64)
            }
            Some(_) => return Err(Failure::domain("mc-n must be positive")),
            None => None,
        };
        rows.push((ctx.angle_out(phi), p, q, freq));
    }
    match ctx.format(true) {
        Format::Csv => {
            let mc = if mc_n.is_some() { ",mc_freq" } else { "" };
            writeln!(ctx.out, "phi,p_parallel,p_perpendicular{mc}")?;
            for (phi, p, q, f) in rows {
                match f {
                    Some(f) => writeln!(ctx.out, "{phi},{p},{q},{f}")?,
                    None => writeln!(ctx.out, "{phi},{p},{q}")?,
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|(phi, p, q, f)| {
                    let mut row = json!({"phi": phi, "p_parallel": p, "p_perpendicular": q});
                    if let Some(f) = f {
                        row["mc_freq"] = json!(f);
                    }
                    row
                })
                .collect();
            ctx.json(&Value::Array(rows))?;
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bell_scan(
    ctx: &mut Ctx,
    zeta_steps: usize,
    eta_steps: usize,
    zeta_range: (f64, Option<f64>),
    eta_range: (f64, Option<f64>),
    diagonal: bool,
) -> Outcome {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let grid =
        |(lo, hi): (f64, Option<f64>), steps: usize, name: &str| -> Result<Vec<f64>, Failure> {
            let lo = ctx.angle_in(lo);
            let hi = hi.map_or(half_pi, |h| ctx.angle_in(h));
            // a degenerate range is a single point
            if lo == hi {
                steps_at_least(name, steps, 1)?;
                return Ok(vec![lo]);
            }
            steps_at_least(name, steps, 2)?;
            Ok(linspace(lo, hi, steps))
        };
    let eta = grid(eta_range, eta_steps, "eta-steps")?;
    let points = if diagonal {
        bell::diagonal_scan(&eta)?
    } else {
        let zeta = grid(zeta_range, zeta_steps, "zeta-steps")?;
        bell::violation_scan(&zeta, &eta)?
    };
    let summary = summarize(&points);
    let scale = ctx.angle_scale();
    match ctx.format(true) {
        Format::Csv => write_scan_csv(&mut ctx.out, &points, scale)?,
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "zeta": p.zeta * scale,
                        "eta": p.eta * scale,
                        "lhs": p.report.lhs,
                        "rhs": p.report.rhs,
                        "violated": p.report.violated,
                        "margin": p.report.margin,
                    })
                })
                .collect();
            ctx.json(&Value::Array(rows))?;
        }
    }
    let interval = match summary.diagonal_interval {
        Some((lo, hi)) => format!("[{}, {}]", lo * scale, hi * scale),
        None => "none".into(),
    };
    eprintln!(
        "points {} violated {} fraction {:.6} diagonal violation interval {interval}",
        summary.points,
        summary.violated,
        summary.violated_fraction()
    );
    Ok(true)
}

fn cmd_correlate(ctx: &mut Ctx, a: f64, b: f64, c: Option<f64>) -> Outcome {
    let (ra, rb, rc) = (ctx.angle_in(a), ctx.angle_in(b), c.map(|c| ctx.angle_in(c)));
    let n = ctx.config.samples;
    let models: [(&str, &dyn HiddenVariableModel); 2] = [
        ("cosine_sign", &CosineSign),
        ("half_angle", &HalfAngleProjection),
    ];
    let quantum = quantum_correlation(ra, rb);
    let mut classical = Vec::new();
    for (name, m) in models {
        classical.push((name, singlet_classical_correlation(m, ra, rb, n)?));
    }

    let mut inequality = Vec::new();
    if let Some(rc) = rc {
        let q = baby_bell_check(
            quantum,
            quantum_correlation(ra, rc),
            quantum_correlation(rb, rc),
        )?;
        inequality.push(("quantum", q));
        for (name, m) in models {
            let p = |x, y| singlet_classical_correlation(m, x, y, n);
            inequality.push((name, baby_bell_check(p(ra, rb)?, p(ra, rc)?, p(rb, rc)?)?));
        }
    }

    match ctx.format(false) {
        Format::Json => {
            let mut v = json!({
                "phi_a": a,
                "phi_b": b,
                "quantum": quantum,
                "classical": classical.iter().map(|(k, p)| (k.to_string(), json!(p))).collect::<serde_json::Map<_, _>>(),
            });
            if let Some(c) = c {
                v["phi_c"] = json!(c);
                v["baby_bell"] = inequality
                    .iter()
                    .map(|(k, r)| {
                        (
                            k.to_string(),
                            json!({"lhs": r.lhs, "rhs": r.rhs, "violated": r.violated, "margin": r.margin}),
                        )
                    })
                    .collect::<serde_json::Map<_, _>>()
                    .into();
            }
            ctx.json(&v)?;
        }
        Format::Csv => {
            writeln!(ctx.out, "model,correlation")?;
            writeln!(ctx.out, "quantum,{quantum}")?;
            for (k, p) in &classical {
                writeln!(ctx.out, "{k},{p}")?;
            }
            if !inequality.is_empty() {
                writeln!(ctx.out)?;
                writeln!(ctx.out, "model,lhs,rhs,violated,margin")?;
                for (k, r) in &inequality {
                    writeln!(
                        ctx.out,
                        "{k},{},{},{},{}",
                        r.lhs, r.rhs, r.violated, r.margin
                    )?;
                }
            }
        }
    }
    Ok(true)
}

fn cmd_coherent(ctx: &mut Ctx, theta: f64, phi: f64) -> Outcome {
    let v = coherent_to_tensor(ctx.angle_in(theta), ctx.angle_in(phi))?;
    match ctx.format(false) {
        Format::Json => ctx.json(&json!({"theta": theta, "phi": phi, "tensor": v.0}))?,
        Format::Csv => {
            let t = v.0;
            writeln!(ctx.out, "theta,phi,t00,t11,t01,t10")?;
            writeln!(ctx.out, "{theta},{phi},{},{},{},{}", t[0], t[1], t[2], t[3])?;
        }
    }
    Ok(true)
}

/// Column `j` with signed zeros folded to `+0`.
fn column(m: &Mat4, j: usize) -> [f64; 4] {
    m.column(j).map(|x| x + 0.0)
}

fn cmd_iso_demo(ctx: &mut Ctx) -> Outcome {
    let bell = bell_basis_matrix().0;
    let ops: [(&str, RealRep4); 3] = [
        ("conjugation", RealRep4::from_map(conjugation)),
        ("flip", RealRep4::from_map(flip)),
        ("cat", RealRep4::from_map(cat)),
    ];
    let basis = ["e1", "e2", "ie1", "ie2"];
    let flip_sq = (ops[1].1 .0 * ops[1].1 .0).max_abs_diff(&(-Mat4::identity()));
    let checks = json!({
        "bell_orthogonality_defect": bell.orthogonality_defect(),
        "flip_squared_plus_identity": flip_sq,
        "cat_orthogonality_defect": ops[2].1 .0.orthogonality_defect(),
        "conjugation_antilinearity_defect": ops[0].1.antilinearity_defect(),
        "flip_antilinearity_defect": ops[1].1.antilinearity_defect(),
    });
    let pass = bell.orthogonality_defect() <= ctx.config.tolerance
        && flip_sq <= ctx.config.tolerance
        && ops[2].1 .0.orthogonality_defect() <= ctx.config.tolerance;
    match ctx.format(false) {
        Format::Json => {
            let mut actions = serde_json::Map::new();
            for (name, rep) in &ops {
                let table: serde_json::Map<_, _> = basis
                    .iter()
                    .enumerate()
                    .map(|(j, b)| (b.to_string(), json!(column(&rep.0, j))))
                    .collect();
                actions.insert(name.to_string(), table.into());
            }
            ctx.json(&json!({
                "basis": basis,
                "bell_matrix": mat4_json(&bell),
                "actions": actions,
                "checks": checks,
            }))?;
        }
        Format::Csv => {
            writeln!(ctx.out, "operator,input,x1,x2,y1,y2")?;
            for j in 0..4 {
                let c = column(&bell, j);
                let name = bell::BellKind::ALL[j].name();
                writeln!(ctx.out, "bell,{name},{},{},{},{}", c[0], c[1], c[2], c[3])?;
            }
            for (name, rep) in &ops {
                for (j, b) in basis.iter().enumerate() {
                    let c = column(&rep.0, j);
                    writeln!(ctx.out, "{name},{b},{},{},{},{}", c[0], c[1], c[2], c[3])?;
                }
            }
        }
    }
    Ok(pass)
}

fn validate(config: &RunConfig) -> Result<(), Failure> {
    if config.samples < MIN_SAMPLES {
        return Err(Failure::domain(format!(
            "--samples must be at least {MIN_SAMPLES}, got {}",
            config.samples
        )));
    }
    if config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return Err(Failure::domain(format!(
            "--tolerance must be positive, got {}",
            config.tolerance
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    validate(&cli.config)?;
    let out: Box<dyn Write> = match &cli.config.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut ctx = Ctx {
        config: &cli.config,
        out,
    };
    let pass = match &cli.command {
        Command::Quantize { fourier, r, phi0 } => cmd_quantize(&mut ctx, fourier, *r, *phi0),
        Command::IdentityCheck { r, phi0 } => cmd_identity_check(&mut ctx, *r, *phi0),
        Command::Malus {
            r0,
            phi0,
            steps,
            mc_n,
        } => cmd_malus(&mut ctx, *r0, *phi0, *steps, *mc_n),
        Command::BellScan {
            zeta_steps,
            eta_steps,
            zeta_min,
            zeta_max,
            eta_min,
            eta_max,
            diagonal,
        } => cmd_bell_scan(
            &mut ctx,
            *zeta_steps,
            *eta_steps,
            (*zeta_min, *zeta_max),
            (*eta_min, *eta_max),
            *diagonal,
        ),
        Command::Correlate {
            phi_a,
            phi_b,
            phi_c,
        } => cmd_correlate(&mut ctx, *phi_a, *phi_b, *phi_c),
        Command::Coherent { theta, phi } => cmd_coherent(&mut ctx, *theta, *phi),
        Command::IsoDemo => cmd_iso_demo(&mut ctx),
    }?;
    ctx.out.flush()?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
