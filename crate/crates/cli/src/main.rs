//! `luroth`: command-line front end to the `luroth` library.
//!
//! Tabular commands write CSV by default. Scalar commands (`expand`,
//! `reconstruct`, `cylinder`, `solve-s`, `dim`) print one plain line unless
//! `--format` is given. CSV output starts with `# key=value` lines echoing
//! every input flag; JSON output carries them under `"params"`.
//!
//! Exit status: 0 on success, 1 on usage, validation or domain errors, 2 when
//! a budget, tolerance or precision limit is exhausted.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use luroth::construction::{
    self, enumerate_d_n, fundamental_interval, gap_check, gap_table, generate_point,
    holder_estimate, mass_check, mass_length_report, run_profile_check, Fill, MassDistribution,
    Role, Schedule,
};
use luroth::expansion::{cylinder, digits, evaluate, DigitString};
use luroth::experiments::{dim_surface, lln_experiment, ExperimentConfig};
use luroth::moran::{
    dim_e_with, format_significant, solve_s_m_with, solve_s_with, zeta, DimCase, DimParams,
    Precision, SolverConfig,
};
use luroth::rational::{format_rational, parse_rational, to_f64};
use luroth::runlength::{growth_ratios, inf_sup_estimate, run_trajectory, Scale};
use luroth::ExactRational;

#[derive(Parser)]
#[command(
    name = "luroth",
    version,
    about = "Lüroth expansions, run lengths and dimension solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; scalar commands print a plain line when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScheduleArgs {
    /// Target liminf of ℓ_n/n, as `p/q` or a decimal.
    #[arg(long)]
    alpha: String,
    /// Target limsup of ℓ_n/n.
    #[arg(long)]
    beta: String,
    /// Digit bound of the construction.
    #[arg(long = "M", default_value_t = 3)]
    max_digit: u64,
    /// Number of schedule blocks.
    #[arg(long, default_value_t = 3)]
    k_max: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log2,
}

#[derive(Subcommand)]
enum Command {
    /// First n Lüroth digits of a rational x in (0, 1].
    Expand {
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact partial sum of a digit string, the left end of its cylinder.
    Reconstruct {
        /// Comma-separated digits, e.g. `2,4,2,2`.
        #[arg(long)]
        digits: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cylinder interval (left, right] of a digit string.
    Cylinder {
        #[arg(long)]
        digits: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Prefix-wise maximal run length ℓ_n and its growth ratio.
    Runlength {
        /// Comma-separated digits; alternatively give --x and --n.
        #[arg(long, conflicts_with_all = ["x", "n"])]
        digits: Option<String>,
        #[arg(long, requires = "n")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "linear")]
        scale: ScaleArg,
        /// Also report min/max of the ratios over this trailing fraction.
        #[arg(long)]
        tail_fraction: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Root s(u) of the Moran equation, or s_M(u) with --M.
    SolveS {
        #[arg(long)]
        u: f64,
        #[arg(long = "M")]
        max_digit: Option<u64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hausdorff dimension of E(alpha, beta).
    Dim {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension on a square (alpha, beta) grid.
    DimSurface {
        /// Grid points per axis.
        #[arg(long, default_value_t = 21)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Block schedule n_k, m_k, p_k, n'_k, u_k.
    Schedule {
        #[command(flatten)]
        sched: ScheduleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A point of G(M) with its run-length profile.
    Construct {
        #[command(flatten)]
        sched: ScheduleArgs,
        /// Number of digits; defaults to the schedule's horizon.
        #[arg(long)]
        depth: Option<usize>,
        /// Seed for random free digits.
        #[arg(
            long,
            required_unless_present = "constant",
            conflicts_with = "constant"
        )]
        seed: Option<u64>,
        /// Fill every free position with this digit instead.
        #[arg(long)]
        constant: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Admissible words of a depth with their fundamental intervals, mass and gap.
    Enumerate {
        #[command(flatten)]
        sched: ScheduleArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = construction::DEFAULT_WORD_BUDGET)]
        budget: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mass additivity and mass-versus-length exponents for depths 1..=depth.
    MuCheck {
        #[command(flatten)]
        sched: ScheduleArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Slack subtracted from s_M(ζ) for the length exponent.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = construction::DEFAULT_WORD_BUDGET)]
        budget: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact gap bound check for depths 1..=depth.
    GapCheck {
        #[command(flatten)]
        sched: ScheduleArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = construction::DEFAULT_WORD_BUDGET)]
        budget: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fitted Hölder exponent of the deletion map.
    Holder {
        #[command(flatten)]
        sched: ScheduleArgs,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo of ℓ_n / log2 n for Lebesgue-random points.
    Lln {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(luroth::Error),
    Io(io::Error),
    Usage(String),
}

impl From<luroth::Error> for CliError {
    fn from(e: luroth::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Everything one command produces: echoed inputs, derived summary values,
/// the rows and, for scalar commands, a plain rendering.
struct Report<R> {
    params: Vec<(&'static str, String)>,
    summary: Vec<(&'static str, Value)>,
    rows: Vec<R>,
    plain: Option<String>,
}

impl<R: Serialize> Report<R> {
    fn new(params: Vec<(&'static str, String)>, rows: Vec<R>) -> Self {
        Report {
            params,
            summary: Vec::new(),
            rows,
            plain: None,
        }
    }

    fn plain(mut self, line: String) -> Self {
        self.plain = Some(line);
        self
    }

    fn summary(mut self, key: &'static str, value: impl Serialize) -> Self {
        self.summary
            .push((key, serde_json::to_value(value).unwrap_or(Value::Null)));
        self
    }

    fn write(self, output: &OutputArgs) -> CliResult {
        let sink: Box<dyn Write> = match &output.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut sink = BufWriter::new(sink);
        match (output.format, &self.plain) {
            (None, Some(line)) => writeln!(sink, "{line}")?,
            (None | Some(Format::Csv), _) => {
                for (k, v) in &self.params {
                    writeln!(sink, "# {k}={v}")?;
                }
                for (k, v) in &self.summary {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    writeln!(sink, "# {k}={text}")?;
                }
                let mut w = csv::Writer::from_writer(&mut sink);
                for row in &self.rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            (Some(Format::Json), _) => {
                let params: Map<String, Value> = self
                    .params
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), Value::String(v)))
                    .collect();
                let mut doc = json!({ "params": params, "rows": self.rows });
                if !self.summary.is_empty() {
                    let summary: Map<String, Value> = self
                        .summary
                        .into_iter()
                        .map(|(k, v)| (k.to_string(), v))
                        .collect();
                    doc["summary"] = Value::Object(summary);
                }
                serde_json::to_writer_pretty(&mut sink, &doc)?;
                writeln!(sink)?;
            }
        }
        sink.flush()?;
        Ok(())
    }
}

fn parse_digits(text: &str) -> CliResult<DigitString> {
    let digits = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("not a digit: {t:?} in {text:?}")))
        })
        .collect::<CliResult<Vec<u64>>>()?;
    Ok(DigitString::new(digits)?)
}

fn join_digits(d: &[u64], sep: &str) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn solver_config() -> CliResult<SolverConfig> {
    Ok(SolverConfig {
        precision: Precision::from_env()?,
        ..SolverConfig::default()
    })
}

fn dim_params(alpha: &str, beta: &str) -> CliResult<DimParams> {
    Ok(DimParams::new(
        parse_rational(alpha)?,
        parse_rational(beta)?,
    )?)
}

fn build_schedule(args: &ScheduleArgs) -> CliResult<Schedule> {
    let params = dim_params(&args.alpha, &args.beta)?;
    Ok(Schedule::build(&params, args.max_digit, args.k_max)?)
}

fn schedule_params(args: &ScheduleArgs) -> Vec<(&'static str, String)> {
    vec![
        ("alpha", args.alpha.clone()),
        ("beta", args.beta.clone()),
        ("M", args.max_digit.to_string()),
        ("k_max", args.k_max.to_string()),
    ]
}

/// `value ± tol` with as many decimals as the tolerance supports.
fn certified_line(value: f64, tol: f64) -> String {
    format!("{} ± {tol:e}", format_significant(value, tol))
}

#[derive(Serialize)]
struct DigitRow {
    index: usize,
    digit: u64,
}

#[derive(Serialize)]
struct ValueRow {
    digits: String,
    value: String,
    value_f64: f64,
}

#[derive(Serialize)]
struct IntervalRow {
    digits: String,
    left: String,
    right: String,
    length: String,
}

#[derive(Serialize)]
struct SolveRow {
    u: f64,
    #[serde(rename = "M")]
    max_digit: Option<u64>,
    value: f64,
    error_bound: f64,
}

#[derive(Serialize)]
struct DimRow {
    alpha: String,
    beta: String,
    case: DimCase,
    zeta: Option<String>,
    dim: f64,
    err: f64,
}

#[derive(Serialize)]
struct SurfaceRow {
    alpha: f64,
    beta: f64,
    case: Option<DimCase>,
    dim: Option<f64>,
    err: Option<f64>,
}

#[derive(Serialize)]
struct ScheduleRow {
    k: usize,
    n: u64,
    m: u64,
    /// Empty for the last block, whose separators lie past the horizon.
    p: Option<u64>,
    n_prime: u64,
    u: String,
    u_f64: f64,
    /// m_k / (n_k + m_k)
    upper_ratio: f64,
    /// m_k / (n_{k+1} + m_k)
    lower_ratio: f64,
}

#[derive(Serialize)]
struct PointRow {
    n: usize,
    digit: u64,
    role: &'static str,
    ell_n: usize,
}

#[derive(Serialize)]
struct WordRow {
    word: String,
    left: String,
    length: String,
    mu: f64,
    gap: Option<String>,
}

#[derive(Serialize)]
struct MuRow {
    depth: usize,
    words: usize,
    total_mass: f64,
    total_error_bound: f64,
    max_additivity_error: f64,
    min_exponent: Option<f64>,
    target_exponent: Option<f64>,
    log_constant: Option<f64>,
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Expand { x, n, output } => {
            let value = parse_rational(&x)?;
            let d = digits(&value, n)?;
            let plain = join_digits(&d, ",");
            let rows = d
                .iter()
                .enumerate()
                .map(|(i, &digit)| DigitRow {
                    index: i + 1,
                    digit,
                })
                .collect();
            Report::new(vec![("x", x), ("n", n.to_string())], rows)
                .plain(plain)
                .write(&output)
        }
        Command::Reconstruct {
            digits: text,
            output,
        } => {
            let d = parse_digits(&text)?;
            let value = evaluate(&d);
            let row = ValueRow {
                digits: join_digits(&d, ","),
                value: format_rational(&value),
                value_f64: to_f64(&value),
            };
            Report::new(vec![("digits", text)], vec![row])
                .plain(format_rational(&value))
                .write(&output)
        }
        Command::Cylinder {
            digits: text,
            output,
        } => {
            let d = parse_digits(&text)?;
            let c = cylinder(&d)?;
            let plain = format!(
                "({}, {}]",
                format_rational(c.left()),
                format_rational(c.right())
            );
            let row = IntervalRow {
                digits: join_digits(&d, ","),
                left: format_rational(c.left()),
                right: format_rational(c.right()),
                length: format_rational(&c.length()),
            };
            Report::new(vec![("digits", text)], vec![row])
                .plain(plain)
                .write(&output)
        }
        Command::Runlength {
            digits: text,
            x,
            n,
            scale,
            tail_fraction,
            output,
        } => {
            let (d, mut params) = match (text, x, n) {
                (Some(text), _, _) => (parse_digits(&text)?, vec![("digits", text)]),
                (None, Some(x), Some(n)) => {
                    let d = digits(&parse_rational(&x)?, n)?;
                    (d, vec![("x", x), ("n", n.to_string())])
                }
                _ => return Err(CliError::Usage("give --digits or both --x and --n".into())),
            };
            let (scale, name) = match scale {
                ScaleArg::Linear => (Scale::Linear, "linear"),
                ScaleArg::Log2 => (Scale::Log2, "log2"),
            };
            params.push(("scale", name.into()));
            let traj = run_trajectory(&d)?;
            let rows = growth_ratios(&traj, scale);
            let mut report = Report::new(params, Vec::new());
            if let Some(f) = tail_fraction {
                report.params.push(("tail_fraction", f.to_string()));
                let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
                let (lo, hi) = inf_sup_estimate(&ratios, f)?;
                report = report
                    .summary("inf_estimate", lo)
                    .summary("sup_estimate", hi);
            }
            report.rows = rows;
            report.write(&output)
        }
        Command::SolveS {
            u,
            max_digit,
            tol,
            output,
        } => {
            let config = solver_config()?;
            let root = match max_digit {
                Some(m) => solve_s_m_with(u, m, tol, &config)?,
                None => solve_s_with(u, tol, &config)?,
            };
            let mut params = vec![("u", u.to_string()), ("tol", format!("{tol:e}"))];
            if let Some(m) = max_digit {
                params.push(("M", m.to_string()));
            }
            let row = SolveRow {
                u,
                max_digit,
                value: root.value,
                error_bound: root.error_bound,
            };
            Report::new(params, vec![row])
                .plain(certified_line(root.value, tol))
                .write(&output)
        }
        Command::Dim {
            alpha,
            beta,
            tol,
            output,
        } => {
            let params = dim_params(&alpha, &beta)?;
            let d = dim_e_with(&params, tol, &solver_config()?)?;
            let plain = match d.case {
                DimCase::One => "1".to_string(),
                DimCase::Zero => "0".to_string(),
                DimCase::Middle => certified_line(d.value.value, tol),
            };
            let row = DimRow {
                alpha: format_rational(params.alpha()),
                beta: format_rational(params.beta()),
                case: d.case,
                zeta: d.zeta.as_ref().map(format_rational),
                dim: d.value.value,
                err: d.value.error_bound,
            };
            let echoed = vec![
                ("alpha", alpha),
                ("beta", beta),
                ("tol", format!("{tol:e}")),
            ];
            Report::new(echoed, vec![row]).plain(plain).write(&output)
        }
        Command::DimSurface {
            resolution,
            tol,
            output,
        } => {
            solver_config()?.precision.check(tol)?;
            let rows = dim_surface(resolution, tol)?
                .into_iter()
                .map(|c| SurfaceRow {
                    alpha: to_f64(&c.alpha),
                    beta: to_f64(&c.beta),
                    case: c.case,
                    dim: c.dim.map(|d| d.value),
                    err: c.dim.map(|d| d.error_bound),
                })
                .collect();
            let params = vec![
                ("resolution", resolution.to_string()),
                ("tol", format!("{tol:e}")),
            ];
            Report::new(params, rows).write(&output)
        }
        Command::Schedule {
            sched: args,
            output,
        } => {
            let s = build_schedule(&args)?;
            let rows = (1..=s.k_max())
                .map(|k| {
                    let (n, m) = (s.n()[k - 1], s.m()[k - 1]);
                    ScheduleRow {
                        k,
                        n,
                        m,
                        p: s.p().get(k - 1).copied(),
                        n_prime: s.n_prime()[k - 1],
                        u: format_rational(&s.u()[k - 1]),
                        u_f64: to_f64(&s.u()[k - 1]),
                        upper_ratio: m as f64 / (n + m) as f64,
                        lower_ratio: m as f64 / (s.n_after(k) + m) as f64,
                    }
                })
                .collect();
            Report::new(schedule_params(&args), rows)
                .summary("point_horizon", s.point_horizon())
                .summary("word_horizon", s.word_horizon())
                .write(&output)
        }
        Command::Construct {
            sched: args,
            depth,
            seed,
            constant,
            output,
        } => {
            let s = build_schedule(&args)?;
            let depth = depth.unwrap_or_else(|| s.point_horizon());
            let mut params = schedule_params(&args);
            params.push(("depth", depth.to_string()));
            let fill = match (seed, constant) {
                (Some(seed), _) => {
                    params.push(("seed", seed.to_string()));
                    Fill::Seeded(seed)
                }
                (None, Some(c)) => {
                    params.push(("constant", c.to_string()));
                    Fill::Constant(c)
                }
                (None, None) => return Err(CliError::Usage("give --seed or --constant".into())),
            };
            let x = generate_point(&s, fill, depth)?;
            let profile = run_profile_check(&x, &s)?;
            let traj = run_trajectory(&x)?;
            let rows = x
                .iter()
                .enumerate()
                .map(|(i, &digit)| {
                    let role = match s.role(i + 1)? {
                        Role::Free => "free",
                        Role::Forced => "forced",
                        Role::Separator => "separator",
                    };
                    Ok(PointRow {
                        n: i + 1,
                        digit,
                        role,
                        ell_n: traj.ell(i + 1).unwrap_or(0),
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Report::new(params, rows)
                .summary("deletions", construction::deletion_count(&s, depth)?)
                .summary("blocks_checked", profile.blocks_checked)
                .summary("profile_match", profile.matches())
                .summary("first_mismatch", &profile.first_mismatch)
                .write(&output)
        }
        Command::Enumerate {
            sched: args,
            depth,
            tol,
            budget,
            output,
        } => {
            let s = build_schedule(&args)?;
            let dist = MassDistribution::with_config(&s, tol, &solver_config()?)?;
            let words = enumerate_d_n(&s, depth, budget)?;
            let table = gap_table(&s, depth, budget)?;
            let rows = words
                .iter()
                .zip(table)
                .map(|(w, entry)| {
                    let j = fundamental_interval(w)?;
                    Ok(WordRow {
                        word: join_digits(w.digits(), " "),
                        left: format_rational(j.interval.left()),
                        length: format_rational(&j.length),
                        mu: dist.measure_mu(w)?.value,
                        gap: entry.gap.as_ref().map(format_rational),
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let mut params = schedule_params(&args);
            params.extend([("depth", depth.to_string()), ("tol", format!("{tol:e}"))]);
            Report::new(params, rows).write(&output)
        }
        Command::MuCheck {
            sched: args,
            depth,
            tol,
            eps,
            budget,
            output,
        } => {
            let s = build_schedule(&args)?;
            let config = solver_config()?;
            let dist = MassDistribution::with_config(&s, tol, &config)?;
            let params_ab = dim_params(&args.alpha, &args.beta)?;
            let s_zeta = if params_ab.is_middle_case() {
                let z: ExactRational = zeta(&params_ab)?;
                Some(solve_s_m_with(to_f64(&z), s.max_digit(), tol, &config)?)
            } else {
                None
            };
            let mut k0 = None;
            let mut rows = Vec::with_capacity(depth);
            for n in 1..=depth {
                let c = mass_check(&dist, n, budget)?;
                let report = match &s_zeta {
                    Some(sz) => Some(mass_length_report(&dist, sz, eps, n, budget)?),
                    None => None,
                };
                if let Some(r) = &report {
                    k0 = r.k0;
                }
                rows.push(MuRow {
                    depth: n,
                    words: c.words,
                    total_mass: c.total_mass,
                    total_error_bound: c.total_error_bound,
                    max_additivity_error: c.max_additivity_error,
                    min_exponent: report.as_ref().map(|r| r.min_exponent),
                    target_exponent: report.as_ref().map(|r| r.target_exponent),
                    log_constant: report.as_ref().map(|r| r.log_constant),
                });
            }
            let mut params = schedule_params(&args);
            params.extend([
                ("depth", depth.to_string()),
                ("tol", format!("{tol:e}")),
                ("eps", eps.to_string()),
            ]);
            Report::new(params, rows)
                .summary("s_M_zeta", s_zeta.map(|v| v.value))
                .summary("k0", k0)
                .write(&output)
        }
        Command::GapCheck {
            sched: args,
            depth,
            budget,
            output,
        } => {
            let s = build_schedule(&args)?;
            let rows = (1..=depth)
                .map(|n| gap_check(&s, n, budget))
                .collect::<luroth::Result<Vec<_>>>()?;
            let mut params = schedule_params(&args);
            params.push(("depth", depth.to_string()));
            Report::new(params, rows).write(&output)
        }
        Command::Holder {
            sched: args,
            depth,
            pairs,
            seed,
            output,
        } => {
            let s = build_schedule(&args)?;
            let fit = holder_estimate(&s, depth, pairs, seed)?;
            let mut params = schedule_params(&args);
            params.extend([
                ("depth", depth.to_string()),
                ("pairs", pairs.to_string()),
                ("seed", seed.to_string()),
            ]);
            Report::new(params, vec![fit]).write(&output)
        }
        Command::Lln {
            n,
            trials,
            seed,
            output,
        } => {
            let summary = lln_experiment(&ExperimentConfig::new(seed, trials, n)?);
            let params = vec![
                ("n", n.to_string()),
                ("trials", trials.to_string()),
                ("seed", seed.to_string()),
            ];
            Report::new(params, vec![summary]).write(&output)
        }
    }
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
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_exhaustion() { 2 } else { 1 })
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
