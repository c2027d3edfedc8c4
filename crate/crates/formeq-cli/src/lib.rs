//! Command-line front door: verification suites with JSON reports.
//!
//! Exit codes: 0 when every case passes, 1 when a verification fails,
//! 2 for usage or configuration errors.

pub mod input;
pub mod report;
pub mod suites;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use formeq::forms::EqMode;
use formeq::solenoid::CounterexampleCf;

use report::Report;
use suites::McLaw;

#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Config(String),
}

impl CliError {
    /// Prints the error the way the binary reports it and exits the process.
    pub fn exit(self) -> ! {
        match self {
            CliError::Usage(e) => e.exit(),
            CliError::Config(msg) => {
                eprintln!("error: {msg}");
                std::process::exit(2);
            }
        }
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, CliError::Usage(e) if e.kind() != ErrorKind::DisplayHelp
            && e.kind() != ErrorKind::DisplayVersion)
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub report: Report,
    /// JSON that goes to stdout; absent when `--out` redirected it.
    pub printed: Option<String>,
    pub exit_code: u8,
}

#[derive(Parser, Debug)]
#[command(
    name = "formeq",
    version,
    about = "Verification suites for distribution identities of Bernoulli-weighted linear forms on abelian groups"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// TOML file of `key = value` defaults mirroring the flags; explicit
    /// flags win
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the JSON report to this path instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for every randomized step
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate and classify solutions of a doubling equation on a finite
    /// dual group
    Solve {
        /// Cyclic factors, comma separated (e.g. `4` or `2,3`)
        #[arg(long)]
        group: Option<String>,
        /// Equation mode, `A` or `B`
        #[arg(long)]
        mode: Option<String>,
    },
    /// List the structured solution family of a finite group
    Family {
        #[arg(long)]
        group: Option<String>,
    },
    /// Compare the exact form laws of one distribution against the dual
    /// predicates
    Forms {
        #[arg(long)]
        group: Option<String>,
        /// `uniform`, `haar:K=<gens>`, `point:x=<coords>`,
        /// `twopoint:a=<coords>`, or `random:seed=<u64>`
        #[arg(long)]
        dist: Option<String>,
    },
    /// Verify the sech transform on a solenoid dual, with subgroup
    /// restrictions
    Solenoid {
        /// Base entries, comma separated (e.g. `3,5,7`)
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        sigma: Option<f64>,
    },
    /// Build the orbit-seeded counterexample transform and verify its
    /// properties
    Counterexample {
        /// Base entries, comma separated; every entry must be odd
        #[arg(long)]
        a: Option<String>,
        /// Seed assignments `rep=value;...`, e.g. `1=1/8;1/3=1/16`
        #[arg(long)]
        c: Option<String>,
    },
    /// Monte Carlo form tests on the real line
    Mc {
        /// `sech`, `twopoint`, or `gaussian`
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        sigma: Option<f64>,
        /// Two-point location
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the full verification suite
    Suite {
        /// Run every criterion
        #[arg(long)]
        all: bool,
    },
}

/// Typed view over the optional TOML config.
struct ConfigFile {
    table: toml::Table,
}

impl ConfigFile {
    fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let table = match path {
            None => toml::Table::new(),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read config {}: {e}", p.display()))
                })?;
                text.parse::<toml::Table>().map_err(|e| {
                    CliError::Config(format!("cannot parse config {}: {e}", p.display()))
                })?
            }
        };
        Ok(Self { table })
    }

    fn get_str(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(CliError::Config(format!(
                "config key `{key}` must be a string, got {other}"
            ))),
        }
    }

    fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(v)) => Ok(Some(*v)),
            Some(toml::Value::Integer(v)) => Ok(Some(*v as f64)),
            Some(other) => Err(CliError::Config(format!(
                "config key `{key}` must be a number, got {other}"
            ))),
        }
    }

    fn get_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) if *v >= 0 => Ok(Some(*v as u64)),
            Some(other) => Err(CliError::Config(format!(
                "config key `{key}` must be a nonnegative integer, got {other}"
            ))),
        }
    }

    fn get_bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Boolean(v)) => Ok(Some(*v)),
            Some(other) => Err(CliError::Config(format!(
                "config key `{key}` must be a boolean, got {other}"
            ))),
        }
    }
}

fn parse_mode(spec: &str) -> Result<EqMode, CliError> {
    match spec {
        "A" | "a" => Ok(EqMode::A),
        "B" | "b" => Ok(EqMode::B),
        other => Err(CliError::Config(format!("mode must be A or B, got `{other}`"))),
    }
}

fn parse_law(spec: &str) -> Result<McLaw, CliError> {
    match spec {
        "sech" => Ok(McLaw::Sech),
        "twopoint" => Ok(McLaw::TwoPoint),
        "gaussian" => Ok(McLaw::Gaussian),
        other => Err(CliError::Config(format!(
            "law must be sech, twopoint, or gaussian, got `{other}`"
        ))),
    }
}

fn required(value: Option<String>, key: &str) -> Result<String, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing `--{key}` (or config key `{key}`)")))
}

/// Parses arguments, runs the selected suite, and assembles the report.
/// Never exits the process; the caller decides what to do with errors.
pub fn run<I, T>(args: I) -> Result<RunOutput, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
    let config = ConfigFile::load(cli.global.config.as_ref())?;
    let seed = match cli.global.seed {
        Some(s) => s,
        None => config.get_u64("seed")?.unwrap_or(42),
    };
    let out = match cli.global.out {
        Some(p) => Some(p),
        None => config.get_str("out")?.map(PathBuf::from),
    };

    let mut echo: BTreeMap<String, String> = BTreeMap::new();
    echo.insert("seed".into(), seed.to_string());

    let (suite_name, cases) = match cli.command {
        Command::Solve { group, mode } => {
            let group_spec = required(group.or(config.get_str("group")?), "group")?;
            let mode_spec = mode.or(config.get_str("mode")?).unwrap_or_else(|| "A".into());
            let g = input::parse_group(&group_spec).map_err(CliError::Config)?;
            let mode = parse_mode(&mode_spec)?;
            echo.insert("group".into(), group_spec);
            echo.insert("mode".into(), mode_spec.to_uppercase());
            ("solve", suites::solve_cases(&g, mode))
        }
        Command::Family { group } => {
            let group_spec = required(group.or(config.get_str("group")?), "group")?;
            let g = input::parse_group(&group_spec).map_err(CliError::Config)?;
            echo.insert("group".into(), group_spec);
            ("family", suites::family_cases(&g))
        }
        Command::Forms { group, dist } => {
            let group_spec = required(group.or(config.get_str("group")?), "group")?;
            let dist_spec = dist.or(config.get_str("dist")?).unwrap_or_else(|| "uniform".into());
            let g = input::parse_group(&group_spec).map_err(CliError::Config)?;
            let mu = input::parse_dist(&g, &dist_spec).map_err(CliError::Config)?;
            echo.insert("group".into(), group_spec);
            echo.insert("dist".into(), dist_spec.clone());
            ("forms", suites::forms_cases(&g, &mu, &dist_spec))
        }
        Command::Solenoid { a, sigma } => {
            let a_spec = a.or(config.get_str("a")?).unwrap_or_else(|| "3,5,7".into());
            let sigma = match sigma {
                Some(s) => s,
                None => config.get_f64("sigma")?.unwrap_or(1.0),
            };
            let base = input::parse_base(&a_spec).map_err(CliError::Config)?;
            echo.insert("a".into(), a_spec);
            echo.insert("sigma".into(), format!("{sigma}"));
            ("solenoid", suites::solenoid_cases(&base, sigma, seed, 200))
        }
        Command::Counterexample { a, c } => {
            let a_spec = a.or(config.get_str("a")?).unwrap_or_else(|| "3,5,7".into());
            let base = input::parse_base(&a_spec).map_err(CliError::Config)?;
            echo.insert("a".into(), a_spec);
            let cf = match c.or(config.get_str("c")?) {
                Some(c_spec) => {
                    let seeds = input::parse_seeds(&c_spec).map_err(CliError::Config)?;
                    echo.insert("c".into(), c_spec);
                    CounterexampleCf::new(base, 64, &seeds)
                        .map_err(|e| CliError::Config(e.to_string()))?
                }
                None => {
                    echo.insert("c".into(), "1=1/8;1/3=1/16;5/3=1/32".into());
                    CounterexampleCf::with_default_seeds(base, 64)
                        .map_err(|e| CliError::Config(e.to_string()))?
                }
            };
            ("counterexample", suites::counterexample_cases(&cf))
        }
        Command::Mc { law, sigma, a, n } => {
            let law_spec = law.or(config.get_str("law")?).unwrap_or_else(|| "sech".into());
            let law = parse_law(&law_spec)?;
            let sigma = match sigma {
                Some(s) => s,
                None => config.get_f64("sigma")?.unwrap_or(1.0),
            };
            if sigma < 0.0 {
                return Err(CliError::Config(format!("sigma must be nonnegative, got {sigma}")));
            }
            let a = match a {
                Some(v) => v,
                None => config.get_f64("a")?.unwrap_or(1.0),
            };
            let n = match n {
                Some(v) => v,
                None => config.get_u64("n")?.unwrap_or(200_000) as usize,
            };
            if n < 1000 {
                return Err(CliError::Config(format!(
                    "n must be at least 1000 for the two-sample test, got {n}"
                )));
            }
            echo.insert("law".into(), law_spec);
            echo.insert("sigma".into(), format!("{sigma}"));
            echo.insert("a".into(), format!("{a}"));
            echo.insert("n".into(), n.to_string());
            let mut cases = suites::mc_cases(law, sigma, a, n, &[seed]);
            if law == McLaw::Sech {
                cases.push(suites::sech_empirical_cf_case(sigma, n, seed));
            }
            ("mc", cases)
        }
        Command::Suite { all } => {
            let all = all || config.get_bool("all")?.unwrap_or(false);
            if !all {
                return Err(CliError::Config("suite requires `--all`".into()));
            }
            echo.insert("all".into(), "true".into());
            ("suite", suites::suite_all_cases(seed))
        }
    };

    let report = Report::new(suite_name, seed, echo, cases);
    let json = report.to_json();
    let exit_code = if report.passed() { 0 } else { 1 };
    let printed = match out {
        Some(path) => {
            fs::write(&path, json.as_bytes()).map_err(|e| {
                CliError::Config(format!("cannot write report to {}: {e}", path.display()))
            })?;
            None
        }
        None => Some(json),
    };
    Ok(RunOutput { report, printed, exit_code })
}
