//! Command-line driver. The binary is a thin wrapper around [`main_entry`].

pub mod parse;
mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::gf::{make_tower, FieldTower};
use crate::mrd::spread_code;
use crate::orbits::orbit_decomposition;
use crate::petit::{sandler_isomorphic, CheckMode, PetitAlgebra};
use crate::skewpoly::SkewRing;

pub use report::{classify, count, ClassificationReport, CountReport, OrbitsReport};

/// Default bound on q^{nm} for exhaustive suites.
pub const DEFAULT_ENVELOPE: u64 = 1 << 16;
/// Bound on q^m for the enumeration oracles of `count` and `orbits`.
pub const ORACLE_ENVELOPE: u64 = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "petitlab",
    version,
    about = "Petit algebras, isotopy orbits and MRD codes over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct TowerArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// F = F_q with q = p^h.
    #[arg(long, default_value_t = 1)]
    pub h: u32,
    /// K = F_{q^n}.
    #[arg(long)]
    pub n: u32,
    /// σ(c) = c^{q^s}.
    #[arg(long = "sigma-exp", default_value_t = 1)]
    pub sigma_exp: u32,
    /// Defining polynomial of K over F_p, coefficients low degree first,
    /// comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "conway_table")]
    pub modulus: Option<Vec<u32>>,
    /// File of lines `p d c_0 c_1 ... c_d` giving the modulus of F_{p^d}.
    #[arg(long = "conway-table")]
    pub conway_table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    /// Run beyond the envelope, replacing exhaustive checks by sampled ones.
    #[arg(long = "allow-large")]
    pub allow_large: bool,
    /// Pairs or codewords checked per sampled verification
    #[arg(long, default_value_t = 20000)]
    pub samples: usize,
    /// ChaCha8 seed for sampling
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify Petit division algebras of degree m into orbits.
    Classify {
        #[command(flatten)]
        tower: TowerArgs,
        /// Degree of the central polynomials
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        envelope: EnvelopeArgs,
        /// JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// One CSV row per orbit.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Orbit counts by closed form, Burnside and enumeration.
    Count {
        #[command(flatten)]
        tower: TowerArgs,
        /// Degree of the central polynomials
        #[arg(long)]
        m: usize,
        /// Skip the enumeration oracles beyond the envelope
        #[arg(long = "allow-large")]
        allow_large: bool,
        /// JSON report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G-orbits on the monic irreducible polynomials of degree m over F.
    Orbits {
        #[command(flatten)]
        tower: TowerArgs,
        /// Degree of the central polynomials
        #[arg(long)]
        m: usize,
        /// JSON report
        #[arg(long)]
        out: Option<PathBuf>,
        /// One CSV row per orbit
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Bound of a skew polynomial.
    Mclm {
        #[command(flatten)]
        tower: TowerArgs,
        /// Skew polynomial in t
        #[arg(long)]
        f: String,
    },
    /// Similarity witness for two irreducible skew polynomials.
    Similar {
        #[command(flatten)]
        tower: TowerArgs,
        /// Skew polynomial in t
        #[arg(long)]
        f: String,
        /// Skew polynomial in t
        #[arg(long)]
        g: String,
    },
    /// Spread-set code of S_f.
    Code {
        #[command(flatten)]
        tower: TowerArgs,
        /// Skew polynomial in t
        #[arg(long)]
        f: String,
        #[command(flatten)]
        envelope: EnvelopeArgs,
        /// Code export (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isomorphism between the algebras of t^m - c and t^m - d.
    Sandler {
        #[command(flatten)]
        tower: TowerArgs,
        /// Constant term c of t^m - c
        #[arg(long)]
        c: String,
        /// Constant term d of t^m - d
        #[arg(long)]
        d: String,
        /// Degree of t^m - c
        #[arg(long)]
        m: usize,
    },
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CrossCheck(_) | Error::VerificationFailed(_) => 2,
        Error::EnvelopeExceeded(_) => 3,
        _ => 1,
    }
}

fn read_conway(path: &Path, p: u32, degree: u32) -> Result<Vec<u32>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|w| w.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        if nums.len() < 3 || nums.len() != nums[1] as usize + 3 {
            return Err(Error::Parse(format!(
                "{}:{}: expected `p d c_0 ... c_d`",
                path.display(),
                lineno + 1
            )));
        }
        if nums[0] == p && nums[1] == degree {
            return Ok(nums[2..].to_vec());
        }
    }
    Err(Error::InvalidParameters(format!(
        "{} has no entry for p = {p}, degree {degree}",
        path.display()
    )))
}

pub fn build_tower(args: &TowerArgs) -> Result<Arc<FieldTower>> {
    let modulus = match (&args.modulus, &args.conway_table) {
        (Some(m), _) => Some(m.clone()),
        (None, Some(path)) => Some(read_conway(path, args.p, args.h * args.n)?),
        (None, None) => None,
    };
    Ok(Arc::new(make_tower(
        args.p,
        args.h,
        args.n,
        args.sigma_exp,
        modulus,
    )?))
}

/// q^{e}, saturating.
fn field_power(tower: &FieldTower, e: usize) -> u64 {
    tower.q().checked_pow(e as u32).unwrap_or(u64::MAX)
}

/// Exhaustive within the envelope, sampled beyond it when allowed.
pub fn check_mode(tower: &FieldTower, m: usize, env: &EnvelopeArgs) -> Result<CheckMode> {
    let size = field_power(tower, tower.n() as usize * m);
    if size <= DEFAULT_ENVELOPE {
        Ok(CheckMode::Exhaustive)
    } else if env.allow_large {
        Ok(CheckMode::Sampled {
            samples: env.samples,
            seed: env.seed,
        })
    } else {
        Err(Error::EnvelopeExceeded(format!(
            "q^(nm) = {size} exceeds {DEFAULT_ENVELOPE}; pass --allow-large for sampled checks"
        )))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn write_csv<T: serde::Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match cli.command {
        Command::Classify {
            tower,
            m,
            envelope,
            out: json,
            csv,
        } => {
            let k = build_tower(&tower)?;
            let mode = check_mode(&k, m, &envelope)?;
            let report = classify(&k, m, mode)?;
            writeln!(out, "{}", report.summary()).map_err(io)?;
            if let Some(path) = json {
                write_file(&path, &to_json(&report))?;
            }
            if let Some(path) = csv {
                write_csv(&path, &report.csv_rows())?;
            }
            report.check()
        }
        Command::Count {
            tower,
            m,
            allow_large,
            out: json,
        } => {
            let k = build_tower(&tower)?;
            let report = count(&k, m, allow_large)?;
            writeln!(out, "{}", report.summary()).map_err(io)?;
            if let Some(path) = json {
                write_file(&path, &to_json(&report))?;
            }
            report.check()
        }
        Command::Orbits {
            tower,
            m,
            out: json,
            csv,
        } => {
            let k = build_tower(&tower)?;
            if m < 1 {
                return Err(Error::InvalidParameters("m must be at least 1".into()));
            }
            let size = field_power(&k, m);
            if size > ORACLE_ENVELOPE {
                return Err(Error::EnvelopeExceeded(format!(
                    "q^m = {size} exceeds {ORACLE_ENVELOPE}"
                )));
            }
            let decomposition = orbit_decomposition(&k, m);
            let report = OrbitsReport::new(&k, &decomposition);
            writeln!(out, "{}", report.summary()).map_err(io)?;
            if let Some(path) = json {
                write_file(&path, &to_json(&report))?;
            }
            if let Some(path) = csv {
                write_csv(&path, &report.orbits)?;
            }
            Ok(())
        }
        Command::Mclm { tower, f } => {
            let k = build_tower(&tower)?;
            let ring = SkewRing::new(&k);
            let f = ring.monic(&parse::parse_skew_poly(&k, &f)?);
            writeln!(out, "{}", ring.mclm(&f)?.format(&k)).map_err(io)
        }
        Command::Similar { tower, f, g } => {
            let k = build_tower(&tower)?;
            let ring = SkewRing::new(&k);
            let f = ring.monic(&parse::parse_skew_poly(&k, &f)?);
            let g = ring.monic(&parse::parse_skew_poly(&k, &g)?);
            match ring.similar(&f, &g)? {
                Some(u) => {
                    if !ring.rem(&ring.mul(&g, &u), &f)?.is_zero() {
                        return Err(Error::CrossCheck("witness fails g*u = 0 mod_r f".into()));
                    }
                    writeln!(out, "u = {}", u.format(&k)).map_err(io)?;
                    writeln!(out, "verified: g*u = 0 mod_r f").map_err(io)
                }
                None => writeln!(
                    out,
                    "not similar: bounds {} and {} differ",
                    ring.mclm(&f)?.format(&k),
                    ring.mclm(&g)?.format(&k)
                )
                .map_err(io),
            }
        }
        Command::Code {
            tower,
            f,
            envelope,
            out: json,
        } => {
            let k = build_tower(&tower)?;
            let f = parse::parse_skew_poly(&k, &f)?;
            let mode = check_mode(&k, f.degree().unwrap_or(0), &envelope)?;
            if mode != CheckMode::Exhaustive {
                return Err(Error::EnvelopeExceeded(
                    "the code command lists every codeword".into(),
                ));
            }
            let algebra = PetitAlgebra::new(k.clone(), &f)?;
            let code = spread_code(&algebra);
            let dist: Vec<String> = code
                .rank_distribution()
                .iter()
                .map(|(r, c)| format!("{r}:{c}"))
                .collect();
            let min = code.min_rank().map_or("-".to_string(), |d| d.to_string());
            writeln!(out, "codewords: {}", code.len()).map_err(io)?;
            writeln!(out, "matrix size: {}", code.size).map_err(io)?;
            writeln!(out, "minimum rank distance: {min}").map_err(io)?;
            writeln!(out, "rank distribution: {}", dist.join(" ")).map_err(io)?;
            writeln!(out, "MRD: {}", code.is_mrd()).map_err(io)?;
            if code.is_mrd() != algebra.is_division() {
                return Err(Error::CrossCheck(
                    "MRD property disagrees with irreducibility".into(),
                ));
            }
            if let Some(path) = json {
                write_file(&path, &(code.to_json(&k).to_string() + "\n"))?;
            }
            Ok(())
        }
        Command::Sandler { tower, c, d, m } => {
            let k = build_tower(&tower)?;
            let c = parse::parse_field_element(&k, &c)?;
            let d = parse::parse_field_element(&k, &d)?;
            match sandler_isomorphic(&k, c, d, m)? {
                Some(cert) => {
                    let check = match cert.check {
                        CheckMode::Exhaustive => "exhaustive".to_string(),
                        CheckMode::Sampled { samples, seed } => {
                            format!("sampled ({samples} pairs, seed {seed})")
                        }
                    };
                    writeln!(out, "alpha = {}", k.format(cert.alpha)).map_err(io)?;
                    writeln!(out, "r = {}", cert.r).map_err(io)?;
                    writeln!(out, "check: {check}").map_err(io)?;
                    writeln!(out, "verified: {}", cert.verified).map_err(io)?;
                    if cert.verified {
                        Ok(())
                    } else {
                        Err(Error::CrossCheck(
                            "the induced map is not multiplicative".into(),
                        ))
                    }
                }
                None => writeln!(out, "no (alpha, r) transports t^m - c to t^m - d").map_err(io),
            }
        }
    }
}

/// Parses `args`, runs the command and returns the exit status. Errors are
/// reported on stderr.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point of the binary; honours `PETITLAB_THREADS`.
pub fn main_entry() -> i32 {
    if let Some(n) = std::env::var("PETITLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with_args(std::env::args_os(), &mut lock)
}
