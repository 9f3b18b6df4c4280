//! The `shellkit` command line.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 unrealizable input,
//! 3 verification failure.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use shellkit_core::monomial::{compress, first_closure_failure};
use shellkit_core::realization::{extract, realize_h_vector, witness_check};
use shellkit_core::shelling::{build_shelling_sigma, naive_sigma, revlex_shelling};
use shellkit_core::verify::{layouts_up_to, verify_table};
use shellkit_core::{CapVector, FVector, VerificationReport, VertexLayout};

use crate::io::{
    caps_from_json, monomials_to_json, multicomplex_from_json, RealizationJson, ReportJson,
    TableJson,
};
use crate::render::{
    render_monomials, render_realization, render_report, render_table, tuple, Labels, Style,
};
use crate::sweep::{construction_sweep, realization_sweep, CompressedFamily};
use crate::{golden, Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNREALIZABLE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "shellkit",
    version,
    about = "Shellings of skeleta of Λ(l;p₁,…,p_m) and h-vector realization"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a shelling of skel_d(Λ) with restriction sizes and σ.
    Shelling(ShellingArgs),
    /// Build a shellable subcomplex whose h-vector is a given F-vector.
    Realize(RealizeArgs),
    /// Run the brute-force oracles on files, sweeps or the bundled references.
    Verify(VerifyArgs),
    /// Compress an F-vector into a revlex-initial monomial set.
    Compress(CompressArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    /// Number of free vertices.
    #[arg(long = "l", default_value_t = 0)]
    pub l: usize,
    /// Part sizes, comma-separated (may be empty).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub parts: String,
    /// Vertex ids by position: 1..l are free, then each part's vertices in turn.
    #[arg(long)]
    pub order: Option<String>,
}

impl LayoutArgs {
    pub fn build(&self) -> Result<VertexLayout> {
        let parts = parse_counts(&self.parts)?;
        let parts: Vec<usize> = parts.into_iter().map(|p| p as usize).collect();
        Ok(match &self.order {
            Some(o) => {
                let order: Vec<usize> = parse_counts(o)?.into_iter().map(|p| p as usize).collect();
                VertexLayout::with_order(self.l, &parts, &order)?
            }
            None => VertexLayout::new(self.l, &parts)?,
        })
    }
}

#[derive(Debug, Args)]
pub struct ShellingArgs {
    #[command(flatten)]
    pub layout: LayoutArgs,
    #[arg(long)]
    pub d: usize,
    /// List facets in reverse-lex order instead of the recursive shelling.
    #[arg(long)]
    pub revlex: bool,
    /// Assign σ by rank within each |T| class (implies --revlex).
    #[arg(long)]
    pub naive_sigma: bool,
    /// Display labels for positions 1..n, comma-separated.
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[command(flatten)]
    pub layout: LayoutArgs,
    #[arg(long)]
    pub d: usize,
    /// F-vector: `1,2,2,1`, a JSON array, or a file holding one.
    #[arg(
        long,
        conflicts_with = "multicomplex",
        required_unless_present = "multicomplex"
    )]
    pub f: Option<String>,
    /// Compressed multicomplex as JSON exponent arrays, inline or a file.
    #[arg(long)]
    pub multicomplex: Option<String>,
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Shelling table JSON file.
    #[arg(long)]
    pub table: Option<String>,
    /// Realization JSON file.
    #[arg(long)]
    pub realization: Option<String>,
    /// Check every layout with at most N vertices.
    #[arg(long, value_name = "N")]
    pub sweep: Option<usize>,
    /// Seed for sampled F-vectors in --sweep.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Compare against the bundled reference tables.
    #[arg(long, alias = "paper-tables")]
    pub reference_tables: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    /// F-vector: `1,2,2,1`, a JSON array, or a file holding one.
    #[arg(long)]
    pub f: String,
    /// Caps: `2,2`, with `inf` for unbounded, or a JSON array using null.
    #[arg(long)]
    pub caps: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Inline text, or the contents of the named file. A leading `@` forces a file.
fn load(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok(std::fs::read_to_string(path)?);
    }
    let t = arg.trim_start();
    if !t.starts_with('[') && !t.starts_with('{') && Path::new(arg).is_file() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    Ok(arg.to_string())
}

/// `1,2,3`, `[1,2,3]` or an empty string.
pub fn parse_counts(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    if t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    t.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<u64>()
                .map_err(|_| Error::Input(format!("not a non-negative integer: {x:?}")))
        })
        .collect()
}

/// `3,2,inf` or `[3,2,null]`.
pub fn parse_caps(s: &str) -> Result<CapVector> {
    let t = s.trim();
    let caps: Vec<Option<u32>> = if t.starts_with('[') {
        serde_json::from_str(t)?
    } else {
        t.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| match x {
                "inf" | "∞" | "null" => Ok(None),
                _ => x
                    .parse::<u32>()
                    .map(Some)
                    .map_err(|_| Error::Input(format!("not a cap: {x:?}"))),
            })
            .collect::<Result<_>>()?
    };
    Ok(caps_from_json(&caps))
}

fn labels(arg: &Option<String>, n: usize) -> Result<Labels> {
    match arg {
        None => Ok(Labels::positions(n)),
        Some(s) => {
            let list: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
            Labels::custom(list, n).map_err(Error::Input)
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn exit_code(e: &Error) -> i32 {
    use shellkit_core::Error as E;
    match e {
        Error::Core(E::NotRealizable { .. } | E::SliceOverflow { .. }) => EXIT_UNREALIZABLE,
        _ => EXIT_USAGE,
    }
}

fn unrealizable_note(e: &Error, f: &FVector, caps: &CapVector) -> String {
    use shellkit_core::Error as E;
    match e {
        Error::Core(E::NotRealizable { degree }) => format!(
            "F = {} is not realizable in S{caps}: the compressed set is not divisor-closed in degree {degree}",
            tuple(f.counts())
        ),
        Error::Core(E::SliceOverflow {
            degree,
            requested,
            available,
        }) => format!(
            "F = {} is not realizable in S{caps}: degree {degree} asks for {requested} monomials but only {available} exist",
            tuple(f.counts())
        ),
        other => other.to_string(),
    }
}

struct Outcome {
    stdout: String,
    stderr: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

fn cmd_shelling(a: &ShellingArgs, style: Style) -> Result<Outcome> {
    let layout = a.layout.build()?;
    layout.check_d(a.d)?;
    let labels = labels(&a.labels, layout.n())?;
    let table = if a.naive_sigma {
        naive_sigma(&revlex_shelling(&layout, a.d)?, &layout.caps(a.d))?
    } else if a.revlex {
        revlex_shelling(&layout, a.d)?
    } else {
        build_shelling_sigma(&layout, a.d)?
    };
    Ok(Outcome::ok(match a.format {
        Format::Text => render_table(&table, &labels, style),
        Format::Json => json(&TableJson::from(&table))?,
    }))
}

fn cmd_realize(a: &RealizeArgs, style: Style) -> Result<Outcome> {
    let layout = a.layout.build()?;
    layout.check_d(a.d)?;
    let labels = labels(&a.labels, layout.n())?;
    let caps = layout.caps(a.d);
    let result = match (&a.f, &a.multicomplex) {
        (Some(f), _) => {
            let f = FVector::new(parse_counts(&load(f)?)?);
            match realize_h_vector(&layout, a.d, &f) {
                Ok(r) => r,
                Err(e) => {
                    let e = Error::Core(e);
                    return Ok(Outcome {
                        stdout: String::new(),
                        stderr: unrealizable_note(&e, &f, &caps) + "\n",
                        code: exit_code(&e),
                    });
                }
            }
        }
        (None, Some(m)) => {
            let members: Vec<Vec<u32>> = serde_json::from_str(&load(m)?)?;
            let m = multicomplex_from_json(&members, caps)?;
            extract(&layout, a.d, &m)?
        }
        (None, None) => {
            return Err(Error::Input(
                "one of --f or --multicomplex is required".into(),
            ))
        }
    };
    Ok(Outcome::ok(match a.format {
        Format::Text => render_realization(&result, &labels, style),
        Format::Json => json(&RealizationJson::from(&result))?,
    }))
}

#[derive(Serialize)]
struct SweepJson {
    max_n: usize,
    instances: usize,
    realizations: usize,
    passed: bool,
    failures: Vec<ReportJson>,
    realization_failures: Vec<String>,
}

/// Sampled F-vectors per instance when the compressed family is larger.
const SWEEP_EXHAUSTIVE_LIMIT: u128 = 1000;
const SWEEP_SAMPLES: usize = 100;

fn sweep(max_n: usize, seed: u64) -> Result<SweepJson> {
    let layouts = layouts_up_to(max_n);
    let summary = construction_sweep(&layouts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut realizations = 0;
    let mut realization_failures = Vec::new();
    for (l, parts) in &layouts {
        let layout = VertexLayout::new(*l, parts)?;
        for d in 1..=layout.max_d() {
            let fam = CompressedFamily::new(&layout.caps(d), d);
            let fs = fam
                .all(SWEEP_EXHAUSTIVE_LIMIT)
                .unwrap_or_else(|| (0..SWEEP_SAMPLES).map(|_| fam.sample(&mut rng)).collect());
            let (n, failure) = realization_sweep(&layout, d, &fs)?;
            realizations += n;
            if let Some(msg) = failure {
                realization_failures.push(format!(
                    "{}: {msg}",
                    shellkit_core::verify::describe(&layout, d)
                ));
            }
        }
    }
    Ok(SweepJson {
        max_n,
        instances: summary.instances,
        realizations,
        passed: summary.passed() && realization_failures.is_empty(),
        failures: summary.failures.iter().map(ReportJson::from).collect(),
        realization_failures,
    })
}

fn cmd_verify(a: &VerifyArgs, style: Style) -> Result<Outcome> {
    if a.table.is_none() && a.realization.is_none() && a.sweep.is_none() && !a.reference_tables {
        return Err(Error::Input(
            "nothing to verify: pass --table, --realization, --sweep or --reference-tables".into(),
        ));
    }
    let mut reports: Vec<(VerificationReport, usize)> = Vec::new();
    if let Some(path) = &a.table {
        let t: TableJson = serde_json::from_str(&load(path)?)?;
        let table = t.build()?;
        reports.push((verify_table(&table), table.layout.n()));
    }
    if let Some(path) = &a.realization {
        let r: RealizationJson = serde_json::from_str(&load(path)?)?;
        let result = r.build()?;
        reports.push((witness_check(&result), result.table.layout.n()));
    }
    if a.reference_tables {
        reports.push((golden::reference_report()?, 12));
    }
    let sweep = a.sweep.map(|n| sweep(n, a.seed)).transpose()?;

    let passed =
        reports.iter().all(|(r, _)| r.all_passed()) && sweep.as_ref().is_none_or(|s| s.passed);
    let stdout = match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                passed: bool,
                reports: Vec<ReportJson>,
                #[serde(skip_serializing_if = "Option::is_none")]
                sweep: Option<&'a SweepJson>,
            }
            json(&Out {
                passed,
                reports: reports.iter().map(|(r, _)| ReportJson::from(r)).collect(),
                sweep: sweep.as_ref(),
            })?
        }
        Format::Text => {
            let mut s = String::new();
            for (r, n) in &reports {
                s.push_str(&render_report(r, &Labels::positions(*n), style));
            }
            if let Some(sw) = &sweep {
                s.push_str(&format!(
                    "sweep n ≤ {}: {} instances, {} realizations, {}\n",
                    sw.max_n,
                    sw.instances,
                    sw.realizations,
                    if sw.passed { "all passed" } else { "FAILED" }
                ));
                for f in &sw.failures {
                    s.push_str(&format!("  FAIL {}\n", f.instance));
                    for c in f.checks.iter().filter(|c| !c.passed) {
                        let detail = c
                            .counterexample
                            .as_ref()
                            .map_or("", |cx| cx.detail.as_str());
                        s.push_str(&format!("    {}: {detail}\n", c.name));
                    }
                }
                for f in &sw.realization_failures {
                    s.push_str(&format!("  FAIL {f}\n"));
                }
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

fn cmd_compress(a: &CompressArgs) -> Result<Outcome> {
    use shellkit_core::Error as E;
    let f = FVector::new(parse_counts(&load(&a.f)?)?);
    let caps = parse_caps(&a.caps)?;
    let unrealizable = |e: E| Outcome {
        stdout: String::new(),
        stderr: unrealizable_note(&Error::Core(e), &f, &caps) + "\n",
        code: EXIT_UNREALIZABLE,
    };
    let members = match compress(&f, &caps) {
        Ok(m) => m,
        Err(e @ E::SliceOverflow { .. }) => return Ok(unrealizable(e)),
        Err(e) => return Err(e.into()),
    };
    if let Some(degree) = first_closure_failure(&members) {
        return Ok(unrealizable(E::NotRealizable { degree }));
    }
    Ok(Outcome::ok(match a.format {
        Format::Text => render_monomials(&members) + "\n",
        Format::Json => json(&monomials_to_json(&members))?,
    }))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &config.command {
        Command::Shelling(a) => cmd_shelling(a, style),
        Command::Realize(a) => cmd_realize(a, style),
        Command::Verify(a) => cmd_verify(a, style),
        Command::Compress(a) => cmd_compress(a),
    };
    match outcome {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            let _ = err.write_all(o.stderr.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
