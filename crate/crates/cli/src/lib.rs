//! Command-line front end for `polydepth`.
//!
//! [`run`] takes the argument vector and writes the report to `out`; the
//! returned value is the process exit status:
//!
//! * `0` success,
//! * `1` malformed input or a failing verification suite,
//! * `2` no bound (or splitting length) applies; the failed hypotheses are
//!   still reported,
//! * `64` usage error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polydepth::depth::{best_bound, bound_with_rule, sl_of, BoundOutcome, DepthBoundReport};
use polydepth::finitegroup::{catalog, n1, FiniteGroup};
use polydepth::topology::{homology, universal_cover_homology, DegreeHomology, SpaceExpr};
use polydepth::verify::{self, Suite};
use polydepth::{Error, FgAbelianGroup, Pi1Descriptor, Rule, DEFAULT_CAP};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INAPPLICABLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "polydepth",
    version,
    about = "Depth bounds for finite polyhedra"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest finite group order searched exhaustively
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound the depth of the space described in a JSON file
    Bound {
        file: PathBuf,
        /// Evaluate one named rule instead of the best one
        #[arg(long)]
        rule: Option<String>,
    },
    /// Integral homology of a space
    Homology {
        file: PathBuf,
        /// Homology of the universal cover instead
        #[arg(long)]
        universal_cover: bool,
    },
    /// Splitting length of a group
    Sl {
        #[command(flatten)]
        source: SlSource,
        /// With --hirsch: the group has infinite cohomological dimension
        #[arg(long, requires = "hirsch")]
        cd_infinite: bool,
    },
    /// Run a built-in verification suite
    Verify {
        #[arg(value_parser = Suite::ALL.map(|s| s.name()))]
        suite: String,
    },
    /// List the built-in finite groups
    Catalog,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SlSource {
    /// Catalog group name, e.g. Z6, S3, Q8
    #[arg(long)]
    catalog: Option<String>,
    /// Cayley table file
    #[arg(long)]
    table: Option<PathBuf>,
    /// Abelian group in primary form, e.g. "Z^2 + Z/4"
    #[arg(long)]
    abelian: Option<String>,
    /// Free group of this rank
    #[arg(long)]
    free: Option<usize>,
    /// Elementary amenable group of this Hirsch length
    #[arg(long)]
    hirsch: Option<usize>,
}

/// What a failed command reports and how it exits.
enum Failure {
    Malformed(String),
    Inapplicable(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CdNotFinite
            | Error::NotFinitelyGenerated(_)
            | Error::DimensionNotTwo(_)
            | Error::RuleNotApplicable { .. }
            | Error::OrderExceedsCap { .. }
            | Error::UnsupportedConstruction(_)
            | Error::TorsionNotSupported => Failure::Inapplicable(vec![e.to_string()]),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::Bound { file, rule } => cmd_bound(&file, rule.as_deref(), cli.cap, format, out),
        Command::Homology {
            file,
            universal_cover,
        } => cmd_homology(&file, universal_cover, format, out),
        Command::Sl {
            source,
            cd_infinite,
        } => cmd_sl(&source, cd_infinite, cli.cap, format, out),
        Command::Verify { suite } => cmd_verify(&suite, cli.cap, format, out),
        Command::Catalog => cmd_catalog(cli.cap, format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Malformed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MALFORMED
        }
        Err(Failure::Inapplicable(reasons)) => {
            report_inapplicable(&reasons, format, out);
            EXIT_INAPPLICABLE
        }
    }
}

fn report_inapplicable(reasons: &[String], format: Format, out: &mut dyn Write) {
    match format {
        Format::Json => {
            let outcome = BoundOutcome::NoBoundApplicable {
                failed_hypotheses: reasons.to_vec(),
            };
            let _ = writeln!(out, "{}", to_json(&outcome));
        }
        Format::Text => {
            let _ = writeln!(out, "no bound applicable");
            for r in reasons {
                let _ = writeln!(out, "failed: {r}");
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn read_space(path: &Path) -> Result<SpaceExpr, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn cmd_bound(
    file: &Path,
    rule: Option<&str>,
    cap: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let space = read_space(file)?;
    let report = match rule {
        Some(name) => {
            let rule: Rule = name
                .parse()
                .map_err(|e: Error| Failure::Malformed(e.to_string()))?;
            bound_with_rule(&space, rule, cap)?
        }
        None => match best_bound(&space, cap) {
            BoundOutcome::Bound(r) => r,
            BoundOutcome::NoBoundApplicable { failed_hypotheses } => {
                return Err(Failure::Inapplicable(failed_hypotheses))
            }
        },
    };
    match format {
        Format::Json => writeln!(out, "{}", to_json(&report)),
        Format::Text => write!(out, "{}", render_report(&report)),
    }
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Malformed(format!("write failed: {e}"))
}

/// Text form of a report; the first line is `rule=<name> bound=<n>`.
pub fn render_report(r: &DepthBoundReport) -> String {
    let mut s = format!("rule={} bound={}\n", r.rule, r.bound);
    s += &format!("sl_pi1={}\n", r.sl_pi1);
    for (k, v) in &r.per_degree {
        s += &format!("degree {k}: {v}\n");
    }
    for a in &r.assumptions {
        s += &format!("assumption: {a}\n");
    }
    if let Some(d) = r.exact_depth {
        s += &format!("exact_depth={d}\n");
    }
    if let Some(p) = &r.provenance {
        s += &format!("provenance: {p}\n");
    }
    s
}

fn cmd_homology(file: &Path, cover: bool, format: Format, out: &mut dyn Write) -> CmdResult {
    let space = read_space(file)?;
    let profile = if cover {
        universal_cover_homology(&space)?
    } else {
        homology(&space)?
    };
    match format {
        Format::Json => writeln!(out, "{}", to_json(&profile)),
        Format::Text => profile
            .degrees
            .iter()
            .enumerate()
            .try_for_each(|(k, d)| match d {
                DegreeHomology::Finite(g) => writeln!(out, "H{k} = {g}"),
                DegreeHomology::NotFinitelyGenerated => {
                    writeln!(out, "H{k} = not finitely generated")
                }
            }),
    }
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SlReport {
    sl: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
}

fn cmd_sl(
    source: &SlSource,
    cd_infinite: bool,
    cap: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let malformed = |e: Error| Failure::Malformed(e.to_string());
    let descriptor = if let Some(name) = &source.catalog {
        Pi1Descriptor::Finite(catalog::by_name(name).map_err(malformed)?.group)
    } else if let Some(path) = &source.table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
        Pi1Descriptor::Finite(FiniteGroup::parse_table(&text).map_err(malformed)?)
    } else if let Some(s) = &source.abelian {
        Pi1Descriptor::FgAbelian(s.parse::<FgAbelianGroup>().map_err(malformed)?)
    } else if let Some(r) = source.free {
        Pi1Descriptor::free(r)
    } else if let Some(h) = source.hirsch {
        Pi1Descriptor::ElementaryAmenable {
            hirsch: h,
            cd_finite: !cd_infinite,
        }
    } else {
        unreachable!("clap requires one source")
    };

    let report = match &descriptor {
        Pi1Descriptor::Finite(g) => {
            let series = n1(g, cap)?;
            let witness = series
                .witness
                .iter()
                .map(|&h| catalog::subgroup_label(g, h))
                .collect();
            SlReport {
                sl: series.length,
                witness: Some(witness),
            }
        }
        other => SlReport {
            sl: sl_of(other, cap)?,
            witness: None,
        },
    };
    match format {
        Format::Json => writeln!(out, "{}", to_json(&report)),
        Format::Text => match &report.witness {
            Some(w) => writeln!(out, "sl={} witness={}", report.sl, w.join(">")),
            None => writeln!(out, "sl={}", report.sl),
        },
    }
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckJson<'a> {
    subject: &'a str,
    pass: bool,
    detail: &'a str,
}

fn cmd_verify(name: &str, cap: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let suite: Suite = name
        .parse()
        .map_err(|e: Error| Failure::Malformed(e.to_string()))?;
    let checks = verify::run(suite, cap).map_err(|e| Failure::Malformed(e.to_string()))?;
    match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| CheckJson {
                    subject: &c.subject,
                    pass: c.pass,
                    detail: &c.detail,
                })
                .collect();
            writeln!(out, "{}", to_json(&rows))
        }
        Format::Text => checks.iter().try_for_each(|c| {
            writeln!(out, "{} {suite} {} {}", status(c.pass), c.subject, c.detail)
        }),
    }
    .map_err(io_failure)?;
    Ok(if checks.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_MALFORMED
    })
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    name: String,
    order: usize,
    abelian: bool,
    sl: Option<usize>,
}

fn cmd_catalog(cap: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let entries: Vec<CatalogEntry> = catalog::all()
        .into_iter()
        .map(|c| CatalogEntry {
            order: c.group.order(),
            abelian: c.group.is_abelian(),
            sl: n1(&c.group, cap).ok().map(|s| s.length),
            name: c.name,
        })
        .collect();
    match format {
        Format::Json => writeln!(out, "{}", to_json(&entries)),
        Format::Text => entries.iter().try_for_each(|e| {
            let sl = e.sl.map_or_else(|| "-".to_string(), |s| s.to_string());
            let kind = if e.abelian { "abelian" } else { "nonabelian" };
            writeln!(out, "{} order={} {kind} sl={sl}", e.name, e.order)
        }),
    }
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}
