//! `cicy`: exact invariants of rank 2 ACM bundles on complete intersection
//! Calabi-Yau threefolds.
//!
//! Every command is a thin wrapper over the library; no arithmetic lives
//! here. Identical arguments produce byte-identical output. Exit codes:
//! 0 success, 1 domain error, 2 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cicy_core::classify::{
    admissible_chern, splitting_range, verify_against_reference, ClassificationEntry,
    RowExistence,
};
use cicy_core::fixtures;
use cicy_core::grr::{acm_h0, chi_twisted, H0};
use cicy_core::interchange::ResolutionDoc;
use cicy_core::model::{make_cicy, Cicy, CompleteIntersection, FreeResolution};
use cicy_core::resolutions::{
    ag_curve_resolution, bundle_resolution, curve_resolution_from_bundle_quintic, degree_matrix,
    minimality_check, restrict_construction, AgCurveData, Minimality,
};

const SCHEMA: i64 = 1;

#[derive(Parser)]
#[command(
    name = "cicy",
    version,
    about = "Exact invariants of rank 2 ACM bundles on CICY threefolds",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the admissible Chern classes for one CICY type
    Classify {
        /// Hypersurface degrees, e.g. 2,4
        #[arg(long = "type", value_name = "D1,D2,...")]
        type_degrees: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate chi(E(n)) and h^0(E(n)) over a twist range
    Chi {
        #[arg(long = "type", value_name = "D1,D2,...")]
        type_degrees: String,
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[arg(long, allow_negative_numbers = true)]
        c2: i64,
        /// Single twist `n` or inclusive range `a..b`
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        twists: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build resolutions from generator degrees
    Resolve {
        #[command(subcommand)]
        kind: ResolveKind,
    },
    /// Restrict a bundle resolution to a hypersurface section
    Restrict {
        /// Resolution interchange file (JSON)
        #[arg(long)]
        file: PathBuf,
        /// CICY type of the hypersurface section
        #[arg(long = "type", value_name = "D1,D2,...")]
        type_degrees: String,
        /// Degree of the section inside the ambient fourfold
        #[arg(long)]
        hypersurface: i64,
    },
    /// Regenerate every fixture and cross-check the classification
    Verify {
        /// Restrict to one group (quintic, x8, x9, x12, quartic, chi,
        /// classification, restrictions)
        #[arg(long)]
        group: Option<String>,
        /// Alternative fixture corpus (JSON, same schema as the builtin)
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ResolveKind {
    /// Three-step self-dual resolution of an AG curve ideal
    Curve(ResolveCurveArgs),
    /// Two-term resolution of the paired rank 2 bundle
    Bundle(ResolveBundleArgs),
    /// Quintic inverse: curve resolution from the bundle side
    FromBundle(ResolveFromBundleArgs),
}

#[derive(Args)]
struct ResolveCurveArgs {
    /// Generator degrees, e.g. 2,2,2,4,4
    #[arg(long, value_name = "R1,R2,...")]
    gens: String,
    /// CICY type; the ambient is this type minus one --hypersurface degree
    #[arg(long = "type", value_name = "D1,D2,...")]
    type_degrees: Option<String>,
    #[arg(long)]
    hypersurface: Option<i64>,
    /// Show negative degree-matrix entries instead of clamping to 0
    #[arg(long)]
    raw: bool,
    /// Write the interchange document here
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ResolveBundleArgs {
    #[arg(long, value_name = "R1,R2,...")]
    gens: String,
    /// Degree of the threefold inside the ambient fourfold
    #[arg(long)]
    hypersurface: i64,
    #[arg(long = "type", value_name = "D1,D2,...")]
    type_degrees: Option<String>,
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ResolveFromBundleArgs {
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    /// Non-free twists of L0 (odd count) or negated twists of L1 (even)
    #[arg(long, value_name = "R1,R2,...", allow_hyphen_values = true)]
    gens: String,
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

struct CommandResult {
    exit_code: u8,
    payload: String,
}

impl CommandResult {
    fn ok(payload: String) -> Self {
        Self {
            exit_code: 0,
            payload,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(result) => {
            print!("{}", result.payload);
            ExitCode::from(result.exit_code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<CommandResult, CliError> {
    match command {
        Command::Classify {
            type_degrees,
            format,
        } => cmd_classify(&type_degrees, format),
        Command::Chi {
            type_degrees,
            c1,
            c2,
            twists,
            format,
        } => cmd_chi(&type_degrees, c1, c2, &twists, format),
        Command::Resolve { kind } => match kind {
            ResolveKind::Curve(args) => cmd_resolve_curve(args),
            ResolveKind::Bundle(args) => cmd_resolve_bundle(args),
            ResolveKind::FromBundle(args) => cmd_resolve_from_bundle(args),
        },
        Command::Restrict {
            file,
            type_degrees,
            hypersurface,
        } => cmd_restrict(&file, &type_degrees, hypersurface),
        Command::Verify { group, fixtures } => cmd_verify(group.as_deref(), fixtures.as_deref()),
    }
}

fn parse_int_list(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("invalid {what} list {s:?}")))
        })
        .collect()
}

fn parse_twist_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("invalid twist range {s:?}, expected N or A..B"));
    if let Some((a, b)) = s.split_once("..") {
        let lo = a.trim().parse::<i64>().map_err(|_| bad())?;
        let hi = b.trim().parse::<i64>().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n = s.trim().parse::<i64>().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn parse_cicy(type_degrees: &str) -> Result<Cicy, CliError> {
    let degrees = parse_int_list(type_degrees, "degree")?;
    make_cicy(&degrees).map_err(|e| CliError::Domain(e.to_string()))
}

/// The ambient for resolve commands: the CICY type minus one copy of the
/// hypersurface degree, or `P^4` when no type is given.
fn resolve_ambient(
    type_degrees: Option<&str>,
    hypersurface: Option<i64>,
) -> Result<CompleteIntersection, CliError> {
    match type_degrees {
        None => Ok(CompleteIntersection::projective_space(4)),
        Some(t) => {
            let d = hypersurface.ok_or_else(|| {
                CliError::Usage("--type needs --hypersurface to pick the ambient".to_string())
            })?;
            let x = parse_cicy(t)?;
            x.fourfold_through(d)
                .map_err(|e| CliError::Domain(e.to_string()))
        }
    }
}

fn existence_line(e: &RowExistence) -> String {
    match e {
        RowExistence::Proven { note } => format!("proven -- {note}"),
        RowExistence::ProvenExcept { exceptions, note } => {
            let list: Vec<String> = exceptions.iter().map(|v| v.to_string()).collect();
            format!("proven except c2 in {{{}}} -- {note}", list.join(", "))
        }
        RowExistence::Open { note } => format!("open -- {note}"),
    }
}

fn existence_word(e: &RowExistence) -> String {
    match e {
        RowExistence::Proven { .. } => "proven".to_string(),
        RowExistence::ProvenExcept { exceptions, .. } => {
            let list: Vec<String> = exceptions.iter().map(|v| v.to_string()).collect();
            format!("proven except c2 in {{{}}}", list.join(", "))
        }
        RowExistence::Open { .. } => "open".to_string(),
    }
}

fn classify_text(x: &Cicy, entries: &[ClassificationEntry]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "classification for {x} (r = {}, k = {})\n",
        x.r(),
        x.k()
    ));
    let (lo, hi) = splitting_range();
    out.push_str(&format!(
        "normalized indecomposable rank 2 ACM bundles need {lo} <= c1 <= {hi}\n\n"
    ));

    let rows: Vec<(String, String, String)> = entries
        .iter()
        .map(|e| {
            (
                e.c1.to_string(),
                e.c2.to_string(),
                existence_word(&e.existence),
            )
        })
        .collect();
    let c2_width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(2);
    out.push_str(&format!("{:>4}  {:<c2_width$}  existence\n", "c1", "c2"));
    for (c1, c2, word) in &rows {
        out.push_str(&format!("{c1:>4}  {c2:<c2_width$}  {word}\n"));
    }
    out.push('\n');

    for e in entries {
        let c2_desc = match &e.c2 {
            cicy_core::classify::C2Values::Set { .. } => format!("c2 in {}", e.c2),
            cicy_core::classify::C2Values::UpperBounded { .. } => e.c2.to_string(),
        };
        out.push_str(&format!("c1 = {}: {c2_desc}\n", e.c1));
        out.push_str(&format!("  existence: {}\n", existence_line(&e.existence)));
        for s in &e.derivation {
            out.push_str(&format!("  - {}  [{}]", s.text, s.source.label()));
            out.push('\n');
        }
        out.push('\n');
    }
    let report = verify_against_reference(x);
    out.push_str(&format!(
        "reference table cross-check: {}\n",
        if report.all_agree() {
            "all rows agree"
        } else {
            "DISCREPANCY"
        }
    ));
    out
}

fn cmd_classify(type_degrees: &str, format: Format) -> Result<CommandResult, CliError> {
    let x = parse_cicy(type_degrees)?;
    let entries = admissible_chern(&x);
    match format {
        Format::Text => Ok(CommandResult::ok(classify_text(&x, &entries))),
        Format::Json => {
            let report = verify_against_reference(&x);
            let value = serde_json::json!({
                "schema": SCHEMA,
                "cicy": { "degrees": x.degrees(), "r": x.r(), "k": x.k(),
                          "ambient_dim": x.base().ambient_dim() },
                "entries": entries,
                "reference_agrees": report.all_agree(),
            });
            Ok(CommandResult::ok(pretty(&value)))
        }
    }
}

fn cmd_chi(
    type_degrees: &str,
    c1: i64,
    c2: i64,
    twists: &str,
    format: Format,
) -> Result<CommandResult, CliError> {
    let x = parse_cicy(type_degrees)?;
    let (lo, hi) = parse_twist_range(twists)?;
    let anchors = std::collections::BTreeMap::new();
    let mut rows = Vec::new();
    for n in lo..=hi {
        let (tc1, tc2) = cicy_core::grr::twist_chern(c1, c2, n, x.r());
        let chi = chi_twisted(&x, c1, c2, n).map_err(|e| CliError::Domain(e.to_string()))?;
        let h0 = acm_h0(&x, c1, c2, n, &anchors).map_err(|e| CliError::Domain(e.to_string()))?;
        rows.push((n, tc1, tc2, chi, h0));
    }
    match format {
        Format::Text => {
            let mut out = format!("chi/h^0 for class ({c1}, {c2}) on {x}\n");
            out.push_str(&format!(
                "{:>5} {:>7} {:>9} {:>9} {:>13}\n",
                "n", "c1(n)", "c2(n)", "chi", "h^0"
            ));
            for (n, tc1, tc2, chi, h0) in rows {
                out.push_str(&format!(
                    "{n:>5} {tc1:>7} {tc2:>9} {chi:>9} {:>13}\n",
                    h0.to_string()
                ));
            }
            Ok(CommandResult::ok(out))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .into_iter()
                .map(|(n, tc1, tc2, chi, h0)| {
                    serde_json::json!({
                        "n": n, "c1": tc1, "c2": tc2, "chi": chi,
                        "h0": match h0 { H0::Known(v) => serde_json::json!(v),
                                         H0::Undetermined => serde_json::Value::Null },
                    })
                })
                .collect();
            let value = serde_json::json!({
                "schema": SCHEMA,
                "cicy": { "degrees": x.degrees(), "r": x.r(), "k": x.k() },
                "class": { "c1": c1, "c2": c2 },
                "rows": rows,
            });
            Ok(CommandResult::ok(pretty(&value)))
        }
    }
}

fn emit_doc(res: &FreeResolution, path: Option<&Path>) -> Result<String, CliError> {
    match path {
        None => Ok(String::new()),
        Some(p) => {
            let doc = ResolutionDoc::from_resolution(res);
            std::fs::write(p, doc.to_json())
                .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", p.display())))?;
            Ok(format!("emitted {}\n", p.display()))
        }
    }
}

fn resolution_result(
    res: &FreeResolution,
    header: String,
    extra: Vec<String>,
    emit: Option<&Path>,
    format: Format,
) -> Result<CommandResult, CliError> {
    let emitted = emit_doc(res, emit)?;
    match format {
        Format::Text => {
            let mut out = header;
            out.push('\n');
            out.push_str(&res.arrow_display());
            out.push('\n');
            for line in extra {
                out.push_str(&line);
                out.push('\n');
            }
            out.push_str(&emitted);
            Ok(CommandResult::ok(out))
        }
        Format::Json => {
            let doc = ResolutionDoc::from_resolution(res);
            let mut out = serde_json::to_string_pretty(&doc).expect("serializes");
            out.push('\n');
            Ok(CommandResult::ok(out))
        }
    }
}

fn cmd_resolve_curve(args: ResolveCurveArgs) -> Result<CommandResult, CliError> {
    let gens = parse_int_list(&args.gens, "generator")?;
    let ambient = resolve_ambient(args.type_degrees.as_deref(), args.hypersurface)?;
    let data = AgCurveData::new(&gens).map_err(|e| CliError::Domain(e.to_string()))?;
    let res =
        ag_curve_resolution(&gens, &ambient).map_err(|e| CliError::Domain(e.to_string()))?;
    let mut extra = Vec::new();
    let matrix = degree_matrix(&data);
    extra.push(if args.raw {
        "degree matrix (signed entry degrees):".to_string()
    } else {
        "degree matrix (negative entries shown as 0, --raw for signed):".to_string()
    });
    extra.extend(matrix.render(!args.raw));
    resolution_result(
        &res,
        format!(
            "AG curve ideal over {ambient} (generators {:?}, b = {}, socle c = {})",
            data.gen_degrees(),
            data.b(),
            data.socle()
        ),
        extra,
        args.emit.as_deref(),
        args.format,
    )
}

fn minimality_line(res: &FreeResolution) -> String {
    match minimality_check(res) {
        Minimality::Minimal => "minimality: forced (consecutive terms share no twist)".to_string(),
        Minimality::Indeterminate => {
            "minimality: indeterminate (consecutive terms share a twist)".to_string()
        }
    }
}

fn cmd_resolve_bundle(args: ResolveBundleArgs) -> Result<CommandResult, CliError> {
    let gens = parse_int_list(&args.gens, "generator")?;
    let ambient = resolve_ambient(args.type_degrees.as_deref(), Some(args.hypersurface))?;
    let (res, c1) = bundle_resolution(&gens, args.hypersurface, &ambient)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let extra = vec![
        format!("c1 = c - d = {c1}"),
        minimality_line(&res),
    ];
    resolution_result(
        &res,
        format!(
            "rank 2 bundle over {ambient} (hypersurface degree {})",
            args.hypersurface
        ),
        extra,
        args.emit.as_deref(),
        args.format,
    )
}

fn cmd_resolve_from_bundle(args: ResolveFromBundleArgs) -> Result<CommandResult, CliError> {
    let gens = parse_int_list(&args.gens, "generator")?;
    let res = curve_resolution_from_bundle_quintic(args.c1, &gens)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    resolution_result(
        &res,
        format!(
            "curve ideal over P^4 recovered from the bundle side (c1 = {})",
            args.c1
        ),
        Vec::new(),
        args.emit.as_deref(),
        args.format,
    )
}

fn cmd_restrict(
    file: &Path,
    type_degrees: &str,
    hypersurface: i64,
) -> Result<CommandResult, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
    let doc =
        ResolutionDoc::from_json(&text).map_err(|e| CliError::Usage(format!("{e}")))?;
    let res = doc
        .to_resolution()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    let x = parse_cicy(type_degrees)?;
    let out = restrict_construction(&res, hypersurface, &x)
        .map_err(|e| CliError::Domain(e.to_string()))?;

    let mut payload = String::new();
    payload.push_str(&format!("input: {}\n", res.arrow_display()));
    payload.push_str(&format!(
        "input chern on {x}: (c1, c2) = ({}, {})\n",
        out.input_chern.0, out.input_chern.1
    ));
    payload.push_str(&format!(
        "four-term restriction: 0 -> E({}) -> {} -> {} -> E -> 0\n",
        out.four_term.kernel_twist, out.four_term.middle[0], out.four_term.middle[1]
    ));
    payload.push_str(&format!(
        "split sequence: 0 -> E({}) -> {} -> F({}) -> 0\n",
        out.four_term.kernel_twist, out.split_kernel, out.normalization_shift
    ));
    payload.push_str(&format!("new rank: {}\n", out.new_rank));
    payload.push_str(&format!(
        "normalization shift: {}\n",
        out.normalization_shift
    ));
    match out.inferred_chern {
        Some((c1, c2)) => {
            payload.push_str(&format!("inferred chern of F: (c1, c2) = ({c1}, {c2})\n"));
        }
        None => {
            payload.push_str(&format!(
                "F has rank {}: either indecomposable or a direct sum containing \
                 an indecomposable bundle of rank {}\n",
                out.new_rank,
                out.new_rank - 1
            ));
        }
    }
    Ok(CommandResult::ok(payload))
}

fn cmd_verify(group: Option<&str>, fixtures_path: Option<&Path>) -> Result<CommandResult, CliError> {
    if let Some(g) = group {
        if !fixtures::GROUPS.contains(&g) {
            return Err(CliError::Usage(format!(
                "unknown group {g:?}; expected one of {}",
                fixtures::GROUPS.join(", ")
            )));
        }
    }
    let set = match fixtures_path {
        None => fixtures::builtin(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            fixtures::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    let report = fixtures::run_verification(&set, group);
    let mut payload = String::new();
    for o in &report.outcomes {
        if o.passed {
            payload.push_str(&format!("PASS {} :: {}\n", o.group, o.id));
        } else {
            payload.push_str(&format!("FAIL {} :: {} -- {}\n", o.group, o.id, o.detail));
        }
    }
    let failed = report.outcomes.iter().filter(|o| !o.passed).count();
    payload.push_str(&format!(
        "{} checks, {} failed\n",
        report.outcomes.len(),
        failed
    ));
    Ok(CommandResult {
        exit_code: u8::from(failed > 0),
        payload,
    })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
