//! Command-line front end.
//!
//! One thin binary dispatches the deterministic computations. Exit codes are
//! part of the contract so property suites can assert structural claims
//! directly:
//!
//! * `0` — success / property holds;
//! * `1` — input error (unreadable file, schema violation, wrong input kind);
//! * `2` — property fails; the report carries a witness;
//! * `3` — inapplicable (degenerate center, not 2-step, non-injective `j`).
//!
//! Reports are JSON with rational strings and include the tool version and a
//! digest of the canonical serialization of the input, so identical inputs
//! give byte-identical reports. Geodesics are emitted as CSV.

use crate::catalog::{example_catalog, CatalogEntry, ExampleId, ALL_EXAMPLES};
use crate::construct::{from_data_set, ConstructError};
use crate::geodesic::{geodesic_with, GeodesicOptions};
use crate::group::{lattice_closure_check, LatticeClosure};
use crate::io::{
    self, metric_algebra_json, parse_input_str, parsed_input_json, InputError, ParsedInput,
};
use crate::matrix::basis_vec;
use crate::metgeo::{Flatness, GeometryError, MetricNilLieAlgebra};
use crate::nilalg::NilLieAlgebra;
use crate::rat::{f64_to_rat, fmt_rat, rat_to_f64, Rat};
use crate::reductive::{
    corank_decomposition, is_ad_invariant, isotropy_algebra, naturally_reductive_check,
    AdInvariance, ReductiveError, ReductivityFailure, Verdict,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::PathBuf;

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_FAILS: i32 = 2;
const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nilred",
    version,
    about = "Exact geometry of pseudo-Riemannian 2-step nilpotent Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input JSON file (algebra with optional metric, data set, or lattice).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Catalog example id to use instead of --input.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Write the primary artifact here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Central part of the initial velocity, ambient coordinates
    /// (comma-separated).
    #[arg(long, allow_hyphen_values = true)]
    pub z0: String,
    /// Complement part of the initial velocity, ambient coordinates
    /// (comma-separated).
    #[arg(long, allow_hyphen_values = true)]
    pub v0: String,
    #[arg(long, default_value_t = 0.0)]
    pub t_start: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 0.1)]
    pub t_step: f64,
    /// Absolute tolerance for the quadrature of the central component.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Lattice specification file ({"scaling": [...]}).
    #[arg(long)]
    pub lattice: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Follow-up check to run on the constructed algebra
    /// (report | adinv | reductive).
    #[arg(long)]
    pub then: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct CatalogArgs {
    /// Example id; omit to list all ids.
    #[arg(long)]
    pub catalog: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate an input file.
    Validate(InputArgs),
    /// Structure report: center, commutator, corank, step, signature.
    Report(InputArgs),
    /// Curvature tensor on all basis triples.
    Curvature(InputArgs),
    /// Sectional curvatures of the coordinate planes.
    Sectional(InputArgs),
    /// Ricci tensor and Ricci transformation.
    Ricci(InputArgs),
    /// Sample a geodesic through the identity; emits CSV.
    Geodesic(GeodesicArgs),
    /// Decide natural reductivity (recovers the Lie algebra (z, τ)).
    Reductive(InputArgs),
    /// Isotropy algebra of the isometries fixing the identity.
    Isotropy(InputArgs),
    /// Exact ad-invariance check.
    Adinv(InputArgs),
    /// Corank decomposition and modified-cotangent normal form.
    Corank(InputArgs),
    /// Build the 2-step metric algebra of a data set.
    Construct(ConstructArgs),
    /// Lattice closure check for a diagonal scaling.
    Lattice(LatticeArgs),
    /// Resolve a catalog example, or list the known ids.
    Catalog(CatalogArgs),
}

/// Outcome of one command: the envelope report, the optional primary
/// artifact to write, and the exit code.
struct Outcome {
    report: Value,
    /// When set, this is what `--output` receives (otherwise the report is).
    artifact: Option<String>,
    exit: i32,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    /// The file was well-formed but the object violates a domain invariant;
    /// the contract maps this to the property-failure exit code with a
    /// structured payload rather than a plain input error.
    #[error("domain validation failed: {message}")]
    DomainValidation { digest: String, message: String },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    let (name, output, outcome) = match command {
        Command::Validate(args) => ("validate", args.output.clone(), cmd_validate(&args)),
        Command::Report(args) => ("report", args.output.clone(), cmd_report(&args)),
        Command::Curvature(args) => ("curvature", args.output.clone(), cmd_curvature(&args)),
        Command::Sectional(args) => ("sectional", args.output.clone(), cmd_sectional(&args)),
        Command::Ricci(args) => ("ricci", args.output.clone(), cmd_ricci(&args)),
        Command::Geodesic(args) => (
            "geodesic",
            args.input.output.clone(),
            cmd_geodesic(&args),
        ),
        Command::Reductive(args) => ("reductive", args.output.clone(), cmd_reductive(&args)),
        Command::Isotropy(args) => ("isotropy", args.output.clone(), cmd_isotropy(&args)),
        Command::Adinv(args) => ("adinv", args.output.clone(), cmd_adinv(&args)),
        Command::Corank(args) => ("corank", args.output.clone(), cmd_corank(&args)),
        Command::Construct(args) => (
            "construct",
            args.input.output.clone(),
            cmd_construct(&args),
        ),
        Command::Lattice(args) => ("lattice", args.input.output.clone(), cmd_lattice(&args)),
        Command::Catalog(args) => ("catalog", args.output.clone(), cmd_catalog(&args)),
    };
    match outcome {
        Ok(outcome) => finish(name, &output, outcome),
        // invalid domain objects fail the property, they are not input noise
        Err(CliError::DomainValidation { digest, message }) => finish(
            name,
            &output,
            Outcome {
                report: base_report(
                    &digest,
                    json!({
                        "valid": false,
                        "error": "domain_validation",
                        "detail": message,
                    }),
                ),
                artifact: None,
                exit: EXIT_FAILS,
            },
        ),
        Err(e) => Err(e),
    }
}

fn finish(name: &str, output: &Option<PathBuf>, outcome: Outcome) -> Result<i32, CliError> {
    let envelope = json!({
        "tool": "nilred",
        "version": env!("CARGO_PKG_VERSION"),
        "command": name,
        "report": outcome.report,
    });
    let envelope_text = serde_json::to_string_pretty(&envelope).expect("json");
    match (&outcome.artifact, output) {
        (Some(artifact), Some(path)) => {
            std::fs::write(path, artifact).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            println!("{envelope_text}");
        }
        (Some(artifact), None) => {
            println!("{artifact}");
        }
        (None, Some(path)) => {
            std::fs::write(path, &envelope_text).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
        }
        (None, None) => {
            println!("{envelope_text}");
        }
    }
    Ok(outcome.exit)
}

fn digest_of(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Loads the input object from --input or --catalog.
fn load_input(args: &InputArgs) -> Result<(ParsedInput, String), CliError> {
    match (&args.input, &args.catalog) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either --input or --catalog, not both".into(),
        )),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            match parse_input_str(&text) {
                Ok(parsed) => {
                    let digest = digest_of(&parsed_input_json(&parsed).to_string());
                    Ok((parsed, digest))
                }
                Err(InputError::Schema(e)) => Err(CliError::Input(e.to_string())),
                // no canonical object exists, so digest the raw bytes
                Err(InputError::Domain(message)) => Err(CliError::DomainValidation {
                    digest: digest_of(&text),
                    message,
                }),
            }
        }
        (None, Some(id)) => {
            let id: ExampleId = id
                .parse()
                .map_err(|e: crate::catalog::UnknownExample| CliError::Input(e.to_string()))?;
            let parsed = match example_catalog(id) {
                CatalogEntry::Metric(m) => ParsedInput::Metric(m),
                CatalogEntry::DataSet(d) => ParsedInput::DataSet(d),
            };
            let digest = digest_of(&parsed_input_json(&parsed).to_string());
            Ok((parsed, digest))
        }
        (None, None) => Err(CliError::Input(
            "an input is required: --input <file> or --catalog <id>".into(),
        )),
    }
}

fn want_metric(input: ParsedInput) -> Result<MetricNilLieAlgebra, CliError> {
    match input {
        ParsedInput::Metric(m) => Ok(m),
        other => Err(CliError::Input(format!(
            "this command needs an algebra with a metric, got {}",
            other.kind()
        ))),
    }
}

fn base_report(digest: &str, result: Value) -> Value {
    json!({"input_digest": digest, "result": result})
}

/// Maps the geometric applicability errors to exit 3 instead of a hard error.
fn applicability(e: &GeometryError) -> Option<&'static str> {
    match e {
        GeometryError::DegenerateCenter => Some("degenerate_center"),
        GeometryError::NotTwoStep { .. } => Some("not_two_step"),
        _ => None,
    }
}

fn inapplicable_outcome(digest: &str, reason: &str, detail: String) -> Outcome {
    Outcome {
        report: base_report(
            digest,
            json!({"applicable": false, "reason": reason, "detail": detail}),
        ),
        artifact: None,
        exit: EXIT_INAPPLICABLE,
    }
}

fn cmd_validate(args: &InputArgs) -> Result<Outcome, CliError> {
    // schema errors already became CliError::Input in load_input; reaching
    // here means the object is fully valid
    let (input, digest) = load_input(args)?;
    let summary = match &input {
        ParsedInput::Metric(m) => json!({
            "kind": "metric_algebra",
            "dim": m.dim(),
            "step": m.alg().step(),
            "signature": m.metric().signature(),
        }),
        ParsedInput::Algebra(a) => json!({
            "kind": "algebra",
            "dim": a.dim(),
            "step": a.step(),
        }),
        ParsedInput::DataSet(d) => json!({
            "kind": "data_set",
            "dim_g": d.g.dim(),
            "dim_v": d.dim_v(),
        }),
        ParsedInput::Lattice(l) => json!({
            "kind": "lattice",
            "rank": l.scaling.len(),
        }),
    };
    Ok(Outcome {
        report: base_report(&digest, json!({"valid": true, "summary": summary})),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_report(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let (alg, signature) = match &input {
        ParsedInput::Metric(m) => (m.alg().clone(), Some(m.metric().signature())),
        ParsedInput::Algebra(a) => (a.clone(), None),
        other => {
            return Err(CliError::Input(format!(
                "report needs an algebra, got {}",
                other.kind()
            )))
        }
    };
    let report = alg.structure_report();
    let mut result = json!({
        "dim": alg.dim(),
        "step": report.step,
        "two_step": alg.is_two_step(),
        "center_dim": report.center_basis.cols(),
        "commutator_dim": report.commutator_basis.cols(),
        "corank": report.corank,
        "center_basis": io::matrix_json_pub(&report.center_basis),
        "commutator_basis": io::matrix_json_pub(&report.commutator_basis),
        // rational structure constants: the simply connected group admits a
        // cocompact lattice (Mal'cev criterion)
        "malcev_lattice_exists": true,
    });
    if let Some(sig) = signature {
        result["signature"] = json!([sig.0, sig.1, sig.2]);
    }
    Ok(Outcome {
        report: base_report(&digest, result),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_curvature(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let n = m.dim();
    let mut nonzero = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = m.curvature(&basis_vec(n, i), &basis_vec(n, j), &basis_vec(n, k));
                if !crate::matrix::vec_is_zero(&r) {
                    nonzero.push(json!({
                        "i": i + 1, "j": j + 1, "k": k + 1,
                        "value": io::vector_json(&r),
                    }));
                }
            }
        }
    }
    let flat = matches!(m.flatness_check(), Flatness::Flat);
    Ok(Outcome {
        report: base_report(&digest, json!({"flat": flat, "nonzero": nonzero})),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_sectional(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let n = m.dim();
    let mut planes = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let entry = match m.sectional_curvature(&basis_vec(n, i), &basis_vec(n, j)) {
                Ok(k) => json!({"i": i + 1, "j": j + 1, "K": fmt_rat(&k)}),
                Err(GeometryError::DegeneratePlane) => {
                    json!({"i": i + 1, "j": j + 1, "degenerate": true})
                }
                Err(e) => return Err(CliError::Input(e.to_string())),
            };
            planes.push(entry);
        }
    }
    Ok(Outcome {
        report: base_report(&digest, json!({"planes": planes})),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_ricci(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let ricci = m.ricci();
    Ok(Outcome {
        report: base_report(
            &digest,
            json!({
                "ric": io::matrix_json_pub(&ricci.form),
                "transform": io::matrix_json_pub(&ricci.transform),
            }),
        ),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn parse_float_csv(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("{what}: {s:?} is not a number")))
        })
        .collect()
}

fn cmd_geodesic(args: &GeodesicArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(&args.input)?;
    let m = want_metric(input)?;
    let s = match m.center_splitting() {
        Ok(s) => s,
        Err(e) => {
            if let Some(reason) = applicability(&e) {
                return Ok(inapplicable_outcome(&digest, reason, e.to_string()));
            }
            return Err(CliError::Input(e.to_string()));
        }
    };
    let n = m.dim();
    let z0_ambient = parse_float_csv(&args.z0, "--z0")?;
    let v0_ambient = parse_float_csv(&args.v0, "--v0")?;
    if z0_ambient.len() != n || v0_ambient.len() != n {
        return Err(CliError::Input(format!(
            "--z0 and --v0 must have {n} ambient coordinates"
        )));
    }
    // exact split, rejecting vectors outside the advertised subspaces
    let to_rat = |v: &[f64], what: &str| -> Result<Vec<Rat>, CliError> {
        v.iter()
            .map(|&x| f64_to_rat(x).ok_or_else(|| CliError::Input(format!("{what}: non-finite"))))
            .collect()
    };
    let (z0_z, z0_v) = s.split(&to_rat(&z0_ambient, "--z0")?);
    if !crate::matrix::vec_is_zero(&z0_v) {
        return Err(CliError::Input(
            "--z0 must lie in the center of the algebra".into(),
        ));
    }
    let (v0_z, v0_v) = s.split(&to_rat(&v0_ambient, "--v0")?);
    if !crate::matrix::vec_is_zero(&v0_z) {
        return Err(CliError::Input(
            "--v0 must lie in v = z^perp (its central part is nonzero)".into(),
        ));
    }
    if args.t_step <= 0.0 || args.t_end < args.t_start {
        return Err(CliError::Input(
            "need --t-step > 0 and --t-end >= --t-start".into(),
        ));
    }
    let mut grid = Vec::new();
    let mut k = 0usize;
    loop {
        let t = args.t_start + k as f64 * args.t_step;
        if t > args.t_end + 1e-12 {
            break;
        }
        grid.push(t);
        k += 1;
    }
    let opts = GeodesicOptions {
        quad_tol: args.tolerance,
        ..GeodesicOptions::default()
    };
    let z0: Vec<f64> = z0_z.iter().map(rat_to_f64).collect();
    let v0: Vec<f64> = v0_v.iter().map(rat_to_f64).collect();
    let samples = geodesic_with(&m, &s, &z0, &v0, &grid, &opts)
        .map_err(|e| CliError::Input(e.to_string()))?;

    // CSV: t, central position coordinates, v position coordinates,
    // ambient velocity, residual
    let p = s.z_basis.cols();
    let kv = s.v_basis.cols();
    let mut csv = String::new();
    let mut header = vec!["t".to_string()];
    header.extend((1..=p).map(|i| format!("z{i}")));
    header.extend((1..=kv).map(|i| format!("v{i}")));
    header.extend((1..=n).map(|i| format!("vel{i}")));
    header.push("residual".to_string());
    let _ = writeln!(csv, "{}", header.join(","));
    let basis = s.z_basis.hstack(&s.v_basis);
    let basis_inv = basis.inverse().expect("z ⊕ v basis");
    let inv_f: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|c| rat_to_f64(basis_inv.at(r, c))).collect())
        .collect();
    let mut max_residual = 0f64;
    for sample in &samples {
        let coords: Vec<f64> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| inv_f[r][c] * sample.position.coords[c])
                    .sum()
            })
            .collect();
        let mut row = vec![format!("{}", sample.t)];
        row.extend(coords.iter().map(|x| format!("{x}")));
        row.extend(sample.velocity.iter().map(|x| format!("{x}")));
        row.push(format!("{}", sample.residual));
        let _ = writeln!(csv, "{}", row.join(","));
        max_residual = max_residual.max(sample.residual);
    }
    Ok(Outcome {
        report: base_report(
            &digest,
            json!({
                "samples": samples.len(),
                "max_residual": max_residual,
            }),
        ),
        artifact: Some(csv),
        exit: EXIT_OK,
    })
}

fn cmd_reductive(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let report = match naturally_reductive_check(&m) {
        Ok(r) => r,
        Err(ReductiveError::Geometry(e)) => {
            if let Some(reason) = applicability(&e) {
                return Ok(inapplicable_outcome(&digest, reason, e.to_string()));
            }
            return Err(CliError::Input(e.to_string()));
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let (verdict, witness, exit) = match &report.verdict {
        Verdict::NaturallyReductive => ("naturally_reductive", Value::Null, EXIT_OK),
        Verdict::Fails(ReductivityFailure::NotClosed { i, j }) => (
            "fails",
            json!({"not_closed_pair": [i + 1, j + 1]}),
            EXIT_FAILS,
        ),
        Verdict::Fails(ReductivityFailure::TauNotSkew { index }) => (
            "fails",
            json!({"tau_not_skew_index": index + 1}),
            EXIT_FAILS,
        ),
        Verdict::Inapplicable { reason } => {
            return Ok(inapplicable_outcome(&digest, "j_not_injective", reason.clone()));
        }
    };
    let tau = report.tau.as_ref().map(|t| {
        let mut entries = Vec::new();
        for i in 0..t.dim() {
            for j in i + 1..t.dim() {
                let coeffs: serde_json::Map<String, Value> = t
                    .bracket_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| ((k + 1).to_string(), Value::String(fmt_rat(c))))
                    .collect();
                if !coeffs.is_empty() {
                    entries.push(json!({"i": i + 1, "j": j + 1, "coeffs": coeffs}));
                }
            }
        }
        Value::Array(entries)
    });
    Ok(Outcome {
        report: base_report(
            &digest,
            json!({
                "verdict": verdict,
                "j_injective": report.j_injective,
                "closed_under_bracket": report.closed_under_bracket,
                "tau_skew": report.tau_skew,
                "tau_brackets": tau,
                "witness": witness,
            }),
        ),
        artifact: None,
        exit,
    })
}

fn cmd_isotropy(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let iso = match isotropy_algebra(&m) {
        Ok(iso) => iso,
        Err(ReductiveError::Geometry(e)) => {
            if let Some(reason) = applicability(&e) {
                return Ok(inapplicable_outcome(&digest, reason, e.to_string()));
            }
            return Err(CliError::Input(e.to_string()));
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let basis: Vec<Value> = iso
        .basis
        .iter()
        .map(|(a, b)| {
            json!({
                "a": io::matrix_json_pub(a),
                "b": io::matrix_json_pub(b),
            })
        })
        .collect();
    Ok(Outcome {
        report: base_report(&digest, json!({"dim": iso.dim, "basis": basis})),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_adinv(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let (result, exit) = match is_ad_invariant(&m) {
        AdInvariance::Yes => (json!({"ad_invariant": true, "witness": null}), EXIT_OK),
        AdInvariance::No { witness: (i, j, k) } => (
            json!({"ad_invariant": false, "witness": [i + 1, j + 1, k + 1]}),
            EXIT_FAILS,
        ),
    };
    Ok(Outcome {
        report: base_report(&digest, result),
        artifact: None,
        exit,
    })
}

fn cmd_corank(args: &InputArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(args)?;
    let m = want_metric(input)?;
    let nf = match corank_decomposition(&m) {
        Ok(nf) => nf,
        Err(ReductiveError::NotAdInvariant { witness: (i, j, k) }) => {
            return Ok(Outcome {
                report: base_report(
                    &digest,
                    json!({
                        "error": "not_ad_invariant",
                        "witness": [i + 1, j + 1, k + 1],
                    }),
                ),
                artifact: None,
                exit: EXIT_FAILS,
            });
        }
        Err(ReductiveError::Geometry(e)) => {
            if let Some(reason) = applicability(&e) {
                return Ok(inapplicable_outcome(&digest, reason, e.to_string()));
            }
            return Err(CliError::Input(e.to_string()));
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let factor = nf.factor.as_ref().map(|f| {
        json!({
            "z_basis": io::matrix_json_pub(&f.z_basis),
            "v_basis": io::matrix_json_pub(&f.v_basis),
            "rho": f.rho.iter().map(io::matrix_json_pub).collect::<Vec<_>>(),
            "rebuilt": metric_algebra_json(&f.rebuilt),
        })
    });
    Ok(Outcome {
        report: base_report(
            &digest,
            json!({
                "corank": nf.corank,
                "z_tilde_basis": io::matrix_json_pub(&nf.z_tilde_basis),
                "n_tilde_basis": io::matrix_json_pub(&nf.n_tilde_basis),
                "factor": factor,
            }),
        ),
        artifact: None,
        exit: EXIT_OK,
    })
}

fn cmd_construct(args: &ConstructArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(&args.input)?;
    let ds = match input {
        ParsedInput::DataSet(ds) => ds,
        other => {
            return Err(CliError::Input(format!(
                "construct needs a data set, got {}",
                other.kind()
            )))
        }
    };
    let m = match from_data_set(&ds) {
        Ok(m) => m,
        Err(ConstructError::InvalidDataSet(violations)) => {
            return Ok(Outcome {
                report: base_report(
                    &digest,
                    json!({
                        "error": "invalid_data_set",
                        "violations": format!("{violations:?}"),
                    }),
                ),
                artifact: None,
                exit: EXIT_FAILS,
            });
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let artifact = serde_json::to_string_pretty(&metric_algebra_json(&m)).expect("json");
    let mut result = json!({
        "dim": m.dim(),
        "signature": m.metric().signature(),
        "constructed": metric_algebra_json(&m),
    });
    if let Some(then) = &args.then {
        let sub = match then.as_str() {
            "adinv" => match is_ad_invariant(&m) {
                AdInvariance::Yes => json!({"ad_invariant": true}),
                AdInvariance::No { witness: (i, j, k) } => {
                    json!({"ad_invariant": false, "witness": [i+1, j+1, k+1]})
                }
            },
            "reductive" => match naturally_reductive_check(&m) {
                Ok(r) => json!({"verdict": format!("{:?}", r.verdict)}),
                Err(e) => json!({"error": e.to_string()}),
            },
            "report" => {
                let rep = m.alg().structure_report();
                json!({
                    "step": rep.step,
                    "center_dim": rep.center_basis.cols(),
                    "corank": rep.corank,
                })
            }
            other => {
                return Err(CliError::Input(format!(
                    "unknown --then check {other:?}; expected report, adinv or reductive"
                )))
            }
        };
        result["then"] = json!({"check": then, "result": sub});
    }
    Ok(Outcome {
        report: base_report(&digest, result),
        artifact: Some(artifact),
        exit: EXIT_OK,
    })
}

fn cmd_lattice(args: &LatticeArgs) -> Result<Outcome, CliError> {
    let (input, digest) = load_input(&args.input)?;
    let alg: NilLieAlgebra = match input {
        ParsedInput::Metric(m) => m.alg().clone(),
        ParsedInput::Algebra(a) => a,
        other => {
            return Err(CliError::Input(format!(
                "lattice needs an algebra, got {}",
                other.kind()
            )))
        }
    };
    let text = std::fs::read_to_string(&args.lattice).map_err(|source| CliError::Read {
        path: args.lattice.clone(),
        source,
    })?;
    let spec = match parse_input_str(&text) {
        Ok(ParsedInput::Lattice(spec)) => spec,
        Ok(other) => {
            return Err(CliError::Input(format!(
                "--lattice file must contain a lattice spec, got {}",
                other.kind()
            )))
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    match lattice_closure_check(&alg, &spec) {
        Ok(LatticeClosure::Closed) => Ok(Outcome {
            report: base_report(&digest, json!({"closed": true})),
            artifact: None,
            exit: EXIT_OK,
        }),
        Ok(LatticeClosure::NotClosed { i, j }) => Ok(Outcome {
            report: base_report(
                &digest,
                json!({"closed": false, "witness_pair": [i + 1, j + 1]}),
            ),
            artifact: None,
            exit: EXIT_FAILS,
        }),
        Err(crate::group::GroupError::NotTwoStep { step }) => Ok(inapplicable_outcome(
            &digest,
            "not_two_step",
            format!("step is {step}"),
        )),
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn cmd_catalog(args: &CatalogArgs) -> Result<Outcome, CliError> {
    match &args.catalog {
        None => {
            let ids: Vec<&str> = ALL_EXAMPLES.iter().map(|id| id.name()).collect();
            Ok(Outcome {
                report: json!({"examples": ids}),
                artifact: None,
                exit: EXIT_OK,
            })
        }
        Some(id) => {
            let id: ExampleId = id
                .parse()
                .map_err(|e: crate::catalog::UnknownExample| CliError::Input(e.to_string()))?;
            let value = match example_catalog(id) {
                CatalogEntry::Metric(m) => metric_algebra_json(&m),
                CatalogEntry::DataSet(d) => io::data_set_json(&d),
            };
            let artifact = serde_json::to_string_pretty(&value).expect("json");
            Ok(Outcome {
                report: json!({"id": id.name(), "object": value}),
                artifact: Some(artifact),
                exit: EXIT_OK,
            })
        }
    }
}
