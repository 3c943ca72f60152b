//! `csgeo`: command-line front end for `cs-geometry`.
//!
//! Every subcommand writes JSON (default) or CSV to stdout and diagnostics to
//! stderr. Exit status is 0 on success, 1 when a verification fails and 2 on
//! usage or domain errors.

mod family;
mod output;
mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use cs_geometry::geometry::bergman::series_tail_bound;
use cs_geometry::geometry::diff::{FIRST_DERIVATIVE_STEP, SECOND_DERIVATIVE_STEP};
use cs_geometry::geometry::verify::{run_named, VerifyOptions};
use cs_geometry::geometry::{
    bergman_kernel, bergman_metric, fs_distance, scalar_curvature, KernelMode, MetricTensor,
};
use cs_geometry::projective::inner_product;
use cs_geometry::veronese::{hierarchy_chain, image_signature, VeroneseMap};
use cs_geometry::{Error, InnerProductSpace, StateVector};

use family::{Family, FamilyArgs};
use output::{complex_json, label_json, label_text, matrix_json, matrix_rows, num, Format, Output};

pub use parse::{complex, complex_vec, real_grid};

#[derive(Debug, Parser)]
#[command(
    name = "csgeo",
    version,
    about = "Coherent states, Veronese embeddings and their geometry"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for verification sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for metric-comparison verifications.
    #[arg(long, global = true, env = "CSGEO_TOL")]
    tol: Option<f64>,
    /// First-derivative step for pullbacks.
    #[arg(long = "fd-step", global = true, env = "CSGEO_FD_STEP")]
    fd_step: Option<f64>,
    /// Second-derivative step for curvature and Kähler potentials.
    #[arg(long = "second-step", global = true, env = "CSGEO_SECOND_STEP")]
    second_step: Option<f64>,
    /// Fock/disk truncation for Glauber, SU(1,1) and SU(1,k) families.
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Random points per verification report (default 50).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// JSON object of flag values; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

impl GlobalArgs {
    fn step(&self) -> f64 {
        self.fd_step.unwrap_or(FIRST_DERIVATIVE_STEP)
    }

    fn second_step(&self) -> f64 {
        self.second_step.unwrap_or(SECOND_DERIVATIVE_STEP)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Veronese image of a homogeneous point, with multi-index labels.
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        degree: u32,
        /// Base signature such as "-,+"; adds image signs and pseudo-norm.
        #[arg(long, allow_hyphen_values = true)]
        signature: Option<String>,
    },
    /// Amplitudes of a coherent state.
    Coherent(FamilyArgs),
    /// Hermitian metric g at a chart point (ds² = 2 Re g dζ dζ̄).
    Metric {
        #[command(flatten)]
        family: FamilyArgs,
        /// For fs/hyperbolic: differentiate the Kähler potential instead of the closed form.
        #[arg(long)]
        potential: bool,
    },
    /// Real metric induced on a family's real parameters.
    Pullback(FamilyArgs),
    /// Scalar curvature of a family's induced metric at a chart point.
    Curvature(FamilyArgs),
    /// Fubini-Study distance between two rays.
    Distance {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Bergman kernel of the unit disk.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        /// Second argument; defaults to zeta.
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        /// Use the truncated series with this many terms as well.
        #[arg(long)]
        terms: Option<u32>,
        /// Also report the metric coefficient d²/dζdζ̄ ln K_B at zeta.
        #[arg(long)]
        metric: bool,
    },
    /// Run a named verification group, or all of them.
    Verify {
        #[arg(default_value = "all")]
        name: String,
    },
    /// Tabulate a quantity over a parameter grid.
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// Parameter to vary.
        #[arg(long)]
        vary: String,
        /// Comma-separated values, or start:stop:count.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, value_enum)]
        quantity: Quantity,
    },
    /// Dimensions of iterated quadratic Veronese embeddings.
    Hierarchy {
        #[arg(long)]
        k0: u64,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Quantity {
    Norm,
    Metric,
    Curvature,
    Distance,
}

const SUBCOMMANDS: [&str; 10] = [
    "embed",
    "coherent",
    "metric",
    "pullback",
    "curvature",
    "distance",
    "kernel",
    "verify",
    "sweep",
    "hierarchy",
];

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Splices the `--config` file's entries in right after the subcommand,
/// skipping any flag that is also given explicitly.
fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut path = None;
    for (i, arg) in argv.iter().enumerate() {
        let arg = arg.to_string_lossy();
        if arg == "--config" {
            path = argv.get(i + 1).map(PathBuf::from);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
    let Value::Object(map) = value else {
        return Err(format!("config {} must be a JSON object", path.display()));
    };
    let given = |flag: &str| {
        argv.iter().any(|a| {
            let a = a.to_string_lossy();
            a == flag || a.starts_with(&format!("{flag}="))
        })
    };
    let mut tokens = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if given(&flag) {
            continue;
        }
        let scalar = |v: &Value| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(format!("config key '{key}': unsupported value {other}")),
        };
        match &value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => tokens.push(flag),
            Value::Array(items) => {
                tokens.push(flag);
                tokens.push(
                    items
                        .iter()
                        .map(scalar)
                        .collect::<Result<Vec<_>, _>>()?
                        .join(","),
                );
            }
            v => {
                tokens.push(flag);
                tokens.push(scalar(v)?);
            }
        }
    }
    let at = argv
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(argv.len(), |i| i + 1);
    let mut out = argv;
    out.splice(at..at, tokens.into_iter().map(OsString::from));
    Ok(out)
}

/// Runs `csgeo` with `argv` (including the program name) and returns the
/// process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    let format = cli.global.format;
    let result = execute(&cli, err).and_then(|(output, ok)| {
        output
            .write(format, out)
            .map_err(|e| Failure::Usage(format!("write failed: {e}")))?;
        if ok {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(Output, bool), Failure> {
    let g = &cli.global;
    let ok = |o: Output| Ok((o, true));
    match &cli.command {
        Command::Embed {
            point,
            degree,
            signature,
        } => ok(embed(point, *degree, signature.as_deref())?),
        Command::Coherent(args) => ok(coherent(args, g)?),
        Command::Metric { family, potential } => ok(metric(family, *potential, g)?),
        Command::Pullback(args) => ok(pullback(args, g)?),
        Command::Curvature(args) => ok(curvature(args, g)?),
        Command::Distance { v, w } => {
            let v = StateVector::new(complex_vec(v).map_err(usage)?)?;
            let w = StateVector::new(complex_vec(w).map_err(usage)?)?;
            let d = fs_distance(&v, &w)?;
            ok(Output::new(json!(d), &["distance"], vec![vec![num(d)]]))
        }
        Command::Kernel {
            zeta,
            chi,
            terms,
            metric,
        } => ok(kernel(zeta, chi.as_deref(), *terms, *metric, g)?),
        Command::Verify { name } => verify(name, g, err),
        Command::Sweep {
            family,
            vary,
            values,
            quantity,
        } => ok(sweep(family, vary, values, *quantity, g)?),
        Command::Hierarchy { k0, depth } => {
            let chain = hierarchy_chain(*k0, *depth)?;
            let rows = chain
                .iter()
                .enumerate()
                .map(|(i, k)| vec![i.to_string(), k.to_string()])
                .collect();
            ok(Output::new(json!(chain), &["step", "k"], rows))
        }
    }
}

fn embed(point: &str, degree: u32, signature: Option<&str>) -> Result<Output, Failure> {
    let p = StateVector::new(complex_vec(point).map_err(usage)?)?;
    let map = VeroneseMap::new(p.len(), degree)?;
    let image = map.embed(&p)?;
    let signs = match signature {
        Some(text) => {
            let base: InnerProductSpace = text.parse()?;
            if base.dim() != p.len() {
                return Err(usage(format!(
                    "signature has {} axes, point has {}",
                    base.dim(),
                    p.len()
                )));
            }
            Some((image_signature(&base, degree)?, base))
        }
        None => None,
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for (i, (label, z)) in map.labels().iter().zip(image.amplitudes()).enumerate() {
        let mut entry = json!({ "label": label_json(label), "re": z.re, "im": z.im });
        let mut row = vec![label_text(label), num(z.re), num(z.im)];
        if let Some((sig, _)) = &signs {
            entry["sign"] = json!(sig.signs()[i]);
            row.push(sig.signs()[i].to_string());
        }
        entries.push(entry);
        rows.push(row);
    }
    let mut doc = json!({ "degree": degree, "dimension": image.len(), "entries": entries });
    if let Some((sig, base)) = &signs {
        doc["positive"] = json!(sig.positive_count());
        doc["negative"] = json!(sig.negative_count());
        doc["pseudo_norm"] = json!(inner_product(&image, &image, sig)?.re);
        doc["base_pseudo_norm"] = json!(inner_product(&p, &p, base)?.re);
    }
    let header: &[&str] = if signs.is_some() {
        &["label", "re", "im", "sign"]
    } else {
        &["label", "re", "im"]
    };
    Ok(Output::new(doc, header, rows))
}

fn coherent(args: &FamilyArgs, g: &GlobalArgs) -> Result<Output, Failure> {
    let params = args.coherent()?;
    let built = params.build(g.cutoff)?;
    let state = built.to_state_vector();
    let labels = built.labels()?;
    let space = params.ambient_space(state.len())?;
    let entries: Vec<Value> = labels
        .iter()
        .zip(state.amplitudes())
        .map(|(l, z)| json!({ "label": label_json(l), "re": z.re, "im": z.im }))
        .collect();
    let rows = labels
        .iter()
        .zip(state.amplitudes())
        .map(|(l, z)| vec![label_text(l), num(z.re), num(z.im)])
        .collect();
    let doc = json!({
        "family": args.family.name(),
        "dimension": state.len(),
        "norm": inner_product(&state, &state, &space)?.re,
        "truncated_mass": built.truncated_mass(),
        "entries": entries,
    });
    Ok(Output::new(doc, &["label", "re", "im"], rows))
}

fn metric_doc(family: Family, zeta: &[cs_geometry::Complex64], m: &MetricTensor) -> Value {
    let k = m.dim();
    let g: Vec<Vec<Value>> = (0..k)
        .map(|i| (0..k).map(|j| complex_json(m.entry(i, j))).collect())
        .collect();
    json!({
        "family": family.name(),
        "zeta": zeta.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "convention": "ds^2 = 2 Re sum g_ij dzeta^i conj(dzeta^j)",
        "g": g,
        "real_form": matrix_json(&m.real_form()),
    })
}

fn metric(args: &FamilyArgs, potential: bool, g: &GlobalArgs) -> Result<Output, Failure> {
    let (zeta, m) = if potential {
        (args.chart()?, args.potential_metric(g.second_step())?)
    } else {
        let (zeta, field) = args.hermitian_field(g.cutoff, g.step())?;
        let m = field(&zeta)?;
        (zeta, m)
    };
    let k = m.dim();
    let mut rows = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let z = m.entry(i, j);
            rows.push(vec![i.to_string(), j.to_string(), num(z.re), num(z.im)]);
        }
    }
    Ok(Output::new(
        metric_doc(args.family, &zeta, &m),
        &["i", "j", "re", "im"],
        rows,
    ))
}

fn pullback(args: &FamilyArgs, g: &GlobalArgs) -> Result<Output, Failure> {
    let model = args.real_model(g.cutoff)?;
    let m = model.pullback(g.step())?;
    let doc = json!({
        "family": args.family.name(),
        "params": model.names,
        "at": model.at,
        "signature": { "positive": model.space.positive_count(), "negative": model.space.negative_count() },
        "metric": matrix_json(&m),
    });
    Ok(Output::new(doc, &["row", "col", "value"], matrix_rows(&m)))
}

fn curvature_at(args: &FamilyArgs, g: &GlobalArgs) -> Result<f64, Failure> {
    let (zeta, field) = args.hermitian_field(g.cutoff, g.step())?;
    Ok(scalar_curvature(&*field, &zeta, g.second_step())?)
}

fn curvature(args: &FamilyArgs, g: &GlobalArgs) -> Result<Output, Failure> {
    let r = curvature_at(args, g)?;
    let zeta = args.hermitian_field(g.cutoff, g.step())?.0;
    let doc = json!({
        "family": args.family.name(),
        "zeta": zeta.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
        "scalar_curvature": r,
    });
    Ok(Output::new(doc, &["scalar_curvature"], vec![vec![num(r)]]))
}

fn kernel(
    zeta: &str,
    chi: Option<&str>,
    terms: Option<u32>,
    metric: bool,
    g: &GlobalArgs,
) -> Result<Output, Failure> {
    let z = complex(zeta).map_err(usage)?;
    let x = match chi {
        Some(c) => complex(c).map_err(usage)?,
        None => z,
    };
    let closed = bergman_kernel(z, x, KernelMode::ClosedForm)?;
    let mut doc = json!({ "zeta": complex_json(z), "chi": complex_json(x), "closed_form": complex_json(closed) });
    let mut header = vec!["closed_re", "closed_im"];
    let mut row = vec![num(closed.re), num(closed.im)];
    if let Some(t) = terms {
        let series = bergman_kernel(z, x, KernelMode::Series(t))?;
        let bound = series_tail_bound(z, x, t);
        doc["terms"] = json!(t);
        doc["series"] = complex_json(series);
        doc["tail_bound"] = json!(bound);
        header.extend(["series_re", "series_im", "tail_bound"]);
        row.extend([num(series.re), num(series.im), num(bound)]);
    }
    if metric {
        let coefficient = bergman_metric(z, g.second_step())?;
        let ratio = coefficient / (4.0 / (1.0 - z.norm_sqr()).powi(2));
        doc["metric"] = json!(coefficient);
        doc["ratio_to_hyperbolic"] = json!(ratio);
        header.extend(["metric", "ratio_to_hyperbolic"]);
        row.extend([num(coefficient), num(ratio)]);
    }
    Ok(Output::new(doc, &header, vec![row]))
}

fn verify(name: &str, g: &GlobalArgs, err: &mut dyn Write) -> Result<(Output, bool), Failure> {
    let defaults = VerifyOptions::default();
    let opts = VerifyOptions {
        samples: g.samples.unwrap_or(defaults.samples),
        seed: g.seed,
        tol: g.tol,
        fd_step: g.fd_step,
    };
    let reports = run_named(name, &opts)?;
    let mut rows = Vec::new();
    for r in &reports {
        let _ = writeln!(
            err,
            "{} {}: max deviation {:e}, tolerance {:e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_deviation,
            r.tolerance
        );
        rows.push(vec![
            r.name.clone(),
            num(r.tolerance),
            num(r.max_deviation),
            r.passed.to_string(),
            r.samples.len().to_string(),
        ]);
    }
    let all = reports.iter().all(|r| r.passed);
    let doc = serde_json::to_value(&reports).map_err(|e| usage(e.to_string()))?;
    Ok((
        Output::new(
            doc,
            &["name", "tolerance", "max_deviation", "passed", "samples"],
            rows,
        ),
        all,
    ))
}

fn sweep(
    args: &FamilyArgs,
    vary: &str,
    values: &str,
    quantity: Quantity,
    g: &GlobalArgs,
) -> Result<Output, Failure> {
    let grid = real_grid(values).map_err(usage)?;
    let points: Vec<FamilyArgs> = grid
        .iter()
        .map(|&v| args.with(vary, v))
        .collect::<Result<_, _>>()?;
    let reference = match quantity {
        Quantity::Distance => Some(args.real_model(g.cutoff)?.state()?),
        _ => None,
    };
    let evaluated: Vec<(Vec<String>, Vec<f64>)> = points
        .par_iter()
        .map(|p| -> Result<(Vec<String>, Vec<f64>), Failure> {
            match quantity {
                Quantity::Norm => {
                    let model = p.real_model(g.cutoff)?;
                    let s = model.state()?;
                    Ok((
                        vec!["norm".into()],
                        vec![inner_product(&s, &s, &model.space)?.re],
                    ))
                }
                Quantity::Distance => {
                    let s = p.real_model(g.cutoff)?.state()?;
                    let d = fs_distance(&s, reference.as_ref().expect("set for distance"))?;
                    Ok((vec!["distance".into()], vec![d]))
                }
                Quantity::Curvature => {
                    Ok((vec!["scalar_curvature".into()], vec![curvature_at(p, g)?]))
                }
                Quantity::Metric => {
                    let model = p.real_model(g.cutoff)?;
                    let m = model.pullback(g.step())?;
                    let mut names = Vec::new();
                    let mut values = Vec::new();
                    for a in 0..m.nrows() {
                        for b in a..m.ncols() {
                            names.push(format!("g_{}_{}", model.names[a], model.names[b]));
                            values.push(m[(a, b)]);
                        }
                    }
                    Ok((names, values))
                }
            }
        })
        .collect::<Result<_, _>>()?;

    let columns: Vec<String> = match evaluated.first() {
        Some((names, _)) => names.clone(),
        None => vec![format!("{quantity:?}").to_lowercase()],
    };
    if evaluated.iter().any(|(names, _)| *names != columns) {
        return Err(usage(
            "swept parameter changes the shape of the output; vary a different parameter",
        ));
    }
    let mut header = vec![vary.to_string()];
    header.extend(columns.iter().cloned());
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    for (x, (_, vals)) in grid.iter().zip(&evaluated) {
        let mut obj = serde_json::Map::new();
        obj.insert(vary.to_string(), json!(x));
        for (name, v) in columns.iter().zip(vals) {
            obj.insert(name.clone(), json!(v));
        }
        json_rows.push(Value::Object(obj));
        let mut row = vec![num(*x)];
        row.extend(vals.iter().map(|v| num(*v)));
        rows.push(row);
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    Ok(Output::new(Value::Array(json_rows), &header_refs, rows))
}
