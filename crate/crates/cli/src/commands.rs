use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use flatlie::analysis::{is_semisimple, milnor_assemble, milnor_decompose, MilnorOutcome};
use flatlie::connections::{is_complete, is_flat_affine, is_unimodular};
use flatlie::constructions::{
    catalog, central_extension, classical_cotangent, cotangent_coadjoint, double_extension, equivariance_check,
    oscillator, phi_cocycle_check, theta_derivation_check, CatalogParams, OrthogonalAlgebra, SkewDerivationMap,
};
use flatlie::metrics::{is_flat_metric, is_invariant, is_levi_civita_of, is_two_nilpotent, levi_civita};
use flatlie::rational::parse_rational;
use flatlie::{Check, Rational, ScalarProduct};

use crate::document::{CheckDoc, ReportDocument};
use crate::error::CliError;
use crate::manifest::{parse_manifest, parse_matrix, parse_value, to_canonical_json, Manifest};

#[derive(Parser, Debug)]
#[command(
    name = "flatlie",
    version,
    about = "Exact checks and constructions for flat Lie algebras"
)]
struct Cli {
    /// Write the report document here instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification checks on a manifest (`-` reads stdin).
    Check(CheckArgs),
    /// Levi-Civita product of a named form.
    LeviCivita {
        file: String,
        #[arg(long)]
        form: String,
    },
    /// Signature of a named form.
    Signature {
        file: String,
        #[arg(long)]
        form: String,
    },
    #[command(subcommand)]
    Build(Build),
    /// Milnor decomposition of a flat Riemannian algebra.
    Milnor {
        /// A manifest, or an assembly spec with `--assemble`.
        file: String,
        #[arg(long)]
        form: Option<String>,
        /// Read `file` as `{b_dim, u_dim, action, form}` and assemble first.
        #[arg(long)]
        assemble: bool,
    },
    /// Print a built-in example as a manifest.
    Catalog {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    file: String,
    #[arg(long)]
    jacobi: bool,
    #[arg(long, value_name = "FORM")]
    invariant: Vec<String>,
    #[arg(long, value_name = "PRODUCT")]
    flat_affine: Vec<String>,
    #[arg(long, value_name = "FORM")]
    flat_metric: Vec<String>,
    #[arg(long)]
    unimodular: bool,
    #[arg(long, value_name = "PRODUCT")]
    complete: Vec<String>,
    #[arg(long)]
    semisimple: bool,
    #[arg(long)]
    two_nilpotent: bool,
    /// Every check on every form and product; the default when no check is named.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum Build {
    /// Oscillator algebra for a nondecreasing list of positive rationals.
    Oscillator {
        #[arg(long, value_name = "a,b,c")]
        lambda: String,
    },
    /// Cotangent algebra with the coadjoint action and its pairing.
    Cotangent { file: String },
    /// Cotangent algebra of a flat affine product and its flat metric.
    ClassicalCotangent {
        file: String,
        #[arg(long)]
        product: String,
    },
    /// Double extension of `base` by `h` through the maps in `--psi`.
    Double {
        base: String,
        h: String,
        #[arg(long)]
        psi: String,
        /// Form of `base` to extend; optional when there is only one.
        #[arg(long)]
        form: Option<String>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiFile {
    maps: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AssemblySpec {
    action: Vec<Vec<Vec<String>>>,
    b_dim: usize,
    #[serde(default)]
    form: Option<Vec<Vec<String>>>,
    u_dim: usize,
}

/// Reads files, with `-` as the single stdin source.
struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
    bytes: Vec<Vec<u8>>,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let mut buf = Vec::new();
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("stdin can be read only once".into()));
            }
            self.stdin_used = true;
            self.stdin.read_to_end(&mut buf).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        } else {
            buf = std::fs::read(path).map_err(|source| CliError::Io {
                path: path.into(),
                source,
            })?;
        }
        let text =
            String::from_utf8(buf.clone()).map_err(|_| CliError::Validation(format!("{path}: not valid UTF-8")))?;
        self.bytes.push(buf);
        Ok(text)
    }

    fn manifest(&mut self, path: &str) -> Result<Manifest, CliError> {
        parse_manifest(&self.read(path)?)
    }

    fn document(&self) -> ReportDocument {
        let refs: Vec<&[u8]> = self.bytes.iter().map(Vec::as_slice).collect();
        ReportDocument::new(&refs)
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|_| CliError::Usage(format!("invalid rational {s:?} in list"))))
        .collect()
}

fn run_check(args: &CheckArgs, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    let m = inputs.manifest(&args.file)?;
    let a = &m.algebra;
    let named = args.jacobi
        || args.unimodular
        || args.semisimple
        || args.two_nilpotent
        || !args.invariant.is_empty()
        || !args.flat_affine.is_empty()
        || !args.flat_metric.is_empty()
        || !args.complete.is_empty();
    let all = args.all || !named;
    let forms: Vec<String> = if all {
        m.forms.keys().cloned().collect()
    } else {
        Vec::new()
    };
    let products: Vec<String> = if all {
        m.products.keys().cloned().collect()
    } else {
        Vec::new()
    };
    let pick = |explicit: &[String], implied: &[String]| -> Vec<String> {
        let mut v = explicit.to_vec();
        v.extend(implied.iter().filter(|n| !explicit.contains(n)).cloned());
        v
    };

    let mut doc = inputs.document();
    if all || args.jacobi {
        doc.add_report(&a.check_jacobi());
    }
    if all || args.unimodular {
        doc.add_report(&is_unimodular(a));
    }
    if all || args.semisimple {
        doc.add_report(&is_semisimple(a));
    }
    if all || args.two_nilpotent {
        doc.add_report(&is_two_nilpotent(a));
    }
    for name in pick(&args.invariant, &forms) {
        doc.add_prefixed(&name, &is_invariant(a, m.form(&name)?));
    }
    for name in pick(&args.flat_metric, &forms) {
        let pair = levi_civita(a, m.form(&name)?)?;
        doc.add_prefixed(&name, &is_flat_metric(&pair));
    }
    for name in pick(&args.flat_affine, &products) {
        doc.add_prefixed(&name, &is_flat_affine(m.product(&name)?));
    }
    for name in pick(&args.complete, &products) {
        doc.add_prefixed(&name, &is_complete(m.product(&name)?));
    }
    Ok(doc)
}

fn run_levi_civita(file: &str, form: &str, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    let m = inputs.manifest(file)?;
    let g = m.form(form)?.clone();
    let pair = levi_civita(&m.algebra, &g)?;
    let mut doc = inputs.document();
    doc.add_report(&is_levi_civita_of(pair.product(), &g));
    let flat = is_flat_metric(&pair);
    let complete = is_complete(pair.product());
    let mut props = BTreeMap::new();
    props.insert("complete", complete.check("right_trace").is_some_and(Check::passed));
    props.insert("flat", flat.passed());
    props.insert("unimodular", is_unimodular(&m.algebra).passed());
    doc.derive("properties", props);
    if let Some(c) = flat.first_failure() {
        doc.derive("curvature_witness", CheckDoc::from(c).witness);
    }
    let out = Manifest::new(Arc::clone(&m.algebra))
        .with_form(form, g)
        .with_product("levi_civita", pair.product().clone());
    doc.derive_manifest("manifest", &out);
    Ok(doc)
}

fn run_signature(file: &str, form: &str, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    let m = inputs.manifest(file)?;
    let g = m.form(form)?;
    let mut doc = inputs.document();
    doc.derive_signature("signature", g.signature());
    Ok(doc)
}

fn orthogonal_document(doc: &mut ReportDocument, o: &OrthogonalAlgebra, form_name: &str) {
    doc.add_report(&o.algebra().check_jacobi());
    doc.add_report(&is_invariant(o.algebra(), o.form()));
    doc.derive_signature("signature", o.form().signature());
    let out = Manifest::new(Arc::clone(o.algebra())).with_form(form_name, o.form().clone());
    doc.derive_manifest("manifest", &out);
}

fn run_build(build: &Build, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    match build {
        Build::Oscillator { lambda } => {
            let lambda = parse_list(lambda)?;
            let osc = oscillator(&lambda)?;
            let canonical: Vec<String> = lambda.iter().map(ToString::to_string).collect();
            let mut doc = ReportDocument::new(&[format!("oscillator {}", canonical.join(",")).as_bytes()]);
            orthogonal_document(&mut doc, &osc, "mu0");
            Ok(doc)
        }
        Build::Cotangent { file } => {
            let m = inputs.manifest(file)?;
            let t = cotangent_coadjoint(&m.algebra)?;
            let mut doc = inputs.document();
            orthogonal_document(&mut doc, &t, "pairing");
            Ok(doc)
        }
        Build::ClassicalCotangent { file, product } => {
            let m = inputs.manifest(file)?;
            let pair = classical_cotangent(&m.algebra, m.product(product)?)?;
            let mut doc = inputs.document();
            doc.add_report(&pair.algebra().check_jacobi());
            doc.add_report(&is_levi_civita_of(pair.product(), pair.form()));
            doc.add_report(&is_flat_metric(&pair));
            doc.derive_signature("signature", pair.form().signature());
            let out = Manifest::new(Arc::clone(pair.algebra()))
                .with_form("hyperbolic", pair.form().clone())
                .with_product("levi_civita", pair.product().clone());
            doc.derive_manifest("manifest", &out);
            Ok(doc)
        }
        Build::Double { base, h, psi, form } => {
            let bm = inputs.manifest(base)?;
            let hm = inputs.manifest(h)?;
            let raw: PsiFile = parse_value(&inputs.read(psi)?)?;
            let mu0 = bm.pick_form(form.as_deref())?;
            let base_o = OrthogonalAlgebra::new(Arc::clone(&bm.algebra), mu0.clone())?;
            let n = bm.algebra.dim();
            let maps = raw
                .maps
                .iter()
                .enumerate()
                .map(|(a, rows)| parse_matrix(&format!("maps[{a}]"), rows, n))
                .collect::<Result<Vec<_>, _>>()?;
            let map = SkewDerivationMap::new(Arc::clone(&hm.algebra), base_o.clone(), maps)?;
            let mut doc = inputs.document();
            let validation = map.validate();
            doc.add_prefixed("psi", &validation);
            if !validation.passed() {
                return Ok(doc);
            }
            doc.add_report(&phi_cocycle_check(&map));
            doc.add_report(&theta_derivation_check(&map));
            doc.add_report(&equivariance_check(&map));
            let ext = double_extension(&base_o, &hm.algebra, &map)?;
            orthogonal_document(&mut doc, &ext, "mu");
            doc.derive_manifest("intermediate", &Manifest::new(Arc::new(central_extension(&map))));
            Ok(doc)
        }
    }
}

fn run_milnor(file: &str, form: Option<&str>, assemble: bool, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    let (algebra, g, assembled) = if assemble {
        let spec: AssemblySpec = parse_value(&inputs.read(file)?)?;
        let n = spec.b_dim + spec.u_dim;
        let action = spec
            .action
            .iter()
            .enumerate()
            .map(|(k, rows)| parse_matrix(&format!("action[{k}]"), rows, spec.u_dim))
            .collect::<Result<Vec<_>, _>>()?;
        let g = match &spec.form {
            Some(rows) => ScalarProduct::new(parse_matrix("form", rows, n)?)
                .map_err(|_| CliError::Validation("form: degenerate".into()))?,
            None => ScalarProduct::identity(n),
        };
        let (alg, pair) = milnor_assemble(spec.b_dim, spec.u_dim, &action, &g)?;
        let m = Manifest::new(Arc::clone(&alg))
            .with_form("g", g.clone())
            .with_product("levi_civita", pair.product().clone());
        (alg, g, Some(m))
    } else {
        let m = inputs.manifest(file)?;
        let g = m.pick_form(form)?;
        (Arc::clone(&m.algebra), g.clone(), None)
    };
    let outcome = milnor_decompose(&algebra, &g)?;
    let mut doc = inputs.document();
    doc.add_report(outcome.report());
    match &outcome {
        MilnorOutcome::Decomposed(d) => {
            doc.add_check(&Check::pass("milnor"));
            doc.derive_vectors("b_basis", &d.b_basis);
            doc.derive_vectors("u_basis", &d.u_basis);
        }
        MilnorOutcome::Failure { reason, .. } => {
            doc.add_check(&Check::fail("milnor", None).with_note(reason.clone()));
        }
    }
    if let Some(m) = assembled {
        doc.derive_manifest("manifest", &m);
    }
    Ok(doc)
}

fn run_catalog(
    name: &str,
    n: Option<usize>,
    alpha: Option<&str>,
    lambda: Option<&str>,
) -> Result<ReportDocument, CliError> {
    let params = CatalogParams {
        n,
        alpha: alpha
            .map(|a| parse_rational(a).map_err(|_| CliError::Usage(format!("invalid rational {a:?}"))))
            .transpose()?,
        lambda: lambda.map(parse_list).transpose()?,
    };
    let entry = catalog(name, &params)?;
    let key = format!(
        "catalog {name} n={n:?} alpha={:?} lambda={:?}",
        params.alpha.as_ref().map(ToString::to_string),
        lambda
    );
    let mut doc = ReportDocument::new(&[key.as_bytes()]);
    doc.add_report(&entry.algebra.check_jacobi());
    let mut m = Manifest::new(Arc::clone(&entry.algebra));
    for (fname, f) in &entry.forms {
        m = m.with_form(fname, f.clone());
    }
    for (pname, p) in &entry.products {
        doc.add_prefixed(pname, &is_flat_affine(p));
        m = m.with_product(pname, p.clone());
    }
    doc.derive_manifest("manifest", &m);
    Ok(doc)
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<ReportDocument, CliError> {
    match &cli.command {
        Command::Check(args) => run_check(args, inputs),
        Command::LeviCivita { file, form } => run_levi_civita(file, form, inputs),
        Command::Signature { file, form } => run_signature(file, form, inputs),
        Command::Build(b) => run_build(b, inputs),
        Command::Milnor { file, form, assemble } => run_milnor(file, form.as_deref(), *assemble, inputs),
        Command::Catalog { name, n, alpha, lambda } => run_catalog(name, *n, alpha.as_deref(), lambda.as_deref()),
    }
}

fn summary(doc: &ReportDocument, color: bool) -> String {
    let failed = doc.failed();
    let (paint, reset) = match (color, failed) {
        (false, _) => ("", ""),
        (true, 0) => ("\x1b[32m", "\x1b[0m"),
        (true, _) => ("\x1b[31m", "\x1b[0m"),
    };
    let mut s = format!(
        "{paint}{} checks: {} passed, {failed} failed, {} warned{reset}\n",
        doc.checks.len(),
        doc.checks.len() - failed - doc.warned(),
        doc.warned()
    );
    for c in doc.checks.iter().filter(|c| c.verdict == "fail") {
        s.push_str(&format!("  fail: {}\n", c.check));
    }
    s
}

/// Runs one command line. Returns the process exit status: 0 when every check
/// passed, 1 when some check failed and 2 on usage, parse or input errors.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut inputs = Inputs {
        stdin,
        stdin_used: false,
        bytes: Vec::new(),
    };
    let doc = match dispatch(&cli, &mut inputs) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(stderr, "flatlie: {e}");
            return e.exit_code();
        }
    };
    let text = to_canonical_json(&doc);
    let written = match &cli.output {
        Some(path) if path.as_os_str() != "-" => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        _ => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "flatlie: {e}");
        return 2;
    }
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    let _ = stderr.write_all(summary(&doc, color).as_bytes());
    if doc.failed() == 0 {
        0
    } else {
        1
    }
}
