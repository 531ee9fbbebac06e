//! Command-line surface: form generation and I/O, Hilbert functions,
//! Lefschetz verdicts, Hessian tests, Betti tables, and the theorem
//! verification suite.
//!
//! Exit codes: 0 success, 2 usage or parse failure, 3 mathematical
//! precondition failure, 4 verify-suite failure.

mod verify;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use perazzo::algebra::{build_model, AlgebraModel};
use perazzo::form::{
    gen_canonical, gen_full_monomial, gen_general, gen_min, CanonicalKind, PerazzoForm,
};
use perazzo::formdoc::{DocMetadata, FormDocument};
use perazzo::hilbert::{
    extremes_report, h_max, h_min, hilbert_function, hilbert_function_full_check,
};
use perazzo::lefschetz::{
    hessian_det_symbolic, hessian_vanishes, slp, wlp, LefschetzVerdict, VerdictKind,
};
use perazzo::linalg::{Field, FieldSpec, PrimeField, RationalField};
use perazzo::resolution::{betti, expected_betti_min_p4};

const SEED_ENV: &str = "PERAZZO_SEED";

#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable files, malformed documents, flag misuse.
    Usage(String),
    /// Valid input that violates a mathematical precondition.
    Math(String),
    /// One or more verify checks failed.
    VerifyFailed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Math(msg) => write!(f, "{msg}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
            CliError::VerifyFailed => 4,
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn math(e: impl fmt::Display) -> CliError {
    CliError::Math(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CanonicalCase {
    I,
    Ii,
    Iii,
}

#[derive(Parser)]
#[command(
    name = "perazzo",
    about = "Perazzo forms: Hilbert functions, Lefschetz properties and Betti tables over exact fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form extremal h-vectors and unimodality diagnostics.
    Extremes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Generate a Perazzo form and write it as a JSON document.
    #[command(group(ArgGroup::new("kind").required(true).args(["canonical", "min", "general", "full_monomial"])))]
    Gen {
        /// Canonical P^4 form of the given case (i, ii, iii); n = m = 2.
        #[arg(long, value_enum)]
        canonical: Option<CanonicalCase>,
        /// λ for case iii (defaults to a seeded nonzero sample).
        #[arg(long)]
        lambda: Option<String>,
        /// Sum of X_i L_i^{d-1} for random linear forms (termwise minimal h).
        #[arg(long)]
        min: bool,
        /// Uniformly random p_i (termwise maximal h at a generic seed).
        #[arg(long)]
        general: bool,
        /// Include a random degree-d G part (with --general).
        #[arg(long)]
        with_g: bool,
        /// All monomials of K[U]_{d-1} as the p_i (full Perazzo; n is forced).
        #[arg(long)]
        full_monomial: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        d: usize,
        /// Seed; defaults to $PERAZZO_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Coefficient field: "prime", "prime:<p>", or "rational".
        #[arg(long, default_value = "prime")]
        field: String,
        /// Output file; "-" for standard output.
        #[arg(long, short, default_value = "-")]
        output: String,
    },
    /// Hilbert function of a form document, with its sandwich position.
    Hilbert {
        #[arg(long, default_value = "-")]
        input: String,
        /// Compute every degree independently and assert symmetry.
        #[arg(long)]
        full_check: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Weak Lefschetz verdict by random linear forms.
    Wlp {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value_t = perazzo::lefschetz::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Strong Lefschetz verdict (all powers of the linear form).
    Slp {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value_t = perazzo::lefschetz::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Hessian-vanishing test (probabilistic; --symbolic for full expansion).
    Hessian {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Expand the determinant symbolically (≤ 5 variables, d ≤ 6).
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Graded Betti numbers via Koszul homology.
    Betti {
        #[arg(long, default_value = "-")]
        input: String,
        /// Print the closed-form minimal P^4 table for this degree instead
        /// of reading a form.
        #[arg(long, conflicts_with = "input")]
        expected_min_p4: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run the theorem verification suite.
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| std::env::var(SEED_ENV).ok().and_then(|v| v.parse().ok())).unwrap_or(42)
}

fn parse_field_spec(s: &str) -> Result<FieldSpec, CliError> {
    let spec = match s {
        "prime" => FieldSpec::default_prime(),
        "rational" => FieldSpec::Rational,
        other => match other.strip_prefix("prime:") {
            Some(p) => FieldSpec::Prime(
                p.parse().map_err(|_| usage(format!("cannot parse prime modulus {p:?}")))?,
            ),
            None => {
                return Err(usage(format!(
                    "unknown field {other:?}: expected prime, prime:<p>, or rational"
                )))
            }
        },
    };
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn read_document(path: &str) -> Result<FormDocument, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| usage(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("reading {path}: {e}")))?
    };
    FormDocument::from_json_str(&text).map_err(usage)
}

fn write_output(path: &str, contents: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{contents}");
        io::stdout().flush().map_err(|e| usage(format!("writing stdout: {e}")))
    } else {
        fs::write(path, contents).map_err(|e| usage(format!("writing {path}: {e}")))
    }
}

struct LoadedForm {
    n: usize,
    m: usize,
    d: usize,
    spec: FieldSpec,
    doc: FormDocument,
}

fn load_form(path: &str) -> Result<LoadedForm, CliError> {
    let doc = read_document(path)?;
    let spec = doc.field.to_spec().map_err(usage)?;
    Ok(LoadedForm { n: doc.n, m: doc.m, d: doc.d, spec, doc })
}

/// Run the body with the document reconstructed over its declared field and
/// validated; validation failures exit with code 3.
macro_rules! with_form {
    ($loaded:expr, |$form:ident| $body:expr) => {{
        match $loaded.spec {
            FieldSpec::Prime(p) => {
                let field = PrimeField::new(p).map_err(usage)?;
                let $form = $loaded.doc.to_form(&field).map_err(usage)?;
                let report = $form.validate();
                if !report.is_valid() {
                    return Err(math(format!("invalid Perazzo form: {report}")));
                }
                $body
            }
            FieldSpec::Rational => {
                let field = RationalField;
                let $form = $loaded.doc.to_form(&field).map_err(usage)?;
                let report = $form.validate();
                if !report.is_valid() {
                    return Err(math(format!("invalid Perazzo form: {report}")));
                }
                $body
            }
        }
    }};
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Extremes { n, m, d, format } => cmd_extremes(n, m, d, format),
        Command::Gen {
            canonical,
            lambda,
            min,
            general,
            with_g,
            full_monomial,
            n,
            m,
            d,
            seed,
            field,
            output,
        } => {
            let spec = parse_field_spec(&field)?;
            let seed = resolve_seed(seed);
            let kind = GenKind::from_flags(canonical, lambda, min, general, with_g, full_monomial)?;
            cmd_gen(kind, n, m, d, seed, spec, &output)
        }
        Command::Hilbert { input, full_check, format } => cmd_hilbert(&input, full_check, format),
        Command::Wlp { input, trials, seed, format } => {
            cmd_lefschetz(&input, trials, resolve_seed(seed), false, format)
        }
        Command::Slp { input, trials, seed, format } => {
            cmd_lefschetz(&input, trials, resolve_seed(seed), true, format)
        }
        Command::Hessian { input, trials, seed, symbolic, format } => {
            cmd_hessian(&input, trials, resolve_seed(seed), symbolic, format)
        }
        Command::Betti { input, expected_min_p4, format } => {
            cmd_betti(&input, expected_min_p4, format)
        }
        Command::Verify(args) => verify::run(args),
    }
}

fn cmd_extremes(n: usize, m: usize, d: usize, format: OutputFormat) -> Result<(), CliError> {
    let report = extremes_report(n, m, d).map_err(math)?;
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        OutputFormat::Text => {
            println!("(n, m, d) = ({n}, {m}, {d}), s = {}", report.s);
            println!("h_max = {}  unimodal: {}", report.hmax, report.hmax_unimodal);
            println!("h_min = {}  unimodal: {}", report.hmin, report.hmin_unimodal);
            println!("extremes coincide: {}", report.coincide);
            let (a1, b1, g1) = report.abg_s_minus_1;
            let (a2, b2, g2) = report.abg_s;
            println!("alpha/beta/gamma at s-1: ({a1}, {b1}, {g1})");
            println!("alpha/beta/gamma at s:   ({a2}, {b2}, {g2})");
            println!(
                "minimal-unimodality inequality n+1 <= beta_(s-1): {}",
                report.hmin_boundary_inequality
            );
        }
    }
    Ok(())
}

enum GenKind {
    Canonical(CanonicalCase, Option<String>),
    Min,
    General { with_g: bool },
    FullMonomial,
}

impl GenKind {
    fn from_flags(
        canonical: Option<CanonicalCase>,
        lambda: Option<String>,
        min: bool,
        general: bool,
        with_g: bool,
        full_monomial: bool,
    ) -> Result<Self, CliError> {
        if with_g && !general {
            return Err(usage("--with-g only applies to --general"));
        }
        if lambda.is_some() && !matches!(canonical, Some(CanonicalCase::Iii)) {
            return Err(usage("--lambda only applies to --canonical iii"));
        }
        Ok(match (canonical, min, general, full_monomial) {
            (Some(case), _, _, _) => GenKind::Canonical(case, lambda),
            (_, true, _, _) => GenKind::Min,
            (_, _, true, _) => GenKind::General { with_g },
            _ => GenKind::FullMonomial,
        })
    }

    fn describe(&self) -> String {
        match self {
            GenKind::Canonical(CanonicalCase::I, _) => "canonical:i".into(),
            GenKind::Canonical(CanonicalCase::Ii, _) => "canonical:ii".into(),
            GenKind::Canonical(CanonicalCase::Iii, _) => "canonical:iii".into(),
            GenKind::Min => "min".into(),
            GenKind::General { with_g: true } => "general+G".into(),
            GenKind::General { with_g: false } => "general".into(),
            GenKind::FullMonomial => "full-monomial".into(),
        }
    }
}

fn gen_over<F: Field>(
    field: &F,
    kind: &GenKind,
    n: Option<usize>,
    m: Option<usize>,
    d: usize,
    seed: u64,
) -> Result<PerazzoForm<F>, CliError> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| usage(format!("--{name} is required for this generator")))
    };
    match kind {
        GenKind::Canonical(case, lambda) => {
            let ck = match case {
                CanonicalCase::I => CanonicalKind::CaseI,
                CanonicalCase::Ii => CanonicalKind::CaseII,
                CanonicalCase::Iii => {
                    let lam = match lambda {
                        Some(text) => field.parse(text).map_err(usage)?,
                        None => {
                            let mut rng: rand_chacha::ChaCha8Rng =
                                rand::SeedableRng::seed_from_u64(seed);
                            field.sample_nonzero(&mut rng)
                        }
                    };
                    CanonicalKind::CaseIII(lam)
                }
            };
            gen_canonical(field, ck, d).map_err(math)
        }
        GenKind::Min => gen_min(field, need(n, "n")?, need(m, "m")?, d, seed).map_err(math),
        GenKind::General { with_g } => {
            gen_general(field, need(n, "n")?, need(m, "m")?, d, *with_g, seed).map_err(math)
        }
        GenKind::FullMonomial => gen_full_monomial(field, need(m, "m")?, d).map_err(math),
    }
}

fn cmd_gen(
    kind: GenKind,
    n: Option<usize>,
    m: Option<usize>,
    d: usize,
    seed: u64,
    spec: FieldSpec,
    output: &str,
) -> Result<(), CliError> {
    let metadata = Some(DocMetadata { seed: Some(seed), generator: Some(kind.describe()) });
    let doc = match spec {
        FieldSpec::Prime(p) => {
            let field = PrimeField::new(p).map_err(usage)?;
            FormDocument::from_form(&gen_over(&field, &kind, n, m, d, seed)?, metadata)
        }
        FieldSpec::Rational => {
            FormDocument::from_form(&gen_over(&RationalField, &kind, n, m, d, seed)?, metadata)
        }
    };
    write_output(output, &format!("{}\n", doc.to_json_string()))
}

fn cmd_hilbert(input: &str, full_check: bool, format: OutputFormat) -> Result<(), CliError> {
    let loaded = load_form(input)?;
    let (n, m, d) = (loaded.n, loaded.m, loaded.d);
    let h = with_form!(loaded, |form| {
        if full_check {
            hilbert_function_full_check(&form).map_err(math)?
        } else {
            hilbert_function(&form).map_err(math)?
        }
    });
    let hmin = h_min(n, m, d).map_err(math)?;
    let hmax = h_max(n, m, d).map_err(math)?;
    let position = match (h == hmin, h == hmax) {
        (true, true) => "minimal=maximal",
        (true, false) => "minimal",
        (false, true) => "maximal",
        (false, false) => "intermediate",
    };
    match format {
        OutputFormat::Json => {
            let value = serde_json::json!({
                "n": n, "m": m, "d": d,
                "h": h.entries(),
                "position": position,
                "unimodal": h.is_unimodal(),
                "h_min": hmin.entries(),
                "h_max": hmax.entries(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        OutputFormat::Text => {
            println!("h = {h}");
            println!("position: {position}");
            println!("unimodal: {}", h.is_unimodal());
        }
    }
    Ok(())
}

fn verdict_json<F: Field>(field: &F, verdict: &LefschetzVerdict<F>) -> serde_json::Value {
    match &verdict.kind {
        VerdictKind::Holds { witness } => serde_json::json!({
            "verdict": "holds",
            "witness": witness.coeffs().iter().map(|c| field.render(c)).collect::<Vec<_>>(),
        }),
        VerdictKind::FailsGeneric { trials, deficits } => serde_json::json!({
            "verdict": "fails_generic",
            "trials": trials,
            "deficits": deficits.iter().map(|df| serde_json::json!({
                "power": df.power,
                "from_degree": df.from_degree,
                "rank": df.rank,
                "required": df.required,
            })).collect::<Vec<_>>(),
        }),
    }
}

fn render_verdict<F: Field>(
    field: &F,
    label: &str,
    verdict: &LefschetzVerdict<F>,
    format: OutputFormat,
) {
    match format {
        OutputFormat::Json => {
            let mut value = verdict_json(field, verdict);
            value["property"] = serde_json::json!(label);
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        OutputFormat::Text => match &verdict.kind {
            VerdictKind::Holds { witness } => {
                let coeffs: Vec<String> =
                    witness.coeffs().iter().map(|c| field.render(c)).collect();
                println!("{label}: holds (certified witness)");
                println!("witness = [{}]", coeffs.join(", "));
            }
            VerdictKind::FailsGeneric { trials, deficits } => {
                println!("{label}: fails generically ({trials} trials)");
                for df in deficits {
                    println!(
                        "  power {} from degree {}: best rank {} < required {}",
                        df.power, df.from_degree, df.rank, df.required
                    );
                }
            }
        },
    }
}

fn cmd_lefschetz(
    input: &str,
    trials: usize,
    seed: u64,
    strong: bool,
    format: OutputFormat,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let loaded = load_form(input)?;
    let label = if strong { "SLP" } else { "WLP" };
    with_form!(loaded, |form| {
        let model = build_model(&form.assemble().map_err(math)?);
        let verdict = if strong { slp(&model, trials, seed) } else { wlp(&model, trials, seed) };
        render_verdict(form.field(), label, &verdict, format);
    });
    Ok(())
}

fn cmd_hessian(
    input: &str,
    trials: usize,
    seed: u64,
    symbolic: bool,
    format: OutputFormat,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let loaded = load_form(input)?;
    let d = loaded.d;
    with_form!(loaded, |form| {
        let big = form.assemble().map_err(math)?;
        let evaluated = hessian_vanishes(&big, trials, seed);
        let symbolic_zero = if symbolic {
            let total = big.layout().total();
            if total > 5 || d > 6 {
                return Err(math(format!(
                    "--symbolic supports at most 5 variables and d <= 6 (got {total} variables, d = {d})"
                )));
            }
            Some(hessian_det_symbolic(&big).is_zero())
        } else {
            None
        };
        match format {
            OutputFormat::Json => {
                let mut value = serde_json::json!({
                    "vanishes": evaluated,
                    "trials": trials,
                });
                if let Some(sz) = symbolic_zero {
                    value["symbolic_zero"] = serde_json::json!(sz);
                }
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
            OutputFormat::Text => {
                if evaluated {
                    println!("hessian: vanishes at all {trials} random points");
                } else {
                    println!("hessian: nonzero (witnessed by a random evaluation)");
                }
                if let Some(sz) = symbolic_zero {
                    println!(
                        "symbolic determinant: {}",
                        if sz { "identically zero" } else { "nonzero" }
                    );
                }
            }
        }
    });
    Ok(())
}

/// Refuse Betti computations whose largest Koszul block would not finish at
/// desk scale.
fn betti_size_guard<F: Field>(model: &AlgebraModel<F>) -> Result<(), CliError> {
    let nv = model.layout().total();
    let hmax = model.h().iter().max().copied().unwrap_or(1) as u128;
    let mut worst: u128 = 0;
    for i in 1..=nv {
        let rows = perazzo::comb::binomial_usize(nv, i - 1) as u128 * hmax;
        let cols = perazzo::comb::binomial_usize(nv, i) as u128 * hmax;
        worst = worst.max(rows.saturating_mul(cols));
    }
    const LIMIT: u128 = 25_000_000;
    if worst > LIMIT {
        return Err(math(format!(
            "Betti computation too large: a Koszul block would have ~{worst} entries (limit {LIMIT}); reduce n+m or d"
        )));
    }
    Ok(())
}

fn cmd_betti(
    input: &str,
    expected_min_p4: Option<usize>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let table = match expected_min_p4 {
        Some(d) => expected_betti_min_p4(d).map_err(math)?,
        None => {
            let loaded = load_form(input)?;
            with_form!(loaded, |form| {
                let model = build_model(&form.assemble().map_err(math)?);
                betti_size_guard(&model)?;
                betti(&model.module_model())
            })
        }
    };
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&table.to_json()).unwrap())
        }
        OutputFormat::Text => print!("{}", table.render_m2()),
    }
    Ok(())
}
