//! `pp8`: command-line access to the degree-8 permutation polynomial tools.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pp8_core::equiv::frobenius_reduce;
use pp8_core::report::{format_tuple, render_text, ElementStyle};
use pp8_core::search::{verify_r7, verify_r8, verify_r9};
use pp8_core::{
    classify, hc, hc_symbolic, hermite_full_check, is_exceptional_deg8, is_pp_brute, is_pp_wan,
    normalize, Error, FieldCtx, FieldElement, KRange, Moduli, Octic, ProofReport, ReportDocument,
    SparsePoly7, StepStatus,
};

const MODULI_ENV: &str = "PP8_MODULI_FILE";

#[derive(Parser)]
#[command(
    name = "pp8",
    version,
    about = "Degree-8 permutation polynomials over GF(2^r)"
)]
struct Cli {
    /// Worker threads for the searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hermite coefficient HC(r, k, a7, ..., a1), numeric or symbolic.
    Hc(HcArgs),
    /// Permutation test for x^8 + a7 x^7 + ... + a1 x.
    IsPp(PpArgs),
    /// Exceptionality test for x^8 + a7 x^7 + ... + a1 x.
    IsExceptional(FieldArgs),
    /// Normal form under linear transformations, with the witness.
    Normalize(NormalizeArgs),
    /// Classification (r = 4, 5, 6) or proof replay (r = 7, 8, 9).
    Classify(ClassifyArgs),
    /// Proof replay for r = 7, 8, 9.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Copy, Clone, Default, ValueEnum)]
enum Method {
    #[default]
    Wan,
    Brute,
    Hermite,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    r: u32,
    /// Comma-separated a7,...,a1 as 0, 1, e or e^k.
    #[arg(long)]
    coeffs: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct PpArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value_t)]
    method: Method,
}

#[derive(Args)]
struct HcArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: u64,
    /// Comma-separated a7,...,a1; each entry is a field element or an
    /// expression in a1..a7. Omitted coefficients stay symbolic.
    #[arg(long)]
    coeffs: Option<String>,
    /// Override one coefficient, e.g. `--set a6=1 --set a1=a5^3+a4^2`.
    #[arg(long = "set", value_name = "VAR=VALUE")]
    set: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct NormalizeArgs {
    #[arg(long)]
    r: u32,
    /// a7,...,a1 for a normalized octic, or a8,...,a0 for a general one.
    #[arg(long)]
    coeffs: String,
    /// Also move a5 into the Frobenius transversal (shape x^8 + x^6 + a5 x^5 + ...).
    #[arg(long)]
    frobenius_reduce: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Keep only records whose a5 lies in the Frobenius transversal.
    #[arg(long)]
    frobenius_reduce: bool,
    /// Print polynomial-basis hex instead of log indices.
    #[arg(long)]
    basis: bool,
    /// Directory for a timestamped result file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("pp8: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Hc(a) => run_hc(a),
        Command::IsPp(a) => run_is_pp(a),
        Command::IsExceptional(a) => run_is_exceptional(a),
        Command::Normalize(a) => run_normalize(a),
        Command::Classify(a) => run_classify(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("pp8: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn field(r: u32) -> Result<FieldCtx, Failure> {
    match std::env::var_os(MODULI_ENV) {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| usage(format!("{MODULI_ENV}={}: {e}", path.to_string_lossy())))?;
            Ok(FieldCtx::from_table(r, &Moduli::parse(&text)?)?)
        }
        None => Ok(FieldCtx::new(r)?),
    }
}

fn parse_list(ctx: &FieldCtx, list: &str) -> Result<Vec<FieldElement>, Failure> {
    list.split(',')
        .map(|s| {
            ctx.parse_element(s.trim())
                .map_err(|e| usage(format!("coefficient {:?}: {e}", s.trim())))
        })
        .collect()
}

fn normalized_octic(ctx: &FieldCtx, list: &str) -> Result<Octic, Failure> {
    let v = parse_list(ctx, list)?;
    let tuple: [FieldElement; 7] = v.try_into().map_err(|v: Vec<_>| {
        usage(format!(
            "expected 7 coefficients a7,...,a1, got {}",
            v.len()
        ))
    })?;
    Ok(Octic::normalized(ctx, tuple)?)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

// ---------------------------------------------------------------------------

enum Coeff {
    Field(FieldElement),
    Symbolic(SparsePoly7),
}

fn parse_coeff(ctx: &FieldCtx, s: &str) -> Result<Coeff, Failure> {
    let s = s.trim();
    if let Ok(x) = ctx.parse_element(s) {
        return Ok(Coeff::Field(x));
    }
    s.parse::<SparsePoly7>().map(Coeff::Symbolic).map_err(|e| {
        usage(format!(
            "coefficient {s:?} is neither a field element nor an expression in a1..a7: {e}"
        ))
    })
}

fn run_hc(a: HcArgs) -> Outcome {
    let ctx = field(a.r)?;
    let mut coeffs: Vec<Coeff> = (0..7)
        .map(|i| Coeff::Symbolic(SparsePoly7::var(7 - i)))
        .collect();
    if let Some(list) = &a.coeffs {
        let parts: Vec<&str> = list.split(',').collect();
        if parts.len() != 7 {
            return Err(usage(format!(
                "expected 7 coefficients a7,...,a1, got {}",
                parts.len()
            )));
        }
        for (slot, s) in coeffs.iter_mut().zip(parts) {
            *slot = parse_coeff(&ctx, s)?;
        }
    }
    for item in &a.set {
        let (var, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--set expects VAR=VALUE, got {item:?}")))?;
        let i: usize = var
            .trim()
            .strip_prefix('a')
            .and_then(|n| n.parse().ok())
            .filter(|i| (1..=7).contains(i))
            .ok_or_else(|| usage(format!("unknown coefficient {var:?}; use a1..a7")))?;
        coeffs[7 - i] = parse_coeff(&ctx, value)?;
    }

    let label = coeffs
        .iter()
        .map(|c| match c {
            Coeff::Field(x) => ctx.format_element(*x),
            Coeff::Symbolic(p) => p.to_string(),
        })
        .collect::<Vec<_>>()
        .join(",");

    let value = if coeffs.iter().all(|c| matches!(c, Coeff::Field(_))) {
        let vals: [FieldElement; 7] = std::array::from_fn(|i| match coeffs[i] {
            Coeff::Field(x) => x,
            Coeff::Symbolic(_) => unreachable!(),
        });
        ctx.format_element(hc(&ctx, a.r, a.k, &vals)?)
    } else {
        let mut polys: [SparsePoly7; 7] = Default::default();
        for (slot, c) in polys.iter_mut().zip(&coeffs) {
            *slot = match c {
                Coeff::Symbolic(p) => p.clone(),
                Coeff::Field(x) if *x == FieldElement::ZERO => SparsePoly7::zero(),
                Coeff::Field(x) if *x == FieldElement::ONE => SparsePoly7::one(),
                Coeff::Field(x) => {
                    return Err(usage(format!(
                        "symbolic HC is computed over F2[a1..a7]; the constant {} is not in F2",
                        ctx.format_element(*x)
                    )))
                }
            };
        }
        hc_symbolic(a.r, a.k, &polys)?.to_string()
    };
    match a.format {
        Format::Text => println!("{value}"),
        Format::Json => print_json(&json!({ "r": a.r, "k": a.k, "coeffs": label, "value": value })),
    }
    Ok(true)
}

fn run_is_pp(a: PpArgs) -> Outcome {
    let ctx = field(a.field.r)?;
    let f = normalized_octic(&ctx, &a.field.coeffs)?;
    let pp = match a.method {
        Method::Wan => is_pp_wan(&f)?,
        Method::Brute => is_pp_brute(&f),
        Method::Hermite => hermite_full_check(&f, KRange::Odd)?,
    };
    let verdict = if pp { "PP" } else { "not PP" };
    match a.field.format {
        Format::Text => println!("{verdict}"),
        Format::Json => print_json(&json!({ "r": ctx.r(), "tuple": f.log_tuple(), "pp": pp })),
    }
    Ok(pp)
}

fn run_is_exceptional(a: FieldArgs) -> Outcome {
    let ctx = field(a.r)?;
    let f = normalized_octic(&ctx, &a.coeffs)?;
    let exc = is_exceptional_deg8(&f)?;
    let verdict = if exc {
        "exceptional"
    } else {
        "not exceptional"
    };
    match a.format {
        Format::Text => println!("{verdict}"),
        Format::Json => {
            print_json(&json!({ "r": ctx.r(), "tuple": f.log_tuple(), "exceptional": exc }))
        }
    }
    Ok(exc)
}

fn run_normalize(a: NormalizeArgs) -> Outcome {
    let ctx = field(a.r)?;
    let v = parse_list(&ctx, &a.coeffs)?;
    let h = match v.len() {
        7 => Octic::normalized(&ctx, v.try_into().expect("length checked"))?,
        9 => {
            let mut low_to_high = [FieldElement::ZERO; 9];
            for (i, x) in v.into_iter().enumerate() {
                low_to_high[8 - i] = x;
            }
            Octic::new(&ctx, low_to_high)?
        }
        n => {
            return Err(usage(format!(
                "expected 7 (a7..a1) or 9 (a8..a0) coefficients, got {n}"
            )))
        }
    };
    let nf = normalize(&h)?;
    let w = nf.witness;
    let fmt = |x: FieldElement| ctx.format_element(x);
    let (octic, frob_j) = if a.frobenius_reduce {
        let red = frobenius_reduce(&nf.octic)?;
        (red.form.octic, Some(red.j))
    } else {
        (nf.octic, None)
    };
    let tuple = format_tuple(&ctx, &octic.log_tuple(), ElementStyle::Log)?;
    match a.format {
        Format::Text => {
            println!("{tuple}");
            println!("{}", octic.to_poly_string());
            println!(
                "witness s={} t={} u={} v={}",
                fmt(w.s),
                fmt(w.t),
                fmt(w.u),
                fmt(w.v)
            );
            if let Some(j) = frob_j {
                println!(
                    "input is linearly related to the image of this form under a -> a^(2^{j})"
                );
            }
        }
        Format::Json => print_json(&json!({
            "r": ctx.r(),
            "tuple": octic.log_tuple(),
            "polynomial": octic.to_poly_string(),
            "witness": { "s": fmt(w.s), "t": fmt(w.t), "u": fmt(w.u), "v": fmt(w.v) },
            "frobenius_power": frob_j,
        })),
    }
    Ok(true)
}

fn run_classify(a: ClassifyArgs) -> Outcome {
    let ctx = field(a.r)?;
    let mut c = classify(&ctx)?;
    if a.frobenius_reduce {
        // Records are filtered, so their links into the full list no longer apply.
        c.records.retain(|rec| rec.frobenius_rep);
        for rec in &mut c.records {
            rec.pair_link = None;
        }
    }
    let style = if a.basis {
        ElementStyle::Basis
    } else {
        ElementStyle::Log
    };
    let body = match a.format {
        Format::Text => render_text(&ctx, &c, false, style)?,
        Format::Json => {
            let mut doc =
                serde_json::to_value(ReportDocument::from(&c)).expect("document serializes");
            if a.basis {
                for entry in doc["classes"].as_array_mut().expect("classes is an array") {
                    for key in ["a7", "a6", "a5", "a4", "a3", "a2", "a1"] {
                        let i = entry[key].as_u64().expect("log index") as u32;
                        entry[key] = json!(format!("{:#x}", ctx.from_log_index(i)?.bits()));
                    }
                }
            }
            serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
        }
    };
    match &a.out {
        Some(dir) => {
            let stamp = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let ext = match a.format {
                Format::Text => "txt",
                Format::Json => "json",
            };
            fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("classify-r{}-{stamp}.{ext}", a.r));
            fs::write(&path, body).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    eprintln!("{}", c.verdict());
    Ok(c.report.passed())
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let ctx = field(a.r)?;
    let report: ProofReport = match a.r {
        7 => verify_r7(&ctx)?,
        8 => verify_r8(&ctx)?,
        9 => verify_r9(&ctx)?,
        r => return Err(usage(format!("verify covers r = 7, 8, 9, got r = {r}"))),
    };
    let passed = report.passed();
    let verdict = if passed {
        format!("no non-exceptional degree-8 PP over GF(2^{})", a.r)
    } else {
        "FAIL".to_string()
    };
    match a.format {
        Format::Text => {
            for s in &report.steps {
                println!("{}  {}", s.status, s.name);
                if s.status == StepStatus::Fail {
                    println!("      {}", s.detail);
                }
            }
            println!("{verdict}");
        }
        Format::Json => {
            let steps: Vec<_> = report
                .steps
                .iter()
                .map(|s| json!({ "name": s.name, "status": s.status.to_string(), "detail": s.detail }))
                .collect();
            print_json(
                &json!({ "r": a.r, "modulus": format!("{:#x}", ctx.modulus()), "proof_steps": steps, "verdict": verdict }),
            );
        }
    }
    Ok(passed)
}
