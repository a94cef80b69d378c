use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use colsig::algebra::{CMat, TorusPoint};
use colsig::braid::{BraidWord, Coloring};
use colsig::gassner::{reduce_symbolic, reduced_burau, unreduced_burau, xi_form, xi_symbolic, LMat};
use colsig::linalg::Subspace;
use colsig::linksig::{additivity_defect, braid_signature, ccomplex_signature, unlinking_bound, CComplexData, SignatureResult};
use colsig::maslov::{maslov, maslov_alt, meyer, IsotropicTriple, MaslovAlt, UnitaryPair};
use colsig::verify::{run_suite, Suite};
use colsig::{Ctx, Error};

#[derive(Parser)]
#[command(name = "colsig", version, about = "Multivariable signatures of colored braid closures")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Compute outside the set where results are guaranteed.
    #[arg(long, global = true)]
    force: bool,
    /// Working precision in bits.
    #[arg(long, global = true, env = "COLSIG_PRECISION", default_value_t = 128)]
    precision: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Signature of a braid closure or a C-complex.
    Signature {
        #[command(subcommand)]
        src: SigSource,
    },
    /// Reduced (or unreduced) colored Gassner matrix.
    Burau {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, conflicts_with = "symbolic")]
        omega: Option<String>,
        /// Exact matrix over the Laurent ring.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        unreduced: bool,
    },
    /// Skew-Hermitian form ξ on the reduced module.
    Form {
        #[arg(long)]
        colors: String,
        #[arg(long, conflicts_with = "symbolic")]
        omega: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Meyer cocycle of the matrices of two endomorphisms.
    Meyer {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        colors: String,
        #[arg(long)]
        omega: String,
    },
    /// Maslov index of an isotropic triple read from a JSON file.
    Maslov {
        #[arg(long)]
        file: PathBuf,
    },
    /// Signature defect of a composite against minus the Meyer cocycle.
    Defect {
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        colors: String,
        #[arg(long)]
        omega: String,
    },
    /// Lower bound on the unlinking number from the signature.
    Bound {
        #[command(flatten)]
        braid: BraidArgs,
        #[command(flatten)]
        at: PointArgs,
    },
    /// Randomized property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SigSource {
    Braid {
        #[command(flatten)]
        braid: BraidArgs,
        #[command(flatten)]
        at: PointArgs,
    },
    Ccomplex {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        at: PointArgs,
    },
}

#[derive(Args)]
struct BraidArgs {
    /// Letters as signed indices, e.g. "1 -2 1".
    #[arg(long)]
    word: String,
    /// Strand colors with orientation signs, e.g. "1,-2,1".
    #[arg(long)]
    colors: String,
}

#[derive(Args)]
struct PointArgs {
    /// Rotation fractions, e.g. "1/2,1/3".
    #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
    omega: Option<String>,
    /// All points with coordinates a/N, 1 ≤ a < N.
    #[arg(long)]
    grid: Option<u64>,
}

enum Output {
    Records(Vec<Value>),
    Matrix(Vec<Vec<String>>, Value),
}

fn fmt_num(x: f64) -> String {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn numeric(m: &CMat) -> Output {
    let rows = m
        .to_f64()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(re, im)| match (fmt_num(re).as_str(), fmt_num(im).as_str()) {
                    (a, "0") => a.to_string(),
                    ("0", b) => format!("{b}i"),
                    (a, b) if b.starts_with('-') => format!("{a}{b}i"),
                    (a, b) => format!("{a}+{b}i"),
                })
                .collect()
        })
        .collect();
    Output::Matrix(rows, m.to_json())
}

fn symbolic(m: &LMat) -> Output {
    let rows = (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect();
    Output::Matrix(rows, m.to_json())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit(out: Output, format: Format) {
    match (out, format) {
        (Output::Records(r), Format::Json) => {
            let v = if r.len() == 1 { r.into_iter().next().unwrap() } else { Value::Array(r) };
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        (Output::Records(r), Format::Csv) => {
            if let Some(Value::Object(first)) = r.first() {
                let keys: Vec<&String> = first.keys().collect();
                println!("{}", keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(","));
                for rec in &r {
                    println!("{}", keys.iter().map(|k| csv_field(&scalar(&rec[k.as_str()]))).collect::<Vec<_>>().join(","));
                }
            }
        }
        (Output::Records(r), Format::Text) => {
            for rec in &r {
                if let Value::Object(m) = rec {
                    if m.len() == 1 {
                        println!("{}", scalar(m.values().next().unwrap()));
                    } else {
                        println!("{}", m.iter().map(|(k, v)| format!("{k}: {}", scalar(v))).collect::<Vec<_>>().join(", "));
                    }
                }
            }
        }
        (Output::Matrix(_, j), Format::Json) => println!("{}", serde_json::to_string_pretty(&j).unwrap()),
        (Output::Matrix(rows, _), Format::Csv) => {
            for r in rows {
                println!("{}", r.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
            }
        }
        (Output::Matrix(rows, _), Format::Text) => {
            for r in rows {
                println!("({})", r.join(", "));
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutsideGuarantee(_) | Error::EvaluationAtOne(_) => 3,
        Error::PrecisionExhausted(_) | Error::NearWall(_) | Error::NotInSum(_) | Error::Singular | Error::SubspaceNotInvariant(_) => 4,
        _ => 2,
    }
}

fn parse_braid(b: &BraidArgs) -> colsig::Result<BraidWord> {
    BraidWord::parse(&b.word, &Coloring::parse(&b.colors, None)?)
}

/// Coloring with μ fixed by the torus point when one is given.
fn parse_coloring(colors: &str, omega: Option<&TorusPoint>) -> colsig::Result<Coloring> {
    let c = Coloring::parse(colors, None)?;
    match omega {
        Some(p) if p.num_vars() > c.mu() => c.with_mu(p.num_vars()),
        _ => Ok(c),
    }
}

fn braid_for(b: &BraidArgs, omega: Option<&TorusPoint>) -> colsig::Result<BraidWord> {
    BraidWord::parse(&b.word, &parse_coloring(&b.colors, omega)?).or_else(|_| parse_braid(b))
}

/// Points of a grid sweep; coordinates with a_i = 0 never occur. Points
/// outside the guaranteed set are dropped unless forced.
fn sweep(at: &PointArgs, mu: usize, force: bool, guard: bool) -> colsig::Result<Vec<TorusPoint>> {
    match (&at.omega, at.grid) {
        (Some(s), _) => Ok(vec![TorusPoint::parse(s)?]),
        (None, Some(n)) => {
            let pts = TorusPoint::grid(n, mu);
            let total = pts.len();
            let kept: Vec<TorusPoint> = pts.into_iter().filter(|p| force || !guard || p.is_in_tp()).collect();
            if kept.len() < total {
                eprintln!("skipped {} grid points outside the guaranteed set (use --force to include them)", total - kept.len());
            }
            Ok(kept)
        }
        (None, None) => Err(Error::Parse("give --omega or --grid".into())),
    }
}

fn inertia_record(key: &str, i: colsig::linalg::Inertia) -> Value {
    let mut m = Map::new();
    m.insert(key.to_string(), json!(i.signature()));
    m.insert("pos".into(), json!(i.pos));
    m.insert("neg".into(), json!(i.neg));
    m.insert("null".into(), json!(i.null));
    Value::Object(m)
}

fn read(path: &PathBuf) -> colsig::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> colsig::Result<(Output, bool)> {
    let ctx = Ctx::new(cli.precision);
    let force = cli.force;
    let sig_records = |rs: Vec<SignatureResult>| Output::Records(rs.iter().map(SignatureResult::to_json).collect());
    Ok(match &cli.cmd {
        Cmd::Signature { src: SigSource::Braid { braid, at } } => {
            let w0 = parse_braid(braid)?;
            let pts = sweep(at, w0.bottom().mu(), force, true)?;
            let w = braid_for(braid, pts.first())?;
            let rs = pts.iter().map(|p| braid_signature(&w, p, force, &ctx)).collect::<colsig::Result<Vec<_>>>()?;
            (sig_records(rs), true)
        }
        Cmd::Signature { src: SigSource::Ccomplex { file, at } } => {
            let data = CComplexData::from_json(&read(file)?)?;
            let pts = sweep(at, data.mu(), true, false)?;
            let rs = pts.iter().map(|p| ccomplex_signature(&data, p, &ctx)).collect::<colsig::Result<Vec<_>>>()?;
            (sig_records(rs), true)
        }
        Cmd::Burau { braid, omega, symbolic: sym, unreduced } => {
            let point = omega.as_deref().map(TorusPoint::parse).transpose()?;
            let w = braid_for(braid, point.as_ref())?;
            let u = unreduced_burau(&w);
            let out = match (point, *unreduced) {
                (None, true) => symbolic(&u.matrix),
                (None, false) if *sym => symbolic(&reduce_symbolic(&u)?.matrix),
                (None, false) => return Err(Error::Parse("give --omega or --symbolic".into())),
                (Some(p), true) => numeric(&u.matrix.evaluate(&p, ctx.bits)?),
                (Some(p), false) => numeric(&reduced_burau(&w, &p, &ctx)?.matrix),
            };
            (out, true)
        }
        Cmd::Form { colors, omega, symbolic: sym } => {
            let point = omega.as_deref().map(TorusPoint::parse).transpose()?;
            let c = parse_coloring(colors, point.as_ref())?;
            let out = match point {
                Some(p) => numeric(&xi_form(&c, &p, &ctx)?.matrix),
                None if *sym => symbolic(&xi_symbolic(&c)),
                None => return Err(Error::Parse("give --omega or --symbolic".into())),
            };
            (out, true)
        }
        Cmd::Meyer { alpha, beta, colors, omega } => {
            let p = TorusPoint::parse(omega)?;
            let c = parse_coloring(colors, Some(&p))?;
            let (a, b) = (BraidWord::parse(alpha, &c)?, BraidWord::parse(beta, &c)?);
            if !a.is_endomorphism() || !b.is_endomorphism() {
                return Err(Error::NotEndomorphism);
            }
            let pair = UnitaryPair::new(
                xi_form(&c, &p, &ctx)?.matrix,
                reduced_burau(&a, &p, &ctx)?.matrix,
                reduced_burau(&b, &p, &ctx)?.matrix,
                &ctx,
            )?;
            (Output::Records(vec![inertia_record("meyer", meyer(&pair, &ctx)?)]), true)
        }
        Cmd::Maslov { file } => {
            let v: Value = serde_json::from_str(&read(file)?).map_err(|e| Error::Parse(format!("maslov json: {e}")))?;
            let form = CMat::from_json(&v["form"], ctx.bits)?;
            let subs = v["subspaces"].as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Parse("need three subspaces".into()))?;
            let subs = subs
                .iter()
                .map(|s| {
                    let m = CMat::from_json(s, ctx.bits)?;
                    if m.cols() == 0 {
                        Ok(Subspace::zero(form.rows(), ctx.bits))
                    } else {
                        Subspace::span(&m, &ctx)
                    }
                })
                .collect::<colsig::Result<Vec<_>>>()?;
            let [l1, l2, l3]: [Subspace; 3] = subs.try_into().map_err(|_| Error::Parse("need three subspaces".into()))?;
            let t = IsotropicTriple::new(form, l1, l2, l3, &ctx)?;
            let mut rec = inertia_record("maslov", maslov(&t, &ctx)?);
            rec["quotient"] = json!(maslov_alt(&t, MaslovAlt::Quotient, &ctx)?.signature());
            rec["kernel"] = json!(maslov_alt(&t, MaslovAlt::GgKernel, &ctx)?.signature());
            (Output::Records(vec![rec]), true)
        }
        Cmd::Defect { w1, w2, colors, omega } => {
            let p = TorusPoint::parse(omega)?;
            let c = parse_coloring(colors, Some(&p))?;
            let d = additivity_defect(&BraidWord::parse(w1, &c)?, &BraidWord::parse(w2, &c)?, &p, force, &ctx)?;
            (Output::Records(vec![json!({ "lhs": d.lhs, "rhs": d.rhs, "guaranteed": d.guaranteed })]), true)
        }
        Cmd::Bound { braid, at } => {
            let w0 = parse_braid(braid)?;
            let pts = sweep(at, w0.bottom().mu(), force, true)?;
            let w = braid_for(braid, pts.first())?;
            let mut recs = Vec::new();
            for p in &pts {
                let (r, b) = unlinking_bound(&w, p, force, &ctx)?;
                let mut v = r.to_json();
                v["unlinking_bound"] = json!(b);
                recs.push(v);
            }
            (Output::Records(recs), true)
        }
        Cmd::Verify { suite, trials, seed } => {
            let s: Suite = suite.parse()?;
            let reports = run_suite(s, *trials, *seed, &ctx);
            let ok = reports.iter().all(|r| r.ok());
            (Output::Records(reports.iter().map(|r| r.to_json()).collect()), ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.precision < 64 {
        eprintln!("error: precision must be at least 64 bits");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok((out, ok)) => {
            emit(out, cli.output);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
