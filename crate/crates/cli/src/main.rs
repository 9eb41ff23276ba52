//! `meshforge`: normal forms, bases and dimensions of quiver presentations,
//! plus the F4 verification pipelines.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use meshforge::exactcoeff::FieldSpec;
use meshforge::f4suite::{
    constraint_equivalence_check, corner_check, is_admissible, isomorphism_certificate, nakayama_permutation,
    sample_admissible, solve_substitution, verify_inverse, verify_lemma_basis, verify_proof_identities,
    verify_substitution, verify_theorem, DeformationF4, F4Context, F4Error, SolverOptions,
};
use meshforge::pathcore::{parse_element, parse_presentation, Presentation};
use meshforge::report::VerificationReport;
use meshforge::rewrite::{complete_with, graded_oracle, CompletionOptions, MonomialOrder, RewriteSystem};

#[derive(Parser)]
#[command(name = "meshforge", version, about = "Exact computations in quotients of quiver path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Q or F<p>; overrides the `field` line of input files
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Starting overlap-degree cap for completion (doubles up to 64)
    #[arg(long, global = true, env = "MESHFORGE_CAP", default_value_t = 12)]
    cap: usize,
    /// Arrow precedence for the deg-lex order, e.g. "b,a,c"
    #[arg(long, global = true)]
    precedence: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled deformations for iso-check
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    /// Write the JSON report to PATH (`-` for stdout)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Keep wall-clock timings in reports
    #[arg(long, global = true)]
    timings: bool,
    /// Worker threads for independent instances
    #[arg(long, global = true, env = "MESHFORGE_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an element
    Nf { file: PathBuf, expr: String },
    /// Irreducible words of the completed system
    Basis { file: PathBuf },
    /// Total and graded dimension
    Dim { file: PathBuf },
    /// Whether rad^n is zero
    Radzero { file: PathBuf, n: usize },
    /// Graded dimensions from dense elimination, compared with the rewriting basis
    Oracle { file: PathBuf },
    /// Admissibility of f = sum theta_i m_i (order xx, xy, yx, xxx, xxy, yxx, xxxx, xxxy, xxxxx)
    Admissible {
        #[arg(long)]
        theta: String,
    },
    /// Built-in F4 verification pipelines
    Verify {
        target: Target,
        /// Ground deformation; symbolic in the free parameters when omitted
        #[arg(long)]
        theta: Option<String>,
    },
    /// Solve for a change of generators
    SolveSub {
        #[arg(long)]
        theta: Option<String>,
        /// Largest correction degree
        #[arg(long, default_value_t = 9)]
        ansatz_cap: usize,
        /// Let every arrow carry a correction
        #[arg(long)]
        widen: bool,
    },
    /// Isomorphism certificates for sampled (or given) ground deformations
    IsoCheck {
        #[arg(long)]
        theta: Option<String>,
    },
    /// Socles of the projectives of the F4 mesh algebra
    Nakayama,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    F4Lemma,
    F4Corner,
    F4Proof,
    F4Theorem,
}

/// Result of a command: the report, plus a short text rendering for the
/// engine queries.
struct Outcome {
    report: VerificationReport,
    text: Option<String>,
}

impl From<VerificationReport> for Outcome {
    fn from(report: VerificationReport) -> Self {
        Outcome { report, text: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => emit(out, &cli.opts),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(mut out: Outcome, opts: &Opts) -> ExitCode {
    if !opts.timings {
        out.report.strip_timings();
    }
    out.report.seed = Some(opts.seed);
    let to_stdout = opts.json.as_deref() == Some(Path::new("-"));
    if let Some(path) = &opts.json {
        let json = serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n";
        let written = if to_stdout {
            std::io::stdout().write_all(json.as_bytes())
        } else {
            fs::write(path, json)
        };
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !to_stdout {
        match &out.text {
            Some(t) => {
                println!("{t}");
                for e in out.report.entries.iter().filter(|e| !e.status.is_pass()) {
                    println!("FAIL {} {} | residual: {}", e.id, e.label, e.residual);
                }
            }
            None => println!("{}", out.report),
        }
    }
    if out.report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn field(opts: &Opts) -> FieldSpec {
    opts.field.unwrap_or(FieldSpec::Rationals)
}

fn load(path: &Path, field: Option<FieldSpec>) -> Result<Presentation, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = match field {
        None => text,
        Some(f) => {
            let mut out = String::new();
            let mut seen = false;
            for line in text.lines() {
                let bare = line.split('#').next().unwrap_or("").trim_start();
                if bare.starts_with("field ") || bare == "field" {
                    out.push_str(&format!("field {f}\n"));
                    seen = true;
                } else {
                    out.push_str(line);
                    out.push('\n');
                    if !seen && bare.starts_with("algebra ") {
                        out.push_str(&format!("field {f}\n"));
                        seen = true;
                    }
                }
            }
            out
        }
    };
    parse_presentation(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn system(p: &Presentation, opts: &Opts) -> Result<RewriteSystem, String> {
    let order = match &opts.precedence {
        Some(s) => Some(MonomialOrder::parse(p.quiver(), s).map_err(|e| e.to_string())?),
        None => None,
    };
    let o = CompletionOptions {
        cap: opts.cap,
        order,
        ..Default::default()
    };
    complete_with(p, &o).map_err(|e| e.to_string())
}

fn engine_report(name: &str, p: &Presentation, sys: &RewriteSystem) -> VerificationReport {
    let mut rep = VerificationReport::new(name, p.ring().field());
    rep.fact("algebra", p.name());
    rep.fact("order", sys.order().names(p.quiver()).join(","));
    rep.fact("rules", sys.num_rules());
    rep
}

fn deformation(theta: Option<&str>, field: FieldSpec) -> Result<DeformationF4, F4Error> {
    match theta {
        Some(t) => DeformationF4::parse(field, t),
        None => Ok(DeformationF4::normalized_symbolic(field)),
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let opts = &cli.opts;
    let err = |e: F4Error| e.to_string();
    Ok(match &cli.command {
        Command::Nf { file, expr } => {
            let p = load(file, opts.field)?;
            let sys = system(&p, opts)?;
            let e = parse_element(p.quiver(), p.ring(), expr).map_err(|e| e.to_string())?;
            let nf = sys.normal_form(&e).map_err(|e| e.to_string())?;
            let mut rep = engine_report("nf", &p, &sys);
            rep.fact("input", expr);
            rep.fact("normal_form", &nf);
            Outcome {
                report: rep,
                text: Some(nf.to_string()),
            }
        }
        Command::Basis { file } => {
            let p = load(file, opts.field)?;
            let sys = system(&p, opts)?;
            let b = sys.basis().map_err(|e| e.to_string())?;
            let mut rep = engine_report("basis", &p, &sys);
            let words: Vec<String> = b.words.iter().map(|w| w.display(p.quiver()).to_string()).collect();
            rep.fact("dim", b.dim());
            rep.fact("graded", format!("{:?}", b.graded));
            rep.fact("words", words.join(" "));
            Outcome {
                report: rep,
                text: Some(words.join("\n")),
            }
        }
        Command::Dim { file } => {
            let p = load(file, opts.field)?;
            let sys = system(&p, opts)?;
            let b = sys.basis().map_err(|e| e.to_string())?;
            let mut rep = engine_report("dim", &p, &sys);
            rep.fact("dim", b.dim());
            rep.fact("graded", format!("{:?}", b.graded));
            Outcome {
                report: rep,
                text: Some(format!("{} {:?}", b.dim(), b.graded)),
            }
        }
        Command::Radzero { file, n } => {
            let p = load(file, opts.field)?;
            let sys = system(&p, opts)?;
            let zero = sys.radical_power_is_zero(*n).map_err(|e| e.to_string())?;
            let mut rep = engine_report("radzero", &p, &sys);
            rep.check_bool(&format!("rad{n}"), &format!("rad^{n} = 0"), zero, zero, None);
            Outcome {
                report: rep,
                text: Some(zero.to_string()),
            }
        }
        Command::Oracle { file } => {
            let p = load(file, opts.field)?;
            let sys = system(&p, opts)?;
            let b = sys.basis().map_err(|e| e.to_string())?;
            let top = b.graded.len();
            let o = graded_oracle(&p, top).map_err(|e| e.to_string())?;
            let mut rep = engine_report("oracle", &p, &sys);
            for d in 0..=top {
                let (a, c) = (b.graded.get(d).copied().unwrap_or(0), o.graded[d]);
                rep.check_bool(
                    &format!("degree.{d}"),
                    &format!("degree {d}: rewriting basis matches dense elimination"),
                    a == c,
                    format!("{a} vs {c}"),
                    None,
                );
            }
            rep.fact("dim", b.dim());
            rep.into()
        }
        Command::Admissible { theta } => {
            let f = DeformationF4::parse(field(opts), theta).map_err(err)?;
            let a = is_admissible(&f).map_err(err)?;
            let mut rep = VerificationReport::new("admissible", field(opts));
            rep.fact("f", &f);
            let detail = match &a.violated {
                Some((w, c)) => format!("coefficient of {w} is {c}"),
                None => "0".to_string(),
            };
            rep.check_bool("admissible", "(x + y + f)^2 = 0 in R(F4)", a.admissible, &detail, None);
            let text = match &a.violated {
                Some(_) => format!("admissible=false ({detail})"),
                None => "admissible=true".to_string(),
            };
            Outcome {
                report: rep,
                text: Some(text),
            }
        }
        Command::Verify { target, theta } => {
            let field = field(opts);
            let ctx = F4Context::new(field).map_err(err)?;
            match target {
                Target::F4Lemma => {
                    let mut rep = verify_lemma_basis(&ctx).map_err(err)?;
                    rep.absorb("constraints", constraint_equivalence_check(field).map_err(err)?);
                    rep.into()
                }
                Target::F4Corner => corner_check(&ctx).map_err(err)?.into(),
                Target::F4Proof => {
                    let f = deformation(theta.as_deref(), field).map_err(err)?;
                    verify_proof_identities(&ctx, &f).map_err(err)?.into()
                }
                Target::F4Theorem => {
                    let f = deformation(theta.as_deref(), field).map_err(err)?;
                    verify_theorem(&ctx, &f, f.mode()).map_err(err)?.1.into()
                }
            }
        }
        Command::SolveSub {
            theta,
            ansatz_cap,
            widen,
        } => {
            let ctx = F4Context::new(field(opts)).map_err(err)?;
            let f = deformation(theta.as_deref(), field(opts)).map_err(err)?;
            let mut so = SolverOptions {
                ansatz_cap: *ansatz_cap,
                ..Default::default()
            };
            if *widen {
                so = so.widened(&ctx);
            }
            let sub = solve_substitution(&ctx, &f, &so).map_err(err)?;
            let mut rep = verify_substitution(&ctx, &sub, &f, f.mode()).map_err(err)?;
            rep.name = "solve-sub".into();
            let mut inv = verify_inverse(&ctx, &sub, &f).map_err(err)?;
            inv.errata.clear();
            rep.absorb("", inv);
            rep.fact("substitution", &sub);
            rep.into()
        }
        Command::IsoCheck { theta } => {
            let field = field(opts);
            let ctx = F4Context::new(field).map_err(err)?;
            let fs: Vec<DeformationF4> = match theta {
                Some(t) => vec![DeformationF4::parse(field, t).map_err(err)?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    (0..opts.samples).map(|_| sample_admissible(field, &mut rng)).collect()
                }
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs.max(1))
                .build()
                .map_err(|e| e.to_string())?;
            let certs = pool.install(|| {
                fs.par_iter()
                    .map(|f| isomorphism_certificate(&ctx, f, Some(opts.seed)))
                    .collect::<Result<Vec<_>, _>>()
            });
            let mut rep = VerificationReport::new("iso-check", field);
            for (k, c) in certs.map_err(err)?.into_iter().enumerate() {
                rep.absorb(&format!("sample.{k}"), c.report());
            }
            rep.into()
        }
        Command::Nakayama => {
            let ctx = F4Context::new(field(opts)).map_err(err)?;
            nakayama_permutation(&ctx).map_err(err)?.1.into()
        }
    })
}
