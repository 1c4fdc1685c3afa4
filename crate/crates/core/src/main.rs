use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fibercone::analysis::{analyze, Config};
use fibercone::hilbert::{HilbertSeries, Verdict};
use fibercone::multiplicity::{self, FitOptions, MultiplicityClass};
use fibercone::report::{self, Flat};
use fibercone::search::{self, SearchKind, SearchParams};
use fibercone::spec::RingSpec;
use fibercone::Error;

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "fibercone", version, about = "Fiber cones, mixed multiplicities and reduction indices of m-primary ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Prime characteristic of the coefficient field.
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Seed for the random elements (joint reductions, regular sequences).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of fiber-cone coefficients computed.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// Degree bound for index searches and nonzerodivisor criteria.
    #[arg(long = "Nmax", global = true)]
    n_max: Option<u32>,
    /// Bound for certifying joint reductions.
    #[arg(long, global = true)]
    nmax: Option<u32>,
    /// Number of random joint reductions / candidate elements sampled.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Extra series coefficients required to confirm the numerator.
    #[arg(long, global = true)]
    guard: Option<usize>,
    /// Emit a single flat JSON object.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: multiplicities, indices, depth certificates, series, verdicts.
    Analyze { file: PathBuf },
    /// Theorem verdict; exit 0 on Match, 1 on certified mismatch, 3 otherwise.
    Verify { file: PathBuf },
    /// Truncated fiber-cone series and its reconstructed numerator.
    Hilbert { file: PathBuf },
    /// Mixed multiplicities and classification.
    Mixedmult { file: PathBuf },
    /// Reduction indices, deficits and depth certificates.
    Reductions { file: PathBuf },
    /// Random search for ideals of a given class.
    Search {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Polynomial,
    Semigroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Minimal,
    AlmostMinimal,
}

impl Cli {
    fn apply(&self, cfg: &mut Config) {
        if let Some(p) = self.prime {
            cfg.prime = p;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trunc {
            cfg.trunc = t;
        }
        if let Some(n) = self.n_max {
            cfg.n_max = n;
        }
        if let Some(n) = self.nmax {
            cfg.nmax = n;
        }
        if let Some(k) = self.samples {
            cfg.samples = k;
        }
        if let Some(g) = self.guard {
            cfg.guard = g;
        }
    }

    fn emit(&self, f: &Flat) {
        if self.json {
            println!("{}", f.to_json());
        } else {
            print!("{}", f.to_text());
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::NoStabilization(_)
        | Error::TruncationTooShort
        | Error::FitUnstable(_)
        | Error::NoReductionFound(_)
        | Error::UncertifiedJointReduction
        | Error::ContainmentFailed(_) => INCONCLUSIVE,
        _ => INPUT_ERROR,
    }
}

fn load(cli: &Cli, file: &PathBuf) -> Result<RingSpec, (u8, String)> {
    let text = std::fs::read_to_string(file).map_err(|e| (INPUT_ERROR, format!("{}: {e}", file.display())))?;
    let mut spec = RingSpec::parse(&text).map_err(|e| (INPUT_ERROR, format!("{}: {e}", file.display())))?;
    cli.apply(&mut spec.config);
    spec.validate().map_err(|e| (INPUT_ERROR, e.to_string()))?;
    Ok(spec)
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    let fail = |e: Error| (error_code(&e), e.to_string());
    match &cli.command {
        Command::Analyze { file } | Command::Reductions { file } => {
            let spec = load(cli, file)?;
            let r = analyze(&spec.subject().map_err(fail)?, &spec.config).map_err(fail)?;
            let flat = match cli.command {
                Command::Analyze { .. } => report::flatten(&r),
                _ => {
                    let mut f = report::config_flat(&r);
                    f.extend(report::reductions_flat(&r));
                    f
                }
            };
            cli.emit(&flat);
            Ok(if r.theorem.red_alert() { MISMATCH } else { OK })
        }
        Command::Verify { file } => {
            let spec = load(cli, file)?;
            let r = analyze(&spec.subject().map_err(fail)?, &spec.config).map_err(fail)?;
            let mut flat = report::config_flat(&r);
            flat.extend(report::series_flat(&r));
            flat.extend(report::theorem_flat(&r.theorem));
            cli.emit(&flat);
            Ok(match r.theorem.verdict {
                Verdict::Match => OK,
                Verdict::Mismatch if r.theorem.red_alert() => MISMATCH,
                _ => INCONCLUSIVE,
            })
        }
        Command::Hilbert { file } => {
            let spec = load(cli, file)?;
            let subject = spec.subject().map_err(fail)?;
            let d = subject.dim();
            let series = HilbertSeries::new(subject.mu_powers(spec.config.trunc), d, spec.config.guard);
            let mut f = Flat::default();
            f.push("kind", subject.kind());
            f.push("dim", d);
            f.push("series.trunc", spec.config.trunc);
            f.push("series.mu_vector", series.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            f.push("series.guard", spec.config.guard);
            f.push("series.numerator", series.numerator.as_ref().map_or("TruncationTooShort".into(), |n| n.to_string()));
            cli.emit(&f);
            Ok(if series.numerator.is_some() { OK } else { INCONCLUSIVE })
        }
        Command::Mixedmult { file } => {
            let spec = load(cli, file)?;
            let (mixed, mu, d, kind) = match spec.subject().map_err(fail)? {
                fibercone::analysis::Subject::Semigroup(i) => (multiplicity::dim1_table(&i), i.mu(), 1, "semigroup"),
                fibercone::analysis::Subject::Polynomial(c) => (
                    multiplicity::fit_bhattacharya(c.ideal(), FitOptions::default()).map_err(fail)?,
                    c.ideal().mu(),
                    c.dim(),
                    "polynomial",
                ),
            };
            let class = multiplicity::classify(d, mu, mixed.mixed(d - 1));
            let mut f = Flat::default();
            f.push("kind", kind);
            f.push("dim", d);
            f.push("mu", mu);
            f.push("mixed_multiplicities", mixed.mixed.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
            f.push("mixed_multiplicities.validated", mixed.validated);
            f.push("classification", class.verdict.as_str());
            f.push("classification.slack", class.slack);
            cli.emit(&f);
            Ok(if mixed.validated { OK } else { INCONCLUSIVE })
        }
        Command::Search { kind, dim, class, budget } => {
            let mut cfg = Config::default();
            cli.apply(&mut cfg);
            let params = SearchParams {
                kind: match kind {
                    KindArg::Polynomial => SearchKind::Polynomial,
                    KindArg::Semigroup => SearchKind::Semigroup,
                },
                dim: match kind {
                    KindArg::Semigroup => 1,
                    KindArg::Polynomial => *dim,
                },
                class: match class {
                    ClassArg::Minimal => MultiplicityClass::Minimal,
                    ClassArg::AlmostMinimal => MultiplicityClass::AlmostMinimal,
                },
                budget: *budget,
            };
            if params.kind == SearchKind::Polynomial && !(1..=4).contains(&params.dim) {
                return Err((INPUT_ERROR, "--dim must be between 1 and 4".into()));
            }
            let hits = search::search(&params, &cfg).map_err(fail)?;
            let mut code = OK;
            for h in &hits {
                let mut f = Flat::default();
                f.push("trial", h.trial);
                f.push("spec", h.spec.to_string().trim_end().replace('\n', "; "));
                f.extend(report::flatten(&h.report));
                f.push("stable_under_reseed", h.stable);
                cli.emit(&f);
                if !cli.json {
                    println!();
                }
                if h.report.theorem.red_alert() {
                    code = MISMATCH;
                }
            }
            eprintln!("{} hits in {} trials", hits.len(), budget);
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { INPUT_ERROR } else { OK };
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
