//! `iet3`: decide, synthesize and inspect substitution invariance of
//! three-interval exchange words.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use iet3_core::capset::{gaps, generate, CapSetConfig};
use iet3_core::iet::{code_orbit, letters_to_bytes};
use iet3_core::invariance::{check_substitution, Checks, SynthesisOptions, Verdict};
use iet3_core::qfield::{parse_field, QuadNum};
use iet3_core::report::{decide_set, FieldInput, ParamSet, Report, PREVIEW_DIGITS};
use iet3_core::sturmian::{sigma, Sigma};
use iet3_core::substitution::orbit_complexity;
use iet3_core::Error;

#[derive(Parser)]
#[command(name = "iet3", version, about = "Substitution invariance of three-interval exchange words")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Step budget of each return walk.
    #[arg(long, env = "IET3_STEP_BUDGET", global = true)]
    step_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide invariance; synthesize the substitution when invariant.
    Decide {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also test the factor complexity up to this length.
        #[arg(long)]
        complexity: Option<usize>,
    },
    /// Synthesize and verify the substitution; fails unless invariant.
    Synthesize {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        complexity: Option<usize>,
    },
    /// Re-check a JSON report produced by `synthesize`.
    Verify {
        /// Report file, or `-` for stdin.
        report: String,
    },
    /// Print the coding of the orbit of 0 over `[from, to)`.
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
        to: i64,
        /// Apply one of the Sturmian morphisms, `01` or `10`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Factor complexity `C(n)` of the coding.
    Complexity {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        /// Window half-width; at least `1000 n_max`.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Points of the cut-and-project set with window `[c, c+l)`, as TSV.
    Capset {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Defaults to `-e'`.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Decide every JSON parameter record of a file (one per line) in
    /// parallel; prints one JSON report per line, in input order.
    Sweep {
        /// Input file, or `-` for stdin.
        input: String,
    },
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// `A,B,C[,+|-]`: the root of `A x^2 + B x + C` taken with the given sign.
    #[arg(long)]
    field: String,
    /// Rotation slope, in (0,1).
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Window length.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// Window start.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Length of the first interval (raw form).
    #[arg(long, allow_hyphen_values = true)]
    alpha1: Option<String>,
    /// Length of the second interval (raw form).
    #[arg(long, allow_hyphen_values = true)]
    alpha2: Option<String>,
    /// Length of the third interval (raw form).
    #[arg(long, allow_hyphen_values = true)]
    alpha3: Option<String>,
    /// Starting point in [0, alpha1+alpha2+alpha3) (raw form).
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
}

impl SpecArgs {
    fn params(&self) -> ParamSet {
        ParamSet {
            field: Some(FieldInput::Text(self.field.clone())),
            eps: self.eps.clone(),
            l: self.l.clone(),
            c: self.c.clone(),
            alpha1: self.alpha1.clone(),
            alpha2: self.alpha2.clone(),
            alpha3: self.alpha3.clone(),
            x0: self.x0.clone(),
        }
    }
}

/// A failure with its exit code: 1 for a negative outcome, 2 for bad input.
struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            Error::StepBudgetExceeded(_)
            | Error::StraddlesDiscontinuity { .. }
            | Error::VerificationFailed(_)
            | Error::NotApplicable(_) => 1,
            _ => 2,
        };
        Failure { code, error }
    }
}

fn io_err(e: io::Error) -> Failure {
    Failure { code: 2, error: Error::Parse(e.to_string()) }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("iet3: {}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn options(cli: &Cli) -> SynthesisOptions {
    let mut opts = SynthesisOptions::default();
    if let Some(b) = cli.step_budget {
        opts.step_budget = b;
    }
    opts
}

fn run(cli: &Cli) -> Outcome {
    let opts = options(cli);
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Decide { spec, complexity } => {
            let (parsed, rep) = decide_set(&spec.params(), &opts)?;
            let mut report = Report::build(parsed.as_ref(), &rep)?;
            if let (Some(n), Some(s)) = (complexity, &parsed) {
                report.add_complexity(s, *n)?;
            }
            emit_report(&mut out, cli.format, &report).map_err(io_err)?;
            Ok(if rep.verdict == Verdict::Invariant { 0 } else { 1 })
        }
        Command::Synthesize { spec, complexity } => {
            let (parsed, rep) = decide_set(&spec.params(), &opts)?;
            if rep.verdict != Verdict::Invariant {
                return Err(Error::NotApplicable(format!("verdict is {}", rep.verdict)).into());
            }
            let mut report = Report::build(parsed.as_ref(), &rep)?;
            if let (Some(n), Some(s)) = (complexity, &parsed) {
                report.add_complexity(s, *n)?;
            }
            emit_report(&mut out, cli.format, &report).map_err(io_err)?;
            Ok(0)
        }
        Command::Verify { report } => {
            let text = read_input(report).map_err(io_err)?;
            let report: Report = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let (spec, lambda, sub) = report.parse_back()?;
            let (Some(lambda), Some(sub)) = (lambda, sub) else {
                return Err(Error::Parse("report carries no lambda or substitution".into()).into());
            };
            let checks = check_substitution(&spec, &lambda, &sub, &opts)?;
            emit_checks(&mut out, cli.format, &checks).map_err(io_err)?;
            Ok(if checks.all_pass() { 0 } else { 1 })
        }
        Command::Generate { spec, from, to, sigma: variant } => {
            let spec = spec.params().spec()?;
            let mut word = letters_to_bytes(&code_orbit(&spec, *from, *to));
            if let Some(v) = variant {
                let v = match v.as_str() {
                    "01" => Sigma::S01,
                    "10" => Sigma::S10,
                    other => return Err(Error::Parse(format!("sigma must be 01 or 10, got {other:?}")).into()),
                };
                word = sigma(v, &word)?;
            }
            let word = String::from_utf8_lossy(&word).into_owned();
            match cli.format {
                Format::Text => writeln!(out, "{word}"),
                Format::Json => writeln!(out, "{}", json!({ "from": from, "to": to, "word": word })),
            }
            .map_err(io_err)?;
            Ok(0)
        }
        Command::Complexity { spec, n_max, radius } => {
            let spec = spec.params().spec()?;
            let radius = radius.unwrap_or(1000 * *n_max as i64);
            let prof = orbit_complexity(&spec, *n_max, radius)?;
            let full = (1..=*n_max).all(|n| prof.counts[n] == 2 * n + 1);
            match cli.format {
                Format::Text => {
                    writeln!(out, "n\tC(n)\t2n+1\tC(n) at 2r").map_err(io_err)?;
                    for n in 1..=*n_max {
                        writeln!(out, "{n}\t{}\t{}\t{}", prof.counts[n], 2 * n + 1, prof.doubled[n])
                            .map_err(io_err)?;
                    }
                    writeln!(out, "complexity 2n+1: {}  stable: {}", yes(full), yes(prof.stable()))
                        .map_err(io_err)?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "n_max": n_max,
                        "radius": radius,
                        "counts": &prof.counts[1..],
                        "doubled": &prof.doubled[1..],
                        "full": full,
                        "stable": prof.stable(),
                    })
                )
                .map_err(io_err)?,
            }
            Ok(if full && prof.stable() { 0 } else { 1 })
        }
        Command::Capset { field, eps, l, c, eta, count } => {
            let f = parse_field(field)?;
            let q = |s: &str| QuadNum::parse(&f, s);
            let (eps, l, c) = (q(eps)?, q(l)?, q(c)?);
            let cfg = match eta {
                Some(eta) => CapSetConfig::new(&eps, &q(eta)?, &c, &l)?,
                None => CapSetConfig::galois(&eps, &c, &l)?,
            };
            let points = generate(&cfg, *count);
            let classes = gaps(&points);
            if cli.format == Format::Text {
                writeln!(out, "a\tb\tdecimal\tgap").map_err(io_err)?;
            }
            for (i, p) in points.iter().enumerate() {
                let gap = classes.get(i).copied().flatten().map(|g| g.to_string()).unwrap_or_default();
                let dec = cfg.value(*p).to_decimal(PREVIEW_DIGITS);
                match cli.format {
                    Format::Text => writeln!(out, "{}\t{}\t{dec}\t{gap}", p.0, p.1),
                    Format::Json => writeln!(out, "{}", json!({ "a": p.0, "b": p.1, "decimal": dec, "gap": gap })),
                }
                .map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Sweep { input } => {
            let text = read_input(input).map_err(io_err)?;
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            let records: Vec<serde_json::Value> = lines
                .par_iter()
                .enumerate()
                .map(|(i, line)| sweep_one(i, line, &opts))
                .collect();
            for r in records {
                writeln!(out, "{r}").map_err(io_err)?;
            }
            Ok(0)
        }
    }
}

fn sweep_one(index: usize, line: &str, opts: &SynthesisOptions) -> serde_json::Value {
    let result = serde_json::from_str::<ParamSet>(line)
        .map_err(|e| Error::Parse(e.to_string()))
        .and_then(|set| {
            let (spec, rep) = decide_set(&set, opts)?;
            Report::build(spec.as_ref(), &rep)
        });
    match result {
        Ok(r) => serde_json::to_value(r).unwrap_or_else(|e| json!({ "line": index, "error": e.to_string() })),
        Err(e) => json!({ "line": index, "error": e.to_string() }),
    }
}

fn read_input(path: &str) -> io::Result<String> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().lock().read_to_string(&mut s)?;
    } else {
        BufReader::new(File::open(path)?).read_to_string(&mut s)?;
    }
    Ok(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn emit_checks(out: &mut impl Write, format: Format, ch: &Checks) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "fixed_point": ch.fixed_point,
                "fixed_point_radius": ch.fixed_point_radius,
                "eigenvector": ch.eigenvector,
                "homothety": ch.homothety,
                "block_starts": ch.block_starts,
                "all_pass": ch.all_pass(),
            })
        ),
        Format::Text => writeln!(
            out,
            "fixed point (radius {}): {}\neigenvector: {}\nhomothety: {}\nblock starts: {}",
            ch.fixed_point_radius,
            yes(ch.fixed_point),
            yes(ch.eigenvector),
            yes(ch.homothety),
            yes(ch.block_starts)
        ),
    }
}

fn emit_report(out: &mut impl Write, format: Format, r: &Report) -> io::Result<()> {
    if format == Format::Json {
        let text = serde_json::to_string_pretty(r).map_err(io::Error::other)?;
        return writeln!(out, "{text}");
    }
    writeln!(out, "verdict: {}", r.verdict)?;
    if let Some(f) = &r.field {
        writeln!(out, "field: {},{},{},{}", f.a, f.b, f.c, f.branch)?;
    }
    for (name, v) in [("eps", &r.eps), ("l", &r.l), ("c", &r.c)] {
        if let Some(v) = v {
            let approx = r.approx.get(name).map(String::as_str).unwrap_or("");
            writeln!(out, "{name} = {v}  (~{approx})")?;
        }
    }
    if let Some(cond) = &r.conditions {
        let ap = |k: &str| r.approx.get(k).map(String::as_str).unwrap_or("");
        writeln!(out, "sturm: {}", cond.sturm)?;
        writeln!(out, "conjugate window: [{}, {}]  (~[{}, {}])", cond.lower, cond.upper, ap("lower"), ap("upper"))?;
        writeln!(out, "  -c' = {}  (~{}): {}", cond.minus_c_conj, ap("minus_c_conj"), yes(cond.minus_c_ok))?;
        writeln!(out, "  c'+l' = {}  (~{}): {}", cond.end_conj, ap("end_conj"), yes(cond.end_ok))?;
    }
    if let (Some(lambda), Some(s)) = (&r.lambda, r.s) {
        let approx = r.approx.get("lambda").map(String::as_str).unwrap_or("");
        writeln!(out, "lambda = {lambda}  (~{approx}), s = {s}")?;
    }
    if let Some([lo, hi]) = &r.j {
        writeln!(out, "J = [{lo}, {hi})")?;
    }
    if let Some(sub) = &r.substitution {
        writeln!(out, "phi:")?;
        for (k, v) in sub {
            writeln!(out, "  {k} -> {v}")?;
        }
    }
    if let Some(t) = r.return_times {
        writeln!(out, "return times: {} {} {}", t[0], t[1], t[2])?;
    }
    if let Some(retry) = &r.retry {
        let tried: Vec<String> = retry.attempts.iter().map(u32::to_string).collect();
        writeln!(out, "powers tried: {}", tried.join(", "))?;
    }
    if let Some(ch) = &r.checks {
        writeln!(
            out,
            "checks: fixed point {} (radius {}), eigenvector {}, homothety {}, block starts {}",
            yes(ch.fixed_point),
            ch.fixed_point_radius,
            yes(ch.eigenvector),
            yes(ch.homothety),
            yes(ch.block_starts)
        )?;
        if let Some(c) = ch.complexity {
            writeln!(out, "complexity 2n+1: {}", yes(c))?;
        }
    }
    if let Some(st) = &r.sturmian {
        for (name, v) in st {
            writeln!(
                out,
                "{name}: slope {}, intercept {}, invariant {}",
                v.slope,
                v.intercept,
                v.invariant
            )?;
        }
    }
    Ok(())
}

