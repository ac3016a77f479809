mod args;
mod table;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use args::{ApplyOp, Check, Cli, Command, Construct, ReportArgs, SearchArgs, TableFormat};
use hcube_core::constructions::{chebyshev_function, kushilevitz, EvalMode};
use hcube_core::cube::{CubeData, CubeFunction};
use hcube_core::report::{finite_or_label, VerificationReport};
use hcube_core::spectral::{apply_multiplier, partial_derivative, LevelMultiplier, Window};
use hcube_core::verify::{self, brute_linf_operator_norm, SearchConfig, MAX_ORACLE_DIM};
use hcube_core::{to_sorted_json, Error};

const USAGE: u8 = 3;
const FAIL: u8 = 1;

/// A failed run: exit code plus the message for standard error.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularMultiplier(_) => FAIL,
            _ => USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Debug, Serialize)]
struct RunManifest {
    artifacts: Vec<String>,
    command: String,
    exit_code: u8,
    params: BTreeMap<String, Value>,
    seed: u64,
    start_timestamp: String,
    tool_version: &'static str,
}

/// What a command produced: the main artifact text, a one-line summary and
/// the exit code.
struct Outcome {
    text: String,
    summary: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let start_timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true);
    let (command, params) = describe(&cli);

    let result = configure_threads(cli.threads).and_then(|()| run(&cli));
    let (code, artifacts) = match result {
        Ok(outcome) => match emit(&cli, &outcome) {
            Ok(artifacts) => (outcome.code, artifacts),
            Err(f) => {
                eprintln!("error: {}", f.message);
                (f.code, Vec::new())
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            (f.code, Vec::new())
        }
    };

    let manifest = RunManifest {
        artifacts,
        command,
        exit_code: code,
        params,
        seed: cli.seed,
        start_timestamp,
        tool_version: env!("CARGO_PKG_VERSION"),
    };
    let path = manifest_path(cli.out.as_deref());
    if let Err(e) = fs::write(&path, to_sorted_json(&manifest)) {
        eprintln!("error: cannot write manifest {}: {e}", path.display());
        return ExitCode::from(USAGE);
    }
    ExitCode::from(code)
}

fn manifest_path(out: Option<&Path>) -> PathBuf {
    match out {
        Some(out) => {
            let mut name = out.as_os_str().to_owned();
            name.push(".manifest.json");
            PathBuf::from(name)
        }
        None => PathBuf::from("hcube-run.manifest.json"),
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), Failure> {
    let threads = match flag {
        Some(t) => Some(t),
        None => match std::env::var("THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| Failure::usage(format!("invalid THREADS={v:?}")))?),
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    Ok(())
}

/// Writes the artifact to --out (or stdout) and prints the summary.
fn emit(cli: &Cli, outcome: &Outcome) -> Result<Vec<String>, Failure> {
    match &cli.out {
        Some(path) => {
            fs::write(path, &outcome.text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            if cli.json {
                print!("{}", outcome.text);
            } else {
                println!("{}", outcome.summary);
            }
            Ok(vec![path.display().to_string()])
        }
        None => {
            print!("{}", outcome.text);
            Ok(Vec::new())
        }
    }
}

fn describe(cli: &Cli) -> (String, BTreeMap<String, Value>) {
    let name = match &cli.command {
        Command::Construct(_) => "construct",
        Command::Apply(_) => "apply",
        Command::Verify(_) => "verify",
        Command::Search(_) => "search",
        Command::Report(_) => "report",
    };
    let mut params: BTreeMap<String, Value> = match serde_json::to_value(cli) {
        Ok(Value::Object(map)) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    params.insert("argv".into(), json!(std::env::args().skip(1).collect::<Vec<_>>()));
    (name.to_string(), params)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Construct(c) => construct(c),
        Command::Apply(a) => {
            let input = a
                .input
                .as_deref()
                .ok_or_else(|| Failure::usage("apply needs --in <file>"))?;
            apply(&a.op, input)
        }
        Command::Verify(check) => verify_report(check, cli.seed).map(report_outcome),
        Command::Search(s) => search(s, cli.seed).map(report_outcome),
        Command::Report(r) => aggregate(r),
    }
}

fn function_outcome(data: CubeData, what: &str) -> Outcome {
    Outcome {
        summary: format!("{what}: n = {}, kind = {:?}", data.n(), data.kind()).to_lowercase(),
        text: data.to_json(),
        code: 0,
    }
}

fn construct(c: &Construct) -> Result<Outcome, Failure> {
    let (f, what): (CubeFunction, String) = match c {
        Construct::Chebyshev { n, d } => (chebyshev_function(*n, *d)?, format!("chebyshev n={n} d={d}")),
        Construct::Kushilevitz { k } => {
            let table = kushilevitz(*k, EvalMode::Materialized)?;
            (table.as_table().expect("materialized").to_pm1(), format!("kushilevitz k={k}"))
        }
        Construct::Character { n, mask } => {
            if *n < usize::BITS as usize && *mask >> n != 0 {
                return Err(Failure::usage(format!("mask {mask:#b} has bits beyond n = {n}")));
            }
            (CubeFunction::character(*n, *mask)?, format!("character n={n} mask={mask:#b}"))
        }
        Construct::Subcube { n, fix } => (
            verify::subcube_indicator(*n, &fix.0)?,
            format!("subcube n={n} fix={:?}", fix.0),
        ),
    };
    Ok(function_outcome(CubeData::Point(f), &what))
}

fn read_input(path: &Path) -> Result<CubeData, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    CubeData::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn apply(op: &ApplyOp, input: &Path) -> Result<Outcome, Failure> {
    let data = read_input(input)?;
    let multiplier = match op {
        ApplyOp::Laplacian { k } => Some(LevelMultiplier::laplacian_power(*k)),
        ApplyOp::Heat { t } => Some(LevelMultiplier::heat(*t)?),
        ApplyOp::Power { z, gamma } => Some(LevelMultiplier::power(*z, *gamma)?),
        ApplyOp::Project { low, tail } => {
            let window = match (low, tail) {
                (Some(d), None) => Window::Low(*d),
                (None, Some(d)) => Window::Tail(*d),
                _ => return Err(Failure::usage("project needs exactly one of --low, --tail")),
            };
            if window_bound(window) > data.n() {
                return Err(Failure::usage(format!(
                    "projection level exceeds n = {}",
                    data.n()
                )));
            }
            Some(LevelMultiplier::projection(window))
        }
        ApplyOp::Partial { .. } => None,
    };
    let out = match (multiplier, op) {
        (Some(m), _) => {
            let s = apply_multiplier(&data.to_spectrum(), &m)?;
            match data {
                CubeData::Point(_) => CubeData::Point(s.to_function()),
                CubeData::Walsh(_) => CubeData::Walsh(s),
            }
        }
        (None, ApplyOp::Partial { j }) => {
            let f = partial_derivative(&data.to_function(), *j)?;
            match data {
                CubeData::Point(_) => CubeData::Point(f),
                CubeData::Walsh(_) => CubeData::Walsh(f.spectrum()),
            }
        }
        (None, _) => unreachable!("every other op is a multiplier"),
    };
    Ok(function_outcome(out, &format!("apply {op:?}")))
}

fn window_bound(w: Window) -> usize {
    match w {
        Window::Low(d) | Window::Tail(d) => d,
    }
}

fn report_outcome(report: VerificationReport) -> Outcome {
    Outcome {
        summary: format!(
            "{}: {} (observed {}, bound {})",
            report.check_id,
            report.verdict.as_str(),
            report.observed,
            serde_json::to_string(&report.bound).expect("bound serializes")
        ),
        code: report.verdict.exit_code() as u8,
        text: report.to_json(),
    }
}

fn search_config(s: &SearchArgs, seed: u64) -> SearchConfig {
    SearchConfig {
        restarts: s.restarts,
        steps: s.steps,
        step_size: s.step_size,
        seed,
        smoothing_p: s.smoothing_p,
        ..SearchConfig::default()
    }
}

fn verify_report(check: &Check, seed: u64) -> Result<VerificationReport, Failure> {
    let report = match check {
        Check::BmL2 { n, d, trials } => verify::check_bm_l2(*n, *d, *trials, seed)?,
        Check::Bernstein(s) => {
            verify::search_bernstein_ratio(s.n, s.d, s.k, s.p, s.eps, &search_config(s, seed))?
        }
        Check::BooleanL1 => verify::check_boolean_l1(&verify::standard_corpus()?)?,
        Check::Corma { p } => verify::check_corma(&verify::standard_corpus()?, *p)?,
        Check::HeatTail(a) => verify::check_heat_tail(a.n, a.d, a.p, a.eps, &a.t, a.trials, seed)?,
        Check::Helo(a) => verify::check_helo(a.n, a.d, a.p, a.eps, &a.t, a.trials, seed)?,
        Check::Imaginary { n, p, u, gamma, trials } => {
            verify::check_imaginary_powers(*n, *p, u, *gamma, *trials, seed)?
        }
        Check::Chebyshev { n, d } => verify::check_chebyshev_lower(n, *d)?,
        Check::Kushilevitz { k } => verify::check_kushilevitz(*k)?,
        Check::ThreeLines { n, d, p, eps, k, gamma, samples } => {
            verify::check_three_lines(*n, *d, *p, *eps, *k, *gamma, *samples, seed)?
        }
    };
    Ok(report)
}

/// The Bernstein search, plus the exact oracle value when `p = ∞` and `n` is tiny.
fn search(s: &SearchArgs, seed: u64) -> Result<VerificationReport, Failure> {
    let mut report =
        verify::search_bernstein_ratio(s.n, s.d, s.k, s.p, s.eps, &search_config(s, seed))?;
    if s.p.is_infinite() && s.n <= MAX_ORACLE_DIM {
        let brute = brute_linf_operator_norm(s.n, s.d, s.k)?;
        let scaled = report.observed * (s.d as f64).powi(s.k as i32);
        report.detail("oracle_operator_norm", brute);
        report.detail("search_operator_norm", scaled);
        report.detail("oracle_fraction", finite_or_label(scaled / brute));
    }
    Ok(report)
}

fn aggregate(r: &ReportArgs) -> Result<Outcome, Failure> {
    let paths: Vec<PathBuf> = glob::glob(&r.glob)
        .map_err(|e| Failure::usage(format!("invalid glob {:?}: {e}", r.glob)))?
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(e.to_string()))?;
    if paths.is_empty() {
        return Err(Failure::usage(format!("no reports match {:?}", r.glob)));
    }
    let mut reports = Vec::with_capacity(paths.len());
    for path in &paths {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let report = VerificationReport::from_json(&text)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        reports.push(report);
    }
    let reports = table::sorted(reports);
    let text = match r.format {
        TableFormat::Csv => table::to_csv(&reports),
        TableFormat::Md => table::to_markdown(&reports),
    };
    Ok(Outcome {
        summary: format!("{} reports merged", reports.len()),
        text,
        code: 0,
    })
}
