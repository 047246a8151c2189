//! The `mtbench` command line: experiment execution, reporting, curve
//! export, reference fronts, similarity estimation, data generation and
//! one-off IGD scoring.

use std::path::PathBuf;

use mtbench_core::metrics::{similarity, truncate_front};
use mtbench_core::problems::{sampling, ProblemId};
use mtbench_core::rng::{derive_seed, rng_stream};

use crate::aggregate::{build_report, write_report, SIGNIFICANCE_ALPHA};
use crate::assets::{assemble_problem, write_generated};
use crate::config::{default_out_dir, ExperimentConfig};
use crate::curves::write_curves;
use crate::pstar::{front_csv, parse_front_csv, reference_bundle};
use crate::records::read_records;
use crate::runner::{front_cap, run_and_persist};

pub const USAGE: &str = "\
mtbench - two-task multiobjective multitasking benchmark suite

USAGE:
    mtbench <COMMAND> [OPTIONS]

COMMANDS:
    run         Execute the experiment protocol and persist run records
    report      Aggregate records into the IGD/MSS comparison tables
    curves      Export per-problem convergence curves as CSV
    refront     Export a task's analytic reference front as CSV
    similarity  Estimate the landscape similarity of a problem's tasks
    gen-data    Write generated shift/rotation assets plus a manifest
    igd         Score an external front CSV against a reference front

RUN OPTIONS (also config-file keys, see --config):
    --config FILE          key = value file applied before flag overrides
    --problems LIST        comma-separated ids or 'all' [default: all]
    --algorithms LIST      nsga2,momfea or 'all' [default: all]
    --runs N               independent runs per cell [default: 30]
    --budget N             evaluations per problem; NSGA-II gets half
                           per task [default: 200000]
    --nsga2-pop N          [default: 100]     --momfea-pop N  [default: 200]
    --pc X --pm X|auto --eta-c X --eta-m X    operator parameters
    --rmp X                random mating probability [default: 0.3]
    --master-seed N        [default: 42]
    --data-dir DIR         official asset files (manifest.txt inside)
    --data-seed N          seed for generated assets [default: 2016]
    --out DIR              output directory [default: $MTBENCH_OUT or
                           ./mtbench-out]
    --threads N            worker threads [default: available cores]
    --ref-size-2obj N      reference front size [default: 5000]
    --ref-size-3obj N      reference front size [default: 10000]

OTHER COMMANDS:
    report|curves  --records DIR  --out DIR
    refront        --problem ID --task 1|2 [--size N] [--out FILE]
    similarity     --problem ID [--samples N] [--seed N]
                   [--data-dir DIR | --data-seed N]
    gen-data       --out DIR [--problems LIST] [--data-seed N]
    igd            --front FILE --problem ID --task 1|2 [--size N]
                   [--cap N|report] [--data-dir DIR | --data-seed N]

EXIT STATUS: 0 success, 1 usage error, 2 data/configuration error.
";

pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

/// Flag list -> (key, value) pairs; every option takes one value.
struct Args {
    pairs: Vec<(String, String)>,
}

impl Args {
    fn parse(argv: &[String]) -> Result<Self, CliError> {
        let mut pairs = Vec::new();
        let mut it = argv.iter();
        while let Some(flag) = it.next() {
            let Some(name) = flag.strip_prefix("--") else {
                return Err(CliError::Usage(format!("unexpected argument {flag:?}")));
            };
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("--{name} needs a value")))?;
            pairs.push((name.to_string(), value.clone()));
        }
        Ok(Self { pairs })
    }

    fn take(&mut self, name: &str) -> Option<String> {
        let idx = self.pairs.iter().position(|(k, _)| k == name)?;
        Some(self.pairs.remove(idx).1)
    }

    fn finish(self) -> Result<(), CliError> {
        if let Some((k, _)) = self.pairs.first() {
            return Err(CliError::Usage(format!("unknown option --{k}")));
        }
        Ok(())
    }
}

fn parse_problem(s: &str) -> Result<ProblemId, CliError> {
    ProblemId::from_str(s).ok_or_else(|| CliError::Usage(format!("unknown problem {s:?}")))
}

fn parse_task(s: &str) -> Result<usize, CliError> {
    match s {
        "1" => Ok(0),
        "2" => Ok(1),
        _ => Err(CliError::Usage(format!("task must be 1 or 2, got {s:?}"))),
    }
}

fn parse_number<T: std::str::FromStr>(name: &str, s: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("cannot parse --{name} value {s:?}")))
}

/// Entry point; returns the process exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    match dispatch(&argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            if matches!(e, CliError::Usage(_)) {
                eprintln!();
                eprintln!("{USAGE}");
            }
            e.exit_code()
        }
    }
}

pub fn dispatch(argv: &[String]) -> Result<(), CliError> {
    let Some(command) = argv.first() else {
        return Err(CliError::Usage("no command given".into()));
    };
    let rest = &argv[1..];
    match command.as_str() {
        "run" => cmd_run(rest),
        "report" => cmd_report(rest),
        "curves" => cmd_curves(rest),
        "refront" => cmd_refront(rest),
        "similarity" => cmd_similarity(rest),
        "gen-data" => cmd_gen_data(rest),
        "igd" => cmd_igd(rest),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

fn build_config(mut args: Args) -> Result<ExperimentConfig, CliError> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = args.take("config") {
        config
            .load_file(&PathBuf::from(path))
            .map_err(|e| CliError::Data(e.to_string()))?;
    }
    let overrides = [
        ("problems", "problems"),
        ("algorithms", "algorithms"),
        ("runs", "runs"),
        ("budget", "budget"),
        ("nsga2-pop", "nsga2_pop"),
        ("momfea-pop", "momfea_pop"),
        ("pc", "pc"),
        ("pm", "pm"),
        ("eta-c", "eta_c"),
        ("eta-m", "eta_m"),
        ("rmp", "rmp"),
        ("master-seed", "master_seed"),
        ("data-dir", "data_dir"),
        ("data-seed", "data_seed"),
        ("out", "out_dir"),
        ("ref-size-2obj", "ref_size_2obj"),
        ("ref-size-3obj", "ref_size_3obj"),
        ("threads", "threads"),
    ];
    for (flag, key) in overrides {
        if let Some(value) = args.take(flag) {
            config
                .set(key, &value)
                .map_err(CliError::Usage)?;
        }
    }
    args.finish()?;
    Ok(config)
}

fn cmd_run(argv: &[String]) -> Result<(), CliError> {
    let config = build_config(Args::parse(argv)?)?;
    config.validate().map_err(CliError::Data)?;
    let cells = config.problems.len() * config.algorithms.len() * config.runs;
    eprintln!(
        "running {} records into {} ({:?})",
        cells,
        config.out_dir.display(),
        config.summary()
    );
    let written = run_and_persist(&config).map_err(CliError::Data)?;
    eprintln!("wrote {} records", written.len());
    Ok(())
}

fn records_and_out(argv: &[String], default_sub: &str) -> Result<(Vec<crate::records::RunRecord>, PathBuf), CliError> {
    let mut args = Args::parse(argv)?;
    let records_dir = args
        .take("records")
        .map(PathBuf::from)
        .unwrap_or_else(|| default_out_dir().join("records"));
    let out = args
        .take("out")
        .map(PathBuf::from)
        .unwrap_or_else(|| default_out_dir().join(default_sub));
    args.finish()?;
    let records = read_records(&records_dir).map_err(CliError::Data)?;
    if records.is_empty() {
        return Err(CliError::Data(format!(
            "no records found in {}",
            records_dir.display()
        )));
    }
    Ok((records, out))
}

fn cmd_report(argv: &[String]) -> Result<(), CliError> {
    let (records, out) = records_and_out(argv, "report")?;
    let report = build_report(&records, SIGNIFICANCE_ALPHA).map_err(CliError::Data)?;
    write_report(&report, &out).map_err(|e| CliError::Data(e.to_string()))?;
    println!("{}", crate::aggregate::comparisons_csv(&report));
    println!("{}", crate::aggregate::mss_csv(&report));
    eprintln!("report written to {}", out.display());
    Ok(())
}

fn cmd_curves(argv: &[String]) -> Result<(), CliError> {
    let (records, out) = records_and_out(argv, "curves")?;
    let (paths, warnings) = write_curves(&records, &out).map_err(CliError::Data)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    eprintln!("wrote {} curve files to {}", paths.len(), out.display());
    Ok(())
}

fn cmd_refront(argv: &[String]) -> Result<(), CliError> {
    let mut args = Args::parse(argv)?;
    let problem = parse_problem(
        &args
            .take("problem")
            .ok_or_else(|| CliError::Usage("--problem is required".into()))?,
    )?;
    let task = parse_task(
        &args
            .take("task")
            .ok_or_else(|| CliError::Usage("--task is required".into()))?,
    )?;
    let size = args.take("size");
    let out = args.take("out");
    let data_seed = args
        .take("data-seed")
        .map(|s| parse_number::<u64>("data-seed", &s))
        .transpose()?
        .unwrap_or(2016);
    args.finish()?;

    let p = assemble_problem(problem, None, data_seed).map_err(|e| CliError::Data(e.to_string()))?;
    let size = match size {
        Some(s) => parse_number("size", &s)?,
        None => sampling::default_reference_size(p.task(task).objectives()),
    };
    let csv = front_csv(&sampling::reference_front(&p, task, size));
    match out {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| CliError::Data(format!("cannot write {path}: {e}")))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_similarity(argv: &[String]) -> Result<(), CliError> {
    let mut args = Args::parse(argv)?;
    let problem = parse_problem(
        &args
            .take("problem")
            .ok_or_else(|| CliError::Usage("--problem is required".into()))?,
    )?;
    let samples = args
        .take("samples")
        .map(|s| parse_number::<usize>("samples", &s))
        .transpose()?
        .unwrap_or(1_000_000);
    let seed = args
        .take("seed")
        .map(|s| parse_number::<u64>("seed", &s))
        .transpose()?
        .unwrap_or(0);
    let data_dir = args.take("data-dir").map(PathBuf::from);
    let data_seed = args
        .take("data-seed")
        .map(|s| parse_number::<u64>("data-seed", &s))
        .transpose()?
        .unwrap_or(2016);
    args.finish()?;
    if samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }

    let p = assemble_problem(problem, data_dir.as_deref(), data_seed)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let mut rng = rng_stream(derive_seed(seed, &[0x5157]), 0);
    let rho = similarity(&p, samples, &mut rng);
    println!("{rho:.6}");
    Ok(())
}

fn cmd_gen_data(argv: &[String]) -> Result<(), CliError> {
    let mut args = Args::parse(argv)?;
    let out = args
        .take("out")
        .ok_or_else(|| CliError::Usage("--out is required".into()))?;
    let problems = match args.take("problems") {
        Some(list) if !list.eq_ignore_ascii_case("all") => {
            let mut v = Vec::new();
            for tok in list.split(',') {
                v.push(parse_problem(tok.trim())?);
            }
            v
        }
        _ => ProblemId::ALL.to_vec(),
    };
    let data_seed = args
        .take("data-seed")
        .map(|s| parse_number::<u64>("data-seed", &s))
        .transpose()?
        .unwrap_or(2016);
    args.finish()?;
    let written = write_generated(&PathBuf::from(&out), &problems, data_seed)
        .map_err(|e| CliError::Data(e.to_string()))?;
    eprintln!("wrote {} asset files to {out}", written.len());
    Ok(())
}

fn cmd_igd(argv: &[String]) -> Result<(), CliError> {
    let mut args = Args::parse(argv)?;
    let front_path = args
        .take("front")
        .ok_or_else(|| CliError::Usage("--front is required".into()))?;
    let problem = parse_problem(
        &args
            .take("problem")
            .ok_or_else(|| CliError::Usage("--problem is required".into()))?,
    )?;
    let task = parse_task(
        &args
            .take("task")
            .ok_or_else(|| CliError::Usage("--task is required".into()))?,
    )?;
    let size = args.take("size");
    let cap = args.take("cap");
    let data_dir = args.take("data-dir").map(PathBuf::from);
    let data_seed = args
        .take("data-seed")
        .map(|s| parse_number::<u64>("data-seed", &s))
        .transpose()?
        .unwrap_or(2016);
    args.finish()?;

    let p = assemble_problem(problem, data_dir.as_deref(), data_seed)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let size = match size {
        Some(s) => parse_number("size", &s)?,
        None => sampling::default_reference_size(p.task(task).objectives()),
    };
    let text = std::fs::read_to_string(&front_path)
        .map_err(|e| CliError::Data(format!("cannot read {front_path}: {e}")))?;
    let front = parse_front_csv(&text).map_err(|e| CliError::Data(format!("{front_path}: {e}")))?;
    // Scored as given unless a reporting cap is requested; `--cap report`
    // applies the protocol's 100/120 cap.
    let front = match cap.as_deref() {
        None => front,
        Some("report") => truncate_front(&front, front_cap(p.task(task).objectives())),
        Some(n) => truncate_front(&front, parse_number("cap", n)?),
    };
    let bundle = reference_bundle(&p, task, size);
    let igd = bundle
        .evaluator
        .value(&front)
        .map_err(|e| CliError::Data(format!("{front_path}: {e}")))?;
    println!("{igd:.6e}");
    Ok(())
}
