//! Experiment configuration: a `key = value` text file plus command-line
//! overrides. Defaults reproduce the reference protocol: 30 independent
//! runs, 200,000 evaluations per problem (100,000 per task for NSGA-II),
//! population sizes 100 / 200 and the Table-parameter operator settings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use mtbench_core::problems::ProblemId;

/// Environment variable consulted for the default output directory.
pub const OUT_DIR_ENV: &str = "MTBENCH_OUT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    Nsga2,
    Momfea,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Momfea => "momfea",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nsga2" | "nsga-ii" | "nsgaii" => Some(Algorithm::Nsga2),
            "momfea" | "mo-mfea" => Some(Algorithm::Momfea),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub problems: Vec<ProblemId>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    /// Evaluation budget per problem; NSGA-II gets half of it per task.
    pub budget: u64,
    pub nsga2_pop: usize,
    pub momfea_pop: usize,
    pub pc: f64,
    /// Per-variable mutation probability; `None` means `1 / D` with the
    /// problem's unified dimensionality.
    pub pm: Option<f64>,
    pub eta_c: f64,
    pub eta_m: f64,
    pub rmp: f64,
    pub master_seed: u64,
    /// Directory with official shift/rotation files; generated data
    /// otherwise.
    pub data_dir: Option<PathBuf>,
    pub data_seed: u64,
    pub out_dir: PathBuf,
    pub ref_size_2obj: usize,
    pub ref_size_3obj: usize,
    /// Worker threads; `None` picks the available parallelism.
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problems: ProblemId::ALL.to_vec(),
            algorithms: vec![Algorithm::Nsga2, Algorithm::Momfea],
            runs: 30,
            budget: 200_000,
            nsga2_pop: 100,
            momfea_pop: 200,
            pc: 0.9,
            pm: None,
            eta_c: 20.0,
            eta_m: 20.0,
            rmp: mtbench_core::momfea::DEFAULT_RMP,
            master_seed: 42,
            data_dir: None,
            data_seed: 2016,
            out_dir: default_out_dir(),
            ref_size_2obj: 5_000,
            ref_size_3obj: 10_000,
            threads: None,
        }
    }
}

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("mtbench-out"))
}

#[derive(Debug)]
pub struct ConfigFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigFileError {}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key {
            "problems" => self.problems = parse_problems(value)?,
            "algorithms" => self.algorithms = parse_algorithms(value)?,
            "runs" => self.runs = parse_num(key, value)?,
            "budget" => self.budget = parse_num(key, value)?,
            "nsga2_pop" => self.nsga2_pop = parse_num(key, value)?,
            "momfea_pop" => self.momfea_pop = parse_num(key, value)?,
            "pc" => self.pc = parse_num(key, value)?,
            "pm" => {
                self.pm = if value.eq_ignore_ascii_case("auto") {
                    None
                } else {
                    Some(parse_num(key, value)?)
                }
            }
            "eta_c" => self.eta_c = parse_num(key, value)?,
            "eta_m" => self.eta_m = parse_num(key, value)?,
            "rmp" => self.rmp = parse_num(key, value)?,
            "master_seed" => self.master_seed = parse_num(key, value)?,
            "data_dir" => {
                self.data_dir = if value.is_empty() {
                    None
                } else {
                    Some(PathBuf::from(value))
                }
            }
            "data_seed" => self.data_seed = parse_num(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "ref_size_2obj" => self.ref_size_2obj = parse_num(key, value)?,
            "ref_size_3obj" => self.ref_size_3obj = parse_num(key, value)?,
            "threads" => self.threads = Some(parse_num(key, value)?),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Reads a config file of `key = value` lines; `#` starts a comment.
    pub fn load_file(&mut self, path: &Path) -> Result<(), ConfigFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigFileError {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigFileError {
                    line: no + 1,
                    message: format!("expected key = value, got {line:?}"),
                });
            };
            self.set(key.trim(), value).map_err(|message| ConfigFileError {
                line: no + 1,
                message,
            })?;
        }
        Ok(())
    }

    /// Problem-level sanity checks before any run starts.
    pub fn validate(&self) -> Result<(), String> {
        if self.problems.is_empty() {
            return Err("no problems selected".into());
        }
        if self.algorithms.is_empty() {
            return Err("no algorithms selected".into());
        }
        if self.runs == 0 {
            return Err("runs must be positive".into());
        }
        if self.budget < 2 * self.momfea_pop as u64 {
            return Err(format!(
                "budget {} cannot cover MO-MFEA initialization ({} evaluations)",
                self.budget,
                2 * self.momfea_pop
            ));
        }
        if self.budget / 2 < self.nsga2_pop as u64 {
            return Err(format!(
                "per-task budget {} cannot cover the NSGA-II population {}",
                self.budget / 2,
                self.nsga2_pop
            ));
        }
        if self.ref_size_2obj < 2 || self.ref_size_3obj < 2 {
            return Err("reference front sizes must be at least 2".into());
        }
        Ok(())
    }

    pub fn params_for(&self, unified_dim: usize) -> mtbench_core::operators::OperatorParams {
        mtbench_core::operators::OperatorParams {
            pc: self.pc,
            pm: self.pm.unwrap_or(1.0 / unified_dim as f64),
            eta_c: self.eta_c,
            eta_m: self.eta_m,
        }
    }

    pub fn ref_size(&self, objectives: usize) -> usize {
        if objectives >= 3 {
            self.ref_size_3obj
        } else {
            self.ref_size_2obj
        }
    }

    /// Echo of the effective settings, for provenance.
    pub fn summary(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert(
            "problems".into(),
            self.problems
                .iter()
                .map(|p| p.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert(
            "algorithms".into(),
            self.algorithms
                .iter()
                .map(|a| a.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert("runs".into(), self.runs.to_string());
        m.insert("budget".into(), self.budget.to_string());
        m.insert("master_seed".into(), self.master_seed.to_string());
        m.insert(
            "data".into(),
            match &self.data_dir {
                Some(d) => format!("official:{}", d.display()),
                None => format!("generated:{}", self.data_seed),
            },
        );
        m
    }
}

fn parse_problems(value: &str) -> Result<Vec<ProblemId>, String> {
    if value.eq_ignore_ascii_case("all") {
        return Ok(ProblemId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in value.split(',') {
        let id = ProblemId::from_str(tok).ok_or_else(|| format!("unknown problem {tok:?}"))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

fn parse_algorithms(value: &str) -> Result<Vec<Algorithm>, String> {
    if value.eq_ignore_ascii_case("all") {
        return Ok(vec![Algorithm::Nsga2, Algorithm::Momfea]);
    }
    let mut out = Vec::new();
    for tok in value.split(',') {
        let a = Algorithm::from_str(tok).ok_or_else(|| format!("unknown algorithm {tok:?}"))?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("cannot parse {key} value {value:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_protocol() {
        let c = ExperimentConfig::default();
        assert_eq!(c.runs, 30);
        assert_eq!(c.budget, 200_000);
        assert_eq!(c.nsga2_pop, 100);
        assert_eq!(c.momfea_pop, 200);
        assert_eq!(c.problems.len(), 9);
        assert_eq!(c.pc, 0.9);
        assert!(c.pm.is_none());
        assert_eq!(c.eta_c, 20.0);
        assert_eq!(c.eta_m, 20.0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn file_and_overrides_parse() {
        let dir = std::env::temp_dir().join("mtbench-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exp.conf");
        std::fs::write(
            &path,
            "# comment\nproblems = CIHS, CILS\nruns = 3\nbudget = 20000\npm = auto\n",
        )
        .unwrap();
        let mut c = ExperimentConfig::default();
        c.load_file(&path).unwrap();
        assert_eq!(c.problems, vec![ProblemId::Cihs, ProblemId::Cils]);
        assert_eq!(c.runs, 3);
        assert_eq!(c.budget, 20_000);
        c.set("rmp", "0.5").unwrap();
        assert_eq!(c.rmp, 0.5);
        assert!(c.set("nonsense", "1").is_err());
    }

    #[test]
    fn pm_auto_uses_the_unified_dimensionality() {
        let c = ExperimentConfig::default();
        assert_eq!(c.params_for(50).pm, 0.02);
        assert_eq!(c.params_for(10).pm, 0.1);
    }

    #[test]
    fn bad_budgets_are_rejected_before_running() {
        let mut c = ExperimentConfig::default();
        c.budget = 300;
        assert!(c.validate().is_err());
    }
}
