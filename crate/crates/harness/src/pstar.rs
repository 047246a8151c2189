//! Reference fronts as the harness uses them: generated once per
//! (problem, task), exported as CSV, and content-hashed so every IGD in a
//! record is auditable against the exact reference it was computed with.

use mtbench_core::metrics::igd::IgdReference;
use mtbench_core::metrics::FrontSet;
use mtbench_core::problems::{sampling, BenchmarkProblem};

/// One task's reference front with its CSV rendering's hash.
pub struct ReferenceBundle {
    pub front: FrontSet,
    pub evaluator: IgdReference,
    pub size: usize,
    pub hash: String,
}

pub fn reference_bundle(problem: &BenchmarkProblem, task_index: usize, size: usize) -> ReferenceBundle {
    let front = sampling::reference_front(problem, task_index, size);
    let evaluator = IgdReference::new(&front).expect("analytic fronts span every objective");
    let hash = format!("fnv1a64:{:016x}", fnv1a64(front_csv(&front).as_bytes()));
    ReferenceBundle {
        evaluator,
        size: front.len(),
        hash,
        front,
    }
}

/// CSV rendering: one objective vector per line, comma separated.
pub fn front_csv(front: &FrontSet) -> String {
    let mut out = String::new();
    for p in front.points() {
        for (i, v) in p.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{v:.17e}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a front CSV (comma or whitespace separated values).
pub fn parse_front_csv(text: &str) -> Result<FrontSet, String> {
    let mut points = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            row.push(
                tok.parse::<f64>()
                    .map_err(|_| format!("line {}: not a number: {tok:?}", no + 1))?,
            );
        }
        if !row.is_empty() {
            points.push(row);
        }
    }
    FrontSet::new(points).map_err(|e| e.to_string())
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
