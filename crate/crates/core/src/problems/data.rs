//! The nine shift/rotation assets: their catalog, a plain-text parser for
//! externally supplied files, and a seeded generator for self-contained
//! runs.
//!
//! File format: whitespace-separated decimal tokens; a vector on one
//! line, a matrix row-major with one row per line.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::transform::SquareMatrix;
use crate::math;
use crate::rng::{derive_seed, rng_stream, RunRng};

/// Orthogonality tolerance applied to loaded rotation files.
pub const LOADED_ORTHOGONALITY_TOL: f64 = 1e-6;
/// Orthogonality bound guaranteed by the generator.
pub const GENERATED_ORTHOGONALITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssetId {
    SCm2,
    SPh2,
    SPm1,
    SPl2,
    SNl1,
    MCm2,
    MPm1,
    MPm2,
    MNm2,
}

impl AssetId {
    pub const ALL: [AssetId; 9] = [
        AssetId::SCm2,
        AssetId::SPh2,
        AssetId::SPm1,
        AssetId::SPl2,
        AssetId::SNl1,
        AssetId::MCm2,
        AssetId::MPm1,
        AssetId::MPm2,
        AssetId::MNm2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AssetId::SCm2 => "s_cm2",
            AssetId::SPh2 => "s_ph2",
            AssetId::SPm1 => "s_pm1",
            AssetId::SPl2 => "s_pl2",
            AssetId::SNl1 => "s_nl1",
            AssetId::MCm2 => "M_cm2",
            AssetId::MPm1 => "M_pm1",
            AssetId::MPm2 => "M_pm2",
            AssetId::MNm2 => "M_nm2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|a| a.name() == name)
    }

    pub fn is_rotation(&self) -> bool {
        matches!(
            self,
            AssetId::MCm2 | AssetId::MPm1 | AssetId::MPm2 | AssetId::MNm2
        )
    }

    /// Vector length, or matrix side for rotations.
    pub fn dim(&self) -> usize {
        match self {
            AssetId::SCm2 => 9,
            AssetId::SPh2 | AssetId::SPm1 | AssetId::SPl2 => 49,
            AssetId::SNl1 => 23,
            AssetId::MCm2 => 9,
            AssetId::MPm1 | AssetId::MPm2 => 49,
            AssetId::MNm2 => 18,
        }
    }

    /// Variable bounds of the owning task's tail (shift assets only).
    pub fn shift_bounds(&self) -> Option<(f64, f64)> {
        match self {
            AssetId::SCm2 => Some((-5.0, 5.0)),
            AssetId::SPh2 => Some((-100.0, 100.0)),
            AssetId::SPm1 => Some((0.0, 1.0)),
            AssetId::SPl2 => Some((-100.0, 100.0)),
            AssetId::SNl1 => Some((-50.0, 50.0)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum AssetPayload {
    Shift(Vec<f64>),
    Rotation(SquareMatrix),
}

/// Parses a shift-vector file: `expected` decimal tokens.
pub fn parse_vector(text: &str, expected: usize) -> Result<Vec<f64>, DataError> {
    let mut out = Vec::with_capacity(expected);
    for (line_no, line) in text.lines().enumerate() {
        for (tok_no, tok) in line.split_whitespace().enumerate() {
            let v: f64 = tok.parse().map_err(|_| DataError {
                line: line_no + 1,
                token: tok_no + 1,
                kind: DataErrorKind::BadToken(tok.to_string()),
            })?;
            out.push(v);
        }
    }
    if out.len() != expected {
        return Err(DataError {
            line: text.lines().count(),
            token: 0,
            kind: DataErrorKind::WrongCount {
                expected,
                got: out.len(),
            },
        });
    }
    Ok(out)
}

/// Parses a rotation-matrix file (`n` rows of `n` tokens, row-major) and
/// checks orthogonality to [`LOADED_ORTHOGONALITY_TOL`].
pub fn parse_matrix(text: &str, n: usize) -> Result<SquareMatrix, DataError> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(n);
        for (tok_no, tok) in line.split_whitespace().enumerate() {
            let v: f64 = tok.parse().map_err(|_| DataError {
                line: line_no + 1,
                token: tok_no + 1,
                kind: DataErrorKind::BadToken(tok.to_string()),
            })?;
            row.push(v);
        }
        if row.len() != n {
            return Err(DataError {
                line: line_no + 1,
                token: 0,
                kind: DataErrorKind::WrongCount {
                    expected: n,
                    got: row.len(),
                },
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(DataError {
            line: text.lines().count(),
            token: 0,
            kind: DataErrorKind::WrongCount {
                expected: n,
                got: rows.len(),
            },
        });
    }
    let m = SquareMatrix::from_rows(rows).expect("rows validated square");
    let err = m.orthogonality_error();
    if err > LOADED_ORTHOGONALITY_TOL {
        return Err(DataError {
            line: 0,
            token: 0,
            kind: DataErrorKind::NotOrthogonal { defect: err },
        });
    }
    Ok(m)
}

/// Parses and validates one named asset.
pub fn parse_asset(asset: AssetId, text: &str) -> Result<AssetPayload, DataError> {
    if asset.is_rotation() {
        Ok(AssetPayload::Rotation(parse_matrix(text, asset.dim())?))
    } else {
        let v = parse_vector(text, asset.dim())?;
        let (lo, hi) = asset.shift_bounds().expect("shift asset");
        if let Some(&bad) = v.iter().find(|c| **c < lo || **c > hi) {
            return Err(DataError {
                line: 0,
                token: 0,
                kind: DataErrorKind::ShiftOutOfBounds { value: bad, lo, hi },
            });
        }
        Ok(AssetPayload::Shift(v))
    }
}

/// Renders an asset in the same text format the parser accepts.
pub fn render_asset(payload: &AssetPayload) -> String {
    fn push_row(out: &mut String, row: &[f64]) {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{v:.17e}"));
        }
        out.push('\n');
    }
    let mut out = String::new();
    match payload {
        AssetPayload::Shift(v) => push_row(&mut out, v),
        AssetPayload::Rotation(m) => {
            for row in m.rows() {
                push_row(&mut out, row);
            }
        }
    }
    out
}

/// Deterministically generates one asset from `data_seed`.
///
/// Rotations are the orthonormalization of a seeded standard-normal
/// matrix (modified Gram-Schmidt, run twice; row norms fix the signs, so
/// the factorization is unique). Shifts are drawn uniformly from the
/// middle 80% of the owning task's bounds, except where the problem
/// catalog's intersection category pins them; see `special-cases` below.
pub fn generate_asset(asset: AssetId, data_seed: u64) -> AssetPayload {
    let mut rng = rng_stream(derive_seed(data_seed, &[asset as u64 + 1]), 0);
    match asset {
        // Complete intersection: the paired task's normalized optimum sits
        // at 1, so this shift must too.
        AssetId::SCm2 => AssetPayload::Shift(alloc::vec![1.0; asset.dim()]),
        // No intersection: components must avoid the other task's optimum
        // at 0; resample per dimension.
        AssetId::SNl1 => {
            let (lo, hi) = asset.shift_bounds().expect("shift asset");
            let v = (0..asset.dim())
                .map(|_| loop {
                    let c = middle80(lo, hi, &mut rng);
                    if math::abs(c) > 1e-3 {
                        break c;
                    }
                })
                .collect();
            AssetPayload::Shift(v)
        }
        // High similarity with the paired sphere task needs this shift to
        // stay small relative to the [-100, 100] bounds; the documented
        // coefficient (0.99) implies official components of a few units.
        AssetId::SPh2 => {
            let v = (0..asset.dim()).map(|_| middle80(-5.0, 5.0, &mut rng)).collect();
            AssetPayload::Shift(v)
        }
        AssetId::SPm1 | AssetId::SPl2 => {
            let (lo, hi) = asset.shift_bounds().expect("shift asset");
            let v = (0..asset.dim()).map(|_| middle80(lo, hi, &mut rng)).collect();
            AssetPayload::Shift(v)
        }
        AssetId::MCm2 | AssetId::MPm1 | AssetId::MPm2 | AssetId::MNm2 => {
            AssetPayload::Rotation(random_rotation(asset.dim(), &mut rng))
        }
    }
}

fn middle80(lo: f64, hi: f64, rng: &mut RunRng) -> f64 {
    let range = hi - lo;
    lo + range * (0.1 + 0.8 * rng.next_f64())
}

/// Random orthogonal matrix: Gaussian entries, then two passes of
/// modified Gram-Schmidt over the rows.
pub fn random_rotation(n: usize, rng: &mut RunRng) -> SquareMatrix {
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.next_standard_normal()).collect())
        .collect();
    for _pass in 0..2 {
        for i in 0..n {
            for j in 0..i {
                let proj: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                let (head, tail) = rows.split_at_mut(i);
                for (v, w) in tail[0].iter_mut().zip(&head[j]) {
                    *v -= proj * w;
                }
            }
            let norm = math::sqrt(rows[i].iter().map(|v| v * v).sum::<f64>());
            for v in &mut rows[i] {
                *v /= norm;
            }
        }
    }
    SquareMatrix::from_rows(rows).expect("square by construction")
}

#[derive(Clone, Debug, PartialEq)]
pub struct DataError {
    /// 1-based line of the offending token; 0 when the defect is global.
    pub line: usize,
    /// 1-based token within the line; 0 when not token-specific.
    pub token: usize,
    pub kind: DataErrorKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DataErrorKind {
    BadToken(String),
    WrongCount { expected: usize, got: usize },
    NotOrthogonal { defect: f64 },
    ShiftOutOfBounds { value: f64, lo: f64, hi: f64 },
}

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DataErrorKind::BadToken(tok) => write!(
                f,
                "line {}, token {}: not a number: {tok:?}",
                self.line, self.token
            ),
            DataErrorKind::WrongCount { expected, got } => write!(
                f,
                "line {}: expected {expected} values, got {got}",
                self.line
            ),
            DataErrorKind::NotOrthogonal { defect } => write!(
                f,
                "matrix is not orthogonal (defect {defect:.3e} > {LOADED_ORTHOGONALITY_TOL:.0e})"
            ),
            DataErrorKind::ShiftOutOfBounds { value, lo, hi } => {
                write!(f, "shift component {value} outside the bounds [{lo}, {hi}]")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DataError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_rotations_are_orthogonal() {
        for asset in [AssetId::MCm2, AssetId::MPm1, AssetId::MNm2] {
            match generate_asset(asset, 7) {
                AssetPayload::Rotation(m) => {
                    let err = m.orthogonality_error();
                    assert!(
                        err <= GENERATED_ORTHOGONALITY_TOL,
                        "{}: defect {err:e}",
                        asset.name()
                    );
                }
                _ => panic!("expected rotation"),
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for asset in AssetId::ALL {
            let a = render_asset(&generate_asset(asset, 42));
            let b = render_asset(&generate_asset(asset, 42));
            assert_eq!(a, b, "{}", asset.name());
            if asset == AssetId::SCm2 {
                // Pinned by the complete-intersection category; seedless.
                continue;
            }
            let c = render_asset(&generate_asset(asset, 43));
            assert_ne!(a, c, "{} ignored its seed", asset.name());
        }
    }

    #[test]
    fn shifts_stay_strictly_inside_bounds() {
        for asset in [AssetId::SPh2, AssetId::SPm1, AssetId::SPl2, AssetId::SNl1] {
            let (lo, hi) = asset.shift_bounds().unwrap();
            match generate_asset(asset, 3) {
                AssetPayload::Shift(v) => {
                    assert_eq!(v.len(), asset.dim());
                    assert!(v.iter().all(|&c| c > lo && c < hi), "{}", asset.name());
                }
                _ => panic!("expected shift"),
            }
        }
    }

    #[test]
    fn render_parse_round_trip() {
        for asset in AssetId::ALL {
            let payload = generate_asset(asset, 99);
            let text = render_asset(&payload);
            let back = parse_asset(asset, &text).unwrap();
            match (&payload, &back) {
                (AssetPayload::Shift(a), AssetPayload::Shift(b)) => assert_eq!(a, b),
                (AssetPayload::Rotation(a), AssetPayload::Rotation(b)) => assert_eq!(a, b),
                _ => panic!("payload kind changed in round trip"),
            }
        }
    }

    #[test]
    fn parse_rejects_wrong_shapes_and_tokens() {
        let nine = "0 0 0 0 0 0 0 0 0";
        assert!(parse_vector(nine, 9).is_ok());
        let err = parse_vector(nine, 8).unwrap_err();
        assert!(matches!(err.kind, DataErrorKind::WrongCount { .. }));

        let err = parse_vector("1.0 fish 2.0", 3).unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.token, 2);

        // An 8x9 file for a 9x9 matrix fails.
        let mut text = String::new();
        for _ in 0..8 {
            text.push_str(nine);
            text.push('\n');
        }
        let err = parse_matrix(&text, 9).unwrap_err();
        assert!(matches!(err.kind, DataErrorKind::WrongCount { .. }));
    }

    #[test]
    fn parse_rejects_non_orthogonal_matrix() {
        let text = "1 0\n0.5 1\n";
        let err = parse_matrix(text, 2).unwrap_err();
        assert!(matches!(err.kind, DataErrorKind::NotOrthogonal { .. }));
    }
}
