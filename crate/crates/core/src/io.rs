//! JSON file formats for states and reference bases.
//!
//! Densities: `{"dims": [2, 2], "matrix": [[[re, im], ...], ...]}`.
//! Pure states: `{"dims": [2], "amplitudes": [[re, im], ...]}`.
//! Bases: `{"label": "...", "matrix": [[[re, im], ...], ...]}` with the basis
//! vectors as columns.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gates::UnitaryGate;
use crate::linalg::ComplexMatrix;
use crate::states::{maximally_coherent, DensityOperator, PhaseMode, PureState, ReferenceBasis};

type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityFile {
    dims: Vec<usize>,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureFile {
    dims: Vec<usize>,
    amplitudes: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    #[serde(default)]
    label: Option<String>,
    matrix: Vec<Vec<Entry>>,
}

/// A state read from a file, kept in the form it was written in.
#[derive(Debug, Clone)]
pub enum StateInput {
    Density(DensityOperator),
    Pure(PureState),
}

impl StateInput {
    pub fn density(&self) -> DensityOperator {
        match self {
            StateInput::Density(d) => d.clone(),
            StateInput::Pure(p) => p.density(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            StateInput::Density(d) => d.dims(),
            StateInput::Pure(p) => p.dims(),
        }
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

fn field(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

fn to_matrix(rows: &[Vec<Entry>], what: &str) -> Result<ComplexMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if n == 0 || cols == 0 {
        return Err(Error::Parse(format!("{what}: empty matrix")));
    }
    let mut data = Vec::with_capacity(n * cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Parse(format!("{what}: row {i} has {} entries, expected {cols}", row.len())));
        }
        data.extend(row.iter().map(|[re, im]| Complex64::new(*re, *im)));
    }
    ComplexMatrix::new(n, cols, data)
}

fn from_matrix(m: &ComplexMatrix) -> Vec<Vec<Entry>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|z| [z.re, z.im]).collect()).collect()
}

/// Parses either state format; the presence of `matrix` or `amplitudes`
/// selects the kind.
pub fn parse_state(text: &str) -> Result<StateInput> {
    let value: Value = serde_json::from_str(text).map_err(syntax)?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("state file must be a JSON object".into()))?;
    if obj.contains_key("matrix") {
        let f: DensityFile = serde_json::from_value(value).map_err(|e| field("density state", e))?;
        let m = to_matrix(&f.matrix, "field `matrix`")?;
        Ok(StateInput::Density(DensityOperator::new(m, f.dims)?))
    } else if obj.contains_key("amplitudes") {
        let f: PureFile = serde_json::from_value(value).map_err(|e| field("pure state", e))?;
        let amps = f.amplitudes.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        Ok(StateInput::Pure(PureState::new(amps, f.dims)?))
    } else {
        Err(Error::Parse("state file needs a `matrix` or an `amplitudes` field".into()))
    }
}

pub fn load_state(path: impl AsRef<Path>) -> Result<StateInput> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn density_to_json(rho: &DensityOperator) -> String {
    let f = DensityFile { dims: rho.dims().to_vec(), matrix: from_matrix(rho.matrix()) };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

pub fn pure_to_json(psi: &PureState) -> String {
    let f = PureFile { dims: psi.dims().to_vec(), amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect() };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

pub fn parse_basis(text: &str) -> Result<ReferenceBasis> {
    let f: BasisFile = serde_json::from_str(text).map_err(syntax)?;
    let m = to_matrix(&f.matrix, "field `matrix`")?;
    let label = f.label.unwrap_or_else(|| "file".into());
    Ok(ReferenceBasis::new(UnitaryGate::from_matrix(m)?, label))
}

pub fn load_basis(path: impl AsRef<Path>) -> Result<ReferenceBasis> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_basis(&text)
}

pub fn basis_to_json(basis: &ReferenceBasis) -> String {
    let f = BasisFile { label: Some(basis.label().to_string()), matrix: from_matrix(basis.matrix()) };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

/// `plus`, `minus`, `zero`, `one`, `bell`, `maxcoh:d` or `maxmixed:d`.
pub fn preset_state(name: &str) -> Result<StateInput> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let pure = |amps: Vec<Complex64>, dims: Vec<usize>| PureState::new(amps, dims).map(StateInput::Pure);
    let (kind, arg) = name.split_once(':').map_or((name, None), |(k, a)| (k, Some(a)));
    let dim = || -> Result<usize> {
        arg.ok_or_else(|| Error::UnknownPreset(format!("{name} needs a dimension, e.g. {kind}:4")))?
            .parse::<usize>()
            .ok()
            .filter(|d| *d >= 1)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    };
    match kind {
        "plus" => pure(vec![r(s), r(s)], vec![2]),
        "minus" => pure(vec![r(s), r(-s)], vec![2]),
        "zero" => pure(vec![r(1.0), z], vec![2]),
        "one" => pure(vec![z, r(1.0)], vec![2]),
        "bell" => pure(vec![r(s), z, z, r(s)], vec![2, 2]),
        "maxcoh" => Ok(StateInput::Pure(maximally_coherent(dim()?, &vec![0.0; dim()? - 1], PhaseMode::Canonical)?)),
        "maxmixed" => Ok(StateInput::Density(DensityOperator::maximally_mixed(dim()?))),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// `computational`, `bell` (d = 4), `hadamard` (d a power of two) or a basis file.
pub fn resolve_basis(spec: &str, d: usize) -> Result<ReferenceBasis> {
    let basis = match spec {
        "computational" => ReferenceBasis::computational(d),
        "bell" => ReferenceBasis::bell(),
        "hadamard" => {
            if !d.is_power_of_two() || d < 2 {
                return Err(Error::DimensionMismatch(format!("hadamard basis needs a power-of-two dimension, got {d}")));
            }
            let mut u = UnitaryGate::hadamard();
            while u.dim() < d {
                u = u.tensor(&UnitaryGate::hadamard())?;
            }
            ReferenceBasis::new(u, "hadamard")
        }
        path => load_basis(path)?,
    };
    if basis.dim() != d {
        return Err(Error::DimensionMismatch(format!("basis `{spec}` has dimension {}, expected {d}", basis.dim())));
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::random_density;

    #[test]
    fn density_round_trip() {
        let rho = random_density(4, 9).with_dims(vec![2, 2]).unwrap();
        let back = parse_state(&density_to_json(&rho)).unwrap();
        assert_eq!(back.dims(), &[2, 2]);
        assert_eq!(back.density().matrix(), rho.matrix());
    }

    #[test]
    fn pure_round_trip() {
        let psi = crate::states::random_pure(3, 4);
        match parse_state(&pure_to_json(&psi)).unwrap() {
            StateInput::Pure(p) => assert_eq!(p.amplitudes(), psi.amplitudes()),
            other => panic!("expected pure state, got {other:?}"),
        }
    }

    #[test]
    fn example_file() {
        let text = r#"{"dims": [2], "matrix": [[[0.5, 0], [0.25, 0]], [[0.25, 0], [0.5, 0]]]}"#;
        let rho = parse_state(text).unwrap().density();
        assert_eq!(rho.matrix()[(0, 1)].re, 0.25);
    }

    #[test]
    fn errors_locate_problem() {
        match parse_state("{\"dims\": [2],\n \"matrix\": [[[1, 0]]") {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        match parse_state(r#"{"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0]]]}"#) {
            Err(Error::Parse(msg)) => assert!(msg.contains("row 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
        match parse_state(r#"{"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]], "extra": 1}"#) {
            Err(Error::Parse(msg)) => assert!(msg.contains("extra"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_state(r#"{"dims": [2]}"#), Err(Error::Parse(_))));
        let bad = r#"{"dims": [2], "matrix": [[[0.6, 0], [0.5, 0]], [[0.5, 0], [0.4, 0]]]}"#;
        assert!(matches!(parse_state(bad), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn basis_round_trip() {
        let b = ReferenceBasis::bell();
        let back = parse_basis(&basis_to_json(&b)).unwrap();
        assert_eq!(back.matrix(), b.matrix());
        assert_eq!(back.label(), b.label());
        let not_unitary = r#"{"matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}"#;
        assert!(matches!(parse_basis(not_unitary), Err(Error::NotUnitary { .. })));
    }
}
