//! Unitary gates: Pauli/Hadamard presets, Euler (ZYZ) composites, controlled
//! gates, the generalized CNOT and the amplitude-damping interaction unitary.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, STRUCTURE_TOL, ONE, ZERO};

/// How a gate was built.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    Identity(usize),
    X,
    Y,
    Z,
    H,
    Rz(f64),
    Ry(f64),
    /// `e^{iα} Rz(β) Ry(γ) Rz(δ)`
    Zyz { alpha: f64, beta: f64, gamma: f64, delta: f64 },
    Cnot,
    /// `|i>|j> -> |i>|i + j mod d>`
    Gcnot(usize),
    /// System-environment interaction of amplitude damping with transmissivity η.
    Uadc(f64),
    /// `n` control qubits in front of the target register.
    Controlled { controls: usize, target: Box<GateSpec> },
    Tensor(Box<GateSpec>, Box<GateSpec>),
    Random { dim: usize, seed: u64 },
    Matrix,
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Identity(d) => write!(f, "I:{d}"),
            GateSpec::X => f.write_str("X"),
            GateSpec::Y => f.write_str("Y"),
            GateSpec::Z => f.write_str("Z"),
            GateSpec::H => f.write_str("H"),
            GateSpec::Rz(b) => write!(f, "Rz:{b}"),
            GateSpec::Ry(g) => write!(f, "Ry:{g}"),
            GateSpec::Zyz { alpha, beta, gamma, delta } => {
                write!(f, "ZYZ:{alpha},{beta},{gamma},{delta}")
            }
            GateSpec::Cnot => f.write_str("CNOT"),
            GateSpec::Gcnot(d) => write!(f, "GCNOT:{d}"),
            GateSpec::Uadc(eta) => write!(f, "U_adc:{eta}"),
            GateSpec::Controlled { controls, target } => write!(f, "controlled:{controls}:{target}"),
            GateSpec::Tensor(a, b) => write!(f, "({a})x({b})"),
            GateSpec::Random { dim, seed } => write!(f, "random:{dim}:{seed}"),
            GateSpec::Matrix => f.write_str("matrix"),
        }
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what}: '{s}' is not finite")));
    }
    Ok(v)
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{what}: '{s}' is not a positive integer")))
}

impl FromStr for GateSpec {
    type Err = Error;

    /// Parses strings such as `H`, `ZYZ:0,0.3,1.1,0.2`, `controlled:2:H`,
    /// `U_adc:0.36`, `GCNOT:3`, `I:4` or `random:3:7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let need = |what: &str| {
            rest.ok_or_else(|| Error::Parse(format!("gate '{head}' needs a parameter ({what})")))
        };
        let spec = match head.to_ascii_lowercase().as_str() {
            "i" | "identity" => GateSpec::Identity(parse_usize(need("dimension")?, "dimension")?),
            "x" => GateSpec::X,
            "y" => GateSpec::Y,
            "z" => GateSpec::Z,
            "h" => GateSpec::H,
            "rz" => GateSpec::Rz(parse_f64(need("angle")?, "Rz angle")?),
            "ry" => GateSpec::Ry(parse_f64(need("angle")?, "Ry angle")?),
            "zyz" => {
                let v: Vec<f64> = need("alpha,beta,gamma,delta")?
                    .split(',')
                    .map(|x| parse_f64(x, "ZYZ angle"))
                    .collect::<Result<_>>()?;
                if v.len() != 4 {
                    return Err(Error::Parse(format!("ZYZ needs 4 angles, got {}", v.len())));
                }
                GateSpec::Zyz { alpha: v[0], beta: v[1], gamma: v[2], delta: v[3] }
            }
            "cnot" => GateSpec::Cnot,
            "gcnot" => GateSpec::Gcnot(parse_usize(need("dimension")?, "GCNOT dimension")?),
            "u_adc" | "uadc" => GateSpec::Uadc(parse_f64(need("eta")?, "U_adc eta")?),
            "controlled" => {
                let (n, target) = need("controls:target")?
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("controlled gate needs 'n:target'".into()))?;
                GateSpec::Controlled {
                    controls: parse_usize(n, "control count")?,
                    target: Box::new(target.parse()?),
                }
            }
            "random" => {
                let (d, seed) = need("dim:seed")?
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("random gate needs 'dim:seed'".into()))?;
                GateSpec::Random {
                    dim: parse_usize(d, "dimension")?,
                    seed: seed.trim().parse().map_err(|_| Error::Parse(format!("bad seed '{seed}'")))?,
                }
            }
            _ => return Err(Error::UnknownPreset(format!("gate '{s}'"))),
        };
        Ok(spec)
    }
}

/// Unitary matrix tagged with the spec it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    matrix: ComplexMatrix,
    spec: GateSpec,
}

impl UnitaryGate {
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_spec(matrix, GateSpec::Matrix)
    }

    pub fn with_spec(matrix: ComplexMatrix, spec: GateSpec) -> Result<Self> {
        let deviation = matrix.unitary_deviation();
        if deviation > STRUCTURE_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix, spec })
    }

    pub fn identity(d: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(d), spec: GateSpec::Identity(d) }
    }

    pub fn hadamard() -> Self {
        build_gate(&GateSpec::H).expect("static gate")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spec(&self) -> &GateSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.kron(&other.matrix)?,
            spec: GateSpec::Tensor(Box::new(self.spec.clone()), Box::new(other.spec.clone())),
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.matrix.mul_vec(v)
    }
}

fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("static matrix")
}

fn rz(beta: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::from_polar(1.0, -beta / 2.0);
    m[(1, 1)] = Complex64::from_polar(1.0, beta / 2.0);
    m
}

fn ry(gamma: f64) -> ComplexMatrix {
    let (s, co) = (gamma / 2.0).sin_cos();
    real(&[&[co, -s], &[s, co]])
}

fn gcnot(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + (i + j) % d, i * d + j)] = ONE;
        }
    }
    m
}

/// Builds the unitary described by `spec`.
pub fn build_gate(spec: &GateSpec) -> Result<UnitaryGate> {
    let matrix = match spec {
        GateSpec::Identity(d) => {
            if *d == 0 {
                return Err(Error::BadParameter("identity dimension must be positive".into()));
            }
            ComplexMatrix::identity(*d)
        }
        GateSpec::X => real(&[&[0.0, 1.0], &[1.0, 0.0]]),
        GateSpec::Y => ComplexMatrix::from_rows(&[vec![ZERO, c(0.0, -1.0)], vec![c(0.0, 1.0), ZERO]])?,
        GateSpec::Z => real(&[&[1.0, 0.0], &[0.0, -1.0]]),
        GateSpec::H => real(&[&[FRAC_1_SQRT_2, FRAC_1_SQRT_2], &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]]),
        GateSpec::Rz(beta) => rz(*beta),
        GateSpec::Ry(gamma) => ry(*gamma),
        GateSpec::Zyz { alpha, beta, gamma, delta } => {
            let m = &(&rz(*beta) * &ry(*gamma)) * &rz(*delta);
            m.scale(Complex64::from_polar(1.0, *alpha))
        }
        GateSpec::Cnot => gcnot(2),
        GateSpec::Gcnot(d) => {
            if *d < 2 {
                return Err(Error::BadParameter(format!("GCNOT needs d >= 2, got {d}")));
            }
            gcnot(*d)
        }
        GateSpec::Uadc(eta) => {
            if !(0.0..=1.0).contains(eta) {
                return Err(Error::BadParameter(format!("eta must lie in [0, 1], got {eta}")));
            }
            let (a, b) = (eta.sqrt(), (1.0 - eta).sqrt());
            real(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, a, b, 0.0],
                &[0.0, -b, a, 0.0],
                &[0.0, 0.0, 0.0, 1.0],
            ])
        }
        GateSpec::Controlled { controls, target } => {
            let u = build_gate(target)?;
            controlled(*controls, &u)?.matrix
        }
        GateSpec::Tensor(a, b) => build_gate(a)?.tensor(&build_gate(b)?)?.matrix,
        GateSpec::Random { dim, seed } => return Ok(crate::states::random_unitary(*dim, *seed)),
        GateSpec::Matrix => {
            return Err(Error::BadParameter("matrix gates are built with UnitaryGate::from_matrix".into()))
        }
    };
    UnitaryGate::with_spec(matrix, spec.clone())
}

/// Parses and builds a gate spec string.
pub fn gate_from_str(s: &str) -> Result<UnitaryGate> {
    build_gate(&s.parse()?)
}

/// `C^n_U`: applies `u` to the target qubits iff all `n` control qubits are 1.
/// Controls are the most significant qubits.
pub fn controlled(n: usize, u: &UnitaryGate) -> Result<UnitaryGate> {
    let k = u.dim();
    if k < 2 || !k.is_power_of_two() {
        return Err(Error::BadParameter(format!(
            "controlled target must act on qubits, got dimension {k}"
        )));
    }
    if n == 0 {
        return Err(Error::BadParameter("controlled gate needs at least one control".into()));
    }
    let blocks = 1usize
        .checked_shl(n as u32)
        .filter(|b| b.checked_mul(k).is_some_and(|t| t <= crate::linalg::DEFAULT_DIM_CAP))
        .ok_or(Error::Overflow { rows: usize::MAX, cols: usize::MAX, cap: crate::linalg::DEFAULT_DIM_CAP })?;
    let dim = blocks * k;
    let mut m = ComplexMatrix::identity(dim);
    let off = (blocks - 1) * k;
    for i in 0..k {
        for j in 0..k {
            m[(off + i, off + j)] = u.matrix()[(i, j)];
        }
    }
    UnitaryGate::with_spec(m, GateSpec::Controlled { controls: n, target: Box::new(u.spec.clone()) })
}
