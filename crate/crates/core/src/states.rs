//! Density operators, pure states, reference bases and the dephasing maps
//! that define incoherence.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{GateSpec, UnitaryGate};
use crate::linalg::{self, c, check_subsystems, split_indices, ComplexMatrix, ONE, ZERO};

/// Tolerance for the density-operator invariants (Hermiticity, unit trace,
/// positivity) and the pure-state norm.
pub const STATE_TOL: f64 = 1e-10;

/// Validated Hermitian, positive semidefinite, unit-trace matrix together with
/// its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    /// Validates `matrix` against the density-operator invariants. The stored
    /// matrix is the Hermitian part of the input.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        check_dims(&dims, matrix.rows())?;
        let deviation = matrix.hermitian_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let matrix = matrix.hermitian_part();
        let deviation = (matrix.trace() - ONE).norm();
        if deviation > STATE_TOL {
            return Err(Error::NotUnitTrace { deviation });
        }
        let min_eigenvalue = matrix.eig_hermitian()?.eigenvalues[0];
        if min_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, dims })
    }

    /// Single-system density with `dims = [d]`.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, vec![d])
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims: vec![d] }
    }

    /// `|i><i|` in the computational basis.
    pub fn basis_state(d: usize, i: usize) -> Self {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(i, i)] = ONE;
        Self { matrix: m, dims: vec![d] }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Same matrix with a different subsystem split.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        Ok(Self { matrix: self.matrix.clone(), dims })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let matrix = self.matrix.kron(&other.matrix)?;
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Ok(Self { matrix, dims })
    }

    /// Reduced state on the subsystems in `keep` (ascending order).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let matrix = self.matrix.partial_trace(&self.dims, keep)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let dims = keep.iter().map(|&k| self.dims[k]).collect();
        Self::new(matrix, dims)
    }

    /// `U ρ U^dagger`.
    pub fn evolve(&self, u: &UnitaryGate) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gate of dimension {} applied to state of dimension {}",
                u.dim(),
                self.dim()
            )));
        }
        Self::new(self.matrix.conjugate_by(u.matrix()), self.dims.clone())
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.matrix.eig_hermitian()?.eigenvalues)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_dims(dims: &[usize], total: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} do not multiply to {total}"
        )));
    }
    Ok(())
}

/// Validates a density matrix with the given subsystem dimensions.
pub fn density_from_matrix(m: ComplexMatrix, dims: Vec<usize>) -> Result<DensityOperator> {
    DensityOperator::new(m, dims)
}

/// Unit-norm state vector with subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        if let Some(pos) = amplitudes.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: pos, col: 0 });
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::BadParameter(format!("state vector norm is {norm}, expected 1")));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::BadParameter("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect(), dims)
    }

    /// `|i>` in dimension `d`.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut amplitudes = vec![ZERO; d];
        amplitudes[i] = ONE;
        Self { amplitudes, dims: vec![d] }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        Ok(Self { amplitudes: self.amplitudes.clone(), dims })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
            dims: self.dims.iter().chain(&other.dims).copied().collect(),
        }
    }

    pub fn evolve(&self, u: &UnitaryGate) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gate of dimension {} applied to state of dimension {}",
                u.dim(),
                self.dim()
            )));
        }
        Ok(Self { amplitudes: u.matrix().mul_vec(&self.amplitudes), dims: self.dims.clone() })
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator {
            matrix: ComplexMatrix::projector(&self.amplitudes),
            dims: self.dims.clone(),
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis whose elements are the columns of a unitary. States
/// diagonal in this basis are the incoherent ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceBasis {
    unitary: UnitaryGate,
    label: String,
}

impl ReferenceBasis {
    pub fn new(unitary: UnitaryGate, label: impl Into<String>) -> Self {
        Self { unitary, label: label.into() }
    }

    pub fn computational(d: usize) -> Self {
        Self::new(UnitaryGate::identity(d), "computational")
    }

    /// Columns Φ+, Φ−, Ψ+, Ψ− of the two-qubit Bell basis.
    pub fn bell() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let m = ComplexMatrix::from_real_rows(&[
            &[s, s, 0.0, 0.0],
            &[0.0, 0.0, s, s],
            &[0.0, 0.0, s, -s],
            &[s, -s, 0.0, 0.0],
        ])
        .expect("static matrix");
        let gate = UnitaryGate::from_matrix(m).expect("Bell basis is unitary");
        Self::new(gate, "bell")
    }

    /// Product basis `{|i>_A |j>_B ...}`.
    pub fn product(parts: &[&ReferenceBasis]) -> Result<Self> {
        let (first, rest) = parts
            .split_first()
            .ok_or_else(|| Error::DimensionMismatch("empty product basis".into()))?;
        let mut gate = first.unitary.clone();
        let mut label = first.label.clone();
        for p in rest {
            gate = gate.tensor(&p.unitary)?;
            label = format!("{label}x{}", p.label);
        }
        Ok(Self::new(gate, label))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    pub fn unitary(&self) -> &UnitaryGate {
        &self.unitary
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.unitary.matrix()
    }

    /// The `i`-th basis vector.
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.matrix().column(i)
    }

    /// Matrix of `ρ` in this basis, `B^dagger ρ B`.
    pub fn rotate_into(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let b = self.matrix();
        &(&b.adjoint() * rho) * b
    }

    /// Diagonal of `ρ` in this basis.
    pub fn populations(&self, rho: &ComplexMatrix) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let v = self.vector(i);
                let rv = rho.mul_vec(&v);
                v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
            })
            .collect()
    }
}

/// Dephasing on the subsystems in `subsystems`, with `basis` over their joint
/// space (subsystems taken in ascending order). Off-diagonal blocks between
/// distinct basis elements are removed; the remaining subsystems are untouched.
pub fn dephase(
    rho: &DensityOperator,
    basis: &ReferenceBasis,
    subsystems: &[usize],
) -> Result<DensityOperator> {
    let dims = rho.dims();
    check_subsystems(dims, subsystems, rho.dim())?;
    let mut subset = subsystems.to_vec();
    subset.sort_unstable();
    let joint: usize = subset.iter().map(|&k| dims[k]).product();
    if joint != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis of dimension {} cannot dephase subsystems {subset:?} of joint dimension {joint}",
            basis.dim()
        )));
    }
    let n = rho.dim();
    let out = if subset.len() == dims.len() {
        let mut rotated = basis.rotate_into(rho.matrix());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    rotated[(i, j)] = ZERO;
                }
            }
        }
        rotated.conjugate_by(basis.matrix())
    } else {
        let (sel, rest) = split_indices(dims, &subset);
        let b = basis.matrix();
        let mut w = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for col in 0..n {
                if rest[r] == rest[col] {
                    w[(r, col)] = b[(sel[r], sel[col])];
                }
            }
        }
        let mut rotated = &(&w.adjoint() * rho.matrix()) * &w;
        for r in 0..n {
            for col in 0..n {
                if sel[r] != sel[col] {
                    rotated[(r, col)] = ZERO;
                }
            }
        }
        rotated.conjugate_by(&w)
    };
    DensityOperator::new(out, dims.to_vec())
}

/// Full dephasing in `basis`.
pub fn dephase_all(rho: &DensityOperator, basis: &ReferenceBasis) -> Result<DensityOperator> {
    let all: Vec<usize> = (0..rho.dims().len()).collect();
    dephase(rho, basis, &all)
}

/// True iff every off-diagonal entry of `ρ` in `basis` is at most `tol`.
pub fn is_incoherent(rho: &DensityOperator, basis: &ReferenceBasis, tol: f64) -> bool {
    if basis.dim() != rho.dim() {
        return false;
    }
    let rotated = basis.rotate_into(rho.matrix());
    let n = rho.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || rotated[(i, j)].norm() <= tol))
}

/// Which maximally coherent states are admissible: relative phases restricted
/// to `{0, π}` or arbitrary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseMode {
    Canonical,
    Free,
}

impl fmt::Display for PhaseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseMode::Canonical => "canonical",
            PhaseMode::Free => "free",
        })
    }
}

impl FromStr for PhaseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(PhaseMode::Canonical),
            "free" => Ok(PhaseMode::Free),
            other => Err(Error::Parse(format!("unknown phase mode '{other}'"))),
        }
    }
}

/// `(1/√d)(1, e^{iθ_1}, …, e^{iθ_{d−1}})`.
pub fn maximally_coherent(d: usize, phases: &[f64], mode: PhaseMode) -> Result<PureState> {
    if d < 2 {
        return Err(Error::BadParameter(format!("maximally coherent states need d >= 2, got {d}")));
    }
    if phases.len() != d - 1 {
        return Err(Error::BadPhaseCount { expected: d - 1, got: phases.len() });
    }
    if mode == PhaseMode::Canonical {
        if let Some(bad) = phases.iter().find(|&&t| t.abs() > 1e-12 && (t - PI).abs() > 1e-12) {
            return Err(Error::BadParameter(format!(
                "canonical maximally coherent states take phases 0 or pi, got {bad}"
            )));
        }
    }
    let amp = 1.0 / (d as f64).sqrt();
    let amplitudes = std::iter::once(c(amp, 0.0))
        .chain(phases.iter().map(|&t| Complex64::from_polar(amp, t)))
        .collect();
    PureState::new(amplitudes, vec![d])
}

/// The `2^{d−1}` phase vectors with entries in `{0, π}`, in lexicographic
/// order (0 before π).
pub fn canonical_phase_patterns(d: usize) -> Vec<Vec<f64>> {
    let k = d.saturating_sub(1);
    (0..1usize << k)
        .map(|bits| (0..k).map(|j| if bits >> (k - 1 - j) & 1 == 1 { PI } else { 0.0 }).collect())
        .collect()
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / Tr(G G^dagger)` with complex Gaussian `G`.
pub fn random_density_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityOperator {
    let g = ComplexMatrix::new(d, d, (0..d * d).map(|_| complex_gaussian(rng)).collect())
        .expect("gaussian samples are finite");
    let ggd = &g * &g.adjoint();
    let tr = ggd.trace().re;
    let matrix = ggd.scale_real(1.0 / tr).hermitian_part();
    DensityOperator { matrix, dims: vec![d] }
}

pub fn random_density(d: usize, seed: u64) -> DensityOperator {
    random_density_with(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> UnitaryGate {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= proj * y);
        }
        let n = norm(&v);
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    UnitaryGate::from_matrix(m).expect("Gram-Schmidt output is unitary")
}

pub fn random_unitary(d: usize, seed: u64) -> UnitaryGate {
    let g = random_unitary_with(d, &mut ChaCha8Rng::seed_from_u64(seed));
    UnitaryGate::with_spec(g.matrix().clone(), GateSpec::Random { dim: d, seed })
        .expect("Gram-Schmidt output is unitary")
}

pub fn random_pure_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> PureState {
    let v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    PureState::normalized(v, vec![d]).expect("gaussian vector is nonzero")
}

pub fn random_pure(d: usize, seed: u64) -> PureState {
    random_pure_with(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Diagonal density with uniformly random populations.
pub fn random_incoherent_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityOperator {
    let w: Vec<f64> = (0..d).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    DensityOperator { matrix: ComplexMatrix::from_diag(&p), dims: vec![d] }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> DensityOperator {
        DensityOperator::from_matrix(
            ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap(),
        )
        .unwrap()
    }

    fn bell() -> DensityOperator {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)], vec![2, 2]).unwrap().density()
    }

    #[test]
    fn valid_densities() {
        let half = DensityOperator::from_matrix(ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert_eq!(half.dims(), &[2]);
        plus();
    }

    #[test]
    fn rejects_invalid_densities() {
        // eigenvalues (1 ± sqrt(1 − 4 det)) / 2 with det = −0.01
        let m = ComplexMatrix::from_real_rows(&[&[0.6, 0.5], &[0.5, 0.4]]).unwrap();
        let expected = (1.0 - (1.0f64 + 0.04).sqrt()) / 2.0;
        match DensityOperator::from_matrix(m) {
            Err(Error::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue - expected).abs() < 1e-12);
                assert!((min_eigenvalue + 0.009902).abs() < 1e-6);
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(DensityOperator::from_matrix(m), Err(Error::NotHermitian { .. })));
        let m = ComplexMatrix::identity(2);
        assert!(matches!(DensityOperator::from_matrix(m), Err(Error::NotUnitTrace { .. })));
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(DensityOperator::new(m, vec![2, 3]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dephase_plus_is_maximally_mixed() {
        let out = dephase_all(&plus(), &ReferenceBasis::computational(2)).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn dephase_fixed_point_in_eigenbasis() {
        let h = UnitaryGate::hadamard();
        let basis = ReferenceBasis::new(h.clone(), "hadamard");
        let diag = DensityOperator::from_matrix(ComplexMatrix::from_diag(&[0.3, 0.7])).unwrap();
        let rotated = diag.evolve(&h).unwrap();
        let out = dephase_all(&rotated, &basis).unwrap();
        assert!(out.matrix().max_abs_diff(rotated.matrix()) < 1e-15);
    }

    #[test]
    fn dephase_bell_on_first_qubit() {
        let out = dephase(&bell(), &ReferenceBasis::computational(2), &[0]).unwrap();
        let expected = ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5]);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dephase_second_subsystem_of_three() {
        // projector sum sum_j (I ⊗ |j><j| ⊗ I) ρ (I ⊗ |j><j| ⊗ I) computed directly
        let rho = random_density(12, 5).with_dims(vec![2, 3, 2]).unwrap();
        let out = dephase(&rho, &ReferenceBasis::computational(3), &[1]).unwrap();
        let mut expected = ComplexMatrix::zeros(12, 12);
        for j in 0..3 {
            let mut p = ComplexMatrix::zeros(3, 3);
            p[(j, j)] = ONE;
            let proj = ComplexMatrix::identity(2)
                .kron(&p)
                .unwrap()
                .kron(&ComplexMatrix::identity(2))
                .unwrap();
            let term = &(&proj * rho.matrix()) * &proj;
            expected = &expected + &term;
        }
        assert!(out.matrix().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn dephase_dimension_errors() {
        let rho = bell();
        assert!(dephase(&rho, &ReferenceBasis::computational(4), &[0]).is_err());
        assert!(dephase(&rho, &ReferenceBasis::computational(2), &[3]).is_err());
        assert!(dephase(&rho, &ReferenceBasis::computational(2), &[0, 1]).is_err());
    }

    #[test]
    fn maximally_coherent_presets() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = maximally_coherent(2, &[0.0], PhaseMode::Canonical).unwrap();
        assert!((p.amplitudes()[1] - c(s, 0.0)).norm() < 1e-15);
        let m = maximally_coherent(2, &[PI], PhaseMode::Canonical).unwrap();
        assert!((m.amplitudes()[1] + c(s, 0.0)).norm() < 1e-15);
        let four = maximally_coherent(4, &[0.0; 3], PhaseMode::Canonical).unwrap();
        assert!(four.amplitudes().iter().all(|z| (z - c(0.5, 0.0)).norm() < 1e-15));
        assert!(matches!(
            maximally_coherent(3, &[0.0], PhaseMode::Free),
            Err(Error::BadPhaseCount { expected: 2, got: 1 })
        ));
        assert!(maximally_coherent(2, &[0.3], PhaseMode::Canonical).is_err());
        assert!(maximally_coherent(2, &[0.3], PhaseMode::Free).is_ok());
    }

    #[test]
    fn canonical_patterns_enumerate_all_signs() {
        let pats = canonical_phase_patterns(4);
        assert_eq!(pats.len(), 8);
        assert_eq!(pats[0], vec![0.0; 3]);
        assert_eq!(pats[1], vec![0.0, 0.0, PI]);
        assert_eq!(pats[7], vec![PI; 3]);
    }

    #[test]
    fn incoherence_predicate() {
        assert!(is_incoherent(&DensityOperator::maximally_mixed(3), &ReferenceBasis::computational(3), 1e-12));
        assert!(!is_incoherent(&plus(), &ReferenceBasis::computational(2), 1e-9));
        assert!(is_incoherent(&bell(), &ReferenceBasis::bell(), 1e-12));
    }

    #[test]
    fn random_generators_are_valid_and_seeded() {
        let rho = random_density(2, 11);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-10);
        assert_eq!(rho, random_density(2, 11));
        assert_ne!(rho, random_density(2, 12));
        let u = random_unitary(3, 4);
        assert!(u.matrix().unitary_deviation() < 1e-10);
        assert_eq!(u, random_unitary(3, 4));
        let psi = random_pure(4, 9);
        assert!((norm(psi.amplitudes()) - 1.0).abs() < 1e-10);
        DensityOperator::new(rho.matrix().clone(), vec![2]).unwrap();
    }

    #[test]
    fn product_basis_label_and_dim() {
        let b = ReferenceBasis::product(&[&ReferenceBasis::computational(2), &ReferenceBasis::bell()]).unwrap();
        assert_eq!(b.dim(), 8);
        assert_eq!(b.label(), "computationalxbell");
    }
}
