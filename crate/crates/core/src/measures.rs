//! Entropies (base 2) and the coherence quantifiers built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{DensityOperator, ReferenceBasis};

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` count as zero in entropies.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// Weight of `ρ` on `ker σ` above which `S(ρ‖σ)` is infinite.
pub const SUPPORT_TOL: f64 = 1e-10;

/// Eigenvalues of `σ` at or below this value span its kernel.
const KERNEL_EIGENVALUE: f64 = 1e-12;

/// An entropy in bits. Finite values are non-negative; relative entropy may
/// also be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Entropy(f64);

impl Entropy {
    pub const ZERO: Entropy = Entropy(0.0);
    pub const INFINITE: Entropy = Entropy(f64::INFINITY);

    /// Values in `[-1e-12, 0]` become `+0`.
    pub fn from_bits(bits: f64) -> Self {
        if (-1e-12..=0.0).contains(&bits) {
            Entropy(0.0)
        } else {
            Entropy(bits)
        }
    }

    #[inline]
    pub fn bits(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<Entropy> for f64 {
    fn from(e: Entropy) -> f64 {
        e.0
    }
}

/// `−Σ p_i log₂ p_i`, with `0·log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<Entropy> {
    if p.is_empty() {
        return Err(Error::NotDistribution("empty probability vector".into()));
    }
    if let Some(bad) = p.iter().find(|&&x| !x.is_finite() || x < -1e-12) {
        return Err(Error::NotDistribution(format!("entry {bad} is not a probability")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotDistribution(format!("entries sum to {total}")));
    }
    let h = p
        .iter()
        .map(|&x| x.clamp(0.0, 1.0))
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.log2())
        .sum();
    Ok(Entropy::from_bits(h))
}

/// Binary entropy `H(x, 1 − x)`.
pub fn binary_entropy(x: f64) -> f64 {
    [x, 1.0 - x].iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum()
}

fn clamp_spectrum(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    eigenvalues
        .iter()
        .map(|&x| {
            if x < -EIGEN_CLAMP {
                Err(Error::NotPositive { min_eigenvalue: x })
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}

/// Shannon entropy of a (near-)PSD spectrum.
pub fn spectral_entropy(eigenvalues: &[f64]) -> Result<Entropy> {
    shannon_entropy(&clamp_spectrum(eigenvalues)?)
}

/// `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<Entropy> {
    spectral_entropy(&rho.eigenvalues()?)
}

/// `S(ρ‖σ) = Tr ρ log₂ ρ − Tr ρ log₂ σ`, evaluated in the eigenbasis of `σ`.
/// Returns [`Entropy::INFINITE`] when `ρ` has weight above [`SUPPORT_TOL`]
/// outside the support of `σ`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<Entropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy between dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let s_rho = von_neumann_entropy(rho)?.bits();
    let eig = sigma.matrix().eig_hermitian()?;
    let mut kernel_weight = 0.0;
    let mut cross = 0.0;
    for (j, &s) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j);
        let rv = rho.matrix().mul_vec(&v);
        let w: f64 = v.iter().zip(&rv).map(|(a, b)| (a.conj() * b).re).sum();
        if s <= KERNEL_EIGENVALUE {
            kernel_weight += w;
        } else {
            cross += w * s.log2();
        }
    }
    if kernel_weight > SUPPORT_TOL {
        return Ok(Entropy::INFINITE);
    }
    Ok(Entropy::from_bits(-s_rho - cross))
}

fn check_full_basis(rho: &DensityOperator, basis: &ReferenceBasis) -> Result<()> {
    if basis.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis of dimension {} for a state of dimension {}",
            basis.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// `S(Δ(ρ))`, the entropy of the populations of `ρ` in `basis`.
pub fn dephased_entropy(rho: &DensityOperator, basis: &ReferenceBasis) -> Result<Entropy> {
    check_full_basis(rho, basis)?;
    spectral_entropy(&basis.populations(rho.matrix()))
}

/// Relative entropy of coherence, `S(Δ(ρ)) − S(ρ)`.
pub fn coherence_rel_entropy(rho: &DensityOperator, basis: &ReferenceBasis) -> Result<Entropy> {
    let diag = dephased_entropy(rho, basis)?.bits();
    let s = von_neumann_entropy(rho)?.bits();
    Ok(Entropy::from_bits(diag - s))
}

/// Sum of magnitudes of the off-diagonal entries of `ρ` in `basis`.
pub fn coherence_l1(rho: &DensityOperator, basis: &ReferenceBasis) -> Result<f64> {
    check_full_basis(rho, basis)?;
    let rotated = basis.rotate_into(rho.matrix());
    let n = rho.dim();
    Ok((0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| rotated[(i, j)].norm())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::{maximally_coherent, PhaseMode, PureState};

    fn dens(rows: &[&[f64]]) -> DensityOperator {
        DensityOperator::from_matrix(ComplexMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    fn comp(d: usize) -> ReferenceBasis {
        ReferenceBasis::computational(d)
    }

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap().bits(), 0.0);
        assert_eq!(shannon_entropy(&[0.5, 0.5]).unwrap().bits(), 1.0);
        let oracle = -0.25 * 0.25f64.log2() - 0.75 * 0.75f64.log2();
        let h = shannon_entropy(&[0.25, 0.75]).unwrap().bits();
        assert!((h - oracle).abs() < 1e-15);
        assert!((h - 0.811278).abs() < 1e-6);
    }

    #[test]
    fn shannon_rejects_non_distributions() {
        assert!(shannon_entropy(&[0.5, 0.6]).is_err());
        assert!(shannon_entropy(&[-0.1, 1.1]).is_err());
        assert!(shannon_entropy(&[]).is_err());
        assert!(shannon_entropy(&[1.0 + 1e-13, -1e-13]).is_ok());
    }

    #[test]
    fn von_neumann_examples() {
        let pure = dens(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(von_neumann_entropy(&pure).unwrap().bits().abs() < 1e-12);
        let mixed = DensityOperator::maximally_mixed(4);
        assert!((von_neumann_entropy(&mixed).unwrap().bits() - 2.0).abs() < 1e-12);
        let rho = dens(&[&[0.75, 0.25], &[0.25, 0.25]]);
        let lo = 0.25 * (2.0 - 2f64.sqrt());
        let oracle = binary_entropy(lo);
        let s = von_neumann_entropy(&rho).unwrap().bits();
        assert!((s - oracle).abs() < 1e-12);
        assert!((s - 0.600876).abs() < 1e-6);
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = dens(&[&[0.7, 0.2], &[0.2, 0.3]]);
        assert!(relative_entropy(&rho, &rho).unwrap().bits().abs() < 1e-12);

        let zero = DensityOperator::basis_state(2, 0);
        let half = DensityOperator::maximally_mixed(2);
        assert!((relative_entropy(&zero, &half).unwrap().bits() - 1.0).abs() < 1e-12);

        let plus = dens(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(relative_entropy(&plus, &zero).unwrap().is_infinite());
        assert!(relative_entropy(&plus, &DensityOperator::maximally_mixed(3)).is_err());
    }

    #[test]
    fn coherence_examples() {
        let plus = dens(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!((coherence_rel_entropy(&plus, &comp(2)).unwrap().bits() - 1.0).abs() < 1e-12);
        let diag = dens(&[&[0.2, 0.0], &[0.0, 0.8]]);
        assert_eq!(coherence_rel_entropy(&diag, &comp(2)).unwrap().bits(), 0.0);
        let rho = dens(&[&[0.5, 0.25], &[0.25, 0.5]]);
        // eigenvalues (0.25, 0.75), populations (0.5, 0.5)
        let oracle = 1.0 - binary_entropy(0.25);
        let cre = coherence_rel_entropy(&rho, &comp(2)).unwrap().bits();
        assert!((cre - oracle).abs() < 1e-12);
        assert!((cre - 0.188722).abs() < 1e-6);
    }

    #[test]
    fn l1_examples() {
        let plus = dens(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!((coherence_l1(&plus, &comp(2)).unwrap() - 1.0).abs() < 1e-15);
        let diag = dens(&[&[0.2, 0.0], &[0.0, 0.8]]);
        assert_eq!(coherence_l1(&diag, &comp(2)).unwrap(), 0.0);
        let mc = maximally_coherent(4, &[0.0; 3], PhaseMode::Canonical).unwrap().density();
        assert!((coherence_l1(&mc, &comp(4)).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn coherence_depends_on_basis() {
        let plus = dens(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let hb = ReferenceBasis::new(crate::gates::UnitaryGate::hadamard(), "hadamard");
        assert!(coherence_rel_entropy(&plus, &hb).unwrap().bits().abs() < 1e-12);
        assert!(coherence_rel_entropy(&plus, &comp(3)).is_err());
    }

    #[test]
    fn pure_state_coherence_equals_dephased_entropy() {
        let psi = PureState::normalized(
            vec![crate::linalg::c(0.3, 0.1), crate::linalg::c(-0.5, 0.2), crate::linalg::c(0.1, 0.7)],
            vec![3],
        )
        .unwrap()
        .density();
        let cre = coherence_rel_entropy(&psi, &comp(3)).unwrap().bits();
        let sd = dephased_entropy(&psi, &comp(3)).unwrap().bits();
        assert!((cre - sd).abs() < 1e-9);
    }
}
