//! Bipartite coherence and correlation quantities: QI relative entropy,
//! fixed-basis discord, one-way deficit, pure-state relative entropy of
//! entanglement, and the coherence chain under incoherent interactions.
//!
//! The global coherence of a system-ancilla output is the relative entropy
//! to the closest mixture `Σ p_i σ_i^A ⊗ σ_i^E` of incoherent products. Every
//! such mixture is diagonal in the product basis and every diagonal state is
//! such a mixture, so the minimum is the full product-basis dephasing
//! `S(Δ_AE ρ) − S(ρ)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{build_gate, GateSpec, UnitaryGate};
use crate::linalg::{c, kron_vec, ComplexMatrix, ZERO};
use crate::measures::{coherence_rel_entropy, spectral_entropy, von_neumann_entropy, Entropy};
use crate::optimize::{grid_coordinate_descent, Axis, SearchSettings};
use crate::report::{Check, VerificationReport};
use crate::states::{dephase, DensityOperator, PureState, ReferenceBasis};

/// Measurement branches with probability at or below this are dropped.
pub const BRANCH_CUTOFF: f64 = 1e-12;

/// Tolerance of exact algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Tolerance of claims that depend on a grid optimum.
pub const GRID_TOL: f64 = 1e-6;

/// Grid points per Bloch angle in the deficit search.
pub const DEFICIT_GRID: usize = 64;

/// Two-party state with a reference basis on each side. The composite
/// reference is the product basis.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    state: DensityOperator,
    basis_a: ReferenceBasis,
    basis_b: ReferenceBasis,
}

impl BipartiteState {
    pub fn new(state: DensityOperator, basis_a: ReferenceBasis, basis_b: ReferenceBasis) -> Result<Self> {
        let dims = state.dims();
        if dims.len() != 2 {
            return Err(Error::NotBipartite(format!("state has subsystem dimensions {dims:?}")));
        }
        if basis_a.dim() != dims[0] || basis_b.dim() != dims[1] {
            return Err(Error::DimensionMismatch(format!(
                "bases of dimensions ({}, {}) for subsystems {dims:?}",
                basis_a.dim(),
                basis_b.dim()
            )));
        }
        Ok(Self { state, basis_a, basis_b })
    }

    /// Computational bases on both sides.
    pub fn computational(state: DensityOperator) -> Result<Self> {
        let dims = state.dims().to_vec();
        if dims.len() != 2 {
            return Err(Error::NotBipartite(format!("state has subsystem dimensions {dims:?}")));
        }
        Self::new(state, ReferenceBasis::computational(dims[0]), ReferenceBasis::computational(dims[1]))
    }

    pub fn state(&self) -> &DensityOperator {
        &self.state
    }

    pub fn basis_a(&self) -> &ReferenceBasis {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &ReferenceBasis {
        &self.basis_b
    }

    pub fn dim_a(&self) -> usize {
        self.state.dims()[0]
    }

    pub fn dim_b(&self) -> usize {
        self.state.dims()[1]
    }

    pub fn product_basis(&self) -> ReferenceBasis {
        ReferenceBasis::product(&[&self.basis_a, &self.basis_b]).expect("two non-empty bases")
    }

    pub fn reduced_a(&self) -> Result<DensityOperator> {
        self.state.reduce(&[0])
    }

    /// `Σ_i p_i |b_i><b_i| ⊗ ρ_i`, the state after measuring A in the
    /// reference basis of A.
    pub fn dephased_a(&self) -> Result<DensityOperator> {
        dephase(&self.state, &self.basis_a, &[0])
    }
}

/// Unnormalized post-measurement blocks `(<b_i| ⊗ I) ρ (|b_i> ⊗ I)` for every
/// vector of `basis_a`.
fn branch_blocks(rho: &ComplexMatrix, d_a: usize, d_b: usize, basis_a: &ComplexMatrix) -> Vec<ComplexMatrix> {
    (0..d_a)
        .map(|i| {
            let mut block = ComplexMatrix::zeros(d_b, d_b);
            for a in 0..d_a {
                let ba = basis_a[(a, i)].conj();
                if ba == ZERO {
                    continue;
                }
                for a2 in 0..d_a {
                    let w = ba * basis_a[(a2, i)];
                    if w == ZERO {
                        continue;
                    }
                    for j in 0..d_b {
                        for j2 in 0..d_b {
                            block[(j, j2)] += w * rho[(a * d_b + j, a2 * d_b + j2)];
                        }
                    }
                }
            }
            block
        })
        .collect()
}

/// `S(Σ_i P_i ρ P_i)` from the spectra of the measurement blocks.
fn measured_entropy(rho: &ComplexMatrix, d_a: usize, d_b: usize, basis_a: &ComplexMatrix) -> Result<f64> {
    let mut spectrum = Vec::with_capacity(d_a * d_b);
    for block in branch_blocks(rho, d_a, d_b, basis_a) {
        spectrum.extend(block.hermitian_part().eig_hermitian()?.eigenvalues);
    }
    Ok(spectral_entropy(&spectrum)?.bits())
}

/// `C→(ρ) = S(Δ_A ρ) − S(ρ)`, the relative entropy to the closest
/// quantum-incoherent state.
pub fn qi_relative_entropy(rho: &BipartiteState) -> Result<Entropy> {
    let chi = rho.dephased_a()?;
    let s_chi = von_neumann_entropy(&chi)?.bits();
    let s = von_neumann_entropy(&rho.state)?.bits();
    Ok(Entropy::from_bits(s_chi - s))
}

/// Discord with A measured in its reference basis (no optimization):
/// `S(ρ^A) − S(ρ^AB) + Σ_i p_i S(ρ^B_i)`.
pub fn discord_fixed_basis(rho: &BipartiteState) -> Result<Entropy> {
    discord_in_basis(rho, rho.basis_a.matrix())
}

fn discord_in_basis(rho: &BipartiteState, basis_a: &ComplexMatrix) -> Result<Entropy> {
    let s_a = von_neumann_entropy(&rho.reduced_a()?)?.bits();
    let s_ab = von_neumann_entropy(&rho.state)?.bits();
    let mut conditional = 0.0;
    for block in branch_blocks(rho.state.matrix(), rho.dim_a(), rho.dim_b(), basis_a) {
        let p = block.trace().re;
        if p <= BRANCH_CUTOFF {
            continue;
        }
        let branch = block.hermitian_part().scale_real(1.0 / p);
        conditional += p * spectral_entropy(&branch.eig_hermitian()?.eigenvalues)?.bits();
    }
    Ok(Entropy::from_bits(s_a - s_ab + conditional))
}

/// Minimizing basis of the one-way deficit search.
#[derive(Debug, Clone)]
pub struct DeficitResult {
    pub value: f64,
    /// Bloch polar angle of the first basis vector relative to the reference basis of A.
    pub theta: f64,
    pub phi: f64,
    pub basis: ReferenceBasis,
    pub evaluations: usize,
}

/// Qubit basis `(cos θ/2, e^{iφ} sin θ/2), (−e^{−iφ} sin θ/2, cos θ/2)`.
pub fn bloch_basis(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    ComplexMatrix::from_rows(&[vec![c(co, 0.0), -e.conj() * s], vec![e * s, c(co, 0.0)]])
        .expect("2x2 rotation")
}

/// One-way deficit `min_bases [S(Δ_A^basis ρ) − S(ρ)]` for a qubit A. Bases
/// are the reference basis of A rotated by [`bloch_basis`]; the search is a
/// 64 × 64 grid over `θ ∈ [0, π)`, `φ ∈ [0, 2π)` refined by coordinate
/// descent. `θ = 0` is the reference basis itself, so the result never
/// exceeds [`qi_relative_entropy`].
pub fn one_way_deficit(rho: &BipartiteState) -> Result<DeficitResult> {
    if rho.dim_a() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "one-way deficit is implemented for a qubit A, got d_A = {}",
            rho.dim_a()
        )));
    }
    let s = von_neumann_entropy(&rho.state)?.bits();
    let base = rho.basis_a.matrix();
    let (d_a, d_b) = (rho.dim_a(), rho.dim_b());
    let m = rho.state.matrix();
    let mut err = None;
    let axes = [Axis::new(0.0, PI, DEFICIT_GRID), Axis::new(0.0, TAU, DEFICIT_GRID)];
    let best = grid_coordinate_descent(&axes, SearchSettings::default(), |x| {
        let basis = base * &bloch_basis(x[0], x[1]);
        match measured_entropy(m, d_a, d_b, &basis) {
            Ok(v) => v - s,
            Err(e) => {
                err.get_or_insert(e);
                f64::INFINITY
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let (theta, phi) = (best.point[0], best.point[1]);
    let gate = UnitaryGate::from_matrix(base * &bloch_basis(theta, phi))?;
    Ok(DeficitResult {
        value: Entropy::from_bits(best.value).bits(),
        theta,
        phi,
        basis: ReferenceBasis::new(gate, format!("bloch({theta},{phi})")),
        evaluations: best.evaluations,
    })
}

/// `S(Tr_B |ψ><ψ|)`, the relative entropy of entanglement of a pure state
/// (and its relative entropy of quantum correlation).
pub fn ree_pure(psi: &PureState) -> Result<Entropy> {
    if psi.dims().len() != 2 {
        return Err(Error::NotBipartite(format!("pure state has subsystem dimensions {:?}", psi.dims())));
    }
    von_neumann_entropy(&psi.density().reduce(&[0])?)
}

/// Incoherent system-ancilla interactions supported by the chain check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncoherentOp {
    Cnot,
    Gcnot(usize),
}

impl std::fmt::Display for IncoherentOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IncoherentOp::Cnot => write!(f, "CNOT"),
            IncoherentOp::Gcnot(d) => write!(f, "GCNOT({d})"),
        }
    }
}

impl IncoherentOp {
    pub fn dim(self) -> usize {
        match self {
            IncoherentOp::Cnot => 2,
            IncoherentOp::Gcnot(d) => d,
        }
    }

    pub fn gate(self) -> Result<UnitaryGate> {
        match self {
            IncoherentOp::Cnot => build_gate(&GateSpec::Cnot),
            IncoherentOp::Gcnot(d) => build_gate(&GateSpec::Gcnot(d)),
        }
    }

    /// Accepts the gate spec strings `CNOT` and `GCNOT:d`.
    pub fn from_spec(s: &str) -> Result<Self> {
        match s.parse::<GateSpec>()? {
            GateSpec::Cnot => Ok(IncoherentOp::Cnot),
            GateSpec::Gcnot(d) if d >= 2 => Ok(IncoherentOp::Gcnot(d)),
            other => Err(Error::UnsupportedOperation(format!(
                "chain checks need CNOT or GCNOT:d, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainValues {
    #[serde(rename = "C_A")]
    pub c_a: f64,
    #[serde(rename = "C_AE")]
    pub c_ae: f64,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub link: String,
    /// Left minus right side; non-negative when the link holds.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub values: ChainValues,
    pub margins: Vec<ChainLink>,
    pub pure_input: bool,
}

impl ChainReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.margins.iter().all(|l| l.margin >= -tol)
    }
}

/// Evaluates `C_A ≥ C_AE ≥ Q ≥ E` for `Λ(ρ_A ⊗ |0><0|)`. The Q and E links
/// are only available when `ρ_A` is pure, where both equal the entanglement
/// entropy of the output.
pub fn verify_coherence_chain(rho_a: &DensityOperator, op: IncoherentOp) -> Result<ChainReport> {
    let d = op.dim();
    if rho_a.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "{op:?} acts on dimension {d}, state has dimension {}",
            rho_a.dim()
        )));
    }
    let gate = op.gate()?;
    let ancilla = DensityOperator::basis_state(d, 0);
    let joint = rho_a.with_dims(vec![d])?.tensor(&ancilla)?.evolve(&gate)?;
    let c_a = coherence_rel_entropy(rho_a, &ReferenceBasis::computational(d))?.bits();
    let c_ae = coherence_rel_entropy(&joint, &ReferenceBasis::computational(d * d))?.bits();

    let eig = rho_a.matrix().eig_hermitian()?;
    let pure_input = eig.eigenvalues[d - 1] >= 1.0 - IDENTITY_TOL;
    let mut margins = vec![ChainLink { link: "C_A >= C_AE".into(), margin: c_a - c_ae }];
    let (q, e) = if pure_input {
        let psi = PureState::normalized(eig.eigenvectors.column(d - 1), vec![d])?;
        let mut anc = vec![ZERO; d];
        anc[0] = c(1.0, 0.0);
        let out = PureState::normalized(gate.apply(&kron_vec(psi.amplitudes(), &anc)), vec![d, d])?;
        let ent = ree_pure(&out)?.bits();
        margins.push(ChainLink { link: "C_AE >= Q".into(), margin: c_ae - ent });
        margins.push(ChainLink { link: "Q >= E".into(), margin: 0.0 });
        (Some(ent), Some(ent))
    } else {
        (None, None)
    };
    Ok(ChainReport { values: ChainValues { c_a, c_ae, q, e }, margins, pure_input })
}

/// Checks the coherence/correlation identities of a qubit-A state:
/// (a) `C(ρ^A) + δ(ρ) = C→(ρ)`,
/// (b) `C(χ) + C→(ρ) = C(ρ)` with `χ = Δ_A(ρ)`,
/// (c) `Δ→(ρ) ≤ C→(ρ)`,
/// (d) `C(ρ^A) + δ(ρ)` against `Δ→(ρ)` at the deficit-optimal basis and at
///     the reference basis, flagging whether the two coincide there.
pub fn verify_deficit_relations(rho: &BipartiteState) -> Result<VerificationReport> {
    if rho.dim_a() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "deficit relations need a qubit A, got d_A = {}",
            rho.dim_a()
        )));
    }
    let mut report = VerificationReport::new("deficit-relations", None, None);
    let rho_a = rho.reduced_a()?;
    let c_a = coherence_rel_entropy(&rho_a, &rho.basis_a)?.bits();
    let discord = discord_fixed_basis(rho)?.bits();
    let qi = qi_relative_entropy(rho)?.bits();
    report.push(Check::equal(
        "discord-coherence-sum",
        "C(rho_A) + discord(rho) = C_QI(rho)",
        c_a + discord,
        qi,
        IDENTITY_TOL,
    ));

    let product = rho.product_basis();
    let chi = rho.dephased_a()?;
    let c_chi = coherence_rel_entropy(&chi, &product)?.bits();
    let c_ab = coherence_rel_entropy(&rho.state, &product)?.bits();
    report.push(Check::equal(
        "compact-relation",
        "C(Delta_A rho) + C_QI(rho) = C(rho)",
        c_chi + qi,
        c_ab,
        IDENTITY_TOL,
    ));

    let deficit = one_way_deficit(rho)?;
    report.push(Check::at_most(
        "deficit-below-qi",
        "one-way deficit <= C_QI(rho)",
        deficit.value,
        qi,
        IDENTITY_TOL,
    ));

    let at_opt = deficit_side_at(rho, deficit.basis.matrix())?;
    report.push(
        Check::equal(
            "tradeoff-at-deficit-basis",
            "C(rho_A) + discord(rho) = deficit, both in the deficit-optimal basis",
            at_opt,
            deficit.value,
            IDENTITY_TOL,
        )
        .with_note(format!("theta={} phi={}", deficit.theta, deficit.phi)),
    );
    let at_ref = c_a + discord;
    let regime = if (at_ref - deficit.value).abs() <= GRID_TOL {
        "reference basis is deficit-optimal: deficit = C(rho_A) + discord"
    } else {
        "deficit < C(rho_A) + discord in the reference basis"
    };
    report.push(
        Check::at_least(
            "tradeoff-at-reference-basis",
            "C(rho_A) + discord(rho) >= deficit, sides in the reference basis",
            at_ref,
            deficit.value,
            IDENTITY_TOL,
        )
        .with_note(regime),
    );
    Ok(report)
}

/// `C(ρ^A) + δ(ρ)` with both terms taken in `basis_a`.
fn deficit_side_at(rho: &BipartiteState, basis_a: &ComplexMatrix) -> Result<f64> {
    let basis = ReferenceBasis::new(UnitaryGate::from_matrix(basis_a.clone())?, "probe");
    let c_a = coherence_rel_entropy(&rho.reduced_a()?, &basis)?.bits();
    Ok(c_a + discord_in_basis(rho, basis_a)?.bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::binary_entropy;
    use crate::states::random_density;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> BipartiteState {
        let s = FRAC_1_SQRT_2;
        let psi = PureState::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)], vec![2, 2]).unwrap();
        BipartiteState::computational(psi.density()).unwrap()
    }

    fn plus() -> DensityOperator {
        DensityOperator::from_matrix(ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap()).unwrap()
    }

    fn qi_state() -> BipartiteState {
        // 0.3 |0><0| ⊗ σ_0 + 0.7 |1><1| ⊗ σ_1
        let s0 = random_density(2, 1).matrix().scale_real(0.3);
        let s1 = random_density(2, 2).matrix().scale_real(0.7);
        let mut m = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = s0[(i, j)];
                m[(2 + i, 2 + j)] = s1[(i, j)];
            }
        }
        BipartiteState::computational(DensityOperator::new(m, vec![2, 2]).unwrap()).unwrap()
    }

    fn plus_sigma() -> BipartiteState {
        let st = plus().tensor(&random_density(2, 3)).unwrap();
        BipartiteState::computational(st).unwrap()
    }

    #[test]
    fn qi_relative_entropy_examples() {
        assert!((qi_relative_entropy(&bell()).unwrap().bits() - 1.0).abs() < 1e-12);
        assert!(qi_relative_entropy(&qi_state()).unwrap().bits().abs() < 1e-12);
        assert!((qi_relative_entropy(&plus_sigma()).unwrap().bits() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn discord_examples() {
        assert!((discord_fixed_basis(&bell()).unwrap().bits() - 1.0).abs() < 1e-12);
        let prod = random_density(2, 5).tensor(&random_density(3, 6)).unwrap();
        assert!(discord_fixed_basis(&BipartiteState::computational(prod).unwrap()).unwrap().bits().abs() < 1e-12);
        let cc = DensityOperator::new(ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4]), vec![2, 2]).unwrap();
        assert!(discord_fixed_basis(&BipartiteState::computational(cc).unwrap()).unwrap().bits().abs() < 1e-12);
    }

    #[test]
    fn deficit_examples() {
        let b = one_way_deficit(&bell()).unwrap();
        assert!((b.value - 1.0).abs() < 1e-9);
        assert_eq!((b.theta, b.phi), (0.0, 0.0));
        assert!(one_way_deficit(&qi_state()).unwrap().value.abs() < 1e-6);
        let ps = one_way_deficit(&plus_sigma()).unwrap();
        assert!(ps.value.abs() < 1e-6);
        assert!((ps.theta - PI / 2.0).abs() < 1e-6);
        let big = BipartiteState::computational(random_density(6, 1).with_dims(vec![3, 2]).unwrap()).unwrap();
        assert!(matches!(one_way_deficit(&big), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn ree_examples() {
        let s = FRAC_1_SQRT_2;
        let bell = PureState::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)], vec![2, 2]).unwrap();
        assert!((ree_pure(&bell).unwrap().bits() - 1.0).abs() < 1e-12);
        let prod = crate::states::random_pure(2, 1).tensor(&crate::states::random_pure(3, 2));
        assert!(ree_pure(&prod).unwrap().bits().abs() < 1e-10);
        let schmidt = PureState::new(vec![c(0.8f64.sqrt(), 0.0), ZERO, ZERO, c(0.2f64.sqrt(), 0.0)], vec![2, 2]).unwrap();
        let r = ree_pure(&schmidt).unwrap().bits();
        assert!((r - binary_entropy(0.2)).abs() < 1e-12);
        assert!((r - 0.721928).abs() < 1e-6);
        assert!(matches!(ree_pure(&crate::states::random_pure(4, 1)), Err(Error::NotBipartite(_))));
    }

    #[test]
    fn chain_examples() {
        let r = verify_coherence_chain(&plus(), IncoherentOp::Cnot).unwrap();
        assert!(r.pure_input);
        for v in [r.values.c_a, r.values.c_ae, r.values.q.unwrap(), r.values.e.unwrap()] {
            assert!((v - 1.0).abs() < 1e-9);
        }

        let diag = DensityOperator::from_matrix(ComplexMatrix::from_diag(&[0.4, 0.6])).unwrap();
        let r = verify_coherence_chain(&diag, IncoherentOp::Cnot).unwrap();
        assert!(!r.pure_input && r.values.q.is_none());
        assert!(r.values.c_a.abs() < 1e-12 && r.values.c_ae.abs() < 1e-12);

        let psi = PureState::new(vec![c(0.8f64.sqrt(), 0.0), c(0.2f64.sqrt(), 0.0)], vec![2]).unwrap();
        let r = verify_coherence_chain(&psi.density(), IncoherentOp::Gcnot(2)).unwrap();
        let h = binary_entropy(0.2);
        for v in [r.values.c_a, r.values.c_ae, r.values.q.unwrap(), r.values.e.unwrap()] {
            assert!((v - h).abs() < 1e-9);
        }
        assert!(r.holds(1e-9));

        assert!(verify_coherence_chain(&plus(), IncoherentOp::Gcnot(3)).is_err());
        assert!(matches!(IncoherentOp::from_spec("H"), Err(Error::UnsupportedOperation(_))));
        assert_eq!(IncoherentOp::from_spec("GCNOT:3").unwrap(), IncoherentOp::Gcnot(3));
    }

    #[test]
    fn deficit_relations_on_bell() {
        let r = verify_deficit_relations(&bell()).unwrap();
        assert!(r.all_passed(), "{}", r.to_table());
        assert_eq!(r.checks.len(), 5);
        // C(chi) = 0, C_QI = 1, C(rho) = 1
        let compact = &r.checks[1];
        assert!((compact.lhs - 1.0).abs() < 1e-12 && (compact.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deficit_relations_on_product_incoherent() {
        let st = DensityOperator::basis_state(2, 1).tensor(&DensityOperator::basis_state(2, 0)).unwrap();
        let r = verify_deficit_relations(&BipartiteState::computational(st).unwrap()).unwrap();
        assert!(r.all_passed());
        for chk in &r.checks {
            assert!(chk.lhs.abs() < 1e-9 && chk.rhs.abs() < 1e-9, "{chk:?}");
        }
    }

    #[test]
    fn bipartite_validation() {
        assert!(matches!(
            BipartiteState::computational(random_density(4, 1)),
            Err(Error::NotBipartite(_))
        ));
        let st = random_density(4, 1).with_dims(vec![2, 2]).unwrap();
        assert!(BipartiteState::new(st, ReferenceBasis::computational(2), ReferenceBasis::computational(3)).is_err());
    }
}
